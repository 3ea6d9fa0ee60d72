//! Veblen subdivision, separation of a surface by a closed curve, and the
//! boundary structure of arc neighborhoods.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::curves::{self, check_path, CurveError, HypothesisReport, Path};
use crate::surface::{traverses, Edge, Surface, VertexId, VertexKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JordanError {
    #[error("curve touches the boundary at vertex {0}")]
    CurveTouchesBoundary(VertexId),
    #[error("curve is not closed")]
    CurveNotClosed,
    #[error("not an arc: {0}")]
    NotAnArc(String),
    #[error("boundary of the arc neighborhood has no single cycle: {0}")]
    IrregularBoundary(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// A surface refined by Veblen points, with the provenance of every vertex.
#[derive(Clone, Debug)]
pub struct Veblen {
    pub surface: Surface,
    pub kinds: BTreeMap<VertexId, VertexKind>,
    /// Face point of each parent cell, by parent cell index.
    pub face_points: Vec<VertexId>,
    pub edge_points: BTreeMap<Edge, VertexId>,
}

impl Veblen {
    pub fn kind(&self, v: VertexId) -> VertexKind {
        self.kinds.get(&v).copied().unwrap_or(VertexKind::Original)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationReport {
    pub curve: Path,
    /// Vertex sets of the components of `S - C`, sorted by size then smallest vertex.
    pub components: Vec<Vec<VertexId>>,
    /// Cells traversing a curve edge in the curve's direction.
    pub flank_a: Vec<usize>,
    /// Cells traversing a curve edge against the curve's direction.
    pub flank_b: Vec<usize>,
    pub seed_a: Option<VertexId>,
    pub seed_b: Option<VertexId>,
}

impl SeparationReport {
    pub fn component_of(&self, v: VertexId) -> Option<usize> {
        self.components
            .iter()
            .position(|c| c.binary_search(&v).is_ok())
    }

    pub fn seeds_separated(&self) -> bool {
        match (self.seed_a, self.seed_b) {
            (Some(a), Some(b)) => {
                let (ca, cb) = (self.component_of(a), self.component_of(b));
                ca.is_some() && cb.is_some() && ca != cb
            }
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// The hypotheses fail; the conclusion may still hold.
    HypothesesFailed { conclusion_holds: bool },
    Fail { note: String },
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

#[derive(Clone, Debug)]
pub struct Theorem1Outcome {
    pub hypotheses: HypothesisReport,
    pub report: SeparationReport,
    pub conclusion_holds: bool,
    pub verdict: Verdict,
}

#[derive(Clone, Debug)]
pub struct Theorem2Outcome {
    pub veblen: Veblen,
    pub report: SeparationReport,
    /// Components of the refined surface holding the face points of the
    /// A-flank and B-flank cells of the original surface.
    pub flank_a_components: BTreeSet<usize>,
    pub flank_b_components: BTreeSet<usize>,
    /// Set when the curve is the boundary of a single cell: that cell's face point.
    pub single_cell_inside: Option<VertexId>,
    pub verdict: Verdict,
}

impl Theorem2Outcome {
    pub fn flanks_separated(&self) -> bool {
        self.flank_a_components.len() == 1
            && self.flank_b_components.len() == 1
            && self.flank_a_components != self.flank_b_components
    }
}

fn check_off_boundary(surface: &Surface, curve: &Path) -> Result<(), JordanError> {
    match curve
        .vertices
        .iter()
        .find(|&&v| surface.is_boundary_vertex(v))
    {
        Some(&v) => Err(JordanError::CurveTouchesBoundary(v)),
        None => Ok(()),
    }
}

/// Add a face point to every cell and an edge point to every edge off the
/// curve. With `split_curve_edges` the curve edges are split as well; the
/// result then no longer contains the curve and separation must fail.
pub fn insert_veblen_points_with(
    surface: &Surface,
    curve: &Path,
    split_curve_edges: bool,
) -> Result<Veblen, JordanError> {
    check_off_boundary(surface, curve)?;
    let curve_edges = curve.edge_set();
    let base = surface.vertex_bound() as VertexId;
    let mut kinds = BTreeMap::new();
    let face_points: Vec<VertexId> = (0..surface.num_cells())
        .map(|c| base + c as VertexId)
        .collect();
    for (c, &f) in face_points.iter().enumerate() {
        kinds.insert(f, VertexKind::VeblenFace(c));
    }
    let mut next = base + surface.num_cells() as VertexId;
    let mut edge_points = BTreeMap::new();
    for e in surface.edges() {
        if split_curve_edges || !curve_edges.contains(&e) {
            edge_points.insert(e, next);
            kinds.insert(next, VertexKind::VeblenEdge(e));
            next += 1;
        }
    }
    let mut cells = Vec::with_capacity(surface.num_cells() * 6);
    for (c, cell) in surface.cells().iter().enumerate() {
        let f = face_points[c];
        let k = cell.len();
        for i in 0..k {
            let (a, b) = (cell[i], cell[(i + 1) % k]);
            match edge_points.get(&Edge::new(a, b)) {
                Some(&m) => {
                    cells.push(vec![f, a, m]);
                    cells.push(vec![f, m, b]);
                }
                None => cells.push(vec![f, a, b]),
            }
        }
    }
    let isolated = surface.isolated_vertices();
    Ok(Veblen {
        surface: Surface::with_vertices(cells, isolated),
        kinds,
        face_points,
        edge_points,
    })
}

pub fn insert_veblen_points(surface: &Surface, curve: &Path) -> Result<Veblen, JordanError> {
    insert_veblen_points_with(surface, curve, false)
}

/// Connected components of the graph induced on the vertices outside `removed`.
pub fn flood_components(surface: &Surface, removed: &BTreeSet<VertexId>) -> Vec<Vec<VertexId>> {
    let mut label = vec![usize::MAX; surface.vertex_bound()];
    let mut out: Vec<Vec<VertexId>> = Vec::new();
    for v in surface.vertices() {
        if removed.contains(&v) || label[v as usize] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut comp = vec![v];
        label[v as usize] = id;
        let mut queue = VecDeque::from([v]);
        while let Some(x) = queue.pop_front() {
            for &w in surface.neighbors(x) {
                if label[w as usize] == usize::MAX && !removed.contains(&w) {
                    label[w as usize] = id;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out.sort_by(|a, b| (a.len(), a[0]).cmp(&(b.len(), b[0])));
    out
}

fn separation(surface: &Surface, curve: &Path) -> SeparationReport {
    let removed = curve.vertex_set();
    let components = flood_components(surface, &removed);
    let mut flank_a = Vec::new();
    let mut flank_b = Vec::new();
    for (u, v) in curve.directed_edges() {
        for &c in surface.edge_cells(u, v) {
            let list = if traverses(surface.cell(c), u, v) {
                &mut flank_a
            } else {
                &mut flank_b
            };
            if !list.contains(&c) {
                list.push(c);
            }
        }
    }
    let (mut seed_a, mut seed_b) = (None, None);
    if let Some(&(p, r)) = curve.directed_edges().first() {
        let cells = surface.edge_cells(p, r);
        if let Some(&a) = cells.iter().find(|&&c| traverses(surface.cell(c), p, r)) {
            seed_a = walk_from(surface.cell(a), p).into_iter().rev().find(|v| !removed.contains(v));
        }
        if let Some(&b) = cells.iter().find(|&&c| traverses(surface.cell(c), r, p)) {
            seed_b = walk_from(surface.cell(b), p).into_iter().find(|v| !removed.contains(v));
        }
    }
    SeparationReport {
        curve: curve.clone(),
        components,
        flank_a,
        flank_b,
        seed_a,
        seed_b,
    }
}

fn walk_from(cell: &[VertexId], p: VertexId) -> Vec<VertexId> {
    let i = cell.iter().position(|&v| v == p).unwrap_or(0);
    cell[i..].iter().chain(&cell[..i]).copied().collect()
}

/// Components of `S - C` with the flanking cells and seeds of the curve.
pub fn components(surface: &Surface, curve: &Path) -> Result<SeparationReport, JordanError> {
    if !curve.closed {
        return Err(JordanError::CurveNotClosed);
    }
    check_path(surface, curve)?;
    check_off_boundary(surface, curve)?;
    Ok(separation(surface, curve))
}

pub fn check_theorem1(
    surface: &Surface,
    curve: &Path,
    radius: usize,
) -> Result<Theorem1Outcome, JordanError> {
    let report = components(surface, curve)?;
    let hypotheses = curves::check_theorem1_hypotheses(surface, curve, radius)?;
    let conclusion_holds = report.components.len() >= 2 && report.seeds_separated();
    let verdict = if !hypotheses.holds() {
        Verdict::HypothesesFailed { conclusion_holds }
    } else if conclusion_holds {
        Verdict::Pass
    } else {
        Verdict::Fail {
            note: "hypotheses hold but the curve does not separate: the surface is not simply connected"
                .into(),
        }
    };
    Ok(Theorem1Outcome {
        hypotheses,
        report,
        conclusion_holds,
        verdict,
    })
}

pub fn check_theorem2(surface: &Surface, curve: &Path) -> Result<Theorem2Outcome, JordanError> {
    check_theorem2_with(surface, curve, false)
}

/// As [`check_theorem2`]; `split_curve_edges` injects the subdivision fault
/// used to confirm the check can fail.
pub fn check_theorem2_with(
    surface: &Surface,
    curve: &Path,
    split_curve_edges: bool,
) -> Result<Theorem2Outcome, JordanError> {
    if !curve.closed {
        return Err(JordanError::CurveNotClosed);
    }
    check_path(surface, curve)?;
    let veblen = insert_veblen_points_with(surface, curve, split_curve_edges)?;
    let report = separation(&veblen.surface, curve);
    let original = separation(surface, curve);
    let comps = |cells: &[usize]| -> BTreeSet<usize> {
        cells
            .iter()
            .filter_map(|&c| report.component_of(veblen.face_points[c]))
            .collect()
    };
    let flank_a_components = comps(&original.flank_a);
    let flank_b_components = comps(&original.flank_b);
    let curve_set = curve.vertex_set();
    let single_cell_inside = curves::contained_cells(surface, curve)
        .into_iter()
        .find(|&c| surface.cell(c).len() == curve.len() && surface.cell(c).iter().all(|v| curve_set.contains(v)))
        .map(|c| veblen.face_points[c]);
    let mut outcome = Theorem2Outcome {
        veblen,
        report,
        flank_a_components,
        flank_b_components,
        single_cell_inside,
        verdict: Verdict::Pass,
    };
    if outcome.report.components.len() != 2 || !outcome.flanks_separated() {
        outcome.verdict = Verdict::Fail {
            note: format!(
                "{} components after subdivision; flanks separated: {}",
                outcome.report.components.len(),
                outcome.flanks_separated()
            ),
        };
    }
    Ok(outcome)
}

/// `S(X) - X` split into its cycle and the branches hanging off it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerateBoundary {
    pub cycle: Path,
    /// Each branch starts at its attachment vertex.
    pub branches: Vec<Path>,
}

/// The edges of cells meeting `arc` whose endpoints both avoid `arc`.
pub fn arc_boundary_edges(surface: &Surface, arc: &[VertexId]) -> BTreeSet<Edge> {
    let xs: BTreeSet<VertexId> = arc.iter().copied().collect();
    let mut out = BTreeSet::new();
    for &x in arc {
        for &c in surface.vertex_cells(x) {
            let cell = surface.cell(c);
            let k = cell.len();
            for i in 0..k {
                let (a, b) = (cell[i], cell[(i + 1) % k]);
                if !xs.contains(&a) && !xs.contains(&b) {
                    out.insert(Edge::new(a, b));
                }
            }
        }
    }
    out
}

pub fn classify_arc_neighborhood_boundary(
    surface: &Surface,
    arc: &[VertexId],
) -> Result<DegenerateBoundary, JordanError> {
    surface
        .check_simple_path(arc)
        .map_err(|e| JordanError::NotAnArc(e.to_string()))?;
    let edges = arc_boundary_edges(surface, arc);
    let mut adj: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
    for e in &edges {
        adj.entry(e.0).or_default().insert(e.1);
        adj.entry(e.1).or_default().insert(e.0);
    }
    // Strip leaves down to the 2-core.
    let mut degree: BTreeMap<VertexId, usize> = adj.iter().map(|(v, n)| (*v, n.len())).collect();
    let mut stripped: BTreeSet<VertexId> = BTreeSet::new();
    let mut stack: Vec<VertexId> = degree.iter().filter(|(_, d)| **d <= 1).map(|(v, _)| *v).collect();
    while let Some(v) = stack.pop() {
        if !stripped.insert(v) {
            continue;
        }
        for &w in &adj[&v] {
            if !stripped.contains(&w) {
                let d = degree.get_mut(&w).unwrap();
                *d -= 1;
                if *d == 1 {
                    stack.push(w);
                }
            }
        }
    }
    let core: Vec<VertexId> = adj.keys().copied().filter(|v| !stripped.contains(v)).collect();
    if core.is_empty() {
        return Err(JordanError::IrregularBoundary("no cycle".into()));
    }
    if let Some(v) = core.iter().find(|v| degree[v] != 2) {
        return Err(JordanError::IrregularBoundary(format!("vertex {v} joins several cycles")));
    }
    let core_set: BTreeSet<VertexId> = core.iter().copied().collect();
    let mut cycle = vec![core[0]];
    let mut prev = core[0];
    let mut cur = *adj[&core[0]].iter().find(|w| core_set.contains(w)).unwrap();
    while cur != core[0] {
        cycle.push(cur);
        let nxt = *adj[&cur]
            .iter()
            .find(|&&w| core_set.contains(&w) && w != prev)
            .unwrap();
        prev = cur;
        cur = nxt;
    }
    if cycle.len() != core.len() {
        return Err(JordanError::IrregularBoundary("several cycles".into()));
    }
    // Branches: chains of stripped vertices, grown outward from the cycle.
    let mut children: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    let mut seen: BTreeSet<VertexId> = core_set.clone();
    let mut order: Vec<VertexId> = cycle.clone();
    let mut queue: VecDeque<VertexId> = cycle.iter().copied().collect();
    while let Some(v) = queue.pop_front() {
        for &w in &adj[&v] {
            if seen.insert(w) {
                children.entry(v).or_default().push(w);
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    let kids = |v: VertexId| children.get(&v).map(Vec::as_slice).unwrap_or(&[]);
    let mut branches = Vec::new();
    for &v in &order {
        if !(core_set.contains(&v) || kids(v).len() >= 2) {
            continue;
        }
        for &c in kids(v) {
            let mut chain = vec![v, c];
            let mut tip = c;
            while kids(tip).len() == 1 {
                tip = kids(tip)[0];
                chain.push(tip);
            }
            branches.push(Path::open(chain));
        }
    }
    Ok(DegenerateBoundary {
        cycle: Path::closed(cycle),
        branches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gensurf::{generate, GenSpec, Kind};

    fn gen(kind: Kind) -> crate::gensurf::Generated {
        generate(&GenSpec::new(kind, 5)).unwrap()
    }

    #[test]
    fn octahedron_equator_separates_poles() {
        let g = gen(Kind::Octahedron);
        let eq = g.curve("equator").unwrap();
        let r = components(&g.surface, eq).unwrap();
        assert_eq!(r.components.len(), 2);
        assert!(r.components.iter().all(|c| c.len() == 1));
        assert!(r.seeds_separated());
        assert_eq!(r.flank_a.len(), 4);
        assert_eq!(r.flank_b.len(), 4);
    }

    #[test]
    fn octahedron_theorem1_hypotheses_fail_but_conclusion_holds() {
        let g = gen(Kind::Octahedron);
        let out = check_theorem1(&g.surface, g.curve("equator").unwrap(), 4).unwrap();
        assert_eq!(out.verdict, Verdict::HypothesesFailed { conclusion_holds: true });
    }

    #[test]
    fn torus_meridian_does_not_separate() {
        let g = gen(Kind::TorusGrid(4, 4));
        let r = components(&g.surface, g.curve("meridian").unwrap()).unwrap();
        assert_eq!(r.components.len(), 1);
        assert!(!r.seeds_separated());
    }

    #[test]
    fn veblen_counts() {
        let quad = Surface::new(vec![vec![0, 1, 2, 3]]);
        let v = insert_veblen_points(&quad, &Path::closed(vec![])).unwrap();
        assert_eq!(v.surface.num_vertices(), 9);
        assert_eq!(v.surface.num_cells(), 8);
        let g = gen(Kind::Octahedron);
        let v = insert_veblen_points(&g.surface, g.curve("equator").unwrap()).unwrap();
        assert_eq!(v.surface.num_vertices(), 22);
        assert!(v.surface.validate().is_empty());
        for (&x, kind) in &v.kinds {
            if let VertexKind::VeblenEdge(e) = kind {
                assert_eq!(v.surface.degree(x), 2 + g.surface.edge_cells(e.0, e.1).len());
            }
        }
    }

    #[test]
    fn veblen_rejects_boundary_curves() {
        let g = gen(Kind::Disk(2));
        assert!(matches!(
            insert_veblen_points(&g.surface, g.curve("rim").unwrap()),
            Err(JordanError::CurveTouchesBoundary(_))
        ));
    }

    #[test]
    fn single_cell_curve_has_one_point_inside() {
        let g = gen(Kind::Octahedron);
        let cell = g.surface.cell(3).to_vec();
        let out = check_theorem2(&g.surface, &Path::closed(cell)).unwrap();
        assert!(out.verdict.passed());
        let inside = out.single_cell_inside.unwrap();
        let comp = out.report.component_of(inside).unwrap();
        assert_eq!(out.report.components[comp], vec![inside]);
    }

    #[test]
    fn two_square_sphere() {
        let s = Surface::new(vec![vec![0, 1, 2, 3], vec![3, 2, 1, 0]]);
        let out = check_theorem2(&s, &Path::closed(vec![0, 1, 2, 3])).unwrap();
        assert!(out.verdict.passed());
        assert_eq!(out.report.components, vec![vec![4], vec![5]]);
    }

    #[test]
    fn splitting_curve_edges_breaks_separation() {
        let g = gen(Kind::Icosahedron);
        let eq = g.curve("equator").unwrap();
        assert!(check_theorem2(&g.surface, eq).unwrap().verdict.passed());
        let bad = check_theorem2_with(&g.surface, eq, true).unwrap();
        assert!(!bad.verdict.passed());
    }

    #[test]
    fn edge_neighborhood_boundary_is_a_cycle() {
        let g = gen(Kind::Octahedron);
        let e = g.surface.edges().next().unwrap();
        let b = classify_arc_neighborhood_boundary(&g.surface, &[e.0, e.1]).unwrap();
        assert!(b.branches.is_empty());
        assert_eq!(b.cycle.len(), 4);
        assert!(matches!(
            classify_arc_neighborhood_boundary(&g.surface, &[]),
            Err(JordanError::NotAnArc(_))
        ));
    }

    #[test]
    fn pinched_arc_has_a_branch() {
        let g = gen(Kind::Disk(3));
        let ring = g.curve("ring1").unwrap();
        let arc = &ring.vertices[..5];
        let b = classify_arc_neighborhood_boundary(&g.surface, arc).unwrap();
        assert_eq!(b.branches.len(), 1);
        let centre_and_gap: BTreeSet<VertexId> = b.branches[0].vertices.iter().copied().collect();
        assert!(centre_and_gap.contains(&ring.vertices[5]));
        assert_eq!(b.branches[0].len(), 2);
    }
}
