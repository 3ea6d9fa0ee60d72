//! Pseudo-curves, semi-curves and discrete curves, plus the wide-angle
//! hypotheses of the separation theorem.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::surface::{Edge, Surface, VertexId};

/// Default search radius (in edges) for the short off-curve path condition.
pub const DEFAULT_PAIR_RADIUS: usize = 4;

/// An ordered vertex sequence. For closed paths the closing edge from the
/// last vertex back to the first is implicit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub vertices: Vec<VertexId>,
    pub closed: bool,
}

impl Path {
    pub fn open(vertices: Vec<VertexId>) -> Self {
        Path { vertices, closed: false }
    }

    pub fn closed(vertices: Vec<VertexId>) -> Self {
        Path { vertices, closed: true }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn position(&self, v: VertexId) -> Option<usize> {
        self.vertices.iter().position(|&w| w == v)
    }

    /// Edges in traversal order as directed pairs.
    pub fn directed_edges(&self) -> Vec<(VertexId, VertexId)> {
        let n = self.vertices.len();
        let mut out: Vec<(VertexId, VertexId)> =
            self.vertices.windows(2).map(|w| (w[0], w[1])).collect();
        if self.closed && n >= 3 {
            out.push((self.vertices[n - 1], self.vertices[0]));
        }
        out
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.directed_edges()
            .into_iter()
            .map(|(a, b)| Edge::new(a, b))
            .collect()
    }

    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.edges().into_iter().collect()
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.vertices.iter().copied().collect()
    }

    /// Curve neighbors of the vertex at index `i` (previous, next).
    pub fn neighbors_at(&self, i: usize) -> (Option<VertexId>, Option<VertexId>) {
        let n = self.vertices.len();
        if self.closed {
            (
                Some(self.vertices[(i + n - 1) % n]),
                Some(self.vertices[(i + 1) % n]),
            )
        } else {
            (
                i.checked_sub(1).map(|j| self.vertices[j]),
                self.vertices.get(i + 1).copied(),
            )
        }
    }

    /// Are `a` and `b` consecutive along the path?
    pub fn adjacent_on_path(&self, a: VertexId, b: VertexId) -> bool {
        match self.position(a) {
            Some(i) => {
                let (prev, next) = self.neighbors_at(i);
                prev == Some(b) || next == Some(b)
            }
            None => false,
        }
    }

    pub fn reversed(&self) -> Path {
        let mut v = self.vertices.clone();
        if self.closed && !v.is_empty() {
            v[1..].reverse();
        } else {
            v.reverse();
        }
        Path { vertices: v, closed: self.closed }
    }

    /// Closed path rotated so that `v` comes first.
    pub fn rotated_to(&self, v: VertexId) -> Option<Path> {
        let i = self.position(v)?;
        let mut out = self.vertices[i..].to_vec();
        out.extend_from_slice(&self.vertices[..i]);
        Some(Path { vertices: out, closed: self.closed })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurveClass {
    PseudoCurve,
    SemiCurve,
    DiscreteCurve,
}

impl CurveClass {
    /// Class membership respecting the nesting Discrete ⊂ Semi ⊂ Pseudo.
    pub fn is_at_least(self, other: CurveClass) -> bool {
        self >= other
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AngleReport {
    pub vertex: VertexId,
    pub wideness: usize,
    /// Detour from the previous curve vertex to the next one.
    pub witness: Vec<VertexId>,
}

/// A nonadjacent curve pair joined by a short off-curve path that lacks three
/// edges lying in three different cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairViolation {
    pub p: VertexId,
    pub q: VertexId,
    pub path: Vec<VertexId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HypothesisReport {
    pub narrow_angles: Vec<AngleReport>,
    pub pair_violations: Vec<PairViolation>,
    pub radius: usize,
}

impl HypothesisReport {
    pub fn holds(&self) -> bool {
        self.narrow_angles.is_empty() && self.pair_violations.is_empty()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("path is not simple: {0}")]
    NotSimple(String),
    #[error("{0} and {1} are not joined by an edge")]
    EdgeMissing(VertexId, VertexId),
    #[error("curve is not closed")]
    NotClosed,
    #[error("curve is not a discrete curve")]
    NotDiscrete,
    #[error("curve touches the boundary at vertex {0}")]
    BoundaryContact(VertexId),
    #[error("no detour around vertex {0}")]
    NoDetour(VertexId),
    #[error("vertex {0} is not on the curve")]
    VertexNotOnCurve(VertexId),
    #[error("arc endpoints coincide")]
    EqualEndpoints,
}

/// Check that `path` is simple and that each consecutive pair is an edge.
pub fn check_path(surface: &Surface, path: &Path) -> Result<(), CurveError> {
    if path.is_empty() {
        return Err(CurveError::NotSimple("empty".into()));
    }
    if path.closed && path.len() < 3 {
        return Err(CurveError::NotSimple("closed path needs 3 vertices".into()));
    }
    let mut seen = BTreeSet::new();
    for &v in &path.vertices {
        if !surface.contains_vertex(v) {
            return Err(CurveError::NotSimple(format!("unknown vertex {v}")));
        }
        if !seen.insert(v) {
            return Err(CurveError::NotSimple(format!("vertex {v} repeats")));
        }
    }
    for (a, b) in path.directed_edges() {
        if !surface.has_edge(a, b) {
            return Err(CurveError::EdgeMissing(a, b));
        }
    }
    Ok(())
}

/// Indices of cells whose whole vertex set lies in the path.
pub fn contained_cells(surface: &Surface, path: &Path) -> Vec<usize> {
    let set = path.vertex_set();
    let mut out = BTreeSet::new();
    for &v in &path.vertices {
        for &c in surface.vertex_cells(v) {
            if surface.cell(c).iter().all(|w| set.contains(w)) {
                out.insert(c);
            }
        }
    }
    out.into_iter().collect()
}

pub fn classify(surface: &Surface, path: &Path) -> Result<CurveClass, CurveError> {
    check_path(surface, path)?;
    if !path.closed {
        return Ok(CurveClass::PseudoCurve);
    }
    if contained_cells(surface, path).is_empty() {
        Ok(CurveClass::DiscreteCurve)
    } else {
        Ok(CurveClass::SemiCurve)
    }
}

/// Shortest detour between the two curve neighbors of `x0` that avoids `x0`
/// and only uses edges of cells containing `x0`.
pub fn angle_wideness(
    surface: &Surface,
    curve: &Path,
    x0: VertexId,
) -> Result<AngleReport, CurveError> {
    let i = curve.position(x0).ok_or(CurveError::VertexNotOnCurve(x0))?;
    let (Some(prev), Some(next)) = curve.neighbors_at(i) else {
        return Err(CurveError::VertexNotOnCurve(x0));
    };
    let mut adj: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
    for &c in surface.vertex_cells(x0) {
        let cell = surface.cell(c);
        let k = cell.len();
        for j in 0..k {
            let (a, b) = (cell[j], cell[(j + 1) % k]);
            if a != x0 && b != x0 {
                adj.entry(a).or_default().insert(b);
                adj.entry(b).or_default().insert(a);
            }
        }
    }
    let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut queue = VecDeque::from([prev]);
    parent.insert(prev, prev);
    while let Some(v) = queue.pop_front() {
        if v == next {
            break;
        }
        for &w in adj.get(&v).into_iter().flatten() {
            if let std::collections::btree_map::Entry::Vacant(e) = parent.entry(w) {
                e.insert(v);
                queue.push_back(w);
            }
        }
    }
    if !parent.contains_key(&next) {
        return Err(CurveError::NoDetour(x0));
    }
    let mut witness = vec![next];
    let mut v = next;
    while v != prev {
        v = parent[&v];
        witness.push(v);
    }
    witness.reverse();
    Ok(AngleReport {
        vertex: x0,
        wideness: witness.len() - 1,
        witness,
    })
}

/// Do the path's edges admit three distinct edges in three distinct cells?
pub fn has_three_cell_system(surface: &Surface, path: &[VertexId]) -> bool {
    let options: Vec<&[usize]> = path
        .windows(2)
        .map(|w| surface.edge_cells(w[0], w[1]))
        .collect();
    let m = options.len();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                for &a in options[i] {
                    for &b in options[j] {
                        if b == a {
                            continue;
                        }
                        if options[k].iter().any(|&c| c != a && c != b) {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

/// Every angle of wideness below 3 and every short off-curve connection
/// between nonadjacent curve vertices lacking three edges in three cells.
pub fn check_theorem1_hypotheses(
    surface: &Surface,
    curve: &Path,
    radius: usize,
) -> Result<HypothesisReport, CurveError> {
    if !curve.closed {
        return Err(CurveError::NotClosed);
    }
    if classify(surface, curve)? != CurveClass::DiscreteCurve {
        return Err(CurveError::NotDiscrete);
    }
    if let Some(&v) = curve
        .vertices
        .iter()
        .find(|&&v| surface.is_boundary_vertex(v))
    {
        return Err(CurveError::BoundaryContact(v));
    }
    let mut report = HypothesisReport {
        radius,
        ..Default::default()
    };
    for &x in &curve.vertices {
        let a = angle_wideness(surface, curve, x)?;
        if a.wideness < 3 {
            report.narrow_angles.push(a);
        }
    }
    let on_curve = curve.vertex_set();
    let mut found: BTreeMap<(VertexId, VertexId), Vec<VertexId>> = BTreeMap::new();
    for &p in &curve.vertices {
        let mut stack = vec![p];
        short_paths(surface, curve, &on_curve, radius, &mut stack, &mut found);
    }
    report.pair_violations = found
        .into_iter()
        .map(|((p, q), path)| PairViolation { p, q, path })
        .collect();
    Ok(report)
}

fn short_paths(
    surface: &Surface,
    curve: &Path,
    on_curve: &BTreeSet<VertexId>,
    radius: usize,
    stack: &mut Vec<VertexId>,
    found: &mut BTreeMap<(VertexId, VertexId), Vec<VertexId>>,
) {
    // Once a prefix has the three-cell system every extension has it too.
    if stack.len() >= 4 && has_three_cell_system(surface, stack) {
        return;
    }
    let p = stack[0];
    let last = *stack.last().unwrap();
    for &w in surface.neighbors(last) {
        if stack.contains(&w) {
            continue;
        }
        if on_curve.contains(&w) {
            if stack.len() == 1 || w < p {
                // Curve edges are not off-curve paths; pairs are reported once
                // from their smaller endpoint.
                continue;
            }
            if curve.adjacent_on_path(p, w) {
                continue;
            }
            stack.push(w);
            if !has_three_cell_system(surface, stack) {
                let key = (p, w);
                let better = found.get(&key).is_none_or(|old| old.len() > stack.len());
                if better {
                    found.insert(key, stack.clone());
                }
            }
            stack.pop();
        } else if stack.len() < radius {
            stack.push(w);
            short_paths(surface, curve, on_curve, radius, stack, found);
            stack.pop();
        }
    }
}

/// Split a closed curve at `p` and `q`: the arc from `p` to `q` along the
/// stored orientation and the arc from `p` to `q` against it.
pub fn split_arcs(curve: &Path, p: VertexId, q: VertexId) -> Result<(Path, Path), CurveError> {
    if !curve.closed {
        return Err(CurveError::NotClosed);
    }
    let i = curve.position(p).ok_or(CurveError::VertexNotOnCurve(p))?;
    let j = curve.position(q).ok_or(CurveError::VertexNotOnCurve(q))?;
    if i == j {
        return Err(CurveError::EqualEndpoints);
    }
    let n = curve.len();
    let mut along = vec![p];
    let mut k = i;
    while k != j {
        k = (k + 1) % n;
        along.push(curve.vertices[k]);
    }
    let mut against = vec![p];
    let mut k = i;
    while k != j {
        k = (k + n - 1) % n;
        against.push(curve.vertices[k]);
    }
    Ok((Path::open(along), Path::open(against)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gensurf::{self, GenSpec, Kind};

    fn octahedron() -> Surface {
        gensurf::generate(&GenSpec::new(Kind::Octahedron, 0)).unwrap().surface
    }

    #[test]
    fn triangle_boundary_is_semi_curve() {
        let s = octahedron();
        let cell = s.cell(0).to_vec();
        assert_eq!(classify(&s, &Path::closed(cell)).unwrap(), CurveClass::SemiCurve);
    }

    #[test]
    fn equator_is_discrete_curve() {
        let g = gensurf::generate(&GenSpec::new(Kind::Octahedron, 0)).unwrap();
        let eq = g.curve("equator").unwrap();
        assert_eq!(classify(&g.surface, eq).unwrap(), CurveClass::DiscreteCurve);
        for &x in &eq.vertices {
            let a = angle_wideness(&g.surface, eq, x).unwrap();
            assert_eq!(a.wideness, 2);
            assert_eq!(a.witness.len(), 3);
        }
        let r = check_theorem1_hypotheses(&g.surface, eq, DEFAULT_PAIR_RADIUS).unwrap();
        assert_eq!(r.narrow_angles.len(), 4);
        assert!(!r.holds());
    }

    #[test]
    fn open_path_is_pseudo_curve() {
        let g = gensurf::generate(&GenSpec::new(Kind::Octahedron, 0)).unwrap();
        let eq = g.curve("equator").unwrap();
        let open = Path::open(eq.vertices[..3].to_vec());
        assert_eq!(classify(&g.surface, &open).unwrap(), CurveClass::PseudoCurve);
        assert_eq!(
            check_theorem1_hypotheses(&g.surface, &open, 4),
            Err(CurveError::NotClosed)
        );
    }

    #[test]
    fn broken_paths_are_rejected() {
        let s = octahedron();
        assert!(matches!(
            classify(&s, &Path::open(vec![0, 1, 0])),
            Err(CurveError::NotSimple(_))
        ));
        let far: Vec<VertexId> = s.vertices().filter(|&v| !s.has_edge(0, v) && v != 0).collect();
        assert_eq!(
            classify(&s, &Path::open(vec![0, far[0]])),
            Err(CurveError::EdgeMissing(0, far[0]))
        );
    }

    #[test]
    fn wideness_one_means_a_cell_inside() {
        let s = octahedron();
        let cell = s.cell(2).to_vec();
        let c = Path::closed(cell.clone());
        let a = angle_wideness(&s, &c, cell[1]).unwrap();
        assert_eq!(a.wideness, 1);
    }

    #[test]
    fn boundary_contact_is_an_error() {
        let g = gensurf::generate(&GenSpec::new(Kind::Disk(2), 0)).unwrap();
        let rim = g.curve("rim").unwrap();
        assert!(matches!(
            check_theorem1_hypotheses(&g.surface, rim, 4),
            Err(CurveError::BoundaryContact(_))
        ));
    }

    #[test]
    fn split_arcs_examples() {
        let c = Path::closed(vec![1, 2, 3, 4]);
        let (a, b) = split_arcs(&c, 1, 3).unwrap();
        assert_eq!(a.vertices, vec![1, 2, 3]);
        assert_eq!(b.vertices, vec![1, 4, 3]);
        let (a, b) = split_arcs(&c, 1, 2).unwrap();
        assert_eq!(a.vertices, vec![1, 2]);
        assert_eq!(b.vertices, vec![1, 4, 3, 2]);
        assert_eq!(split_arcs(&c, 2, 2), Err(CurveError::EqualEndpoints));
        assert_eq!(split_arcs(&c, 2, 9), Err(CurveError::VertexNotOnCurve(9)));
    }

    #[test]
    fn three_cell_system() {
        let s = octahedron();
        // Two edges can never supply three cells.
        assert!(!has_three_cell_system(&s, &[1, 0, 3]));
        assert!(has_three_cell_system(&s, &[1, 0, 3, 5]));
    }

    #[test]
    fn chord_is_a_pair_violation() {
        // Nonadjacent ring-2 vertices are joined through ring 1 by paths too
        // short to carry three cells.
        let g = gensurf::generate(&GenSpec::new(Kind::Disk(4), 0)).unwrap();
        let ring = g.curve("ring2").unwrap();
        let r = check_theorem1_hypotheses(&g.surface, ring, 4).unwrap();
        assert!(!r.pair_violations.is_empty());
        for v in &r.pair_violations {
            assert!(!has_three_cell_system(&g.surface, &v.path));
            assert!(!ring.adjacent_on_path(v.p, v.q));
        }
    }
}
