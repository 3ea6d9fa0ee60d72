//! Contraction of a cycle to a point by removing one triangle at a time,
//! arc deformation across a disk, and a brute-force simple-connectedness
//! oracle for tiny complexes.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::curves::{check_path, split_arcs, CurveError, Path};
use crate::gensurf;
use crate::surface::{traverses, Edge, Surface, VertexId};
use crate::variation::{crosses_over, is_gradually_varied, is_side_gradually_varied};

/// Hard ceiling for the exhaustive oracle.
pub const MAX_ORACLE_CELLS: usize = 14;
pub const DEFAULT_ORACLE_CELLS: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContractionError {
    #[error("anchor {0} is not on the curve")]
    AnchorNotOnCurve(VertexId),
    #[error("cell {0} inside the curve is not a triangle")]
    InteriorNotTriangulated(usize),
    #[error("InteriorNotDisk: {0}")]
    InteriorNotDisk(String),
    #[error("arc endpoints coincide")]
    EqualEndpoints,
    #[error("surface has {cells} cells, oracle limit is {limit}")]
    TooLarge { cells: usize, limit: usize },
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SequenceKind {
    Contraction,
    ArcDeformation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationSequence {
    pub kind: SequenceKind,
    pub entries: Vec<Path>,
    /// Cell removed between entry `i` and entry `i + 1`.
    pub witnesses: Vec<usize>,
    /// Steps where a remaining curve vertex changed distance to the anchor.
    pub unstable_steps: Vec<usize>,
    /// Steps not chosen by the farthest-vertex rule.
    pub fallback_steps: Vec<usize>,
}

impl DeformationSequence {
    pub fn steps(&self) -> usize {
        self.witnesses.len()
    }
}

/// Breadth-first edge-count distances from `p` in the graph formed by the
/// edges of the given cells.
pub fn graph_distances(
    surface: &Surface,
    cells: &[usize],
    p: VertexId,
) -> Result<BTreeMap<VertexId, usize>, ContractionError> {
    let adj = cell_graph(surface, cells.iter().copied());
    if !adj.contains_key(&p) {
        return Err(ContractionError::UnknownVertex(p));
    }
    Ok(bfs(&adj, &[p]))
}

/// Distances from `p` in the whole edge graph.
pub fn surface_distances(surface: &Surface, p: VertexId) -> Result<BTreeMap<VertexId, usize>, ContractionError> {
    if !surface.contains_vertex(p) {
        return Err(ContractionError::UnknownVertex(p));
    }
    let mut dist = BTreeMap::from([(p, 0usize)]);
    let mut queue = VecDeque::from([p]);
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        for &w in surface.neighbors(v) {
            dist.entry(w).or_insert_with(|| {
                queue.push_back(w);
                d + 1
            });
        }
    }
    Ok(dist)
}

fn cell_graph(surface: &Surface, cells: impl Iterator<Item = usize>) -> BTreeMap<VertexId, BTreeSet<VertexId>> {
    let mut adj: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
    for c in cells {
        let cell = surface.cell(c);
        let k = cell.len();
        for i in 0..k {
            let (a, b) = (cell[i], cell[(i + 1) % k]);
            adj.entry(a).or_default().insert(b);
            adj.entry(b).or_default().insert(a);
        }
    }
    adj
}

fn bfs(adj: &BTreeMap<VertexId, BTreeSet<VertexId>>, sources: &[VertexId]) -> BTreeMap<VertexId, usize> {
    let mut dist: BTreeMap<VertexId, usize> = sources.iter().map(|&s| (s, 0)).collect();
    let mut queue: VecDeque<VertexId> = sources.iter().copied().collect();
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        for &w in adj.get(&v).into_iter().flatten() {
            dist.entry(w).or_insert_with(|| {
                queue.push_back(w);
                d + 1
            });
        }
    }
    dist
}

/// Cells of the disk bounded by `curve`: the cell group (connected across
/// non-curve edges) whose boundary is exactly the curve. When both sides
/// qualify the one with fewer cells is taken, ties going to the side of the
/// cells that run along the curve's first edge.
pub fn interior_cells(surface: &Surface, curve: &Path) -> Result<Vec<usize>, ContractionError> {
    let curve_edges = curve.edge_set();
    let mut group = vec![usize::MAX; surface.num_cells()];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for start in 0..surface.num_cells() {
        if group[start] != usize::MAX {
            continue;
        }
        let id = groups.len();
        group[start] = id;
        let mut members = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            let cell = surface.cell(c);
            let k = cell.len();
            for i in 0..k {
                let (a, b) = (cell[i], cell[(i + 1) % k]);
                if curve_edges.contains(&Edge::new(a, b)) {
                    continue;
                }
                for &d in surface.edge_cells(a, b) {
                    if group[d] == usize::MAX {
                        group[d] = id;
                        members.push(d);
                        queue.push_back(d);
                    }
                }
            }
        }
        members.sort_unstable();
        groups.push(members);
    }
    let mut candidates: Vec<usize> = Vec::new();
    for (id, members) in groups.iter().enumerate() {
        let mut count: BTreeMap<Edge, usize> = BTreeMap::new();
        for &c in members {
            let cell = surface.cell(c);
            let k = cell.len();
            for i in 0..k {
                *count.entry(Edge::new(cell[i], cell[(i + 1) % k])).or_default() += 1;
            }
        }
        let rim: BTreeSet<Edge> = count.into_iter().filter(|(_, n)| *n == 1).map(|(e, _)| e).collect();
        if rim == curve_edges {
            candidates.push(id);
        }
    }
    let first = curve.directed_edges().first().copied();
    let along = |id: usize| -> bool {
        first.is_some_and(|(u, v)| {
            groups[id]
                .iter()
                .any(|&c| traverses(surface.cell(c), u, v))
        })
    };
    let chosen = candidates
        .into_iter()
        .min_by_key(|&id| (groups[id].len(), !along(id)))
        .ok_or_else(|| ContractionError::InteriorNotDisk("no cell region is bounded by the curve".into()))?;
    let cells = groups[chosen].clone();
    if let Some(&c) = cells.iter().find(|&&c| surface.cell(c).len() != 3) {
        return Err(ContractionError::InteriorNotTriangulated(c));
    }
    let verts: BTreeSet<VertexId> = cells.iter().flat_map(|&c| surface.cell(c).iter().copied()).collect();
    let edges: BTreeSet<Edge> = cells
        .iter()
        .flat_map(|&c| {
            let t = surface.cell(c);
            [Edge::new(t[0], t[1]), Edge::new(t[1], t[2]), Edge::new(t[2], t[0])]
        })
        .collect();
    let chi = verts.len() as i64 - edges.len() as i64 + cells.len() as i64;
    if chi != 1 {
        return Err(ContractionError::InteriorNotDisk(format!("region has Euler characteristic {chi}")));
    }
    Ok(cells)
}

/// Remaining triangles of a shrinking disk, indexed for boundary updates.
struct Region<'a> {
    surface: &'a Surface,
    cells: BTreeSet<usize>,
    by_edge: BTreeMap<Edge, Vec<usize>>,
    by_vertex: BTreeMap<VertexId, Vec<usize>>,
}

impl<'a> Region<'a> {
    fn new(surface: &'a Surface, cells: &[usize]) -> Self {
        let mut r = Region {
            surface,
            cells: BTreeSet::new(),
            by_edge: BTreeMap::new(),
            by_vertex: BTreeMap::new(),
        };
        for &c in cells {
            r.cells.insert(c);
            let t = surface.cell(c);
            for i in 0..3 {
                r.by_edge.entry(Edge::new(t[i], t[(i + 1) % 3])).or_default().push(c);
                r.by_vertex.entry(t[i]).or_default().push(c);
            }
        }
        r
    }

    fn remove(&mut self, c: usize) {
        self.cells.remove(&c);
        let t = self.surface.cell(c);
        for i in 0..3 {
            let e = Edge::new(t[i], t[(i + 1) % 3]);
            if let Some(list) = self.by_edge.get_mut(&e) {
                list.retain(|&d| d != c);
                if list.is_empty() {
                    self.by_edge.remove(&e);
                }
            }
            if let Some(list) = self.by_vertex.get_mut(&t[i]) {
                list.retain(|&d| d != c);
                if list.is_empty() {
                    self.by_vertex.remove(&t[i]);
                }
            }
        }
    }

    fn cells_at(&self, v: VertexId) -> &[usize] {
        self.by_vertex.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    fn cells_on(&self, a: VertexId, b: VertexId) -> &[usize] {
        self.by_edge.get(&Edge::new(a, b)).map(Vec::as_slice).unwrap_or(&[])
    }

    fn apex(&self, c: usize, a: VertexId, b: VertexId) -> VertexId {
        *self.surface.cell(c).iter().find(|&&v| v != a && v != b).unwrap()
    }

    fn graph(&self) -> BTreeMap<VertexId, BTreeSet<VertexId>> {
        cell_graph(self.surface, self.cells.iter().copied())
    }
}

/// A single move on a boundary path.
#[derive(Clone, Copy, Debug)]
enum Move {
    /// Drop vertex at this index; its only triangle is the given cell.
    Ear { index: usize, cell: usize },
    /// Replace the edge starting at this index by the two other sides of the cell.
    Bump { index: usize, cell: usize, apex: VertexId },
}

fn ear_at(region: &Region, cycle: &[VertexId], i: usize, closed: bool) -> Option<Move> {
    let n = cycle.len();
    if !closed && (i == 0 || i + 1 == n) {
        return None;
    }
    let x = cycle[i];
    let (a, b) = (cycle[(i + n - 1) % n], cycle[(i + 1) % n]);
    match region.cells_at(x) {
        [c] => {
            let t = region.surface.cell(*c);
            (t.contains(&a) && t.contains(&b)).then_some(Move::Ear { index: i, cell: *c })
        }
        _ => None,
    }
}

/// Bump over the edge from `cycle[i]` to its successor.
fn bump_at(region: &Region, cycle: &[VertexId], on_cycle: &BTreeSet<VertexId>, i: usize) -> Option<Move> {
    let n = cycle.len();
    let (x, y) = (cycle[i], cycle[(i + 1) % n]);
    match region.cells_on(x, y) {
        [c] => {
            let z = region.apex(*c, x, y);
            (!on_cycle.contains(&z)).then_some(Move::Bump { index: i, cell: *c, apex: z })
        }
        _ => None,
    }
}

fn apply(cycle: &mut Vec<VertexId>, mv: Move) -> usize {
    match mv {
        Move::Ear { index, cell } => {
            cycle.remove(index);
            cell
        }
        Move::Bump { index, cell, apex } => {
            cycle.insert(index + 1, apex);
            cell
        }
    }
}

/// Contract `curve` onto the triangle containing `p` inside it.
pub fn contract_cycle(
    surface: &Surface,
    curve: &Path,
    p: VertexId,
) -> Result<DeformationSequence, ContractionError> {
    if !curve.closed {
        return Err(CurveError::NotClosed.into());
    }
    check_path(surface, curve)?;
    let start = curve.rotated_to(p).ok_or(ContractionError::AnchorNotOnCurve(p))?;
    let interior = interior_cells(surface, curve)?;
    let mut region = Region::new(surface, &interior);
    let mut cycle = start.vertices.clone();
    let mut seq = DeformationSequence {
        kind: SequenceKind::Contraction,
        entries: vec![start],
        witnesses: Vec::new(),
        unstable_steps: Vec::new(),
        fallback_steps: Vec::new(),
    };
    while region.cells.len() > 1 {
        let dist = bfs(&region.graph(), &[p]);
        let on_cycle: BTreeSet<VertexId> = cycle.iter().copied().collect();
        let n = cycle.len();
        // Farthest curve vertex, first in stored order after p.
        let far = (1..n).max_by_key(|&i| (dist.get(&cycle[i]).copied().unwrap_or(0), std::cmp::Reverse(i)));
        let mut chosen = None;
        if let Some(i) = far {
            chosen = ear_at(&region, &cycle, i, true);
            if chosen.is_none() && region.cells_at(cycle[i]).len() > 1 {
                let dx = dist.get(&cycle[i]);
                let next = (i, (i + 1) % n);
                let prev = ((i + n - 1) % n, i);
                let same = |j: usize| dist.get(&cycle[j]) == dx;
                let mut order = Vec::new();
                if same(next.1) {
                    order.push(next.0);
                }
                if same(prev.0) {
                    order.push(prev.0);
                }
                order.push(next.0);
                order.push(prev.0);
                chosen = order.into_iter().find_map(|j| bump_at(&region, &cycle, &on_cycle, j));
            }
        }
        let mv = match chosen {
            Some(m) => m,
            None => {
                seq.fallback_steps.push(seq.witnesses.len());
                (1..n)
                    .find_map(|i| ear_at(&region, &cycle, i, true))
                    .or_else(|| (0..n).find_map(|i| bump_at(&region, &cycle, &on_cycle, i)))
                    .ok_or_else(|| ContractionError::InteriorNotDisk("no removable triangle".into()))?
            }
        };
        let moved = match mv {
            Move::Ear { index, .. } => cycle[index],
            Move::Bump { index, .. } => cycle[index],
        };
        let cell = apply(&mut cycle, mv);
        region.remove(cell);
        let after = bfs(&region.graph(), &[p]);
        let stable = cycle
            .iter()
            .filter(|v| on_cycle.contains(v) && **v != moved)
            .all(|v| after.get(v) == dist.get(v));
        if !stable {
            seq.unstable_steps.push(seq.witnesses.len());
        }
        seq.witnesses.push(cell);
        seq.entries.push(Path::closed(cycle.clone()));
    }
    Ok(seq)
}

/// Sweep the arc `C(p, q)` across the disk bounded by `curve` until it
/// coincides with `Cᵃ(p, q)`, one triangle per step.
pub fn deform_arc(
    surface: &Surface,
    curve: &Path,
    p: VertexId,
    q: VertexId,
) -> Result<DeformationSequence, ContractionError> {
    if p == q {
        return Err(ContractionError::EqualEndpoints);
    }
    check_path(surface, curve)?;
    if !curve.contains(p) {
        return Err(ContractionError::AnchorNotOnCurve(p));
    }
    if !curve.contains(q) {
        return Err(ContractionError::AnchorNotOnCurve(q));
    }
    let (moving, fixed) = split_arcs(curve, p, q)?;
    let interior = interior_cells(surface, curve)?;
    let mut region = Region::new(surface, &interior);
    let fixed_set = fixed.vertex_set();
    let mut arc = moving.vertices.clone();
    let mut seq = DeformationSequence {
        kind: SequenceKind::ArcDeformation,
        entries: vec![moving],
        witnesses: Vec::new(),
        unstable_steps: Vec::new(),
        fallback_steps: Vec::new(),
    };
    while !region.cells.is_empty() {
        let dist = bfs(&region.graph(), &fixed.vertices);
        let on_arc: BTreeSet<VertexId> = arc.iter().copied().collect();
        let n = arc.len();
        let ear = |i: usize| -> Option<Move> {
            if fixed_set.contains(&arc[i]) {
                return None;
            }
            ear_at(&region, &arc, i, false)
        };
        let bump = |i: usize| -> Option<Move> {
            if i + 1 >= n {
                return None;
            }
            bump_at(&region, &arc, &on_arc, i)
        };
        let far = (1..n.saturating_sub(1))
            .filter(|&i| !fixed_set.contains(&arc[i]))
            .max_by_key(|&i| (dist.get(&arc[i]).copied().unwrap_or(0), std::cmp::Reverse(i)));
        let mut chosen = far.and_then(|i| ear(i).or_else(|| bump(i)).or_else(|| bump(i - 1)));
        if chosen.is_none() {
            seq.fallback_steps.push(seq.witnesses.len());
            chosen = (1..n.saturating_sub(1))
                .find_map(ear)
                .or_else(|| (0..n).find_map(bump));
        }
        let mv = chosen.ok_or_else(|| ContractionError::InteriorNotDisk("arc deformation stalled".into()))?;
        let cell = apply(&mut arc, mv);
        region.remove(cell);
        seq.witnesses.push(cell);
        seq.entries.push(Path::open(arc.clone()));
    }
    if arc != fixed.vertices {
        return Err(ContractionError::InteriorNotDisk("arc did not reach the opposite side".into()));
    }
    Ok(seq)
}

/// Problems with a sequence: steps that are not single-cell, side-gradual
/// moves, anchors lost, or vertices that return after leaving.
pub fn audit_sequence(surface: &Surface, seq: &DeformationSequence) -> Vec<String> {
    let mut problems = Vec::new();
    let anchor = seq.entries.first().and_then(|e| e.vertices.first().copied());
    let mut left: BTreeSet<VertexId> = BTreeSet::new();
    for (i, pair) in seq.entries.windows(2).enumerate() {
        let (a, b) = (&pair[0], &pair[1]);
        let g = is_gradually_varied(surface, a, b);
        if !g.varied || g.witness.len() != 1 {
            problems.push(format!("step {i}: witness {:?}", g.witness));
        } else if seq.witnesses.get(i) != Some(&g.witness[0]) {
            problems.push(format!("step {i}: recorded witness differs"));
        }
        match crosses_over(surface, a, b) {
            Ok(c) if c.crosses => problems.push(format!("step {i}: paths cross over at {:?}", c.sites)),
            Ok(_) => {}
            Err(e) => problems.push(format!("step {i}: {e}")),
        }
        if seq.kind == SequenceKind::Contraction {
            if let Some(p) = anchor {
                if !b.contains(p) {
                    problems.push(format!("step {i}: anchor {p} lost"));
                }
            }
        }
        for &v in &a.vertices {
            if !b.contains(v) {
                left.insert(v);
            }
        }
        if let Some(v) = b.vertices.iter().find(|v| left.contains(v)) {
            problems.push(format!("step {i}: vertex {v} returns"));
        }
    }
    problems
}

/// All simple paths from `p` to `q`.
pub fn simple_paths(surface: &Surface, p: VertexId, q: VertexId) -> Vec<Vec<VertexId>> {
    fn go(s: &Surface, q: VertexId, stack: &mut Vec<VertexId>, seen: &mut BTreeSet<VertexId>, out: &mut Vec<Vec<VertexId>>) {
        let last = *stack.last().unwrap();
        if last == q {
            out.push(stack.clone());
            return;
        }
        for &w in s.neighbors(last) {
            if seen.insert(w) {
                stack.push(w);
                go(s, q, stack, seen, out);
                stack.pop();
                seen.remove(&w);
            }
        }
    }
    let mut out = Vec::new();
    let mut seen = BTreeSet::from([p]);
    go(surface, q, &mut vec![p], &mut seen, &mut out);
    out
}

/// Exhaustive check that `C(p, q)` reaches `Cᵃ(p, q)` through side-gradually
/// varied simple paths.
pub fn oracle_definition_c(
    surface: &Surface,
    curve: &Path,
    p: VertexId,
    q: VertexId,
    cell_limit: usize,
) -> Result<bool, ContractionError> {
    let limit = cell_limit.min(MAX_ORACLE_CELLS);
    if surface.num_cells() > limit {
        return Err(ContractionError::TooLarge {
            cells: surface.num_cells(),
            limit,
        });
    }
    if p == q {
        return Err(ContractionError::EqualEndpoints);
    }
    let (from, to) = split_arcs(curve, p, q)?;
    let paths: Vec<Path> = simple_paths(surface, p, q).into_iter().map(Path::open).collect();
    let index = |target: &Path| paths.iter().position(|x| x.vertices == target.vertices);
    let (Some(s), Some(t)) = (index(&from), index(&to)) else {
        return Err(CurveError::NotSimple("arc is not a path of the surface".into()).into());
    };
    let mut seen = vec![false; paths.len()];
    seen[s] = true;
    let mut queue = VecDeque::from([s]);
    while let Some(i) = queue.pop_front() {
        if i == t {
            return Ok(true);
        }
        for j in 0..paths.len() {
            if !seen[j] && is_side_gradually_varied(surface, &paths[i], &paths[j]).unwrap_or(false) {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    Ok(false)
}

#[derive(Clone, Debug, Default)]
pub struct SampleSpec {
    pub curves: Vec<Path>,
    /// Additional random curves drawn with [`gensurf::random_curve`].
    pub random: usize,
    pub seed: u64,
    /// `(p, q)` pairs tried per curve.
    pub pairs: usize,
    pub max_len: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertEntry {
    pub curve: Path,
    pub p: VertexId,
    pub q: VertexId,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certification {
    pub entries: Vec<CertEntry>,
    pub certified: bool,
    pub warning: Option<String>,
}

pub fn certify_simply_connected(surface: &Surface, sample: &SampleSpec) -> Certification {
    let mut curves = sample.curves.clone();
    let max_len = if sample.max_len == 0 { 64 } else { sample.max_len };
    for i in 0..sample.random {
        if let Ok(c) = gensurf::random_curve(surface, sample.seed.wrapping_add(i as u64), 3, max_len) {
            curves.push(c);
        }
    }
    let mut rng = <rand_chacha::ChaCha8Rng as rand_core::SeedableRng>::seed_from_u64(sample.seed);
    let mut entries = Vec::new();
    for c in &curves {
        let n = c.len();
        if n < 2 {
            continue;
        }
        for _ in 0..sample.pairs.max(1) {
            let i = gensurf::draw(&mut rng, n);
            let j = (i + 1 + gensurf::draw(&mut rng, n - 1)) % n;
            let (p, q) = (c.vertices[i], c.vertices[j]);
            let error = match deform_arc(surface, c, p, q) {
                Ok(seq) => {
                    let problems = audit_sequence(surface, &seq);
                    problems.first().cloned()
                }
                Err(e) => Some(e.to_string()),
            };
            entries.push(CertEntry { curve: c.clone(), p, q, error });
        }
    }
    let warning = entries
        .is_empty()
        .then(|| "empty sample: certification is vacuous".to_string());
    let certified = entries.iter().all(|e| e.error.is_none());
    Certification {
        entries,
        certified,
        warning,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gensurf::{generate, GenSpec, Kind};

    fn square() -> Surface {
        Surface::new(vec![vec![0, 1, 2], vec![0, 2, 3]])
    }

    #[test]
    fn distances_on_square() {
        let s = square();
        let d = graph_distances(&s, &[0, 1], 1).unwrap();
        assert_eq!(d[&1], 0);
        assert_eq!(d[&0], 1);
        assert_eq!(d[&3], 2);
        assert_eq!(graph_distances(&s, &[0], 9), Err(ContractionError::UnknownVertex(9)));
    }

    #[test]
    fn single_triangle_needs_no_steps() {
        let s = Surface::new(vec![vec![0, 1, 2]]);
        let seq = contract_cycle(&s, &Path::closed(vec![0, 1, 2]), 1).unwrap();
        assert_eq!(seq.entries.len(), 1);
        assert_eq!(seq.steps(), 0);
    }

    #[test]
    fn square_contracts_in_one_step() {
        let s = square();
        let seq = contract_cycle(&s, &Path::closed(vec![0, 1, 2, 3]), 0).unwrap();
        assert_eq!(seq.steps(), 1);
        assert!(audit_sequence(&s, &seq).is_empty());
        // Vertex 1 and 3 are both at distance 1; 1 comes first from 0.
        assert_eq!(seq.entries[1].vertices, vec![0, 2, 3]);
    }

    #[test]
    fn fan_contracts_in_n_minus_one_steps() {
        for n in [3u32, 5, 8, 12] {
            let g = generate(&GenSpec::new(Kind::Fan(n), u64::from(n))).unwrap();
            let rim = g.curve("rim").unwrap();
            let seq = contract_cycle(&g.surface, rim, rim.vertices[2]).unwrap();
            assert_eq!(seq.steps(), n as usize - 1);
            assert!(audit_sequence(&g.surface, &seq).is_empty());
            assert!(seq.unstable_steps.is_empty());
        }
    }

    #[test]
    fn anchor_must_be_on_curve() {
        let s = square();
        assert_eq!(
            contract_cycle(&s, &Path::closed(vec![0, 1, 2, 3]), 7),
            Err(ContractionError::AnchorNotOnCurve(7))
        );
    }

    #[test]
    fn annulus_is_not_a_disk() {
        let g = generate(&GenSpec::new(Kind::Annulus(8), 0)).unwrap();
        let outer = g.curve("outer").unwrap();
        assert!(matches!(
            contract_cycle(&g.surface, outer, outer.vertices[0]),
            Err(ContractionError::InteriorNotDisk(_))
        ));
    }

    #[test]
    fn torus_meridian_is_not_a_disk() {
        let g = generate(&GenSpec::new(Kind::TorusGrid(4, 4), 0)).unwrap();
        let m = g.curve("meridian").unwrap();
        assert!(matches!(
            contract_cycle(&g.surface, m, m.vertices[0]),
            Err(ContractionError::InteriorNotDisk(_))
        ));
    }

    #[test]
    fn arc_deformation_examples() {
        let t = Surface::new(vec![vec![0, 1, 2]]);
        let seq = deform_arc(&t, &Path::closed(vec![0, 1, 2]), 0, 2).unwrap();
        assert_eq!(seq.steps(), 1);
        assert_eq!(seq.entries[0].vertices, vec![0, 1, 2]);
        assert_eq!(seq.entries[1].vertices, vec![0, 2]);
        let s = square();
        let seq = deform_arc(&s, &Path::closed(vec![0, 1, 2, 3]), 1, 3).unwrap();
        assert_eq!(seq.steps(), 2);
        assert_eq!(seq.entries.last().unwrap().vertices, vec![1, 0, 3]);
        assert!(audit_sequence(&s, &seq).is_empty());
        assert_eq!(deform_arc(&s, &Path::closed(vec![0, 1, 2, 3]), 1, 1), Err(ContractionError::EqualEndpoints));
    }

    #[test]
    fn oracle_examples() {
        let t = Surface::new(vec![vec![0, 1, 2]]);
        assert!(oracle_definition_c(&t, &Path::closed(vec![0, 1, 2]), 0, 1, 12).unwrap());
        let g = generate(&GenSpec::new(Kind::Annulus(8), 0)).unwrap();
        let outer = g.curve("outer").unwrap();
        let (p, q) = (outer.vertices[0], outer.vertices[2]);
        assert!(!oracle_definition_c(&g.surface, outer, p, q, 12).unwrap());
        let d = generate(&GenSpec::new(Kind::Disk(1), 0)).unwrap();
        let rim = d.curve("rim").unwrap();
        let (p, q) = (rim.vertices[0], rim.vertices[3]);
        assert!(oracle_definition_c(&d.surface, rim, p, q, 12).unwrap());
        assert!(deform_arc(&d.surface, rim, p, q).is_ok());
        let big = generate(&GenSpec::new(Kind::Disk(2), 0)).unwrap();
        assert!(matches!(
            oracle_definition_c(&big.surface, big.curve("rim").unwrap(), 0, 1, 12),
            Err(ContractionError::TooLarge { .. })
        ));
    }

    #[test]
    fn certification() {
        let g = generate(&GenSpec::new(Kind::Disk(4), 1)).unwrap();
        let spec = SampleSpec { random: 5, seed: 3, pairs: 2, max_len: 30, ..Default::default() };
        let c = certify_simply_connected(&g.surface, &spec);
        assert!(c.certified, "{:?}", c.entries);
        assert!(!c.entries.is_empty());
        let empty = certify_simply_connected(&g.surface, &SampleSpec::default());
        assert!(empty.certified && empty.warning.is_some());
        let t = generate(&GenSpec::new(Kind::TorusGrid(4, 4), 0)).unwrap();
        let spec = SampleSpec { curves: vec![t.curve("meridian").unwrap().clone()], pairs: 1, ..Default::default() };
        assert!(!certify_simply_connected(&t.surface, &spec).certified);
    }
}
