//! Combinatorial 2-complexes `<V, E, U2>`.
//!
//! A [`Surface`] is stored as a list of 2-cells, each a cyclic vertex
//! sequence. The edge set is derived from consecutive pairs. The stored
//! cyclic order of a cell is its orientation ("clockwise" in the relative
//! sense used throughout this crate); [`Surface::orient`] makes those orders
//! globally consistent.
//!
//! Regularity of a vertex is decided by the umbrella walk: the cells around
//! `p` must chain through shared `p`-edges into a single closed fan (inner
//! regular vertex) or a single open fan (regular boundary vertex).

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

/// Vertex identifier. Identifiers are dense non-negative integers.
pub type VertexId = u32;

/// An unordered vertex pair, stored with the smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(pub VertexId, pub VertexId);

impl Edge {
    pub fn new(a: VertexId, b: VertexId) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint that is not `v`.
    pub fn other(&self, v: VertexId) -> VertexId {
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.0, self.1)
    }
}

/// Provenance of a vertex after Veblen-point subdivision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexKind {
    Original,
    /// Central point inserted on an edge of the parent surface.
    VeblenEdge(Edge),
    /// Central point inserted inside a 2-cell (index into the parent's cells).
    VeblenFace(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("vertex {0} lies on the boundary")]
    BoundaryVertex(VertexId),
    #[error("vertex {0} is not regular (its cells do not form a single fan)")]
    IrregularVertex(VertexId),
    #[error("not a simple path: {0}")]
    NotAPath(String),
    #[error("surface is not orientable (conflict on edge {0})")]
    NonOrientable(Edge),
    #[error("complex is not connected through shared edges")]
    DisconnectedComplex,
}

/// One violated [`Surface`] invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Cell has fewer than three vertices or repeats a vertex.
    NotSimpleCycle { cell: usize },
    /// The vertex set of `inner` is a proper subset of the vertex set of `outer`.
    NotMinimal { outer: usize, inner: usize },
    /// Edge lies in more than two cells.
    EdgeOverused { edge: Edge, cells: Vec<usize> },
    /// Two cells share more than one edge.
    SharedEdges { first: usize, second: usize, count: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotSimpleCycle { cell } => write!(f, "cell {cell}: not a simple cycle"),
            Violation::NotMinimal { outer, inner } => {
                write!(f, "cell {outer}: contains the vertex set of cell {inner}")
            }
            Violation::EdgeOverused { edge, cells } => {
                write!(f, "edge {edge}: lies in {} cells {:?}", cells.len(), cells)
            }
            Violation::SharedEdges { first, second, count } => {
                write!(f, "cells {first} and {second}: cells share >1 edge ({count})")
            }
        }
    }
}

/// An induced subcomplex: a vertex subset with every cell and edge whose
/// vertices all lie in it.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Subcomplex {
    pub vertices: BTreeSet<VertexId>,
    /// Indices into [`Surface::cells`].
    pub cells: Vec<usize>,
    pub edges: BTreeSet<Edge>,
}

/// Ordered neighbors of a vertex, following the stored cell orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Umbrella {
    pub ring: Vec<VertexId>,
    /// `true` for inner vertices (the ring is a cycle), `false` for boundary
    /// vertices (the ring runs from one boundary neighbor to the other).
    pub closed: bool,
}

#[derive(Clone, Debug, Default)]
pub struct Surface {
    cells: Vec<Vec<VertexId>>,
    present: Vec<bool>,
    vertex_count: usize,
    vertex_cells: Rows<usize>,
    adjacency: Rows<VertexId>,
    edge_cells: EdgeTable,
}

/// Per-vertex lists stored in compressed rows.
#[derive(Clone, Debug, Default)]
struct Rows<T> {
    offsets: Vec<usize>,
    items: Vec<T>,
}

impl<T: Copy + Default + Ord> Rows<T> {
    /// Rows `0..n` from `(row, item)` pairs, keeping pair order within a row.
    fn from_pairs(n: usize, pairs: &[(usize, T)]) -> Self {
        let mut offsets = vec![0usize; n + 1];
        for &(r, _) in pairs {
            offsets[r + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut items = vec![T::default(); pairs.len()];
        for &(r, x) in pairs {
            items[fill[r]] = x;
            fill[r] += 1;
        }
        Rows { offsets, items }
    }

    /// Sort and deduplicate each row.
    fn normalized(mut self) -> Self {
        let n = self.offsets.len().saturating_sub(1);
        let mut write = 0;
        let mut start = 0;
        for i in 0..n {
            let end = self.offsets[i + 1];
            self.items[start..end].sort_unstable();
            let row_start = write;
            for r in start..end {
                if write == row_start || self.items[write - 1] != self.items[r] {
                    self.items[write] = self.items[r];
                    write += 1;
                }
            }
            start = end;
            self.offsets[i + 1] = write;
        }
        self.items.truncate(write);
        self
    }

    fn row(&self, i: usize) -> &[T] {
        match (self.offsets.get(i), self.offsets.get(i + 1)) {
            (Some(&a), Some(&b)) => &self.items[a..b],
            _ => &[],
        }
    }
}

/// Sorted edges with their incident cells in compressed rows.
#[derive(Clone, Debug, Default)]
struct EdgeTable {
    keys: Vec<Edge>,
    offsets: Vec<usize>,
    cells: Vec<usize>,
}

impl EdgeTable {
    fn build(mut pairs: Vec<(Edge, usize)>) -> Self {
        pairs.sort_unstable();
        pairs.dedup();
        let mut keys = Vec::new();
        let mut offsets = vec![0];
        let mut cells = Vec::with_capacity(pairs.len());
        for (e, c) in pairs {
            if keys.last() != Some(&e) {
                if !keys.is_empty() {
                    offsets.push(cells.len());
                }
                keys.push(e);
            }
            cells.push(c);
        }
        if !keys.is_empty() {
            offsets.push(cells.len());
        }
        EdgeTable { keys, offsets, cells }
    }

    fn len(&self) -> usize {
        self.keys.len()
    }

    fn row(&self, i: usize) -> &[usize] {
        &self.cells[self.offsets[i]..self.offsets[i + 1]]
    }

    fn get(&self, e: &Edge) -> Option<&[usize]> {
        self.keys.binary_search(e).ok().map(|i| self.row(i))
    }

    fn contains_key(&self, e: &Edge) -> bool {
        self.keys.binary_search(e).is_ok()
    }

    fn keys(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.keys.iter()
    }

    fn values(&self) -> impl Iterator<Item = &[usize]> + '_ {
        (0..self.keys.len()).map(|i| self.row(i))
    }

    fn iter(&self) -> impl Iterator<Item = (&Edge, &[usize])> + '_ {
        self.keys.iter().enumerate().map(|(i, e)| (e, self.row(i)))
    }
}

/// Rotate a cyclic sequence so its smallest element comes first.
pub fn canonical_rotation(cycle: &[VertexId]) -> Vec<VertexId> {
    match cycle.iter().enumerate().min_by_key(|(_, v)| **v) {
        Some((i, _)) => cycle[i..].iter().chain(&cycle[..i]).copied().collect(),
        None => Vec::new(),
    }
}

/// Canonical form ignoring orientation: the smaller of the canonical
/// rotations of the cycle and of its reversal.
pub fn canonical_unoriented(cycle: &[VertexId]) -> Vec<VertexId> {
    let fwd = canonical_rotation(cycle);
    let rev: Vec<VertexId> = cycle.iter().rev().copied().collect();
    let rev = canonical_rotation(&rev);
    fwd.min(rev)
}

/// Does the cyclic sequence traverse `a` immediately followed by `b`?
pub fn traverses(cycle: &[VertexId], a: VertexId, b: VertexId) -> bool {
    let k = cycle.len();
    (0..k).any(|i| cycle[i] == a && cycle[(i + 1) % k] == b)
}

fn reversed_cell(cell: &[VertexId]) -> Vec<VertexId> {
    let mut out = Vec::with_capacity(cell.len());
    if let Some(&first) = cell.first() {
        out.push(first);
        out.extend(cell[1..].iter().rev());
    }
    out
}

impl Surface {
    pub fn new(cells: Vec<Vec<VertexId>>) -> Self {
        Self::with_vertices(cells, std::iter::empty())
    }

    /// Build a surface that also contains the given (possibly isolated) vertices.
    pub fn with_vertices(
        cells: Vec<Vec<VertexId>>,
        extra: impl IntoIterator<Item = VertexId>,
    ) -> Self {
        let extra: Vec<VertexId> = extra.into_iter().collect();
        let max = cells
            .iter()
            .flatten()
            .chain(extra.iter())
            .copied()
            .max()
            .map(|m| m as usize + 1)
            .unwrap_or(0);
        let mut present = vec![false; max];
        let mut incidences: Vec<(usize, usize)> = Vec::with_capacity(cells.iter().map(Vec::len).sum());
        let mut pairs: Vec<(Edge, usize)> = Vec::with_capacity(cells.iter().map(Vec::len).sum());
        for &v in &extra {
            present[v as usize] = true;
        }
        for (ci, cell) in cells.iter().enumerate() {
            let k = cell.len();
            for (i, &v) in cell.iter().enumerate() {
                present[v as usize] = true;
                incidences.push((v as usize, ci));
                let w = cell[(i + 1) % k];
                let e = Edge::new(v, w);
                pairs.push((e, ci));
            }
        }
        let vertex_cells = Rows::from_pairs(max, &incidences).normalized();
        let edge_cells = EdgeTable::build(pairs);
        let mut links: Vec<(usize, VertexId)> = Vec::with_capacity(2 * edge_cells.len());
        for e in edge_cells.keys() {
            if e.0 != e.1 {
                links.push((e.0 as usize, e.1));
                links.push((e.1 as usize, e.0));
            }
        }
        let adjacency = Rows::from_pairs(max, &links).normalized();
        let vertex_count = present.iter().filter(|p| **p).count();
        Surface {
            cells,
            present,
            vertex_count,
            vertex_cells,
            adjacency,
            edge_cells,
        }
    }

    pub fn cells(&self) -> &[Vec<VertexId>] {
        &self.cells
    }

    pub fn cell(&self, index: usize) -> &[VertexId] {
        &self.cells[index]
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_count
    }

    pub fn num_edges(&self) -> usize {
        self.edge_cells.len()
    }

    /// One past the largest vertex identifier in use.
    pub fn vertex_bound(&self) -> usize {
        self.present.len()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.present.get(v as usize).copied().unwrap_or(false)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.present
            .iter()
            .enumerate()
            .filter(|(_, p)| **p)
            .map(|(i, _)| i as VertexId)
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edge_cells.keys().copied()
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.edge_cells.contains_key(&Edge::new(a, b))
    }

    /// Cells containing the edge, in cell-index order.
    pub fn edge_cells(&self, a: VertexId, b: VertexId) -> &[usize] {
        self.edge_cells
            .get(&Edge::new(a, b))
            .unwrap_or(&[])
    }

    pub fn vertex_cells(&self, v: VertexId) -> &[usize] {
        self.vertex_cells.row(v as usize)
    }

    /// Sorted graph neighbors.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        self.adjacency.row(v as usize)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.num_cells() as i64
    }

    pub fn is_closed(&self) -> bool {
        self.edge_cells.values().all(|c| c.len() != 1)
    }

    /// Cells rotated to canonical form and sorted. Two surfaces with the same
    /// canonical cells (and vertex set) are equal.
    pub fn canonical_cells(&self) -> Vec<Vec<VertexId>> {
        let mut out: Vec<Vec<VertexId>> =
            self.cells.iter().map(|c| canonical_rotation(c)).collect();
        out.sort();
        out
    }

    /// Vertices that do not appear in any cell.
    pub fn isolated_vertices(&self) -> Vec<VertexId> {
        self.vertices()
            .filter(|&v| self.vertex_cells(v).is_empty())
            .collect()
    }

    fn require(&self, v: VertexId) -> Result<(), SurfaceError> {
        if self.contains_vertex(v) {
            Ok(())
        } else {
            Err(SurfaceError::UnknownVertex(v))
        }
    }

    /// Report every violated structural invariant. An empty list means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (ci, cell) in self.cells.iter().enumerate() {
            let distinct: BTreeSet<_> = cell.iter().collect();
            if cell.len() < 3 || distinct.len() != cell.len() {
                out.push(Violation::NotSimpleCycle { cell: ci });
            }
        }
        // Minimality: a proper subset must contain its own first vertex, so
        // candidates come from that vertex's cells.
        for (inner, cell) in self.cells.iter().enumerate() {
            let Some(&first) = cell.first() else { continue };
            let inner_set: BTreeSet<_> = cell.iter().copied().collect();
            for &outer in self.vertex_cells(first) {
                if outer == inner {
                    continue;
                }
                let outer_set: BTreeSet<_> = self.cells[outer].iter().copied().collect();
                if inner_set.len() < outer_set.len() && inner_set.is_subset(&outer_set) {
                    out.push(Violation::NotMinimal { outer, inner });
                }
            }
        }
        let mut shared: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (edge, cells) in self.edge_cells.iter() {
            if cells.len() > 2 {
                out.push(Violation::EdgeOverused {
                    edge: *edge,
                    cells: cells.to_vec(),
                });
            }
            for i in 0..cells.len() {
                for j in i + 1..cells.len() {
                    let key = (cells[i].min(cells[j]), cells[i].max(cells[j]));
                    *shared.entry(key).or_default() += 1;
                }
            }
        }
        for ((first, second), count) in shared {
            if count > 1 {
                out.push(Violation::SharedEdges { first, second, count });
            }
        }
        out
    }

    /// Boundary edges (exactly one incident cell) and their endpoints.
    pub fn boundary(&self) -> (BTreeSet<Edge>, BTreeSet<VertexId>) {
        let edges: BTreeSet<Edge> = self
            .edge_cells
            .iter()
            .filter(|(_, c)| c.len() == 1)
            .map(|(e, _)| *e)
            .collect();
        let verts = edges.iter().flat_map(|e| [e.0, e.1]).collect();
        (edges, verts)
    }

    pub fn is_boundary_vertex(&self, v: VertexId) -> bool {
        self.neighbors(v)
            .iter()
            .any(|&w| self.edge_cells(v, w).len() == 1)
    }

    /// Induced subcomplex on a vertex set.
    pub fn induced(&self, vertices: BTreeSet<VertexId>) -> Subcomplex {
        let mut cells: BTreeSet<usize> = BTreeSet::new();
        for &v in &vertices {
            for &c in self.vertex_cells(v) {
                if self.cells[c].iter().all(|w| vertices.contains(w)) {
                    cells.insert(c);
                }
            }
        }
        let mut edges = BTreeSet::new();
        for &v in &vertices {
            for &w in self.neighbors(v) {
                if v < w && vertices.contains(&w) {
                    edges.insert(Edge(v, w));
                }
            }
        }
        Subcomplex {
            vertices,
            cells: cells.into_iter().collect(),
            edges,
        }
    }

    fn star_vertices(&self, p: VertexId, into: &mut BTreeSet<VertexId>) {
        into.insert(p);
        for &c in self.vertex_cells(p) {
            into.extend(self.cells[c].iter().copied());
        }
    }

    /// `S(p)`: `p` together with every vertex of a cell containing `p`.
    pub fn neighborhood(&self, p: VertexId) -> Result<Subcomplex, SurfaceError> {
        self.require(p)?;
        let mut set = BTreeSet::new();
        self.star_vertices(p, &mut set);
        Ok(self.induced(set))
    }

    /// `S(X) = S(x0) ∪ ... ∪ S(xk)` for a simple path `X`.
    pub fn arc_neighborhood(&self, path: &[VertexId]) -> Result<Subcomplex, SurfaceError> {
        self.check_simple_path(path)?;
        let mut set = BTreeSet::new();
        for &x in path {
            self.star_vertices(x, &mut set);
        }
        Ok(self.induced(set))
    }

    /// Check that `path` is a non-empty simple path of the edge graph.
    pub fn check_simple_path(&self, path: &[VertexId]) -> Result<(), SurfaceError> {
        if path.is_empty() {
            return Err(SurfaceError::NotAPath("empty".into()));
        }
        let mut seen = BTreeSet::new();
        for &v in path {
            self.require(v)?;
            if !seen.insert(v) {
                return Err(SurfaceError::NotAPath(format!("vertex {v} repeats")));
            }
        }
        for w in path.windows(2) {
            if !self.has_edge(w[0], w[1]) {
                return Err(SurfaceError::NotAPath(format!(
                    "{} and {} are not adjacent",
                    w[0], w[1]
                )));
            }
        }
        Ok(())
    }

    /// Walk the cells around `p` through shared `p`-edges.
    pub fn umbrella(&self, p: VertexId) -> Result<Umbrella, SurfaceError> {
        self.require(p)?;
        let incident = self.vertex_cells(p);
        if incident.is_empty() {
            return Err(SurfaceError::IrregularVertex(p));
        }
        // Each incident cell contributes the arc of its boundary that avoids p,
        // read in stored order.
        let mut arcs: Vec<Vec<VertexId>> = Vec::with_capacity(incident.len());
        for &c in incident {
            let cell = &self.cells[c];
            let Some(pos) = cell.iter().position(|&v| v == p) else {
                return Err(SurfaceError::IrregularVertex(p));
            };
            let k = cell.len();
            let arc: Vec<VertexId> = (1..k).map(|i| cell[(pos + i) % k]).collect();
            if arc.len() < 2 || arc.contains(&p) {
                return Err(SurfaceError::IrregularVertex(p));
            }
            arcs.push(arc);
        }
        let mut by_end: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
        for (i, arc) in arcs.iter().enumerate() {
            by_end.entry(arc[0]).or_default().push(i);
            by_end.entry(*arc.last().unwrap()).or_default().push(i);
        }
        if by_end.values().any(|c| c.len() > 2) {
            return Err(SurfaceError::IrregularVertex(p));
        }
        let open_ends: Vec<VertexId> = by_end
            .iter()
            .filter(|(_, c)| c.len() == 1)
            .map(|(v, _)| *v)
            .collect();
        let closed = match open_ends.len() {
            0 => true,
            2 => false,
            _ => return Err(SurfaceError::IrregularVertex(p)),
        };

        let (start_arc, start_vertex) = if closed {
            (0usize, arcs[0][0])
        } else {
            // Prefer the boundary neighbor from which a cell's stored arc starts.
            let pick = open_ends
                .iter()
                .copied()
                .find(|v| arcs[by_end[v][0]][0] == *v)
                .unwrap_or(open_ends[0]);
            (by_end[&pick][0], pick)
        };
        let mut visited = vec![false; arcs.len()];
        let mut ring: Vec<VertexId> = Vec::new();
        let mut current = start_arc;
        let mut from = start_vertex;
        loop {
            visited[current] = true;
            let arc = &arcs[current];
            let oriented: Vec<VertexId> = if arc[0] == from {
                arc.clone()
            } else {
                arc.iter().rev().copied().collect()
            };
            if ring.is_empty() {
                ring.extend(&oriented);
            } else {
                ring.extend(&oriented[1..]);
            }
            let end = *oriented.last().unwrap();
            let next = by_end[&end].iter().copied().find(|&i| !visited[i]);
            match next {
                Some(n) => {
                    current = n;
                    from = end;
                }
                None => break,
            }
        }
        if visited.iter().any(|v| !v) {
            return Err(SurfaceError::IrregularVertex(p));
        }
        if closed {
            if ring.len() < 2 || ring.first() != ring.last() {
                return Err(SurfaceError::IrregularVertex(p));
            }
            ring.pop();
        }
        let distinct: BTreeSet<_> = ring.iter().collect();
        if distinct.len() != ring.len() {
            return Err(SurfaceError::IrregularVertex(p));
        }
        Ok(Umbrella { ring, closed })
    }

    /// The simple cycle through `S(p) - {p}` of an inner regular vertex,
    /// oriented consistently with the stored orientation of `p`'s cells.
    pub fn link_cycle(&self, p: VertexId) -> Result<Vec<VertexId>, SurfaceError> {
        self.require(p)?;
        if self.is_boundary_vertex(p) {
            return Err(SurfaceError::BoundaryVertex(p));
        }
        let u = self.umbrella(p)?;
        if !u.closed {
            return Err(SurfaceError::BoundaryVertex(p));
        }
        Ok(u.ring)
    }

    /// Rewrite cyclic orders so every interior edge is traversed in opposite
    /// directions by its two cells.
    pub fn orient(&self) -> Result<Surface, SurfaceError> {
        let n = self.cells.len();
        if n == 0 {
            return Ok(self.clone());
        }
        let mut flip: Vec<Option<bool>> = vec![None; n];
        flip[0] = Some(false);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let fi = flip[i].unwrap();
            let cell = &self.cells[i];
            let k = cell.len();
            for idx in 0..k {
                let (a, b) = (cell[idx], cell[(idx + 1) % k]);
                let si = traverses(cell, a, b);
                for &j in self.edge_cells(a, b) {
                    if j == i {
                        continue;
                    }
                    let sj = traverses(&self.cells[j], a, b);
                    let want = sj ^ !(si ^ fi);
                    match flip[j] {
                        None => {
                            flip[j] = Some(want);
                            queue.push_back(j);
                        }
                        Some(fj) if fj != want => {
                            return Err(SurfaceError::NonOrientable(Edge::new(a, b)));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        if flip.iter().any(Option::is_none) {
            return Err(SurfaceError::DisconnectedComplex);
        }
        let cells = self
            .cells
            .iter()
            .zip(&flip)
            .map(|(c, f)| if f.unwrap() { reversed_cell(c) } else { c.clone() })
            .collect();
        Ok(Surface::with_vertices(cells, self.isolated_vertices()))
    }

    /// `true` when every interior edge is traversed in opposite directions.
    pub fn is_consistently_oriented(&self) -> bool {
        self.edge_cells.iter().all(|(e, cells)| {
            if cells.len() != 2 {
                return true;
            }
            let a = traverses(&self.cells[cells[0]], e.0, e.1);
            let b = traverses(&self.cells[cells[1]], e.0, e.1);
            a != b
        })
    }
}

impl PartialEq for Surface {
    fn eq(&self, other: &Self) -> bool {
        self.canonical_cells() == other.canonical_cells()
            && self.vertices().eq(other.vertices())
    }
}

impl Eq for Surface {}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn octahedron() -> Surface {
        // 0 north, 5 south, equator 1-2-3-4.
        Surface::new(vec![
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![0, 3, 4],
            vec![0, 4, 1],
            vec![5, 2, 1],
            vec![5, 3, 2],
            vec![5, 4, 3],
            vec![5, 1, 4],
        ])
    }

    #[test]
    fn octahedron_is_valid_and_closed() {
        let s = octahedron();
        assert!(s.validate().is_empty());
        assert!(s.is_closed());
        assert_eq!(s.euler_characteristic(), 2);
        assert!(s.is_consistently_oriented());
        assert!(s.boundary().0.is_empty());
    }

    #[test]
    fn cells_sharing_two_edges_are_flagged() {
        let s = Surface::new(vec![vec![0, 1, 2], vec![0, 1, 2, 3]]);
        // Also non-minimal: {0,1,2} ⊂ {0,1,2,3}.
        let v = s.validate();
        assert!(v.iter().any(|x| matches!(x, Violation::SharedEdges { .. })));
        assert!(v.iter().any(|x| matches!(x, Violation::NotMinimal { outer: 1, inner: 0 })));
        let s = Surface::new(vec![vec![0, 1, 2], vec![2, 1, 0]]);
        assert!(s
            .validate()
            .iter()
            .any(|x| x.to_string().contains("cells share >1 edge")));
    }

    #[test]
    fn repeated_vertex_cell_is_not_simple() {
        let s = Surface::new(vec![vec![1, 2, 1, 3]]);
        assert_eq!(s.validate()[0], Violation::NotSimpleCycle { cell: 0 });
    }

    #[test]
    fn neighborhood_of_octahedron_vertex() {
        let s = octahedron();
        let n = s.neighborhood(0).unwrap();
        assert_eq!(n.vertices, BTreeSet::from([0, 1, 2, 3, 4]));
        assert_eq!(n.cells, vec![0, 1, 2, 3]);
        assert_eq!(n.edges.len(), 8);
    }

    #[test]
    fn neighborhood_edge_cases() {
        let tri = Surface::new(vec![vec![0, 1, 2]]);
        assert_eq!(tri.neighborhood(1).unwrap().vertices.len(), 3);
        let iso = Surface::with_vertices(vec![vec![0, 1, 2]], [7]);
        let n = iso.neighborhood(7).unwrap();
        assert_eq!(n.vertices, BTreeSet::from([7]));
        assert!(n.cells.is_empty());
        assert_eq!(tri.neighborhood(9), Err(SurfaceError::UnknownVertex(9)));
    }

    #[test]
    fn link_cycle_of_octahedron_pole() {
        let s = octahedron();
        let link = s.link_cycle(0).unwrap();
        assert_eq!(link, vec![1, 2, 3, 4]);
        let link = s.link_cycle(5).unwrap();
        assert_eq!(canonical_unoriented(&link), vec![1, 2, 3, 4]);
        // South pole cells are stored 5,2,1 etc: the walk follows that order.
        assert_eq!(canonical_rotation(&link), vec![1, 4, 3, 2]);
    }

    #[test]
    fn link_cycle_rejects_boundary_vertex() {
        let tri = Surface::new(vec![vec![0, 1, 2]]);
        assert_eq!(tri.link_cycle(0), Err(SurfaceError::BoundaryVertex(0)));
        let u = tri.umbrella(0).unwrap();
        assert!(!u.closed);
        assert_eq!(u.ring, vec![1, 2]);
    }

    #[test]
    fn pinched_vertex_is_irregular() {
        // Two triangles meeting only at vertex 0.
        let s = Surface::new(vec![vec![0, 1, 2], vec![0, 3, 4]]);
        assert_eq!(s.umbrella(0), Err(SurfaceError::IrregularVertex(0)));
    }

    #[test]
    fn arc_neighborhood_unions_stars() {
        let s = octahedron();
        let single = s.arc_neighborhood(&[3]).unwrap();
        assert_eq!(single, s.neighborhood(3).unwrap());
        let edge = s.arc_neighborhood(&[0, 1]).unwrap();
        assert_eq!(edge.vertices, BTreeSet::from([0, 1, 2, 3, 4, 5]));
        let equator = s.arc_neighborhood(&[1, 2, 3, 4]).unwrap();
        assert_eq!(equator.cells.len(), 8);
        assert!(matches!(s.arc_neighborhood(&[0, 5]), Err(SurfaceError::NotAPath(_))));
        assert!(matches!(s.arc_neighborhood(&[]), Err(SurfaceError::NotAPath(_))));
    }

    #[test]
    fn orient_repairs_flipped_cells() {
        let mut cells = octahedron().cells().to_vec();
        cells[3].reverse();
        cells[6].reverse();
        let s = Surface::new(cells);
        assert!(!s.is_consistently_oriented());
        let o = s.orient().unwrap();
        assert!(o.is_consistently_oriented());
        assert_eq!(o.num_cells(), 8);
        let single = Surface::new(vec![vec![0, 1, 2, 3]]);
        assert_eq!(single.orient().unwrap(), single);
    }

    #[test]
    fn moebius_is_not_orientable() {
        let cells = (0..5u32).map(|i| vec![i, (i + 1) % 5, (i + 2) % 5]).collect();
        let s = Surface::new(cells);
        assert!(s.validate().is_empty());
        assert!(matches!(s.orient(), Err(SurfaceError::NonOrientable(_))));
    }

    #[test]
    fn disconnected_complex_is_reported() {
        let s = Surface::new(vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(s.orient(), Err(SurfaceError::DisconnectedComplex));
    }

    #[test]
    fn boundary_of_square_disk() {
        let s = Surface::new(vec![vec![0, 1, 2], vec![0, 2, 3]]);
        let (edges, verts) = s.boundary();
        assert_eq!(edges.len(), 4);
        assert_eq!(verts, BTreeSet::from([0, 1, 2, 3]));
        assert!(!edges.contains(&Edge(0, 2)));
    }
}
