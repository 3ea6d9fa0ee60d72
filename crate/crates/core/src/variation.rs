//! Gradual variation, cross-over and side-gradual variation between paths.
//!
//! Two paths are gradually varied when the symmetric difference of their edge
//! sets is, modulo 2, a sum of 2-cell boundaries. The decomposition is found
//! exactly: cells connected across edges outside the difference must be taken
//! or left together, which leaves a parity problem on a small quotient graph.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::curves::{check_path, CurveError, Path};
use crate::surface::{traverses, Edge, Surface, SurfaceError, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VariationError {
    #[error("shared vertex {0} is not regular")]
    IrregularSharedVertex(VertexId),
    #[error(transparent)]
    Path(#[from] CurveError),
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Gradual {
    pub varied: bool,
    /// Cells whose boundaries sum to the symmetric difference.
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Crossing {
    pub crosses: bool,
    /// End vertices `(p, q)` of each shared segment that crosses.
    pub sites: Vec<(VertexId, VertexId)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

/// Symmetric difference of the two edge sets.
pub fn xor_sum(a: &Path, b: &Path) -> BTreeSet<Edge> {
    let ea = a.edge_set();
    let eb = b.edge_set();
    ea.symmetric_difference(&eb).copied().collect()
}

/// Mod-2 sum of the boundaries of the given cells.
pub fn boundary_sum(surface: &Surface, cells: &[usize]) -> BTreeSet<Edge> {
    let mut out = BTreeSet::new();
    for &c in cells {
        let cell = surface.cell(c);
        let k = cell.len();
        for i in 0..k {
            let e = Edge::new(cell[i], cell[(i + 1) % k]);
            if !out.remove(&e) {
                out.insert(e);
            }
        }
    }
    out
}

/// Cells whose boundaries sum to `target`, choosing the smaller alternative
/// wherever the choice is free. `None` when no decomposition exists.
pub fn decompose(surface: &Surface, target: &BTreeSet<Edge>) -> Option<Vec<usize>> {
    if target.is_empty() {
        return Some(Vec::new());
    }
    if target.iter().any(|e| !surface.has_edge(e.0, e.1)) {
        return None;
    }
    // Only cells reachable from the target across non-target edges matter;
    // every other cell can be left out.
    let mut block: BTreeMap<usize, usize> = BTreeMap::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let seeds: BTreeSet<usize> = target
        .iter()
        .flat_map(|e| surface.edge_cells(e.0, e.1).iter().copied())
        .collect();
    for &seed in &seeds {
        if block.contains_key(&seed) {
            continue;
        }
        let id = blocks.len();
        let mut members = vec![seed];
        block.insert(seed, id);
        let mut queue = VecDeque::from([seed]);
        while let Some(c) = queue.pop_front() {
            let cell = surface.cell(c);
            let k = cell.len();
            for i in 0..k {
                let (a, b) = (cell[i], cell[(i + 1) % k]);
                if target.contains(&Edge::new(a, b)) {
                    continue;
                }
                for &d in surface.edge_cells(a, b) {
                    if let std::collections::btree_map::Entry::Vacant(e) = block.entry(d) {
                        e.insert(id);
                        members.push(d);
                        queue.push_back(d);
                    }
                }
            }
        }
        blocks.push(members);
    }
    // A block touching a free boundary edge outside the target must be left out.
    let mut fixed: Vec<Option<bool>> = vec![None; blocks.len()];
    for (id, members) in blocks.iter().enumerate() {
        let open = members.iter().any(|&c| {
            let cell = surface.cell(c);
            let k = cell.len();
            (0..k).any(|i| {
                let (a, b) = (cell[i], cell[(i + 1) % k]);
                surface.edge_cells(a, b).len() == 1 && !target.contains(&Edge::new(a, b))
            })
        });
        if open {
            fixed[id] = Some(false);
        }
    }
    // Parity constraints: each target edge is covered an odd number of times.
    let mut links: Vec<Vec<usize>> = vec![Vec::new(); blocks.len()];
    for e in target {
        let cs = surface.edge_cells(e.0, e.1);
        match cs {
            [c] => {
                let id = block[c];
                if fixed[id] == Some(false) {
                    return None;
                }
                fixed[id] = Some(true);
            }
            [c, d] => {
                let (x, y) = (block[c], block[d]);
                if x == y {
                    return None;
                }
                links[x].push(y);
                links[y].push(x);
            }
            _ => return None,
        }
    }
    let mut value: Vec<Option<bool>> = vec![None; blocks.len()];
    let mut chosen = Vec::new();
    for start in 0..blocks.len() {
        if value[start].is_some() {
            continue;
        }
        // Two-colour the group; the colouring is unique up to swapping.
        let mut group = vec![start];
        let mut colour: BTreeMap<usize, bool> = BTreeMap::from([(start, false)]);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &y in &links[x] {
                match colour.get(&y) {
                    None => {
                        colour.insert(y, !colour[&x]);
                        group.push(y);
                        queue.push_back(y);
                    }
                    Some(&cy) if cy == colour[&x] => return None,
                    Some(_) => {}
                }
            }
        }
        let mut flip: Option<bool> = None;
        for &x in &group {
            if let Some(f) = fixed[x] {
                let need = f != colour[&x];
                if flip.is_some_and(|g| g != need) {
                    return None;
                }
                flip = Some(need);
            }
        }
        let flip = flip.unwrap_or_else(|| {
            let taken: usize = group
                .iter()
                .filter(|x| colour[x])
                .map(|&x| blocks[x].len())
                .sum();
            let total: usize = group.iter().map(|&x| blocks[x].len()).sum();
            2 * taken > total
        });
        for &x in &group {
            let v = colour[&x] ^ flip;
            value[x] = Some(v);
            if v {
                chosen.extend(&blocks[x]);
            }
        }
    }
    chosen.sort_unstable();
    Some(chosen)
}

/// Brute-force decomposition over all subsets of the surface's cells, for
/// surfaces with at most `limit` cells. Returns `None` when too large,
/// otherwise the smallest decomposing subset if any.
pub fn decompose_exhaustive(
    surface: &Surface,
    target: &BTreeSet<Edge>,
    limit: usize,
) -> Option<Option<Vec<usize>>> {
    let n = surface.num_cells();
    if n > limit || n > 24 {
        return None;
    }
    let edges: Vec<Edge> = surface.edges().collect();
    let index: BTreeMap<Edge, usize> = edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let words = edges.len().div_ceil(64);
    let mask_of = |set: &BTreeSet<Edge>| -> Option<Vec<u64>> {
        let mut m = vec![0u64; words];
        for e in set {
            let i = *index.get(e)?;
            m[i / 64] ^= 1 << (i % 64);
        }
        Some(m)
    };
    let Some(goal) = mask_of(target) else {
        return Some(None);
    };
    let cell_masks: Vec<Vec<u64>> = (0..n)
        .map(|c| mask_of(&boundary_sum(surface, &[c])).unwrap())
        .collect();
    let mut current = vec![0u64; words];
    let mut best: Option<u32> = None;
    let mut best_set = 0u32;
    for step in 0u32..(1u32 << n) {
        if step > 0 {
            let bit = step.trailing_zeros() as usize;
            for (w, m) in current.iter_mut().zip(&cell_masks[bit]) {
                *w ^= m;
            }
        }
        if current == goal {
            let gray = step ^ (step >> 1);
            if best.is_none_or(|b| gray.count_ones() < b) {
                best = Some(gray.count_ones());
                best_set = gray;
            }
        }
    }
    Some(best.map(|_| (0..n).filter(|i| best_set >> i & 1 == 1).collect()))
}

pub fn is_gradually_varied(surface: &Surface, a: &Path, b: &Path) -> Gradual {
    match decompose(surface, &xor_sum(a, b)) {
        Some(witness) => Gradual {
            varied: true,
            witness,
        },
        None => Gradual::default(),
    }
}

fn side_of(ring: &[VertexId], prev: VertexId, next: VertexId, w: VertexId) -> Option<Side> {
    let n = ring.len();
    let ip = ring.iter().position(|&v| v == prev)?;
    let inx = ring.iter().position(|&v| v == next)?;
    let iw = ring.iter().position(|&v| v == w)?;
    if iw == ip || iw == inx {
        return None;
    }
    // Walking the ring from `next` to `prev` sweeps the left side of a path
    // running prev -> p -> next.
    let mut k = inx;
    while k != ip {
        if k == iw {
            return Some(Side::Left);
        }
        k = (k + 1) % n;
    }
    Some(Side::Right)
}

fn ring_at(surface: &Surface, p: VertexId) -> Result<Vec<VertexId>, VariationError> {
    match surface.umbrella(p) {
        Ok(u) => Ok(u.ring),
        Err(SurfaceError::UnknownVertex(v)) => {
            Err(CurveError::NotSimple(format!("unknown vertex {v}")).into())
        }
        Err(_) => Err(VariationError::IrregularSharedVertex(p)),
    }
}

fn path_neighbors(path: &Path, v: VertexId) -> Vec<VertexId> {
    match path.position(v) {
        Some(i) => {
            let (a, b) = path.neighbors_at(i);
            a.into_iter().chain(b).collect()
        }
        None => Vec::new(),
    }
}

/// Maximal runs of `a` (in `a`'s order) whose consecutive edges are shared.
fn shared_segments(a: &Path, b: &Path) -> Vec<Vec<VertexId>> {
    let eb = b.edge_set();
    let shared_v: BTreeSet<VertexId> = b.vertex_set();
    let n = a.len();
    let edge_shared = |i: usize| -> bool {
        // Edge from a[i] to its successor.
        let j = if i + 1 < n {
            i + 1
        } else if a.closed {
            0
        } else {
            return false;
        };
        eb.contains(&Edge::new(a.vertices[i], a.vertices[j]))
    };
    let start = if a.closed {
        match (0..n).find(|&i| !edge_shared((i + n - 1) % n)) {
            Some(s) => s,
            None => return Vec::new(),
        }
    } else {
        0
    };
    let mut out = Vec::new();
    let mut current: Vec<VertexId> = Vec::new();
    for step in 0..n {
        let i = (start + step) % n;
        let v = a.vertices[i];
        if !shared_v.contains(&v) {
            continue;
        }
        current.push(v);
        let last = step + 1 == n;
        if last || !edge_shared(i) {
            out.push(std::mem::take(&mut current));
        }
    }
    out
}

/// Shared segments through which `b` passes from one side of `a` to the other.
pub fn crosses_over(surface: &Surface, a: &Path, b: &Path) -> Result<Crossing, VariationError> {
    check_path(surface, a)?;
    check_path(surface, b)?;
    let mut result = Crossing::default();
    for seg in shared_segments(a, b) {
        let p = seg[0];
        let q = *seg.last().unwrap();
        let ia = a.position(p).unwrap();
        let (a_in, _) = a.neighbors_at(ia);
        let (_, a_out) = a.neighbors_at(a.position(q).unwrap());
        let (Some(a_in), Some(a_out)) = (a_in, a_out) else {
            continue;
        };
        let (b_p, b_q, next_p, prev_q) = if seg.len() == 1 {
            let nb = path_neighbors(b, p);
            if nb.len() != 2 {
                continue;
            }
            (nb[0], nb[1], a_out, a_in)
        } else {
            let bp: Vec<VertexId> = path_neighbors(b, p).into_iter().filter(|&v| v != seg[1]).collect();
            let bq: Vec<VertexId> = path_neighbors(b, q)
                .into_iter()
                .filter(|&v| v != seg[seg.len() - 2])
                .collect();
            let (Some(&b_p), Some(&b_q)) = (bp.first(), bq.first()) else {
                continue;
            };
            (b_p, b_q, seg[1], seg[seg.len() - 2])
        };
        let ring_p = ring_at(surface, p)?;
        let ring_q = if q == p { ring_p.clone() } else { ring_at(surface, q)? };
        let sp = side_of(&ring_p, a_in, next_p, b_p);
        let sq = side_of(&ring_q, prev_q, a_out, b_q);
        let (Some(sp), Some(sq)) = (sp, sq) else {
            return Err(VariationError::IrregularSharedVertex(p));
        };
        if sp != sq {
            result.crosses = true;
            result.sites.push((p, q));
        }
    }
    Ok(result)
}

pub fn is_side_gradually_varied(
    surface: &Surface,
    a: &Path,
    b: &Path,
) -> Result<bool, VariationError> {
    if !is_gradually_varied(surface, a, b).varied {
        return Ok(false);
    }
    Ok(!crosses_over(surface, a, b)?.crosses)
}

/// Can every witness cell be oriented so that it runs along `a` on its
/// `a`-only edges and against `b` on its `b`-only edges?
pub fn witness_orientation_consistent(surface: &Surface, a: &Path, b: &Path, witness: &[usize]) -> bool {
    let ea = a.edge_set();
    let eb = b.edge_set();
    let mut demands: Vec<(VertexId, VertexId)> = Vec::new();
    for (x, y) in a.directed_edges() {
        if !eb.contains(&Edge::new(x, y)) {
            demands.push((x, y));
        }
    }
    for (x, y) in b.directed_edges() {
        if !ea.contains(&Edge::new(x, y)) {
            demands.push((y, x));
        }
    }
    witness.iter().all(|&c| {
        let cell = surface.cell(c);
        let mine: Vec<&(VertexId, VertexId)> = demands
            .iter()
            .filter(|(x, y)| traverses(cell, *x, *y) || traverses(cell, *y, *x))
            .collect();
        let forward = mine.iter().all(|(x, y)| traverses(cell, *x, *y));
        let backward = mine.iter().all(|(x, y)| traverses(cell, *y, *x));
        forward || backward
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gensurf::{generate, GenSpec, Kind};

    /// 5×5 grid of vertices, squares split along the main diagonal.
    /// Vertex (r, c) has id 5r + c.
    pub(crate) fn grid() -> Surface {
        let id = |r: u32, c: u32| 5 * r + c;
        let mut cells = Vec::new();
        for r in 0..4 {
            for c in 0..4 {
                cells.push(vec![id(r, c), id(r, c + 1), id(r + 1, c + 1)]);
                cells.push(vec![id(r, c), id(r + 1, c + 1), id(r + 1, c)]);
            }
        }
        Surface::new(cells)
    }

    #[test]
    fn xor_sum_examples() {
        let a = Path::open(vec![0, 1, 2]);
        assert!(xor_sum(&a, &a).is_empty());
        let b = Path::open(vec![0, 6, 2]);
        assert_eq!(xor_sum(&a, &b).len(), 4);
        let c = Path::open(vec![10, 11]);
        assert_eq!(xor_sum(&a, &c), a.edge_set().union(&c.edge_set()).copied().collect());
    }

    #[test]
    fn triangle_detour_is_gradual() {
        let s = grid();
        let a = Path::open(vec![0, 1, 6]);
        let b = Path::open(vec![0, 6]);
        let g = is_gradually_varied(&s, &a, &b);
        assert!(g.varied);
        assert_eq!(g.witness, vec![0]);
        assert!(is_side_gradually_varied(&s, &a, &b).unwrap());
        assert!(witness_orientation_consistent(&s, &a, &b, &g.witness));
        let same = is_gradually_varied(&s, &a, &a);
        assert!(same.varied && same.witness.is_empty());
    }

    #[test]
    fn annulus_radial_paths_are_not_gradual() {
        let g = generate(&GenSpec::new(Kind::Annulus(8), 0)).unwrap();
        let outer = g.curve("outer").unwrap();
        let s = &g.surface;
        // Two halves of the outer ring go around the hole on opposite sides.
        let v = &outer.vertices;
        let a = Path::open(vec![v[0], v[1], v[2]]);
        let b = Path::open(vec![v[0], v[3], v[2]]);
        let target = xor_sum(&a, &b);
        assert!(!is_gradually_varied(s, &a, &b).varied);
        assert_eq!(decompose_exhaustive(s, &target, 20), Some(None));
    }

    #[test]
    fn sphere_choice_prefers_smaller_side() {
        let g = generate(&GenSpec::new(Kind::Octahedron, 0)).unwrap();
        let eq = g.curve("equator").unwrap();
        let (a, b) = crate::curves::split_arcs(eq, eq.vertices[0], eq.vertices[2]).unwrap();
        let w = is_gradually_varied(&g.surface, &a, &b);
        assert!(w.varied);
        assert_eq!(w.witness.len(), 4);
        assert_eq!(boundary_sum(&g.surface, &w.witness), xor_sum(&a, &b));
    }

    #[test]
    fn crossing_at_a_single_vertex() {
        let s = grid();
        // Horizontal through 12 and vertical through 12.
        let a = Path::open(vec![10, 11, 12, 13, 14]);
        let b = Path::open(vec![2, 7, 12, 17, 22]);
        let c = crosses_over(&s, &a, &b).unwrap();
        assert!(c.crosses);
        assert_eq!(c.sites, vec![(12, 12)]);
        // Touching from above only.
        let t = Path::open(vec![1, 6, 12, 7, 2]);
        assert!(!crosses_over(&s, &a, &t).unwrap().crosses);
        assert!(!crosses_over(&s, &a, &a).unwrap().crosses);
    }

    #[test]
    fn crossing_along_a_shared_segment() {
        let s = grid();
        let a = Path::open(vec![10, 11, 12, 13, 14]);
        // Enter 11 from above, leave 13 below.
        let b = Path::open(vec![6, 11, 12, 13, 18]);
        assert!(crosses_over(&s, &a, &b).unwrap().crosses);
        let b = Path::open(vec![6, 11, 12, 13, 8]);
        assert!(!crosses_over(&s, &a, &b).unwrap().crosses);
    }

    #[test]
    fn gradual_but_crossing_pair() {
        let s = grid();
        // B leaves A below at 7's left neighbour and rejoins from above.
        let a = Path::open(vec![6, 7, 8, 13]);
        let b = Path::open(vec![6, 12, 7, 2, 8, 13]);
        let g = is_gradually_varied(&s, &a, &b);
        assert!(g.varied, "xor {:?}", xor_sum(&a, &b));
        assert!(crosses_over(&s, &a, &b).unwrap().crosses);
        assert!(!is_side_gradually_varied(&s, &a, &b).unwrap());
    }
}
