//! Deterministic fixture surfaces and curves.
//!
//! Randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`).
//! A draw below `bound` takes one `next_u64()` value `x` and returns
//! `(x as u128 * bound as u128) >> 64`. Relabelling is a Fisher-Yates shuffle
//! from the last index down, followed by one rotation draw per cell, in cell
//! order. Any implementation following these rules reproduces the fixtures
//! exactly.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use thiserror::Error;

use crate::curves::{classify, CurveClass, Path};
use crate::planar::geometry::{self, Point, Q};
use crate::surface::{Edge, Surface, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Octahedron,
    Icosahedron,
    /// Hexagonal patch of the triangular lattice with the given number of rings.
    Disk(u32),
    /// Wheel of `n` triangles around a hub.
    Fan(u32),
    /// `m × n` torus, each square split along a diagonal.
    TorusGrid(u32, u32),
    /// Triangulated annulus with the given (even) number of cells.
    Annulus(u32),
    /// Five-vertex Möbius strip.
    Moebius,
}

impl Kind {
    /// Parse `octahedron`, `disk:3`, `torus:4x6`, and so on.
    pub fn parse(text: &str) -> Result<Kind, GenError> {
        let bad = || GenError::BadParameters(format!("unrecognized kind {text:?}"));
        let (name, arg) = match text.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (text, None),
        };
        let num = |a: Option<&str>| -> Result<u32, GenError> {
            a.ok_or_else(bad)?.parse().map_err(|_| bad())
        };
        Ok(match name.to_ascii_lowercase().as_str() {
            "octahedron" => Kind::Octahedron,
            "icosahedron" => Kind::Icosahedron,
            "moebius" => Kind::Moebius,
            "disk" => Kind::Disk(num(arg)?),
            "fan" => Kind::Fan(num(arg)?),
            "annulus" => Kind::Annulus(num(arg)?),
            "torus" => {
                let (m, n) = arg.and_then(|a| a.split_once('x')).ok_or_else(bad)?;
                Kind::TorusGrid(num(Some(m))?, num(Some(n))?)
            }
            _ => return Err(bad()),
        })
    }
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Kind::Octahedron => write!(f, "octahedron"),
            Kind::Icosahedron => write!(f, "icosahedron"),
            Kind::Disk(r) => write!(f, "disk:{r}"),
            Kind::Fan(n) => write!(f, "fan:{n}"),
            Kind::TorusGrid(m, n) => write!(f, "torus:{m}x{n}"),
            Kind::Annulus(c) => write!(f, "annulus:{c}"),
            Kind::Moebius => write!(f, "moebius"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GenSpec {
    pub kind: Kind,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(kind: Kind, seed: u64) -> Self {
        GenSpec { kind, seed }
    }
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub surface: Surface,
    pub curves: BTreeMap<String, Path>,
}

impl Generated {
    pub fn curve(&self, name: &str) -> Option<&Path> {
        self.curves.get(name)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("no curve found within {0} attempts")]
    BudgetExhausted(usize),
}

/// Uniform-ish draw in `0..bound` (multiply-shift reduction).
pub fn draw(rng: &mut ChaCha8Rng, bound: usize) -> usize {
    ((rng.next_u64() as u128 * bound as u128) >> 64) as usize
}

pub fn generate(spec: &GenSpec) -> Result<Generated, GenError> {
    let (cells, curves) = base(spec.kind)?;
    let nv = cells.iter().flatten().copied().max().map_or(0, |m| m as usize + 1);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut perm: Vec<VertexId> = (0..nv as VertexId).collect();
    for i in (1..nv).rev() {
        let j = draw(&mut rng, i + 1);
        perm.swap(i, j);
    }
    let cells: Vec<Vec<VertexId>> = cells
        .into_iter()
        .map(|c| {
            let r = draw(&mut rng, c.len());
            let mut c: Vec<VertexId> = c.into_iter().map(|v| perm[v as usize]).collect();
            c.rotate_left(r);
            c
        })
        .collect();
    let curves = curves
        .into_iter()
        .map(|(name, p)| {
            let v = p.vertices.iter().map(|&v| perm[v as usize]).collect();
            (name, Path { vertices: v, closed: p.closed })
        })
        .collect();
    Ok(Generated {
        surface: Surface::new(cells),
        curves,
    })
}

type Base = (Vec<Vec<VertexId>>, BTreeMap<String, Path>);

fn base(kind: Kind) -> Result<Base, GenError> {
    let mut curves = BTreeMap::new();
    let cells = match kind {
        Kind::Octahedron => {
            curves.insert("equator".into(), Path::closed(vec![1, 2, 3, 4]));
            vec![
                vec![0, 1, 2],
                vec![0, 2, 3],
                vec![0, 3, 4],
                vec![0, 4, 1],
                vec![5, 2, 1],
                vec![5, 3, 2],
                vec![5, 4, 3],
                vec![5, 1, 4],
            ]
        }
        Kind::Icosahedron => {
            curves.insert("equator".into(), Path::closed(vec![1, 2, 3, 4, 5]));
            let mut cells = Vec::new();
            for i in 0..5u32 {
                let (a, b) = (1 + i, 1 + (i + 1) % 5);
                let (a2, b2) = (6 + i, 6 + (i + 1) % 5);
                cells.push(vec![0, a, b]);
                cells.push(vec![a, a2, b]);
                cells.push(vec![b, a2, b2]);
                cells.push(vec![11, b2, a2]);
            }
            cells
        }
        Kind::Disk(rings) => {
            if !(1..=50).contains(&rings) {
                return Err(GenError::BadParameters("disk rings must be in 1..=50".into()));
            }
            let (cells, ring_paths) = hex_disk(rings);
            for (k, ring) in ring_paths.into_iter().enumerate().skip(1) {
                if k == rings as usize {
                    curves.insert("rim".into(), Path::closed(ring.clone()));
                }
                curves.insert(format!("ring{k}"), Path::closed(ring));
            }
            cells
        }
        Kind::Fan(n) => {
            if !(3..=4096).contains(&n) {
                return Err(GenError::BadParameters("fan size must be in 3..=4096".into()));
            }
            curves.insert("rim".into(), Path::closed((1..=n).collect()));
            (1..=n).map(|i| vec![0, i, i % n + 1]).collect()
        }
        Kind::TorusGrid(m, n) => {
            if !(3..=64).contains(&m) || !(3..=64).contains(&n) {
                return Err(GenError::BadParameters("torus sides must be in 3..=64".into()));
            }
            let id = |i: u32, j: u32| (i % m) * n + (j % n);
            curves.insert("meridian".into(), Path::closed((0..m).map(|i| id(i, 0)).collect()));
            curves.insert("longitude".into(), Path::closed((0..n).map(|j| id(0, j)).collect()));
            let mut cells = Vec::new();
            for i in 0..m {
                for j in 0..n {
                    cells.push(vec![id(i, j), id(i + 1, j), id(i + 1, j + 1)]);
                    cells.push(vec![id(i, j), id(i + 1, j + 1), id(i, j + 1)]);
                }
            }
            cells
        }
        Kind::Annulus(count) => {
            if count < 6 || count % 2 != 0 || count > 4096 {
                return Err(GenError::BadParameters(
                    "annulus cell count must be even and in 6..=4096".into(),
                ));
            }
            let k = count / 2;
            // Inner ring 0..k, outer ring k..2k.
            curves.insert("inner".into(), Path::closed((0..k).collect()));
            curves.insert("outer".into(), Path::closed((k..2 * k).collect()));
            let mut cells = Vec::new();
            for i in 0..k {
                let j = (i + 1) % k;
                cells.push(vec![i, k + i, k + j]);
                cells.push(vec![i, k + j, j]);
            }
            cells
        }
        Kind::Moebius => (0..5u32).map(|i| vec![i, (i + 1) % 5, (i + 2) % 5]).collect(),
    };
    Ok((cells, curves))
}

const HEX_DIRS: [(i64, i64); 6] = [(1, 0), (1, -1), (0, -1), (-1, 0), (-1, 1), (0, 1)];

/// Triangles of a hexagonal lattice patch plus its rings, each in walking order.
fn hex_disk(rings: u32) -> (Vec<Vec<VertexId>>, Vec<Vec<VertexId>>) {
    let r = rings as i64;
    let mut ids: BTreeMap<(i64, i64), VertexId> = BTreeMap::new();
    let mut ring_paths = vec![vec![0]];
    ids.insert((0, 0), 0);
    for k in 1..=r {
        let mut pos = (HEX_DIRS[4].0 * k, HEX_DIRS[4].1 * k);
        let mut ring = Vec::new();
        for dir in HEX_DIRS {
            for _ in 0..k {
                let id = ids.len() as VertexId;
                ids.insert(pos, id);
                ring.push(id);
                pos = (pos.0 + dir.0, pos.1 + dir.1);
            }
        }
        ring_paths.push(ring);
    }
    let inside = |q: i64, s: i64| q.abs().max(s.abs()).max((q + s).abs()) <= r;
    let mut cells = Vec::new();
    for q in -r..=r {
        for s in -r..=r {
            let tri = [[(q, s), (q + 1, s), (q, s + 1)], [(q + 1, s), (q + 1, s + 1), (q, s + 1)]];
            for t in tri {
                if t.iter().all(|&(a, b)| inside(a, b)) {
                    cells.push(t.iter().map(|p| ids[p]).collect());
                }
            }
        }
    }
    (cells, ring_paths)
}

/// A closed discrete curve avoiding the boundary, found as the boundary of a
/// randomly grown region of cells.
pub fn random_curve(
    surface: &Surface,
    seed: u64,
    min_len: usize,
    max_len: usize,
) -> Result<Path, GenError> {
    const ATTEMPTS: usize = 64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (_, boundary) = surface.boundary();
    let usable: Vec<usize> = (0..surface.num_cells())
        .filter(|&c| surface.cell(c).iter().all(|v| !boundary.contains(v)))
        .collect();
    if usable.is_empty() {
        return Err(GenError::BudgetExhausted(0));
    }
    let usable_set: BTreeSet<usize> = usable.iter().copied().collect();
    for _ in 0..ATTEMPTS {
        let start = usable[draw(&mut rng, usable.len())];
        let mut region: BTreeSet<usize> = BTreeSet::from([start]);
        let growth = 1 + draw(&mut rng, surface.num_cells().min(4 * max_len + 1));
        for _ in 0..growth {
            if let Some(p) = region_boundary(surface, &region) {
                if p.len() >= min_len && p.len() <= max_len {
                    if let Ok(CurveClass::DiscreteCurve) = classify(surface, &p) {
                        return Ok(p);
                    }
                }
            }
            let frontier: Vec<usize> = region
                .iter()
                .flat_map(|&c| cell_neighbors(surface, c))
                .filter(|c| usable_set.contains(c) && !region.contains(c))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            if frontier.is_empty() {
                break;
            }
            region.insert(frontier[draw(&mut rng, frontier.len())]);
        }
    }
    Err(GenError::BudgetExhausted(ATTEMPTS))
}

/// Cells sharing an edge with cell `c`.
pub fn cell_neighbors(surface: &Surface, c: usize) -> Vec<usize> {
    let cell = surface.cell(c);
    let k = cell.len();
    let mut out = Vec::new();
    for i in 0..k {
        for &d in surface.edge_cells(cell[i], cell[(i + 1) % k]) {
            if d != c && !out.contains(&d) {
                out.push(d);
            }
        }
    }
    out
}

/// The boundary of a cell region when it is a single simple cycle, traversed
/// along the stored orientation of the region's cells.
pub fn region_boundary(surface: &Surface, region: &BTreeSet<usize>) -> Option<Path> {
    let mut count: BTreeMap<Edge, usize> = BTreeMap::new();
    let mut succ: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for &c in region {
        let cell = surface.cell(c);
        let k = cell.len();
        for i in 0..k {
            *count.entry(Edge::new(cell[i], cell[(i + 1) % k])).or_default() += 1;
        }
    }
    for &c in region {
        let cell = surface.cell(c);
        let k = cell.len();
        for i in 0..k {
            let (a, b) = (cell[i], cell[(i + 1) % k]);
            if count[&Edge::new(a, b)] == 1 && succ.insert(a, b).is_some() {
                return None;
            }
        }
    }
    let &start = succ.keys().next()?;
    let mut cycle = vec![start];
    let mut v = succ[&start];
    while v != start {
        if cycle.len() > succ.len() {
            return None;
        }
        cycle.push(v);
        v = *succ.get(&v)?;
    }
    (cycle.len() == succ.len() && cycle.len() >= 3).then(|| Path::closed(cycle))
}

/// Random star-shaped polygon around the origin with 3 to `max_vertices`
/// corners on the grid of eighths in `[-4, 4]^2`. Corners are at least 3/2
/// apart and at least sqrt(2) from the origin; consecutive corners turn
/// counterclockwise about the origin, so the polygon is simple.
pub fn random_polygon(seed: u64, max_vertices: usize) -> Result<Vec<Point>, GenError> {
    if !(3..=24).contains(&max_vertices) {
        return Err(GenError::BadParameters(format!(
            "polygon size {max_vertices} outside 3..=24"
        )));
    }
    const ATTEMPTS: usize = 256;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 3 + draw(&mut rng, max_vertices - 2);
    let eighth = |k: usize| Q::new((k as i64 - 32).into(), 8.into());
    let min_d2 = Q::new(9.into(), 4.into());
    let min_r2 = Q::from_integer(2.into());
    for _ in 0..ATTEMPTS {
        let mut pts: Vec<Point> = Vec::with_capacity(n);
        for _ in 0..n * 16 {
            if pts.len() == n {
                break;
            }
            let p = Point::new(eighth(draw(&mut rng, 65)), eighth(draw(&mut rng, 65)));
            let origin = Point::new(Q::zero(), Q::zero());
            if geometry::dist2(&p, &origin) >= min_r2
                && pts.iter().all(|q| geometry::dist2(&p, q) >= min_d2)
            {
                pts.push(p);
            }
        }
        if pts.len() < n {
            continue;
        }
        let half = |p: &Point| !(p.y > Q::zero() || (p.y.is_zero() && p.x > Q::zero()));
        pts.sort_by(|a, b| {
            half(a)
                .cmp(&half(b))
                .then_with(|| Q::zero().cmp(&geometry::cross(a, b)))
        });
        let turning = (0..n).all(|i| geometry::cross(&pts[i], &pts[(i + 1) % n]) > Q::zero());
        if turning && geometry::is_simple_polygon(&pts) {
            return Ok(pts);
        }
    }
    Err(GenError::BudgetExhausted(ATTEMPTS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::SurfaceError;

    fn gen(kind: Kind, seed: u64) -> Generated {
        generate(&GenSpec::new(kind, seed)).unwrap()
    }

    #[test]
    fn octahedron_counts() {
        let s = gen(Kind::Octahedron, 7).surface;
        assert_eq!((s.num_vertices(), s.num_cells(), s.num_edges()), (6, 8, 12));
        assert_eq!(s.euler_characteristic(), 2);
    }

    #[test]
    fn euler_characteristics_match_topology() {
        let cases = [
            (Kind::Octahedron, 2),
            (Kind::Icosahedron, 2),
            (Kind::Disk(3), 1),
            (Kind::Fan(5), 1),
            (Kind::TorusGrid(4, 4), 0),
            (Kind::TorusGrid(3, 5), 0),
            (Kind::Annulus(8), 0),
            (Kind::Moebius, 0),
        ];
        for (kind, chi) in cases {
            let g = gen(kind, 3);
            assert!(g.surface.validate().is_empty(), "{kind}");
            assert_eq!(g.surface.euler_characteristic(), chi, "{kind}");
            if kind != Kind::Moebius {
                assert!(g.surface.is_consistently_oriented(), "{kind}");
            }
            for (name, c) in &g.curves {
                crate::curves::check_path(&g.surface, c).unwrap_or_else(|e| panic!("{kind} {name}: {e}"));
            }
        }
    }

    #[test]
    fn disk_has_six_r_squared_triangles() {
        for r in 1..6 {
            assert_eq!(gen(Kind::Disk(r), 0).surface.num_cells(), 6 * (r * r) as usize);
        }
    }

    #[test]
    fn moebius_fails_orientation() {
        assert!(matches!(gen(Kind::Moebius, 1).surface.orient(), Err(SurfaceError::NonOrientable(_))));
    }

    #[test]
    fn bad_parameters() {
        assert!(generate(&GenSpec::new(Kind::TorusGrid(2, 4), 0)).is_err());
        assert!(generate(&GenSpec::new(Kind::Disk(51), 0)).is_err());
        assert!(generate(&GenSpec::new(Kind::Annulus(7), 0)).is_err());
    }

    #[test]
    fn generation_is_reproducible() {
        let a = gen(Kind::Icosahedron, 42);
        let b = gen(Kind::Icosahedron, 42);
        assert_eq!(a.surface.cells(), b.surface.cells());
        let c = gen(Kind::Icosahedron, 43);
        assert_ne!(a.surface.cells(), c.surface.cells());
    }

    #[test]
    fn kind_parse_round_trip() {
        for k in [Kind::Octahedron, Kind::Disk(4), Kind::TorusGrid(3, 8), Kind::Annulus(10), Kind::Fan(6)] {
            assert_eq!(Kind::parse(&k.to_string()).unwrap(), k);
        }
    }

    #[test]
    fn random_curve_on_octahedron_is_an_equator() {
        let s = gen(Kind::Octahedron, 0).surface;
        // The discrete 4-cycles are exactly the three vertex links.
        let links: Vec<BTreeSet<VertexId>> = s
            .vertices()
            .map(|v| s.neighbors(v).iter().copied().collect())
            .collect();
        for seed in 0..5 {
            let c = random_curve(&s, seed, 3, 4).unwrap();
            assert_eq!(c, random_curve(&s, seed, 3, 4).unwrap());
            assert!(links.contains(&c.vertex_set()));
        }
    }

    #[test]
    fn fan3_has_no_interior_curve() {
        let g = gen(Kind::Fan(3), 0);
        assert!(matches!(random_curve(&g.surface, 1, 3, 10), Err(GenError::BudgetExhausted(_))));
    }
}
