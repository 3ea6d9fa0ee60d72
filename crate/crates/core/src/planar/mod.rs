//! Exact planar embeddings: a triangulated lattice, polygon snapping,
//! angle widening, midpoint refinement along a curve, and ray casting.
//!
//! Coordinates are `BigRational` throughout; every predicate is exact.

mod embed;
pub mod geometry;
mod subdivide;
mod widen;

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::curves::{CurveError, Path};
use crate::jordan::JordanError;
use crate::surface::{Surface, VertexId};

pub use embed::{embed, embed_polygon, Embedding, PlanarEmbedding};
pub use geometry::{parse_rational, Point, Q};
pub use subdivide::{max_edge2, midpoint_subdivide, PolylineCurve, Subdivision};
pub use widen::{widen_angles, WidenStrategy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Provenance {
    Original,
    LatticePoint,
    SnapPoint,
    VeblenEdge,
    VeblenFace,
    Midpoint,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Original => "original",
            Provenance::LatticePoint => "lattice",
            Provenance::SnapPoint => "snap",
            Provenance::VeblenEdge => "veblen-edge",
            Provenance::VeblenFace => "veblen-face",
            Provenance::Midpoint => "midpoint",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "original" => Provenance::Original,
            "lattice" => Provenance::LatticePoint,
            "snap" => Provenance::SnapPoint,
            "veblen-edge" => Provenance::VeblenEdge,
            "veblen-face" => Provenance::VeblenFace,
            "midpoint" => Provenance::Midpoint,
            _ => return None,
        })
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A surface with exact coordinates for every vertex id below `vertex_bound`.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddedComplex {
    pub surface: Surface,
    pub coords: Vec<Point>,
    pub provenance: Vec<Provenance>,
    /// Lattice edge length, when the complex came from [`lattice`].
    pub spacing: Option<Q>,
}

impl EmbeddedComplex {
    pub fn coord(&self, v: VertexId) -> &Point {
        &self.coords[v as usize]
    }

    pub fn cell_points(&self, c: usize) -> Vec<&Point> {
        self.surface.cell(c).iter().map(|&v| self.coord(v)).collect()
    }

    /// Twice the total signed area of all cells.
    pub fn area2(&self) -> Q {
        (0..self.surface.num_cells())
            .map(|c| geometry::signed_area2(&self.cell_points(c)))
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbedConfig {
    /// Lattice spacing; `None` picks the largest power of two not above `d0 / 3`.
    pub edge_length: Option<Q>,
    /// Clearance around the polygon; `None` picks the least integer above its diameter.
    pub margin: Option<Q>,
    pub widen_rounds: usize,
    pub strategy: WidenStrategy,
}

impl Default for EmbedConfig {
    fn default() -> Self {
        EmbedConfig {
            edge_length: None,
            margin: None,
            widen_rounds: 2,
            strategy: WidenStrategy::CentroidAndEdges,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanarError {
    #[error("DegenerateBBox: bounding box or spacing has no extent")]
    DegenerateBBox,
    #[error("NotSimplePolygon: polygon is not a simple closed polyline")]
    NotSimplePolygon,
    #[error("LatticeTooCoarse: {0}")]
    LatticeTooCoarse(String),
    #[error("BadConfig: {0}")]
    BadConfig(String),
    #[error("OutsideLattice: point {0} is not covered by the complex")]
    OutsideLattice(String),
    #[error("NotTriangulated: cell {0} is not a counterclockwise triangle")]
    NotTriangulated(usize),
    #[error("CurveTriangleMultiCross: cell {0} meets the curve in more than one arc")]
    CurveTriangleMultiCross(usize),
    #[error("CurveOffPolyline: vertex {0} does not lie on the polyline")]
    CurveOffPolyline(VertexId),
    #[error("InvalidRelocation: cell {0} loses positive area after relocation")]
    InvalidRelocation(usize),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Jordan(#[from] JordanError),
}

/// Regular triangulated lattice covering `[min, max]`, vertex `(i, j)` at
/// `min + (i, j) * h` with id `j * (nx + 1) + i`, each unit square cut along
/// its rising diagonal.
pub fn lattice(edge_length: &Q, min: &Point, max: &Point) -> Result<EmbeddedComplex, PlanarError> {
    if *edge_length <= Q::zero() || max.x <= min.x || max.y <= min.y {
        return Err(PlanarError::DegenerateBBox);
    }
    let steps = |lo: &Q, hi: &Q| -> u32 {
        let n = ((hi - lo) / edge_length).ceil();
        n.to_integer().try_into().unwrap_or(u32::MAX)
    };
    let (nx, ny) = (steps(&min.x, &max.x), steps(&min.y, &max.y));
    let id = |i: u32, j: u32| j * (nx + 1) + i;
    let mut coords = Vec::with_capacity(((nx + 1) * (ny + 1)) as usize);
    for j in 0..=ny {
        for i in 0..=nx {
            coords.push(Point::new(
                &min.x + edge_length * Q::from_integer(i.into()),
                &min.y + edge_length * Q::from_integer(j.into()),
            ));
        }
    }
    let mut cells = Vec::with_capacity((2 * nx * ny) as usize);
    for j in 0..ny {
        for i in 0..nx {
            let (v00, v10, v11, v01) = (id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));
            cells.push(vec![v00, v10, v11]);
            cells.push(vec![v00, v11, v01]);
        }
    }
    let n = coords.len();
    Ok(EmbeddedComplex {
        surface: Surface::new(cells),
        coords,
        provenance: vec![Provenance::LatticePoint; n],
        spacing: Some(edge_length.clone()),
    })
}

/// Geometric defects of an embedding: coordinate collisions, cells without
/// positive area, and (for at most `pairwise_limit` cells) overlapping cells.
pub fn check_geometry(ec: &EmbeddedComplex, pairwise_limit: usize) -> Vec<String> {
    let mut out = Vec::new();
    if ec.coords.len() < ec.surface.vertex_bound() || ec.provenance.len() != ec.coords.len() {
        out.push("coordinate table does not cover all vertices".into());
        return out;
    }
    let mut seen: Vec<(&Point, VertexId)> = ec
        .surface
        .vertices()
        .map(|v| (ec.coord(v), v))
        .collect();
    seen.sort();
    for w in seen.windows(2) {
        if w[0].0 == w[1].0 {
            out.push(format!("vertices {} and {} share coordinates", w[0].1, w[1].1));
        }
    }
    for c in 0..ec.surface.num_cells() {
        let pts = ec.cell_points(c);
        let k = pts.len();
        let convex = (0..k).all(|i| {
            geometry::orient(pts[i], pts[(i + 1) % k], pts[(i + 2) % k]) == Ordering::Greater
        });
        if !convex {
            out.push(format!("cell {c} is not strictly convex counterclockwise"));
        }
    }
    if ec.surface.num_cells() <= pairwise_limit {
        for c in 0..ec.surface.num_cells() {
            for d in c + 1..ec.surface.num_cells() {
                if interiors_overlap(&ec.cell_points(c), &ec.cell_points(d)) {
                    out.push(format!("cells {c} and {d} overlap"));
                }
            }
        }
    }
    out
}

/// Separating-axis test for two counterclockwise convex polygons.
fn interiors_overlap(p: &[&Point], q: &[&Point]) -> bool {
    let separated_by = |a: &[&Point], b: &[&Point]| {
        (0..a.len()).any(|i| {
            let (s, t) = (a[i], a[(i + 1) % a.len()]);
            b.iter().all(|v| geometry::orient(s, t, v) != Ordering::Greater)
        })
    };
    !(separated_by(p, q) || separated_by(q, p))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Inside,
    Outside,
    OnCurve,
}

/// Even-odd ray casting from vertex `v` toward `+x` against the curve
/// polygon, with the half-open rule on crossing edges.
pub fn inside_outside(ec: &EmbeddedComplex, curve: &Path, v: VertexId) -> Location {
    if curve.contains(v) {
        return Location::OnCurve;
    }
    let p = ec.coord(v);
    let pts: Vec<&Point> = curve.vertices.iter().map(|&u| ec.coord(u)).collect();
    if point_in_polygon(p, &pts) {
        Location::Inside
    } else {
        Location::Outside
    }
}

/// Even-odd test for a point not on the polygon boundary.
pub fn point_in_polygon(p: &Point, pts: &[&Point]) -> bool {
    let n = pts.len();
    let mut inside = false;
    for i in 0..n {
        let (a, b) = (pts[i], pts[(i + 1) % n]);
        if (a.y > p.y) == (b.y > p.y) {
            continue;
        }
        // Crossing abscissa is right of p iff the turn a -> b -> p has the
        // sign matching the edge's vertical direction.
        let o = geometry::orient(a, b, p);
        let crosses = if b.y > a.y {
            o == Ordering::Greater
        } else {
            o == Ordering::Less
        };
        if crosses {
            inside = !inside;
        }
    }
    inside
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn lattice_counts() {
        let l = lattice(&q(1, 1), &Point::from_ints(0, 0), &Point::from_ints(10, 10)).unwrap();
        assert_eq!(l.surface.num_cells(), 200);
        assert_eq!(l.surface.num_vertices(), 121);
        assert!(l.surface.validate().is_empty());
        assert!(check_geometry(&l, 400).is_empty());
        assert_eq!(l.area2(), Q::from_integer(200.into()));
        let unit = lattice(&q(1, 1), &Point::from_ints(0, 0), &Point::from_ints(1, 1)).unwrap();
        assert_eq!(unit.surface.num_cells(), 2);
        // A bbox that is not a multiple of the spacing is covered by whole squares.
        let l = lattice(&q(3, 1), &Point::from_ints(0, 0), &Point::from_ints(10, 10)).unwrap();
        assert_eq!(l.surface.num_cells(), 2 * 16);
    }

    #[test]
    fn lattice_rejects_degenerate() {
        let o = Point::from_ints(0, 0);
        assert_eq!(lattice(&q(1, 1), &o, &o), Err(PlanarError::DegenerateBBox));
        assert_eq!(
            lattice(&q(0, 1), &o, &Point::from_ints(1, 1)),
            Err(PlanarError::DegenerateBBox)
        );
    }

    #[test]
    fn overlap_detection() {
        let a = Point::from_ints(0, 0);
        let b = Point::from_ints(4, 0);
        let c = Point::from_ints(0, 4);
        let d = Point::from_ints(1, 1);
        let e = Point::from_ints(4, 4);
        let f = Point::from_ints(3, 0);
        assert!(!interiors_overlap(&[&a, &b, &c], &[&b, &e, &c]));
        assert!(interiors_overlap(&[&a, &b, &c], &[&d, &f, &e]));
    }

    #[test]
    fn ray_casting_square() {
        let pts = [
            Point::from_ints(0, 0),
            Point::from_ints(4, 0),
            Point::from_ints(4, 4),
            Point::from_ints(0, 4),
        ];
        let r: Vec<&Point> = pts.iter().collect();
        assert!(point_in_polygon(&Point::from_ints(2, 2), &r));
        // Level with a vertex: the half-open rule counts exactly one crossing.
        assert!(point_in_polygon(&Point::new(q(1, 2), q(0, 1) + q(1, 3)), &r));
        assert!(!point_in_polygon(&Point::from_ints(-1, 4), &r));
        assert!(!point_in_polygon(&Point::from_ints(-1, 0), &r));
        assert!(!point_in_polygon(&Point::from_ints(5, 2), &r));
    }
}
