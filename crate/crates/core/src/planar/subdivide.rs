use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::{ToPrimitive, Zero};

use super::geometry::{self, Point, Q};
use super::{EmbeddedComplex, PlanarError, Provenance};
use crate::curves::Path;
use crate::surface::{Edge, Surface, VertexId};

/// A polyline parameterized by segment index: `t = i + s` is the point a
/// fraction `s` along segment `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolylineCurve {
    pub points: Vec<Point>,
    pub closed: bool,
}

impl PolylineCurve {
    pub fn new(points: Vec<Point>, closed: bool) -> Self {
        PolylineCurve { points, closed }
    }

    pub fn segments(&self) -> usize {
        match (self.points.len(), self.closed) {
            (0, _) => 0,
            (n, true) => n,
            (n, false) => n - 1,
        }
    }

    fn segment(&self, i: usize) -> (&Point, &Point) {
        (&self.points[i], &self.points[(i + 1) % self.points.len()])
    }

    pub fn is_simple(&self) -> bool {
        if self.closed {
            return geometry::is_simple_polygon(&self.points);
        }
        let n = self.segments();
        if n == 0 || (0..n).any(|i| self.segment(i).0 == self.segment(i).1) {
            return false;
        }
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = self.segment(i);
                let (c, d) = self.segment(j);
                if j == i + 1 {
                    // Adjacent segments may only share their joint.
                    if geometry::on_segment(d, a, b) || geometry::on_segment(a, c, d) {
                        return false;
                    }
                } else if geometry::segments_meet(a, b, c, d) {
                    return false;
                }
            }
        }
        true
    }

    /// Parameter of `p`, if it lies on the polyline. On a closed curve the
    /// range is `[0, segments)`.
    pub fn param_of(&self, p: &Point) -> Option<Q> {
        let n = self.segments();
        for i in 0..n {
            let (a, b) = self.segment(i);
            if !geometry::on_segment(p, a, b) {
                continue;
            }
            let s = if a.x != b.x {
                (&p.x - &a.x) / (&b.x - &a.x)
            } else {
                (&p.y - &a.y) / (&b.y - &a.y)
            };
            let t = Q::from_integer(i.into()) + s;
            return Some(if self.closed && t >= Q::from_integer(n.into()) {
                t - Q::from_integer(n.into())
            } else {
                t
            });
        }
        None
    }

    pub fn point_at(&self, t: &Q) -> Point {
        let n = self.segments();
        let mut t = t.clone();
        let nq = Q::from_integer(n.into());
        if self.closed {
            while t >= nq {
                t -= &nq;
            }
            while t < Q::zero() {
                t += &nq;
            }
        } else if t >= nq {
            return self.points[n].clone();
        }
        let i = t.floor();
        let s = &t - &i;
        let (a, b) = self.segment(i.to_integer().to_usize().unwrap_or(0));
        a.add(&b.sub(a).scale(&s))
    }
}

#[derive(Clone, Debug)]
pub struct Subdivision {
    pub complex: EmbeddedComplex,
    /// The refined boundary path; every vertex lies on the polyline.
    pub boundary: Path,
    /// Parameter in `[0, 1]` of each boundary vertex.
    pub params: BTreeMap<VertexId, Q>,
}

impl Subdivision {
    /// Largest squared length of a boundary edge.
    pub fn max_boundary_edge2(&self) -> Q {
        max_edge2(&self.complex, &self.boundary)
    }
}

pub fn max_edge2(ec: &EmbeddedComplex, path: &Path) -> Q {
    path.directed_edges()
        .into_iter()
        .map(|(a, b)| geometry::dist2(ec.coord(a), ec.coord(b)))
        .max()
        .unwrap_or_else(Q::zero)
}

/// Split every triangle into four at its edge midpoints, `levels` times.
/// The midpoint of an edge of `boundary` is moved onto `curve` at the
/// parameter midpoint of the arc that edge stands for.
pub fn midpoint_subdivide(
    ec: &EmbeddedComplex,
    boundary: &Path,
    curve: &PolylineCurve,
    levels: usize,
) -> Result<Subdivision, PlanarError> {
    let mut cur = ec.clone();
    let mut path = boundary.clone();
    let n = Q::from_integer(curve.segments().into());
    for _ in 0..levels {
        let (next, next_path) = one_level(&cur, &path, curve, &n)?;
        cur = next;
        path = next_path;
    }
    let mut params = BTreeMap::new();
    for &v in &path.vertices {
        let t = curve
            .param_of(cur.coord(v))
            .ok_or(PlanarError::CurveOffPolyline(v))?;
        params.insert(v, t / &n);
    }
    Ok(Subdivision { complex: cur, boundary: path, params })
}

fn one_level(
    ec: &EmbeddedComplex,
    path: &Path,
    curve: &PolylineCurve,
    n: &Q,
) -> Result<(EmbeddedComplex, Path), PlanarError> {
    let mut t: BTreeMap<VertexId, Q> = BTreeMap::new();
    for &v in &path.vertices {
        let p = curve
            .param_of(ec.coord(v))
            .ok_or(PlanarError::CurveOffPolyline(v))?;
        t.insert(v, p);
    }
    let steps: Vec<(VertexId, VertexId)> = path.directed_edges();
    let delta = |a: VertexId, b: VertexId, forward: bool| -> Q {
        let d = if forward { &t[&b] - &t[&a] } else { &t[&a] - &t[&b] };
        if curve.closed && d < Q::zero() {
            d + n
        } else {
            d
        }
    };
    let forward = if curve.closed && path.closed {
        let total: Q = steps.iter().map(|&(a, b)| delta(a, b, true)).sum();
        let back: Q = steps.iter().map(|&(a, b)| delta(a, b, false)).sum();
        if total == *n {
            true
        } else if back == *n {
            false
        } else {
            return Err(PlanarError::CurveOffPolyline(path.vertices[0]));
        }
    } else {
        steps.first().is_none_or(|&(a, b)| t[&b] > t[&a])
    };

    let mut relocated: BTreeMap<Edge, Point> = BTreeMap::new();
    for &(a, b) in &steps {
        let d = delta(a, b, forward);
        let half = d / Q::from_integer(2.into());
        let mid = if forward { &t[&a] + half } else { &t[&a] - half };
        relocated.insert(Edge::new(a, b), curve.point_at(&mid));
    }

    let mut coords = ec.coords.clone();
    let mut provenance = ec.provenance.clone();
    let mut mid_id: BTreeMap<Edge, VertexId> = BTreeMap::new();
    for e in ec.surface.edges() {
        let id = coords.len() as VertexId;
        let p = match relocated.get(&e) {
            Some(p) => p.clone(),
            None => ec.coord(e.0).midpoint(ec.coord(e.1)),
        };
        coords.push(p);
        provenance.push(Provenance::Midpoint);
        mid_id.insert(e, id);
    }

    let moved: BTreeSet<Edge> = relocated
        .iter()
        .filter(|(e, p)| ec.coord(e.0).midpoint(ec.coord(e.1)) != **p)
        .map(|(e, _)| *e)
        .collect();
    let mut cells = Vec::with_capacity(ec.surface.num_cells() * 4);
    for (c, cell) in ec.surface.cells().iter().enumerate() {
        let [a, b, d]: [VertexId; 3] = cell
            .as_slice()
            .try_into()
            .map_err(|_| PlanarError::NotTriangulated(c))?;
        let sides = [Edge::new(a, b), Edge::new(b, d), Edge::new(d, a)];
        let on_curve = sides.iter().filter(|e| relocated.contains_key(e)).count();
        if on_curve > 1 && sides.iter().any(|e| moved.contains(e)) {
            return Err(PlanarError::CurveTriangleMultiCross(c));
        }
        let [mab, mbd, mda] = sides.map(|e| mid_id[&e]);
        let kids = [[a, mab, mda], [mab, b, mbd], [mda, mbd, d], [mab, mbd, mda]];
        for k in kids {
            let [p, q, r] = k.map(|v| &coords[v as usize]);
            if geometry::orient(p, q, r) != Ordering::Greater {
                return Err(PlanarError::InvalidRelocation(c));
            }
            cells.push(k.to_vec());
        }
    }

    let mut refined = Vec::with_capacity(path.len() * 2);
    for (i, &v) in path.vertices.iter().enumerate() {
        refined.push(v);
        if let Some(&(a, b)) = steps.get(i) {
            debug_assert_eq!(a, v);
            refined.push(mid_id[&Edge::new(a, b)]);
        }
    }
    let next_path = if path.closed {
        Path::closed(refined)
    } else {
        Path::open(refined)
    };
    Ok((
        EmbeddedComplex {
            surface: Surface::new(cells),
            coords,
            provenance,
            spacing: None,
        },
        next_path,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::check_geometry;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    fn triangle() -> EmbeddedComplex {
        EmbeddedComplex {
            surface: Surface::new(vec![vec![0, 1, 2]]),
            coords: vec![Point::from_ints(0, 0), Point::from_ints(4, 0), Point::from_ints(0, 4)],
            provenance: vec![Provenance::Original; 3],
            spacing: None,
        }
    }

    #[test]
    fn one_level_no_curve_gives_congruent_quarters() {
        let curve = PolylineCurve::new(vec![Point::from_ints(9, 9), Point::from_ints(10, 9)], false);
        let s = midpoint_subdivide(&triangle(), &Path::open(vec![]), &curve, 1).unwrap();
        assert_eq!(s.complex.surface.num_cells(), 4);
        for c in 0..4 {
            let a = geometry::signed_area2(&s.complex.cell_points(c));
            assert_eq!(a, q(4, 1));
        }
        assert!(check_geometry(&s.complex, 10).is_empty());
    }

    #[test]
    fn straight_curve_relocation_is_identity() {
        let curve = PolylineCurve::new(vec![Point::from_ints(0, 0), Point::from_ints(8, 0)], false);
        let s = midpoint_subdivide(&triangle(), &Path::open(vec![0, 1]), &curve, 2).unwrap();
        let plain = midpoint_subdivide(
            &triangle(),
            &Path::open(vec![]),
            &PolylineCurve::new(vec![Point::from_ints(9, 9), Point::from_ints(10, 9)], false),
            2,
        )
        .unwrap();
        assert_eq!(s.complex.coords, plain.complex.coords);
        assert_eq!(s.boundary.len(), 5);
        let xs: Vec<Q> = s.boundary.vertices.iter().map(|&v| s.complex.coord(v).x.clone()).collect();
        assert_eq!(xs, vec![q(0, 1), q(1, 1), q(2, 1), q(3, 1), q(4, 1)]);
        assert_eq!(s.params[&s.boundary.vertices[4]], q(1, 2));
    }

    fn octagon_curve() -> PolylineCurve {
        // Rational points on the circle of radius 8 via the tangent half-angle map.
        let mut pts = Vec::new();
        for s in [q(0, 1), q(2, 5), q(1, 1), q(5, 2)] {
            let d = q(1, 1) + &s * &s;
            let x = (q(1, 1) - &s * &s) / &d * q(8, 1);
            let y = q(2, 1) * &s / &d * q(8, 1);
            pts.push(Point::new(x, y));
        }
        let mut all = pts.clone();
        all.extend(pts.iter().map(|p| Point::new(-p.x.clone(), -p.y.clone())));
        PolylineCurve::new(all, true)
    }

    #[test]
    fn coarse_boundary_moves_onto_curve() {
        let curve = octagon_curve();
        // A square on every second polyline point, fanned from the origin.
        let rim: Vec<Point> = (0..4).map(|k| curve.points[2 * k].clone()).collect();
        let mut coords = vec![Point::from_ints(0, 0)];
        coords.extend(rim);
        let cells = (0..4u32).map(|k| vec![0, 1 + k, 1 + (k + 1) % 4]).collect();
        let ec = EmbeddedComplex {
            surface: Surface::new(cells),
            coords,
            provenance: vec![Provenance::Original; 5],
            spacing: None,
        };
        let boundary = Path::closed(vec![1, 2, 3, 4]);
        let s = midpoint_subdivide(&ec, &boundary, &curve, 1).unwrap();
        assert!(check_geometry(&s.complex, 100).is_empty());
        assert_eq!(s.boundary.len(), 8);
        let on: Vec<&Point> = s.boundary.vertices.iter().map(|&v| s.complex.coord(v)).collect();
        // After one level the boundary is exactly the polyline's point list.
        assert_eq!(on, curve.points.iter().collect::<Vec<_>>());
        let s3 = midpoint_subdivide(&ec, &boundary, &curve, 3).unwrap();
        assert!(s3.boundary.vertices.iter().all(|&v| curve.param_of(s3.complex.coord(v)).is_some()));
        assert!(check_geometry(&s3.complex, 0).is_empty());
        // Reversed boundary traversal relocates to the same points.
        let r = midpoint_subdivide(&ec, &boundary.reversed(), &curve, 1).unwrap();
        assert_eq!(r.complex.coords, s.complex.coords);
    }

    #[test]
    fn parameters_round_trip() {
        let curve = octagon_curve();
        for k in 0..32 {
            let t = q(k, 4);
            let p = curve.point_at(&t);
            assert_eq!(curve.param_of(&p), Some(t));
        }
        assert!(curve.is_simple());
        let open = PolylineCurve::new(
            vec![Point::from_ints(0, 0), Point::from_ints(2, 0), Point::from_ints(1, 0)],
            false,
        );
        assert!(!open.is_simple());
    }
}
