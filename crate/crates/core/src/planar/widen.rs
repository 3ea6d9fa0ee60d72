use super::geometry::Point;
use super::{EmbeddedComplex, PlanarError, Provenance};
use crate::curves::Path;
use crate::jordan;
use crate::surface::{Surface, VertexId, VertexKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WidenStrategy {
    /// Split each cell at its centroid: `T` cells become `3T`.
    Centroid,
    /// Add a centroid to every cell and a midpoint to every edge off the
    /// curve: each triangle becomes six, or four next to a curve edge.
    CentroidAndEdges,
}

fn centroid(pts: &[&Point]) -> Point {
    Point::mean(pts)
}

/// Apply `rounds` rounds of refinement. Curve vertices and edges are kept.
pub fn widen_angles(
    ec: &EmbeddedComplex,
    curve: &Path,
    rounds: usize,
    strategy: WidenStrategy,
) -> Result<EmbeddedComplex, PlanarError> {
    let mut cur = ec.clone();
    for _ in 0..rounds {
        cur = match strategy {
            WidenStrategy::Centroid => centroid_round(&cur),
            WidenStrategy::CentroidAndEdges => veblen_round(&cur, curve)?,
        };
    }
    Ok(cur)
}

fn centroid_round(ec: &EmbeddedComplex) -> EmbeddedComplex {
    let mut coords = ec.coords.clone();
    let mut provenance = ec.provenance.clone();
    let mut cells = Vec::with_capacity(ec.surface.num_cells() * 3);
    for (c, cell) in ec.surface.cells().iter().enumerate() {
        let f = coords.len() as VertexId;
        coords.push(centroid(&ec.cell_points(c)));
        provenance.push(Provenance::VeblenFace);
        let k = cell.len();
        for i in 0..k {
            cells.push(vec![cell[i], cell[(i + 1) % k], f]);
        }
    }
    EmbeddedComplex {
        surface: Surface::new(cells),
        coords,
        provenance,
        spacing: None,
    }
}

fn veblen_round(ec: &EmbeddedComplex, curve: &Path) -> Result<EmbeddedComplex, PlanarError> {
    let v = jordan::insert_veblen_points(&ec.surface, curve)?;
    let mut coords = ec.coords.clone();
    let mut provenance = ec.provenance.clone();
    for (&id, kind) in &v.kinds {
        debug_assert_eq!(id as usize, coords.len());
        let (p, prov) = match *kind {
            VertexKind::VeblenFace(c) => (centroid(&ec.cell_points(c)), Provenance::VeblenFace),
            VertexKind::VeblenEdge(e) => (ec.coord(e.0).midpoint(ec.coord(e.1)), Provenance::VeblenEdge),
            VertexKind::Original => continue,
        };
        coords.push(p);
        provenance.push(prov);
    }
    Ok(EmbeddedComplex {
        surface: v.surface,
        coords,
        provenance,
        spacing: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{angle_wideness, check_theorem1_hypotheses};
    use crate::planar::{check_geometry, embed, lattice, EmbedConfig, Q};

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn single_triangle_centroid() {
        let ec = EmbeddedComplex {
            surface: Surface::new(vec![vec![0, 1, 2]]),
            coords: vec![Point::from_ints(0, 0), Point::from_ints(3, 0), Point::from_ints(0, 3)],
            provenance: vec![Provenance::Original; 3],
            spacing: None,
        };
        let w = widen_angles(&ec, &Path::closed(vec![]), 1, WidenStrategy::Centroid).unwrap();
        assert_eq!(w.surface.num_cells(), 3);
        assert_eq!(w.coord(3), &Point::from_ints(1, 1));
        assert_eq!(w.provenance[3], Provenance::VeblenFace);
    }

    #[test]
    fn centroid_rounds_multiply_by_three() {
        let l = lattice(&q(1, 1), &Point::from_ints(0, 0), &Point::from_ints(3, 2)).unwrap();
        for r in 0..4 {
            let w = widen_angles(&l, &Path::closed(vec![]), r, WidenStrategy::Centroid).unwrap();
            assert_eq!(w.surface.num_cells(), 12 * 3usize.pow(r as u32));
            assert!(check_geometry(&w, 0).is_empty());
        }
    }

    fn square() -> Vec<Point> {
        vec![
            Point::new(q(0, 1), q(0, 1)),
            Point::new(q(3, 2), q(0, 1)),
            Point::new(q(3, 2), q(3, 2)),
            Point::new(q(0, 1), q(3, 2)),
        ]
    }

    #[test]
    fn square_after_two_rounds_meets_hypotheses() {
        let e = embed(&square(), &EmbedConfig::default()).unwrap();
        let curve = e.curve();
        assert!(check_geometry(&e.widened, 2000).is_empty());
        assert_eq!(e.widened.area2(), e.snapped.complex.area2());
        let h = check_theorem1_hypotheses(&e.widened.surface, curve, 4).unwrap();
        assert!(h.holds(), "{h:?}");
        for &v in &curve.vertices {
            assert!(angle_wideness(&e.widened.surface, curve, v).unwrap().wideness >= 3);
        }
        // Curve edges survive untouched.
        let before = curve.edge_set();
        assert!(before.iter().all(|x| e.widened.surface.has_edge(x.0, x.1)));
    }

    #[test]
    fn centroid_only_leaves_chords() {
        // Pure centroid splitting keeps every lattice edge, so two curve
        // vertices joined by an edge off the curve stay joined.
        let config = EmbedConfig {
            strategy: WidenStrategy::Centroid,
            ..EmbedConfig::default()
        };
        let e = embed(&square(), &config).unwrap();
        assert_eq!(
            e.widened.surface.num_cells(),
            e.snapped.complex.surface.num_cells() * 9
        );
        let h = check_theorem1_hypotheses(&e.widened.surface, e.curve(), 4).unwrap();
        assert!(!h.holds());
    }
}
