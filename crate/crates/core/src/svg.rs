//! Deterministic SVG pictures of embedded complexes, curves, and
//! deformation sequences. Abstract disks are laid out with Tutte's
//! barycentric method on a convex boundary.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::contraction::DeformationSequence;
use crate::curves::Path;
use crate::planar::EmbeddedComplex;
use crate::surface::{Surface, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SvgError {
    #[error("NoCoordinates: {0}")]
    NoCoordinates(String),
}

/// Plane positions for drawing.
pub type Layout = BTreeMap<VertexId, (f64, f64)>;

pub fn layout_of(ec: &EmbeddedComplex) -> Layout {
    ec.surface.vertices().map(|v| (v, ec.coord(v).to_f64())).collect()
}

/// Tutte layout of a disk: the boundary cycle on a regular polygon, each
/// interior vertex at the average of its neighbors.
pub fn tutte_layout(surface: &Surface) -> Result<Layout, SvgError> {
    if surface.euler_characteristic() != 1 || surface.is_closed() {
        return Err(SvgError::NoCoordinates(
            "only disks have an automatic layout".into(),
        ));
    }
    let rim = boundary_cycle(surface)
        .ok_or_else(|| SvgError::NoCoordinates("boundary is not a single cycle".into()))?;
    let mut pos: Layout = BTreeMap::new();
    let n = rim.len() as f64;
    for (i, &v) in rim.iter().enumerate() {
        let a = std::f64::consts::TAU * i as f64 / n;
        pos.insert(v, (a.cos(), a.sin()));
    }
    let inner: Vec<VertexId> = surface.vertices().filter(|v| !pos.contains_key(v)).collect();
    for &v in &inner {
        pos.insert(v, (0.0, 0.0));
    }
    for _ in 0..2000 {
        let mut delta: f64 = 0.0;
        for &v in &inner {
            let nb = surface.neighbors(v);
            let (sx, sy) = nb.iter().fold((0.0, 0.0), |(x, y), w| (x + pos[w].0, y + pos[w].1));
            let k = nb.len() as f64;
            let new = (sx / k, sy / k);
            let old = pos[&v];
            delta = delta.max((new.0 - old.0).abs() + (new.1 - old.1).abs());
            pos.insert(v, new);
        }
        if delta < 1e-12 {
            break;
        }
    }
    Ok(pos)
}

/// The boundary edges as one cycle, starting at the smallest vertex.
fn boundary_cycle(surface: &Surface) -> Option<Vec<VertexId>> {
    let (edges, verts) = surface.boundary();
    let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for e in &edges {
        adj.entry(e.0).or_default().push(e.1);
        adj.entry(e.1).or_default().push(e.0);
    }
    if adj.values().any(|n| n.len() != 2) {
        return None;
    }
    let start = *verts.iter().next()?;
    let mut cycle = vec![start];
    let mut prev = start;
    let mut cur = adj[&start][0];
    while cur != start {
        cycle.push(cur);
        let next = if adj[&cur][0] == prev { adj[&cur][1] } else { adj[&cur][0] };
        prev = cur;
        cur = next;
    }
    (cycle.len() == verts.len()).then_some(cycle)
}

struct Frame {
    min: (f64, f64),
    scale: f64,
    height: f64,
}

const SIZE: f64 = 800.0;
const PAD: f64 = 20.0;

impl Frame {
    fn new(layout: &Layout) -> Self {
        let (mut lo, mut hi) = ((f64::MAX, f64::MAX), (f64::MIN, f64::MIN));
        for &(x, y) in layout.values() {
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
        if layout.is_empty() {
            lo = (0.0, 0.0);
            hi = (1.0, 1.0);
        }
        let span = (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-9);
        let scale = (SIZE - 2.0 * PAD) / span;
        Frame { min: lo, scale, height: (hi.1 - lo.1) * scale + 2.0 * PAD }
    }

    fn map(&self, p: (f64, f64)) -> (f64, f64) {
        // SVG y grows downward.
        (
            PAD + (p.0 - self.min.0) * self.scale,
            self.height - PAD - (p.1 - self.min.1) * self.scale,
        )
    }

    fn points(&self, layout: &Layout, vs: &[VertexId]) -> String {
        vs.iter()
            .map(|v| {
                let (x, y) = self.map(layout[v]);
                format!("{x:.3},{y:.3}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Cells in light fill, `shaded` cells darker, `curve` as a thick red line.
pub fn render(surface: &Surface, layout: &Layout, curve: Option<&Path>, shaded: &[usize]) -> String {
    let frame = Frame::new(layout);
    let width = SIZE;
    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{:.0}\" viewBox=\"0 0 {width:.0} {:.0}\">",
        frame.height, frame.height
    )
    .unwrap();
    writeln!(out, "<g fill=\"#eef2f7\" stroke=\"#5a6b80\" stroke-width=\"0.6\">").unwrap();
    for (c, cell) in surface.cells().iter().enumerate() {
        let fill = if shaded.contains(&c) { " fill=\"#f4a259\"" } else { "" };
        writeln!(out, "<polygon points=\"{}\"{fill}/>", frame.points(layout, cell)).unwrap();
    }
    writeln!(out, "</g>").unwrap();
    if let Some(curve) = curve {
        let tag = if curve.closed { "polygon" } else { "polyline" };
        writeln!(
            out,
            "<{tag} points=\"{}\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"3\"/>",
            frame.points(layout, &curve.vertices)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

pub fn render_embedded(ec: &EmbeddedComplex, curve: Option<&Path>) -> String {
    render(&ec.surface, &layout_of(ec), curve, &[])
}

/// Coordinates if given, otherwise a Tutte layout of the disk.
pub fn render_surface(
    surface: &Surface,
    coords: Option<&Layout>,
    curve: Option<&Path>,
) -> Result<String, SvgError> {
    let layout = match coords {
        Some(l) => l.clone(),
        None => tutte_layout(surface)?,
    };
    Ok(render(surface, &layout, curve, &[]))
}

/// One frame per entry; frame `i > 0` shades the cell removed to reach it.
pub fn render_sequence(
    surface: &Surface,
    coords: Option<&Layout>,
    seq: &DeformationSequence,
) -> Result<Vec<String>, SvgError> {
    let layout = match coords {
        Some(l) => l.clone(),
        None => tutte_layout(surface)?,
    };
    Ok(seq
        .entries
        .iter()
        .enumerate()
        .map(|(i, entry)| {
            let shaded: Vec<usize> = if i == 0 { vec![] } else { vec![seq.witnesses[i - 1]] };
            render(surface, &layout, Some(entry), &shaded)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contraction::contract_cycle;
    use crate::gensurf::{generate, GenSpec, Kind};
    use crate::planar::{embed, EmbedConfig, Point};

    #[test]
    fn closed_surface_has_no_layout() {
        let g = generate(&GenSpec::new(Kind::Octahedron, 0)).unwrap();
        assert!(matches!(
            render_surface(&g.surface, None, None),
            Err(SvgError::NoCoordinates(_))
        ));
        let a = generate(&GenSpec::new(Kind::Annulus(8), 0)).unwrap();
        assert!(tutte_layout(&a.surface).is_err());
    }

    #[test]
    fn tutte_centers_the_hub() {
        let g = generate(&GenSpec::new(Kind::Fan(6), 0)).unwrap();
        let l = tutte_layout(&g.surface).unwrap();
        let hub = g.surface.vertices().find(|&v| g.surface.degree(v) == 6).unwrap();
        assert!(l[&hub].0.abs() < 1e-9 && l[&hub].1.abs() < 1e-9);
    }

    #[test]
    fn contraction_frames() {
        let g = generate(&GenSpec::new(Kind::Fan(8), 3)).unwrap();
        let rim = g.curve("rim").unwrap();
        let seq = contract_cycle(&g.surface, rim, rim.vertices[0]).unwrap();
        assert_eq!(seq.steps(), 7);
        let frames = render_sequence(&g.surface, None, &seq).unwrap();
        assert_eq!(frames.len(), 8);
        assert!(frames[1].contains("#f4a259"));
        assert!(!frames[0].contains("#f4a259"));
        assert_eq!(frames, render_sequence(&g.surface, None, &seq).unwrap());
    }

    #[test]
    fn embedded_square_highlights_curve() {
        let poly = vec![
            Point::from_ints(0, 0),
            Point::from_ints(3, 0),
            Point::from_ints(3, 3),
            Point::from_ints(0, 3),
        ];
        let e = embed(&poly, &EmbedConfig::default()).unwrap();
        let svg = render_embedded(&e.snapped.complex, Some(e.curve()));
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("stroke=\"#c0392b\"").count(), 1);
        assert_eq!(svg.matches("<polygon").count(), e.snapped.complex.surface.num_cells() + 1);
    }
}
