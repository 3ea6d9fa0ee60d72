use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use num_traits::Zero;

use super::geometry::{self, cross, dist2, dot, locate_in_triangle, Point, TriangleHit, Q};
use super::widen::widen_angles;
use super::{lattice, EmbedConfig, EmbeddedComplex, PlanarError, Provenance};
use crate::curves::Path;
use crate::surface::{Edge, Surface, VertexId};

/// Mutable triangle soup with incidence indexes, used while snapping.
pub(crate) struct Mesh {
    pub coords: Vec<Point>,
    approx: Vec<(f64, f64)>,
    pub provenance: Vec<Provenance>,
    tris: Vec<Option<[VertexId; 3]>>,
    edge_tris: HashMap<Edge, Vec<usize>>,
    vert_tris: Vec<Vec<usize>>,
}

impl Mesh {
    pub fn from_complex(ec: &EmbeddedComplex) -> Result<Self, PlanarError> {
        let mut mesh = Mesh {
            coords: ec.coords.clone(),
            approx: ec.coords.iter().map(Point::to_f64).collect(),
            provenance: ec.provenance.clone(),
            tris: Vec::with_capacity(ec.surface.num_cells()),
            edge_tris: HashMap::new(),
            vert_tris: vec![Vec::new(); ec.coords.len()],
        };
        for (c, cell) in ec.surface.cells().iter().enumerate() {
            let t: [VertexId; 3] = cell
                .as_slice()
                .try_into()
                .map_err(|_| PlanarError::NotTriangulated(c))?;
            if geometry::orient(ec.coord(t[0]), ec.coord(t[1]), ec.coord(t[2])) != Ordering::Greater {
                return Err(PlanarError::NotTriangulated(c));
            }
            mesh.add_tri(t);
        }
        Ok(mesh)
    }

    pub fn add_vertex(&mut self, p: Point, prov: Provenance) -> VertexId {
        self.approx.push(p.to_f64());
        self.coords.push(p);
        self.provenance.push(prov);
        self.vert_tris.push(Vec::new());
        (self.coords.len() - 1) as VertexId
    }

    fn add_tri(&mut self, t: [VertexId; 3]) -> usize {
        let i = self.tris.len();
        self.tris.push(Some(t));
        for k in 0..3 {
            self.edge_tris.entry(Edge::new(t[k], t[(k + 1) % 3])).or_default().push(i);
            self.vert_tris[t[k] as usize].push(i);
        }
        i
    }

    fn remove_tri(&mut self, i: usize) -> [VertexId; 3] {
        let t = self.tris[i].take().expect("live triangle");
        for k in 0..3 {
            let e = Edge::new(t[k], t[(k + 1) % 3]);
            if let Some(list) = self.edge_tris.get_mut(&e) {
                list.retain(|&x| x != i);
                if list.is_empty() {
                    self.edge_tris.remove(&e);
                }
            }
            self.vert_tris[t[k] as usize].retain(|&x| x != i);
        }
        t
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.edge_tris.contains_key(&Edge::new(a, b))
    }

    /// Insert `p` on the open edge `ab`, splitting each incident triangle in two.
    pub fn split_edge(&mut self, a: VertexId, b: VertexId, p: Point, prov: Provenance) -> VertexId {
        let m = self.add_vertex(p, prov);
        let incident = self.edge_tris.get(&Edge::new(a, b)).cloned().unwrap_or_default();
        for t in incident {
            let tri = self.remove_tri(t);
            let k = (0..3)
                .find(|&k| Edge::new(tri[k], tri[(k + 1) % 3]) == Edge::new(a, b))
                .expect("edge of triangle");
            let (u, v, w) = (tri[k], tri[(k + 1) % 3], tri[(k + 2) % 3]);
            self.add_tri([u, m, w]);
            self.add_tri([m, v, w]);
        }
        m
    }

    /// Insert `p` strictly inside triangle `t`, linking it to all three corners.
    pub fn split_tri(&mut self, t: usize, p: Point, prov: Provenance) -> VertexId {
        let m = self.add_vertex(p, prov);
        let [a, b, c] = self.remove_tri(t);
        self.add_tri([a, b, m]);
        self.add_tri([b, c, m]);
        self.add_tri([c, a, m]);
        m
    }

    fn corners(&self, t: [VertexId; 3]) -> [&Point; 3] {
        [
            &self.coords[t[0] as usize],
            &self.coords[t[1] as usize],
            &self.coords[t[2] as usize],
        ]
    }

    fn may_contain(&self, t: [VertexId; 3], p: (f64, f64)) -> bool {
        let xs = t.map(|v| self.approx[v as usize].0);
        let ys = t.map(|v| self.approx[v as usize].1);
        let slack = 1e-9 * (1.0 + p.0.abs() + p.1.abs());
        let (lo_x, hi_x) = (xs.iter().cloned().fold(f64::INFINITY, f64::min), xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max));
        let (lo_y, hi_y) = (ys.iter().cloned().fold(f64::INFINITY, f64::min), ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max));
        p.0 >= lo_x - slack && p.0 <= hi_x + slack && p.1 >= lo_y - slack && p.1 <= hi_y + slack
    }

    /// Every live triangle whose closure contains `p`, with the hit kind.
    pub fn locate_all(&self, p: &Point) -> Vec<(usize, TriangleHit)> {
        let approx = p.to_f64();
        let mut out = Vec::new();
        for (i, t) in self.tris.iter().enumerate() {
            let Some(t) = *t else { continue };
            if !self.may_contain(t, approx) {
                continue;
            }
            let hit = locate_in_triangle(p, self.corners(t));
            if hit != TriangleHit::Outside {
                out.push((i, hit));
            }
        }
        out
    }

    fn neighbors(&self, v: VertexId) -> BTreeSet<VertexId> {
        let mut out = BTreeSet::new();
        for &t in &self.vert_tris[v as usize] {
            if let Some(tri) = self.tris[t] {
                out.extend(tri.iter().copied().filter(|&w| w != v));
            }
        }
        out
    }

    /// The triangles at `v`, each rotated to start at `v`.
    fn fan(&self, v: VertexId) -> Vec<[VertexId; 3]> {
        self.vert_tris[v as usize]
            .iter()
            .filter_map(|&t| self.tris[t])
            .map(|tri| {
                let k = tri.iter().position(|&w| w == v).expect("incident");
                [tri[k], tri[(k + 1) % 3], tri[(k + 2) % 3]]
            })
            .collect()
    }

    pub fn into_complex(self, spacing: Option<Q>) -> EmbeddedComplex {
        let cells: Vec<Vec<VertexId>> = self.tris.iter().flatten().map(|t| t.to_vec()).collect();
        EmbeddedComplex {
            surface: Surface::new(cells),
            coords: self.coords,
            provenance: self.provenance,
            spacing,
        }
    }
}

/// A polygon snapped into a triangulation as a closed vertex path.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub complex: EmbeddedComplex,
    pub curve: Path,
    /// Vertex id of each polygon corner, in polygon order.
    pub corners: Vec<VertexId>,
    /// Number of walk moves; each strictly shortens the remaining distance.
    pub walk_moves: usize,
}

/// Snap a simple polygon into a triangulated complex.
///
/// Corners inside a triangle split it into three, corners on an edge split
/// both incident triangles, corners on a vertex take it over. Each polygon
/// side is then walked from its start: a vertex lying on the side is taken
/// as the next curve vertex, otherwise the edge the side crosses is split at
/// the exact intersection point. The walk ends at the side's far corner.
pub fn embed_polygon(base: &EmbeddedComplex, polygon: &[Point]) -> Result<Embedding, PlanarError> {
    if !geometry::is_simple_polygon(polygon) {
        return Err(PlanarError::NotSimplePolygon);
    }
    if let (Some(h), Some(d0)) = (&base.spacing, geometry::min_vertex_dist2(polygon)) {
        if Q::from_integer(9.into()) * h * h > d0 {
            return Err(PlanarError::LatticeTooCoarse(format!(
                "edge length {h} exceeds a third of the closest corner distance"
            )));
        }
    }
    let mut mesh = Mesh::from_complex(base)?;

    let mut homes: Vec<Vec<(usize, TriangleHit)>> = Vec::with_capacity(polygon.len());
    let mut owner: HashMap<usize, usize> = HashMap::new();
    for (k, p) in polygon.iter().enumerate() {
        let hits = mesh.locate_all(p);
        if hits.is_empty() {
            return Err(PlanarError::OutsideLattice(p.to_string()));
        }
        for &(t, _) in &hits {
            if let Some(&j) = owner.get(&t) {
                return Err(PlanarError::LatticeTooCoarse(format!(
                    "corners {j} and {k} share cell {t}"
                )));
            }
            owner.insert(t, k);
        }
        homes.push(hits);
    }

    let mut corners = Vec::with_capacity(polygon.len());
    for (p, hits) in polygon.iter().zip(&homes) {
        // Earlier corners never touch this corner's cells, so they are still live.
        let (t, hit) = hits[0];
        let tri = mesh.tris[t].expect("untouched cell");
        let v = match hit {
            TriangleHit::Corner(i) => {
                mesh.provenance[tri[i] as usize] = Provenance::Original;
                tri[i]
            }
            TriangleHit::Edge(i) => {
                mesh.split_edge(tri[i], tri[(i + 1) % 3], p.clone(), Provenance::Original)
            }
            TriangleHit::Interior => mesh.split_tri(t, p.clone(), Provenance::Original),
            TriangleHit::Outside => unreachable!(),
        };
        corners.push(v);
    }

    let mut path = Vec::new();
    let mut walk_moves = 0;
    let n = corners.len();
    for k in 0..n {
        let (start, goal) = (corners[k], corners[(k + 1) % n]);
        let target = mesh.coords[goal as usize].clone();
        let mut c = start;
        let mut remaining = dist2(&mesh.coords[c as usize], &target);
        while c != goal {
            path.push(c);
            let next = if mesh.has_edge(c, goal) {
                goal
            } else {
                step_toward(&mut mesh, c, &target)?
            };
            let left = dist2(&mesh.coords[next as usize], &target);
            assert!(left < remaining, "walk measure must decrease");
            remaining = left;
            walk_moves += 1;
            c = next;
        }
    }
    let spacing = base.spacing.clone();
    Ok(Embedding {
        complex: mesh.into_complex(spacing),
        curve: Path::closed(path),
        corners,
        walk_moves,
    })
}

/// One move from `c` toward `target` along the segment between them.
fn step_toward(mesh: &mut Mesh, c: VertexId, target: &Point) -> Result<VertexId, PlanarError> {
    let here = mesh.coords[c as usize].clone();
    let d = target.sub(&here);
    for w in mesh.neighbors(c) {
        let u = mesh.coords[w as usize].sub(&here);
        if cross(&u, &d).is_zero() && dot(&u, &d) > Q::zero() {
            return Ok(w);
        }
    }
    for [_, a, b] in mesh.fan(c) {
        let (pa, pb) = (&mesh.coords[a as usize], &mesh.coords[b as usize]);
        if cross(&pa.sub(&here), &d) > Q::zero() && cross(&d, &pb.sub(&here)) > Q::zero() {
            let x = geometry::line_intersection(&here, target, pa, pb).expect("sides cross");
            return Ok(mesh.split_edge(a, b, x, Provenance::SnapPoint));
        }
    }
    Err(PlanarError::OutsideLattice(here.to_string()))
}

/// A polygon embedded in a lattice and widened.
#[derive(Clone, Debug)]
pub struct PlanarEmbedding {
    pub snapped: Embedding,
    pub widened: EmbeddedComplex,
    pub edge_length: Q,
    pub margin: Q,
}

impl PlanarEmbedding {
    pub fn curve(&self) -> &Path {
        &self.snapped.curve
    }
}

/// Lattice, snap, and widen a polygon under `config`.
pub fn embed(polygon: &[Point], config: &EmbedConfig) -> Result<PlanarEmbedding, PlanarError> {
    if !geometry::is_simple_polygon(polygon) {
        return Err(PlanarError::NotSimplePolygon);
    }
    if config.widen_rounds < 2 {
        return Err(PlanarError::BadConfig("widen_rounds must be at least 2".into()));
    }
    let d0 = geometry::min_vertex_dist2(polygon).expect("three corners");
    let nine = Q::from_integer(9.into());
    let edge_length = match &config.edge_length {
        Some(h) => h.clone(),
        None => geometry::dyadic_floor_le(&(&d0 / &nine)),
    };
    if edge_length <= Q::zero() {
        return Err(PlanarError::BadConfig("edge length must be positive".into()));
    }
    let diam2 = geometry::diameter2(polygon);
    let margin = match &config.margin {
        Some(m) => m.clone(),
        None => geometry::int_exceeding_sqrt(&diam2),
    };
    if margin <= Q::zero() || &margin * &margin <= diam2 {
        return Err(PlanarError::BadConfig("margin must exceed the polygon diameter".into()));
    }
    let min_x = polygon.iter().map(|p| &p.x).min().expect("nonempty");
    let min_y = polygon.iter().map(|p| &p.y).min().expect("nonempty");
    let max_x = polygon.iter().map(|p| &p.x).max().expect("nonempty");
    let max_y = polygon.iter().map(|p| &p.y).max().expect("nonempty");
    // Align the lattice origin to the spacing so corners on grid lines snap
    // onto lattice vertices and edges.
    let align = |v: Q| (&v / &edge_length).floor() * &edge_length;
    let lo = Point::new(align(min_x - &margin), align(min_y - &margin));
    let hi = Point::new(max_x + &margin, max_y + &margin);
    let grid = lattice(&edge_length, &lo, &hi)?;
    let snapped = embed_polygon(&grid, polygon)?;
    let widened = widen_angles(&snapped.complex, &snapped.curve, config.widen_rounds, config.strategy)?;
    Ok(PlanarEmbedding { snapped, widened, edge_length, margin })
}
