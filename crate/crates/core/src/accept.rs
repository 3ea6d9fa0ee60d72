//! The acceptance suite: ten checks over generated fixtures, shared by the
//! `accept` command and the integration tests.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use sha2::{Digest, Sha256};

use crate::contraction::{audit_sequence, contract_cycle, deform_arc, interior_cells, oracle_definition_c};
use crate::curves::Path;
use crate::gensurf::{draw, generate, random_curve, random_polygon, GenSpec, Kind};
use crate::io;
use crate::jordan::{self, check_theorem1, check_theorem2_with, classify_arc_neighborhood_boundary};
use crate::planar::geometry::{dist2, Point, Q};
use crate::planar::{
    embed, inside_outside, midpoint_subdivide, EmbedConfig, EmbeddedComplex, Location, PlanarEmbedding,
    PolylineCurve, Provenance,
};
use crate::surface::{Surface, VertexId};
use crate::svg;

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} {:<28} {} ({}; {:.2} s)",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

#[derive(Clone, Debug)]
pub struct AcceptConfig {
    /// Random polygons for the planar criteria.
    pub polygons: u64,
    /// Vertices sampled per embedding for the ray-casting comparison.
    pub samples: usize,
    /// Pipeline repetitions for the determinism check.
    pub repetitions: usize,
    pub oracle_cell_limit: usize,
    /// Run the subdivided separation check with the curve-edge fault injected.
    pub mutate_veblen: bool,
}

impl Default for AcceptConfig {
    fn default() -> Self {
        AcceptConfig {
            polygons: 100,
            samples: 1000,
            repetitions: 10,
            oracle_cell_limit: 12,
            mutate_veblen: false,
        }
    }
}

/// Tally of checks with the first few failures kept for the report.
#[derive(Default)]
struct Tally {
    total: usize,
    failures: Vec<String>,
    failed: usize,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.total += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < 3 {
                self.failures.push(what());
            }
        }
    }

    fn summary(&self) -> String {
        let mut s = format!("{}/{}", self.total - self.failed, self.total);
        if !self.failures.is_empty() {
            s.push_str(": ");
            s.push_str(&self.failures.join("; "));
        }
        s
    }
}

fn result(id: usize, name: &'static str, tally: &Tally, elapsed: Duration, limit: Option<Duration>) -> CriterionResult {
    let mut detail = tally.summary();
    let in_time = limit.is_none_or(|l| elapsed < l);
    if !in_time {
        detail.push_str(&format!(", over {} s budget", limit.unwrap().as_secs()));
    }
    CriterionResult {
        id,
        name,
        passed: tally.failed == 0 && tally.total > 0 && in_time,
        detail,
        elapsed,
    }
}

/// Seeds 0..99 cycle through spheres, hexagonal disks and fans.
pub fn corpus_kind(seed: u64) -> Kind {
    match seed % 4 {
        0 => Kind::Octahedron,
        1 => Kind::Icosahedron,
        2 => Kind::Disk(1 + ((seed / 4) % 5) as u32),
        _ => Kind::Fan(3 + (seed % 17) as u32),
    }
}

fn corpus() -> Vec<(u64, Surface)> {
    (0..100)
        .map(|s| (s, generate(&GenSpec::new(corpus_kind(s), s)).expect("corpus fixture").surface))
        .collect()
}

fn link_problem(surface: &Surface, p: VertexId) -> Option<String> {
    let link = match surface.link_cycle(p) {
        Ok(l) => l,
        Err(e) => return Some(e.to_string()),
    };
    let set: BTreeSet<VertexId> = link.iter().copied().collect();
    if set.len() != link.len() || link.len() < 3 {
        return Some(format!("link of {p} is not simple"));
    }
    let k = link.len();
    if (0..k).any(|i| !surface.has_edge(link[i], link[(i + 1) % k])) {
        return Some(format!("link of {p} skips an edge"));
    }
    let mut nb = surface.neighborhood(p).ok()?.vertices;
    nb.remove(&p);
    (nb != set).then(|| format!("link of {p} misses part of its neighborhood"))
}

fn link_cycles(corpus: &[(u64, Surface)]) -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::default();
    for (seed, s) in corpus {
        for v in s.vertices() {
            if s.is_boundary_vertex(v) || s.umbrella(v).is_err() {
                continue;
            }
            let problem = link_problem(s, v);
            t.check(problem.is_none(), || format!("seed {seed}: {}", problem.unwrap()));
        }
    }
    result(1, "link cycles", &t, start.elapsed(), Some(Duration::from_secs(5)))
}

fn empty_branches(surface: &Surface, arc: &[VertexId]) -> Result<(), String> {
    let b = classify_arc_neighborhood_boundary(surface, arc).map_err(|e| e.to_string())?;
    if !b.branches.is_empty() {
        return Err(format!("arc {arc:?} has {} branches", b.branches.len()));
    }
    let set: BTreeSet<VertexId> = b.cycle.vertices.iter().copied().collect();
    if set.len() != b.cycle.len() || b.cycle.len() < 3 || !b.cycle.closed {
        return Err(format!("arc {arc:?}: boundary cycle is not simple"));
    }
    Ok(())
}

/// Short arcs along a curve, from four evenly spaced starts.
fn curve_arcs(curve: &Path) -> Vec<Vec<VertexId>> {
    let n = curve.len();
    let mut out = Vec::new();
    for q in 0..4 {
        let i = q * n / 4;
        for len in 2..=5.min(n - 1) {
            out.push((0..len).map(|j| curve.vertices[(i + j) % n]).collect());
        }
    }
    out
}

/// Edge arcs on the corpus and the pinch control. Curve arcs from the
/// planar corpus are added by the caller.
fn arc_boundaries(corpus: &[(u64, Surface)], t: &mut Tally) {
    for (seed, s) in corpus {
        for e in s.edges() {
            if s.is_boundary_vertex(e.0) || s.is_boundary_vertex(e.1) {
                continue;
            }
            let r = empty_branches(s, &[e.0, e.1]);
            t.check(r.is_ok(), || format!("seed {seed}: {}", r.unwrap_err()));
        }
    }
    let g = generate(&GenSpec::new(Kind::Disk(3), 0)).expect("disk");
    let ring = g.curve("ring1").expect("ring1");
    let pinch = classify_arc_neighborhood_boundary(&g.surface, &ring.vertices[..5]);
    t.check(
        pinch.as_ref().is_ok_and(|b| !b.branches.is_empty()),
        || "pinch fixture shows no branch".into(),
    );
}

/// Spheres with cell boundaries and equators as curves.
fn sphere_fixtures() -> Vec<(String, Surface, Path, bool)> {
    let mut out = Vec::new();
    for (kind, cells) in [(Kind::Octahedron, 8), (Kind::Icosahedron, 10)] {
        let g = generate(&GenSpec::new(kind, 5)).expect("sphere");
        for c in 0..cells {
            let curve = Path::closed(g.surface.cell(c).to_vec());
            out.push((format!("{kind:?} cell {c}"), g.surface.clone(), curve, true));
        }
        let eq = g.curve("equator").expect("equator").clone();
        out.push((format!("{kind:?} equator"), g.surface.clone(), eq, false));
    }
    out
}

fn theorem2_ok(surface: &Surface, curve: &Path, mutate: bool) -> Result<(), String> {
    let o = check_theorem2_with(surface, curve, mutate).map_err(|e| e.to_string())?;
    if o.report.components.len() != 2 {
        return Err(format!("{} components", o.report.components.len()));
    }
    if !o.flanks_separated() {
        return Err("flanks not separated".into());
    }
    if let Some(f) = o.single_cell_inside {
        let c = o.report.component_of(f).ok_or("face point unplaced")?;
        if o.report.components[c].len() != 1 {
            return Err(format!("single-cell inside has size {}", o.report.components[c].len()));
        }
    }
    Ok(())
}

fn torus_control() -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::default();
    let sizes = [3, 4, 6, 8];
    for &m in &sizes {
        for &n in &sizes {
            let g = generate(&GenSpec::new(Kind::TorusGrid(m, n), 0)).expect("torus");
            for name in ["meridian", "longitude"] {
                let curve = g.curve(name).expect("torus curve");
                let r = jordan::components(&g.surface, curve).map(|r| r.components.len());
                t.check(r == Ok(1), || format!("{m}x{n} {name}: {r:?}"));
            }
        }
    }
    result(5, "torus negative control", &t, start.elapsed(), None)
}

fn contraction_fixtures() -> Vec<(String, Surface, Path)> {
    let mut out = vec![
        ("triangle".into(), Surface::new(vec![vec![0, 1, 2]]), Path::closed(vec![0, 1, 2])),
        (
            "square".into(),
            Surface::new(vec![vec![0, 1, 2], vec![0, 2, 3]]),
            Path::closed(vec![0, 1, 2, 3]),
        ),
    ];
    let mut kinds: Vec<Kind> = (3..=24).map(Kind::Fan).collect();
    kinds.extend([Kind::Fan(100), Kind::Fan(250), Kind::Fan(500)]);
    kinds.extend((1..=9).map(Kind::Disk));
    for kind in kinds {
        let g = generate(&GenSpec::new(kind, 11)).expect("disk");
        let rim = g.curve("rim").expect("rim").clone();
        out.push((format!("{kind:?}"), g.surface, rim));
    }
    let big = generate(&GenSpec::new(Kind::Disk(9), 2)).expect("disk");
    for seed in 0..20 {
        if let Ok(c) = random_curve(&big.surface, seed, 6, 60) {
            out.push((format!("region {seed}"), big.surface.clone(), c));
        }
    }
    out
}

fn contraction_contract() -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::default();
    for (name, s, curve) in contraction_fixtures() {
        let cells = match interior_cells(&s, &curve) {
            Ok(c) => c.len(),
            Err(e) => {
                t.check(false, || format!("{name}: {e}"));
                continue;
            }
        };
        if !(1..=500).contains(&cells) {
            continue;
        }
        let r = contract_cycle(&s, &curve, curve.vertices[0]).map_err(|e| e.to_string()).and_then(|seq| {
            if seq.steps() != cells - 1 {
                return Err(format!("{} steps for {cells} cells", seq.steps()));
            }
            if !seq.unstable_steps.is_empty() {
                return Err(format!("distance changed at steps {:?}", seq.unstable_steps));
            }
            match audit_sequence(&s, &seq).first() {
                Some(p) => Err(p.clone()),
                None => Ok(()),
            }
        });
        t.check(r.is_ok(), || format!("{name}: {}", r.unwrap_err()));
    }
    result(6, "contraction contract", &t, start.elapsed(), Some(Duration::from_secs(30)))
}

fn oracle_equivalence(limit: usize) -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::default();
    let mut cases: Vec<(String, Surface, Path, bool)> = vec![(
        "triangle".into(),
        Surface::new(vec![vec![0, 1, 2]]),
        Path::closed(vec![0, 1, 2]),
        false,
    )];
    let mut kinds = vec![Kind::Disk(1)];
    kinds.extend((3..=12).map(Kind::Fan));
    for kind in kinds {
        let g = generate(&GenSpec::new(kind, 4)).expect("disk");
        cases.push((format!("{kind:?}"), g.surface.clone(), g.curve("rim").expect("rim").clone(), false));
    }
    let a = generate(&GenSpec::new(Kind::Annulus(8), 4)).expect("annulus");
    for name in ["outer", "inner"] {
        cases.push((format!("annulus {name}"), a.surface.clone(), a.curve(name).expect("annulus curve").clone(), true));
    }
    for (name, s, curve, annulus) in cases {
        if s.num_cells() > limit {
            continue;
        }
        for &p in &curve.vertices {
            for &q in &curve.vertices {
                if p == q {
                    continue;
                }
                let oracle = oracle_definition_c(&s, &curve, p, q, limit);
                let swept = deform_arc(&s, &curve, p, q).is_ok();
                t.check(oracle.as_ref().ok() == Some(&swept), || {
                    format!("{name} ({p},{q}): oracle {oracle:?}, deform {swept}")
                });
                if annulus {
                    t.check(oracle == Ok(false), || format!("{name} ({p},{q}): oracle accepts"));
                }
            }
        }
    }
    result(7, "arc deformation oracle", &t, start.elapsed(), None)
}

/// `n` points on the circle of radius `r`, rational through the half-angle
/// substitution with a tangent rounded to thousandths.
pub fn rational_circle(n: usize, r: i64) -> Vec<Point> {
    let one = Q::from_integer(1.into());
    let r = Q::from_integer(r.into());
    (0..n)
        .map(|k| {
            if 2 * k == n {
                return Point::new(-r.clone(), Q::from_integer(0.into()));
            }
            let half = std::f64::consts::PI * k as f64 / n as f64;
            let s = Q::new(((half.tan() * 1000.0).round() as i64).into(), 1000.into());
            let d = &one + &s * &s;
            Point::new((&one - &s * &s) / &d * &r, Q::from_integer(2.into()) * &s / &d * &r)
        })
        .collect()
}

fn max_edge2(ec: &EmbeddedComplex) -> Q {
    ec.surface
        .edges()
        .map(|e| dist2(ec.coord(e.0), ec.coord(e.1)))
        .max()
        .unwrap_or_else(|| Q::from_integer(0.into()))
}

fn refinement() -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::default();
    let rim = rational_circle(64, 64);
    let curve = PolylineCurve::new(rim.clone(), true);
    t.check(curve.is_simple(), || "64-gon is not simple".into());
    let mut coords = vec![Point::from_ints(0, 0)];
    coords.extend(rim);
    let cells = (0..64u32).map(|k| vec![0, 1 + k, 1 + (k + 1) % 64]).collect();
    let ec = EmbeddedComplex {
        surface: Surface::new(cells),
        coords,
        provenance: vec![Provenance::Original; 65],
        spacing: None,
    };
    let boundary = Path::closed((1..=64).collect());
    let initial = crate::planar::max_edge2(&ec, &boundary);
    let initial_all = max_edge2(&ec);
    match midpoint_subdivide(&ec, &boundary, &curve, 3) {
        Ok(s) => {
            for &v in &s.boundary.vertices {
                t.check(curve.param_of(s.complex.coord(v)).is_some(), || format!("vertex {v} off the polyline"));
            }
            let eight2 = Q::from_integer(64.into());
            let fin = s.max_boundary_edge2();
            t.check(&fin * &eight2 <= initial, || format!("boundary edge² {fin} vs initial {initial}"));
            let fin_all = max_edge2(&s.complex);
            t.check(&fin_all * &eight2 <= initial_all, || format!("edge² {fin_all} vs initial {initial_all}"));
            t.check(s.boundary.len() == 512, || format!("{} boundary vertices", s.boundary.len()));
        }
        Err(e) => t.check(false, || e.to_string()),
    }
    result(9, "midpoint refinement", &t, start.elapsed(), None)
}

fn round_trip<T>(
    t: &mut Tally,
    what: &str,
    text: &str,
    read: impl Fn(&str) -> Result<T, io::FormatError>,
    write: impl Fn(&T) -> String,
) {
    let back = read(text).map(|x| write(&x));
    t.check(back.as_deref().ok() == Some(text), || format!("{what} does not round-trip"));
}

/// Every output of a fixed pipeline, concatenated; round trips are
/// recorded in `t`.
fn pipeline(t: &mut Tally) -> Vec<u8> {
    let mut out = String::new();
    let disk = generate(&GenSpec::new(Kind::Disk(4), 7)).expect("disk");
    let text = io::write_surface(&disk.surface);
    round_trip(t, "surface", &text, io::read_surface, io::write_surface);
    out.push_str(&text);

    let curve = random_curve(&disk.surface, 7, 6, 30).expect("curve");
    let text = io::write_curve(&curve);
    round_trip(t, "curve", &text, io::read_curve, io::write_curve);
    out.push_str(&text);

    let seq = contract_cycle(&disk.surface, &curve, curve.vertices[0]).expect("contraction");
    let text = io::write_sequence(&seq);
    round_trip(t, "sequence", &text, io::read_sequence, io::write_sequence);
    out.push_str(&text);
    for frame in svg::render_sequence(&disk.surface, None, &seq).expect("frames") {
        out.push_str(&frame);
    }

    let ico = generate(&GenSpec::new(Kind::Icosahedron, 7)).expect("sphere");
    let eq = ico.curve("equator").expect("equator");
    let o = jordan::check_theorem2(&ico.surface, eq).expect("separation");
    let text = io::write_report(&io::ReportRecord::new(&o.report, &o.verdict));
    round_trip(t, "report", &text, io::read_report, io::write_report);
    out.push_str(&text);

    let poly = random_polygon(7, 8).expect("polygon");
    let text = io::write_polygon(&poly);
    round_trip(t, "polygon", &text, io::read_polygon, |p| io::write_polygon(p));
    out.push_str(&text);
    let config = EmbedConfig {
        widen_rounds: 2,
        ..EmbedConfig::default()
    };
    let e = embed(&poly, &config).expect("embedding");
    let text = io::write_embedded(&e.snapped.complex);
    round_trip(t, "embedded", &text, io::read_embedded, io::write_embedded);
    out.push_str(&text);
    out.push_str(&svg::render_embedded(&e.snapped.complex, Some(e.curve())));
    out.into_bytes()
}

fn determinism(repetitions: usize) -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::default();
    let mut hashes = BTreeSet::new();
    for i in 0..repetitions {
        let mut rt = Tally::default();
        let bytes = pipeline(&mut rt);
        if i == 0 {
            t.total += rt.total;
            t.failed += rt.failed;
            t.failures.extend(rt.failures);
        }
        hashes.insert(Sha256::digest(&bytes).to_vec());
    }
    t.check(hashes.len() == 1, || format!("{} distinct hashes", hashes.len()));
    result(10, "determinism and round trip", &t, start.elapsed(), None)
}

/// Per-polygon work shared by the planar criteria, so each widened
/// embedding is built once and dropped.
#[derive(Default)]
struct PlanarRun {
    arcs: Tally,
    thm1: Tally,
    thm2: Tally,
    agree: Tally,
    t1: Duration,
    t2: Duration,
    t8: Duration,
    tarcs: Duration,
}

fn planar_polygon(seed: u64, cfg: &AcceptConfig, run: &mut PlanarRun) {
    let start = Instant::now();
    let embedded = random_polygon(seed, 12)
        .map_err(|e| e.to_string())
        .and_then(|p| embed(&p, &EmbedConfig::default()).map_err(|e| e.to_string()));
    let e: PlanarEmbedding = match embedded {
        Ok(e) => e,
        Err(msg) => {
            run.t1 += start.elapsed();
            run.thm1.check(false, || format!("polygon {seed}: {msg}"));
            return;
        }
    };
    let curve = e.curve().clone();
    let wide = &e.widened.surface;
    let o = check_theorem1(wide, &curve, 4);
    let ok = o.as_ref().is_ok_and(|o| {
        o.verdict.passed() && o.report.components.len() >= 2 && o.report.seeds_separated()
    });
    run.t1 += start.elapsed();
    run.thm1.check(ok, || match &o {
        Ok(o) => format!("polygon {seed}: {:?}", o.verdict),
        Err(err) => format!("polygon {seed}: {err}"),
    });

    let s = Instant::now();
    for arc in curve_arcs(&curve) {
        let r = empty_branches(wide, &arc);
        run.arcs.check(r.is_ok(), || format!("polygon {seed}: {}", r.unwrap_err()));
    }
    run.tarcs += s.elapsed();

    let s = Instant::now();
    let r = theorem2_ok(&e.snapped.complex.surface, &curve, cfg.mutate_veblen);
    run.thm2.check(r.is_ok(), || format!("polygon {seed}: {}", r.unwrap_err()));
    run.t2 += s.elapsed();

    let s = Instant::now();
    if let Ok(o) = &o {
        // Lattice vertex 0 is a corner of the padded box, so it is outside.
        let outside = o.report.component_of(0);
        let verts: Vec<VertexId> = wide.vertices().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..cfg.samples {
            let v = verts[draw(&mut rng, verts.len())];
            let geo = inside_outside(&e.widened, &curve, v);
            let comb = match o.report.component_of(v) {
                None => Location::OnCurve,
                Some(c) if Some(c) == outside => Location::Outside,
                Some(_) => Location::Inside,
            };
            run.agree.check(geo == comb, || format!("polygon {seed} vertex {v}: {geo:?} vs {comb:?}"));
        }
        run.agree.check(o.report.components.len() == 2, || {
            format!("polygon {seed}: {} components", o.report.components.len())
        });
    }
    run.t8 += s.elapsed();
}

pub fn run_all(cfg: &AcceptConfig) -> Vec<CriterionResult> {
    run_with(cfg, |_| {})
}

/// As [`run_all`], handing each result to `report` as soon as it is known.
pub fn run_with(cfg: &AcceptConfig, mut report: impl FnMut(&CriterionResult)) -> Vec<CriterionResult> {
    let mut out = Vec::new();
    let mut push = |r: CriterionResult, out: &mut Vec<CriterionResult>| {
        report(&r);
        out.push(r);
    };
    let corpus = corpus();
    push(link_cycles(&corpus), &mut out);

    let s = Instant::now();
    let mut arcs = Tally::default();
    arc_boundaries(&corpus, &mut arcs);
    let arc_time = s.elapsed();

    let mut run = PlanarRun::default();
    for seed in 0..cfg.polygons {
        planar_polygon(seed, cfg, &mut run);
    }
    arcs.total += run.arcs.total;
    arcs.failed += run.arcs.failed;
    arcs.failures.extend(run.arcs.failures.iter().cloned());
    push(result(2, "arc neighborhood boundaries", &arcs, arc_time + run.tarcs, None), &mut out);
    push(
        result(3, "wide-angle separation", &run.thm1, run.t1, Some(Duration::from_secs(60))),
        &mut out,
    );

    let s = Instant::now();
    let mut thm2 = run.thm2;
    for (name, surface, curve, _) in sphere_fixtures() {
        let r = theorem2_ok(&surface, &curve, cfg.mutate_veblen);
        thm2.check(r.is_ok(), || format!("{name}: {}", r.unwrap_err()));
    }
    push(result(4, "subdivided separation", &thm2, run.t2 + s.elapsed(), None), &mut out);
    push(torus_control(), &mut out);
    push(contraction_contract(), &mut out);
    push(oracle_equivalence(cfg.oracle_cell_limit), &mut out);
    push(result(8, "planar agreement", &run.agree, run.t8, None), &mut out);
    push(refinement(), &mut out);
    push(determinism(cfg.repetitions), &mut out);
    out
}
