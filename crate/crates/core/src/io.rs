//! Line-oriented text formats.
//!
//! Every format ignores blank lines and `#` comments. Writers emit a
//! canonical form, so writing what was read reproduces the same bytes.
//!
//! ```text
//! f 0 1 2            surface cell (counterclockwise vertex cycle)
//! v 7                isolated vertex
//! c 0 1 2 3 closed   curve
//! p 1/2 -3.25        polygon corner
//! coord 4 1/2 3 snap vertex coordinate with provenance
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::contraction::{DeformationSequence, SequenceKind};
use crate::curves::Path;
use crate::jordan::{SeparationReport, Verdict};
use crate::planar::{parse_rational, EmbeddedComplex, Point, Provenance};
use crate::surface::{canonical_rotation, Surface, VertexId};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
}

fn err(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Parse { line, msg: msg.into() }
}

/// Non-empty, non-comment lines with 1-based line numbers, split into tokens.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then(|| (i + 1, l.split_whitespace().collect()))
    })
}

fn parse_ids(line: usize, toks: &[&str]) -> Result<Vec<VertexId>, FormatError> {
    toks.iter()
        .map(|t| t.parse().map_err(|_| err(line, format!("bad vertex id `{t}`"))))
        .collect()
}

fn join(ids: &[VertexId]) -> String {
    ids.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn write_surface(surface: &Surface) -> String {
    let mut cells: Vec<Vec<VertexId>> = surface.cells().iter().map(|c| canonical_rotation(c)).collect();
    cells.sort();
    let mut out = String::new();
    for c in &cells {
        writeln!(out, "f {}", join(c)).unwrap();
    }
    for v in surface.isolated_vertices() {
        writeln!(out, "v {v}").unwrap();
    }
    out
}

pub fn read_surface(text: &str) -> Result<Surface, FormatError> {
    let mut cells = Vec::new();
    let mut extra = Vec::new();
    for (line, toks) in records(text) {
        match toks[0] {
            "f" => {
                let ids = parse_ids(line, &toks[1..])?;
                if ids.len() < 3 {
                    return Err(err(line, "a cell needs at least three vertices"));
                }
                cells.push(ids);
            }
            "v" if toks.len() == 2 => extra.extend(parse_ids(line, &toks[1..])?),
            "coord" | "c" | "p" => {}
            other => return Err(err(line, format!("unknown record `{other}`"))),
        }
    }
    Ok(Surface::with_vertices(cells, extra))
}

pub fn write_curve(curve: &Path) -> String {
    let tail = if curve.closed { " closed" } else { "" };
    format!("c {}{}\n", join(&curve.vertices), tail)
}

fn parse_curve_record(line: usize, toks: &[&str]) -> Result<Path, FormatError> {
    let (ids, closed) = match toks.last() {
        Some(&"closed") => (&toks[1..toks.len() - 1], true),
        Some(&"open") => (&toks[1..toks.len() - 1], false),
        _ => (&toks[1..], false),
    };
    let ids = parse_ids(line, ids)?;
    Ok(if closed { Path::closed(ids) } else { Path::open(ids) })
}

/// All curves in a text; other records are skipped.
pub fn read_curves(text: &str) -> Result<Vec<Path>, FormatError> {
    let mut out = Vec::new();
    for (line, toks) in records(text) {
        if toks[0] == "c" {
            out.push(parse_curve_record(line, &toks)?);
        }
    }
    Ok(out)
}

pub fn read_curve(text: &str) -> Result<Path, FormatError> {
    read_curves(text)?
        .into_iter()
        .next()
        .ok_or_else(|| FormatError::Invalid("no `c` record".into()))
}

pub fn write_polygon(pts: &[Point]) -> String {
    pts.iter().map(|p| format!("p {} {}\n", p.x, p.y)).collect()
}

pub fn read_polygon(text: &str) -> Result<Vec<Point>, FormatError> {
    let mut out = Vec::new();
    for (line, toks) in records(text) {
        if toks[0] != "p" {
            return Err(err(line, format!("unknown record `{}`", toks[0])));
        }
        if toks.len() != 3 {
            return Err(err(line, "expected `p x y`"));
        }
        let x = parse_rational(toks[1]).ok_or_else(|| err(line, format!("bad number `{}`", toks[1])))?;
        let y = parse_rational(toks[2]).ok_or_else(|| err(line, format!("bad number `{}`", toks[2])))?;
        out.push(Point::new(x, y));
    }
    Ok(out)
}

/// Surface records followed by one `coord` record per vertex id.
pub fn write_embedded(ec: &EmbeddedComplex) -> String {
    let mut out = write_surface(&ec.surface);
    for (v, p) in ec.coords.iter().enumerate() {
        writeln!(out, "coord {v} {} {} {}", p.x, p.y, ec.provenance[v]).unwrap();
    }
    out
}

pub fn read_embedded(text: &str) -> Result<EmbeddedComplex, FormatError> {
    let surface = read_surface(text)?;
    let mut coords: Vec<Option<(Point, Provenance)>> = vec![None; surface.vertex_bound()];
    for (line, toks) in records(text) {
        if toks[0] != "coord" {
            continue;
        }
        if toks.len() != 4 && toks.len() != 5 {
            return Err(err(line, "expected `coord v x y [provenance]`"));
        }
        let v: usize = toks[1].parse().map_err(|_| err(line, "bad vertex id"))?;
        let x = parse_rational(toks[2]).ok_or_else(|| err(line, "bad x"))?;
        let y = parse_rational(toks[3]).ok_or_else(|| err(line, "bad y"))?;
        let prov = match toks.get(4) {
            Some(t) => Provenance::parse(t).ok_or_else(|| err(line, format!("bad provenance `{t}`")))?,
            None => Provenance::Original,
        };
        if v >= coords.len() {
            coords.resize(v + 1, None);
        }
        coords[v] = Some((Point::new(x, y), prov));
    }
    let mut pts = Vec::with_capacity(coords.len());
    let mut provenance = Vec::with_capacity(coords.len());
    for (v, c) in coords.into_iter().enumerate() {
        let (p, prov) = c.ok_or_else(|| FormatError::Invalid(format!("vertex {v} has no coordinates")))?;
        pts.push(p);
        provenance.push(prov);
    }
    Ok(EmbeddedComplex {
        surface,
        coords: pts,
        provenance,
        spacing: None,
    })
}

/// The parts of a separation run that are written to report files.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportRecord {
    pub curve: Path,
    pub components: Vec<Vec<VertexId>>,
    pub seed_a: Option<VertexId>,
    pub seed_b: Option<VertexId>,
    /// `pass`, `fail`, or `hypotheses-failed`.
    pub verdict: String,
}

impl ReportRecord {
    pub fn new(report: &SeparationReport, verdict: &Verdict) -> Self {
        ReportRecord {
            curve: report.curve.clone(),
            components: report.components.clone(),
            seed_a: report.seed_a,
            seed_b: report.seed_b,
            verdict: verdict_word(verdict).into(),
        }
    }
}

pub fn verdict_word(v: &Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail { .. } => "fail",
        Verdict::HypothesesFailed { .. } => "hypotheses-failed",
    }
}

pub fn write_report(r: &ReportRecord) -> String {
    let mut out = write_curve(&r.curve);
    for (i, comp) in r.components.iter().enumerate() {
        writeln!(out, "component {i} size {}: {}", comp.len(), join(comp)).unwrap();
    }
    let seed = |s: Option<VertexId>| s.map_or("-".to_string(), |v| v.to_string());
    writeln!(out, "seeds a={} b={}", seed(r.seed_a), seed(r.seed_b)).unwrap();
    writeln!(out, "verdict {}", r.verdict).unwrap();
    out
}

fn parse_seed(line: usize, tok: &str, key: &str) -> Result<Option<VertexId>, FormatError> {
    let v = tok
        .strip_prefix(key)
        .ok_or_else(|| err(line, format!("expected `{key}`")))?;
    if v == "-" {
        return Ok(None);
    }
    v.parse().map(Some).map_err(|_| err(line, "bad seed"))
}

pub fn read_report(text: &str) -> Result<ReportRecord, FormatError> {
    let mut curve = None;
    let mut components = Vec::new();
    let mut seeds = None;
    let mut verdict = None;
    for (line, toks) in records(text) {
        match toks[0] {
            "c" => curve = Some(parse_curve_record(line, &toks)?),
            "component" => {
                if toks.len() < 4 || toks[2] != "size" || !toks[3].ends_with(':') {
                    return Err(err(line, "expected `component <i> size <n>: ...`"));
                }
                let n: usize = toks[3]
                    .trim_end_matches(':')
                    .parse()
                    .map_err(|_| err(line, "bad size"))?;
                let ids = parse_ids(line, &toks[4..])?;
                if ids.len() != n {
                    return Err(err(line, "size does not match the vertex list"));
                }
                components.push(ids);
            }
            "seeds" if toks.len() == 3 => {
                seeds = Some((parse_seed(line, toks[1], "a=")?, parse_seed(line, toks[2], "b=")?));
            }
            "verdict" if toks.len() == 2 => verdict = Some(toks[1].to_string()),
            other => return Err(err(line, format!("unknown record `{other}`"))),
        }
    }
    let (seed_a, seed_b) = seeds.ok_or_else(|| FormatError::Invalid("missing seeds".into()))?;
    Ok(ReportRecord {
        curve: curve.ok_or_else(|| FormatError::Invalid("missing curve".into()))?,
        components,
        seed_a,
        seed_b,
        verdict: verdict.ok_or_else(|| FormatError::Invalid("missing verdict".into()))?,
    })
}

pub fn write_sequence(seq: &DeformationSequence) -> String {
    let mut out = String::new();
    let kind = match seq.kind {
        SequenceKind::Contraction => "contraction",
        SequenceKind::ArcDeformation => "arc",
    };
    writeln!(out, "kind {kind}").unwrap();
    for (i, e) in seq.entries.iter().enumerate() {
        writeln!(out, "step {i}: {}", join(&e.vertices)).unwrap();
    }
    for (i, w) in seq.witnesses.iter().enumerate() {
        writeln!(out, "witness {i}: {w}").unwrap();
    }
    let list = |xs: &[usize]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    if !seq.unstable_steps.is_empty() {
        writeln!(out, "unstable {}", list(&seq.unstable_steps)).unwrap();
    }
    if !seq.fallback_steps.is_empty() {
        writeln!(out, "fallback {}", list(&seq.fallback_steps)).unwrap();
    }
    out
}

pub fn read_sequence(text: &str) -> Result<DeformationSequence, FormatError> {
    let mut kind = None;
    let mut entries = Vec::new();
    let mut witnesses = Vec::new();
    let mut unstable_steps = Vec::new();
    let mut fallback_steps = Vec::new();
    let nums = |line: usize, toks: &[&str]| -> Result<Vec<usize>, FormatError> {
        toks.iter()
            .map(|t| t.parse().map_err(|_| err(line, format!("bad number `{t}`"))))
            .collect()
    };
    let index = |line: usize, tok: &str, expect: usize| -> Result<(), FormatError> {
        match tok.trim_end_matches(':').parse::<usize>() {
            Ok(i) if i == expect && tok.ends_with(':') => Ok(()),
            _ => Err(err(line, format!("expected index {expect}:"))),
        }
    };
    for (line, toks) in records(text) {
        match toks[0] {
            "kind" if toks.len() == 2 => {
                kind = Some(match toks[1] {
                    "contraction" => SequenceKind::Contraction,
                    "arc" => SequenceKind::ArcDeformation,
                    k => return Err(err(line, format!("unknown kind `{k}`"))),
                })
            }
            "step" if toks.len() >= 2 => {
                index(line, toks[1], entries.len())?;
                let ids = parse_ids(line, &toks[2..])?;
                entries.push(ids);
            }
            "witness" if toks.len() == 3 => {
                index(line, toks[1], witnesses.len())?;
                witnesses.extend(nums(line, &toks[2..])?);
            }
            "unstable" => unstable_steps = nums(line, &toks[1..])?,
            "fallback" => fallback_steps = nums(line, &toks[1..])?,
            other => return Err(err(line, format!("unknown record `{other}`"))),
        }
    }
    let kind = kind.ok_or_else(|| FormatError::Invalid("missing kind".into()))?;
    let entries = entries
        .into_iter()
        .map(|ids| match kind {
            SequenceKind::Contraction => Path::closed(ids),
            SequenceKind::ArcDeformation => Path::open(ids),
        })
        .collect();
    Ok(DeformationSequence {
        kind,
        entries,
        witnesses,
        unstable_steps,
        fallback_steps,
    })
}
