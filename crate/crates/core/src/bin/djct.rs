use std::fs;
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use discrete_jordan::accept::{run_with, AcceptConfig};
use discrete_jordan::contraction::{certify_simply_connected, contract_cycle, SampleSpec};
use discrete_jordan::curves::{check_theorem1_hypotheses, Path};
use discrete_jordan::gensurf::{generate, GenSpec, Kind};
use discrete_jordan::io;
use discrete_jordan::jordan::{check_theorem1, check_theorem2, Verdict};
use discrete_jordan::planar::{embed, parse_rational, EmbedConfig, WidenStrategy};
use discrete_jordan::svg;
use discrete_jordan::Surface;

/// Exit codes: 0 pass, 1 verdict fail or rejected input, 2 hypotheses fail,
/// 3 I/O or parse error.
#[derive(Parser)]
#[command(name = "djct", version, about = "Discrete Jordan curve toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    /// The wide-angle check when its hypotheses hold, the subdivided check otherwise.
    Auto,
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Centroid,
    CentroidAndEdges,
}

#[derive(Subcommand)]
enum Command {
    /// Check a surface file for manifold violations.
    Validate {
        #[arg(long)]
        surface: PathBuf,
    },
    /// Write a generated surface and its named curves.
    Gen {
        /// octahedron, icosahedron, moebius, disk:R, fan:N, annulus:N, torus:MxN
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, env = "DJCT_OUT_DIR", default_value = ".")]
        out_dir: PathBuf,
    },
    /// Components of the surface minus a closed curve.
    Separate {
        #[arg(long)]
        surface: PathBuf,
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        theorem: Theorem,
        /// Radius for the three-cell condition of the wide-angle check.
        #[arg(long, default_value_t = 4)]
        radius: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Contract a closed curve to a cell, keeping one vertex fixed.
    Contract {
        #[arg(long)]
        surface: PathBuf,
        #[arg(long)]
        curve: PathBuf,
        /// Defaults to the first curve vertex.
        #[arg(long)]
        anchor: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write one SVG frame per step into this directory.
        #[arg(long)]
        svg_dir: Option<PathBuf>,
    },
    /// Sample curves and try to contract them.
    Certify {
        #[arg(long)]
        surface: PathBuf,
        #[arg(long)]
        curve: Vec<PathBuf>,
        #[arg(long, default_value_t = 8)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        pairs: usize,
    },
    /// Snap a polygon onto a lattice and widen its angles.
    Embed {
        #[arg(long)]
        polygon: PathBuf,
        /// Lattice spacing as a rational, such as 1/4.
        #[arg(long)]
        edge_length: Option<String>,
        #[arg(long)]
        margin: Option<String>,
        #[arg(long, default_value_t = 2)]
        widen_rounds: usize,
        #[arg(long, value_enum, default_value = "centroid-and-edges")]
        strategy: Strategy,
        #[arg(long, env = "DJCT_OUT_DIR", default_value = ".")]
        out_dir: PathBuf,
    },
    /// Draw a surface, optionally with a curve or a contraction sequence.
    Render {
        /// A surface or embedded-complex file.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        curve: Option<PathBuf>,
        /// Draw every entry of this sequence; `--out` is then a directory.
        #[arg(long)]
        sequence: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the acceptance suite.
    Accept {
        #[arg(long, default_value_t = 100)]
        polygons: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 10)]
        repetitions: usize,
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..=14))]
        oracle_cell_limit: u64,
        /// Inject the curve-edge subdivision fault.
        #[arg(long)]
        mutate_veblen: bool,
    },
}

enum Failure {
    Verdict(String),
    Hypotheses(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verdict(_) => 1,
            Failure::Hypotheses(_) => 2,
            Failure::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Verdict(m) | Failure::Hypotheses(m) | Failure::Io(m) => m,
        }
    }
}

type Outcome = Result<(), Failure>;

fn reject(e: impl std::fmt::Display) -> Failure {
    Failure::Verdict(e.to_string())
}

fn read(path: &FsPath) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write(path: &FsPath, text: &str) -> Outcome {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&PathBuf>, text: &str) -> Outcome {
    match out {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse<T, E: std::fmt::Display>(path: &FsPath, r: Result<T, E>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_surface(path: &FsPath) -> Result<Surface, Failure> {
    let text = read(path)?;
    parse(path, io::read_surface(&text))
}

fn load_curve(path: &FsPath) -> Result<Path, Failure> {
    let text = read(path)?;
    parse(path, io::read_curve(&text))
}

fn validate(surface: &FsPath) -> Outcome {
    let s = load_surface(surface)?;
    let problems = s.validate();
    for v in &problems {
        println!("{v:?}");
    }
    println!(
        "vertices {} edges {} cells {} euler {}",
        s.num_vertices(),
        s.num_edges(),
        s.num_cells(),
        s.euler_characteristic()
    );
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verdict(format!("{} violations", problems.len())))
    }
}

fn gen(kind: &str, seed: u64, out_dir: &FsPath) -> Outcome {
    let kind = Kind::parse(kind).map_err(|e| Failure::Io(e.to_string()))?;
    let g = generate(&GenSpec::new(kind, seed)).map_err(reject)?;
    write(&out_dir.join("surface.txt"), &io::write_surface(&g.surface))?;
    for (name, curve) in &g.curves {
        write(&out_dir.join(format!("{name}.curve")), &io::write_curve(curve))?;
    }
    println!("{kind} seed {seed}: {} cells, {} curves", g.surface.num_cells(), g.curves.len());
    Ok(())
}

fn separate(surface: &FsPath, curve: &FsPath, theorem: Theorem, radius: usize, out: Option<&PathBuf>) -> Outcome {
    let s = load_surface(surface)?;
    let c = load_curve(curve)?;
    let use_first = match theorem {
        Theorem::One => true,
        Theorem::Two => false,
        Theorem::Auto => check_theorem1_hypotheses(&s, &c, radius).map_err(reject)?.holds(),
    };
    let (report, verdict) = if use_first {
        let o = check_theorem1(&s, &c, radius).map_err(reject)?;
        (o.report, o.verdict)
    } else {
        let o = check_theorem2(&s, &c).map_err(reject)?;
        (o.report, o.verdict)
    };
    emit(out, &io::write_report(&io::ReportRecord::new(&report, &verdict)))?;
    match verdict {
        Verdict::Pass => Ok(()),
        Verdict::HypothesesFailed { .. } => Err(Failure::Hypotheses("hypotheses do not hold".into())),
        Verdict::Fail { note } => Err(Failure::Verdict(note)),
    }
}

fn contract(
    surface: &FsPath,
    curve: &FsPath,
    anchor: Option<u32>,
    out: Option<&PathBuf>,
    svg_dir: Option<&PathBuf>,
) -> Outcome {
    let s = load_surface(surface)?;
    let c = load_curve(curve)?;
    let p = anchor.or_else(|| c.vertices.first().copied()).ok_or_else(|| reject("empty curve"))?;
    let seq = contract_cycle(&s, &c, p).map_err(reject)?;
    emit(out, &io::write_sequence(&seq))?;
    if let Some(dir) = svg_dir {
        write_frames(&s, None, &seq, dir)?;
    }
    Ok(())
}

fn write_frames(
    s: &Surface,
    layout: Option<&svg::Layout>,
    seq: &discrete_jordan::contraction::DeformationSequence,
    dir: &FsPath,
) -> Outcome {
    let frames = svg::render_sequence(s, layout, seq).map_err(reject)?;
    for (i, f) in frames.iter().enumerate() {
        write(&dir.join(format!("frame-{i:04}.svg")), f)?;
    }
    Ok(())
}

fn certify(surface: &FsPath, curves: &[PathBuf], random: usize, seed: u64, pairs: usize) -> Outcome {
    let s = load_surface(surface)?;
    let curves = curves.iter().map(|p| load_curve(p)).collect::<Result<Vec<_>, _>>()?;
    let cert = certify_simply_connected(
        &s,
        &SampleSpec {
            curves,
            random,
            seed,
            pairs,
            max_len: 0,
        },
    );
    for e in &cert.entries {
        let status = e.error.as_deref().unwrap_or("ok");
        println!("curve {} p={} q={}: {status}", e.curve.len(), e.p, e.q);
    }
    if let Some(w) = &cert.warning {
        println!("warning: {w}");
    }
    println!("certified {}", cert.certified);
    if cert.certified {
        Ok(())
    } else {
        Err(Failure::Verdict("some sampled curve did not contract".into()))
    }
}

fn embed_cmd(
    polygon: &FsPath,
    edge_length: Option<&str>,
    margin: Option<&str>,
    widen_rounds: usize,
    strategy: Strategy,
    out_dir: &FsPath,
) -> Outcome {
    let text = read(polygon)?;
    let poly = parse(polygon, io::read_polygon(&text))?;
    let rational = |s: Option<&str>| s.map(|s| parse_rational(s).ok_or_else(|| Failure::Io(format!("bad rational `{s}`")))).transpose();
    let config = EmbedConfig {
        edge_length: rational(edge_length)?,
        margin: rational(margin)?,
        widen_rounds,
        strategy: match strategy {
            Strategy::Centroid => WidenStrategy::Centroid,
            Strategy::CentroidAndEdges => WidenStrategy::CentroidAndEdges,
        },
    };
    let e = embed(&poly, &config).map_err(reject)?;
    write(&out_dir.join("snapped.txt"), &io::write_embedded(&e.snapped.complex))?;
    write(&out_dir.join("widened.txt"), &io::write_embedded(&e.widened))?;
    write(&out_dir.join("curve.txt"), &io::write_curve(e.curve()))?;
    let holds = check_theorem1_hypotheses(&e.widened.surface, e.curve(), 4)
        .map(|h| h.holds())
        .unwrap_or(false);
    println!(
        "edge length {} margin {}: {} snapped cells, {} widened cells, curve {} vertices, hypotheses {}",
        e.edge_length,
        e.margin,
        e.snapped.complex.surface.num_cells(),
        e.widened.surface.num_cells(),
        e.curve().len(),
        if holds { "hold" } else { "fail" }
    );
    Ok(())
}

fn render(input: &FsPath, curve: Option<&PathBuf>, sequence: Option<&PathBuf>, out: &FsPath) -> Outcome {
    let text = read(input)?;
    let (surface, layout) = if text.lines().any(|l| l.starts_with("coord ")) {
        let ec = parse(input, io::read_embedded(&text))?;
        let layout = svg::layout_of(&ec);
        (ec.surface, Some(layout))
    } else {
        (parse(input, io::read_surface(&text))?, None)
    };
    if let Some(seq) = sequence {
        let seq_text = read(seq)?;
        let seq = parse(seq, io::read_sequence(&seq_text))?;
        return write_frames(&surface, layout.as_ref(), &seq, out);
    }
    let curve = curve.map(|c| load_curve(c)).transpose()?;
    let doc = svg::render_surface(&surface, layout.as_ref(), curve.as_ref()).map_err(reject)?;
    write(out, &doc)
}

fn accept(cfg: AcceptConfig) -> Outcome {
    let results = run_with(&cfg, |r| println!("{r}"));
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("summary {}/{} passed", results.len() - failed, results.len());
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Verdict(format!("{failed} criteria failed")))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // Usage errors are parse errors; help and version are not errors.
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let outcome = match &cli.command {
        Command::Validate { surface } => validate(surface),
        Command::Gen { kind, seed, out_dir } => gen(kind, *seed, out_dir),
        Command::Separate {
            surface,
            curve,
            theorem,
            radius,
            out,
        } => separate(surface, curve, *theorem, *radius, out.as_ref()),
        Command::Contract {
            surface,
            curve,
            anchor,
            out,
            svg_dir,
        } => contract(surface, curve, *anchor, out.as_ref(), svg_dir.as_ref()),
        Command::Certify {
            surface,
            curve,
            random,
            seed,
            pairs,
        } => certify(surface, curve, *random, *seed, *pairs),
        Command::Embed {
            polygon,
            edge_length,
            margin,
            widen_rounds,
            strategy,
            out_dir,
        } => embed_cmd(
            polygon,
            edge_length.as_deref(),
            margin.as_deref(),
            *widen_rounds,
            *strategy,
            out_dir,
        ),
        Command::Render {
            input,
            curve,
            sequence,
            out,
        } => render(input, curve.as_ref(), sequence.as_ref(), out),
        Command::Accept {
            polygons,
            samples,
            repetitions,
            oracle_cell_limit,
            mutate_veblen,
        } => accept(AcceptConfig {
            polygons: *polygons,
            samples: *samples,
            repetitions: *repetitions,
            oracle_cell_limit: *oracle_cell_limit as usize,
            mutate_veblen: *mutate_veblen,
        }),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
