//! `bjortho`: orthogonality checks, preserver construction and verification
//! reports from the command line.
//!
//! Exit codes: 0 on success, 1 when a check or verification fails (the report
//! is still written), 2 on usage, parse or input errors.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bjortho::analysis::{
    euclidean_section_search, radon_defect, sample_orthograph, section_candidates, smoothness_probe,
    sum_acute_equivalence_check, unit_circle, Directions, SECTION_TOL,
};
use bjortho::preserver::{
    build_preserver, preserver_for_target, preserver_from_table, verify_preserver, EtaTable, DEFAULT_GRID,
};
use bjortho::tolerance::DEFAULT_MARGIN;
use bjortho::{classify_angle, NormedSpace};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

const VERSION: &str = env!("CARGO_PKG_VERSION");
/// Default output directory for artifacts when no explicit path is given.
const OUT_DIR_ENV: &str = "BJORTHO_OUT_DIR";

#[derive(Parser)]
#[command(name = "bjortho", version, about = "Birkhoff-James orthogonality in finite-dimensional normed spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the angle between x and y.
    Check(CheckArgs),
    /// Measure how far orthogonality in a plane is from symmetric.
    Radon(RadonArgs),
    /// Probe a space for non-smooth points.
    Smooth(SmoothArgs),
    /// Build the eta table of a plane and write it as CSV.
    PreserverBuild(BuildArgs),
    /// Build the preserver for a target space and verify it on random pairs.
    PreserverVerify(VerifyArgs),
    /// Search random two-dimensional sections for Euclidean ones.
    Sections(SectionsArgs),
    /// Cross-check the acute-angle case analysis on an l-infinity sum.
    SumAcute(SumAcuteArgs),
    /// Sample the mutual-orthogonality graph and write its edge list.
    Orthograph(OrthographArgs),
    /// Sample the unit circle of a plane as CSV.
    Circle(CircleArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Compact spec such as `dayjames:3:1.5`, or a JSON descriptor file.
    #[arg(long)]
    space: String,
    #[arg(long, required = true, allow_hyphen_values = true, value_delimiter = ',')]
    x: Vec<f64>,
    #[arg(long, required = true, allow_hyphen_values = true, value_delimiter = ',')]
    y: Vec<f64>,
    #[arg(long, default_value_t = DEFAULT_MARGIN)]
    margin: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RadonArgs {
    #[arg(long)]
    space: String,
    #[arg(long, default_value_t = 720)]
    grid: usize,
    #[arg(long, default_value_t = 1e-8)]
    margin: f64,
    /// JSON report path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Per-direction rows as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct SmoothArgs {
    #[arg(long)]
    space: String,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BuildArgs {
    /// A smooth Radon plane.
    #[arg(long)]
    target: String,
    #[arg(long, default_value_t = DEFAULT_GRID)]
    grid: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    target: String,
    #[arg(long, default_value_t = DEFAULT_GRID)]
    grid: usize,
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_MARGIN)]
    margin: f64,
    /// Use a prebuilt eta table instead of building one (plane targets only).
    #[arg(long)]
    eta: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SectionsArgs {
    #[arg(long)]
    space: String,
    #[arg(long, default_value_t = 1000)]
    candidates: usize,
    #[arg(long, default_value_t = 100)]
    pairs: usize,
    #[arg(long, default_value_t = SECTION_TOL)]
    tol: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SumAcuteArgs {
    #[arg(long)]
    x_space: String,
    #[arg(long)]
    y_space: String,
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = DEFAULT_MARGIN)]
    margin: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OrthographArgs {
    #[arg(long)]
    space: String,
    /// Number of uniform directions of a plane.
    #[arg(long, conflicts_with_all = ["angles", "vectors"])]
    directions: Option<usize>,
    /// Comma-separated angles in radians.
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',', conflicts_with = "vectors")]
    angles: Option<Vec<f64>>,
    /// Semicolon-separated direction vectors, e.g. `1,0;0,1`.
    #[arg(long, allow_hyphen_values = true, value_delimiter = ';', value_parser = parse_vector)]
    vectors: Option<Vec<Vec<f64>>>,
    /// Add the computed orthogonal partner of each planar direction.
    #[arg(long)]
    refine: bool,
    #[arg(long, default_value_t = DEFAULT_MARGIN)]
    margin: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CircleArgs {
    #[arg(long)]
    space: String,
    #[arg(long, default_value_t = 360)]
    points: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_vector(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("bad number {t:?}: {e}")))
        .collect()
}

/// A compact spec, or a JSON descriptor file when `spec` names one.
fn load_space(spec: &str) -> bjortho::Result<NormedSpace> {
    let path = Path::new(spec);
    if path.is_file() {
        return NormedSpace::from_json(&std::fs::read_to_string(path)?);
    }
    if spec.ends_with(".json") {
        return Err(io::Error::new(io::ErrorKind::NotFound, format!("no such file: {spec}")).into());
    }
    NormedSpace::parse_compact(spec)
}

/// Explicit path, else `$BJORTHO_OUT_DIR/<default_name>`, else none.
fn resolve_out(explicit: Option<PathBuf>, default_name: &str) -> Option<PathBuf> {
    explicit.or_else(|| std::env::var_os(OUT_DIR_ENV).map(|d| PathBuf::from(d).join(default_name)))
}

fn create(path: &Path) -> io::Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    Ok(BufWriter::new(File::create(path)?))
}

/// Writes `body` to `path`, or to stdout when there is no path.
fn write_artifact(path: Option<&Path>, body: impl FnOnce(&mut dyn Write) -> bjortho::Result<()>) -> bjortho::Result<()> {
    match path {
        Some(p) => {
            let mut w = create(p)?;
            body(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            body(&mut lock)?;
        }
    }
    Ok(())
}

/// The report's fields plus the tool, version and command that produced it.
fn write_report<T: Serialize>(path: Option<&Path>, command: &str, extra: Value, report: &T) -> bjortho::Result<()> {
    let Some(path) = path else { return Ok(()) };
    let mut value = serde_json::to_value(report)?;
    let obj = value.as_object_mut().expect("reports serialize as objects");
    obj.insert("tool".into(), json!("bjortho"));
    obj.insert("version".into(), json!(VERSION));
    obj.insert("command".into(), json!(command));
    if let Value::Object(more) = extra {
        obj.extend(more);
    }
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, &value)?;
    writeln!(w)?;
    w.flush()?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

/// Outcome of a verb that ran to completion.
enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    fn from(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

fn check(a: CheckArgs) -> bjortho::Result<Verdict> {
    let space = load_space(&a.space)?;
    let r = classify_angle(&space, &a.x, &a.y, a.margin)?;
    println!("{}", r.tag.label());
    println!("bounds [{}, {}], |y| = {}", r.min_bound, r.max_bound, r.y_norm);
    let out = resolve_out(a.out, "check.json");
    write_report(out.as_deref(), "check", json!({"space": space.compact(), "x": a.x, "y": a.y, "margin": a.margin}), &r)?;
    Ok(Verdict::Pass)
}

fn radon(a: RadonArgs) -> bjortho::Result<Verdict> {
    let space = load_space(&a.space)?;
    let r = radon_defect(&space, a.grid, a.margin)?;
    match r.witness {
        Some((t, s)) => println!("defect {} (witness theta {t}, theta* {s})", r.defect),
        None => println!("defect {} (symmetric within {})", r.defect, a.margin),
    }
    let out = resolve_out(a.out, "radon.json");
    write_report(out.as_deref(), "radon", json!({"space": space.compact()}), &r)?;
    if let Some(path) = a.csv {
        r.write_csv(create(&path)?)?;
    }
    Ok(Verdict::from(r.is_radon))
}

fn smooth(a: SmoothArgs) -> bjortho::Result<Verdict> {
    let space = load_space(&a.space)?;
    let r = smoothness_probe(&space, a.samples, a.seed);
    if r.smooth {
        println!("smooth: worst gap {} over {} points", r.worst_gap, r.points);
    } else {
        println!("not smooth: gap {} at {:?} along {:?}", r.worst_gap, r.worst_point, r.worst_direction);
    }
    let out = resolve_out(a.out, "smooth.json");
    write_report(out.as_deref(), "smooth", json!({"space": space.compact()}), &r)?;
    Ok(Verdict::from(r.smooth))
}

fn preserver_build(a: BuildArgs) -> bjortho::Result<Verdict> {
    let plane = load_space(&a.target)?;
    let map = build_preserver(&plane, a.grid)?;
    let table = map.eta_tables()[0];
    let out = resolve_out(a.out, "eta.csv");
    write_artifact(out.as_deref(), |w| table.write_csv(w))?;
    let worst = table.residuals().iter().fold(0.0_f64, |m, r| m.max(*r));
    eprintln!("{}: {} nodes, max residual {worst:e}", map.describe(), table.values().len());
    Ok(Verdict::Pass)
}

fn preserver_verify(a: VerifyArgs) -> bjortho::Result<Verdict> {
    let target = load_space(&a.target)?;
    let map = match &a.eta {
        Some(path) => preserver_from_table(EtaTable::read_csv(&target, BufReader::new(File::open(path)?))?)?,
        None => preserver_for_target(&target, a.grid)?,
    };
    let r = verify_preserver(&map, a.samples, a.margin, a.seed);
    println!(
        "{}: {} ({} disagreements, {} acute violations, norm err {:e}, homog err {:e}, inverse err {:e})",
        r.map,
        if r.pass { "pass" } else { "FAIL" },
        r.disagreements,
        r.acute_violations,
        r.max_norm_error,
        r.max_homog_error,
        r.max_inverse_error
    );
    let out = resolve_out(a.out, "preserver-verify.json");
    let grid = map.eta_tables().first().map(|t| t.grid_size());
    write_report(out.as_deref(), "preserver-verify", json!({"target": target.compact(), "grid": grid}), &r)?;
    Ok(Verdict::from(r.pass))
}

fn sections(a: SectionsArgs) -> bjortho::Result<Verdict> {
    let space = load_space(&a.space)?;
    let cands = section_candidates(space.dim(), a.candidates, a.seed);
    let r = euclidean_section_search(&space, &cands, a.pairs, a.tol, a.seed)?;
    println!("{} of {} sections flagged Euclidean", r.flagged.len(), r.candidates);
    let out = resolve_out(a.out, "sections.json");
    write_report(out.as_deref(), "sections", json!({"space": space.compact()}), &r)?;
    Ok(Verdict::Pass)
}

fn sum_acute(a: SumAcuteArgs) -> bjortho::Result<Verdict> {
    let xs = load_space(&a.x_space)?;
    let ys = load_space(&a.y_space)?;
    let r = sum_acute_equivalence_check(&xs, &ys, a.samples, a.margin, a.seed)?;
    println!(
        "{} disagreements over {} compared pairs ({} exact ties, {:.2}% excluded)",
        r.disagreements,
        r.compared,
        r.exact_ties,
        100.0 * r.excluded_fraction
    );
    let out = resolve_out(a.out, "sum-acute.json");
    write_report(out.as_deref(), "sum-acute", json!({"x_space": xs.compact(), "y_space": ys.compact()}), &r)?;
    Ok(Verdict::from(r.pass))
}

fn orthograph(a: OrthographArgs) -> bjortho::Result<Verdict> {
    let space = load_space(&a.space)?;
    let dirs = match (a.directions, a.angles, a.vectors) {
        (_, Some(angles), _) => Directions::Angles(angles),
        (_, _, Some(vectors)) => Directions::Vectors(vectors),
        (n, _, _) => Directions::Uniform(n.unwrap_or(180)),
    };
    let g = sample_orthograph(&space, &dirs, a.margin, a.refine)?;
    let out = resolve_out(a.out, "orthograph.txt");
    write_artifact(out.as_deref(), |w| g.write_edge_list(w))?;
    eprintln!("{} vertices, {} edges", g.vertices.len(), g.edges().len());
    Ok(Verdict::Pass)
}

fn circle(a: CircleArgs) -> bjortho::Result<Verdict> {
    let plane = load_space(&a.space)?;
    let rows = unit_circle(&plane, a.points)?;
    let out = resolve_out(a.out, "circle.csv");
    write_artifact(out.as_deref(), |w| {
        writeln!(w, "theta,x,y")?;
        for [t, x, y] in rows {
            writeln!(w, "{t:.16e},{x:.16e},{y:.16e}")?;
        }
        Ok(())
    })?;
    Ok(Verdict::Pass)
}

fn run(cli: Cli) -> bjortho::Result<Verdict> {
    match cli.command {
        Command::Check(a) => check(a),
        Command::Radon(a) => radon(a),
        Command::Smooth(a) => smooth(a),
        Command::PreserverBuild(a) => preserver_build(a),
        Command::PreserverVerify(a) => preserver_verify(a),
        Command::Sections(a) => sections(a),
        Command::SumAcute(a) => sum_acute(a),
        Command::Orthograph(a) => orthograph(a),
        Command::Circle(a) => circle(a),
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors.
    let cli = Cli::parse();
    match run(cli) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            eprintln!("Run `bjortho --help` for usage.");
            ExitCode::from(2)
        }
    }
}
