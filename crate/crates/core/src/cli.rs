//! Command-line runs. A [`RunConfig`] fully determines the artifacts a run
//! writes; it is parsed from arguments and written next to them as
//! `run.json`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 step budget exceeded.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::aggregation::aggregate_with_budget;
use crate::engine::{verify_odometer, Odometer, DEFAULT_STEP_BUDGET};
use crate::error::{Error, Result};
use crate::geometry::{cardinality_bm, read_vertices_csv, vertices_to_json, write_vertices_csv, ClusterShape, Profile, Vertex};
use crate::halfline::halfline_process;
use crate::harmonic::rotor::DEFAULT_CAP;
use crate::harmonic::{
    estimate_c, harmonic_by_montecarlo, harmonic_by_recursion, harmonic_by_rotor, max_discrepancy, max_z_score,
    verify_monotone_bounds, BoundaryMeasure,
};
use crate::oracle::{halfline_odometer, halfline_h_r, odometer_map, FIRST_FORMULA_M};
use crate::render::{render_measure, render_state, RenderOptions};
use crate::snapshot::Snapshot;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Clone, PartialEq, Parser, Serialize, Deserialize)]
#[command(name = "comb-rotor", version, about = "Rotor-router experiments on the two-dimensional comb")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Directory for artifacts.
    #[arg(long, global = true, default_value = ".")]
    pub output_dir: PathBuf,
    /// Format of vertex and odometer artifacts.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Do not print the report.
    #[arg(long, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Rotor-router aggregation from the origin.
    Aggregate(AggregateArgs),
    /// The half-line process with a sink at 0.
    Halfline(HalflineArgs),
    /// Certify the closed-form odometer of `B_m`.
    Verify(VerifyArgs),
    /// Harmonic measure of a comb shape.
    Harmonic(HarmonicArgs),
    /// Draw a saved engine snapshot.
    Render(RenderArgs),
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct AggregateArgs {
    /// Number of particles.
    #[arg(long, conflicts_with = "m", required_unless_present = "m")]
    pub n: Option<u64>,
    /// Use `|B_m|` particles.
    #[arg(long)]
    pub m: Option<u64>,
    /// Fail unless the cluster is exactly `B_m`.
    #[arg(long)]
    pub check_shape: bool,
    /// Fail unless the odometer equals the closed form (`m >= 3`).
    #[arg(long)]
    pub check_odometer: bool,
    /// Write `cluster.svg`.
    #[arg(long)]
    pub svg: bool,
    /// Odometer labels in the picture.
    #[arg(long)]
    pub labels: bool,
    /// Write `snapshot.json`.
    #[arg(long)]
    pub snapshot: bool,
    #[arg(long, default_value_t = DEFAULT_STEP_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct HalflineArgs {
    #[arg(long)]
    pub n: u64,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct VerifyArgs {
    /// A single `m`.
    #[arg(long, conflicts_with_all = ["m_min", "m_max", "odometer"])]
    pub m: Option<u64>,
    #[arg(long, default_value_t = 3)]
    pub m_min: u64,
    #[arg(long, default_value_t = 12)]
    pub m_max: u64,
    /// Also run `m < 3`, where the closed form is not the odometer.
    #[arg(long)]
    pub include_small: bool,
    /// Check an odometer read from a CSV file (`x,y,u`) instead.
    #[arg(long, requires = "n")]
    pub odometer: Option<PathBuf>,
    /// Particle count for `--odometer`.
    #[arg(long)]
    pub n: Option<u64>,
    /// Active set as a CSV file (`x,y`); defaults to the interior of
    /// `B_m`, or to `{u > 0}` with `--odometer`.
    #[arg(long)]
    pub a_star: Option<PathBuf>,
    /// Also aggregate and write `diff_m<m>.csv` (`x,y,simulated,formula`).
    #[arg(long)]
    pub diff: bool,
    /// Worker threads across values of `m`; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Rotor,
    Recursion,
    Montecarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Emit {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct HarmonicArgs {
    /// `cluster`, `square`, or `file:<path>` with a list of heights.
    #[arg(long, default_value = "cluster")]
    pub profile: String,
    #[arg(long, default_value_t = 3)]
    pub m: u64,
    #[arg(long, value_enum, default_value_t = Method::Recursion)]
    pub method: Method,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: u64,
    #[arg(long, value_enum, default_value_t = Emit::Csv)]
    pub emit: Emit,
    /// Run two methods, e.g. `recursion,montecarlo`, and compare them.
    #[arg(long, value_delimiter = ',')]
    pub compare: Option<Vec<Method>>,
    /// Bracket the limit of `e(x)/x` for the cluster profile instead.
    #[arg(long)]
    pub estimate_c: bool,
    #[arg(long, default_value_t = 3000)]
    pub max_x: u64,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct RenderArgs {
    #[arg(long)]
    pub snapshot: PathBuf,
    #[arg(long)]
    pub labels: bool,
}

/// Outcome of a run: whether every requested check passed, and the report.
struct Outcome {
    passed: bool,
    report: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome { passed: true, report: String::new() }
    }

    fn line(&mut self, text: impl AsRef<str>) {
        self.report.push_str(text.as_ref());
        self.report.push('\n');
    }

    fn check(&mut self, ok: bool, text: impl AsRef<str>) {
        self.passed &= ok;
        self.line(format!("{}: {}", text.as_ref(), if ok { "ok" } else { "FAILED" }));
    }
}

fn write_artifact(dir: &Path, name: &str, contents: impl AsRef<[u8]>) -> Result<()> {
    fs::write(dir.join(name), contents)?;
    Ok(())
}

fn odometer_text(u: &Odometer, format: Format) -> Result<String> {
    Ok(match format {
        Format::Csv => {
            let mut s = String::from("x,y,u\n");
            for (v, k) in u {
                let _ = writeln!(s, "{},{},{k}", v.x, v.y);
            }
            s
        }
        Format::Json => {
            let rows: Vec<(i64, i64, u64)> = u.iter().map(|(v, &k)| (v.x, v.y, k)).collect();
            serde_json::to_string_pretty(&rows)?
        }
    })
}

fn read_odometer_csv(text: &str) -> Result<Odometer> {
    let mut out = Odometer::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (i == 0 && line.starts_with("x,")) {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let parse_err = |e: &dyn std::fmt::Display| Error::Parse(format!("odometer line {}: {e}", i + 1));
        if fields.len() != 3 {
            return Err(parse_err(&"expected x,y,u"));
        }
        let x: i64 = fields[0].parse().map_err(|e| parse_err(&e))?;
        let y: i64 = fields[1].parse().map_err(|e| parse_err(&e))?;
        let u: u64 = fields[2].parse().map_err(|e| parse_err(&e))?;
        if u > 0 {
            out.insert(Vertex::new(x, y), u);
        }
    }
    Ok(out)
}

fn vertices_text<'a>(vs: impl IntoIterator<Item = &'a Vertex>, format: Format) -> Result<String> {
    match format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_vertices_csv(&mut buf, vs)?;
            Ok(String::from_utf8(buf).expect("ascii"))
        }
        Format::Json => vertices_to_json(vs),
    }
}

fn cmd_aggregate(cfg: &RunConfig, args: &AggregateArgs) -> Result<Outcome> {
    let n = match (args.n, args.m) {
        (Some(n), _) => n,
        (None, Some(m)) => cardinality_bm(m),
        (None, None) => return Err(Error::Domain("either --n or --m is required".into())),
    };
    if (args.check_shape || args.check_odometer) && args.m.is_none() {
        return Err(Error::Domain("--check-shape and --check-odometer need --m".into()));
    }
    let agg = aggregate_with_budget(n, args.budget)?;
    let mut out = Outcome::new();
    out.line(format!("particles {n}, cluster size {}", agg.cluster.len()));
    let ext = match cfg.format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    let odometer = agg.state.odometer_map();
    write_artifact(&cfg.output_dir, &format!("cluster.{ext}"), vertices_text(&agg.cluster, cfg.format)?)?;
    write_artifact(&cfg.output_dir, &format!("odometer.{ext}"), odometer_text(&odometer, cfg.format)?)?;
    if args.svg {
        let svg = render_state(&agg.state, RenderOptions { labels: args.labels });
        write_artifact(&cfg.output_dir, "cluster.svg", svg)?;
    }
    if args.snapshot {
        write_artifact(&cfg.output_dir, "snapshot.json", Snapshot::from_state(&agg.state).to_json()?)?;
    }
    if let Some(m) = args.m {
        if args.check_shape {
            let expected: BTreeSet<Vertex> = ClusterShape::cluster(m).vertices().into_iter().collect();
            let ok = expected == agg.cluster;
            if !ok {
                for v in expected.difference(&agg.cluster) {
                    out.line(format!("missing {v}"));
                }
                for v in agg.cluster.difference(&expected) {
                    out.line(format!("extra {v}"));
                }
            }
            out.check(ok, format!("cluster equals B_{m}"));
        }
        if args.check_odometer {
            if m < FIRST_FORMULA_M {
                return Err(Error::Domain(format!(
                    "the closed-form odometer describes m >= {FIRST_FORMULA_M}"
                )));
            }
            let formula = odometer_map(m)?;
            let mismatches: Vec<_> = formula
                .keys()
                .chain(odometer.keys())
                .collect::<BTreeSet<_>>()
                .into_iter()
                .filter(|v| formula.get(v) != odometer.get(v))
                .collect();
            for v in mismatches.iter().take(20) {
                out.line(format!(
                    "odometer at {v}: simulated {}, formula {}",
                    odometer.get(v).unwrap_or(&0),
                    formula.get(v).unwrap_or(&0)
                ));
            }
            out.check(mismatches.is_empty(), format!("odometer equals u_{m}"));
        }
    }
    Ok(out)
}

fn cmd_halfline(cfg: &RunConfig, args: &HalflineArgs) -> Result<Outcome> {
    if args.n == 0 {
        return Err(Error::Domain("--n must be positive".into()));
    }
    let run = halfline_process(args.n);
    let (h, r) = halfline_h_r(args.n);
    let formula = halfline_odometer(args.n);
    let mut csv = String::from("y,simulated,formula\n");
    for (y, sim) in run.odometer.iter().enumerate() {
        let _ = writeln!(csv, "{y},{sim},{}", formula.get(y).copied().unwrap_or(0));
    }
    write_artifact(&cfg.output_dir, "halfline.csv", csv)?;
    let mut out = Outcome::new();
    out.line(format!("extent {} (formula {h}), frontier {} (formula {r})", run.extent, run.frontier));
    out.check(
        run.extent as u64 == h && run.frontier as u64 == r && run.odometer == formula,
        "half-line odometer matches the closed form",
    );
    Ok(out)
}

fn verdict_line(label: &str, v: &crate::engine::OdometerVerdict) -> String {
    let mark = |b: bool| if b { "true" } else { "false" };
    format!(
        "{label}: (a) {} (b) {} (c) {} (d) {}",
        mark(v.at_most_one),
        mark(v.finite_active_set),
        mark(v.one_on_active_set),
        mark(v.acyclic_on_active_set)
    )
}

fn verify_one(m: u64, diff: bool, dir: &Path) -> Result<(bool, String)> {
    let n = cardinality_bm(m);
    let u = odometer_map(m)?;
    let interior = ClusterShape::cluster(m).interior();
    let verdict = verify_odometer(&u, n, Some(&interior))?;
    let mut text = verdict_line(&format!("m={m} n={n}"), &verdict);
    let mut ok = verdict.certified();
    if !ok {
        let _ = write!(text, " failed {:?}", verdict.failed_conditions());
    }
    if diff {
        let sim = aggregate_with_budget(n, DEFAULT_STEP_BUDGET)?.state.odometer_map();
        let mut csv = String::from("x,y,simulated,formula\n");
        let mut same = true;
        for v in ClusterShape::cluster(m).vertices() {
            let (s, f) = (sim.get(&v).copied().unwrap_or(0), u.get(&v).copied().unwrap_or(0));
            same &= s == f;
            let _ = writeln!(csv, "{},{},{s},{f}", v.x, v.y);
        }
        write_artifact(dir, &format!("diff_m{m}.csv"), csv)?;
        let _ = write!(text, ", simulated odometer {}", if same { "matches" } else { "DIFFERS" });
        ok &= same;
    }
    Ok((ok, text))
}

fn cmd_verify(cfg: &RunConfig, args: &VerifyArgs) -> Result<Outcome> {
    let mut out = Outcome::new();
    if let Some(path) = &args.odometer {
        let u = read_odometer_csv(&fs::read_to_string(path)?)?;
        let n = args.n.expect("clap enforces --n");
        let active: Option<BTreeSet<Vertex>> = match &args.a_star {
            Some(p) => Some(read_vertices_csv(&fs::read_to_string(p)?)?.into_iter().collect()),
            None => None,
        };
        let verdict = verify_odometer(&u, n, active.as_ref())?;
        out.line(verdict_line(&format!("{} n={n}", path.display()), &verdict));
        for (v, c) in verdict.violations.iter().take(20) {
            out.line(format!("particle count {c} at {v}"));
        }
        let failed: String = verdict.failed_conditions().iter().map(|c| format!("({c})")).collect();
        out.check(verdict.certified(), if failed.is_empty() { "certified".to_string() } else { format!("violated {failed}") });
        return Ok(out);
    }
    let (lo, hi) = match args.m {
        Some(m) => (m, m),
        None => (args.m_min, args.m_max),
    };
    if lo > hi {
        return Err(Error::Domain(format!("empty range {lo}..={hi}")));
    }
    let ms: Vec<u64> = (lo..=hi).collect();
    for &m in ms.iter().filter(|&&m| m < FIRST_FORMULA_M && !args.include_small) {
        out.line(format!("m={m}: outside the range of the closed form, skipped"));
    }
    let run: Vec<u64> = ms
        .into_iter()
        .filter(|&m| m >= FIRST_FORMULA_M || args.include_small)
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs)
        .build()
        .map_err(|e| Error::Domain(e.to_string()))?;
    let results: Vec<Result<(bool, String)>> =
        pool.install(|| run.par_iter().map(|&m| verify_one(m, args.diff, &cfg.output_dir)).collect());
    for r in results {
        let (ok, text) = r?;
        out.check(ok, text);
    }
    Ok(out)
}

fn parse_profile(arg: &str) -> Result<Profile> {
    match arg.strip_prefix("file:") {
        Some(path) => Profile::from_table_text(&fs::read_to_string(path)?),
        None => arg.parse(),
    }
}

fn measure_by(method: Method, shape: &ClusterShape, args: &HarmonicArgs, out: &mut Outcome) -> Result<(BoundaryMeasure, bool)> {
    Ok(match method {
        Method::Recursion => (harmonic_by_recursion(shape)?.1, true),
        Method::Rotor => {
            let r = harmonic_by_rotor(shape, args.cap)?;
            out.line(format!(
                "rotor: {} particles, {}",
                r.particles,
                if r.exact { "exact" } else { "cap reached, not exact" }
            ));
            (r.measure, r.exact)
        }
        Method::Montecarlo => (harmonic_by_montecarlo(shape, args.samples, args.seed), false),
    })
}

fn cmd_estimate_c(args: &HarmonicArgs) -> Result<Outcome> {
    let mut out = Outcome::new();
    let bracket = estimate_c(args.max_x)?;
    out.line(format!(
        "e(x)/x at x={}: {:.9}, lower estimate {:.9}, width {:.3e}",
        args.max_x,
        bracket.upper_f64(),
        bracket.lower_f64(),
        num_traits::ToPrimitive::to_f64(&bracket.width()).unwrap_or(f64::NAN)
    ));
    let half = BigRational::new(1.into(), 2.into());
    out.check(
        bracket.lower.is_positive() && bracket.lower <= bracket.upper && bracket.upper < half,
        "0 < lower <= upper < 1/2",
    );
    if args.max_x >= 9 {
        out.check(verify_monotone_bounds(args.max_x)?, format!("monotone bounds for 9 <= x <= {}", args.max_x));
    }
    Ok(out)
}

fn cmd_harmonic(cfg: &RunConfig, args: &HarmonicArgs) -> Result<Outcome> {
    if args.estimate_c {
        return cmd_estimate_c(args);
    }
    if args.samples == 0 {
        return Err(Error::Domain("--samples must be positive".into()));
    }
    let shape = ClusterShape::new(args.m, parse_profile(&args.profile)?)?;
    let mut out = Outcome::new();
    if args.compare.as_ref().is_some_and(|c| c.len() != 2) {
        return Err(Error::Domain("--compare takes exactly two methods".into()));
    }
    let primary = args.compare.as_ref().map_or(args.method, |c| c[0]);
    let (measure, first_exact) = measure_by(primary, &shape, args, &mut out)?;
    match args.emit {
        Emit::Csv => {
            let mut buf = Vec::new();
            measure.write_csv(&mut buf)?;
            write_artifact(&cfg.output_dir, "harmonic.csv", buf)?;
        }
        Emit::Json => write_artifact(&cfg.output_dir, "harmonic.json", measure.to_json()?)?,
        Emit::Svg => write_artifact(&cfg.output_dir, "harmonic.svg", render_measure(&shape, &measure))?,
    }
    out.line(format!("{} boundary vertices, total weight {}", measure.counts().len(), measure.total()));
    if let Some(pair) = &args.compare {
        let (other, other_exact) = measure_by(pair[1], &shape, args, &mut out)?;
        out.line(format!("max discrepancy {:.3e}", max_discrepancy(&measure, &other)));
        let ok = match (pair[0] == Method::Montecarlo, pair[1] == Method::Montecarlo) {
            (false, false) => first_exact && other_exact && measure.same_distribution(&other),
            (true, false) => other_exact && max_z_score(&measure, &other) <= 3.0,
            (false, true) => first_exact && max_z_score(&other, &measure) <= 3.0,
            (true, true) => max_z_score(&measure, &other) <= 3.0,
        };
        out.check(ok, format!("{:?} agrees with {:?}", pair[0], pair[1]).to_lowercase());
    }
    Ok(out)
}

fn cmd_render(cfg: &RunConfig, args: &RenderArgs) -> Result<Outcome> {
    let state = Snapshot::from_json(&fs::read_to_string(&args.snapshot)?)?.to_state()?;
    let svg = render_state(&state, RenderOptions { labels: args.labels });
    write_artifact(&cfg.output_dir, "render.svg", svg)?;
    let mut out = Outcome::new();
    out.line(format!("{} toppled vertices drawn", state.odometer_map().len()));
    Ok(out)
}

/// Execute a run and return its exit code.
pub fn run(cfg: &RunConfig) -> i32 {
    let result = fs::create_dir_all(&cfg.output_dir)
        .map_err(Error::from)
        .and_then(|_| write_artifact(&cfg.output_dir, "run.json", serde_json::to_string_pretty(cfg)?))
        .and_then(|_| match &cfg.command {
            Command::Aggregate(a) => cmd_aggregate(cfg, a),
            Command::Halfline(a) => cmd_halfline(cfg, a),
            Command::Verify(a) => cmd_verify(cfg, a),
            Command::Harmonic(a) => cmd_harmonic(cfg, a),
            Command::Render(a) => cmd_render(cfg, a),
        });
    match result {
        Ok(out) => {
            if !cfg.quiet {
                print!("{}", out.report);
            }
            if out.passed {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(e @ Error::BudgetExceeded { .. }) => {
            eprintln!("error: {e}");
            EXIT_BUDGET
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

/// Parse the process arguments and run.
pub fn main() -> i32 {
    let cfg = match RunConfig::try_parse() {
        Ok(cfg) => cfg,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    run(&cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_round_trips_through_json() {
        let cfg = RunConfig::try_parse_from([
            "comb-rotor", "harmonic", "--profile", "square", "--m", "4", "--compare", "recursion,montecarlo",
        ])
        .unwrap();
        let text = serde_json::to_string(&cfg).unwrap();
        let back: RunConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cfg);
        match cfg.command {
            Command::Harmonic(h) => assert_eq!(h.compare, Some(vec![Method::Recursion, Method::Montecarlo])),
            _ => unreachable!(),
        }
    }

    #[test]
    fn usage_errors() {
        assert!(RunConfig::try_parse_from(["comb-rotor", "aggregate"]).is_err());
        assert!(RunConfig::try_parse_from(["comb-rotor", "aggregate", "--n", "3", "--m", "2"]).is_err());
        assert!(RunConfig::try_parse_from(["comb-rotor", "harmonic", "--method", "simplex"]).is_err());
    }

    #[test]
    fn odometer_csv() {
        let u = read_odometer_csv("x,y,u\n0,0,4\n1,0,0\n").unwrap();
        assert_eq!(u.len(), 1);
        assert_eq!(odometer_text(&u, Format::Csv).unwrap(), "x,y,u\n0,0,4\n");
        assert!(read_odometer_csv("x,y,u\n0,0\n").is_err());
    }
}
