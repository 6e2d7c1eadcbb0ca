//! The `hardyscope` command line.
//!
//! Exit status is 0 when everything ran and every verdict passed, 1 when a
//! verification check failed (the failing ids go to stderr) and 2 for bad
//! arguments, bad configuration or evaluation errors.

pub mod config;
pub mod grid;
pub mod output;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::green::{self, green_value, green_value_rel, green_weight_parts, DEFAULT_REL_TOL};
use crate::radial::{hilfe_rhs, laplacian_radial, p_laplacian_radial, power_product_coefficient, RadialScalar};
use crate::space::{catalog, DensityModel, SpaceSpec};
use crate::sturm::EigenProblem;
use crate::verify::{self, failing_ids, green_asymptotics, Family, VerifyOptions};
use crate::weights::{AuxH, WeightPair};

pub use config::FileConfig;
pub use grid::Grid;
pub use output::{emit, Format, Table};

pub const THREADS_ENV: &str = "HARDYSCOPE_THREADS";

#[derive(Debug, Parser)]
#[command(name = "hardyscope", version, about = "Hardy weights, Green functions and spectral checks on harmonic manifolds")]
pub struct Cli {
    /// INI-style configuration file; flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads; overrides HARDYSCOPE_THREADS.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Supported spaces and their constants.
    Spaces {
        #[command(subcommand)]
        action: SpacesAction,
    },
    /// Radial operators on a grid.
    Calculus {
        #[command(subcommand)]
        action: CalculusAction,
    },
    /// Hardy weights and their terms on a grid.
    Weights {
        #[command(subcommand)]
        action: WeightsAction,
    },
    /// P-Green functions and the weights built from them.
    Green {
        #[command(subcommand)]
        action: GreenAction,
    },
    /// Bottom of the Dirichlet spectrum on a ball.
    Spectral {
        #[command(subcommand)]
        action: SpectralAction,
    },
    /// Run a verification family (rayleigh, ode, criticality, uncertainty,
    /// rellich, asymptotics) or all of them.
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
pub enum SpacesAction {
    List(OutArgs),
}

#[derive(Debug, Subcommand)]
pub enum CalculusAction {
    Eval(CalculusArgs),
}

#[derive(Debug, Subcommand)]
pub enum WeightsAction {
    Eval(WeightsArgs),
}

#[derive(Debug, Subcommand)]
pub enum GreenAction {
    Eval(GreenEvalArgs),
    Asymptotics(GreenAsymptoticsArgs),
}

#[derive(Debug, Subcommand)]
pub enum SpectralAction {
    Bottom(SpectralArgs),
}

#[derive(Debug, Args)]
pub struct OutArgs {
    /// Output file (written atomically); stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// csv or json.
    #[arg(long)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct CalculusArgs {
    #[arg(long)]
    pub space: Option<SpaceSpec>,
    /// laplacian, p-laplacian, hilfe or power-product.
    #[arg(long)]
    pub op: Option<Operator>,
    /// Function to differentiate: pow:K, ln or density.
    #[arg(long)]
    pub u: Option<FunctionSpec>,
    #[arg(long = "P")]
    pub exponent: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub grid: Option<Grid>,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct WeightsArgs {
    #[arg(long)]
    pub space: Option<SpaceSpec>,
    /// A, B, gamma, gamma-dr, weighted, p or green.
    #[arg(long)]
    pub theorem: Option<Theorem>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long = "P")]
    pub exponent: Option<f64>,
    #[arg(long)]
    pub grid: Option<Grid>,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct GreenEvalArgs {
    #[arg(long)]
    pub space: Option<SpaceSpec>,
    #[arg(long = "P")]
    pub exponent: Option<f64>,
    #[arg(long)]
    pub grid: Option<Grid>,
    /// Absolute tolerance on G; relative 1e-12 when absent.
    #[arg(long)]
    pub tol: Option<f64>,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct GreenAsymptoticsArgs {
    #[arg(long)]
    pub space: Option<SpaceSpec>,
    #[arg(long = "P")]
    pub exponent: Option<f64>,
    /// Fit window and sample count.
    #[arg(long)]
    pub lo: Option<f64>,
    #[arg(long)]
    pub hi: Option<f64>,
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpectralArgs {
    #[arg(long)]
    pub space: Option<SpaceSpec>,
    #[arg(long = "R")]
    pub radius: Option<f64>,
    #[arg(long)]
    pub mesh: Option<f64>,
    /// none or const:C.
    #[arg(long)]
    pub potential: Option<Potential>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Family name or `all`.
    pub family: Option<String>,
    /// Space to check; repeat for several.
    #[arg(long)]
    pub space: Vec<SpaceSpec>,
    /// Bumps in the test-function suite (two Gaussians are added).
    #[arg(long)]
    pub bumps: Option<usize>,
    /// Radial window of the suite, lo:hi.
    #[arg(long)]
    pub support: Option<Support>,
    #[arg(long)]
    pub grid: Option<Grid>,
    /// Tolerance override, check_id=value; repeatable.
    #[arg(long = "tol")]
    pub tolerances: Vec<String>,
    /// Zero the per-check timings so reports are byte-reproducible.
    #[arg(long)]
    pub no_timing: bool,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operator {
    Laplacian,
    PLaplacian,
    Hilfe,
    PowerProduct,
}

impl FromStr for Operator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "laplacian" => Operator::Laplacian,
            "p-laplacian" => Operator::PLaplacian,
            "hilfe" => Operator::Hilfe,
            "power-product" => Operator::PowerProduct,
            other => return Err(Error::Parse(format!("unknown operator `{other}`"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FunctionSpec {
    Power(f64),
    Ln,
    Density,
}

impl FromStr for FunctionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(k) = s.strip_prefix("pow:") {
            return k
                .parse()
                .map(FunctionSpec::Power)
                .map_err(|_| Error::Parse(format!("bad power in `{s}`")));
        }
        match s {
            "ln" => Ok(FunctionSpec::Ln),
            "density" => Ok(FunctionSpec::Density),
            _ => Err(Error::Parse(format!("unknown function `{s}` (pow:K, ln or density)"))),
        }
    }
}

impl FunctionSpec {
    fn scalar(self, model: &DensityModel) -> RadialScalar {
        match self {
            FunctionSpec::Power(k) => RadialScalar::power(k),
            FunctionSpec::Ln => RadialScalar::ln(),
            FunctionSpec::Density => model.density_scalar(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    A,
    B,
    Gamma,
    GammaDr,
    Weighted,
    P,
    Green,
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "A" | "a" => Theorem::A,
            "B" | "b" => Theorem::B,
            "gamma" => Theorem::Gamma,
            "gamma-dr" => Theorem::GammaDr,
            "weighted" => Theorem::Weighted,
            "p" | "P" => Theorem::P,
            "green" => Theorem::Green,
            other => return Err(Error::Parse(format!("unknown theorem `{other}`"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Potential {
    None,
    Constant(f64),
}

impl FromStr for Potential {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "none" {
            return Ok(Potential::None);
        }
        s.strip_prefix("const:")
            .and_then(|c| c.parse().ok())
            .map(Potential::Constant)
            .ok_or_else(|| Error::Parse(format!("potential must be none or const:C, got `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Support(pub f64, pub f64);

impl FromStr for Support {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s.split_once(':').ok_or_else(|| Error::Parse(format!("support must be lo:hi, got `{s}`")))?;
        let parse = |t: &str| t.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad support bound `{t}`")));
        let (a, b) = (parse(a)?, parse(b)?);
        if !(a > 0.0 && b > a && b.is_finite()) {
            return Err(Error::Validation(format!("support needs 0 < lo < hi, got {a}:{b}")));
        }
        Ok(Support(a, b))
    }
}

/// How a successful command ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Ok,
    ChecksFailed(Vec<String>),
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli) {
        Ok(Status::Ok) => 0,
        Ok(Status::ChecksFailed(ids)) => {
            eprintln!("{} check(s) failed:", ids.len());
            for id in ids {
                eprintln!("  {id}");
            }
            1
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn configure_threads(cfg: &FileConfig, flag: Option<usize>) -> Result<()> {
    let from_env = match std::env::var(THREADS_ENV) {
        Ok(v) => Some(v.trim().parse::<usize>().map_err(|_| Error::Parse(format!("{THREADS_ENV} must be a count, got `{v}`")))?),
        Err(_) => None,
    };
    let threads = match flag.or(from_env) {
        Some(t) => Some(t),
        None => cfg.pick(None, "global", "threads")?,
    };
    if let Some(t) = threads.filter(|&t| t > 0) {
        // A second configuration in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    Ok(())
}

pub fn execute(cli: Cli) -> Result<Status> {
    let cfg = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    configure_threads(&cfg, cli.threads)?;
    let command = match cli.command {
        Some(c) => c,
        None => {
            let words = cfg
                .command_words()
                .ok_or_else(|| Error::Parse("no subcommand given and the config has no `command` key".into()))?;
            let argv = std::iter::once("hardyscope".to_string()).chain(words);
            let inner = Cli::try_parse_from(argv).map_err(|e| Error::Parse(format!("config `command`: {e}")))?;
            inner
                .command
                .ok_or_else(|| Error::Parse("config `command` names no subcommand".into()))?
        }
    };
    match command {
        Command::Spaces { action: SpacesAction::List(out) } => spaces_list(&cfg, out),
        Command::Calculus { action: CalculusAction::Eval(a) } => calculus_eval(&cfg, a),
        Command::Weights { action: WeightsAction::Eval(a) } => weights_eval(&cfg, a),
        Command::Green { action: GreenAction::Eval(a) } => green_eval(&cfg, a),
        Command::Green { action: GreenAction::Asymptotics(a) } => green_asym(&cfg, a),
        Command::Spectral { action: SpectralAction::Bottom(a) } => spectral_bottom(&cfg, a),
        Command::Verify(a) => verify_cmd(&cfg, a),
    }
}

fn required<T>(v: Option<T>, key: &str) -> Result<T> {
    v.ok_or_else(|| Error::Parse(format!("missing required setting `{key}` (flag or config)")))
}

fn output(cfg: &FileConfig, section: &str, out: OutArgs, default: Format) -> Result<(Option<PathBuf>, Format)> {
    let path = cfg.pick(out.out, section, "out")?;
    let format = cfg.pick(out.format, section, "format")?.unwrap_or(default);
    Ok((path, format))
}

fn space(cfg: &FileConfig, section: &str, flag: Option<SpaceSpec>) -> Result<DensityModel> {
    Ok(DensityModel::new(required(cfg.pick(flag, section, "space")?, "space")?))
}

fn grid(cfg: &FileConfig, section: &str, flag: Option<Grid>) -> Result<Vec<f64>> {
    Ok(cfg.pick(flag, section, "grid")?.unwrap_or_default().points())
}

/// Evaluates `row` on every radius concurrently; order follows the grid.
fn tabulate(columns: Vec<String>, radii: &[f64], row: impl Fn(f64) -> Result<Vec<f64>> + Sync) -> Result<Table> {
    let rows = radii.par_iter().map(|&r| row(r)).collect::<Result<Vec<_>>>()?;
    Ok(Table { columns, rows })
}

#[derive(Serialize)]
struct SpaceRow {
    space: String,
    kind: &'static str,
    n: u32,
    p: Option<u32>,
    q: Option<u32>,
    h: f64,
    lambda0: f64,
}

fn spaces_list(cfg: &FileConfig, out: OutArgs) -> Result<Status> {
    let (path, format) = output(cfg, "spaces", out, Format::Csv)?;
    let rows: Vec<SpaceRow> = catalog()
        .into_iter()
        .map(|s| {
            let m = DensityModel::new(s);
            let pq = s.heisenberg_params();
            SpaceRow {
                space: s.to_string(),
                kind: s.kind(),
                n: m.n,
                p: pq.map(|x| x.0),
                q: pq.map(|x| x.1),
                h: m.h,
                lambda0: m.lambda0,
            }
        })
        .collect();
    emit(&output::render_records(&rows, format)?, path.as_deref())?;
    Ok(Status::Ok)
}

fn calculus_eval(cfg: &FileConfig, a: CalculusArgs) -> Result<Status> {
    const S: &str = "calculus";
    let model = space(cfg, S, a.space)?;
    let op = cfg.pick(a.op, S, "op")?.unwrap_or(Operator::Laplacian);
    let radii = grid(cfg, S, a.grid)?;
    let (path, format) = output(cfg, S, a.out, Format::Csv)?;
    let num = |flag: Option<f64>, key: &str| cfg.pick(flag, S, key);
    let columns = vec!["r".to_string(), "value".to_string()];
    let table = match op {
        Operator::Laplacian | Operator::PLaplacian => {
            let u = required(cfg.pick(a.u, S, "u")?, "u")?.scalar(&model);
            let pp = num(a.exponent, "P")?.unwrap_or(2.0);
            tabulate(columns, &radii, |r| {
                let v = if op == Operator::Laplacian {
                    laplacian_radial(&u, &model, r)?
                } else {
                    p_laplacian_radial(&u, &model, pp, r)?
                };
                Ok(vec![r, v])
            })?
        }
        Operator::Hilfe => {
            let (p, q) = model
                .spec
                .heisenberg_params()
                .ok_or_else(|| Error::Precondition("hilfe needs a Damek-Ricci space".into()))?;
            let x = required(num(a.a, "a")?, "a")?;
            let y = required(num(a.b, "b")?, "b")?;
            tabulate(columns, &radii, |r| Ok(vec![r, hilfe_rhs(x, y, p, q, r)?]))?
        }
        Operator::PowerProduct => {
            let al = required(num(a.alpha, "alpha")?, "alpha")?;
            let be = required(num(a.beta, "beta")?, "beta")?;
            tabulate(columns, &radii, |r| Ok(vec![r, power_product_coefficient(al, be, &model, r)?]))?
        }
    };
    emit(&table.render(format)?, path.as_deref())?;
    Ok(Status::Ok)
}

fn weight_pair(cfg: &FileConfig, a: &WeightsArgs, model: DensityModel) -> Result<WeightPair> {
    const S: &str = "weights";
    let theorem = required(cfg.pick(a.theorem, S, "theorem")?, "theorem")?;
    let num = |flag: Option<f64>, key: &str| -> Result<f64> { required(cfg.pick(flag, S, key)?, key) };
    match theorem {
        Theorem::A => WeightPair::theorem_a(model),
        Theorem::B => Ok(WeightPair::theorem_b(model)),
        Theorem::Gamma => WeightPair::gamma_family(model, num(a.gamma, "gamma")?, AuxH::DensityRoot),
        Theorem::GammaDr => WeightPair::gamma_dr(model, num(a.gamma, "gamma")?),
        Theorem::Weighted => WeightPair::weighted(model, num(a.alpha, "alpha")?),
        Theorem::P => WeightPair::p_dr(model, num(a.exponent, "P")?),
        Theorem::Green => WeightPair::green(model, num(a.exponent, "P")?),
    }
}

fn weights_eval(cfg: &FileConfig, a: WeightsArgs) -> Result<Status> {
    const S: &str = "weights";
    let model = space(cfg, S, a.space)?;
    let pair = weight_pair(cfg, &a, model)?;
    let radii = grid(cfg, S, a.grid)?;
    let (path, format) = output(cfg, S, a.out, Format::Csv)?;
    let first = pair.sample(*radii.first().ok_or_else(|| Error::Validation("empty grid".into()))?)?;
    let mut columns: Vec<String> = ["r", "V", "W"].iter().map(|s| s.to_string()).collect();
    columns.extend(first.terms.iter().map(|t| t.name.clone()));
    let width = first.terms.len();
    let table = tabulate(columns, &radii, |r| {
        let s = pair.sample(r)?;
        if s.terms.len() != width {
            return Err(Error::Domain(format!("term layout changed at r = {r}")));
        }
        let mut row = vec![r, s.v, s.w];
        row.extend(s.terms.iter().map(|t| t.value));
        Ok(row)
    })?;
    emit(&table.render(format)?, path.as_deref())?;
    Ok(Status::Ok)
}

fn green_eval(cfg: &FileConfig, a: GreenEvalArgs) -> Result<Status> {
    const S: &str = "green";
    let model = space(cfg, S, a.space)?;
    let pp = required(cfg.pick(a.exponent, S, "P")?, "P")?;
    let tol = cfg.pick(a.tol, S, "tol")?;
    let radii = grid(cfg, S, a.grid)?;
    let (path, format) = output(cfg, S, a.out, Format::Csv)?;
    let columns = ["r", "G", "G_err", "dlogG", "W", "Wtilde"].iter().map(|s| s.to_string()).collect();
    let table = tabulate(columns, &radii, |r| {
        let g = match tol {
            Some(t) => green_value(&model, pp, r, t)?,
            None => green_value_rel(&model, pp, r, DEFAULT_REL_TOL)?,
        };
        let w = green_weight_parts(&model, pp, r)?;
        Ok(vec![r, g.value, g.error_bound, w.dlog, w.w, w.w_tilde])
    })?;
    emit(&table.render(format)?, path.as_deref())?;
    Ok(Status::Ok)
}

#[derive(Serialize)]
struct AsymptoticsReport {
    regime: green::Regime,
    fitted_exponent: f64,
    predicted_exponent: f64,
    ratio_at_rmin: f64,
}

fn green_asym(cfg: &FileConfig, a: GreenAsymptoticsArgs) -> Result<Status> {
    const S: &str = "green";
    let model = space(cfg, S, a.space)?;
    let pp = required(cfg.pick(a.exponent, S, "P")?, "P")?;
    let lo = cfg.pick(a.lo, S, "lo")?.unwrap_or(1e-4);
    let hi = cfg.pick(a.hi, S, "hi")?.unwrap_or(1e-2);
    let count = cfg.pick(a.count, S, "count")?.unwrap_or(9);
    let path = cfg.pick(a.out, S, "out")?;
    let c = green_asymptotics(&model, pp, lo, hi, count)?;
    let report = AsymptoticsReport {
        regime: c.regime,
        fitted_exponent: c.fit.slope,
        predicted_exponent: c.predicted_exponent,
        ratio_at_rmin: c.ratio_at_rmin,
    };
    emit(&output::render_json(&report)?, path.as_deref())?;
    Ok(Status::Ok)
}

fn spectral_bottom(cfg: &FileConfig, a: SpectralArgs) -> Result<Status> {
    const S: &str = "spectral";
    let model = space(cfg, S, a.space)?;
    let radius = cfg.pick(a.radius, S, "R")?.unwrap_or(40.0);
    let mesh = cfg.pick(a.mesh, S, "mesh")?.unwrap_or(0.005);
    let potential = cfg.pick(a.potential, S, "potential")?.unwrap_or(Potential::None);
    let path = cfg.pick(a.out, S, "out")?;
    let mut problem = EigenProblem::new(model, radius, mesh);
    if let Potential::Constant(c) = potential {
        problem = problem.with_potential(move |_| c);
    }
    let est = problem.bottom_eigenvalue()?;
    emit(&output::render_json(&est)?, path.as_deref())?;
    Ok(Status::Ok)
}

fn parse_tol(text: &str) -> Result<(String, f64)> {
    let (k, v) = text
        .split_once('=')
        .ok_or_else(|| Error::Parse(format!("tolerance override must be check_id=value, got `{text}`")))?;
    let v: f64 = v.trim().parse().map_err(|_| Error::Parse(format!("bad tolerance `{v}`")))?;
    Ok((k.trim().to_string(), v))
}

fn verify_cmd(cfg: &FileConfig, a: VerifyArgs) -> Result<Status> {
    const S: &str = "verify";
    let family = required(cfg.pick(a.family, S, "family")?, "family")?;
    let families = Family::parse(&family)?;
    let spaces = cfg.pick_list(a.space, S, "space")?;
    if spaces.is_empty() {
        return Err(Error::Parse("missing required setting `space` (flag or config)".into()));
    }
    let mut opts = VerifyOptions::default();
    if let Some(b) = cfg.pick(a.bumps, S, "bumps")? {
        opts.bumps = b;
    }
    if let Some(Support(lo, hi)) = cfg.pick(a.support, S, "support")? {
        opts.support = (lo, hi);
    }
    opts.grid = grid(cfg, S, a.grid)?;
    opts.tolerances = cfg.tolerances()?;
    for t in &a.tolerances {
        let (k, v) = parse_tol(t)?;
        opts.tolerances.retain(|(id, _)| *id != k);
        opts.tolerances.push((k, v));
    }
    let timing = !a.no_timing && cfg.pick(None::<bool>, S, "timing")?.unwrap_or(true);
    let (path, format) = output(cfg, S, a.out, Format::Json)?;

    let mut reports = Vec::new();
    for spec in spaces {
        reports.extend(verify::run_families(&families, spec, &opts)?);
    }
    if !timing {
        for r in &mut reports {
            r.seconds = 0.0;
        }
    }
    emit(&output::render_records(&reports, format)?, path.as_deref())?;
    let passed = reports.iter().filter(|r| r.verdict == verify::Verdict::Pass).count();
    eprintln!("{} checks, {passed} passed", reports.len());
    let failed = failing_ids(&reports);
    Ok(if failed.is_empty() { Status::Ok } else { Status::ChecksFailed(failed) })
}

/// Convenience for tests and scripts: loads `path` as the only source of
/// settings.
pub fn run_config(path: &Path) -> i32 {
    run(["hardyscope".into(), "--config".into(), path.as_os_str().to_owned()] as [OsString; 3])
}
