//! Executable checks for every inequality and identity, and the runner that
//! schedules them.

pub mod checks;
pub mod fit;
pub mod report;
pub mod suite;

use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::green;
use crate::quad::QuadConfig;
use crate::space::{DensityModel, SpaceSpec};
use crate::weights::{hpw_g, hpw_g_complement, AuxH, WeightPair};

pub use checks::*;
pub use fit::{asymptotics_fit, log_space, PowerFit};
pub use report::{failing_ids, Verdict, VerificationReport};
pub use suite::{default_suite, TestFunction, TestFunctionSuite};

/// Relative slack allowed on every gap.
pub const GAP_TOL_REL: f64 = 1e-8;

pub const GAMMAS: [f64; 3] = [0.1, 0.25, 0.4];
pub const ALPHAS: [f64; 3] = [0.0, 0.5, 1.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Rayleigh,
    Ode,
    Criticality,
    Uncertainty,
    Rellich,
    Asymptotics,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Rayleigh,
        Family::Ode,
        Family::Criticality,
        Family::Uncertainty,
        Family::Rellich,
        Family::Asymptotics,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Rayleigh => "rayleigh",
            Family::Ode => "ode",
            Family::Criticality => "criticality",
            Family::Uncertainty => "uncertainty",
            Family::Rellich => "rellich",
            Family::Asymptotics => "asymptotics",
        }
    }

    pub fn parse(s: &str) -> Result<Vec<Family>> {
        if s == "all" {
            return Ok(Family::ALL.to_vec());
        }
        Family::ALL
            .iter()
            .find(|f| f.name() == s)
            .map(|&f| vec![f])
            .ok_or_else(|| Error::Parse(format!("unknown verification family `{s}`")))
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub support: (f64, f64),
    /// Bumps in the suite; two Gaussians are added.
    pub bumps: usize,
    /// Radii for pointwise checks.
    pub grid: Vec<f64>,
    pub gap_tol: f64,
    /// Per-check overrides of the default tolerance.
    pub tolerances: Vec<(String, f64)>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            support: (0.2, 6.0),
            bumps: 6,
            grid: log_space(1e-3, 60.0, 400),
            gap_tol: GAP_TOL_REL,
            tolerances: Vec::new(),
        }
    }
}

impl VerifyOptions {
    fn tol(&self, check_id: &str, default: f64) -> f64 {
        self.tolerances.iter().find(|(k, _)| k == check_id).map_or(default, |&(_, v)| v)
    }
}

type JobFn = Box<dyn Fn() -> Result<Outcome> + Send + Sync>;

/// What a job measured before it is stamped into a report.
struct Outcome {
    lhs: f64,
    rhs: f64,
    gap: f64,
    tolerance: f64,
    verdict: Verdict,
    detail: Option<String>,
}

impl Outcome {
    fn gap(g: Gap, tol: f64) -> Self {
        Outcome {
            lhs: g.lhs,
            rhs: g.rhs,
            gap: g.gap,
            tolerance: tol,
            verdict: if g.holds(tol) { Verdict::Pass } else { Verdict::Fail },
            detail: None,
        }
    }

    /// `value <= bound`.
    fn at_most(value: f64, bound: f64) -> Self {
        Outcome {
            lhs: value,
            rhs: bound,
            gap: bound - value,
            tolerance: bound,
            verdict: if value <= bound { Verdict::Pass } else { Verdict::Fail },
            detail: None,
        }
    }

    /// `value >= bound`.
    fn at_least(value: f64, bound: f64, tol: f64) -> Self {
        Outcome {
            lhs: value,
            rhs: bound,
            gap: value - bound,
            tolerance: tol,
            verdict: if value >= bound - tol { Verdict::Pass } else { Verdict::Fail },
            detail: None,
        }
    }

    fn within(value: f64, target: f64, tol: f64) -> Self {
        Outcome {
            lhs: value,
            rhs: target,
            gap: value - target,
            tolerance: tol,
            verdict: if (value - target).abs() <= tol { Verdict::Pass } else { Verdict::Fail },
            detail: None,
        }
    }

    fn skipped(why: &str) -> Self {
        Outcome {
            lhs: f64::NAN,
            rhs: f64::NAN,
            gap: f64::NAN,
            tolerance: 0.0,
            verdict: Verdict::Skipped,
            detail: Some(why.to_string()),
        }
    }

    fn with_detail(mut self, d: String) -> Self {
        self.detail = Some(d);
        self
    }
}

struct Job {
    check_id: String,
    params: String,
    run: JobFn,
}

fn job(check_id: impl Into<String>, params: impl Into<String>, run: impl Fn() -> Result<Outcome> + Send + Sync + 'static) -> Job {
    Job { check_id: check_id.into(), params: params.into(), run: Box::new(run) }
}

/// Pairs whose Rayleigh gaps are checked on a space.
pub fn rayleigh_pairs(model: DensityModel) -> Vec<(String, WeightPair)> {
    let mut out = vec![("B".to_string(), WeightPair::theorem_b(model))];
    if let Ok(p) = WeightPair::theorem_a(model) {
        out.push(("A".into(), p));
    }
    for g in GAMMAS {
        if let Ok(p) = WeightPair::gamma_family(model, g, AuxH::DensityRoot) {
            out.push((format!("gamma={g}"), p));
        }
    }
    for a in ALPHAS {
        if let Ok(p) = WeightPair::weighted(model, a) {
            out.push((format!("alpha={a}"), p));
        }
    }
    for pp in admissible_p_exponents(&model) {
        out.push((format!("P={pp}"), WeightPair::p_dr(model, pp).expect("admissible")));
    }
    if let Ok(p) = WeightPair::green(model, 2.0) {
        out.push(("green P=2".into(), p));
    }
    out
}

/// Integer `P >= 2` with `p + q >= P(P-1)`.
pub fn admissible_p_exponents(model: &DensityModel) -> Vec<f64> {
    let Some((p, q)) = model.spec.heisenberg_params() else { return Vec::new() };
    (2..).map(f64::from).take_while(|&pp| f64::from(p + q) >= pp * (pp - 1.0)).collect()
}

fn jobs_for(family: Family, spec: SpaceSpec, opts: &VerifyOptions) -> Result<Vec<Job>> {
    let model = DensityModel::new(spec);
    let mut jobs = Vec::new();
    let quad = QuadConfig::relative(GAP_QUAD_TOL);
    match family {
        Family::Rayleigh => {
            let suite = default_suite(opts.support, opts.bumps)?;
            let tol = opts.tol("rayleigh", opts.gap_tol);
            for (label, pair) in rayleigh_pairs(model) {
                for (i, phi) in suite.members.iter().enumerate() {
                    let (pair, phi) = (pair.clone(), phi.clone());
                    let id = format!("rayleigh.{}", pair.theorem_id());
                    jobs.push(job(id, format!("{label};member={i:02}"), move || {
                        Ok(Outcome::gap(p_rayleigh_gap(&model, &pair, &phi, quad)?, tol))
                    }));
                }
            }
        }
        Family::Ode => {
            let grid = opts.grid.clone();
            let mut pairs: Vec<(String, WeightPair, f64)> = Vec::new();
            let exact = opts.tol("ode", 1e-10);
            pairs.push(("B".into(), WeightPair::theorem_b(model), exact));
            if let Ok(p) = WeightPair::theorem_a(model) {
                pairs.push(("A".into(), p, exact));
            }
            for g in GAMMAS {
                if let Ok(p) = WeightPair::gamma_family(model, g, AuxH::DensityRoot) {
                    pairs.push((format!("gamma={g}"), p, opts.tol("ode.gamma_family", 1e-8)));
                }
            }
            for (label, pair, tol) in pairs {
                let grid = grid.clone();
                jobs.push(job(format!("ode.{}", pair.theorem_id()), label, move || {
                    Ok(Outcome::at_most(ode_residual(&pair, &grid)?.max_relative, tol))
                }));
            }
            if let Some((p, q)) = spec.heisenberg_params() {
                for pp in admissible_p_exponents(&model) {
                    let pair = WeightPair::p_dr(model, pp)?;
                    let grid = grid.clone();
                    let tol = opts.tol("ode.p_dr", 1e-10);
                    jobs.push(job("ode.p_dr", format!("P={pp}"), move || {
                        let res = ode_residual(&pair, &grid)?;
                        let surplus = grid
                            .iter()
                            .map(|&r| supersolution_surplus(p, q, pp, r))
                            .fold(f64::NEG_INFINITY, f64::max);
                        let mut o = Outcome::at_least(res.min_signed, 0.0, tol);
                        if !(surplus > 0.0) {
                            o.verdict = Verdict::Fail;
                        }
                        Ok(o.with_detail(format!("max supersolution surplus {surplus:e}")))
                    }));
                }
            }
        }
        Family::Criticality => {
            jobs.push(job("criticality.probe", "", move || {
                let p = criticality_probe(&model);
                let ok = p.decreasing();
                Ok(Outcome {
                    lhs: p.at_infinity[1].1,
                    rhs: p.at_infinity[0].1,
                    gap: p.at_infinity[0].1 - p.at_infinity[1].1,
                    tolerance: 0.0,
                    verdict: if ok { Verdict::Pass } else { Verdict::Fail },
                    detail: None,
                })
            }));
            let tol = opts.tol("criticality.null_mass", 1e-10);
            for eps in [1e-4, 1e-2] {
                for outer in [10.0, 1000.0] {
                    jobs.push(job("criticality.null_mass", format!("eps={eps:e};R={outer}"), move || {
                        let m = null_criticality_mass(&model, eps, outer)?;
                        let mut o = Outcome::at_most(m.relative_error, tol);
                        o.lhs = m.computed;
                        o.rhs = m.closed_form;
                        o.gap = m.computed - m.closed_form;
                        Ok(o)
                    }));
                }
            }
            jobs.push(job("criticality.null_slope", "eps=1e-2", move || {
                let s = null_criticality_slope(&model, 1e-2, &[10.0, 100.0, 1000.0])?;
                Ok(Outcome::within(s, 0.25, 1e-6))
            }));
            for g in GAMMAS {
                if let Ok(pair) = WeightPair::gamma_family(model, g, AuxH::DensityRoot) {
                    jobs.push(job("criticality.gamma_mass", format!("gamma={g}"), move || {
                        let ratio = gamma_mass(&pair, 1e-6)? / gamma_mass(&pair, 1e-3)?;
                        Ok(Outcome::at_least(ratio, 1.5, 0.0))
                    }));
                }
            }
            if !spec.is_flat() {
                for pp in [2.0, 2.5] {
                    let grid: Vec<f64> = log_space(1e-2, 40.0, 40);
                    jobs.push(job("criticality.green_lower_bound", format!("P={pp}"), move || {
                        let mut worst = f64::INFINITY;
                        for &r in &grid {
                            worst = worst.min(green::green_weight(&model, pp, r)?.w_tilde);
                        }
                        Ok(Outcome::at_least(worst, 0.0, 1e-12))
                    }));
                    jobs.push(job("criticality.green_decay", format!("P={pp}"), move || {
                        Ok(Outcome::at_most(green::green_weight(&model, pp, 40.0)?.w_tilde, 1e-10))
                    }));
                }
            }
        }
        Family::Uncertainty | Family::Rellich => {
            let applicable = matches!(spec, SpaceSpec::DamekRicci { q, .. } if q != 0 && q != 2);
            if !applicable {
                jobs.push(job(format!("{}.not_applicable", family.name()), "", || {
                    Ok(Outcome::skipped("needs a Damek-Ricci space with q not in {0, 2}"))
                }));
                return Ok(jobs);
            }
            let (p, q) = spec.heisenberg_params().expect("checked");
            let suite = default_suite(opts.support, opts.bumps)?;
            for (i, phi) in suite.members.into_iter().enumerate() {
                if family == Family::Uncertainty {
                    let tol = opts.tol("uncertainty.ratio", opts.gap_tol);
                    jobs.push(job("uncertainty.ratio", format!("member={i:02}"), move || {
                        Ok(match uncertainty_gap(p, q, &phi, quad)? {
                            Some(ratio) => Outcome::at_least(ratio, 1.0, tol),
                            None => Outcome::skipped("zero test function"),
                        })
                    }));
                } else {
                    let tol = opts.tol("rellich", opts.gap_tol);
                    jobs.push(job("rellich.gap", format!("member={i:02}"), move || {
                        Ok(Outcome::gap(rellich_gap(p, q, &phi, quad)?, tol))
                    }));
                }
            }
            if family == Family::Uncertainty {
                let grid = opts.grid.clone();
                jobs.push(job("uncertainty.hpw_g_range", "", move || {
                    let (mut lo, mut hi_gap) = (f64::INFINITY, f64::INFINITY);
                    for &r in &grid {
                        lo = lo.min(hpw_g(p, q, r)?);
                        hi_gap = hi_gap.min(hpw_g_complement(p, q, r)?);
                    }
                    let ok = lo > 0.0 && hi_gap > 0.0;
                    Ok(Outcome {
                        lhs: lo,
                        rhs: 1.0 - hi_gap,
                        gap: lo.min(hi_gap),
                        tolerance: 0.0,
                        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
                        detail: Some(format!("min g {lo:e}; min 1-g {hi_gap:e}")),
                    })
                }));
            }
        }
        Family::Asymptotics => {
            let n = model.n;
            let mut exponents = vec![2.0];
            if !spec.is_flat() {
                exponents.extend([f64::from(n), f64::from(n) + 2.0]);
            }
            for pp in exponents {
                if spec.is_flat() && pp >= f64::from(n) {
                    continue;
                }
                jobs.push(job("asymptotics.small_r", format!("P={pp}"), move || {
                    let a = green_asymptotics(&model, pp, 1e-4, 1e-2, 9)?;
                    let detail = format!(
                        "regime {}; fitted {:.5}; predicted {:.5}; ratio at 1e-4 {:.5}",
                        a.regime.label(),
                        a.fit.slope,
                        a.predicted_exponent,
                        a.ratio_at_rmin
                    );
                    let o = match a.regime {
                        green::Regime::Critical => {
                            let mut o = Outcome::within(a.ratio_at_rmin, 1.0, 0.1);
                            o.rhs = 1.0;
                            o
                        }
                        _ => Outcome::within(a.fit.slope, a.predicted_exponent, 0.02),
                    };
                    Ok(o.with_detail(detail))
                }));
            }
            if spec.heisenberg_params().is_some() {
                for pp in [2.0, 2.5] {
                    jobs.push(job("asymptotics.large_r", format!("P={pp}"), move || {
                        let ratio = green_large_r_ratio(&model, pp, 10.0)?;
                        let ok = (0.5..=2.0).contains(&ratio);
                        Ok(Outcome {
                            lhs: ratio,
                            rhs: 1.0,
                            gap: ratio - 1.0,
                            tolerance: 0.0,
                            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
                            detail: Some("accepted band [0.5, 2]".into()),
                        })
                    }));
                }
            }
            if !spec.is_flat() || n > 2 {
                jobs.push(job("asymptotics.normalization", "P=2", move || {
                    let phi = |t: f64| ((-t * t).exp(), -2.0 * t * (-t * t).exp());
                    let (lhs, phi0) = green_normalization(&model, 2.0, phi, 12.0)?;
                    let mut o = Outcome::within(lhs, phi0, 1e-8);
                    o.rhs = phi0;
                    Ok(o)
                }));
            }
        }
    }
    Ok(jobs)
}

/// Runs the requested families on one space, concurrently, and returns the
/// reports in `(check_id, space, params)` order.
pub fn run_families(families: &[Family], spec: SpaceSpec, opts: &VerifyOptions) -> Result<Vec<VerificationReport>> {
    let mut jobs = Vec::new();
    for &f in families {
        jobs.extend(jobs_for(f, spec, opts)?);
    }
    let space = spec.to_string();
    let mut reports: Vec<VerificationReport> = jobs
        .par_iter()
        .map(|j| {
            let start = Instant::now();
            let outcome = (j.run)();
            let seconds = start.elapsed().as_secs_f64();
            let o = outcome.unwrap_or_else(|e| Outcome {
                lhs: f64::NAN,
                rhs: f64::NAN,
                gap: f64::NAN,
                tolerance: 0.0,
                verdict: Verdict::Error,
                detail: Some(e.to_string()),
            });
            VerificationReport {
                check_id: j.check_id.clone(),
                space: space.clone(),
                params: j.params.clone(),
                lhs: o.lhs,
                rhs: o.rhs,
                gap: o.gap,
                tolerance: o.tolerance,
                verdict: o.verdict,
                seconds,
                detail: o.detail,
            }
        })
        .collect();
    reports.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(reports)
}
