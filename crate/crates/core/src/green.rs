//! The P-Green function of a catalog space and the Hardy weight built on it.
//!
//! For `P > 1` the radial Green function with pole `o` is
//! `G(r) = β ∫_r^∞ f(t)^{-1/(P-1)} dt` with `β = ω_n^{-1/(P-1)}`. All
//! integrals are computed in the scaled form
//! `J(r) = ∫_r^∞ (f(r)/f(t))^{1/(P-1)} dt`, so `G = β f(r)^{-1/(P-1)} J(r)`
//! and `G'/G = -1/J`.
//!
//! The tail past a cutoff `R*` is bracketed using that `f'/f` decreases to
//! `h`: with `k = 1/(P-1)`,
//! `f(R*)^{-k}/(k f'/f(R*)) ≤ ∫_{R*}^∞ f^{-k} ≤ f(R*)^{-k}/(k h)`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quad::{integrate, integrate_log, QuadConfig};
use crate::radial::check_exponent;
use crate::space::{DensityModel, Radius, SpaceSpec};

/// Default relative accuracy of Green evaluations.
pub const DEFAULT_REL_TOL: f64 = 1e-12;

/// Cutoff search starts where `f'/f - h` drops below this fraction of `h`.
const CUTOFF_EXCESS: f64 = 1e-3;

const MAX_CUTOFF: f64 = 5000.0;

/// Volume of the unit sphere `S^{n-1}`, `2 π^{n/2} / Γ(n/2)`.
pub fn unit_sphere_volume(n: u32) -> f64 {
    // Γ(n/2) by the recursion from Γ(1) = 1 or Γ(1/2) = √π.
    let mut gamma = if n.is_multiple_of(2) { 1.0 } else { PI.sqrt() };
    let mut x = if n.is_multiple_of(2) { 1.0 } else { 0.5 };
    while x + 0.5 < f64::from(n) / 2.0 {
        gamma *= x;
        x += 1.0;
    }
    2.0 * PI.powf(f64::from(n) / 2.0) / gamma
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GreenEvaluation {
    pub exponent: f64,
    pub r: f64,
    pub value: f64,
    /// Bound on `|value - G(r)|`.
    pub error_bound: f64,
    /// `ln G(r)`, usable where `G` underflows.
    pub log_value: f64,
    /// The scaled integral `J(r)`; `G'/G = -1/J`.
    pub scaled: f64,
    pub scaled_error: f64,
    /// Radius past which the tail is bracketed rather than integrated.
    pub cutoff: f64,
    pub omega_n: f64,
}

/// Scaled integral with its error and the cutoff used.
#[derive(Debug, Clone, Copy)]
struct Scaled {
    value: f64,
    error: f64,
    cutoff: f64,
}

/// Panel tolerance for a target relative accuracy, kept above the rounding
/// floor of the Kronrod error estimate.
fn quad_config(rel_tol: f64) -> QuadConfig {
    QuadConfig { abs_tol: 0.0, rel_tol: (0.1 * rel_tol).max(5e-14), max_panels: 4000 }
}

fn check_model(model: &DensityModel, exponent: f64) -> Result<()> {
    check_exponent(exponent)?;
    if let SpaceSpec::Euclidean { n } = model.spec {
        if exponent >= f64::from(n) {
            return Err(Error::Divergent(format!(
                "the Green integral diverges on flat R^{n} for P = {exponent} >= n"
            )));
        }
    }
    Ok(())
}

/// Integral of `weight(t) (f(r)/f(t))^k` over `[r, ∞)` for non-flat spaces.
///
/// `tail_factor(R)` must bound `weight` on `[R, ∞)` from below and above as
/// `(lo, hi)` multipliers of the tail integral of `(f(r)/f(t))^k`.
fn scaled_integral(
    model: &DensityModel,
    exponent: f64,
    r: f64,
    rel_tol: f64,
    weight: impl Fn(Radius) -> f64,
    tail_factor: impl Fn(Radius) -> (f64, f64),
) -> Result<Scaled> {
    let k = 1.0 / (exponent - 1.0);
    let lf_r = model.log_f(Radius::trusted(r));
    let integrand = |t: f64| {
        let t = Radius::trusted(t);
        weight(t) * (-k * (model.log_f(t) - lf_r)).exp()
    };
    let cfg = quad_config(rel_tol);

    let mut value = 0.0;
    let mut error = 0.0;
    let mut lo = r;
    if r < 1.0 {
        let piece = integrate_log(integrand, r, 1.0, cfg)?;
        value += piece.value;
        error += piece.error;
        lo = 1.0;
    }
    let mut cutoff = lo.ceil().max(lo + 1.0);
    while model.mean_curvature_excess(Radius::trusted(cutoff)) > CUTOFF_EXCESS * model.h {
        cutoff += 1.0;
    }
    loop {
        let piece = integrate(integrand, lo, cutoff, cfg)?;
        value += piece.value;
        error += piece.error;
        let rc = Radius::trusted(cutoff);
        let scale = (-k * (model.log_f(rc) - lf_r)).exp();
        let lower = scale / (k * model.log_df(rc));
        let upper = scale / (k * model.h);
        let (wl, wh) = tail_factor(rc);
        let (tl, th) = (wl * lower, wh * upper);
        let half = 0.5 * (th - tl);
        if half <= 0.25 * rel_tol * (value + tl) || cutoff >= MAX_CUTOFF {
            if half > 0.25 * rel_tol * (value + tl) {
                return Err(Error::Convergence {
                    requested: rel_tol * value,
                    achieved: half + error,
                });
            }
            return Ok(Scaled { value: value + 0.5 * (tl + th), error: error + half, cutoff });
        }
        lo = cutoff;
        cutoff += 4.0;
    }
}

/// `J(r)`; exact tail for flat space.
fn scaled_green(model: &DensityModel, exponent: f64, r: f64, rel_tol: f64) -> Result<Scaled> {
    check_model(model, exponent)?;
    if let SpaceSpec::Euclidean { n } = model.spec {
        let kk = f64::from(n - 1) / (exponent - 1.0);
        let cutoff = r * 1e4;
        let cfg = quad_config(rel_tol);
        let piece = integrate_log(|t| (r / t).powf(kk), r, cutoff, cfg)?;
        let tail = r.powf(kk) * cutoff.powf(1.0 - kk) / (kk - 1.0);
        return Ok(Scaled { value: piece.value + tail, error: piece.error, cutoff });
    }
    scaled_integral(model, exponent, r, rel_tol, |_| 1.0, |_| (1.0, 1.0))
}

/// `D(r) = (P-1)/h - J(r) = ∫_r^∞ ((f'/f - h)/h) (f(r)/f(t))^k dt ≥ 0`.
fn scaled_deficit(model: &DensityModel, exponent: f64, r: f64, rel_tol: f64) -> Result<Scaled> {
    let h = model.h;
    scaled_integral(
        model,
        exponent,
        r,
        rel_tol,
        |t| model.mean_curvature_excess(t) / h,
        |t| (0.0, model.mean_curvature_excess(t) / h),
    )
}

fn evaluation(model: &DensityModel, exponent: f64, r: f64, s: Scaled) -> GreenEvaluation {
    let k = 1.0 / (exponent - 1.0);
    let omega_n = unit_sphere_volume(model.n);
    let log_prefactor = -k * omega_n.ln() - k * model.log_f(Radius::trusted(r));
    let prefactor = log_prefactor.exp();
    GreenEvaluation {
        exponent,
        r,
        value: prefactor * s.value,
        error_bound: prefactor * s.error,
        log_value: log_prefactor + s.value.ln(),
        scaled: s.value,
        scaled_error: s.error,
        cutoff: s.cutoff,
        omega_n,
    }
}

/// `G(r)` to relative accuracy `rel_tol`.
pub fn green_value_rel(model: &DensityModel, exponent: f64, r: f64, rel_tol: f64) -> Result<GreenEvaluation> {
    let r = Radius::new(r)?.get();
    let s = scaled_green(model, exponent, r, rel_tol)?;
    Ok(evaluation(model, exponent, r, s))
}

/// `G(r)` with `error_bound ≤ tol` (absolute).
pub fn green_value(model: &DensityModel, exponent: f64, r: f64, tol: f64) -> Result<GreenEvaluation> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let mut rel = 1e-6;
    loop {
        let e = green_value_rel(model, exponent, r, rel)?;
        if e.error_bound <= tol {
            return Ok(e);
        }
        if rel <= 1e-14 {
            return Err(Error::Convergence { requested: tol, achieved: e.error_bound });
        }
        rel = (rel * 1e-2).max(1e-14).min(0.5 * rel * tol / e.error_bound);
    }
}

/// `G'(r)/G(r) = -1/J(r)`.
pub fn green_log_derivative(model: &DensityModel, exponent: f64, r: f64) -> Result<f64> {
    let r = Radius::new(r)?.get();
    Ok(-1.0 / scaled_green(model, exponent, r, DEFAULT_REL_TOL)?.value)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GreenWeight {
    /// `((P-1)/P)^P |G'/G|^P`.
    pub w: f64,
    /// `(h/P)^P`.
    pub lambda_p: f64,
    /// `W - Λ_P`, computed without cancellation at large radius.
    pub w_tilde: f64,
    pub dlog: f64,
}

/// Weight parts for any space where `G` exists; flat space gives `Λ_P = 0`.
pub fn green_weight_parts(model: &DensityModel, exponent: f64, r: f64) -> Result<GreenWeight> {
    let r = Radius::new(r)?.get();
    let pp = exponent;
    let j = scaled_green(model, pp, r, DEFAULT_REL_TOL)?.value;
    let lambda_p = (model.h / pp).powf(pp);
    let w = ((pp - 1.0) / pp).powf(pp) * j.powf(-pp);
    let x_est = 1.0 - model.h * j / (pp - 1.0);
    let w_tilde = if model.h > 0.0 && x_est < 0.5 {
        let d = scaled_deficit(model, pp, r, DEFAULT_REL_TOL)?.value;
        let x = model.h * d / (pp - 1.0);
        lambda_p * (-pp * (-x).ln_1p()).exp_m1()
    } else {
        w - lambda_p
    };
    Ok(GreenWeight { w, lambda_p, w_tilde, dlog: -1.0 / j })
}

/// The Green-based Hardy weight of `-Δ_P` on a non-flat space.
pub fn green_weight(model: &DensityModel, exponent: f64, r: f64) -> Result<GreenWeight> {
    if model.spec.is_flat() {
        return Err(Error::Precondition("the Green weight needs a non-flat space".into()));
    }
    green_weight_parts(model, exponent, r)
}

pub(crate) fn check_supercritical(model: &DensityModel, exponent: f64) -> Result<()> {
    check_exponent(exponent)?;
    if model.spec.is_flat() {
        return Err(Error::Precondition("the supercritical Green weight needs a non-flat space".into()));
    }
    if exponent <= f64::from(model.n) {
        return Err(Error::Precondition(format!(
            "the supercritical Green weight needs P > n; n = {}, P = {exponent}",
            model.n
        )));
    }
    Ok(())
}

/// `∫_0^r f^{-k} dt` for `P > n`, where the integrand has an integrable
/// `t^{-(n-1)k}` singularity at 0.
fn inner_integral(model: &DensityModel, exponent: f64, r: f64) -> Result<f64> {
    let k = 1.0 / (exponent - 1.0);
    let nm1 = f64::from(model.n) - 1.0;
    let kk = nm1 * k;
    let eps = (0.5 * r).min(1e-5);
    // f(t)/t^{n-1} increases from 1, so on (0, eps) the integrand lies
    // between (f(eps)/eps^{n-1})^{-k} t^{-kk} and t^{-kk}.
    let rho = model.log_f(Radius::trusted(eps)) - nm1 * eps.ln();
    let base = eps.powf(1.0 - kk) / (1.0 - kk);
    let small = 0.5 * base * (1.0 + (-k * rho).exp());
    let integrand = |t: f64| (-k * model.log_f(Radius::trusted(t))).exp();
    let cfg = QuadConfig::relative(1e-13);
    let mut total = small;
    if r <= 1.0 {
        total += integrate_log(integrand, eps, r, cfg)?.value;
    } else {
        total += integrate_log(integrand, eps, 1.0, cfg)?.value;
        total += integrate(integrand, 1.0, r, cfg)?.value;
    }
    Ok(total)
}

/// `(∫_0^r f^{-k}, ∫_r^∞ f^{-k}, J(r))` without the `β` normalisation.
fn split_integrals(model: &DensityModel, exponent: f64, r: f64) -> Result<(f64, f64, f64)> {
    let k = 1.0 / (exponent - 1.0);
    let j = scaled_green(model, exponent, r, DEFAULT_REL_TOL)?.value;
    let outer = (-k * model.log_f(Radius::trusted(r))).exp() * j;
    Ok((inner_integral(model, exponent, r)?, outer, j))
}

/// `G(0)`, finite when `P > n`.
pub fn green_gamma0(model: &DensityModel, exponent: f64) -> Result<f64> {
    check_supercritical(model, exponent)?;
    let (inner, outer, _) = split_integrals(model, exponent, 1.0)?;
    let beta = unit_sphere_volume(model.n).powf(-1.0 / (exponent - 1.0));
    Ok(beta * (inner + outer))
}

/// The Green weight for `P > n`,
/// `((P-1)/P)^P |G'/G|^P |γ-2G|^{P-2} / |γ-G|^P (γ² + 2(P-2)G(γ-G))`
/// with `γ = G(0)`. The expression is invariant under rescaling `G`, so
/// `γ - G` is taken directly as the inner integral.
pub fn green_weight_supercritical(model: &DensityModel, exponent: f64, r: f64) -> Result<f64> {
    check_supercritical(model, exponent)?;
    let r = Radius::new(r)?.get();
    let pp = exponent;
    let (inner, outer, j) = split_integrals(model, pp, r)?;
    let gamma = inner + outer;
    Ok(((pp - 1.0) / pp).powf(pp)
        * j.powf(-pp)
        * (inner - outer).abs().powf(pp - 2.0)
        * inner.powf(-pp)
        * (gamma * gamma + 2.0 * (pp - 2.0) * outer * inner))
}

/// Radius at which `G(r) = G(0)/2`, found by bisection.
pub fn green_half_radius(model: &DensityModel, exponent: f64) -> Result<f64> {
    check_supercritical(model, exponent)?;
    let diff = |r: f64| -> Result<f64> {
        let (inner, outer, _) = split_integrals(model, exponent, r)?;
        Ok(inner - outer)
    };
    let (mut a, mut b) = (1e-3, 1.0);
    while diff(b)? < 0.0 {
        b *= 2.0;
        if b > 1e3 {
            return Err(Error::Convergence { requested: 0.0, achieved: b });
        }
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if diff(m)? < 0.0 {
            a = m;
        } else {
            b = m;
        }
        if b - a <= 1e-15 * b {
            break;
        }
    }
    Ok(0.5 * (a + b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `P < n`.
    Subcritical,
    /// `P = n`.
    Critical,
    /// `P > n`.
    Supercritical,
}

impl Regime {
    pub fn of(n: u32, exponent: f64) -> Self {
        let n = f64::from(n);
        if (exponent - n).abs() < 1e-9 {
            Regime::Critical
        } else if exponent < n {
            Regime::Subcritical
        } else {
            Regime::Supercritical
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Regime::Subcritical => "P<n",
            Regime::Critical => "P=n",
            Regime::Supercritical => "P>n",
        }
    }
}

/// Leading small-radius behaviour of `W̃`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Prediction {
    pub regime: Regime,
    pub value: f64,
    /// Power of `r` in the leading term (the `P = n` form carries an extra
    /// `|ln r|^{-P}`).
    pub exponent: f64,
    pub coefficient: f64,
}

pub fn asymptotic_prediction(model: &DensityModel, exponent: f64, r: f64) -> Result<Prediction> {
    check_exponent(exponent)?;
    let r = Radius::new(r)?.get();
    let pp = exponent;
    let n = f64::from(model.n);
    let regime = Regime::of(model.n, pp);
    let c0 = ((pp - 1.0) / pp).powf(pp);
    Ok(match regime {
        Regime::Subcritical => {
            let c = ((n - pp) / pp).powf(pp);
            Prediction { regime, value: c * r.powf(-pp), exponent: -pp, coefficient: c }
        }
        Regime::Critical => Prediction {
            regime,
            value: c0 * (r * r.ln()).abs().powf(-pp),
            exponent: -pp,
            coefficient: c0,
        },
        Regime::Supercritical => {
            if model.spec.is_flat() {
                return Err(Error::Divergent(format!(
                    "the Green integral diverges on flat R^{} for P = {pp} >= n",
                    model.n
                )));
            }
            let (inner, outer, _) = split_integrals(model, pp, 1.0)?;
            let c = c0 * (inner + outer).powf(-pp);
            let e = -pp * (n - 1.0) / (pp - 1.0);
            Prediction { regime, value: c * r.powf(e), exponent: e, coefficient: c }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(s: &str) -> DensityModel {
        DensityModel::new(s.parse().unwrap())
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn sphere_volumes() {
        assert!(rel(unit_sphere_volume(3), 4.0 * PI) < 1e-15);
        assert!(rel(unit_sphere_volume(2), 2.0 * PI) < 1e-15);
        assert!(rel(unit_sphere_volume(4), 2.0 * PI * PI) < 1e-15);
        assert!(rel(unit_sphere_volume(5), 8.0 * PI * PI / 3.0) < 1e-15);
        assert!(rel(unit_sphere_volume(1), 2.0) < 1e-15);
    }

    #[test]
    fn closed_forms() {
        let e = green_value(&model("euclidean:3"), 2.0, 1.0, 1e-12).unwrap();
        assert!(rel(e.value, 1.0 / (4.0 * PI)) < 1e-10, "{}", e.value);
        let e = green_value(&model("euclidean:4"), 2.0, 2.0, 1e-12).unwrap();
        assert!(rel(e.value, 1.0 / (16.0 * PI * PI)) < 1e-10);
        let h3 = model("hyperbolic:3");
        for r in [0.01, 0.3, 1.0, 5.0, 20.0] {
            let e = green_value_rel(&h3, 2.0, r, 1e-12).unwrap();
            let exact = 2.0 / (2.0 * r).exp_m1() / (4.0 * PI);
            assert!(rel(e.value, exact) < 1e-10, "r={r}: {} vs {exact}", e.value);
            assert!(e.error_bound <= 1e-11 * exact);
        }
        assert!(matches!(
            green_value(&model("euclidean:3"), 3.0, 1.0, 1e-8),
            Err(Error::Divergent(_))
        ));
    }

    #[test]
    fn log_derivative() {
        let h3 = model("hyperbolic:3");
        let d = green_log_derivative(&h3, 2.0, 1.0).unwrap();
        assert!(rel(d, -(1.0 / 1f64.tanh() + 1.0)) < 1e-11);
        let d = green_log_derivative(&model("euclidean:4"), 2.0, 3.0).unwrap();
        assert!(rel(d, -2.0 / 3.0) < 1e-11);
        for s in ["hyperbolic:3", "dr:2,1", "dr:8,7"] {
            let m = model(s);
            for pp in [2.0, 2.5] {
                let d = green_log_derivative(&m, pp, 40.0).unwrap();
                assert!((d + m.h / (pp - 1.0)).abs() < 1e-8, "{s} {pp}: {d}");
            }
        }
    }

    #[test]
    fn weight_examples() {
        let w = green_weight(&model("hyperbolic:3"), 2.0, 1.0).unwrap();
        let expect = (1.0 / 1f64.tanh() + 1.0).powi(2) / 4.0;
        assert!(rel(w.w, expect) < 1e-11);
        assert_eq!(w.lambda_p, 1.0);
        assert!(rel(w.w_tilde, expect - 1.0) < 1e-10);
        let w = green_weight(&model("dr:2,1"), 2.0, 40.0).unwrap();
        assert!(w.w_tilde >= 0.0 && w.w_tilde <= 1e-10, "{}", w.w_tilde);
        assert!(green_weight(&model("euclidean:4"), 2.0, 1.0).is_err());
    }

    #[test]
    fn tilde_branches_agree() {
        // Around the switch between the direct and the deficit route.
        let m = model("dr:4,2");
        for r in [0.3, 0.5, 0.8, 1.2] {
            let j = scaled_green(&m, 2.0, r, 1e-13).unwrap().value;
            let d = scaled_deficit(&m, 2.0, r, 1e-13).unwrap().value;
            assert!(((j + d) - 1.0 / m.h).abs() < 1e-12, "{r}: {j} + {d}");
        }
    }

    #[test]
    fn supercritical() {
        let m = model("dr:2,1");
        let g0 = green_gamma0(&m, 6.0).unwrap();
        assert!(g0.is_finite() && g0 > 0.0);
        let w = green_weight_supercritical(&m, 6.0, 1.0).unwrap();
        assert!(w.is_finite() && w > 0.0);
        let rh = green_half_radius(&m, 6.0).unwrap();
        let g = green_value_rel(&m, 6.0, rh, 1e-12).unwrap().value;
        assert!(rel(2.0 * g, g0) < 1e-8);
        let w_half = green_weight_supercritical(&m, 6.0, rh).unwrap();
        assert!(w_half < 1e-6 * w, "{w_half}");
        assert!(green_weight_supercritical(&m, 4.0, 1.0).is_err());
    }

    #[test]
    fn supercritical_direct_formula() {
        // Same expression from normalised G and γ.
        let m = model("hyperbolic:3");
        let pp = 4.0;
        let r = 0.7;
        let g = green_value_rel(&m, pp, r, 1e-13).unwrap().value;
        let gamma = green_gamma0(&m, pp).unwrap();
        let d = green_log_derivative(&m, pp, r).unwrap();
        let direct = ((pp - 1.0) / pp).powf(pp)
            * d.abs().powf(pp)
            * (gamma - 2.0 * g).abs().powf(pp - 2.0)
            / (gamma - g).abs().powf(pp)
            * (gamma * gamma + 2.0 * (pp - 2.0) * g * (gamma - g));
        let w = green_weight_supercritical(&m, pp, r).unwrap();
        assert!(rel(w, direct) < 1e-9, "{w} {direct}");
    }

    #[test]
    fn predictions() {
        let m = model("dr:2,1");
        let p = asymptotic_prediction(&m, 2.0, 0.5).unwrap();
        assert_eq!(p.regime, Regime::Subcritical);
        assert_eq!((p.coefficient, p.exponent), (1.0, -2.0));
        let p = asymptotic_prediction(&m, 4.0, 0.5).unwrap();
        assert_eq!(p.regime, Regime::Critical);
        assert_eq!(p.coefficient, 0.75f64.powi(4));
        let p = asymptotic_prediction(&m, 6.0, 0.5).unwrap();
        assert_eq!(p.regime, Regime::Supercritical);
        assert!((p.exponent + 3.6).abs() < 1e-15);
    }
}
