//! Numerical witnesses for the inequalities and identities.

use std::cell::RefCell;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::green::{self, unit_sphere_volume};
use crate::quad::{integrate, integrate_log, QuadConfig};
use crate::radial::check_exponent;
use crate::space::{DensityModel, Radius, SpaceSpec};
use crate::verify::fit::{asymptotics_fit, log_space, PowerFit};
use crate::verify::suite::TestFunction;
use crate::weights::{ground_state_residual, hpw_g, WeightPair};

/// Default relative accuracy of the gap integrals.
pub const GAP_QUAD_TOL: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Gap {
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs - rhs`; the inequality predicts `>= 0`.
    pub gap: f64,
    /// `|lhs| + |rhs|`, the yardstick for quadrature slack.
    pub scale: f64,
}

impl Gap {
    fn new(lhs: f64, rhs: f64) -> Self {
        Gap { lhs, rhs, gap: lhs - rhs, scale: lhs.abs() + rhs.abs() }
    }

    pub fn holds(&self, tol_rel: f64) -> bool {
        self.gap >= -tol_rel * self.scale
    }
}

fn over_support(phi: &TestFunction, cfg: QuadConfig, f: impl FnMut(f64) -> f64) -> Result<f64> {
    let (a, b) = phi.support;
    Ok(integrate(f, a, b, cfg)?.value)
}

/// `∫(φ')² f - ∫(W-V)φ² f` (radial parts, the sphere volume cancels).
pub fn rayleigh_gap(model: &DensityModel, pair: &WeightPair, phi: &TestFunction, cfg: QuadConfig) -> Result<Gap> {
    if pair.exponent() != 2.0 {
        return Err(Error::Precondition(format!(
            "rayleigh_gap needs a P = 2 pair, got P = {}",
            pair.exponent()
        )));
    }
    p_rayleigh_gap(model, pair, phi, cfg)
}

/// `∫|φ'|^P f - ∫(W-V)|φ|^P f`, with the measure weight of the pair.
pub fn p_rayleigh_gap(model: &DensityModel, pair: &WeightPair, phi: &TestFunction, cfg: QuadConfig) -> Result<Gap> {
    let pp = pair.exponent();
    let a = pair.measure_exponent();
    let weight = |t: f64| {
        let rad = Radius::trusted(t);
        model.f(rad) * if a == 0.0 { 1.0 } else { t.powf(-a) }
    };
    let lhs = over_support(phi, cfg, |t| {
        let d = phi.jet(t).d1.abs();
        if d == 0.0 { 0.0 } else { d.powf(pp) * weight(t) }
    })?;
    let mut failure = None;
    let rhs = over_support(phi, cfg, |t| {
        let v = phi.jet(t).v.abs();
        if v == 0.0 {
            return 0.0;
        }
        match pair.sample(t) {
            Ok(s) => s.w_total * v.powf(pp) * weight(t),
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(Gap::new(lhs, rhs?))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualSummary {
    /// `max |residual| / scale` over the grid.
    pub max_relative: f64,
    /// Smallest signed normalised residual.
    pub min_signed: f64,
    /// Largest signed normalised residual.
    pub max_signed: f64,
}

/// Residual of `(-Δ_P + V - W)Φ` for the pair's ground state, normalised by
/// the magnitude of its contributions.
pub fn ode_residual(pair: &WeightPair, grid: &[f64]) -> Result<ResidualSummary> {
    let mut out = ResidualSummary { max_relative: 0.0, min_signed: f64::INFINITY, max_signed: f64::NEG_INFINITY };
    for &r in grid {
        if !(r > 0.0) {
            return Err(Error::Domain(format!("residual grid must avoid the pole, got r = {r}")));
        }
        let (res, scale) = ground_state_residual(pair, r)?.ok_or_else(|| {
            Error::Precondition(format!("pair {} has no ground state", pair.theorem_id()))
        })?;
        let rel = res / scale;
        out.max_relative = out.max_relative.max(rel.abs());
        out.min_signed = out.min_signed.min(rel);
        out.max_signed = out.max_signed.max(rel);
    }
    Ok(out)
}

/// `h² + q(q-P(P-1))/sinh²r + p(p+2q-P(P-1))/(4sinh²(r/2)) - h²`, the
/// strictly positive surplus that makes `(r/f)^{1/P}` a supersolution.
pub fn supersolution_surplus(p: u32, q: u32, exponent: f64, r: f64) -> f64 {
    let (p, q) = (f64::from(p), f64::from(q));
    let a = exponent * (exponent - 1.0);
    let s = r.sinh();
    let s2 = (0.5 * r).sinh();
    q * (q - a) / (s * s) + p * (p + 2.0 * q - a) / (4.0 * s2 * s2)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalityProbe {
    /// `(r, 1/ln r)` for large r.
    pub at_infinity: Vec<(f64, f64)>,
    /// `(r, 1/|ln r|)` for small r.
    pub at_pole: Vec<(f64, f64)>,
}

impl CriticalityProbe {
    pub fn decreasing(&self) -> bool {
        let dec = |v: &[(f64, f64)]| v.windows(2).all(|w| w[1].1 < w[0].1 && w[1].1 > 0.0);
        dec(&self.at_infinity) && dec(&self.at_pole)
    }
}

/// Ratio of the ground state `Φ` to the competitor `Φ ln r` at both ends.
pub fn criticality_probe(model: &DensityModel) -> CriticalityProbe {
    let _ = model;
    CriticalityProbe {
        at_infinity: [1e3, 1e6].iter().map(|&r: &f64| (r, 1.0 / r.ln())).collect(),
        at_pole: [1e-3, 1e-6].iter().map(|&r: &f64| (r, 1.0 / r.ln().abs())).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Mass {
    pub computed: f64,
    pub closed_form: f64,
    pub relative_error: f64,
}

/// `∫_eps^R Φ² W f dr` for the harmonic-manifold pair; equals `ln(R/eps)/4`.
pub fn null_criticality_mass(model: &DensityModel, eps: f64, outer: f64) -> Result<Mass> {
    if !(eps > 0.0 && outer > eps) {
        return Err(Error::Domain(format!("need 0 < eps < R, got eps = {eps}, R = {outer}")));
    }
    let pair = WeightPair::theorem_b(*model);
    let mut failure = None;
    let computed = integrate_log(
        |t| match pair.sample(t) {
            Ok(s) => {
                let psi = s.ground_log.expect("harmonic pair has a ground state");
                (2.0 * psi.v + model.log_f(Radius::trusted(t))).exp() * s.w
            }
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        eps,
        outer,
        QuadConfig::relative(1e-13),
    )?
    .value;
    if let Some(e) = failure {
        return Err(e);
    }
    let closed_form = 0.25 * (outer / eps).ln();
    Ok(Mass { computed, closed_form, relative_error: (computed - closed_form).abs() / closed_form })
}

/// Slope of the partial mass against `ln R`.
pub fn null_criticality_slope(model: &DensityModel, eps: f64, radii: &[f64]) -> Result<f64> {
    let pts = radii
        .iter()
        .map(|&r| Ok((r.ln(), null_criticality_mass(model, eps, r)?.computed)))
        .collect::<Result<Vec<_>>>()?;
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

/// `∫_eps^1 Ψ² (1-4γ²)/(4r²) f dr` for the gamma-family ground state.
pub fn gamma_mass(pair: &WeightPair, eps: f64) -> Result<f64> {
    let model = pair.model;
    let mut failure = None;
    let v = integrate_log(
        |t| match pair.sample(t) {
            Ok(s) => match s.ground_log {
                Some(psi) => (2.0 * psi.v + model.log_f(Radius::trusted(t))).exp() * s.w,
                None => {
                    failure.get_or_insert(Error::Precondition("pair has no ground state".into()));
                    0.0
                }
            },
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        eps,
        1.0,
        QuadConfig::relative(1e-12),
    )?
    .value;
    match failure {
        Some(e) => Err(e),
        None => Ok(v),
    }
}

fn dr_model(p: u32, q: u32) -> Result<DensityModel> {
    let spec = SpaceSpec::damek_ricci(p, q)?;
    if q == 0 || q == 2 {
        return Err(Error::Precondition(format!("needs q not in {{0, 2}}, got q = {q}")));
    }
    Ok(DensityModel::new(spec))
}

/// `[(∫φ'²f - λ0∫φ²f) ∫g r²φ²f] / [(∫φ²f)²/4]`; `None` for `φ ≡ 0`.
pub fn uncertainty_gap(p: u32, q: u32, phi: &TestFunction, cfg: QuadConfig) -> Result<Option<f64>> {
    let m = dr_model(p, q)?;
    let f = |t: f64| m.f(Radius::trusted(t));
    let grad = over_support(phi, cfg, |t| phi.jet(t).d1.powi(2) * f(t))?;
    let mass = over_support(phi, cfg, |t| phi.jet(t).v.powi(2) * f(t))?;
    if mass == 0.0 {
        return Ok(None);
    }
    let moment = over_support(phi, cfg, |t| {
        let v = phi.jet(t).v;
        if v == 0.0 { 0.0 } else { hpw_g(p, q, t).unwrap_or(f64::NAN) * t * t * v * v * f(t) }
    })?;
    Ok(Some((grad - m.lambda0 * mass) * moment / (0.25 * mass * mass)))
}

/// `∫ g r² (-Δφ - λ0φ)² f - ∫ φ²/(16 g r²) f`.
pub fn rellich_gap(p: u32, q: u32, phi: &TestFunction, cfg: QuadConfig) -> Result<Gap> {
    let m = dr_model(p, q)?;
    let lhs = over_support(phi, cfg, |t| {
        let j = phi.jet(t);
        if j.v == 0.0 && j.d1 == 0.0 && j.d2 == 0.0 {
            return 0.0;
        }
        let rad = Radius::trusted(t);
        let op = -(j.d2 + m.log_df(rad) * j.d1) - m.lambda0 * j.v;
        hpw_g(p, q, t).unwrap_or(f64::NAN) * t * t * op * op * m.f(rad)
    })?;
    let rhs = over_support(phi, cfg, |t| {
        let v = phi.jet(t).v;
        if v == 0.0 {
            return 0.0;
        }
        v * v / (16.0 * hpw_g(p, q, t).unwrap_or(f64::NAN) * t * t) * m.f(Radius::trusted(t))
    })?;
    Ok(Gap::new(lhs, rhs))
}

/// Weak form of `-Δ_P G = δ_o` tested against `φ`:
/// `ω_n ∫ |G'|^{P-2} G' φ' f dr` should equal `φ(0)`.
pub fn green_normalization(model: &DensityModel, exponent: f64, phi: impl Fn(f64) -> (f64, f64), support: f64) -> Result<(f64, f64)> {
    check_exponent(exponent)?;
    let omega = unit_sphere_volume(model.n);
    let failure = RefCell::new(None);
    let integrand = |t: f64| {
        let g = match green::green_value_rel(model, exponent, t, 1e-12) {
            Ok(g) => g,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                return 0.0;
            }
        };
        // G' = G · (G'/G) = -G/J, assembled in log form.
        let log_abs_dg = g.log_value - g.scaled.ln();
        let flux = -((exponent - 1.0) * log_abs_dg + model.log_f(Radius::trusted(t))).exp();
        omega * flux * phi(t).1
    };
    let cfg = QuadConfig::relative(1e-11);
    let mut value = integrate_log(integrand, 1e-8, 1.0, cfg)?.value;
    if support > 1.0 {
        value += integrate(integrand, 1.0, support, cfg)?.value;
    }
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok((value, phi(0.0).0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticsCheck {
    pub regime: green::Regime,
    pub fit: PowerFit,
    pub predicted_exponent: f64,
    /// `W̃ / prediction` at the smallest radius.
    pub ratio_at_rmin: f64,
}

/// Fits `W̃` over `count` log-spaced radii in `[lo, hi]` and compares with
/// the leading-order prediction.
pub fn green_asymptotics(model: &DensityModel, exponent: f64, lo: f64, hi: f64, count: usize) -> Result<AsymptoticsCheck> {
    let radii = log_space(lo, hi, count);
    let samples = radii
        .iter()
        .map(|&r| Ok((r, green::green_weight_parts(model, exponent, r)?.w_tilde)))
        .collect::<Result<Vec<_>>>()?;
    let fit = asymptotics_fit(&samples)?;
    let pred = green::asymptotic_prediction(model, exponent, lo)?;
    Ok(AsymptoticsCheck {
        regime: pred.regime,
        fit,
        predicted_exponent: pred.exponent,
        ratio_at_rmin: samples[0].1 / pred.value,
    })
}

/// Large-radius check on `X^{p,q}`: the relative excess of `W` over
/// `Λ_P coth(r/2)^{-Pq/(P-1)}` against `2αP h/(2h+2P-2) / sinh²(r/2)` with
/// `α = q/(2(P-1)) + 1/2`. Returns the ratio of the two.
pub fn green_large_r_ratio(model: &DensityModel, exponent: f64, r: f64) -> Result<f64> {
    let (_, q) = model
        .spec
        .heisenberg_params()
        .ok_or_else(|| Error::Precondition("needs a Damek-Ricci space".into()))?;
    let pp = exponent;
    let q = f64::from(q);
    let h = model.h;
    let gw = green::green_weight(model, pp, r)?;
    // coth(r/2)^{-s} - 1 and W/Λ_P - 1 in cancellation-free form.
    let s = pp * q / (pp - 1.0);
    let c = crate::space::coth_minus_one(0.5 * r);
    let base = (-s * c.ln_1p()).exp();
    let lhs = (gw.w_tilde / gw.lambda_p - (base - 1.0)) / base;
    let alpha = q / (2.0 * (pp - 1.0)) + 0.5;
    let sh = (0.5 * r).sinh();
    let rhs = 2.0 * alpha * pp * h / (2.0 * h + 2.0 * pp - 2.0) / (sh * sh);
    Ok(lhs / rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::suite::default_suite;

    fn model(s: &str) -> DensityModel {
        DensityModel::new(s.parse().unwrap())
    }

    #[test]
    fn zero_function_gaps() {
        let m = model("dr:2,1");
        let pair = WeightPair::theorem_a(m).unwrap();
        let z = TestFunction::zero();
        let g = rayleigh_gap(&m, &pair, &z, QuadConfig::relative(GAP_QUAD_TOL)).unwrap();
        assert_eq!(g.gap, 0.0);
        assert_eq!(uncertainty_gap(2, 1, &z, QuadConfig::default()).unwrap(), None);
        assert_eq!(rellich_gap(2, 1, &z, QuadConfig::default()).unwrap().gap, 0.0);
    }

    #[test]
    fn classical_hardy_reduction() {
        let m = model("euclidean:4");
        let pair = WeightPair::theorem_b(m);
        let phi = TestFunction::bump(3.0, 1.0);
        let cfg = QuadConfig::relative(1e-12);
        let g = rayleigh_gap(&m, &pair, &phi, cfg).unwrap();
        let lhs = integrate(|t| phi.jet(t).d1.powi(2) * t.powi(3), 2.0, 4.0, cfg).unwrap().value;
        let rhs = integrate(|t| phi.jet(t).v.powi(2) * t, 2.0, 4.0, cfg).unwrap().value;
        assert!((g.lhs - lhs).abs() < 1e-10 * lhs);
        assert!((g.rhs - rhs).abs() < 1e-10 * rhs);
        assert!(g.gap > 0.0);
    }

    #[test]
    fn gaps_on_damek_ricci() {
        let m = model("dr:2,1");
        let cfg = QuadConfig::relative(GAP_QUAD_TOL);
        let phi = TestFunction::bump(3.0, 1.0);
        let a = rayleigh_gap(&m, &WeightPair::theorem_a(m).unwrap(), &phi, cfg).unwrap();
        assert!(a.gap > 0.0);
        let p2 = p_rayleigh_gap(&m, &WeightPair::p_dr(m, 2.0).unwrap(), &phi, cfg).unwrap();
        assert!((p2.gap - a.gap).abs() <= 1e-10 * a.scale);
        let m42 = model("dr:4,2");
        let g = p_rayleigh_gap(&m42, &WeightPair::p_dr(m42, 3.0).unwrap(), &phi, cfg).unwrap();
        assert!(g.gap > 0.0);
        let gr = p_rayleigh_gap(&m, &WeightPair::green(m, 2.0).unwrap(), &phi, cfg).unwrap();
        assert!(gr.gap > 0.0);
    }

    #[test]
    fn masses() {
        let m = model("dr:2,1");
        let x = null_criticality_mass(&m, 1.0, 4f64.exp()).unwrap();
        assert!((x.computed - 1.0).abs() < 1e-10);
        let x = null_criticality_mass(&m, 1e-2, 1.0).unwrap();
        assert!((x.computed - 1.1512925).abs() < 1e-7);
        let s = null_criticality_slope(&m, 1e-2, &[10.0, 100.0, 1000.0]).unwrap();
        assert!((s - 0.25).abs() < 1e-6);
    }

    #[test]
    fn probe_values() {
        let p = criticality_probe(&model("dr:2,1"));
        assert!((p.at_infinity[1].1 - 0.0723824).abs() < 1e-7);
        assert!((p.at_infinity[0].1 - 0.1447648).abs() < 1e-7);
        assert!(p.decreasing());
    }

    #[test]
    fn corollaries() {
        let cfg = QuadConfig::relative(GAP_QUAD_TOL);
        let suite = default_suite((0.5, 6.0), 4).unwrap();
        for phi in &suite.members {
            assert!(uncertainty_gap(2, 1, phi, cfg).unwrap().unwrap() >= 1.0);
            let g = rellich_gap(2, 1, phi, cfg).unwrap();
            assert!(g.holds(1e-8), "{g:?}");
        }
        assert!(uncertainty_gap(4, 2, &suite.members[0], cfg).is_err());
    }

    #[test]
    fn normalization() {
        let m = model("dr:2,1");
        let (lhs, phi0) = green_normalization(&m, 2.0, |t| ((-t * t).exp(), -2.0 * t * (-t * t).exp()), 12.0).unwrap();
        assert!((lhs - phi0).abs() < 1e-8, "{lhs}");
    }
}
