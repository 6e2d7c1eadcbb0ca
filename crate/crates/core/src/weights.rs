//! Potential/weight pairs `(V, W)` and their ground states.
//!
//! Every pair satisfies, for test functions `φ`,
//! `∫|∇φ|^P + ∫V|φ|^P ≥ ∫W|φ|^P`, where `P = 2` unless stated otherwise.
//! A [`WeightSample`] evaluates one pair at one radius and breaks `W` and
//! `-V` into named terms. Terms built on the same radial basis function
//! (`1/r²`, `1/sinh²r`, ...) carry their coefficient separately so that
//! like terms can be combined exactly.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::green;
use crate::jet::Jet;
use crate::radial::{check_exponent, RadialScalar};
use crate::space::{coth_minus_one, csch2, DensityModel, Radius, SpaceSpec};

/// Radial basis function a term is a multiple of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    Unit,
    InvR2,
    /// `1 / sinh²(r/2)`.
    InvSinh2Half,
    /// `1 / sinh²(r)`.
    InvSinh2,
    /// Anything else; the coefficient is the value itself.
    Other,
}

impl Basis {
    pub fn eval(self, r: f64) -> f64 {
        match self {
            Basis::Unit | Basis::Other => 1.0,
            Basis::InvR2 => 1.0 / (r * r),
            Basis::InvSinh2Half => csch2(0.5 * r),
            Basis::InvSinh2 => csch2(r),
        }
    }

    /// `coefficient * eval(r)`, dividing rather than multiplying by a
    /// reciprocal for `1/r²` so that closed forms like `c/(4r²)` round alike.
    pub fn apply(self, coefficient: f64, r: f64) -> f64 {
        match self {
            Basis::InvR2 => coefficient / (r * r),
            b => coefficient * b.eval(r),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Term {
    pub name: String,
    pub basis: Basis,
    pub coefficient: f64,
    pub value: f64,
}

impl Term {
    fn new(name: impl Into<String>, basis: Basis, coefficient: f64, r: f64) -> Self {
        Term { name: name.into(), basis, coefficient, value: basis.apply(coefficient, r) }
    }

    fn other(name: impl Into<String>, value: f64) -> Self {
        Term { name: name.into(), basis: Basis::Other, coefficient: value, value }
    }
}

/// Which inequality a pair comes from.
#[derive(Debug, Clone)]
pub enum WeightKind {
    /// Harmonic-manifold Hardy inequality with `W = 1/(4r²)`.
    TheoremB,
    /// Poincaré-Hardy inequality on `X^{p,q}` with `V = -λ0`.
    TheoremA,
    /// One-parameter family with an auxiliary radial function.
    GammaFamily { gamma: f64, aux: AuxH },
    /// The closed Damek-Ricci form of the family with `aux = f^{1/(n-1)}`.
    GammaDr { gamma: f64 },
    /// Hardy inequality for the measure `r^{-2α} dx`.
    Weighted { alpha: f64 },
    /// P-Laplacian Poincaré-Hardy inequality on `X^{p,q}`.
    PDr { exponent: f64 },
    /// Optimal P-Laplacian weight built from the P-Green function.
    Green { exponent: f64 },
    /// Green weight for `P > n`, where `G(0)` is finite.
    GreenSupercritical { exponent: f64 },
}

/// Auxiliary function `h` of the gamma family.
#[derive(Debug, Clone)]
pub enum AuxH {
    /// `f^{1/(n-1)}`, evaluated in log form.
    DensityRoot,
    Custom(RadialScalar),
}

impl AuxH {
    /// `(ln h, h'/h, (h'/h)')`.
    fn log_jet(&self, model: &DensityModel, r: Radius) -> Jet {
        match self {
            AuxH::DensityRoot => model.log_f_jet(r) * (1.0 / (f64::from(model.n) - 1.0)),
            AuxH::Custom(h) => h.jet(r.get()).ln(),
        }
    }

    /// Checks `inf h/r > 0` on a log grid, finite `h(r)/r` near 0, and
    /// linear growth at the pole.
    pub fn validate(&self) -> Result<()> {
        let AuxH::Custom(h) = self else { return Ok(()) };
        let mut inf = f64::INFINITY;
        for i in 0..=160 {
            let r = 10f64.powf(-6.0 + 8.0 * f64::from(i) / 160.0);
            let ratio = h.value(r) / r;
            if !ratio.is_finite() {
                return Err(Error::Precondition(format!(
                    "auxiliary function {} has non-finite h(r)/r at r = {r:e}",
                    h.name()
                )));
            }
            inf = inf.min(ratio);
        }
        if !(inf > 1e-12) {
            return Err(Error::Precondition(format!(
                "auxiliary function {} needs h(r) >= C r with C > 0; inf h(r)/r = {inf:e}",
                h.name()
            )));
        }
        let slope = (h.value(2e-6) / h.value(1e-6)).log2();
        if (slope - 1.0).abs() > 0.05 {
            return Err(Error::Precondition(format!(
                "auxiliary function {} must grow like C r at the pole; local exponent {slope:.4}",
                h.name()
            )));
        }
        Ok(())
    }
}

/// A validated `(V, W)` pair on a fixed space.
#[derive(Debug, Clone)]
pub struct WeightPair {
    pub model: DensityModel,
    pub kind: WeightKind,
}

/// One pair evaluated at one radius.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightSample {
    pub theorem: &'static str,
    pub r: f64,
    pub v: f64,
    pub w: f64,
    /// `W - V`, the full density on the right-hand side.
    pub w_total: f64,
    /// Sum to `W`.
    pub terms: Vec<Term>,
    /// Sum to `-V`.
    pub shift_terms: Vec<Term>,
    /// `(ln Φ, Φ'/Φ, (Φ'/Φ)')` of the ground state, when the pair has one.
    #[serde(skip)]
    pub ground_log: Option<Jet>,
    /// Exponent `P` of the underlying operator.
    pub exponent: f64,
    /// Extra weight `r^{-2α}` of the measure, for the weighted inequality.
    pub measure_weight: f64,
    pub extras: Vec<(&'static str, f64)>,
}

impl WeightSample {
    fn assemble(
        theorem: &'static str,
        r: f64,
        terms: Vec<Term>,
        shift_terms: Vec<Term>,
        ground_log: Option<Jet>,
    ) -> Self {
        let w = terms.iter().map(|t| t.value).sum::<f64>();
        let neg_v = shift_terms.iter().map(|t| t.value).sum::<f64>();
        let mut s = WeightSample {
            theorem,
            r,
            v: -neg_v,
            w,
            w_total: 0.0,
            terms,
            shift_terms,
            ground_log,
            exponent: 2.0,
            measure_weight: 1.0,
            extras: Vec::new(),
        };
        s.w_total = s.combined().iter().map(|&(b, c)| b.apply(c, r)).sum();
        s
    }

    /// Coefficients of `W - V` per basis, with like bases merged.
    pub fn combined(&self) -> Vec<(Basis, f64)> {
        let mut out: Vec<(Basis, f64)> = Vec::new();
        for t in self.terms.iter().chain(&self.shift_terms) {
            match out.iter_mut().find(|(b, _)| *b == t.basis) {
                Some((_, c)) => *c += t.coefficient,
                None => out.push((t.basis, t.coefficient)),
            }
        }
        out.sort_by_key(|&(b, _)| b);
        out
    }

    /// Coefficient of a basis in `W - V`, zero when absent.
    pub fn coefficient(&self, basis: Basis) -> f64 {
        self.combined().into_iter().find(|&(b, _)| b == basis).map_or(0.0, |(_, c)| c)
    }

    pub fn extra(&self, key: &str) -> Option<f64> {
        self.extras.iter().find(|(k, _)| *k == key).map(|&(_, v)| v)
    }

    /// Ground state value `Φ(r)`.
    pub fn ground_state(&self) -> Option<f64> {
        self.ground_log.map(|j| j.v.exp())
    }
}

/// `-V` of the harmonic-manifold Hardy inequality, split into basis terms.
fn hardy_terms(model: &DensityModel, r: f64) -> Vec<Term> {
    match model.spec {
        SpaceSpec::Euclidean { n } => {
            let n = f64::from(n);
            vec![Term::new("(n-1)(n-3)/(4r^2)", Basis::InvR2, (n - 1.0) * (n - 3.0) / 4.0, r)]
        }
        SpaceSpec::RealHyperbolic { n } => {
            let n = f64::from(n);
            vec![
                Term::new("lambda0", Basis::Unit, model.lambda0, r),
                Term::new("sinh(r) term", Basis::InvSinh2, (n - 1.0) * (n - 3.0) / 4.0, r),
            ]
        }
        SpaceSpec::DamekRicci { p, q } => {
            let (p, q) = (f64::from(p), f64::from(q));
            vec![
                Term::new("lambda0", Basis::Unit, model.lambda0, r),
                Term::new("sinh(r/2) term", Basis::InvSinh2Half, p * (p + 2.0 * q - 2.0) / 16.0, r),
                Term::new("sinh(r) term", Basis::InvSinh2, q * (q - 2.0) / 4.0, r),
            ]
        }
    }
}

/// `ln (r/f)^{1/P}` as a jet.
fn ground_log_power(model: &DensityModel, r: Radius, exponent: f64) -> Jet {
    (Jet::var(r.get()).ln() - model.log_f_jet(r)) * (1.0 / exponent)
}

fn dr_params(model: &DensityModel, what: &str) -> Result<(f64, f64)> {
    model
        .spec
        .heisenberg_params()
        .map(|(p, q)| (f64::from(p), f64::from(q)))
        .ok_or_else(|| Error::Precondition(format!("{what} needs a Damek-Ricci space, got {}", model.spec)))
}

fn check_gamma(gamma: f64) -> Result<()> {
    if (0.0..=0.5).contains(&gamma) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("gamma must lie in [0, 1/2], got {gamma}")))
    }
}

/// The function `g` of the P-Laplacian inequality,
/// `coth(r/2) - (2/(p+2q)) (q/sinh r + 1/r)`.
pub fn p_dr_g(p: u32, q: u32, r: f64) -> f64 {
    let (p, q) = (f64::from(p), f64::from(q));
    1.0 + coth_minus_one(0.5 * r) - 2.0 / (p + 2.0 * q) * (q / r.sinh() + 1.0 / r)
}

impl WeightPair {
    pub fn theorem_b(model: DensityModel) -> Self {
        WeightPair { model, kind: WeightKind::TheoremB }
    }

    pub fn theorem_a(model: DensityModel) -> Result<Self> {
        dr_params(&model, "the Poincaré-Hardy pair")?;
        Ok(WeightPair { model, kind: WeightKind::TheoremA })
    }

    pub fn gamma_family(model: DensityModel, gamma: f64, aux: AuxH) -> Result<Self> {
        check_gamma(gamma)?;
        if model.n < 3 {
            return Err(Error::Precondition("the gamma family needs dimension n >= 3".into()));
        }
        aux.validate()?;
        Ok(WeightPair { model, kind: WeightKind::GammaFamily { gamma, aux } })
    }

    pub fn gamma_dr(model: DensityModel, gamma: f64) -> Result<Self> {
        check_gamma(gamma)?;
        dr_params(&model, "the Damek-Ricci gamma family")?;
        Ok(WeightPair { model, kind: WeightKind::GammaDr { gamma } })
    }

    pub fn weighted(model: DensityModel, alpha: f64) -> Result<Self> {
        if !(alpha >= 0.0 && alpha.is_finite()) {
            return Err(Error::Precondition(format!("alpha must be non-negative, got {alpha}")));
        }
        if model.n < 3 {
            return Err(Error::Precondition("the weighted inequality needs dimension n >= 3".into()));
        }
        let n = f64::from(model.n);
        if n < 2.0 * (1.0 + alpha) {
            return Err(Error::Precondition(format!(
                "weighted inequality requires n ≥ 2(1+α); n = {n}, α = {alpha}"
            )));
        }
        Ok(WeightPair { model, kind: WeightKind::Weighted { alpha } })
    }

    pub fn p_dr(model: DensityModel, exponent: f64) -> Result<Self> {
        let (p, q) = dr_params(&model, "the P-Laplacian Poincaré-Hardy pair")?;
        if !(exponent >= 2.0 && exponent.is_finite()) || p + q < exponent * (exponent - 1.0) {
            return Err(Error::Precondition(format!(
                "P-Laplacian Poincaré-Hardy inequality requires P ≥ 2 and n ≥ 1+P(P-1); n = {}, P = {exponent}",
                model.n
            )));
        }
        Ok(WeightPair { model, kind: WeightKind::PDr { exponent } })
    }

    pub fn green(model: DensityModel, exponent: f64) -> Result<Self> {
        check_exponent(exponent)?;
        if model.spec.is_flat() {
            return Err(Error::Precondition(
                "the Green weight needs a non-flat space".into(),
            ));
        }
        Ok(WeightPair { model, kind: WeightKind::Green { exponent } })
    }

    pub fn green_supercritical(model: DensityModel, exponent: f64) -> Result<Self> {
        green::check_supercritical(&model, exponent)?;
        Ok(WeightPair { model, kind: WeightKind::GreenSupercritical { exponent } })
    }

    pub fn theorem_id(&self) -> &'static str {
        match self.kind {
            WeightKind::TheoremB => "B",
            WeightKind::TheoremA => "A",
            WeightKind::GammaFamily { .. } => "gamma_family",
            WeightKind::GammaDr { .. } => "gamma_dr",
            WeightKind::Weighted { .. } => "weighted_alpha",
            WeightKind::PDr { .. } => "p_dr",
            WeightKind::Green { .. } => "green_p",
            WeightKind::GreenSupercritical { .. } => "green_supercritical",
        }
    }

    pub fn exponent(&self) -> f64 {
        match self.kind {
            WeightKind::PDr { exponent }
            | WeightKind::Green { exponent }
            | WeightKind::GreenSupercritical { exponent } => exponent,
            _ => 2.0,
        }
    }

    /// Weight `r^{-2α}` of the measure; 0 for unweighted pairs.
    pub fn measure_exponent(&self) -> f64 {
        match self.kind {
            WeightKind::Weighted { alpha } => 2.0 * alpha,
            _ => 0.0,
        }
    }

    pub fn sample(&self, r: f64) -> Result<WeightSample> {
        let rad = Radius::new(r)?;
        let m = &self.model;
        let s = match &self.kind {
            WeightKind::TheoremB => WeightSample::assemble(
                "B",
                r,
                vec![Term::new("1/(4r^2)", Basis::InvR2, 0.25, r)],
                hardy_terms(m, r),
                Some(ground_log_power(m, rad, 2.0)),
            ),
            WeightKind::TheoremA => {
                let mut hardy = hardy_terms(m, r);
                let shift = hardy.remove(0);
                let mut terms = vec![Term::new("1/(4r^2)", Basis::InvR2, 0.25, r)];
                terms.extend(hardy);
                WeightSample::assemble("A", r, terms, vec![shift], Some(ground_log_power(m, rad, 2.0)))
            }
            WeightKind::GammaFamily { gamma, aux } => self.sample_gamma_family(rad, *gamma, aux),
            WeightKind::GammaDr { gamma } => self.sample_gamma_dr(rad, *gamma)?,
            WeightKind::Weighted { alpha } => {
                let mut shift = hardy_terms(m, r);
                shift.push(Term::other("-alpha f'/(r f)", -alpha * m.log_df(rad) / r));
                let terms = vec![Term::new("(4alpha+1)/(4r^2)", Basis::InvR2, (4.0 * alpha + 1.0) / 4.0, r)];
                let mut s = WeightSample::assemble("weighted_alpha", r, terms, shift, None);
                s.measure_weight = r.powf(-2.0 * alpha);
                s.extras.push(("alpha", *alpha));
                s
            }
            WeightKind::PDr { exponent } => self.sample_p_dr(rad, *exponent)?,
            WeightKind::Green { exponent } => {
                let gw = green::green_weight(m, *exponent, r)?;
                let terms = vec![
                    Term::new("Lambda_P", Basis::Unit, gw.lambda_p, r),
                    Term::other("W tilde", gw.w_tilde),
                ];
                let mut s = WeightSample::assemble("green_p", r, terms, Vec::new(), None);
                s.exponent = *exponent;
                s.extras.extend([("lambda_p", gw.lambda_p), ("w_tilde", gw.w_tilde), ("dlogG", gw.dlog)]);
                s
            }
            WeightKind::GreenSupercritical { exponent } => {
                let w = green::green_weight_supercritical(m, *exponent, r)?;
                let mut s = WeightSample::assemble(
                    "green_supercritical",
                    r,
                    vec![Term::other("W", w)],
                    Vec::new(),
                    None,
                );
                s.exponent = *exponent;
                s
            }
        };
        Ok(s)
    }

    fn sample_gamma_family(&self, rad: Radius, gamma: f64, aux: &AuxH) -> WeightSample {
        let m = &self.model;
        let r = rad.get();
        let eta = aux.log_jet(m, rad);
        let correction =
            gamma * (eta.d2 + (1.0 + 2.0 * gamma) * eta.d1 / r - gamma * eta.d1 * eta.d1);
        let mut shift = hardy_terms(m, r);
        shift.push(Term::other("gamma aux term", correction));
        let terms = vec![Term::new("(1-4gamma^2)/(4r^2)", Basis::InvR2, (1.0 - 4.0 * gamma * gamma) / 4.0, r)];
        let ground = Jet::var(r).ln() * (0.5 + gamma) - m.log_f_jet(rad) * 0.5 - eta * gamma;
        let mut s = WeightSample::assemble("gamma_family", r, terms, shift, Some(ground));
        s.extras.push(("gamma", gamma));
        s
    }

    fn sample_gamma_dr(&self, rad: Radius, gamma: f64) -> Result<WeightSample> {
        let m = &self.model;
        let (p, q) = dr_params(m, "the Damek-Ricci gamma family")?;
        let r = rad.get();
        let mm = p + q;
        let b = 0.5 + gamma / mm;
        let g2 = gamma * gamma / (mm * mm);
        let shift = vec![Term::new("lambda0 shift", Basis::Unit, (1.0 - 4.0 * g2) * m.lambda0, r)];
        let terms = vec![
            Term::new("(1-4gamma^2)/(4r^2)", Basis::InvR2, (1.0 - 4.0 * gamma * gamma) / 4.0, r),
            Term::other("drift term", gamma * (1.0 + 2.0 * gamma) / mm * m.log_df(rad) / r),
            Term::new("sinh(r) term", Basis::InvSinh2, -q * (b + q * (g2 - 0.25)), r),
            Term::new("sinh(r/2) term", Basis::InvSinh2Half, -p * (b + (p + 2.0 * q) * (g2 - 0.25)) / 4.0, r),
        ];
        let ground = Jet::var(r).ln() * (0.5 + gamma) - m.log_f_jet(rad) * (0.5 + gamma / mm);
        let mut s = WeightSample::assemble("gamma_dr", r, terms, shift, Some(ground));
        s.extras.push(("gamma", gamma));
        Ok(s)
    }

    fn sample_p_dr(&self, rad: Radius, exponent: f64) -> Result<WeightSample> {
        let m = &self.model;
        let (p, q) = dr_params(m, "the P-Laplacian Poincaré-Hardy pair")?;
        let spec = m.spec.heisenberg_params().expect("checked above");
        let r = rad.get();
        let h = m.h;
        let pp = exponent;
        let g = p_dr_g(spec.0, spec.1, r);
        let gp = g.powf(pp - 2.0);
        let pow_pp = pp.powf(pp);
        let lambda_p = (h / pp).powf(pp);
        let a = pp * (pp - 1.0);
        let shift = vec![Term::other("Lambda_P g^(P-2)", lambda_p * gp)];
        let terms = vec![
            Term::other("r^-2 term", h.powf(pp - 2.0) * (pp - 1.0).powi(2) / pow_pp * gp / (r * r)),
            Term::other(
                "r^-1 term",
                h.powf(pp - 1.0) * (pp - 2.0) / pow_pp * gp * (g + 1.0 / (h * r)) / r,
            ),
            Term::other(
                "sinh term",
                h.powf(pp - 2.0) / pow_pp
                    * gp
                    * (q * (q - a) * csch2(r) + p * (2.0 * h - a) / 4.0 * csch2(0.5 * r)),
            ),
        ];
        let mut s = WeightSample::assemble("p_dr", r, terms, shift, Some(ground_log_power(m, rad, pp)));
        s.exponent = pp;
        s.extras.extend([("g", g), ("lambda_p", lambda_p)]);
        Ok(s)
    }
}

/// `1 / (4 r² W(r))` with `W` the Poincaré-Hardy weight of `X^{p,q}`.
pub fn hpw_g(p: u32, q: u32, r: f64) -> Result<f64> {
    let spec = SpaceSpec::damek_ricci(p, q)?;
    if q == 0 || q == 2 {
        return Err(Error::Precondition(format!("hpw_g requires q not in {{0, 2}}, got q = {q}")));
    }
    let s = WeightPair::theorem_a(DensityModel::new(spec))?.sample(r)?;
    Ok(1.0 / (4.0 * r * r * s.w))
}

/// `1 - hpw_g(p, q, r)`, computed from the sinh terms alone so that it stays
/// resolvable where `hpw_g` rounds to 1.
pub fn hpw_g_complement(p: u32, q: u32, r: f64) -> Result<f64> {
    hpw_g(p, q, r)?;
    let s = WeightPair::theorem_a(DensityModel::new(SpaceSpec::damek_ricci(p, q)?))?.sample(r)?;
    let x = 4.0 * r * r * s.terms.iter().filter(|t| t.basis != Basis::InvR2).map(|t| t.value).sum::<f64>();
    Ok(x / (1.0 + x))
}

/// `-ΔΦ/Φ` (or `-Δ_P Φ / Φ^{P-1}`) from the log-jet of `Φ`.
pub fn minus_laplacian_over_ground(model: &DensityModel, r: Radius, psi: Jet, exponent: f64) -> f64 {
    let l = model.log_df(r);
    let inner = (exponent - 1.0) * (psi.d2 + psi.d1 * psi.d1) + l * psi.d1;
    let scale = if exponent == 2.0 { 1.0 } else { psi.d1.abs().powf(exponent - 2.0) };
    -scale * inner
}

/// Signed residual `(-Δ_P + V - W)Φ / Φ^{P-1}` and the magnitude of its
/// largest contribution, used to normalise it.
pub fn ground_state_residual(pair: &WeightPair, r: f64) -> Result<Option<(f64, f64)>> {
    let s = pair.sample(r)?;
    let Some(psi) = s.ground_log else { return Ok(None) };
    let rad = Radius::trusted(r);
    let m = &pair.model;
    let pp = s.exponent;
    let lap = minus_laplacian_over_ground(m, rad, psi, pp);
    let l = m.log_df(rad);
    let scale_factor = if pp == 2.0 { 1.0 } else { psi.d1.abs().powf(pp - 2.0) };
    let scale = scale_factor
        * ((pp - 1.0) * (psi.d2.abs() + psi.d1 * psi.d1) + (l * psi.d1).abs())
        + s.terms.iter().chain(&s.shift_terms).map(|t| t.value.abs()).sum::<f64>();
    Ok(Some((lap + s.v - s.w, scale)))
}

impl WeightPair {
    /// The ground state as a radial scalar.
    pub fn ground_state_scalar(&self) -> Option<RadialScalar> {
        if matches!(
            self.kind,
            WeightKind::Weighted { .. } | WeightKind::Green { .. } | WeightKind::GreenSupercritical { .. }
        ) {
            return None;
        }
        let pair = self.clone();
        Some(RadialScalar::new(format!("ground state ({})", self.theorem_id()), move |r| {
            let psi = pair.sample(r).ok().and_then(|s| s.ground_log).unwrap_or(Jet::constant(f64::NAN));
            psi.exp()
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(s: &str) -> DensityModel {
        DensityModel::new(s.parse().unwrap())
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
    }

    #[test]
    fn theorem_b_examples() {
        let s = WeightPair::theorem_b(model("euclidean:4")).sample(1.0).unwrap();
        assert_eq!(s.w_total, 1.0);
        let h3 = WeightPair::theorem_b(model("hyperbolic:3"));
        for r in [0.1, 1.0, 7.0] {
            assert_eq!(-h3.sample(r).unwrap().v, 1.0);
        }
        let v = WeightPair::theorem_b(model("dr:2,1")).sample(2.0).unwrap().v;
        assert!((-v - 1.1620098).abs() < 1e-6, "{v}");
    }

    #[test]
    fn theorem_a_examples() {
        let s = WeightPair::theorem_a(model("dr:2,1")).unwrap().sample(2.0).unwrap();
        assert!((s.w - 0.2245098).abs() < 1e-6, "{}", s.w);
        let s = WeightPair::theorem_a(model("dr:4,3")).unwrap().sample(0.3).unwrap();
        assert_eq!(s.v, -6.25);
        assert!(WeightPair::theorem_a(model("hyperbolic:3")).is_err());
        let b = WeightPair::theorem_b(model("dr:4,3")).sample(0.3).unwrap();
        assert!(close(b.w_total, s.w_total, 1e-14));
    }

    #[test]
    fn gamma_examples() {
        let m = model("dr:2,1");
        for r in [0.01, 0.5, 3.0, 20.0] {
            let b = WeightPair::theorem_b(m).sample(r).unwrap();
            let g0 = WeightPair::gamma_family(m, 0.0, AuxH::DensityRoot).unwrap().sample(r).unwrap();
            assert!(close(b.w_total, g0.w_total, 1e-14));
            let half = WeightPair::gamma_family(m, 0.5, AuxH::DensityRoot).unwrap().sample(r).unwrap();
            assert_eq!(half.w, 0.0);
        }
        let s = WeightPair::gamma_dr(m, 0.25).unwrap().sample(1.0).unwrap();
        assert!((s.shift_terms[0].value - (1.0 - 0.25 / 9.0)).abs() < 1e-15);
        let drift = s.terms.iter().find(|t| t.name == "drift term").unwrap().value;
        assert!((drift - 0.125 * (1.0 / 0.5f64.tanh() + 1.0 / 1f64.tanh())).abs() < 1e-15);
        assert!(WeightPair::gamma_dr(m, 0.6).is_err());
    }

    #[test]
    fn gamma_dr_matches_family() {
        for spec in ["dr:2,1", "dr:4,2", "dr:4,3", "dr:8,7"] {
            let m = model(spec);
            for gamma in [0.0, 0.1, 0.25, 0.4, 0.5] {
                let a = WeightPair::gamma_dr(m, gamma).unwrap();
                let b = WeightPair::gamma_family(m, gamma, AuxH::DensityRoot).unwrap();
                for r in [1e-3, 0.2, 1.0, 4.0, 30.0] {
                    let (x, y) = (a.sample(r).unwrap().w_total, b.sample(r).unwrap().w_total);
                    assert!(close(x, y, 1e-10), "{spec} {gamma} {r}: {x} {y}");
                }
            }
        }
    }

    #[test]
    fn weighted_examples() {
        let e4 = model("euclidean:4");
        let s = WeightPair::weighted(e4, 1.0).unwrap().sample(1.0).unwrap();
        assert!((s.w_total + 1.0).abs() < 1e-14, "{}", s.w_total);
        let dr = model("dr:2,1");
        assert!(WeightPair::weighted(dr, 1.0).is_ok());
        match WeightPair::weighted(dr, 1.5) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("n ≥ 2(1+α)"), "{msg}"),
            other => panic!("{other:?}"),
        }
        assert!(WeightPair::weighted(dr, -0.1).is_err());
    }

    #[test]
    fn p_dr_examples() {
        let dr21 = model("dr:2,1");
        let a = WeightPair::theorem_a(dr21).unwrap();
        let p2 = WeightPair::p_dr(dr21, 2.0).unwrap();
        for r in [0.01, 1.0, 10.0] {
            let (x, y) = (a.sample(r).unwrap(), p2.sample(r).unwrap());
            assert!(close(x.w, y.w, 1e-12) && close(x.v, y.v, 1e-14));
            assert_eq!(y.extra("lambda_p"), Some(1.0));
        }
        let s = WeightPair::p_dr(model("dr:4,2"), 3.0).unwrap().sample(1.0).unwrap();
        assert!((s.extra("lambda_p").unwrap() - 64.0 / 27.0).abs() < 1e-14);
        match WeightPair::p_dr(dr21, 3.0) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("n ≥ 1+P(P-1)"), "{msg}"),
            other => panic!("{other:?}"),
        }
        // g(r) = 1 + O(1/r) with leading correction -2/((p+2q) r).
        let g40 = p_dr_g(2, 1, 40.0);
        assert!((g40 - (1.0 - 2.0 / (4.0 * 40.0))).abs() < 1e-15, "{g40}");
        assert!((p_dr_g(2, 1, 1e9) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn hpw_g_examples() {
        assert!((hpw_g(2, 1, 2.0).unwrap() - 0.2783843).abs() < 1e-6);
        for r in [1e-3, 1.0, 50.0] {
            let g = hpw_g(4, 3, r).unwrap();
            let c = hpw_g_complement(4, 3, r).unwrap();
            assert!(g > 0.0 && c > 0.0 && c < 1.0);
            assert!((g + c - 1.0).abs() < 1e-14);
        }
        assert!(hpw_g(4, 3, 1.0).unwrap() < 1.0);
        assert!(matches!(hpw_g(4, 2, 1.0), Err(Error::Precondition(_))));
    }

    #[test]
    fn ground_state_identities() {
        for spec in ["dr:2,1", "dr:4,2", "dr:4,3", "dr:8,7"] {
            let m = model(spec);
            let pairs = [
                WeightPair::theorem_a(m).unwrap(),
                WeightPair::theorem_b(m),
                WeightPair::gamma_family(m, 0.25, AuxH::DensityRoot).unwrap(),
                WeightPair::gamma_dr(m, 0.4).unwrap(),
            ];
            for pair in &pairs {
                for r in [1e-4, 0.1, 1.0, 5.0, 40.0] {
                    let (res, scale) = ground_state_residual(pair, r).unwrap().unwrap();
                    assert!(res.abs() <= 1e-12 * scale, "{spec} {} r={r}: {res} / {scale}", pair.theorem_id());
                }
            }
        }
    }

    #[test]
    fn custom_aux_validation() {
        let m = model("hyperbolic:3");
        let sinh = RadialScalar::from_jet_fn("sinh r", |r| r.sinh());
        assert!(WeightPair::gamma_family(m, 0.3, AuxH::Custom(sinh)).is_ok());
        let square = RadialScalar::power(2.0);
        assert!(WeightPair::gamma_family(m, 0.3, AuxH::Custom(square)).is_err());
        let cube_root = RadialScalar::power(1.0 / 3.0);
        assert!(WeightPair::gamma_family(m, 0.3, AuxH::Custom(cube_root)).is_err());
    }
}
