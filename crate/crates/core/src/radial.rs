//! Radial functions and the radial forms of the Laplacian and P-Laplacian.
//!
//! On a harmonic manifold with density `f`, the Laplacian of a radial
//! function is `u'' + (f'/f) u'` and the P-Laplacian is
//! `|u'|^{P-2} ((P-1) u'' + (f'/f) u')`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::space::{csch2, DensityModel, Radius, SpaceSpec};

type JetFn = dyn Fn(f64) -> Jet + Send + Sync;

/// A radial function `r -> u(r)` together with `u'` and `u''`.
///
/// Cloning is cheap; the evaluator is shared.
#[derive(Clone)]
pub struct RadialScalar {
    name: Arc<str>,
    eval: Arc<JetFn>,
}

impl fmt::Debug for RadialScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialScalar").field("name", &self.name).finish()
    }
}

impl RadialScalar {
    /// Wraps an evaluator returning `(u, u', u'')` at r.
    pub fn new(name: impl Into<String>, eval: impl Fn(f64) -> Jet + Send + Sync + 'static) -> Self {
        Self { name: Arc::from(name.into()), eval: Arc::new(eval) }
    }

    /// Builds the function from an expression over jets; derivatives are
    /// propagated automatically.
    pub fn from_jet_fn(
        name: impl Into<String>,
        expr: impl Fn(Jet) -> Jet + Send + Sync + 'static,
    ) -> Self {
        Self::new(name, move |r| expr(Jet::var(r)))
    }

    pub fn constant(c: f64) -> Self {
        Self::new(format!("{c}"), move |_| Jet::constant(c))
    }

    /// `r^k`.
    pub fn power(k: f64) -> Self {
        Self::from_jet_fn(format!("r^{k}"), move |r| r.powf(k))
    }

    /// `ln r`.
    pub fn ln() -> Self {
        Self::from_jet_fn("ln r", |r| r.ln())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    pub fn jet(&self, r: f64) -> Jet {
        (self.eval)(r)
    }

    pub fn value(&self, r: f64) -> f64 {
        self.jet(r).v
    }

    pub fn d1(&self, r: f64) -> f64 {
        self.jet(r).d1
    }

    pub fn d2(&self, r: f64) -> f64 {
        self.jet(r).d2
    }
}

/// `Δu = u'' + (f'/f) u'` at r.
pub fn laplacian_radial(u: &RadialScalar, model: &DensityModel, r: f64) -> Result<f64> {
    let r = Radius::new(r)?;
    Ok(laplacian_of_jet(u.jet(r.get()), model, r))
}

pub(crate) fn laplacian_of_jet(u: Jet, model: &DensityModel, r: Radius) -> f64 {
    u.d2 + model.log_df(r) * u.d1
}

pub(crate) fn check_exponent(exponent: f64) -> Result<()> {
    if exponent > 1.0 && exponent.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("exponent P must exceed 1, got {exponent}")))
    }
}

/// `Δ_P u = |u'|^{P-2} ((P-1) u'' + (f'/f) u')` at r.
pub fn p_laplacian_radial(
    u: &RadialScalar,
    model: &DensityModel,
    exponent: f64,
    r: f64,
) -> Result<f64> {
    check_exponent(exponent)?;
    let r = Radius::new(r)?;
    Ok(p_laplacian_of_jet(u.jet(r.get()), model, exponent, r))
}

pub(crate) fn p_laplacian_of_jet(u: Jet, model: &DensityModel, exponent: f64, r: Radius) -> f64 {
    let lp = (exponent - 1.0) * u.d2 + model.log_df(r) * u.d1;
    if exponent == 2.0 {
        lp
    } else {
        u.d1.abs().powf(exponent - 2.0) * lp
    }
}

/// The factor `c(r)` with `Δ(r^α f^β) = c(r) r^α f^β`.
pub fn power_product_coefficient(
    alpha: f64,
    beta: f64,
    model: &DensityModel,
    r: f64,
) -> Result<f64> {
    let rr = Radius::new(r)?;
    let l = model.log_df(rr);
    Ok(alpha * (alpha - 1.0) / (r * r)
        + alpha * (2.0 * beta + 1.0) * l / r
        + beta * model.dd_ratio(rr)
        + beta * beta * l * l)
}

/// `a (f'/f)^2 - b f''/f` on `X^{p,q}` in the closed form
/// `4(a-b)λ0 + q(q(a-b)+b)/sinh²r + p((a-b)(p+2q)+b)/(4 sinh²(r/2))`.
pub fn hilfe_rhs(a: f64, b: f64, p: u32, q: u32, r: f64) -> Result<f64> {
    SpaceSpec::damek_ricci(p, q)?;
    let r = Radius::new(r)?.get();
    let (pf, qf) = (f64::from(p), f64::from(q));
    let lambda0 = (pf + 2.0 * qf).powi(2) / 16.0;
    let d = a - b;
    Ok(4.0 * d * lambda0
        + qf * (qf * d + b) * csch2(r)
        + pf * (d * (pf + 2.0 * qf) + b) / 4.0 * csch2(0.5 * r))
}

/// The derivative-side expression `a (f'/f)^2 - b f''/f` evaluated from the
/// model's ratios.
pub fn hilfe_lhs(a: f64, b: f64, model: &DensityModel, r: f64) -> Result<f64> {
    let r = Radius::new(r)?;
    let l = model.log_df(r);
    Ok(a * l * l - b * model.dd_ratio(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(s: &str) -> DensityModel {
        DensityModel::new(s.parse().unwrap())
    }

    #[test]
    fn laplacian_examples() {
        let e3 = model("euclidean:3");
        assert!((laplacian_radial(&RadialScalar::power(2.0), &e3, 1.0).unwrap() - 6.0).abs() < 1e-14);
        let dr = model("dr:2,1");
        assert_eq!(laplacian_radial(&RadialScalar::constant(3.0), &dr, 0.7).unwrap(), 0.0);
        let expect = -0.25 + 0.5 * (1.0 / 1f64.tanh() + 1.0 / 2f64.tanh());
        let got = laplacian_radial(&RadialScalar::ln(), &dr, 2.0).unwrap();
        assert!((got - expect).abs() < 1e-14);
        assert!((got - 0.9251750).abs() < 1e-7);
        assert!(laplacian_radial(&RadialScalar::ln(), &dr, 0.0).is_err());
    }

    #[test]
    fn p_laplacian_examples() {
        let e3 = model("euclidean:3");
        let e4 = model("euclidean:4");
        let r2 = RadialScalar::power(2.0);
        assert!((p_laplacian_radial(&r2, &e3, 2.0, 1.0).unwrap() - 6.0).abs() < 1e-14);
        assert!((p_laplacian_radial(&RadialScalar::power(1.0), &e4, 3.0, 2.0).unwrap() - 1.5).abs() < 1e-14);
        assert!((p_laplacian_radial(&r2, &e4, 3.0, 1.0).unwrap() - 20.0).abs() < 1e-13);
        assert!(p_laplacian_radial(&r2, &e4, 1.0, 1.0).is_err());
        assert!(p_laplacian_radial(&r2, &e4, 3.0, -1.0).is_err());
    }

    #[test]
    fn power_product_examples() {
        let dr = model("dr:2,1");
        assert_eq!(power_product_coefficient(0.0, 0.0, &dr, 1.3).unwrap(), 0.0);
        let e3 = model("euclidean:3");
        assert!((power_product_coefficient(2.0, 0.0, &e3, 1.0).unwrap() - 6.0).abs() < 1e-14);
        let c = power_product_coefficient(0.5, -0.5, &dr, 2.0).unwrap();
        assert!((c + 1.2245098).abs() < 1e-6, "{c}");
    }

    #[test]
    fn hilfe_examples() {
        // The closed form gives -(λ0 + sinh terms) for (a,b) = (1/4,1/2).
        let v = hilfe_rhs(0.25, 0.5, 2, 1, 2.0).unwrap();
        assert!((v + 1.1620098).abs() < 1e-6, "{v}");
        assert_eq!(hilfe_rhs(0.0, 0.0, 4, 3, 1.7).unwrap(), 0.0);
        let pp = 2.0;
        let v = hilfe_rhs(1.0 - pp * (pp - 1.0), -pp * (pp - 1.0), 4, 2, 1.0).unwrap();
        let expect = 16.0 + 24.0 / (4.0 * 0.5f64.sinh().powi(2));
        assert!((v - expect).abs() < 1e-12);
        assert!((v - 38.096).abs() < 1e-3);
        assert!(hilfe_rhs(1.0, 1.0, 6, 3, 1.0).is_err());
    }
}
