//! The catalog of closed-form harmonic manifolds.
//!
//! Three families are supported: flat space `R^n`, real hyperbolic space
//! `H^n` of curvature -1, and the Damek-Ricci spaces `X^{p,q}` of dimension
//! `p + q + 1`. Each space is described by a [`SpaceSpec`]; its radial volume
//! density and the associated geometric constants live in a [`DensityModel`].
//!
//! Every evaluator on [`DensityModel`] takes a [`Radius`], which can only be
//! constructed for `r > 0`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::radial::RadialScalar;

/// Below this radius the density and its ratios switch to their leading
/// small-radius series.
pub const SERIES_RADIUS: f64 = 1e-6;

/// A strictly positive geodesic radius.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct Radius(f64);

impl Radius {
    pub fn new(r: f64) -> Result<Self> {
        if r > 0.0 && r.is_finite() {
            Ok(Radius(r))
        } else {
            Err(Error::Domain(format!("radius must be positive and finite, got {r}")))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }

    /// Used by internal loops whose nodes are positive by construction.
    #[inline]
    pub(crate) fn trusted(r: f64) -> Self {
        debug_assert!(r > 0.0, "radius {r}");
        Radius(r)
    }
}

/// Identifies one harmonic manifold of the catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpaceSpec {
    Euclidean { n: u32 },
    RealHyperbolic { n: u32 },
    DamekRicci { p: u32, q: u32 },
}

impl SpaceSpec {
    pub fn euclidean(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::Validation(format!("n must be at least 2, got {n}")));
        }
        Ok(SpaceSpec::Euclidean { n })
    }

    pub fn real_hyperbolic(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::Validation(format!("n must be at least 2, got {n}")));
        }
        Ok(SpaceSpec::RealHyperbolic { n })
    }

    pub fn damek_ricci(p: u32, q: u32) -> Result<Self> {
        if !p.is_multiple_of(2) {
            return Err(Error::Validation("p must be even".into()));
        }
        if p < 2 {
            return Err(Error::Validation("p must be at least 2".into()));
        }
        if q < 1 {
            return Err(Error::Validation("q must be at least 1".into()));
        }
        let verdict = validate_heisenberg_params(p, q);
        if !verdict.admissible {
            return Err(Error::Validation(format!(
                "(p,q) = ({p},{q}) is not admissible: p must be a positive multiple of {}",
                verdict.required_factor
            )));
        }
        Ok(SpaceSpec::DamekRicci { p, q })
    }

    pub fn dimension(&self) -> u32 {
        match *self {
            SpaceSpec::Euclidean { n } | SpaceSpec::RealHyperbolic { n } => n,
            SpaceSpec::DamekRicci { p, q } => p + q + 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SpaceSpec::Euclidean { .. } => "euclidean",
            SpaceSpec::RealHyperbolic { .. } => "real_hyperbolic",
            SpaceSpec::DamekRicci { .. } => "damek_ricci",
        }
    }

    pub fn is_flat(&self) -> bool {
        matches!(self, SpaceSpec::Euclidean { .. })
    }

    /// `(p, q)` for Damek-Ricci spaces.
    pub fn heisenberg_params(&self) -> Option<(u32, u32)> {
        match *self {
            SpaceSpec::DamekRicci { p, q } => Some((p, q)),
            _ => None,
        }
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SpaceSpec::Euclidean { n } => write!(f, "euclidean:{n}"),
            SpaceSpec::RealHyperbolic { n } => write!(f, "hyperbolic:{n}"),
            SpaceSpec::DamekRicci { p, q } => write!(f, "dr:{p},{q}"),
        }
    }
}

impl FromStr for SpaceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_space(s)
    }
}

fn parse_uint(field: &str, text: &str, whole: &str) -> Result<u32> {
    text.trim()
        .parse::<u32>()
        .map_err(|_| Error::Parse(format!("bad {field} `{text}` in space descriptor `{whole}`")))
}

/// Parses `euclidean:<n>`, `hyperbolic:<n>` or `dr:<p>,<q>`.
pub fn parse_space(text: &str) -> Result<SpaceSpec> {
    let trimmed = text.trim();
    let (kind, args) = trimmed.split_once(':').ok_or_else(|| {
        Error::Parse(format!(
            "space descriptor `{trimmed}` must look like euclidean:<n>, hyperbolic:<n> or dr:<p>,<q>"
        ))
    })?;
    match kind.trim().to_ascii_lowercase().as_str() {
        "euclidean" => SpaceSpec::euclidean(parse_uint("n", args, trimmed)?),
        "hyperbolic" => SpaceSpec::real_hyperbolic(parse_uint("n", args, trimmed)?),
        "dr" => {
            let (p, q) = args
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("expected dr:<p>,<q>, got `{trimmed}`")))?;
            SpaceSpec::damek_ricci(parse_uint("p", p, trimmed)?, parse_uint("q", q, trimmed)?)
        }
        other => Err(Error::Parse(format!("unknown space kind `{other}`"))),
    }
}

/// Outcome of the Clifford-module admissibility table for `(p, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HeisenbergVerdict {
    pub admissible: bool,
    /// `p` must be a positive multiple of this power of two.
    pub required_factor: u128,
}

/// Writes `q = 8a + m` with `m` in `1..=8` and checks that `p = 2^e b` for
/// some `b >= 1`, where `e` is the table exponent for `(a, m)`.
pub fn validate_heisenberg_params(p: u32, q: u32) -> HeisenbergVerdict {
    if q == 0 {
        return HeisenbergVerdict { admissible: false, required_factor: 0 };
    }
    let a = (q - 1) / 8;
    let m = q - 8 * a;
    let offset = match m {
        1 => 1,
        2 | 3 => 2,
        4..=7 => 3,
        _ => 4,
    };
    let e = 4 * u64::from(a) + offset;
    if e >= 127 {
        return HeisenbergVerdict { admissible: false, required_factor: u128::MAX };
    }
    let factor = 1u128 << e;
    let p = u128::from(p);
    HeisenbergVerdict { admissible: p >= factor && p % factor == 0, required_factor: factor }
}

/// The spaces exercised by the verification suite and `spaces list`.
pub fn catalog() -> Vec<SpaceSpec> {
    vec![
        SpaceSpec::Euclidean { n: 3 },
        SpaceSpec::Euclidean { n: 4 },
        SpaceSpec::Euclidean { n: 5 },
        SpaceSpec::Euclidean { n: 6 },
        SpaceSpec::RealHyperbolic { n: 3 },
        SpaceSpec::RealHyperbolic { n: 4 },
        SpaceSpec::RealHyperbolic { n: 5 },
        SpaceSpec::DamekRicci { p: 2, q: 1 },
        SpaceSpec::DamekRicci { p: 4, q: 2 },
        SpaceSpec::DamekRicci { p: 4, q: 3 },
        SpaceSpec::DamekRicci { p: 8, q: 7 },
    ]
}

/// The Damek-Ricci members of [`catalog`].
pub fn damek_ricci_catalog() -> Vec<SpaceSpec> {
    catalog().into_iter().filter(|s| s.heisenberg_params().is_some()).collect()
}

/// `coth(x) - 1` without cancellation for large `x`.
#[inline]
pub(crate) fn coth_minus_one(x: f64) -> f64 {
    2.0 / (2.0 * x).exp_m1()
}

/// `ln sinh x` for `x > 0`, finite where `sinh x` overflows.
pub(crate) fn ln_sinh(x: f64) -> f64 {
    if x < 20.0 {
        x.sinh().ln()
    } else {
        x - std::f64::consts::LN_2 + (-(-2.0 * x).exp()).ln_1p()
    }
}

pub(crate) fn ln_cosh(x: f64) -> f64 {
    x - std::f64::consts::LN_2 + (-2.0 * x).exp().ln_1p()
}

#[inline]
pub(crate) fn csch2(x: f64) -> f64 {
    let s = x.sinh();
    1.0 / (s * s)
}

/// Closed-form radial volume density of a catalog space, with its
/// derivatives and geometric constants.
///
/// `vol(S_r) = omega_n f(r)`. Ratios such as `f'/f` are evaluated directly
/// from their closed forms rather than by dividing large products.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityModel {
    pub spec: SpaceSpec,
    pub n: u32,
    /// Mean curvature of horospheres, equal to the Cheeger constant.
    pub h: f64,
    /// Bottom of the L^2 spectrum of `-Δ`; always `h^2 / 4`.
    pub lambda0: f64,
    /// Scalar curvature at the pole.
    pub scalar_curvature_pole: Option<f64>,
}

pub fn build_density(spec: SpaceSpec) -> DensityModel {
    let n = spec.dimension();
    let nf = f64::from(n);
    let (h, s) = match spec {
        SpaceSpec::Euclidean { .. } => (0.0, 0.0),
        SpaceSpec::RealHyperbolic { .. } => (nf - 1.0, -nf * (nf - 1.0)),
        SpaceSpec::DamekRicci { p, q } => {
            let (p, q) = (f64::from(p), f64::from(q));
            ((p + 2.0 * q) / 2.0, -nf * (p + 4.0 * q) / 4.0)
        }
    };
    DensityModel { spec, n, h, lambda0: h * h / 4.0, scalar_curvature_pole: Some(s) }
}

impl DensityModel {
    pub fn new(spec: SpaceSpec) -> Self {
        build_density(spec)
    }

    fn nm1(&self) -> f64 {
        f64::from(self.n) - 1.0
    }

    /// Coefficient `c` in `f(r) = r^{n-1}(1 + c r^2 + O(r^4))`.
    fn series_c(&self) -> f64 {
        -self.scalar_curvature_pole.unwrap_or(0.0) / (6.0 * f64::from(self.n))
    }

    pub fn log_f(&self, r: Radius) -> f64 {
        let r = r.get();
        if r < SERIES_RADIUS {
            return self.nm1() * r.ln() + (self.series_c() * r * r).ln_1p();
        }
        match self.spec {
            SpaceSpec::Euclidean { .. } => self.nm1() * r.ln(),
            SpaceSpec::RealHyperbolic { .. } => self.nm1() * ln_sinh(r),
            SpaceSpec::DamekRicci { p, q } => {
                let (p, q) = (f64::from(p), f64::from(q));
                (p + q) * (std::f64::consts::LN_2 + ln_sinh(0.5 * r)) + q * ln_cosh(0.5 * r)
            }
        }
    }

    /// Volume density `f(r)`.
    pub fn f(&self, r: Radius) -> f64 {
        let x = r.get();
        if x < SERIES_RADIUS {
            return x.powi(self.n as i32 - 1) * (1.0 + self.series_c() * x * x);
        }
        match self.spec {
            SpaceSpec::Euclidean { .. } => x.powi(self.n as i32 - 1),
            _ => self.log_f(r).exp(),
        }
    }

    /// The second closed form `2^p sinh^p(r/2) sinh^q(r)` of the Damek-Ricci
    /// density; `None` for the other families.
    pub fn f_alt(&self, r: Radius) -> Option<f64> {
        let x = r.get();
        self.spec.heisenberg_params().map(|(p, q)| {
            let (p, q) = (f64::from(p), f64::from(q));
            (p * (2.0 * (0.5 * x).sinh()).ln() + q * x.sinh().ln()).exp()
        })
    }

    /// `f'(r) / f(r)`, the mean curvature of the geodesic sphere of radius r.
    pub fn log_df(&self, r: Radius) -> f64 {
        let x = r.get();
        if x < SERIES_RADIUS {
            return self.nm1() / x + 2.0 * self.series_c() * x;
        }
        match self.spec {
            SpaceSpec::Euclidean { .. } => self.nm1() / x,
            SpaceSpec::RealHyperbolic { .. } => self.nm1() / x.tanh(),
            SpaceSpec::DamekRicci { p, q } => {
                0.5 * f64::from(p) / (0.5 * x).tanh() + f64::from(q) / x.tanh()
            }
        }
    }

    /// `(f'/f)'(r)`.
    pub fn log_df_prime(&self, r: Radius) -> f64 {
        let x = r.get();
        if x < SERIES_RADIUS {
            return -self.nm1() / (x * x) + 2.0 * self.series_c();
        }
        match self.spec {
            SpaceSpec::Euclidean { .. } => -self.nm1() / (x * x),
            SpaceSpec::RealHyperbolic { .. } => -self.nm1() * csch2(x),
            SpaceSpec::DamekRicci { p, q } => {
                -0.25 * f64::from(p) * csch2(0.5 * x) - f64::from(q) * csch2(x)
            }
        }
    }

    /// `f''(r) / f(r)`.
    pub fn dd_ratio(&self, r: Radius) -> f64 {
        let l = self.log_df(r);
        self.log_df_prime(r) + l * l
    }

    pub fn df(&self, r: Radius) -> f64 {
        self.f(r) * self.log_df(r)
    }

    pub fn ddf(&self, r: Radius) -> f64 {
        self.f(r) * self.dd_ratio(r)
    }

    /// `f'/f - h >= 0`, computed without cancellation at large radius.
    pub fn mean_curvature_excess(&self, r: Radius) -> f64 {
        let x = r.get();
        match self.spec {
            SpaceSpec::Euclidean { .. } => self.log_df(r),
            SpaceSpec::RealHyperbolic { .. } if x >= SERIES_RADIUS => {
                self.nm1() * coth_minus_one(x)
            }
            SpaceSpec::DamekRicci { p, q } if x >= SERIES_RADIUS => {
                0.5 * f64::from(p) * coth_minus_one(0.5 * x) + f64::from(q) * coth_minus_one(x)
            }
            _ => self.log_df(r) - self.h,
        }
    }

    /// `(ln f, f'/f, (f'/f)')` as a jet in r.
    pub fn log_f_jet(&self, r: Radius) -> Jet {
        Jet::new(self.log_f(r), self.log_df(r), self.log_df_prime(r))
    }

    /// `(2 f f'' - f'^2) / (4 f^2)` in its simplified per-family form.
    pub fn hardy_potential(&self, r: Radius) -> f64 {
        let x = r.get();
        match self.spec {
            SpaceSpec::Euclidean { n } => {
                let n = f64::from(n);
                (n - 1.0) * (n - 3.0) / 4.0 / (x * x)
            }
            SpaceSpec::RealHyperbolic { n } => {
                let n = f64::from(n);
                self.lambda0 + (n - 1.0) * (n - 3.0) / 4.0 * csch2(x)
            }
            SpaceSpec::DamekRicci { p, q } => {
                let (p, q) = (f64::from(p), f64::from(q));
                self.lambda0
                    + q * (q - 2.0) / 4.0 * csch2(x)
                    + p * (p + 2.0 * q - 2.0) / 16.0 * csch2(0.5 * x)
            }
        }
    }

    /// The same quantity from the raw ratios `f''/f` and `f'/f`; kept for
    /// cross-checks only.
    pub fn hardy_potential_raw(&self, r: Radius) -> f64 {
        let l = self.log_df(r);
        0.5 * self.dd_ratio(r) - 0.25 * l * l
    }

    /// `f^{1/(n-1)}`, the default auxiliary function of the gamma family.
    pub fn default_aux_h(&self) -> RadialScalar {
        let model = *self;
        let k = 1.0 / self.nm1();
        RadialScalar::new("f^(1/(n-1))", move |r| {
            (model.log_f_jet(Radius::trusted(r)) * k).exp()
        })
    }

    /// The volume density as a radial scalar.
    pub fn density_scalar(&self) -> RadialScalar {
        let model = *self;
        RadialScalar::new("f", move |r| {
            let r = Radius::trusted(r);
            Jet::new(model.f(r), model.df(r), model.ddf(r))
        })
    }
}
