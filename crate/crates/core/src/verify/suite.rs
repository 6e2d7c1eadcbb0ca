//! Smooth compactly supported radial test functions.

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::radial::RadialScalar;

/// A radial test function with its support.
#[derive(Debug, Clone)]
pub struct TestFunction {
    pub scalar: RadialScalar,
    pub support: (f64, f64),
}

impl TestFunction {
    /// Mollifier `exp(-1/(1-s²))`, `s = (r - center)/half_width`.
    pub fn bump(center: f64, half_width: f64) -> Self {
        let scalar = RadialScalar::new(format!("bump(c={center},w={half_width})"), move |r| {
            bump_jet(Jet::var(r), center, half_width)
        });
        TestFunction { scalar, support: (center - half_width, center + half_width) }
    }

    /// Gaussian of width `sigma` centred at `center`, cut off smoothly by a
    /// mollifier on `[lo, hi]`.
    pub fn truncated_gaussian(center: f64, sigma: f64, lo: f64, hi: f64) -> Self {
        let (c, w) = (0.5 * (lo + hi), 0.5 * (hi - lo));
        let scalar = RadialScalar::new(format!("gauss(c={center},s={sigma})"), move |r| {
            let x = Jet::var(r);
            let b = bump_jet(x, c, w);
            if b.v == 0.0 {
                return b;
            }
            let z = (x - center) * (1.0 / sigma);
            b * (z * z * -0.5).exp()
        });
        TestFunction { scalar, support: (lo, hi) }
    }

    pub fn zero() -> Self {
        TestFunction { scalar: RadialScalar::constant(0.0), support: (1.0, 2.0) }
    }

    pub fn name(&self) -> &str {
        self.scalar.name()
    }

    pub fn jet(&self, r: f64) -> Jet {
        if r <= self.support.0 || r >= self.support.1 {
            Jet::zero()
        } else {
            self.scalar.jet(r)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.name() == "0"
    }
}

/// Normalised so the peak value is 1.
fn bump_jet(x: Jet, center: f64, half_width: f64) -> Jet {
    let s = (x - center) * (1.0 / half_width);
    if s.v.abs() >= 1.0 {
        return Jet::zero();
    }
    ((Jet::constant(1.0) - s * s).recip() * -1.0 + 1.0).exp()
}

#[derive(Debug, Clone)]
pub struct TestFunctionSuite {
    pub members: Vec<TestFunction>,
}

/// `count` bumps spread over `[lo, hi]` followed by two truncated Gaussians.
pub fn default_suite(support: (f64, f64), count: usize) -> Result<TestFunctionSuite> {
    let (lo, hi) = support;
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::Domain(format!("test-function support must satisfy 0 < lo < hi, got [{lo}, {hi}]")));
    }
    if count == 0 {
        return Err(Error::Domain("suite needs at least one member".into()));
    }
    let len = hi - lo;
    let mut members = Vec::with_capacity(count + 2);
    for i in 0..count {
        let c = lo + len * (i as f64 + 1.0) / (count as f64 + 1.0);
        let room = (c - lo).min(hi - c);
        // Widths cycle through four sizes so neighbours overlap.
        let w = room * [1.0, 0.55, 0.8, 0.35][i % 4];
        members.push(TestFunction::bump(c, w));
    }
    members.push(TestFunction::truncated_gaussian(lo + 0.35 * len, 0.15 * len, lo, hi));
    members.push(TestFunction::truncated_gaussian(lo + 0.7 * len, 0.25 * len, lo, hi));
    Ok(TestFunctionSuite { members })
}
