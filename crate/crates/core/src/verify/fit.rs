//! Power-law fits in log-log coordinates.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerFit {
    pub slope: f64,
    /// `ln` of the coefficient.
    pub intercept: f64,
    pub max_residual: f64,
}

/// Least-squares line through `(ln r, ln value)`.
pub fn asymptotics_fit(samples: &[(f64, f64)]) -> Result<PowerFit> {
    if samples.len() < 5 {
        return Err(Error::Precondition(format!("need at least 5 samples, got {}", samples.len())));
    }
    if let Some(&(r, v)) = samples.iter().find(|&&(r, v)| !(r > 0.0 && v > 0.0)) {
        return Err(Error::Domain(format!("log-log fit needs positive samples, got ({r}, {v})")));
    }
    let (rmin, rmax) = samples
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(a, b), &(r, _)| (a.min(r), b.max(r)));
    if rmax / rmin < 100.0 * (1.0 - 1e-12) {
        return Err(Error::Precondition(format!(
            "samples must span at least two decades, got [{rmin:e}, {rmax:e}]"
        )));
    }
    let pts: Vec<(f64, f64)> = samples.iter().map(|&(r, v)| (r.ln(), v.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx = pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    let sxy = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let max_residual =
        pts.iter().map(|p| (p.1 - intercept - slope * p.0).abs()).fold(0.0, f64::max);
    Ok(PowerFit { slope, intercept, max_residual })
}

/// `count` log-spaced points on `[lo, hi]`.
pub fn log_space(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..count).map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let s: Vec<_> = log_space(1e-4, 1e-2, 9).into_iter().map(|r| (r, 3.0 * r.powi(-2))).collect();
        let fit = asymptotics_fit(&s).unwrap();
        assert!((fit.slope + 2.0).abs() < 1e-12);
        assert!((fit.intercept - 3f64.ln()).abs() < 1e-10);
    }

    #[test]
    fn rejects_bad_samples() {
        let s: Vec<_> = log_space(1.0, 10.0, 9).into_iter().map(|r| (r, r)).collect();
        assert!(asymptotics_fit(&s).is_err());
        assert!(asymptotics_fit(&[(1.0, 1.0); 3]).is_err());
        let mut s: Vec<_> = log_space(1.0, 1e3, 9).into_iter().map(|r| (r, r)).collect();
        s[2].1 = 0.0;
        assert!(matches!(asymptotics_fit(&s), Err(Error::Domain(_))));
    }
}
