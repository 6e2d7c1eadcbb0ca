//! Bottom of the Dirichlet spectrum of the radial operator
//! `-u'' - (f'/f) u' + V u` on a geodesic ball.
//!
//! The weak form `∫ f u'v' + ∫ f V u v = λ ∫ f u v` is discretised on the
//! nodes `r_i = i·mesh` with piecewise-linear stiffness (density at element
//! midpoints) and a lumped mass. Node 0 carries the natural condition, node
//! `N` the Dirichlet one. The pencil is symmetrised as `M^{-1/2} K M^{-1/2}`
//! in log space, so that densities spanning hundreds of orders of magnitude
//! never overflow, and its smallest eigenvalue is isolated by Sturm-sequence
//! bisection.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::space::{DensityModel, Radius};

const BISECTION_TOL: f64 = 1e-12;

type PotentialFn = dyn Fn(f64) -> f64 + Send + Sync;

#[derive(Clone)]
pub struct EigenProblem {
    pub model: DensityModel,
    /// Optional potential `V`; node 0 evaluates it at `mesh/4`.
    pub potential: Option<Arc<PotentialFn>>,
    pub radius: f64,
    pub mesh: f64,
}

impl fmt::Debug for EigenProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EigenProblem")
            .field("model", &self.model)
            .field("potential", &self.potential.is_some())
            .field("radius", &self.radius)
            .field("mesh", &self.mesh)
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenEstimate {
    pub lambda: f64,
    pub lambda_half_mesh: f64,
    /// Richardson extrapolation assuming an `O(mesh²)` error.
    pub extrapolated: f64,
    pub target_lambda0: f64,
    /// `extrapolated - λ0`.
    pub gap: f64,
    pub nodes: usize,
}

impl EigenProblem {
    pub fn new(model: DensityModel, radius: f64, mesh: f64) -> Self {
        EigenProblem { model, potential: None, radius, mesh }
    }

    pub fn with_potential(mut self, v: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.potential = Some(Arc::new(v));
        self
    }

    fn node_count(&self, mesh: f64) -> Result<usize> {
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(Error::Domain(format!("ball radius must be positive, got {}", self.radius)));
        }
        if !(mesh > 0.0) {
            return Err(Error::Domain(format!("mesh must be positive, got {mesh}")));
        }
        let n = (self.radius / mesh).round();
        if n < 100.0 {
            return Err(Error::Precondition(format!(
                "mesh {mesh} resolves R = {} with only {n} intervals; at least 100 are needed",
                self.radius
            )));
        }
        Ok(n as usize)
    }

    /// Diagonal and off-diagonal of the symmetrised operator.
    fn assemble(&self, mesh: f64) -> Result<(Vec<f64>, Vec<f64>)> {
        let n_int = self.node_count(mesh)?;
        let h = self.radius / n_int as f64;
        let m = &self.model;
        let dim = f64::from(m.n);
        // log of element densities, element e spans [e h, (e+1) h].
        let log_fmid: Vec<f64> =
            (0..n_int).map(|e| m.log_f(Radius::trusted((e as f64 + 0.5) * h))).collect();
        // log of lumped masses for the free nodes 0..n_int-1.
        let log_mass: Vec<f64> = (0..n_int)
            .map(|i| {
                if i == 0 {
                    dim * (0.5 * h).ln() - dim.ln()
                } else {
                    h.ln() + m.log_f(Radius::trusted(i as f64 * h))
                }
            })
            .collect();
        let mut diag = Vec::with_capacity(n_int);
        let mut off = Vec::with_capacity(n_int - 1);
        for i in 0..n_int {
            let mut a = (log_fmid[i] - log_mass[i]).exp() / h;
            if i > 0 {
                a += (log_fmid[i - 1] - log_mass[i]).exp() / h;
            }
            if let Some(v) = &self.potential {
                let r = if i == 0 { 0.25 * h } else { i as f64 * h };
                a += v(r);
            }
            diag.push(a);
            if i + 1 < n_int {
                off.push(-(log_fmid[i] - 0.5 * (log_mass[i] + log_mass[i + 1])).exp() / h);
            }
        }
        Ok((diag, off))
    }

    /// Smallest eigenvalue at the given mesh.
    pub fn lowest(&self, mesh: f64) -> Result<f64> {
        let (diag, off) = self.assemble(mesh)?;
        smallest_eigenvalue(&diag, &off)
    }

    /// Estimates at `mesh` and `mesh/2` with their extrapolation.
    pub fn bottom_eigenvalue(&self) -> Result<EigenEstimate> {
        let nodes = self.node_count(self.mesh)?;
        let (coarse, fine) = rayon::join(|| self.lowest(self.mesh), || self.lowest(0.5 * self.mesh));
        let (coarse, fine) = (coarse?, fine?);
        let extrapolated = fine + (fine - coarse) / 3.0;
        Ok(EigenEstimate {
            lambda: coarse,
            lambda_half_mesh: fine,
            extrapolated,
            target_lambda0: self.model.lambda0,
            gap: extrapolated - self.model.lambda0,
            nodes,
        })
    }
}

/// Number of eigenvalues below `x` of the symmetric tridiagonal matrix.
fn count_below(diag: &[f64], off: &[f64], x: f64) -> Option<usize> {
    let mut count = 0;
    let mut d = 1.0;
    for i in 0..diag.len() {
        let b2 = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        d = diag[i] - x - if i == 0 { 0.0 } else { b2 / d };
        if d == 0.0 {
            d = -f64::EPSILON * (diag[i].abs() + x.abs()).max(f64::MIN_POSITIVE);
        }
        if !d.is_finite() {
            return None;
        }
        if d < 0.0 {
            count += 1;
        }
    }
    Some(count)
}

/// Smallest eigenvalue by bisection on the Sturm count.
pub fn smallest_eigenvalue(diag: &[f64], off: &[f64]) -> Result<f64> {
    if diag.is_empty() || off.len() + 1 != diag.len() {
        return Err(Error::Domain("malformed tridiagonal matrix".into()));
    }
    // Gershgorin bounds.
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..diag.len() {
        let left = if i > 0 { off[i - 1].abs() } else { 0.0 };
        let right = if i < off.len() { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - left - right);
        hi = hi.max(diag[i] + left + right);
    }
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::Eigen { residual: f64::NAN });
    }
    // Shrink the upper end first: the bottom eigenvalue is typically far below
    // the Gershgorin bound.
    let mut upper = lo.max(0.0) + 1.0;
    while count_below(diag, off, upper).ok_or(Error::Eigen { residual: f64::NAN })? == 0 {
        upper = upper * 2.0 + 1.0;
        if upper > hi {
            upper = hi;
            break;
        }
    }
    let (mut a, mut b) = (lo, upper);
    for _ in 0..400 {
        let mid = 0.5 * (a + b);
        if b - a <= BISECTION_TOL * mid.abs().max(1.0) {
            return Ok(mid);
        }
        match count_below(diag, off, mid) {
            Some(0) => a = mid,
            Some(_) => b = mid,
            None => return Err(Error::Eigen { residual: b - a }),
        }
    }
    Err(Error::Eigen { residual: b - a })
}
