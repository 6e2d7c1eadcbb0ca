use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::verify::log_space;

/// Radii to evaluate on: `lo:hi:step` (inclusive, linear) or
/// `log:lo:hi:count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Grid {
    Linear { lo: f64, hi: f64, step: f64 },
    Log { lo: f64, hi: f64, count: usize },
}

impl Default for Grid {
    fn default() -> Self {
        Grid::Log { lo: 1e-3, hi: 60.0, count: 400 }
    }
}

fn number(field: &str, text: &str) -> Result<f64> {
    let v: f64 = text.trim().parse().map_err(|_| Error::Parse(format!("bad grid {field} `{text}`")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Parse(format!("grid {field} must be finite, got `{text}`")))
    }
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let grid = match parts.as_slice() {
            ["log", lo, hi, count] => Grid::Log {
                lo: number("lo", lo)?,
                hi: number("hi", hi)?,
                count: count.trim().parse().map_err(|_| Error::Parse(format!("bad grid count `{count}`")))?,
            },
            [lo, hi, step] => Grid::Linear { lo: number("lo", lo)?, hi: number("hi", hi)?, step: number("step", step)? },
            _ => return Err(Error::Parse(format!("grid `{s}` must be lo:hi:step or log:lo:hi:count"))),
        };
        grid.validate()?;
        Ok(grid)
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Grid::Linear { lo, hi, step } => write!(f, "{lo}:{hi}:{step}"),
            Grid::Log { lo, hi, count } => write!(f, "log:{lo}:{hi}:{count}"),
        }
    }
}

impl Grid {
    fn validate(&self) -> Result<()> {
        let (lo, hi) = match *self {
            Grid::Linear { lo, hi, step } => {
                if !(step > 0.0) {
                    return Err(Error::Validation(format!("grid step must be positive, got {step}")));
                }
                (lo, hi)
            }
            Grid::Log { lo, hi, count } => {
                if count < 2 {
                    return Err(Error::Validation(format!("log grid needs at least 2 points, got {count}")));
                }
                (lo, hi)
            }
        };
        if !(lo > 0.0) {
            return Err(Error::Validation(format!("grid must start above the pole, got lo = {lo}")));
        }
        if hi < lo {
            return Err(Error::Validation(format!("grid upper end {hi} is below lower end {lo}")));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        match *self {
            Grid::Linear { lo, hi, step } => {
                // Index-based so that rounding never drops or adds the end point.
                let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
                (0..count).map(|i| lo + i as f64 * step).collect()
            }
            Grid::Log { lo, hi, count } => log_space(lo, hi, count),
        }
    }
}
