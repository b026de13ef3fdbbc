use serde::Serialize;

use crate::error::{Error, Result};

use super::MonotoneFn;

/// Outcome of probing a function for a minimum slope.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotoneAudit {
    pub pass: bool,
    pub min_slope: f64,
    /// Left end of the probe panel where the minimum slope occurs.
    pub min_slope_at: f64,
    pub panels: usize,
}

/// Checks every difference quotient on an `n_probe`-panel uniform grid
/// against `min_slope`.
pub fn verify_monotone(f: &MonotoneFn, n_probe: usize, min_slope: f64) -> Result<MonotoneAudit> {
    if n_probe < 2 {
        return Err(Error::InvalidArgument(format!(
            "n_probe must be at least 2, got {n_probe}"
        )));
    }
    let xs = f.domain().grid(n_probe);
    let ys: Vec<f64> = xs.iter().map(|&x| f.value(x)).collect();
    let (min_slope_found, at) = xs
        .windows(2)
        .zip(ys.windows(2))
        .map(|(x, y)| ((y[1] - y[0]) / (x[1] - x[0]), x[0]))
        .fold((f64::INFINITY, xs[0]), |best, cur| {
            if cur.0 < best.0 {
                cur
            } else {
                best
            }
        });
    Ok(MonotoneAudit {
        pass: min_slope_found >= min_slope,
        min_slope: min_slope_found,
        min_slope_at: at,
        panels: n_probe,
    })
}
