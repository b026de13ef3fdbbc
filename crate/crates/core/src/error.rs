use thiserror::Error;

use crate::enclosure::Enclosure;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A point or range fell outside the interval an operation is defined on.
    #[error("{what} = {value} lies outside [{lo}, {hi}]")]
    Domain {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    /// A sweep grid point is out of range; `index` is its row-major position.
    #[error("grid point #{index} (a = {a}, b = {b}) lies outside the rectangle")]
    GridDomain { index: usize, a: f64, b: f64 },

    /// Bisection could not reach the requested width.
    #[error("inversion of y = {y} stalled at width {width:e} after {iterations} iterations")]
    Convergence {
        y: f64,
        width: f64,
        iterations: usize,
    },

    /// Refinement hit the panel budget before reaching the target width.
    #[error("panel budget exhausted at {panels} panels; best enclosure has width {:e}", best.width())]
    BudgetExceeded { best: Enclosure, panels: usize },

    #[error("merkle bound needs both intervals to start at 0 (got alpha1 = {alpha1}, beta1 = {beta1})")]
    UnsupportedOrigin { alpha1: f64, beta1: f64 },

    #[error("invalid function: {0}")]
    InvalidFunction(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Two independently computed enclosures of the same quantity are disjoint.
    #[error("inconsistent enclosures for {what}: {first} vs {second}")]
    Inconsistent {
        what: &'static str,
        first: Enclosure,
        second: Enclosure,
    },
}

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64, lo: f64, hi: f64) -> Self {
        Error::Domain { what, value, lo, hi }
    }

    /// True for the errors a caller should treat as "input out of range".
    pub fn is_domain(&self) -> bool {
        matches!(self, Error::Domain { .. } | Error::GridDomain { .. })
    }
}
