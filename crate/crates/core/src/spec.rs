//! JSON function specifications.
//!
//! ```json
//! {"kind": "power", "exponent": 2, "domain": [0, 2]}
//! {"kind": "power", "coefficient": 3, "exponent": 0.5, "domain": [0, 4]}
//! {"kind": "affine", "slope": 2, "intercept": 1, "domain": [0, 1]}
//! {"kind": "exp", "shift": 1, "domain": [0, 1]}
//! {"kind": "table", "points": [[0, 0], [1, 1], [2, 4]]}
//! ```
//!
//! Any kind may carry `"codomain": [lo, hi]`. It is checked against the
//! function's values at the domain ends and is otherwise redundant.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::monotone::{Interval, MonotoneFn};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid `{field}`: {message}")]
    Validation { field: &'static str, message: String },
}

fn one() -> f64 {
    1.0
}

/// The canonical form always spells out `coefficient` and `shift`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FunctionSpec {
    Power {
        #[serde(default = "one")]
        coefficient: f64,
        exponent: f64,
        domain: [f64; 2],
        #[serde(default, skip_serializing_if = "Option::is_none")]
        codomain: Option<[f64; 2]>,
    },
    Affine {
        slope: f64,
        intercept: f64,
        domain: [f64; 2],
        #[serde(default, skip_serializing_if = "Option::is_none")]
        codomain: Option<[f64; 2]>,
    },
    Exp {
        #[serde(default)]
        shift: f64,
        domain: [f64; 2],
        #[serde(default, skip_serializing_if = "Option::is_none")]
        codomain: Option<[f64; 2]>,
    },
    Table {
        points: Vec<[f64; 2]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        codomain: Option<[f64; 2]>,
    },
}

/// Parses and validates a spec document.
pub fn parse_spec(text: &str) -> Result<FunctionSpec, SpecError> {
    let spec: FunctionSpec =
        serde_json::from_str(text).map_err(|e| SpecError::Parse(e.to_string()))?;
    spec.build()?;
    Ok(spec)
}

/// Tolerance for a `codomain` override against the computed end values.
const CODOMAIN_TOL: f64 = 1e-12;

fn invalid(field: &'static str) -> impl Fn(Error) -> SpecError {
    move |e| SpecError::Validation {
        field,
        message: e.to_string(),
    }
}

fn interval(field: &'static str, [lo, hi]: [f64; 2]) -> Result<Interval, SpecError> {
    Interval::new(lo, hi).map_err(invalid(field))
}

impl FunctionSpec {
    /// The function this spec describes.
    pub fn build(&self) -> Result<MonotoneFn, SpecError> {
        let (f, codomain) = match self {
            FunctionSpec::Power {
                coefficient,
                exponent,
                domain,
                codomain,
            } => {
                let d = interval("domain", *domain)?;
                let field = if !(*coefficient > 0.0 && coefficient.is_finite()) {
                    "coefficient"
                } else if d.lo() < 0.0 {
                    "domain"
                } else {
                    "exponent"
                };
                (
                    MonotoneFn::power(*coefficient, *exponent, d).map_err(invalid(field))?,
                    codomain,
                )
            }
            FunctionSpec::Affine {
                slope,
                intercept,
                domain,
                codomain,
            } => (
                MonotoneFn::affine(*slope, *intercept, interval("domain", *domain)?)
                    .map_err(invalid("slope"))?,
                codomain,
            ),
            FunctionSpec::Exp {
                shift,
                domain,
                codomain,
            } => (
                MonotoneFn::exp_shift(*shift, interval("domain", *domain)?)
                    .map_err(invalid("shift"))?,
                codomain,
            ),
            FunctionSpec::Table { points, codomain } => {
                let pts: Vec<(f64, f64)> = points.iter().map(|p| (p[0], p[1])).collect();
                (MonotoneFn::table(&pts).map_err(invalid("points"))?, codomain)
            }
        };
        if let Some([lo, hi]) = *codomain {
            let c = f.codomain();
            let off = |given: f64, actual: f64| (given - actual).abs() > CODOMAIN_TOL * actual.abs().max(1.0);
            if off(lo, c.lo()) || off(hi, c.hi()) {
                return Err(SpecError::Validation {
                    field: "codomain",
                    message: format!(
                        "[{lo}, {hi}] does not match the function's range [{}, {}]",
                        c.lo(),
                        c.hi()
                    ),
                });
            }
        }
        Ok(f)
    }

    /// Compact JSON in canonical form; [`parse_spec`] reproduces `self`.
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(self).expect("spec serialization cannot fail")
    }
}
