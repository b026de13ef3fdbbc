//! Continuous strictly increasing functions on closed intervals.
//!
//! A [`MonotoneFn`] is either one of a few closed-form families or a sampled
//! table interpolated piecewise-linearly. Both are immutable once built and
//! map the ends of their domain exactly onto the ends of their codomain.

mod audit;
mod inverse;

pub use audit::{verify_monotone, MonotoneAudit};
pub use inverse::{Bisection, ConjugatePair, DEFAULT_INVERSE_TOL, DEFAULT_MAX_BISECTIONS};

use serde::{Deserialize, Serialize};

use crate::enclosure::Enclosure;
use crate::error::{Error, Result};

/// A proper closed interval `[lo, hi]` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "interval endpoints must be finite, got [{lo}, {hi}]"
            )));
        }
        if lo >= hi {
            return Err(Error::InvalidArgument(format!(
                "degenerate interval [{lo}, {hi}]"
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub(crate) fn check(&self, what: &'static str, x: f64) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::domain(what, x, self.lo, self.hi))
        }
    }

    /// `n + 1` evenly spaced points from `lo` to `hi`, both ends exact.
    pub fn grid(&self, n: usize) -> Vec<f64> {
        let step = self.len() / n as f64;
        (0..=n)
            .map(|i| {
                if i == n {
                    self.hi
                } else {
                    (self.lo + i as f64 * step).min(self.hi)
                }
            })
            .collect()
    }
}

/// Curvature of a function over a range, as far as it is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Linear,
    Convex,
    Concave,
    Unknown,
}

impl Shape {
    /// Shape of the inverse of an increasing function with this shape.
    pub fn inverted(self) -> Shape {
        match self {
            Shape::Convex => Shape::Concave,
            Shape::Concave => Shape::Convex,
            s => s,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Body {
    /// `coefficient * x^exponent` on a nonnegative domain.
    Power { coefficient: f64, exponent: f64 },
    /// `slope * x + intercept`.
    Affine { slope: f64, intercept: f64 },
    /// `exp(x) - shift`.
    ExpShift { shift: f64 },
    /// Piecewise-linear interpolation through `(xs[i], ys[i])`.
    Table { xs: Vec<f64>, ys: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneFn {
    domain: Interval,
    codomain: Interval,
    body: Body,
}

impl MonotoneFn {
    pub fn power(coefficient: f64, exponent: f64, domain: Interval) -> Result<Self> {
        if !(coefficient.is_finite() && coefficient > 0.0) {
            return Err(Error::InvalidFunction(format!(
                "coefficient must be positive, got {coefficient}"
            )));
        }
        if !(exponent.is_finite() && exponent > 0.0) {
            return Err(Error::InvalidFunction(format!(
                "exponent must be positive, got {exponent}"
            )));
        }
        if domain.lo < 0.0 {
            return Err(Error::InvalidFunction(format!(
                "power family needs a nonnegative domain, got [{}, {}]",
                domain.lo, domain.hi
            )));
        }
        Self::closed_form(
            domain,
            Body::Power {
                coefficient,
                exponent,
            },
        )
    }

    /// The identity-like family `x^p` used throughout the examples.
    pub fn monomial(exponent: f64, lo: f64, hi: f64) -> Result<Self> {
        Self::power(1.0, exponent, Interval::new(lo, hi)?)
    }

    pub fn affine(slope: f64, intercept: f64, domain: Interval) -> Result<Self> {
        if !(slope.is_finite() && slope > 0.0) {
            return Err(Error::InvalidFunction(format!(
                "slope must be positive, got {slope}"
            )));
        }
        if !intercept.is_finite() {
            return Err(Error::InvalidFunction(format!(
                "intercept must be finite, got {intercept}"
            )));
        }
        Self::closed_form(domain, Body::Affine { slope, intercept })
    }

    pub fn exp_shift(shift: f64, domain: Interval) -> Result<Self> {
        if !shift.is_finite() {
            return Err(Error::InvalidFunction(format!(
                "shift must be finite, got {shift}"
            )));
        }
        Self::closed_form(domain, Body::ExpShift { shift })
    }

    /// Piecewise-linear function through `points`, which must have strictly
    /// increasing `x` and strictly increasing `y`.
    pub fn table(points: &[(f64, f64)]) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidFunction(format!(
                "table needs at least 2 points, got {}",
                points.len()
            )));
        }
        for (i, &(x, y)) in points.iter().enumerate() {
            if !(x.is_finite() && y.is_finite()) {
                return Err(Error::InvalidFunction(format!(
                    "point at index {i} is not finite"
                )));
            }
        }
        for (i, w) in points.windows(2).enumerate() {
            if w[1].0 <= w[0].0 {
                return Err(Error::InvalidFunction(format!(
                    "x not strictly increasing at index {}",
                    i + 1
                )));
            }
            if w[1].1 <= w[0].1 {
                return Err(Error::InvalidFunction(format!(
                    "y not strictly increasing at index {}",
                    i + 1
                )));
            }
        }
        let (xs, ys): (Vec<f64>, Vec<f64>) = points.iter().copied().unzip();
        let domain = Interval::new(xs[0], xs[xs.len() - 1])?;
        let codomain = Interval::new(ys[0], ys[ys.len() - 1])?;
        Ok(Self {
            domain,
            codomain,
            body: Body::Table { xs, ys },
        })
    }

    fn closed_form(domain: Interval, body: Body) -> Result<Self> {
        let lo = raw_value(&body, domain.lo);
        let hi = raw_value(&body, domain.hi);
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidFunction(format!(
                "function does not map [{}, {}] onto a proper interval (got {lo} .. {hi})",
                domain.lo, domain.hi
            )));
        }
        Ok(Self {
            domain,
            codomain: Interval { lo, hi },
            body,
        })
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn codomain(&self) -> Interval {
        self.codomain
    }

    pub fn body(&self) -> &Body {
        &self.body
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        self.domain.check("x", x)?;
        Ok(self.value(x))
    }

    /// Enclosure of the exact value at `x`, allowing for the rounding of the
    /// floating-point evaluation. Values at the domain ends are exact by
    /// definition.
    pub fn eval_enclosure(&self, x: f64) -> Result<Enclosure> {
        self.domain.check("x", x)?;
        Ok(self.value_enclosure(x))
    }

    pub(crate) fn value_enclosure(&self, x: f64) -> Enclosure {
        let v = self.value(x);
        if x == self.domain.lo || x == self.domain.hi {
            return Enclosure::point(v);
        }
        let r = 8.0 * f64::EPSILON * evaluation_scale(&self.body, x, v);
        if r == 0.0 {
            Enclosure::point(v)
        } else {
            Enclosure::point(v).inflate(r)
        }
    }

    /// Evaluation without the domain check; callers guarantee `x` is in range.
    pub(crate) fn value(&self, x: f64) -> f64 {
        if x == self.domain.lo {
            return self.codomain.lo;
        }
        if x == self.domain.hi {
            return self.codomain.hi;
        }
        raw_value(&self.body, x)
    }

    /// Best known curvature of the function on `[lo, hi]`.
    pub fn shape_on(&self, lo: f64, hi: f64) -> Shape {
        match &self.body {
            Body::Table { xs, ys } => table_shape(xs, ys, lo, hi),
            body => closed_form_shape(body),
        }
    }

    /// Best known curvature of the inverse function on `[lo, hi]` (a range of
    /// function values).
    pub fn inverse_shape_on(&self, lo: f64, hi: f64) -> Shape {
        match &self.body {
            // Segments of the inverse are indexed by the y samples.
            Body::Table { xs, ys } => table_shape(ys, xs, lo, hi),
            body => closed_form_shape(body).inverted(),
        }
    }

    /// `f''(x)` for the closed-form families. Each of them has a monotone
    /// second derivative on its domain; at a singular end the value is
    /// infinite.
    pub fn second_derivative(&self, x: f64) -> Option<f64> {
        match &self.body {
            Body::Power {
                coefficient,
                exponent,
            } => Some(power_second_derivative(*coefficient, *exponent, x)),
            Body::Affine { .. } => Some(0.0),
            Body::ExpShift { .. } => Some(x.exp()),
            Body::Table { .. } => None,
        }
    }

    /// Second derivative of the inverse at `y`, under the same terms as
    /// [`second_derivative`](Self::second_derivative).
    pub fn inverse_second_derivative(&self, y: f64) -> Option<f64> {
        match &self.body {
            Body::Power {
                coefficient,
                exponent,
            } => {
                let q = exponent.recip();
                Some(power_second_derivative(coefficient.powf(-q), q, y))
            }
            Body::Affine { .. } => Some(0.0),
            Body::ExpShift { shift } => {
                let t = y + shift;
                Some(-1.0 / (t * t))
            }
            Body::Table { .. } => None,
        }
    }

    /// Upper bound on the slope over the whole domain, when one is cheap to state.
    pub fn lipschitz_bound(&self) -> Option<f64> {
        match &self.body {
            Body::Affine { slope, .. } => Some(*slope),
            Body::ExpShift { .. } => Some(self.domain.hi.exp()),
            Body::Power {
                coefficient,
                exponent,
            } => {
                if *exponent >= 1.0 {
                    Some(coefficient * exponent * self.domain.hi.powf(exponent - 1.0))
                } else if self.domain.lo > 0.0 {
                    Some(coefficient * exponent * self.domain.lo.powf(exponent - 1.0))
                } else {
                    None
                }
            }
            Body::Table { xs, ys } => Some(
                xs.windows(2)
                    .zip(ys.windows(2))
                    .map(|(x, y)| (y[1] - y[0]) / (x[1] - x[0]))
                    .fold(0.0, f64::max),
            ),
        }
    }

    /// Closed-form estimate of the preimage of `y`, when the family has one.
    /// Not an enclosure; [`ConjugatePair::invert`] verifies it before use.
    pub(crate) fn inverse_estimate(&self, y: f64) -> Option<f64> {
        let x = match &self.body {
            Body::Power {
                coefficient,
                exponent,
            } => {
                let r = y / coefficient;
                if *exponent == 1.0 {
                    r
                } else {
                    r.max(0.0).powf(exponent.recip())
                }
            }
            Body::Affine { slope, intercept } => (y - intercept) / slope,
            Body::ExpShift { shift } => (y + shift).ln(),
            Body::Table { xs, ys } => interpolate(ys, xs, y),
        };
        x.is_finite().then(|| x.clamp(self.domain.lo, self.domain.hi))
    }

    /// The inverse as a function of its own, for the families closed under
    /// inversion (power, affine, table). Its end values are this function's
    /// domain ends, so the two rectangles are exact transposes.
    pub fn inverse_fn(&self) -> Option<MonotoneFn> {
        let mut inv = match &self.body {
            Body::Power {
                coefficient,
                exponent,
            } => {
                let p = exponent.recip();
                MonotoneFn::power(coefficient.powf(-p), p, self.codomain).ok()
            }
            Body::Affine { slope, intercept } => {
                MonotoneFn::affine(slope.recip(), -intercept / slope, self.codomain).ok()
            }
            Body::ExpShift { .. } => None,
            Body::Table { xs, ys } => {
                let pts: Vec<(f64, f64)> = ys.iter().copied().zip(xs.iter().copied()).collect();
                MonotoneFn::table(&pts).ok()
            }
        }?;
        inv.codomain = self.domain;
        Some(inv)
    }
}

fn raw_value(body: &Body, x: f64) -> f64 {
    match body {
        Body::Power {
            coefficient,
            exponent,
        } => {
            let p = *exponent;
            let v = if p.fract() == 0.0 && p <= 16.0 {
                x.powi(p as i32)
            } else {
                x.powf(p)
            };
            coefficient * v
        }
        Body::Affine { slope, intercept } => slope * x + intercept,
        Body::ExpShift { shift } => x.exp() - shift,
        Body::Table { xs, ys } => interpolate(xs, ys, x),
    }
}

fn closed_form_shape(body: &Body) -> Shape {
    match body {
        Body::Affine { .. } => Shape::Linear,
        Body::ExpShift { .. } => Shape::Convex,
        Body::Power { exponent, .. } => {
            if *exponent == 1.0 {
                Shape::Linear
            } else if *exponent > 1.0 {
                Shape::Convex
            } else {
                Shape::Concave
            }
        }
        Body::Table { .. } => Shape::Unknown,
    }
}

/// Index of the segment `[knots[i], knots[i + 1]]` used for `x`.
/// `d²/dx² c·x^p`.
fn power_second_derivative(c: f64, p: f64, x: f64) -> f64 {
    if p == 1.0 {
        0.0
    } else if p == 2.0 {
        2.0 * c
    } else {
        c * p * (p - 1.0) * x.powf(p - 2.0)
    }
}

/// Magnitude of the terms in the evaluation of `body` at `x`; the rounding
/// error is a small multiple of `EPSILON` times this.
fn evaluation_scale(body: &Body, x: f64, v: f64) -> f64 {
    match body {
        Body::Power { .. } => v.abs(),
        Body::Affine { slope, intercept } => (slope * x).abs() + intercept.abs(),
        Body::ExpShift { shift } => x.exp() + shift.abs(),
        Body::Table { xs, ys } => {
            let i = segment(xs, x);
            if x == xs[i] || x == xs[i + 1] {
                0.0
            } else {
                ys[i].abs() + ys[i + 1].abs()
            }
        }
    }
}

fn segment(knots: &[f64], x: f64) -> usize {
    let i = knots.partition_point(|&k| k <= x);
    i.saturating_sub(1).min(knots.len() - 2)
}

fn interpolate(knots: &[f64], values: &[f64], x: f64) -> f64 {
    let i = segment(knots, x);
    let (x0, x1) = (knots[i], knots[i + 1]);
    let (y0, y1) = (values[i], values[i + 1]);
    if x == x0 {
        return y0;
    }
    if x == x1 {
        return y1;
    }
    let t = (x - x0) / (x1 - x0);
    y0 + t * (y1 - y0)
}

/// Curvature of the piecewise-linear interpolant through (knots, values) on
/// the open range `(lo, hi)`.
fn table_shape(knots: &[f64], values: &[f64], lo: f64, hi: f64) -> Shape {
    let first = segment(knots, lo);
    // segment whose interior reaches hi from the left
    let last = knots
        .partition_point(|&k| k < hi)
        .saturating_sub(1)
        .clamp(first, knots.len() - 2);
    if first == last {
        return Shape::Linear;
    }
    let slopes: Vec<f64> = (first..=last)
        .map(|i| (values[i + 1] - values[i]) / (knots[i + 1] - knots[i]))
        .collect();
    if slopes.windows(2).all(|w| w[0] <= w[1]) {
        Shape::Convex
    } else if slopes.windows(2).all(|w| w[0] >= w[1]) {
        Shape::Concave
    } else {
        Shape::Unknown
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x_squared() -> MonotoneFn {
        MonotoneFn::monomial(2.0, 0.0, 2.0).unwrap()
    }

    #[test]
    fn eval_examples() {
        let id = MonotoneFn::monomial(1.0, 0.0, 2.0).unwrap();
        assert_eq!(id.eval(1.0).unwrap(), 1.0);
        assert_eq!(x_squared().eval(0.0).unwrap(), 0.0);
        let t = MonotoneFn::table(&[(0.0, 0.0), (1.0, 1.0), (2.0, 4.0)]).unwrap();
        assert_eq!(t.eval(1.5).unwrap(), 2.5);
    }

    #[test]
    fn eval_outside_domain_is_domain_error() {
        let err = x_squared().eval(2.5).unwrap_err();
        assert!(err.is_domain(), "{err}");
        assert!(x_squared().eval(-1e-300).is_err());
    }

    #[test]
    fn endpoints_anchor_exactly() {
        let f = MonotoneFn::power(0.7, 2.3, Interval::new(0.25, 1.75).unwrap()).unwrap();
        assert_eq!(f.eval(0.25).unwrap(), f.codomain().lo());
        assert_eq!(f.eval(1.75).unwrap(), f.codomain().hi());
        let e = MonotoneFn::exp_shift(1.0, Interval::new(-1.0, 2.0).unwrap()).unwrap();
        assert_eq!(e.codomain().lo(), (-1.0f64).exp() - 1.0);
    }

    #[test]
    fn table_rejects_flat_and_unsorted_points() {
        let err = MonotoneFn::table(&[(0.0, 0.0), (1.0, 1.0), (2.0, 1.0)]).unwrap_err();
        assert_eq!(
            err.to_string(),
            "invalid function: y not strictly increasing at index 2"
        );
        assert!(MonotoneFn::table(&[(0.0, 0.0), (0.0, 1.0)]).is_err());
        assert!(MonotoneFn::table(&[(0.0, 0.0)]).is_err());
    }

    #[test]
    fn closed_form_parameter_constraints() {
        let d = Interval::new(0.0, 1.0).unwrap();
        assert!(MonotoneFn::power(-1.0, 2.0, d).is_err());
        assert!(MonotoneFn::power(1.0, 0.0, d).is_err());
        assert!(MonotoneFn::power(1.0, 2.0, Interval::new(-1.0, 1.0).unwrap()).is_err());
        assert!(MonotoneFn::affine(0.0, 1.0, d).is_err());
        assert!(Interval::new(1.0, 1.0).is_err());
    }

    #[test]
    fn shapes() {
        assert_eq!(x_squared().shape_on(0.0, 2.0), Shape::Convex);
        assert_eq!(x_squared().inverse_shape_on(0.0, 4.0), Shape::Concave);
        let t = MonotoneFn::table(&[(0.0, 0.0), (1.0, 1.0), (2.0, 4.0), (3.0, 5.0)]).unwrap();
        assert_eq!(t.shape_on(0.1, 0.9), Shape::Linear);
        assert_eq!(t.shape_on(1.0, 2.0), Shape::Linear);
        assert_eq!(t.shape_on(0.5, 1.5), Shape::Convex);
        assert_eq!(t.shape_on(1.5, 2.5), Shape::Concave);
        assert_eq!(t.shape_on(0.5, 2.5), Shape::Unknown);
        assert_eq!(t.inverse_shape_on(0.5, 1.5), Shape::Concave);
    }

    #[test]
    fn inverse_functions_round_trip() {
        let f = MonotoneFn::power(2.0, 3.0, Interval::new(0.0, 1.5).unwrap()).unwrap();
        let g = f.inverse_fn().unwrap();
        for &x in &[0.0, 0.3, 1.1, 1.5] {
            let y = f.eval(x).unwrap();
            assert!((g.eval(y.min(g.domain().hi())).unwrap() - x).abs() < 1e-12);
        }
        let t = MonotoneFn::table(&[(0.0, 1.0), (1.0, 3.0)]).unwrap();
        assert_eq!(t.inverse_fn().unwrap().eval(2.0).unwrap(), 0.5);
    }
}
