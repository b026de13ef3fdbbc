//! Enclosures of integrals of increasing functions.
//!
//! For an increasing integrand the left and right Riemann sums on any grid
//! bracket the integral, and on a uniform `n`-panel grid their difference is
//! exactly `(f(hi) - f(lo)) * (hi - lo) / n`. When the integrand also knows
//! its curvature on a panel, the midpoint and trapezoid values give a
//! second, much tighter bracket; [`Rule::Bracketed`] intersects the two.

use crate::enclosure::Enclosure;
use crate::error::{Error, Result};
use crate::monotone::{Body, ConjugatePair, Interval, MonotoneFn, Shape};
use crate::summation::NeumaierSum;

/// Something increasing that can be sampled with a certified value.
pub trait Integrand {
    fn support(&self) -> Interval;

    /// Enclosure of the integrand's value at `x`; `x` is in the support.
    fn sample(&self, x: f64) -> Result<Enclosure>;

    /// Curvature on `[lo, hi]`, if known.
    fn shape_on(&self, _lo: f64, _hi: f64) -> Shape {
        Shape::Unknown
    }

    /// Second derivative at `x`. Implementations return `Some` only when the
    /// second derivative is monotone over the whole support.
    fn second_derivative(&self, _x: f64) -> Option<f64> {
        None
    }

    /// Points strictly inside `(lo, hi)` where the integrand has a kink.
    fn breakpoints(&self, _lo: f64, _hi: f64) -> Vec<f64> {
        Vec::new()
    }
}

impl<T: Integrand + ?Sized> Integrand for &T {
    fn support(&self) -> Interval {
        (**self).support()
    }

    fn sample(&self, x: f64) -> Result<Enclosure> {
        (**self).sample(x)
    }

    fn shape_on(&self, lo: f64, hi: f64) -> Shape {
        (**self).shape_on(lo, hi)
    }

    fn second_derivative(&self, x: f64) -> Option<f64> {
        (**self).second_derivative(x)
    }

    fn breakpoints(&self, lo: f64, hi: f64) -> Vec<f64> {
        (**self).breakpoints(lo, hi)
    }
}

fn knots_inside(knots: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    knots.iter().copied().filter(|&k| lo < k && k < hi).collect()
}

impl Integrand for MonotoneFn {
    fn support(&self) -> Interval {
        self.domain()
    }

    fn sample(&self, x: f64) -> Result<Enclosure> {
        Ok(Enclosure::point(self.value(x)))
    }

    fn shape_on(&self, lo: f64, hi: f64) -> Shape {
        MonotoneFn::shape_on(self, lo, hi)
    }

    fn second_derivative(&self, x: f64) -> Option<f64> {
        MonotoneFn::second_derivative(self, x)
    }

    fn breakpoints(&self, lo: f64, hi: f64) -> Vec<f64> {
        match self.body() {
            Body::Table { xs, .. } => knots_inside(xs, lo, hi),
            _ => Vec::new(),
        }
    }
}

/// The inverse `psi` of a pair, sampled through [`ConjugatePair::invert`].
#[derive(Debug, Clone, Copy)]
pub struct Inverse<'a> {
    pair: &'a ConjugatePair,
}

impl<'a> Inverse<'a> {
    pub fn new(pair: &'a ConjugatePair) -> Self {
        Self { pair }
    }
}

impl Integrand for Inverse<'_> {
    fn support(&self) -> Interval {
        self.pair.codomain()
    }

    fn sample(&self, y: f64) -> Result<Enclosure> {
        self.pair.invert(y)
    }

    fn shape_on(&self, lo: f64, hi: f64) -> Shape {
        self.pair.phi().inverse_shape_on(lo, hi)
    }

    fn second_derivative(&self, y: f64) -> Option<f64> {
        self.pair.phi().inverse_second_derivative(y)
    }

    fn breakpoints(&self, lo: f64, hi: f64) -> Vec<f64> {
        match self.pair.phi().body() {
            Body::Table { ys, .. } => knots_inside(ys, lo, hi),
            _ => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Rule {
    /// Left/right Riemann sums only.
    Riemann,
    /// Riemann sums intersected with midpoint/trapezoid brackets on panels
    /// where the integrand is known to be convex, concave or linear, and
    /// with the trapezoid error bound where the second derivative is known.
    /// The range is split at the integrand's breakpoints first.
    #[default]
    Bracketed,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub initial_panels: usize,
    pub max_panels: usize,
    /// Absolute width at which refinement stops.
    pub target_width: f64,
    pub rule: Rule,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            initial_panels: 16,
            max_panels: 1 << 20,
            target_width: 1e-9,
            rule: Rule::Bracketed,
        }
    }
}

impl QuadratureConfig {
    pub fn new(initial_panels: usize, max_panels: usize, target_width: f64) -> Result<Self> {
        let cfg = Self {
            initial_panels,
            max_panels,
            target_width,
            rule: Rule::default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Exactly `panels` panels, accepting whatever width results.
    pub fn fixed(panels: usize, rule: Rule) -> Self {
        Self {
            initial_panels: panels,
            max_panels: panels,
            target_width: f64::INFINITY,
            rule,
        }
    }

    pub fn with_rule(mut self, rule: Rule) -> Self {
        self.rule = rule;
        self
    }

    pub fn with_target_width(mut self, target_width: f64) -> Self {
        self.target_width = target_width;
        self
    }

    pub fn with_max_panels(mut self, max_panels: usize) -> Self {
        self.max_panels = max_panels;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.initial_panels < 1 || self.initial_panels > self.max_panels {
            return Err(Error::InvalidArgument(format!(
                "need 1 <= initial_panels <= max_panels, got {} and {}",
                self.initial_panels, self.max_panels
            )));
        }
        if !(self.target_width > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "target width must be positive, got {}",
                self.target_width
            )));
        }
        Ok(())
    }
}

fn check_range<F: Integrand + ?Sized>(f: &F, lo: f64, hi: f64) -> Result<()> {
    let s = f.support();
    s.check("lower limit", lo)?;
    s.check("upper limit", hi)?;
    if lo > hi {
        return Err(Error::InvalidArgument(format!(
            "integration limits out of order: {lo} > {hi}"
        )));
    }
    Ok(())
}

/// `[left sum, right sum]` of `f` over `[lo, hi]` on `n` uniform panels.
///
/// No rounding allowance is added, so the width is the exact Riemann width
/// up to the accuracy of the compensated sums.
pub fn riemann_enclosure<F: Integrand + ?Sized>(
    f: &F,
    lo: f64,
    hi: f64,
    n: usize,
) -> Result<Enclosure> {
    check_range(f, lo, hi)?;
    if n == 0 {
        return Err(Error::InvalidArgument("panel count must be positive".into()));
    }
    if lo == hi {
        return Ok(Enclosure::point(0.0));
    }
    let sums = riemann_sums(f, lo, hi, n)?;
    Ok(Enclosure::new(sums.lower.total(), sums.upper.total()))
}

/// Enclosure of `∫ f` over `[lo, hi]` on `n` panels under `rule`, widened
/// by an allowance for floating-point rounding.
pub fn panel_enclosure<F: Integrand + ?Sized>(
    f: &F,
    lo: f64,
    hi: f64,
    n: usize,
    rule: Rule,
) -> Result<Enclosure> {
    check_range(f, lo, hi)?;
    if n == 0 {
        return Err(Error::InvalidArgument("panel count must be positive".into()));
    }
    if lo == hi {
        return Ok(Enclosure::point(0.0));
    }
    match rule {
        Rule::Riemann => Ok(sums_enclosure(&riemann_sums(f, lo, hi, n)?, lo, hi)),
        Rule::Bracketed => {
            let cuts = f.breakpoints(lo, hi);
            if cuts.is_empty() {
                return Ok(sums_enclosure(&bracketed_sums(f, lo, hi, n)?, lo, hi));
            }
            // each piece gets its share of the panels, at least one
            let mut ends = vec![lo];
            ends.extend(cuts);
            ends.push(hi);
            let mut total = Enclosure::point(0.0);
            for w in ends.windows(2) {
                let share = ((w[1] - w[0]) / (hi - lo) * n as f64).ceil().max(1.0) as usize;
                total = total + sums_enclosure(&bracketed_sums(f, w[0], w[1], share)?, w[0], w[1]);
            }
            Ok(total)
        }
    }
}

fn sums_enclosure(sums: &Sums, lo: f64, hi: f64) -> Enclosure {
    let (l, u) = (sums.lower.total(), sums.upper.total());
    let slack = 16.0
        * f64::EPSILON
        * (sums.lower.magnitude()
            + sums.upper.magnitude()
            + sums.extra_magnitude
            + lo.abs().max(hi.abs()) * sums.end_magnitude);
    Enclosure::new(l.min(u), u.max(l)).inflate(slack)
}

struct Sums {
    lower: NeumaierSum,
    upper: NeumaierSum,
    /// |f(lo)| + |f(hi)|
    end_magnitude: f64,
    /// Size of intermediate terms that cancel before reaching the sums.
    extra_magnitude: f64,
}

fn node(lo: f64, hi: f64, step: f64, i: usize, n: usize) -> f64 {
    if i == n {
        hi
    } else {
        (lo + i as f64 * step).min(hi)
    }
}

fn riemann_sums<F: Integrand + ?Sized>(f: &F, lo: f64, hi: f64, n: usize) -> Result<Sums> {
    let step = (hi - lo) / n as f64;
    let mut lower = NeumaierSum::new();
    let mut upper = NeumaierSum::new();
    let mut end_magnitude = 0.0;
    for i in 0..=n {
        let v = f.sample(node(lo, hi, step, i, n))?;
        if i < n {
            lower += step * v.lo();
        }
        if i > 0 {
            upper += step * v.hi();
        }
        if i == 0 || i == n {
            end_magnitude += v.mag();
        }
    }
    Ok(Sums {
        lower,
        upper,
        end_magnitude,
        extra_magnitude: 0.0,
    })
}

fn bracketed_sums<F: Integrand + ?Sized>(f: &F, lo: f64, hi: f64, n: usize) -> Result<Sums> {
    let step = (hi - lo) / n as f64;
    let mut lower = NeumaierSum::new();
    let mut upper = NeumaierSum::new();
    let mut left_x = lo;
    let mut left = f.sample(lo)?;
    let mut end_magnitude = left.mag();
    let mut extra_magnitude = 0.0;
    for i in 0..n {
        let right_x = node(lo, hi, step, i + 1, n);
        let right = f.sample(right_x)?;
        let mid_x = (lo + (i as f64 + 0.5) * step).clamp(left_x, right_x);
        let mid = f.sample(mid_x)?;

        // increasing: f(l) <= f <= f(r) on the panel
        let mut panel_lo = left.lo();
        let mut panel_hi = right.hi();
        let shape = f.shape_on(left_x, right_x);
        if matches!(shape, Shape::Convex | Shape::Linear) {
            panel_lo = panel_lo.max(mid.lo());
            panel_hi = panel_hi.min(0.5 * (left.hi() + right.hi()));
        }
        if matches!(shape, Shape::Concave | Shape::Linear) {
            panel_lo = panel_lo.max(0.5 * (left.lo() + right.lo()));
            panel_hi = panel_hi.min(mid.hi());
        }
        // trapezoid error: −h²/12 · f''(ξ) per unit length, with f'' monotone
        // so f''(ξ) lies between its values at the panel ends
        if let (Some(c_l), Some(c_r)) = (
            f.second_derivative(left_x),
            f.second_derivative(right_x),
        ) {
            let h = right_x - left_x;
            let k = h * h / 12.0;
            let (c_min, c_max) = (c_l.min(c_r), c_l.max(c_r));
            if (k * c_min).is_finite() && (k * c_max).is_finite() {
                panel_lo = panel_lo.max(0.5 * (left.lo() + right.lo()) - k * c_max);
                panel_hi = panel_hi.min(0.5 * (left.hi() + right.hi()) - k * c_min);
                extra_magnitude +=
                    step * (left.mag() + right.mag() + k * c_min.abs().max(c_max.abs()));
            }
        }
        if panel_lo > panel_hi {
            // only rounding can cross the two brackets
            let m = 0.5 * (panel_lo + panel_hi);
            panel_lo = m;
            panel_hi = m;
        }
        lower += step * panel_lo;
        upper += step * panel_hi;

        left_x = right_x;
        left = right;
    }
    end_magnitude += left.mag();
    Ok(Sums {
        lower,
        upper,
        end_magnitude,
        extra_magnitude,
    })
}

/// One level of a refinement sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub panels: usize,
    pub enclosure: Enclosure,
}

/// Panel-doubling refinement. Each level is intersected with the previous
/// ones, so the enclosures are nested.
pub struct Refinement<F: Integrand> {
    f: F,
    lo: f64,
    hi: f64,
    rule: Rule,
    next_panels: Option<usize>,
    max_panels: usize,
    best: Option<Enclosure>,
}

impl<F: Integrand> Refinement<F> {
    pub fn new(f: F, lo: f64, hi: f64, cfg: &QuadratureConfig) -> Result<Self> {
        cfg.validate()?;
        check_range(&f, lo, hi)?;
        Ok(Self {
            f,
            lo,
            hi,
            rule: cfg.rule,
            next_panels: Some(cfg.initial_panels),
            max_panels: cfg.max_panels,
            best: None,
        })
    }
}

impl<F: Integrand> Iterator for Refinement<F> {
    type Item = Result<Level>;

    fn next(&mut self) -> Option<Result<Level>> {
        let panels = self.next_panels.filter(|&n| n <= self.max_panels)?;
        self.next_panels = panels.checked_mul(2);
        let fresh = match panel_enclosure(&self.f, self.lo, self.hi, panels, self.rule) {
            Ok(e) => e,
            Err(e) => {
                self.next_panels = None;
                return Some(Err(e));
            }
        };
        let enclosure = match self.best {
            None => fresh,
            Some(prev) => match prev.intersect(&fresh) {
                Some(e) => e,
                None => {
                    self.next_panels = None;
                    return Some(Err(Error::Inconsistent {
                        what: "refinement levels",
                        first: prev,
                        second: fresh,
                    }));
                }
            },
        };
        self.best = Some(enclosure);
        Some(Ok(Level { panels, enclosure }))
    }
}

/// Result of a successful refinement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Refined {
    pub enclosure: Enclosure,
    pub panels: usize,
}

/// Doubles the panel count from `cfg.initial_panels` until the enclosure is
/// no wider than `cfg.target_width`.
///
/// Fails with [`Error::BudgetExceeded`], carrying the best enclosure, when
/// `cfg.max_panels` is reached first.
pub fn refine_to_width<F: Integrand + ?Sized>(
    f: &F,
    lo: f64,
    hi: f64,
    cfg: &QuadratureConfig,
) -> Result<Refined> {
    let mut last = None;
    for level in Refinement::new(f, lo, hi, cfg)? {
        let level = level?;
        if level.enclosure.width() <= cfg.target_width {
            return Ok(Refined {
                enclosure: level.enclosure,
                panels: level.panels,
            });
        }
        last = Some(level);
    }
    let last = last.expect("a validated config yields at least one level");
    Err(Error::BudgetExceeded {
        best: last.enclosure,
        panels: last.panels,
    })
}
