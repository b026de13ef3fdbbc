use crate::enclosure::Enclosure;
use crate::error::{Error, Result};

use super::{Interval, MonotoneFn};

pub const DEFAULT_INVERSE_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_BISECTIONS: usize = 200;

/// An increasing function together with its numerically realized inverse.
///
/// The inverse is never stored; every call to [`ConjugatePair::invert`]
/// produces an enclosure `[x_lo, x_hi]` with `phi(x_lo) <= y <= phi(x_hi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjugatePair {
    phi: MonotoneFn,
    inverse_tol: f64,
    max_bisections: usize,
}

impl ConjugatePair {
    pub fn new(phi: MonotoneFn) -> Self {
        Self {
            phi,
            inverse_tol: DEFAULT_INVERSE_TOL,
            max_bisections: DEFAULT_MAX_BISECTIONS,
        }
    }

    pub fn with_inverse_tol(mut self, tol: f64) -> Result<Self> {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "inverse tolerance must be positive, got {tol}"
            )));
        }
        self.inverse_tol = tol;
        Ok(self)
    }

    pub fn with_max_bisections(mut self, n: usize) -> Self {
        self.max_bisections = n;
        self
    }

    pub fn phi(&self) -> &MonotoneFn {
        &self.phi
    }

    pub fn inverse_tol(&self) -> f64 {
        self.inverse_tol
    }

    /// `[alpha1, alpha2]`.
    pub fn domain(&self) -> Interval {
        self.phi.domain()
    }

    /// `[beta1, beta2]`.
    pub fn codomain(&self) -> Interval {
        self.phi.codomain()
    }

    /// Enclosure of `psi(y)` of width at most `inverse_tol`.
    ///
    /// A closed-form inverse is tried first and accepted only if it brackets
    /// `y`; otherwise the preimage is found by bisection.
    pub fn invert(&self, y: f64) -> Result<Enclosure> {
        self.codomain().check("y", y)?;
        if y == self.codomain().lo() {
            return Ok(Enclosure::point(self.domain().lo()));
        }
        if y == self.codomain().hi() {
            return Ok(Enclosure::point(self.domain().hi()));
        }
        if let Some(e) = self.verified_estimate(y) {
            return Ok(e);
        }
        self.invert_by_bisection(y)
    }

    /// Same contract as [`invert`](Self::invert) but always bisects.
    pub fn invert_by_bisection(&self, y: f64) -> Result<Enclosure> {
        self.codomain().check("y", y)?;
        let mut steps = self.bisect(y);
        let mut last = steps.current();
        while last.width() > self.inverse_tol {
            match steps.next() {
                Some(e) => last = e,
                // stalled on adjacent floats: as tight as f64 allows
                None if steps.iterations() < self.max_bisections => break,
                None => {
                    return Err(Error::Convergence {
                        y,
                        width: last.width(),
                        iterations: steps.iterations(),
                    })
                }
            }
        }
        Ok(last)
    }

    /// The sequence of nested brackets bisection walks through for `y`.
    /// `y` must lie in the codomain.
    pub fn bisect(&self, y: f64) -> Bisection<'_> {
        let d = self.domain();
        let (lo, hi) = if y == self.codomain().lo() {
            (d.lo(), d.lo())
        } else if y == self.codomain().hi() {
            (d.hi(), d.hi())
        } else {
            (d.lo(), d.hi())
        };
        Bisection {
            phi: &self.phi,
            y,
            lo,
            hi,
            iterations: 0,
            budget: self.max_bisections,
        }
    }

    fn verified_estimate(&self, y: f64) -> Option<Enclosure> {
        let x = self.phi.inverse_estimate(y)?;
        let d = self.domain();
        let slack = 4.0 * f64::EPSILON * x.abs().max(d.lo().abs()).max(d.hi().abs());
        let lo = (x - slack).max(d.lo());
        let hi = (x + slack).min(d.hi());
        let ok = lo <= hi
            && hi - lo <= self.inverse_tol
            && self.phi.value(lo) <= y
            && y <= self.phi.value(hi);
        ok.then(|| Enclosure::new(lo, hi))
    }
}

/// Iterator over bisection brackets for one target value. Each item is
/// contained in the previous one and keeps `phi(lo) <= y <= phi(hi)`.
#[derive(Debug, Clone)]
pub struct Bisection<'a> {
    phi: &'a MonotoneFn,
    y: f64,
    lo: f64,
    hi: f64,
    iterations: usize,
    budget: usize,
}

impl Bisection<'_> {
    pub fn current(&self) -> Enclosure {
        Enclosure::new(self.lo, self.hi)
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }
}

impl Iterator for Bisection<'_> {
    type Item = Enclosure;

    fn next(&mut self) -> Option<Enclosure> {
        if self.iterations >= self.budget || self.lo == self.hi {
            return None;
        }
        let mid = self.lo + 0.5 * (self.hi - self.lo);
        if mid <= self.lo || mid >= self.hi {
            // adjacent floats: nothing left to split
            return None;
        }
        self.iterations += 1;
        let v = self.phi.value(mid);
        if v == self.y {
            self.lo = mid;
            self.hi = mid;
        } else if v < self.y {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
        Some(self.current())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(exponent: f64) -> ConjugatePair {
        ConjugatePair::new(MonotoneFn::monomial(exponent, 0.0, 2.0).unwrap())
    }

    #[test]
    fn invert_examples() {
        let sq = pair(2.0);
        let e = sq.invert(1.0).unwrap();
        assert!(e.contains(1.0) && e.width() <= 1e-12);

        let e = sq.invert(2.0).unwrap();
        assert!(e.width() <= 1e-12);
        // independent bisection on x*x - 2 in plain arithmetic
        let (mut lo, mut hi) = (1.0f64, 2.0f64);
        for _ in 0..200 {
            let m = 0.5 * (lo + hi);
            if m * m < 2.0 {
                lo = m
            } else {
                hi = m
            }
        }
        assert!(e.lo() <= hi && lo <= e.hi(), "{e} vs [{lo}, {hi}]");
        assert!(e.contains(1.414_213_562_373_095));

        let e = pair(1.0).invert(0.0).unwrap();
        assert!(e.contains(0.0));
    }

    #[test]
    fn bisection_agrees_with_fast_path() {
        let sq = pair(2.0);
        for &y in &[0.0, 0.3, 1.0, 2.0, 3.9, 4.0] {
            let a = sq.invert(y).unwrap();
            let b = sq.invert_by_bisection(y).unwrap();
            assert!(a.overlaps(&b), "y={y}: {a} vs {b}");
            assert!(b.width() <= 1e-12);
            assert!(sq.phi().eval(b.lo()).unwrap() <= y && y <= sq.phi().eval(b.hi()).unwrap());
        }
    }

    #[test]
    fn out_of_range_value_is_domain_error() {
        assert!(pair(2.0).invert(4.5).unwrap_err().is_domain());
        assert!(pair(2.0).invert(-0.1).unwrap_err().is_domain());
    }

    #[test]
    fn tiny_budget_is_convergence_error() {
        let p = pair(2.0).with_max_bisections(5);
        match p.invert_by_bisection(2.0) {
            Err(Error::Convergence { iterations, .. }) => assert_eq!(iterations, 5),
            other => panic!("expected convergence error, got {other:?}"),
        }
    }

    #[test]
    fn brackets_are_nested() {
        let p = pair(3.0);
        let mut prev = p.bisect(5.0).current();
        for e in p.bisect(5.0) {
            assert!(prev.contains_enclosure(&e));
            prev = e;
        }
        assert!(prev.width() < 1e-15);
    }

    #[test]
    fn table_inverse() {
        let t = ConjugatePair::new(
            MonotoneFn::table(&[(0.0, 0.0), (1.0, 1.0), (2.0, 4.0)]).unwrap(),
        );
        let e = t.invert(2.5).unwrap();
        assert!(e.contains(1.5));
    }
}
