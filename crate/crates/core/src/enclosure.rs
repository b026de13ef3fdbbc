//! Closed intervals that certify where a real quantity lies.
//!
//! Arithmetic rounds the endpoints outward by one ulp, so a chain of
//! operations on enclosures stays an enclosure of the exact result.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Enclosure {
    lo: f64,
    hi: f64,
}

impl Enclosure {
    /// Builds `[lo, hi]`. Panics if the bounds are unordered or NaN.
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "enclosure bounds out of order: [{lo}, {hi}]");
        Self { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Self::new(x, x)
    }

    /// Smallest enclosure containing every value in `values`.
    pub fn hull_of(values: &[f64]) -> Self {
        let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Self::new(lo, hi)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        if self.lo == self.hi {
            return self.lo;
        }
        let m = 0.5 * self.lo + 0.5 * self.hi;
        m.clamp(self.lo, self.hi)
    }

    /// Largest absolute value over the enclosure.
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_enclosure(&self, other: &Enclosure) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Enclosure) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersect(&self, other: &Enclosure) -> Option<Enclosure> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Enclosure { lo, hi })
    }

    pub fn hull(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Widens both sides by `r >= 0`.
    pub fn inflate(&self, r: f64) -> Enclosure {
        debug_assert!(r >= 0.0);
        Enclosure {
            lo: (self.lo - r).next_down(),
            hi: (self.hi + r).next_up(),
        }
    }

    /// True when the whole enclosure lies inside `[-tol, tol]`.
    pub fn within(&self, tol: f64) -> bool {
        -tol <= self.lo && self.hi <= tol
    }

    pub fn scale(&self, k: f64) -> Enclosure {
        Enclosure::point(k) * *self
    }

    fn rounded(lo: f64, hi: f64) -> Enclosure {
        Enclosure {
            lo: lo.next_down(),
            hi: hi.next_up(),
        }
    }
}

/// Rounding error of `a + b` (TwoSum); zero when the sum is exact.
fn sum_error(a: f64, b: f64, s: f64) -> f64 {
    let bb = s - a;
    (a - (s - bb)) + (b - bb)
}

fn sum_down(a: f64, b: f64) -> f64 {
    let s = a + b;
    if !s.is_finite() || sum_error(a, b, s) < 0.0 {
        s.next_down()
    } else {
        s
    }
}

fn sum_up(a: f64, b: f64) -> f64 {
    let s = a + b;
    if !s.is_finite() || sum_error(a, b, s) > 0.0 {
        s.next_up()
    } else {
        s
    }
}

impl From<f64> for Enclosure {
    fn from(x: f64) -> Self {
        Enclosure::point(x)
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.17e}, {:.17e}]", self.lo, self.hi)
    }
}

impl Add for Enclosure {
    type Output = Enclosure;

    fn add(self, rhs: Enclosure) -> Enclosure {
        Enclosure {
            lo: sum_down(self.lo, rhs.lo),
            hi: sum_up(self.hi, rhs.hi),
        }
    }
}

impl Add<f64> for Enclosure {
    type Output = Enclosure;

    fn add(self, rhs: f64) -> Enclosure {
        self + Enclosure::point(rhs)
    }
}

impl Sub for Enclosure {
    type Output = Enclosure;

    fn sub(self, rhs: Enclosure) -> Enclosure {
        Enclosure {
            lo: sum_down(self.lo, -rhs.hi),
            hi: sum_up(self.hi, -rhs.lo),
        }
    }
}

impl Sub<f64> for Enclosure {
    type Output = Enclosure;

    fn sub(self, rhs: f64) -> Enclosure {
        self - Enclosure::point(rhs)
    }
}

impl Neg for Enclosure {
    type Output = Enclosure;

    fn neg(self) -> Enclosure {
        // + 0.0 turns a negated zero back into +0
        Enclosure {
            lo: -self.hi + 0.0,
            hi: -self.lo + 0.0,
        }
    }
}

impl Mul for Enclosure {
    type Output = Enclosure;

    fn mul(self, rhs: Enclosure) -> Enclosure {
        let p = [
            self.lo * rhs.lo,
            self.lo * rhs.hi,
            self.hi * rhs.lo,
            self.hi * rhs.hi,
        ];
        let lo = p.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        // exact zero stays exact
        if lo == 0.0 && hi == 0.0 {
            return Enclosure::point(0.0);
        }
        Enclosure::rounded(lo, hi)
    }
}

impl Mul<f64> for Enclosure {
    type Output = Enclosure;

    fn mul(self, rhs: f64) -> Enclosure {
        self * Enclosure::point(rhs)
    }
}
