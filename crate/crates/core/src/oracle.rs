//! Reference values that do not go through the enclosure machinery.
//!
//! Nothing here calls quadrature or inversion, so tests can compare the
//! certified results against values computed a different way.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::legendre::PowerFamily;
use crate::monotone::MonotoneFn;
use crate::summation::NeumaierSum;

/// Panel count of [`fine_riemann_reference`].
pub const REFERENCE_PANELS: usize = 1 << 22;

fn check_nonnegative(a: f64, b: f64) -> Result<()> {
    for (what, v) in [("a", a), ("b", b)] {
        if !(v >= 0.0 && v.is_finite()) {
            return Err(Error::Domain {
                what,
                value: v,
                lo: 0.0,
                hi: f64::INFINITY,
            });
        }
    }
    Ok(())
}

/// `a^α/α + b^β/β − a·b`.
pub fn power_remainder(fam: &PowerFamily, a: f64, b: f64) -> Result<f64> {
    check_nonnegative(a, b)?;
    let (al, be) = (fam.alpha(), fam.beta());
    Ok(a.powf(al) / al + b.powf(be) / be - a * b)
}

/// `−(a^(α−1) − b)·(b^(β−1) − a)`.
pub fn power_upper_bound(fam: &PowerFamily, a: f64, b: f64) -> Result<f64> {
    check_nonnegative(a, b)?;
    let (al, be) = (fam.alpha(), fam.beta());
    Ok(-(a.powf(al - 1.0) - b) * (b.powf(be - 1.0) - a))
}

/// `max{a^α, b^β} − a·b`.
pub fn power_merkle(fam: &PowerFamily, a: f64, b: f64) -> Result<f64> {
    check_nonnegative(a, b)?;
    Ok(a.powf(fam.alpha()).max(b.powf(fam.beta())) - a * b)
}

/// Midpoint rule with [`REFERENCE_PANELS`] panels. A reference value, not a
/// bound.
pub fn fine_riemann_reference(f: &MonotoneFn, lo: f64, hi: f64) -> Result<f64> {
    let d = f.domain();
    d.check("lo", lo)?;
    d.check("hi", hi)?;
    if lo > hi {
        return Err(Error::InvalidArgument(format!(
            "reference range is reversed: [{lo}, {hi}]"
        )));
    }
    if lo == hi {
        return Ok(0.0);
    }
    let h = (hi - lo) / REFERENCE_PANELS as f64;
    let sum: NeumaierSum = (0..REFERENCE_PANELS)
        .map(|i| f.value(lo + (i as f64 + 0.5) * h))
        .collect();
    Ok(sum.total() * h)
}

/// Exact values for one point of a power family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedFormCase {
    pub alpha: f64,
    pub beta: f64,
    pub point: (f64, f64),
    pub f_exact: f64,
    pub ub_exact: f64,
    pub merkle_exact: Option<f64>,
}

impl ClosedFormCase {
    pub fn new(fam: &PowerFamily, a: f64, b: f64) -> Result<Self> {
        Ok(Self {
            alpha: fam.alpha(),
            beta: fam.beta(),
            point: (a, b),
            f_exact: power_remainder(fam, a, b)?,
            ub_exact: power_upper_bound(fam, a, b)?,
            merkle_exact: Some(power_merkle(fam, a, b)?),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(alpha: f64) -> PowerFamily {
        PowerFamily::from_alpha(alpha).unwrap()
    }

    #[test]
    fn remainder_examples() {
        assert_eq!(power_remainder(&fam(2.0), 1.0, 0.0).unwrap(), 0.5);
        for x in [0.0, 0.3, 1.0, 1.7] {
            assert!(power_remainder(&fam(2.0), x, x).unwrap().abs() <= 1e-15 * x * x);
        }
        let v = power_remainder(&fam(3.0), 2.0, 1.0).unwrap();
        assert!((v - 4.0 / 3.0).abs() < 1e-15);
        assert!(power_remainder(&fam(2.0), -1.0, 0.0).unwrap_err().is_domain());
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(power_upper_bound(&fam(2.0), 1.0, 0.0).unwrap(), 1.0);
        assert_eq!(power_upper_bound(&fam(2.0), 1.5, 1.5).unwrap(), 0.0);
        assert!((power_upper_bound(&fam(3.0), 2.0, 1.0).unwrap() - 3.0).abs() < 1e-15);
        assert!(power_upper_bound(&fam(3.0), 0.0, -2.0).unwrap_err().is_domain());
    }

    #[test]
    fn remainder_vanishes_on_the_graph() {
        for alpha in [2.0, 3.0, 4.0] {
            let f = fam(alpha);
            for i in 0..=20 {
                let a = i as f64 * 0.1;
                let b = a.powf(alpha - 1.0);
                assert!(power_remainder(&f, a, b).unwrap().abs() <= 1e-12, "α={alpha}, a={a}");
            }
        }
    }

    #[test]
    fn merkle_spot_value() {
        // identity: max{4, 1} − 2
        assert_eq!(power_merkle(&fam(2.0), 2.0, 1.0).unwrap(), 2.0);
        let c = ClosedFormCase::new(&fam(2.0), 2.0, 1.0).unwrap();
        assert_eq!((c.ub_exact, c.merkle_exact), (1.0, Some(2.0)));
    }

    #[test]
    fn reference_examples() {
        let id = MonotoneFn::monomial(1.0, 0.0, 2.0).unwrap();
        assert!((fine_riemann_reference(&id, 0.0, 1.0).unwrap() - 0.5).abs() < 1e-12);
        assert_eq!(fine_riemann_reference(&id, 1.0, 1.0).unwrap(), 0.0);
        let sq = MonotoneFn::monomial(2.0, 0.0, 2.0).unwrap();
        assert!((fine_riemann_reference(&sq, 0.0, 2.0).unwrap() - 8.0 / 3.0).abs() < 1e-10);
        assert!(fine_riemann_reference(&sq, 0.0, 3.0).unwrap_err().is_domain());
    }
}
