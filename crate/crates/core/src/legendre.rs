//! Convex potentials and their Legendre conjugates.
//!
//! A potential `Φ` on `[α1, α2]` is stored as its increasing derivative `φ`
//! plus the anchor value `Φ(α1)`; values come from quadrature on demand. The
//! conjugate is anchored by `Φ(α1) + Ψ(β1) = α1·β1`, so that
//!
//! ```text
//! Φ(a) + Ψ(b) − a·b = F(a, b)
//! ```
//!
//! with `F` the Young remainder of `φ`.

use crate::area::{drift, phi_area, psi_area, Route};
use crate::enclosure::Enclosure;
use crate::error::{Error, Result};
use crate::monotone::{ConjugatePair, Interval, MonotoneFn};
use crate::quadrature::QuadratureConfig;
use crate::young_gap::{merkle_from, upper_bound_from, GapReport, DEFAULT_CERT_TOL};

/// A potential `Φ` and its conjugate `Ψ`, both given through `φ`.
#[derive(Debug, Clone, PartialEq)]
pub struct LegendrePair {
    pair: ConjugatePair,
    phi_anchor: f64,
}

impl LegendrePair {
    /// `Φ` with derivative `phi` and `Φ(α1) = phi_anchor`.
    pub fn new(phi: MonotoneFn, phi_anchor: f64) -> Result<Self> {
        Self::from_pair(ConjugatePair::new(phi), phi_anchor)
    }

    pub fn from_pair(pair: ConjugatePair, phi_anchor: f64) -> Result<Self> {
        if !phi_anchor.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "anchor value must be finite, got {phi_anchor}"
            )));
        }
        Ok(Self { pair, phi_anchor })
    }

    pub fn pair(&self) -> &ConjugatePair {
        &self.pair
    }

    pub fn phi(&self) -> &MonotoneFn {
        self.pair.phi()
    }

    /// `Φ(α1)`.
    pub fn phi_anchor(&self) -> f64 {
        self.phi_anchor
    }

    /// `Ψ(β1) = α1·β1 − Φ(α1)`, as an enclosure since the product rounds.
    pub fn psi_anchor(&self) -> Enclosure {
        Enclosure::point(self.pair.domain().lo()) * self.pair.codomain().lo() - self.phi_anchor
    }

    /// Enclosure of `Φ(x)`.
    pub fn potential(&self, x: f64, cfg: &QuadratureConfig) -> Result<Enclosure> {
        let area = phi_area(&self.pair, x, cfg, Route::Direct)?;
        Ok(area.value + self.phi_anchor)
    }

    /// Enclosure of `Ψ(b)`; see [`conjugate_value`].
    pub fn conjugate(&self, b: f64, cfg: &QuadratureConfig) -> Result<Enclosure> {
        conjugate_value(self, b, cfg)
    }

    /// The pair with the roles of `Φ` and `Ψ` exchanged, available when `φ`
    /// has a closed-form inverse.
    pub fn dual(&self) -> Result<LegendrePair> {
        let psi = self.phi().inverse_fn().ok_or_else(|| {
            Error::InvalidFunction("no closed-form inverse for this family".into())
        })?;
        // Ψ(β1) rounded to nearest; the dual's anchor identity then holds to
        // within one rounding.
        let anchor = self.pair.domain().lo() * self.pair.codomain().lo() - self.phi_anchor;
        LegendrePair::from_pair(
            ConjugatePair::new(psi).with_inverse_tol(self.pair.inverse_tol())?,
            anchor,
        )
    }
}

/// `Φ(α1) + ∫_{α1}^{x} φ` for a potential given by its derivative.
pub fn potential_from_derivative(
    phi: &MonotoneFn,
    anchor_value: f64,
    x: f64,
    cfg: &QuadratureConfig,
) -> Result<Enclosure> {
    LegendrePair::new(phi.clone(), anchor_value)?.potential(x, cfg)
}

/// Enclosure of `Ψ(b) = Ψ(β1) + ∫_{β1}^{b} ψ`.
///
/// The integral is the primary value. It is cross-checked against
/// `b·ψ(b) − Φ(ψ(b))`, evaluated over the whole enclosure of `ψ(b)`; if the
/// two disagree the result is [`Error::Inconsistent`].
pub fn conjugate_value(pair: &LegendrePair, b: f64, cfg: &QuadratureConfig) -> Result<Enclosure> {
    let p = pair.pair();
    p.codomain().check("b", b)?;
    let area = psi_area(p, b, cfg, Route::Direct)?;
    let value = area.value + pair.psi_anchor();

    let x = p.invert(b)?;
    let at_lo = Enclosure::point(b) * x.lo() - pair.potential(x.lo(), cfg)?;
    // d/dx (b·x − Φ(x)) = b − φ(x)
    let pointwise = at_lo + drift(pair.phi(), b, x);
    if !value.overlaps(&pointwise) {
        return Err(Error::Inconsistent {
            what: "conjugate value",
            first: value,
            second: pointwise,
        });
    }
    Ok(value)
}

/// `Φ(a) + Ψ(b) − a·b` and the bound `−(φ(a) − b)(ψ(b) − a)`, as a
/// [`GapReport`]. Each potential gets half of `cfg.target_width`.
pub fn legendre_gap_report(
    pair: &LegendrePair,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<GapReport> {
    let p = pair.pair();
    p.domain().check("a", a)?;
    p.codomain().check("b", b)?;
    let half = cfg.with_target_width(cfg.target_width / 2.0);
    let big_phi = pair.potential(a, &half)?;
    let big_psi = conjugate_value(pair, b, &half)?;
    let remainder = big_phi + big_psi - Enclosure::point(a) * b;

    let psi_b = p.invert(b)?;
    let phi_a = pair.phi().eval(a)?;
    let upper_bound = upper_bound_from(a, b, psi_b, pair.phi().eval_enclosure(a)?);
    let merkle_bound = (p.domain().lo() == 0.0 && p.codomain().lo() == 0.0)
        .then(|| merkle_from(a, b, phi_a, psi_b.mid()));
    Ok(GapReport {
        a,
        b,
        remainder,
        upper_bound,
        merkle_bound,
        psi_b,
        phi_a,
        equality_detected: remainder.within(DEFAULT_CERT_TOL)
            && upper_bound.within(DEFAULT_CERT_TOL),
    })
}

/// Default domain cap for [`PowerFamily`].
pub const DEFAULT_POWER_CAP: f64 = 2.0;

/// `Φ(a) = a^α/α` on `[0, M]` with conjugate `Ψ(b) = b^β/β` on `[0, M^(α−1)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerFamily {
    alpha: f64,
    beta: f64,
    cap: f64,
}

impl PowerFamily {
    /// Exponents must satisfy `1/α + 1/β = 1` to within `1e-12`.
    pub fn new(alpha: f64, beta: f64, cap: f64) -> Result<Self> {
        if !(alpha > 1.0 && beta > 1.0 && alpha.is_finite() && beta.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "exponents must exceed 1, got α={alpha}, β={beta}"
            )));
        }
        if (alpha.recip() + beta.recip() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!(
                "exponents are not conjugate: 1/{alpha} + 1/{beta} ≠ 1"
            )));
        }
        if !(cap.is_finite() && cap > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "domain cap must be positive, got {cap}"
            )));
        }
        Ok(Self { alpha, beta, cap })
    }

    /// `β = α/(α − 1)` and the default cap.
    pub fn from_alpha(alpha: f64) -> Result<Self> {
        Self::new(alpha, alpha / (alpha - 1.0), DEFAULT_POWER_CAP)
    }

    pub fn with_cap(self, cap: f64) -> Result<Self> {
        Self::new(self.alpha, self.beta, cap)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Upper end of the `a` interval.
    pub fn cap(&self) -> f64 {
        self.cap
    }

    /// Upper end of the `b` interval, `M^(α−1)`.
    pub fn b_cap(&self) -> f64 {
        self.cap.powf(self.alpha - 1.0)
    }

    /// `φ(a) = a^(α−1)` on `[0, M]`.
    pub fn phi(&self) -> Result<MonotoneFn> {
        MonotoneFn::power(1.0, self.alpha - 1.0, Interval::new(0.0, self.cap)?)
    }

    /// The pair with `Φ(0) = 0`.
    pub fn legendre_pair(&self) -> Result<LegendrePair> {
        LegendrePair::new(self.phi()?, 0.0)
    }

    pub(crate) fn check_point(&self, a: f64, b: f64) -> Result<()> {
        Interval::new(0.0, self.cap)?.check("a", a)?;
        Interval::new(0.0, self.b_cap())?.check("b", b)
    }
}

/// `(1/α)·b^β + (1/β)·a^α − b^(β−1)·a^(α−1)`, the difference between the
/// upper bound and the remainder for the power family. Never negative.
pub fn holder_gap(fam: &PowerFamily, a: f64, b: f64) -> Result<f64> {
    fam.check_point(a, b)?;
    let (al, be) = (fam.alpha, fam.beta);
    Ok(b.powf(be) / al + a.powf(al) / be - b.powf(be - 1.0) * a.powf(al - 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    fn quadratic() -> LegendrePair {
        PowerFamily::from_alpha(2.0).unwrap().legendre_pair().unwrap()
    }

    fn cubic() -> LegendrePair {
        PowerFamily::from_alpha(3.0).unwrap().legendre_pair().unwrap()
    }

    #[test]
    fn potential_examples() {
        let id = MonotoneFn::monomial(1.0, 0.0, 2.0).unwrap();
        assert!(potential_from_derivative(&id, 0.0, 2.0, &cfg()).unwrap().contains(2.0));
        assert_eq!(
            potential_from_derivative(&id, 0.0, 0.0, &cfg()).unwrap(),
            Enclosure::point(0.0)
        );
        let sq = MonotoneFn::monomial(2.0, 0.0, 2.0).unwrap();
        let e = potential_from_derivative(&sq, 0.0, 2.0, &cfg()).unwrap();
        assert!(e.contains(8.0 / 3.0) && e.width() <= 1e-9, "{e}");
        assert!(potential_from_derivative(&sq, 0.0, 2.5, &cfg()).unwrap_err().is_domain());
    }

    #[test]
    fn conjugate_examples() {
        let e = conjugate_value(&quadratic(), 1.0, &cfg()).unwrap();
        assert!(e.contains(0.5) && e.width() <= 1e-9, "{e}");
        let e = conjugate_value(&cubic(), 1.0, &cfg()).unwrap();
        assert!(e.contains(2.0 / 3.0) && e.width() <= 1e-9, "{e}");
        // anchor: Ψ(β1) = α1·β1 − Φ(α1)
        let p = LegendrePair::new(
            MonotoneFn::affine(2.0, 1.0, Interval::new(1.0, 3.0).unwrap()).unwrap(),
            0.25,
        )
        .unwrap();
        let e = conjugate_value(&p, 3.0, &cfg()).unwrap();
        assert!(e.contains(3.0 - 0.25), "{e}");
    }

    #[test]
    fn report_examples() {
        let r = legendre_gap_report(&quadratic(), 1.0, 0.0, &cfg()).unwrap();
        assert!(r.remainder.contains(0.5) && r.upper_bound.contains(1.0));
        let r = legendre_gap_report(&quadratic(), 1.0, 1.0, &cfg()).unwrap();
        assert!(r.remainder.contains(0.0) && r.upper_bound.contains(0.0));
        assert!(r.equality_detected);
        let r = legendre_gap_report(&cubic(), 2.0, 1.0, &cfg()).unwrap();
        assert!(r.remainder.contains(4.0 / 3.0), "{}", r.remainder);
        assert!(r.upper_bound.contains(3.0));
    }

    #[test]
    fn dual_swaps_roles() {
        let p = cubic();
        let d = p.dual().unwrap();
        assert_eq!(d.phi().domain(), p.phi().codomain());
        // conjugating Ψ gives back Φ(1) = 1/3
        let e = d.conjugate(1.0, &cfg()).unwrap();
        assert!(e.contains(1.0 / 3.0), "{e}");
    }

    #[test]
    fn holder_examples() {
        let sym = PowerFamily::from_alpha(2.0).unwrap().with_cap(4.0).unwrap();
        assert_eq!(holder_gap(&sym, 3.0, 4.0).unwrap(), 0.5);
        assert_eq!(holder_gap(&sym, 1.0, 1.0).unwrap(), 0.0);
        let fam = PowerFamily::new(3.0, 1.5, 2.0).unwrap();
        assert!(holder_gap(&fam, 1.0, 1.0).unwrap().abs() < 1e-15);
    }

    #[test]
    fn holder_respects_caps() {
        let fam = PowerFamily::from_alpha(2.0).unwrap();
        assert!(holder_gap(&fam, 3.0, 1.0).unwrap_err().is_domain());
        assert!(holder_gap(&fam, 1.0, -1.0).unwrap_err().is_domain());
    }

    #[test]
    fn exponents_must_be_conjugate() {
        assert!(PowerFamily::new(3.0, 2.0, 2.0).is_err());
        assert!(PowerFamily::new(1.0, f64::INFINITY, 2.0).is_err());
        let f = PowerFamily::from_alpha(4.0).unwrap();
        assert!((f.beta() - 4.0 / 3.0).abs() < 1e-15);
    }
}
