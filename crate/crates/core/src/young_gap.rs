//! The Young remainder
//!
//! ```text
//! F(a, b) = ∫_{α1}^{a} φ + ∫_{β1}^{b} ψ − a·b + α1·β1
//! ```
//!
//! and the two-sided bound `0 <= F(a, b) <= −(ψ(b) − a)(φ(a) − b)`, where
//! both sides are equalities exactly when `b = φ(a)`. Everything here returns
//! enclosures; [`certify`] turns them into verdicts.

use rayon::prelude::*;
use serde::Serialize;

use crate::area::{phi_area, psi_area, Route};
use crate::enclosure::Enclosure;
use crate::error::{Error, Result};
use crate::monotone::ConjugatePair;
use crate::quadrature::QuadratureConfig;

/// Default absolute tolerance for certification and equality detection.
pub const DEFAULT_CERT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Certified,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EqualityVerdict {
    Equality,
    StrictInequality,
    Inconclusive,
}

/// What was spent to reach a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Effort {
    /// Largest panel count used by any integral in the final stage.
    pub panels: usize,
    /// Target width of the final refinement stage.
    pub target_width: f64,
    /// Width of the remainder enclosure actually achieved.
    pub achieved_width: f64,
    /// Number of refinement stages run.
    pub stages: usize,
    pub cert_tol: f64,
    pub inverse_tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Certificate {
    pub point: (f64, f64),
    pub lower_holds: Verdict,
    pub upper_holds: Verdict,
    pub equality_case: EqualityVerdict,
    /// The upper verdict was checked against the low end of the bound's
    /// enclosure, not just its high end.
    pub upper_conservative: bool,
    pub effort: Effort,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapReport {
    pub a: f64,
    pub b: f64,
    /// Enclosure of `F(a, b)`.
    pub remainder: Enclosure,
    /// Enclosure of `−(ψ(b) − a)(φ(a) − b)`.
    pub upper_bound: Enclosure,
    /// `max{a·φ(a), b·ψ(b)} − a·b`, only when both intervals start at 0.
    pub merkle_bound: Option<f64>,
    pub psi_b: Enclosure,
    pub phi_a: f64,
    pub equality_detected: bool,
}

impl GapReport {
    /// Verdicts `(lower, upper, equality)` read off the recorded enclosures.
    pub fn verdicts(&self, cert_tol: f64) -> (Verdict, Verdict, EqualityVerdict) {
        let j = Judgement::of(&self.remainder, &self.upper_bound, cert_tol);
        (j.lower, j.upper, j.equality)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Certification {
    pub certificate: Certificate,
    pub report: GapReport,
}

fn check_point(pair: &ConjugatePair, a: f64, b: f64) -> Result<()> {
    pair.domain().check("a", a)?;
    pair.codomain().check("b", b)
}

/// Half the target goes to each of the two areas.
fn area_config(cfg: &QuadratureConfig) -> QuadratureConfig {
    cfg.with_target_width(cfg.target_width / 2.0)
}

/// Remainder enclosure plus the largest panel count used.
pub(crate) fn remainder_with_effort(
    pair: &ConjugatePair,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<(Enclosure, usize)> {
    check_point(pair, a, b)?;
    cfg.validate()?;
    let half = area_config(cfg);
    let mut short = false;
    let mut absorb = |r: Result<crate::area::Area>| match r {
        Ok(area) => Ok((area.value, area.panels)),
        Err(Error::BudgetExceeded { best, panels }) => {
            short = true;
            Ok((best, panels))
        }
        Err(e) => Err(e),
    };
    let (under_phi, p1) = absorb(phi_area(pair, a, &half, Route::Direct))?;
    let (under_psi, p2) = absorb(psi_area(pair, b, &half, Route::Complement))?;
    let corner = Enclosure::point(pair.domain().lo()) * pair.codomain().lo();
    let value = under_phi + under_psi - Enclosure::point(a) * b + corner;
    let panels = p1.max(p2);
    if short && value.width() > cfg.target_width {
        return Err(Error::BudgetExceeded {
            best: value,
            panels,
        });
    }
    Ok((value, panels))
}

/// Enclosure of `F(a, b)` no wider than `cfg.target_width`.
///
/// On [`Error::BudgetExceeded`] the error carries the best enclosure found.
pub fn remainder_enclosure(
    pair: &ConjugatePair,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<Enclosure> {
    remainder_with_effort(pair, a, b, cfg).map(|(e, _)| e)
}

/// `F(x, b)` for `x` only known to lie in `x_range`.
///
/// `∂F/∂x = φ(x) − b`, so over the range `F` moves from its value at the
/// midpoint by at most half the width times `max |φ − b|` at the ends.
fn remainder_over(
    pair: &ConjugatePair,
    x_range: Enclosure,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<Enclosure> {
    let mid = x_range.mid();
    let at_mid = remainder_enclosure(pair, mid, b, cfg)?;
    if x_range.width() == 0.0 {
        return Ok(at_mid);
    }
    let phi = pair.phi();
    let slope = (phi.eval(x_range.lo())? - b)
        .abs()
        .max((phi.eval(x_range.hi())? - b).abs());
    let reach = (x_range.hi() - mid).max(mid - x_range.lo());
    Ok(at_mid.inflate(reach * slope))
}

/// Enclosure of `−(ψ(b) − a)(φ(a) − b)`, with `ψ(b)` from [`ConjugatePair::invert`].
pub fn upper_bound_enclosure(pair: &ConjugatePair, a: f64, b: f64) -> Result<Enclosure> {
    check_point(pair, a, b)?;
    let psi_b = pair.invert(b)?;
    let phi_a = pair.phi().eval_enclosure(a)?;
    Ok(upper_bound_from(a, b, psi_b, phi_a))
}

pub(crate) fn upper_bound_from(a: f64, b: f64, psi_b: Enclosure, phi_a: Enclosure) -> Enclosure {
    -((psi_b - a) * (phi_a - b))
}

/// Enclosure of the slack `F(a, b) + F(a2, b2) + (a2 − a)(b2 − b)`, which is
/// nonnegative and vanishes exactly when `a2 = ψ(b)` and `b2 = φ(a)`.
pub fn pair_inequality_gap(
    pair: &ConjugatePair,
    a: f64,
    b: f64,
    a2: f64,
    b2: f64,
    cfg: &QuadratureConfig,
) -> Result<Enclosure> {
    check_point(pair, a, b)?;
    check_point(pair, a2, b2)?;
    let first = remainder_enclosure(pair, a, b, cfg)?;
    let second = remainder_enclosure(pair, a2, b2, cfg)?;
    let cross = (Enclosure::point(a2) - a) * (Enclosure::point(b2) - b);
    Ok(first + second + cross)
}

/// Enclosure of `F(a, b) + F(ψ(b), φ(a)) + (ψ(b) − a)(φ(a) − b)`, which is
/// identically zero.
pub fn proof_identity_residual(
    pair: &ConjugatePair,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<Enclosure> {
    check_point(pair, a, b)?;
    let psi_b = pair.invert(b)?;
    let phi_a = pair.phi().eval(a)?;
    let first = remainder_enclosure(pair, a, b, cfg)?;
    let second = remainder_over(pair, psi_b, phi_a, cfg)?;
    let cross = (psi_b - a) * (Enclosure::point(phi_a) - b);
    Ok(first + second + cross)
}

/// `max{a·φ(a), b·ψ(b)} − a·b` with `ψ(b)` taken at the midpoint of its
/// enclosure. Only defined when both intervals start at 0.
pub fn merkle_bound(pair: &ConjugatePair, a: f64, b: f64) -> Result<f64> {
    let (alpha1, beta1) = (pair.domain().lo(), pair.codomain().lo());
    if alpha1 != 0.0 || beta1 != 0.0 {
        return Err(Error::UnsupportedOrigin { alpha1, beta1 });
    }
    check_point(pair, a, b)?;
    let phi_a = pair.phi().eval(a)?;
    let psi_b = pair.invert(b)?.mid();
    Ok(merkle_from(a, b, phi_a, psi_b))
}

pub(crate) fn merkle_from(a: f64, b: f64, phi_a: f64, psi_b: f64) -> f64 {
    (a * phi_a).max(b * psi_b) - a * b
}

/// Verdicts for one pair of enclosures.
struct Judgement {
    lower: Verdict,
    upper: Verdict,
    equality: EqualityVerdict,
    upper_conservative: bool,
}

impl Judgement {
    fn of(remainder: &Enclosure, bound: &Enclosure, tol: f64) -> Self {
        let lower = if remainder.lo() >= -tol {
            Verdict::Certified
        } else {
            Verdict::Inconclusive
        };
        let upper_conservative = remainder.hi() <= bound.lo() + tol;
        // A tight bound is compared on its low side so interval slack
        // cannot hide a violation.
        let upper_ok = remainder.hi() <= bound.hi() + tol
            && (bound.width() > tol || upper_conservative);
        let upper = if upper_ok {
            Verdict::Certified
        } else {
            Verdict::Inconclusive
        };
        let equality = if remainder.within(tol) && bound.within(tol) {
            EqualityVerdict::Equality
        } else if remainder.lo() > tol && bound.lo() > tol {
            EqualityVerdict::StrictInequality
        } else {
            EqualityVerdict::Inconclusive
        };
        Self {
            lower,
            upper,
            equality,
            upper_conservative,
        }
    }

    fn conclusive(&self) -> bool {
        self.lower == Verdict::Certified
            && self.upper == Verdict::Certified
            && self.equality != EqualityVerdict::Inconclusive
    }
}

/// Shrink factor between refinement stages in [`certify`].
const STAGE_SHRINK: f64 = 8.0;

/// Certifies `0 <= F(a, b) <= −(ψ(b) − a)(φ(a) − b)` at one point.
///
/// Refinement starts at a width of `cert_tol / 2`, which is always enough
/// for both bounds, and tightens towards `cfg.target_width` only while the
/// equality verdict is still open. Running out of panels is not an error;
/// it leaves the affected verdicts `Inconclusive`.
pub fn certify(
    pair: &ConjugatePair,
    a: f64,
    b: f64,
    cert_tol: f64,
    cfg: &QuadratureConfig,
) -> Result<Certification> {
    check_point(pair, a, b)?;
    cfg.validate()?;
    if !(cert_tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "certification tolerance must be positive, got {cert_tol}"
        )));
    }
    let psi_b = pair.invert(b)?;
    let phi_a = pair.phi().eval(a)?;
    let bound = upper_bound_from(a, b, psi_b, pair.phi().eval_enclosure(a)?);

    let mut target = (cert_tol / 2.0).max(cfg.target_width);
    let mut stages = 0;
    let (remainder, panels, judgement) = loop {
        stages += 1;
        let stage_cfg = cfg.with_target_width(target);
        let (remainder, panels, exhausted) = match remainder_with_effort(pair, a, b, &stage_cfg) {
            Ok((e, p)) => (e, p, false),
            Err(Error::BudgetExceeded { best, panels }) => (best, panels, true),
            Err(e) => return Err(e),
        };
        let judgement = Judgement::of(&remainder, &bound, cert_tol);
        if judgement.conclusive() || exhausted || target <= cfg.target_width {
            break (remainder, panels, judgement);
        }
        target = (target / STAGE_SHRINK).max(cfg.target_width);
    };

    let merkle = if pair.domain().lo() == 0.0 && pair.codomain().lo() == 0.0 {
        Some(merkle_from(a, b, phi_a, psi_b.mid()))
    } else {
        None
    };
    let certificate = Certificate {
        point: (a, b),
        lower_holds: judgement.lower,
        upper_holds: judgement.upper,
        equality_case: judgement.equality,
        upper_conservative: judgement.upper_conservative,
        effort: Effort {
            panels,
            target_width: target,
            achieved_width: remainder.width(),
            stages,
            cert_tol,
            inverse_tol: pair.inverse_tol(),
        },
    };
    let report = GapReport {
        a,
        b,
        remainder,
        upper_bound: bound,
        merkle_bound: merkle,
        psi_b,
        phi_a,
        equality_detected: judgement.equality == EqualityVerdict::Equality,
    };
    Ok(Certification {
        certificate,
        report,
    })
}

/// Certifies every point of `grid_a × grid_b` in row-major order.
///
/// Points are checked up front; the first one out of range is reported with
/// its row-major index. Points are evaluated in parallel but each is computed
/// independently, so the output does not depend on scheduling.
pub fn sweep(
    pair: &ConjugatePair,
    grid_a: &[f64],
    grid_b: &[f64],
    cert_tol: f64,
    cfg: &QuadratureConfig,
) -> Result<Vec<GapReport>> {
    let points: Vec<(f64, f64)> = grid_a
        .iter()
        .flat_map(|&a| grid_b.iter().map(move |&b| (a, b)))
        .collect();
    if let Some((index, &(a, b))) = points
        .iter()
        .enumerate()
        .find(|(_, &(a, b))| check_point(pair, a, b).is_err())
    {
        return Err(Error::GridDomain { index, a, b });
    }
    points
        .par_iter()
        .map(|&(a, b)| certify(pair, a, b, cert_tol, cfg).map(|c| c.report))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monotone::{Interval, MonotoneFn};

    fn identity() -> ConjugatePair {
        ConjugatePair::new(MonotoneFn::monomial(1.0, 0.0, 2.0).unwrap())
    }

    fn square() -> ConjugatePair {
        ConjugatePair::new(MonotoneFn::monomial(2.0, 0.0, 2.0).unwrap())
    }

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn remainder_examples() {
        let f = remainder_enclosure(&identity(), 1.0, 0.0, &cfg()).unwrap();
        assert!(f.contains(0.5), "{f}");
        let f = remainder_enclosure(&identity(), 1.0, 1.0, &cfg()).unwrap();
        assert!(f.contains(0.0) && f.width() <= 2e-9, "{f}");
        let f = remainder_enclosure(&square(), 2.0, 1.0, &cfg()).unwrap();
        assert!(f.contains(4.0 / 3.0) && f.width() <= 1e-9, "{f}");
    }

    #[test]
    fn upper_bound_examples() {
        assert!(upper_bound_enclosure(&identity(), 1.0, 0.0).unwrap().contains(1.0));
        assert!(upper_bound_enclosure(&identity(), 1.0, 1.0).unwrap().contains(0.0));
        assert!(upper_bound_enclosure(&square(), 2.0, 1.0).unwrap().contains(3.0));
    }

    #[test]
    fn out_of_range_points_are_domain_errors() {
        assert!(remainder_enclosure(&identity(), 3.0, 0.0, &cfg())
            .unwrap_err()
            .is_domain());
        assert!(upper_bound_enclosure(&identity(), 0.0, -1.0)
            .unwrap_err()
            .is_domain());
    }

    #[test]
    fn pair_gap_examples() {
        let p = identity();
        for (a, b, a2, b2) in [(1.0, 0.0, 0.0, 1.0), (1.0, 1.0, 1.0, 1.0), (2.0, 0.0, 0.0, 2.0)] {
            let g = pair_inequality_gap(&p, a, b, a2, b2, &cfg()).unwrap();
            assert!(g.contains(0.0) && g.within(1e-8), "{g}");
        }
        // away from the equality configuration the slack is positive
        let g = pair_inequality_gap(&p, 1.0, 0.0, 1.0, 0.0, &cfg()).unwrap();
        assert!(g.contains(1.0), "{g}");
    }

    #[test]
    fn proof_identity_examples() {
        for (p, a, b) in [(identity(), 1.0, 0.0), (square(), 2.0, 1.0), (square(), 1.3, 1.69)] {
            let r = proof_identity_residual(&p, a, b, &cfg()).unwrap();
            assert!(r.contains(0.0) && r.within(1e-8), "{r}");
        }
    }

    #[test]
    fn merkle_examples() {
        assert_eq!(merkle_bound(&identity(), 2.0, 1.0).unwrap(), 2.0);
        assert_eq!(merkle_bound(&identity(), 0.0, 0.0).unwrap(), 0.0);
        assert_eq!(merkle_bound(&square(), 2.0, 1.0).unwrap(), 6.0);
    }

    #[test]
    fn merkle_needs_origin() {
        let p = ConjugatePair::new(
            MonotoneFn::affine(1.0, 1.0, Interval::new(0.0, 1.0).unwrap()).unwrap(),
        );
        assert!(matches!(
            merkle_bound(&p, 0.5, 1.5),
            Err(Error::UnsupportedOrigin { .. })
        ));
    }

    #[test]
    fn certify_examples() {
        let c = certify(&identity(), 1.0, 0.0, 1e-8, &cfg()).unwrap().certificate;
        assert_eq!(c.lower_holds, Verdict::Certified);
        assert_eq!(c.upper_holds, Verdict::Certified);
        assert_eq!(c.equality_case, EqualityVerdict::StrictInequality);

        let c = certify(&identity(), 1.0, 1.0, 1e-8, &cfg()).unwrap();
        assert_eq!(c.certificate.equality_case, EqualityVerdict::Equality);
        assert!(c.report.equality_detected);

        let c = certify(&square(), 2.0, 1.0, 1e-8, &cfg()).unwrap();
        assert_eq!(c.certificate.equality_case, EqualityVerdict::StrictInequality);
        assert!(c.report.remainder.contains(4.0 / 3.0));
        assert!(c.report.upper_bound.contains(3.0));
        assert!(c.report.remainder.hi() <= c.report.upper_bound.lo());
        assert_eq!(c.report.merkle_bound, Some(6.0));
    }

    #[test]
    fn sweep_marks_the_diagonal() {
        let g = [0.0, 1.0, 2.0];
        let reports = sweep(&identity(), &g, &g, 1e-8, &cfg()).unwrap();
        assert_eq!(reports.len(), 9);
        for (i, r) in reports.iter().enumerate() {
            assert_eq!((r.a, r.b), (g[i / 3], g[i % 3]));
            assert_eq!(r.equality_detected, i / 3 == i % 3, "{r:?}");
        }
        assert!(sweep(&identity(), &[], &g, 1e-8, &cfg()).unwrap().is_empty());
    }

    #[test]
    fn sweep_reports_offending_index() {
        let err = sweep(&identity(), &[0.0, 3.0], &[0.0, 1.0], 1e-8, &cfg()).unwrap_err();
        assert_eq!(err, Error::GridDomain { index: 2, a: 3.0, b: 0.0 });
    }

    #[test]
    fn judgement_uses_conservative_side_for_tight_bounds() {
        let f = Enclosure::new(0.0, 1.0 + 5e-9);
        let ub = Enclosure::new(1.0 - 5e-9, 1.0);
        let j = Judgement::of(&f, &ub, 1e-8);
        assert_eq!(j.upper, Verdict::Certified);
        let f = Enclosure::new(0.0, 1.0 + 2e-8);
        let j = Judgement::of(&f, &ub, 1e-8);
        assert_eq!(j.upper, Verdict::Inconclusive);
    }
}
