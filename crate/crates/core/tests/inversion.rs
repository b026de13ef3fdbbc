mod common;

use common::strategies::{any_fn, closed_under_inverse, invertible_fn, unit};
use proptest::prelude::*;
use young_cert::monotone::{ConjugatePair, MonotoneFn, DEFAULT_INVERSE_TOL};

fn y_at(pair: &ConjugatePair, t: f64) -> f64 {
    let c = pair.codomain();
    (c.lo() + t * c.len()).min(c.hi())
}

proptest! {
    #[test]
    fn enclosure_brackets_the_preimage(f in any_fn(), t in unit()) {
        let pair = ConjugatePair::new(f.clone());
        let y = y_at(&pair, t);
        let x = pair.invert(y).unwrap();
        prop_assert!(x.width() <= DEFAULT_INVERSE_TOL);
        prop_assert!(f.eval(x.lo()).unwrap() <= y && y <= f.eval(x.hi()).unwrap(), "{x} for y={y}");
    }

    #[test]
    fn round_trip_recovers_x(f in any_fn(), s in unit()) {
        let d = f.domain();
        let x = (d.lo() + s * d.len()).min(d.hi());
        let pair = ConjugatePair::new(f.clone());
        let back = pair.invert(f.eval(x).unwrap()).unwrap();
        // φ(x) is rounded, so x itself may sit just outside the bracket
        let slack = DEFAULT_INVERSE_TOL + 1e-12 * x.abs().max(1.0);
        prop_assert!(back.lo() - slack <= x && x <= back.hi() + slack, "{back} vs {x}");
    }

    #[test]
    fn inverse_preserves_order(f in any_fn(), t1 in unit(), t2 in unit()) {
        let pair = ConjugatePair::new(f);
        let (y1, y2) = (y_at(&pair, t1.min(t2)), y_at(&pair, t1.max(t2)));
        let (x1, x2) = (pair.invert(y1).unwrap(), pair.invert(y2).unwrap());
        prop_assert!(x1.lo() <= x2.hi());
    }

    #[test]
    fn bisection_brackets_are_nested(f in any_fn(), t in unit()) {
        let pair = ConjugatePair::new(f.clone());
        let y = y_at(&pair, t);
        let mut prev = None;
        for e in pair.bisect(y).take(80) {
            if let Some(p) = prev {
                prop_assert!(young_cert::enclosure::Enclosure::contains_enclosure(&p, &e));
            }
            prop_assert!(f.eval(e.lo()).unwrap() <= y && y <= f.eval(e.hi()).unwrap());
            prev = Some(e);
        }
    }

    #[test]
    fn closed_form_agrees_with_bisection(f in invertible_fn(), t in unit()) {
        let pair = ConjugatePair::new(f);
        let y = y_at(&pair, t);
        let fast = pair.invert(y).unwrap();
        let slow = pair.invert_by_bisection(y).unwrap();
        prop_assert!(fast.overlaps(&slow), "{fast} vs {slow}");
    }

    #[test]
    fn inverse_function_is_an_inverse(f in closed_under_inverse(), s in unit()) {
        let g = f.inverse_fn().unwrap();
        prop_assert_eq!(g.domain(), f.codomain());
        let d = f.domain();
        let x = (d.lo() + s * d.len()).min(d.hi());
        let back = g.eval(f.eval(x).unwrap()).unwrap();
        prop_assert!((back - x).abs() <= 1e-9 * x.abs().max(1.0), "{back} vs {x}");
    }
}

#[test]
fn end_values_invert_exactly() {
    let f = MonotoneFn::monomial(3.0, 0.5, 2.0).unwrap();
    let pair = ConjugatePair::new(f);
    assert_eq!(pair.invert(0.125).unwrap().width(), 0.0);
    assert_eq!(pair.invert(8.0).unwrap().lo(), 2.0);
}

#[test]
fn values_outside_the_codomain_are_rejected() {
    let pair = ConjugatePair::new(MonotoneFn::monomial(2.0, 0.0, 2.0).unwrap());
    assert!(pair.invert(4.5).unwrap_err().is_domain());
    assert!(pair.invert(-0.1).unwrap_err().is_domain());
}
