#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use young_cert::legendre::PowerFamily;
use young_cert::monotone::{ConjugatePair, Interval, MonotoneFn};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The three conjugate exponent pairs used throughout: (2,2), (3,3/2), (4,4/3).
pub fn power_families() -> Vec<PowerFamily> {
    [2.0, 3.0, 4.0]
        .iter()
        .map(|&a| PowerFamily::from_alpha(a).unwrap())
        .collect()
}

pub fn random_table(rng: &mut ChaCha8Rng, n: usize) -> MonotoneFn {
    let mut x = rng.gen_range(-1.0..1.0);
    let mut y = rng.gen_range(-1.0..1.0);
    let mut pts = Vec::with_capacity(n);
    for _ in 0..n {
        pts.push((x, y));
        x += rng.gen_range(0.05..0.5);
        y += rng.gen_range(0.05..0.8);
    }
    MonotoneFn::table(&pts).unwrap()
}

/// A random member of one of the built-in families.
pub fn random_fn(rng: &mut ChaCha8Rng) -> MonotoneFn {
    match rng.gen_range(0..4) {
        0 => {
            let lo = if rng.gen_bool(0.5) { 0.0 } else { rng.gen_range(0.0..1.0) };
            let hi = lo + rng.gen_range(0.5..2.5);
            MonotoneFn::power(
                rng.gen_range(0.5..3.0),
                rng.gen_range(0.3..4.0),
                Interval::new(lo, hi).unwrap(),
            )
            .unwrap()
        }
        1 => {
            let lo = rng.gen_range(-1.0..1.0);
            MonotoneFn::affine(
                rng.gen_range(0.2..5.0),
                rng.gen_range(-2.0..2.0),
                Interval::new(lo, lo + rng.gen_range(0.5..2.5)).unwrap(),
            )
            .unwrap()
        }
        2 => {
            let lo = rng.gen_range(-1.0..1.0);
            MonotoneFn::exp_shift(
                rng.gen_range(-1.0..1.0),
                Interval::new(lo, lo + rng.gen_range(0.5..2.0)).unwrap(),
            )
            .unwrap()
        }
        _ => random_table(rng, 8),
    }
}

pub fn uniform_in(rng: &mut ChaCha8Rng, i: Interval) -> f64 {
    rng.gen_range(i.lo()..=i.hi())
}

/// A random pair and a random point of its domain × codomain.
pub fn random_instance(rng: &mut ChaCha8Rng) -> (ConjugatePair, f64, f64) {
    let pair = ConjugatePair::new(random_fn(rng));
    let a = uniform_in(rng, pair.domain());
    let b = uniform_in(rng, pair.codomain());
    (pair, a, b)
}

/// `n` evenly spaced points from `lo` to `hi`, ends exact.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| {
            if i + 1 == n {
                hi
            } else {
                lo + (hi - lo) * (i as f64 / (n - 1) as f64)
            }
        })
        .collect()
}

pub mod strategies {
    use proptest::prelude::*;

    use young_cert::monotone::{ConjugatePair, Interval, MonotoneFn};

    pub fn power() -> impl Strategy<Value = MonotoneFn> {
        (0.5..3.0f64, 0.3..4.0f64, prop_oneof![Just(0.0), 0.0..1.0f64], 0.5..2.5f64).prop_map(
            |(c, p, lo, len)| MonotoneFn::power(c, p, Interval::new(lo, lo + len).unwrap()).unwrap(),
        )
    }

    /// Powers on `[0, hi]`, so that both intervals start at the origin.
    pub fn origin_power() -> impl Strategy<Value = MonotoneFn> {
        (0.5..3.0f64, 0.3..4.0f64, 0.5..2.5f64)
            .prop_map(|(c, p, hi)| MonotoneFn::power(c, p, Interval::new(0.0, hi).unwrap()).unwrap())
    }

    pub fn affine() -> impl Strategy<Value = MonotoneFn> {
        (0.2..5.0f64, -2.0..2.0f64, -1.0..1.0f64, 0.5..2.5f64).prop_map(|(m, q, lo, len)| {
            MonotoneFn::affine(m, q, Interval::new(lo, lo + len).unwrap()).unwrap()
        })
    }

    pub fn exp() -> impl Strategy<Value = MonotoneFn> {
        (-1.0..1.0f64, -1.0..1.0f64, 0.5..2.0f64).prop_map(|(s, lo, len)| {
            MonotoneFn::exp_shift(s, Interval::new(lo, lo + len).unwrap()).unwrap()
        })
    }

    pub fn table() -> impl Strategy<Value = MonotoneFn> {
        (
            -1.0..1.0f64,
            -1.0..1.0f64,
            prop::collection::vec((0.05..0.5f64, 0.05..0.8f64), 1..10),
        )
            .prop_map(|(x0, y0, steps)| {
                let mut pts = vec![(x0, y0)];
                for (dx, dy) in steps {
                    let (x, y) = *pts.last().unwrap();
                    pts.push((x + dx, y + dy));
                }
                MonotoneFn::table(&pts).unwrap()
            })
    }

    pub fn any_fn() -> impl Strategy<Value = MonotoneFn> {
        prop_oneof![power(), affine(), exp(), table()]
    }

    /// Families with a closed-form inverse.
    pub fn invertible_fn() -> impl Strategy<Value = MonotoneFn> {
        prop_oneof![power(), affine(), exp()]
    }

    /// Families whose inverse is again one of the families.
    pub fn closed_under_inverse() -> impl Strategy<Value = MonotoneFn> {
        prop_oneof![power(), affine(), table()]
    }

    /// A point of `domain × codomain`, as fractions of the two intervals.
    pub fn at(pair: &ConjugatePair, (s, t): (f64, f64)) -> (f64, f64) {
        let (d, c) = (pair.domain(), pair.codomain());
        (
            (d.lo() + s * d.len()).min(d.hi()),
            (c.lo() + t * c.len()).min(c.hi()),
        )
    }

    pub fn unit() -> impl Strategy<Value = f64> {
        prop_oneof![1 => Just(0.0), 1 => Just(1.0), 8 => 0.0..=1.0f64]
    }

    pub fn instance() -> impl Strategy<Value = (ConjugatePair, f64, f64)> {
        (any_fn(), unit(), unit()).prop_map(|(f, s, t)| {
            let pair = ConjugatePair::new(f);
            let (a, b) = at(&pair, (s, t));
            (pair, a, b)
        })
    }
}
