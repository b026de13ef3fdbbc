//! `F(a, b) + F(ψ(b), φ(a)) + (ψ(b) − a)(φ(a) − b) = 0`, and the slack of the
//! pair inequality away from that choice.

use young_cert::monotone::{ConjugatePair, Interval, MonotoneFn};
use young_cert::quadrature::QuadratureConfig;
use young_cert::young_gap::{pair_inequality_gap, proof_identity_residual};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let phi = MonotoneFn::power(2.0, 0.5, Interval::new(0.0, 4.0)?)?;
    let pair = ConjugatePair::new(phi);
    let cfg = QuadratureConfig::default();
    for (a, b) in [(1.0, 3.0), (3.0, 1.0), (2.5, 2.0)] {
        let r = proof_identity_residual(&pair, a, b, &cfg)?;
        println!("({a}, {b})  residual in [{:+.3e}, {:+.3e}]", r.lo(), r.hi());
        let s = pair_inequality_gap(&pair, a, b, 2.0, 2.0, &cfg)?;
        println!("           slack with (2, 2) in [{:.6}, {:.6}]", s.lo(), s.hi());
    }
    Ok(())
}
