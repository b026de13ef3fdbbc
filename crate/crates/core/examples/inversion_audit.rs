//! Bracketing `ψ = φ⁻¹` by bisection, step by step, for `φ(x) = eˣ − 1`.

use young_cert::monotone::{ConjugatePair, Interval, MonotoneFn};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let phi = MonotoneFn::exp_shift(1.0, Interval::new(0.0, 2.0)?)?;
    let pair = ConjugatePair::new(phi).with_inverse_tol(1e-14)?;
    let y = 4.0;
    for (i, e) in pair.bisect(y).enumerate().step_by(8).take(8) {
        println!("step {:>3}  [{:.16}, {:.16}]", i + 1, e.lo(), e.hi());
    }
    let fast = pair.invert(y)?;
    let slow = pair.invert_by_bisection(y)?;
    println!("closed form  [{:.16}, {:.16}]", fast.lo(), fast.hi());
    println!("bisection    [{:.16}, {:.16}]", slow.lo(), slow.hi());
    println!("ln 5 = {:.16}", 5f64.ln());
    Ok(())
}
