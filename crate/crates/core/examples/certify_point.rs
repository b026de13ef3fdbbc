//! Certify `0 <= F(a, b) <= UB(a, b)` at a single point for `φ(x) = x²`.
//!
//! ```bash
//! cargo run --example certify_point -- 1.5 1.0
//! ```

use young_cert::monotone::{ConjugatePair, MonotoneFn};
use young_cert::quadrature::QuadratureConfig;
use young_cert::young_gap::{certify, DEFAULT_CERT_TOL};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<f64>());
    let a = args.next().transpose()?.unwrap_or(1.5);
    let b = args.next().transpose()?.unwrap_or(1.0);

    let pair = ConjugatePair::new(MonotoneFn::monomial(2.0, 0.0, 2.0)?);
    let c = certify(&pair, a, b, DEFAULT_CERT_TOL, &QuadratureConfig::default())?;
    let r = &c.report;
    println!("point      ({a}, {b})");
    println!("F          [{:.15e}, {:.15e}]", r.remainder.lo(), r.remainder.hi());
    println!("UB         [{:.15e}, {:.15e}]", r.upper_bound.lo(), r.upper_bound.hi());
    println!("lower      {:?}", c.certificate.lower_holds);
    println!("upper      {:?}", c.certificate.upper_holds);
    println!("equality   {:?}", c.certificate.equality_case);
    println!("panels     {}", c.certificate.effort.panels);
    Ok(())
}
