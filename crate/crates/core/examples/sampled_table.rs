//! A piecewise-linear `φ` through measured samples.

use young_cert::monotone::{verify_monotone, ConjugatePair, MonotoneFn};
use young_cert::quadrature::QuadratureConfig;
use young_cert::young_gap::{certify, DEFAULT_CERT_TOL};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let samples = [(0.0, 0.0), (0.5, 0.2), (1.0, 0.7), (1.5, 1.6), (2.0, 3.0)];
    let phi = MonotoneFn::table(&samples)?;
    let audit = verify_monotone(&phi, 400, 0.1)?;
    println!("slope audit: pass={} min={:.3} at x={}", audit.pass, audit.min_slope, audit.min_slope_at);

    let pair = ConjugatePair::new(phi);
    let cfg = QuadratureConfig::default();
    for (a, b) in [(1.0, 0.7), (1.0, 1.0), (0.25, 2.5), (2.0, 0.0)] {
        let c = certify(&pair, a, b, DEFAULT_CERT_TOL, &cfg)?;
        let f = c.report.remainder;
        println!(
            "({a:>4}, {b:>4})  F in [{:+.10}, {:+.10}]  {:?}",
            f.lo(),
            f.hi(),
            c.certificate.equality_case
        );
    }
    Ok(())
}
