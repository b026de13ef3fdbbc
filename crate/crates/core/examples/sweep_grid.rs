//! Certify a grid of points in parallel and print it as CSV.

use young_cert::cli::sweep_csv;
use young_cert::monotone::{ConjugatePair, Interval, MonotoneFn};
use young_cert::quadrature::QuadratureConfig;
use young_cert::young_gap::{sweep, DEFAULT_CERT_TOL};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let phi = MonotoneFn::exp_shift(0.0, Interval::new(0.0, 1.0)?)?;
    let pair = ConjugatePair::new(phi);
    let grid_a = pair.domain().grid(4);
    let grid_b = pair.codomain().grid(4);
    let rows = sweep(&pair, &grid_a, &grid_b, DEFAULT_CERT_TOL, &QuadratureConfig::default())?;
    print!("{}", sweep_csv(&rows));
    let equal = rows.iter().filter(|r| r.equality_detected).count();
    eprintln!("{} points, {equal} on the graph of φ", rows.len());
    Ok(())
}
