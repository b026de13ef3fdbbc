//! How far the upper bound sits above the remainder for `φ(x) = x^(α−1)`.
//! The gap vanishes on the graph `b = a^(α−1)`.

use young_cert::legendre::{holder_gap, PowerFamily};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fam = PowerFamily::from_alpha(1.5)?.with_cap(4.0)?;
    println!("α = {}, β = {}", fam.alpha(), fam.beta());
    let mut min = f64::INFINITY;
    for i in 0..=8 {
        for j in 0..=8 {
            let a = fam.cap() * i as f64 / 8.0;
            let b = fam.b_cap() * j as f64 / 8.0;
            min = min.min(holder_gap(&fam, a, b)?);
        }
    }
    println!("smallest gap on the 9×9 grid: {min:.3e}");
    println!("gap at (1, 1): {:.3e}", holder_gap(&fam, 1.0, 1.0)?);
    Ok(())
}
