//! The two-sided upper bound against `max{aφ(a), bψ(b)} − ab` for
//! `φ(x) = x^(α−1)`.

use young_cert::legendre::PowerFamily;
use young_cert::young_gap::{merkle_bound, upper_bound_enclosure};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for alpha in [2.0, 3.0, 4.0] {
        let fam = PowerFamily::from_alpha(alpha)?;
        let pair = fam.legendre_pair()?.pair().clone();
        println!("α = {alpha}");
        for (a, b) in [(0.5, 0.5), (1.0, 0.25), (1.5, 0.1), (2.0, 1.0)] {
            if b > fam.b_cap() {
                continue;
            }
            let ub = upper_bound_enclosure(&pair, a, b)?;
            let m = merkle_bound(&pair, a, b)?;
            println!("  ({a}, {b})  ub {:.6}  merkle {:.6}  ratio {:.3}", ub.hi(), m, m / ub.hi());
        }
    }
    Ok(())
}
