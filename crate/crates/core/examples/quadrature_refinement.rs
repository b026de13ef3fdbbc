//! Nested enclosures of `∫_0^1 √x dx = 2/3` as the panel count doubles, with
//! plain Riemann sums and with the default bracketed rule.

use young_cert::monotone::MonotoneFn;
use young_cert::quadrature::{riemann_enclosure, QuadratureConfig, Refinement, Rule};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = MonotoneFn::monomial(0.5, 0.0, 1.0)?;
    println!("{:>6}  {:>12}", "n", "riemann width");
    for k in 0..6 {
        let n = 1 << (2 * k);
        let e = riemann_enclosure(&f, 0.0, 1.0, n)?;
        println!("{n:>6}  {:>12.3e}", e.width());
    }
    let cfg = QuadratureConfig::new(4, 1 << 12, 1e-12)?.with_rule(Rule::Bracketed);
    for level in Refinement::new(&f, 0.0, 1.0, &cfg)? {
        let level = level?;
        let e = level.enclosure;
        println!("bracketed n={:<5} [{:.15}, {:.15}]", level.panels, e.lo(), e.hi());
    }
    Ok(())
}
