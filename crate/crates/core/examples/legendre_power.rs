//! Potentials and conjugates of `Φ(x) = x^α/α`, compared with the closed form
//! `Ψ(y) = y^β/β`.

use young_cert::legendre::PowerFamily;
use young_cert::quadrature::QuadratureConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fam = PowerFamily::from_alpha(3.0)?;
    let lp = fam.legendre_pair()?;
    let cfg = QuadratureConfig::default();
    let beta = fam.beta();
    for i in 1..=4 {
        let y = fam.b_cap() * i as f64 / 4.0;
        let psi = lp.conjugate(y, &cfg)?;
        let exact = y.powf(beta) / beta;
        println!(
            "Ψ({y:.3}) in [{:.12}, {:.12}]  closed form {exact:.12}  inside {}",
            psi.lo(),
            psi.hi(),
            psi.contains(exact)
        );
    }
    let dual = lp.dual()?;
    let back = dual.conjugate(1.2, &cfg)?;
    println!("Φ(1.2) through the dual pair: [{:.12}, {:.12}], exact {:.12}", back.lo(), back.hi(), 1.2f64.powi(3) / 3.0);
    Ok(())
}
