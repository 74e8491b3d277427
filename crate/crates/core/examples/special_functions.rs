// Spherical Bessel functions through D = (1/x) d/dx: closed sums against
// Taylor-jet differentiation, and the first few zeros.
//
//     cargo run --example special_functions

use smt_core::specfun::{bessel_zeros, d_operator, dp_sinc, sph_bessel_j};
use smt_core::{Dd, Jet};

/// Largest gap between the closed sum and the jet engine, `p <= 10`.
pub fn run_example() -> smt_core::Result<f64> {
    let mut worst: f64 = 0.0;
    for p in 0..=10 {
        for i in 0..=50 {
            let x = 0.3 + (50.0 - 0.3) * (i as f64 / 50.0).powi(2);
            let v = Jet::<Dd>::variable(x, p);
            let jet = d_operator(&(&v.sin_cos().0 / &v), p)?.to_f64();
            let closed = dp_sinc(p, x)?;
            worst = worst.max((closed - jet).abs() / closed.abs().max(1.0));
        }
    }
    println!("j_(5/2)(3) = {:.15}", sph_bessel_j(2, 3.0));
    println!("first zeros of j_(5/2): {:.6?}", bessel_zeros(2, 4)?);
    Ok(worst)
}

fn main() -> smt_core::Result<()> {
    println!("closed sum vs jets: {:.2e}", run_example()?);
    Ok(())
}
