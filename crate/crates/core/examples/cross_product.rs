// Hankel transforms of range data against first- and second-kind Bessel
// kernels satisfy a cross-product identity for every lambda.
//
//     cargo run --example cross_product

use smt_core::quadrature::QuadratureRule;
use smt_core::spectral::{lambda_grid, HankelSamples};
use smt_core::transform::{Bump, Dimension, SmtProfile};

pub fn run_example() -> smt_core::Result<f64> {
    let dim = Dimension::new(5)?;
    let q = QuadratureRule::default();
    let data = SmtProfile::new(dim, Bump::new(0.45, 0.35)?, q.clone());
    let s = HankelSamples::new(&data, 40.0, &q)?;
    let mut worst: f64 = 0.0;
    for l in lambda_grid(0.5, 40.0, 8) {
        let c = s.cross_product(dim.k(), l)?;
        println!("lambda = {l:6.2}  lhs = {:+.10e}  rhs = {:+.10e}", c.lhs, c.rhs);
        worst = worst.max(c.residual);
    }
    Ok(worst)
}

fn main() -> smt_core::Result<()> {
    println!("max residual {:.2e}", run_example()?);
    Ok(())
}
