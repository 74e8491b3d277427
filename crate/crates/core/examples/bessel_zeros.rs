// The Hankel transform of range data vanishes at the zeros of the next Bessel
// function; data supported away from the unit sphere does not.
//
//     cargo run --example bessel_zeros

use smt_core::quadrature::QuadratureRule;
use smt_core::rangecheck::JetData;
use smt_core::spectral::bessel_zero_vanishing;
use smt_core::transform::{Bump, Dimension, RadialProfile, SmtProfile};

/// Worst ratio at the zeros for range data, then for a shifted bump.
pub fn run_example() -> smt_core::Result<(f64, f64)> {
    let q = QuadratureRule::default();
    let dim = Dimension::new(3)?;
    let data = SmtProfile::new(dim, Bump::new(0.5, 0.3)?, q.clone());
    let good = bessel_zero_vanishing(&data, dim.k(), 0, 10, &q)?;
    for (z, r) in good.zeros.iter().zip(good.ratios()).take(4) {
        println!("zero {z:8.4}: |F| / max|F| = {r:.2e}");
    }
    let b = Bump::unchecked(1.4, 0.2);
    let off = JetData { jet: |t: f64, o: usize| b.jet(t, o), support: (1.2, 1.6), max_order: 0 };
    let bad = bessel_zero_vanishing(&off, 0, 0, 10, &q)?;
    Ok((good.worst_ratio(), bad.worst_ratio()))
}

fn main() -> smt_core::Result<()> {
    let (good, bad) = run_example()?;
    println!("range data: {good:.2e}, off-center bump: {bad:.2e}");
    Ok(())
}
