// The Bessel identity behind the M_k operator, at seeded random points, in
// double-double arithmetic.
//
//     cargo run --example mk_identity

use smt_core::spectral::{mk_residual, mk_sweep, DEFAULT_SEED};

/// Worst residual per `k`.
pub fn run_example() -> smt_core::Result<Vec<f64>> {
    let v = mk_residual(3, 7.5, 0.4)?;
    println!("k = 3, lambda = 7.5, t = 0.4: lhs {:+.15e}, rhs {:+.15e}", v.lhs, v.rhs);
    (0..=6)
        .map(|k| Ok(mk_sweep(k, 25, DEFAULT_SEED)?.iter().map(|x| x.residual).fold(0.0, f64::max)))
        .collect()
}

fn main() -> smt_core::Result<()> {
    for (k, w) in run_example()?.into_iter().enumerate() {
        println!("k = {k}: worst residual {w:.2e}");
    }
    Ok(())
}
