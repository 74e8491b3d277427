// The range symmetry of forward data, and what a small perturbation of the
// outer half does to it.
//
//     cargo run --example range_check

use smt_core::quadrature::QuadratureRule;
use smt_core::rangecheck::{default_grid, range_residual, PerturbedData};
use smt_core::transform::{Bump, Dimension, SmtProfile};

/// Normalized residuals: clean data, then each perturbation.
pub fn run_example() -> smt_core::Result<(f64, Vec<(f64, f64)>)> {
    let dim = Dimension::new(7)?;
    let q = QuadratureRule::default();
    let grid = default_grid();
    let data = SmtProfile::new(dim, Bump::new(0.5, 0.3)?, q.clone());
    let clean = range_residual(&data, dim.k(), &grid)?.normalized;
    let mut perturbed = Vec::new();
    for delta in [1e-3, 1e-2, 1e-1] {
        let bad = PerturbedData { inner: SmtProfile::new(dim, Bump::new(0.5, 0.3)?, q.clone()), delta };
        perturbed.push((delta, range_residual(&bad, dim.k(), &grid)?.normalized));
    }
    Ok((clean, perturbed))
}

fn main() -> smt_core::Result<()> {
    let (clean, perturbed) = run_example()?;
    println!("n = 7, forward data: residual {clean:.2e}");
    for (d, r) in perturbed {
        println!("outer half scaled by 1 + {d:e}: residual {r:.2e}");
    }
    Ok(())
}
