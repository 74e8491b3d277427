// Spherical means of a radial bump in R^5, computed two ways.
//
//     cargo run --example forward_transform

use smt_core::quadrature::QuadratureRule;
use smt_core::transform::{forward_radial, funk_hecke_forward, Bump, Dimension};

/// Largest relative gap between the two quadratures over `t` in (0, 2).
pub fn run_example() -> smt_core::Result<f64> {
    let dim = Dimension::new(5)?;
    let f = Bump::new(0.5, 0.3)?;
    let q = QuadratureRule::default();
    let mut rows = Vec::new();
    for i in 0..40 {
        let t = 0.025 + 0.05 * i as f64;
        rows.push((t, forward_radial(&f, dim, t, &q)?, funk_hecke_forward(&f, dim, t, &q)?));
    }
    let sup = rows.iter().map(|r| r.1.abs()).fold(0.0, f64::max);
    let gap = rows.iter().map(|r| (r.1 - r.2).abs()).fold(0.0, f64::max) / sup;
    for (t, g, _) in rows.iter().step_by(4) {
        println!("t = {t:.3}  g = {g:+.12e}");
    }
    Ok(gap)
}

fn main() -> smt_core::Result<()> {
    let gap = run_example()?;
    println!("max relative gap to the Funk-Hecke form: {gap:.2e}");
    Ok(())
}
