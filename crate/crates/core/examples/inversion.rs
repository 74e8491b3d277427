// Recover f from the spherical means over radii t < 1 only.
//
//     cargo run --example inversion

use smt_core::inverse::{invert_radial, invert_radial_n3, rel_l2, InversionConfig};
use smt_core::quadrature::QuadratureRule;
use smt_core::transform::{forward_h_derivative, forward_radial, Bump, Dimension, RadialProfile};

/// Relative errors: n = 3 closed form (sup), then collocation for n = 3 and 5 (L2).
pub fn run_example() -> smt_core::Result<(f64, Vec<f64>)> {
    let q = QuadratureRule::default();
    let f = Bump::new(0.5, 0.3)?;
    let dim3 = Dimension::new(3)?;
    let rs: Vec<f64> = (1..100).map(|i| i as f64 / 100.0).collect();
    let mut err: f64 = 0.0;
    for &r in &rs {
        let got = invert_radial_n3(|t| forward_h_derivative(&f, dim3, t, &q), r)?;
        err = err.max((got - f.value(r)).abs());
    }
    let closed = err / rs.iter().map(|&r| f.value(r).abs()).fold(0.0, f64::max);

    let cfg = InversionConfig::default();
    let mut colloc = Vec::new();
    for n in [3, 5] {
        let dim = Dimension::new(n)?;
        let t = cfg.collocation_grid();
        let g = t.iter().map(|&ti| forward_radial(&f, dim, ti, &q)).collect::<smt_core::Result<Vec<_>>>()?;
        let rec = invert_radial(&t, &g, dim, &cfg)?;
        let want: Vec<f64> = rec.nodes.iter().map(|&r| f.value(r)).collect();
        colloc.push(rel_l2(&rec.values, &want));
        println!("n = {n}: f(0.5) = {:.6}, reconstructed {:.6}", f.value(0.5), rec.eval(0.5));
    }
    Ok((closed, colloc))
}

fn main() -> smt_core::Result<()> {
    let (closed, colloc) = run_example()?;
    println!("n = 3 closed form: rel sup error {closed:.2e}");
    println!("collocation: rel L2 errors {:.2e} (n = 3), {:.2e} (n = 5)", colloc[0], colloc[1]);
    Ok(())
}
