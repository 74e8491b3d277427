// Data f(|x|) Y_m(x/|x|) for one spherical harmonic: range symmetry of phi and
// the vanishing moments of h = D^m phi.
//
//     cargo run --example harmonic_range

use smt_core::quadrature::QuadratureRule;
use smt_core::rangecheck::{default_grid, general_range_check, HarmonicSource};
use smt_core::transform::{Bump, Dimension};

/// `(n, m, residual, worst defect / scale)` for each case.
pub fn run_example() -> smt_core::Result<Vec<(usize, usize, f64, f64)>> {
    let q = QuadratureRule::default();
    let f = Bump::new(0.5, 0.3)?;
    let grid: Vec<f64> = default_grid().into_iter().step_by(4).collect();
    let mut out = Vec::new();
    for (n, m) in [(3, 1), (3, 2), (5, 1)] {
        let dim = Dimension::new(n)?;
        let r = general_range_check(HarmonicSource::Analytic { f: &f }, dim, m, &grid, &q)?;
        let worst = r.defects.iter().zip(&r.defect_scales).map(|(d, s)| d.abs() / s).fold(0.0, f64::max);
        out.push((n, m, r.range.normalized, worst));
    }
    Ok(out)
}

fn main() -> smt_core::Result<()> {
    for (n, m, res, def) in run_example()? {
        println!("n = {n}, m = {m}: symmetry residual {res:.2e}, moment defect {def:.2e}");
    }
    Ok(())
}
