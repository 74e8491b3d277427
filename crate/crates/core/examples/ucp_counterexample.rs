// A nonzero f vanishing near the origin whose spherical means vanish for all
// radii in (1 - eps, 1 + eps).
//
//     cargo run --example ucp_counterexample

use smt_core::quadrature::QuadratureRule;
use smt_core::ucp::{default_t_grid, verify_counterexample, UcpReport, UcpSpec};

pub fn run_example() -> smt_core::Result<Vec<UcpReport>> {
    let q = QuadratureRule::new(32, 32)?;
    let grid = default_t_grid(400);
    [
        UcpSpec { n: 3, epsilon: 0.25, m: 2, center: 0.6, width: 0.15 },
        UcpSpec { n: 5, epsilon: 0.2, m: 6, center: 0.6, width: 0.15 },
    ]
    .iter()
    .map(|s| verify_counterexample(s, &q, &grid, 1e-7))
    .collect()
}

fn main() -> smt_core::Result<()> {
    for r in run_example()? {
        println!(
            "n = {}, m = {}, eps = {}: inside max {:.2e}, outside max {:.2e}, ratio {:.2e}, {}",
            r.spec.n,
            r.spec.m,
            r.spec.epsilon,
            r.inside_max,
            r.outside_max,
            r.ratio_inside,
            if r.passed { "PASS" } else { "FAIL" }
        );
    }
    Ok(())
}
