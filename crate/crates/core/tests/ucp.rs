use smt_core::quadrature::QuadratureRule;
use smt_core::transform::{Bump, RadialProfile};
use smt_core::ucp::*;

fn quad() -> QuadratureRule {
    QuadratureRule::new(32, 32).unwrap()
}

fn specs() -> [UcpSpec; 2] {
    [
        UcpSpec { n: 3, epsilon: 0.25, m: 2, center: 0.6, width: 0.15 },
        UcpSpec { n: 5, epsilon: 0.2, m: 6, center: 0.6, width: 0.15 },
    ]
}

#[test]
fn window_vanishes_and_data_is_global() {
    let grid = default_t_grid(1000);
    for s in specs() {
        let r = verify_counterexample(&s, &quad(), &grid, 1e-7).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.f_vanishes_near_origin);
        assert!(r.outside_max >= 1e3 * r.inside_max, "{r:?}");
        assert!(r.f_max > 0.0);
    }
}

#[test]
fn n3_ratio_at_noise_floor() {
    let grid = default_t_grid(1000);
    let r = verify_counterexample(&specs()[0], &quad(), &grid, 1e-8).unwrap();
    assert!(r.ratio_inside <= 1e-8, "{}", r.ratio_inside);
}

#[test]
fn profile_integrates_to_zero() {
    let f = build_counterexample(&specs()[0]).unwrap();
    let q = quad();
    let total: f64 = q.points(0.45, 0.75, 32).iter().map(|&(r, w)| w * f.value(r)).sum();
    let scale: f64 = q.points(0.45, 0.75, 32).iter().map(|&(r, w)| w * f.value(r).abs()).sum();
    assert!(total.abs() <= 1e-12 * scale, "{total} {scale}");
}

#[test]
fn below_threshold_is_recorded() {
    let grid = default_t_grid(400);
    for s in specs() {
        let r = below_threshold_report(&s, &quad(), &grid).unwrap();
        assert_eq!(r.spec.m, s.m.min(4 * (s.n - 3) / 2 + 1));
        assert!(r.ratio_inside.is_finite());
    }
}

#[test]
fn zero_profile_is_flagged() {
    let s = specs()[0];
    let zero = Bump::unchecked(0.6, 0.15).scaled(0.0);
    let r = measure(&s, &zero, &quad(), &default_t_grid(50), 1e-7).unwrap();
    assert!(r.trivial && !r.passed && r.ratio_inside.is_nan());
}

#[test]
fn refuses_low_order_and_bad_support() {
    let s = UcpSpec { n: 5, epsilon: 0.2, m: 5, center: 0.6, width: 0.15 };
    assert!(verify_counterexample(&s, &quad(), &[0.5], 1e-7).is_err());
    let s = UcpSpec { m: 6, width: 0.45, ..s };
    assert!(build_counterexample(&s).is_err());
}
