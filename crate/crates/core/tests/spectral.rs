use smt_core::quadrature::QuadratureRule;
use smt_core::rangecheck::{JetData, PerturbedData};
use smt_core::spectral::*;
use smt_core::transform::*;

fn bumps() -> Vec<PowerWeighted<Bump>> {
    vec![
        PowerWeighted { power: 0, inner: Bump::new(0.5, 0.3).unwrap() },
        PowerWeighted { power: 2, inner: Bump::new(0.45, 0.4).unwrap() },
        PowerWeighted { power: 1, inner: Bump::new(0.7, 0.2).unwrap().scaled(3.0) },
    ]
}

#[test]
fn hankel_paths_agree() {
    let q = QuadratureRule::default();
    let dim = Dimension::new(5).unwrap();
    let data = SmtProfile::new(dim, bumps().remove(0), q.clone());
    let s = HankelSamples::new(&data, 40.0, &q).unwrap();
    let sup = s.support();
    for l in [0.0, 0.5, 7.0, 33.0] {
        let a = hankel(|t| data.g(t).unwrap(), sup, 1, l, &q);
        let b = hankel_h(|t| data.h(t).unwrap(), sup, 1, l, &q);
        assert!((a - b).abs() <= 1e-12 * a.abs().max(1e-8), "{a:e} {b:e}");
    }
    let m0 = hankel_h(|t| data.h(t).unwrap(), sup, 1, 0.0, &q);
    let direct = q.integrate(|t| t * data.h(t).unwrap(), sup.0, sup.1);
    assert!((m0 - direct).abs() <= 1e-13 * direct.abs());
    assert_eq!(hankel(|_| 0.0, (0.1, 1.9), 2, 3.0, &q), 0.0);
}

#[test]
fn hankel_panel_doubling_at_high_frequency() {
    let q = QuadratureRule::default();
    let dim = Dimension::new(3).unwrap();
    let data = SmtProfile::new(dim, bumps().remove(1), q.clone());
    let sup = data.support();
    let a = hankel_h(|t| data.h(t).unwrap(), sup, 0, 40.0, &q);
    let b = hankel_h(|t| data.h(t).unwrap(), sup, 0, 40.0, &q.with_panels(120));
    assert!((a - b).abs() <= 1e-10 * a.abs(), "{a:e} {b:e}");
}

#[test]
fn cross_product_identity_on_range_data() {
    let q = QuadratureRule::default();
    for n in [3, 5, 7] {
        let dim = Dimension::new(n).unwrap();
        for f in bumps() {
            let data = SmtProfile::new(dim, f, q.clone());
            let s = HankelSamples::new(&data, 40.0, &q).unwrap();
            for l in lambda_grid(0.5, 40.0, 20) {
                let c = s.cross_product(dim.k(), l).unwrap();
                assert!(c.residual <= 1e-8, "n={n} lambda={l}: {:e}", c.residual);
            }
        }
    }
}

#[test]
fn cross_product_of_zero_data() {
    let q = QuadratureRule::default();
    let z = JetData { jet: |t: f64, o: usize| smt_core::Jet::zero(t, o), support: (0.2, 1.8), max_order: 0 };
    assert_eq!(cross_product_residual(&z, 2, 3.0, &q).unwrap().residual, 0.0);
    let touching = JetData { jet: |t: f64, o: usize| smt_core::Jet::zero(t, o), support: (0.0, 1.8), max_order: 0 };
    assert!(cross_product_residual(&touching, 2, 3.0, &q).is_err());
}

#[test]
fn mk_identity_random_sweep() {
    for k in 0..=6 {
        let v = mk_sweep(k, 100, DEFAULT_SEED).unwrap();
        assert_eq!(v.len(), 100);
        let worst = v.iter().map(|x| x.residual).fold(0.0, f64::max);
        let tol = if k == 0 { 1e-14 } else { 1e-8 };
        assert!(worst <= tol, "k={k}: {worst:e}");
    }
    let a = mk_sweep(3, 5, 7).unwrap();
    let b = mk_sweep(3, 5, 7).unwrap();
    assert!(a.iter().zip(&b).all(|(x, y)| x.lambda == y.lambda && x.t == y.t && x.residual == y.residual));
}

#[test]
fn mk_is_continuous_through_minus_one() {
    for k in 0..=6 {
        for l in [0.8, 4.0, 15.0] {
            let a = mk_residual(k, l, -1.0 - 1e-3).unwrap();
            let b = mk_residual(k, l, -1.0 + 1e-3).unwrap();
            assert!((a.residual - b.residual).abs() <= 1e-5, "k={k} l={l}");
            assert!(a.residual <= 1e-8 && b.residual <= 1e-8);
            // no blow-up: the value at -1 + 1e-3 is close to the chord through its neighbours
            let c = mk_residual(k, l, -1.0 + 3e-3).unwrap();
            let chord = 0.5 * (a.lhs + c.lhs);
            assert!((b.lhs - chord).abs() <= 1e-2 * a.lhs.abs().max(c.lhs.abs()).max((a.lhs - c.lhs).abs()), "k={k} l={l}");
        }
    }
    assert!(mk_residual(2, 1.0, -1.0).is_err());
    assert!(mk_residual(2, 1.0, 0.0).is_err());
}

#[test]
fn range_data_vanishes_at_zeros() {
    let q = QuadratureRule::default();
    let dim = Dimension::new(3).unwrap();
    for f in bumps() {
        let data = SmtProfile::new(dim, f, q.clone());
        let r = bessel_zero_vanishing(&data, dim.k(), 0, 10, &q).unwrap();
        assert!(r.worst_ratio() <= 1e-6, "{:e}", r.worst_ratio());
        assert!(r.max_abs > 0.0);
    }
}

#[test]
fn off_center_bump_does_not_vanish() {
    let q = QuadratureRule::default();
    let b = Bump::unchecked(1.4, 0.2);
    let data = JetData { jet: |t: f64, o: usize| b.jet(t, o), support: (1.2, 1.6), max_order: 0 };
    let r = bessel_zero_vanishing(&data, 0, 0, 10, &q).unwrap();
    assert!(r.worst_ratio() >= 1e-2, "{:e}", r.worst_ratio());
}

#[test]
fn oracles_fail_together() {
    let q = QuadratureRule::default();
    let dim = Dimension::new(5).unwrap();
    let data = PerturbedData { inner: SmtProfile::new(dim, bumps().remove(0), q.clone()), delta: 0.1 };
    let z = bessel_zero_vanishing(&data, dim.k(), 0, 10, &q).unwrap();
    let s = HankelSamples::new(&data, 40.0, &q).unwrap();
    let worst = lambda_grid(0.5, 40.0, 20)
        .into_iter()
        .map(|l| s.cross_product(dim.k(), l).unwrap().residual)
        .fold(0.0, f64::max);
    assert!(worst > 1e-2);
    assert!(z.worst_ratio() > 1e-3);
}
