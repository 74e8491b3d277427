// The ten acceptance criteria at their pinned tolerances. One PASS/FAIL line
// per criterion goes straight to stdout, so it shows without `--nocapture`.

use std::io::Write;
use std::time::Instant;

use smt_core::exactmath::{run_identity_suite, suite_passed, SuiteBounds};
use smt_core::inverse::{invert_radial, invert_radial_n3, rel_l2, InversionConfig};
use smt_core::jet::Jet;
use smt_core::quadrature::QuadratureRule;
use smt_core::rangecheck::{default_grid, general_range_check, range_residual, HarmonicSource, JetData, PerturbedData};
use smt_core::specfun::{d_operator, dp_cosc, dp_sinc};
use smt_core::spectral::{bessel_zero_vanishing, lambda_grid, mk_sweep, HankelSamples, DEFAULT_SEED};
use smt_core::transform::*;
use smt_core::ucp::{default_t_grid, verify_counterexample, UcpSpec};
use smt_core::Dd;

type Verdict = (bool, String);
type Criterion = (&'static str, fn() -> Verdict);

fn bumps() -> Vec<PowerWeighted<Bump>> {
    vec![
        PowerWeighted { power: 0, inner: Bump::new(0.5, 0.3).unwrap() },
        PowerWeighted { power: 2, inner: Bump::new(0.45, 0.4).unwrap() },
        PowerWeighted { power: 1, inner: Bump::new(0.7, 0.2).unwrap().scaled(3.0) },
    ]
}

fn max(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, f64::max)
}

fn c1_exact_identities() -> Verdict {
    let rows = run_identity_suite(&SuiteBounds::default());
    let cases: usize = rows.iter().filter(|r| !r.informational).map(|r| r.cases).sum();
    let failed: Vec<&str> = rows.iter().filter(|r| !r.informational && !r.passed()).map(|r| r.name).collect();
    (suite_passed(&rows), format!("{cases} exact cases, failing families {failed:?}"))
}

fn c2_range_necessity() -> Verdict {
    let q = QuadratureRule::default();
    let grid = default_grid();
    let mut worst: f64 = 0.0;
    for n in [3, 5, 7] {
        let dim = Dimension::new(n).unwrap();
        for f in bumps() {
            worst = worst.max(range_residual(&SmtProfile::new(dim, f, q.clone()), dim.k(), &grid).unwrap().normalized);
        }
    }
    (worst <= 1e-6, format!("max normalized residual {worst:.3e} (tol 1e-6, {} points)", grid.len()))
}

fn c3_range_detection() -> Verdict {
    let q = QuadratureRule::default();
    let grid = default_grid();
    let mut worst = f64::INFINITY;
    for n in [3, 5, 7] {
        let dim = Dimension::new(n).unwrap();
        for f in bumps() {
            for delta in [1e-3, 1e-2, 1e-1] {
                let data = PerturbedData { inner: SmtProfile::new(dim, f.clone(), q.clone()), delta };
                let r = range_residual(&data, dim.k(), &grid).unwrap().normalized;
                worst = worst.min(r / (delta / 10.0));
            }
        }
    }
    (worst >= 1.0, format!("min residual / (delta/10) = {worst:.3}"))
}

fn c4_cross_product() -> Verdict {
    let q = QuadratureRule::default();
    let mut worst: f64 = 0.0;
    for n in [3, 5, 7] {
        let dim = Dimension::new(n).unwrap();
        for f in bumps() {
            let data = SmtProfile::new(dim, f, q.clone());
            let s = HankelSamples::new(&data, 40.0, &q).unwrap();
            for l in lambda_grid(0.5, 40.0, 20) {
                worst = worst.max(s.cross_product(dim.k(), l).unwrap().residual);
            }
        }
    }
    (worst <= 1e-8, format!("max residual {worst:.3e} (tol 1e-8)"))
}

fn c5_mk_identity() -> Verdict {
    let mut ok = true;
    let mut msg = Vec::new();
    for k in 0..=6 {
        let w = max(mk_sweep(k, 100, DEFAULT_SEED).unwrap().iter().map(|v| v.residual));
        ok &= w <= if k == 0 { 1e-14 } else { 1e-8 };
        msg.push(format!("{w:.1e}"));
    }
    (ok, format!("seed {DEFAULT_SEED:#x}, worst per k [{}]", msg.join(", ")))
}

fn c6_bessel_zeros() -> Verdict {
    let q = QuadratureRule::default();
    let mut good: f64 = 0.0;
    for n in [3, 5, 7] {
        let dim = Dimension::new(n).unwrap();
        for f in bumps() {
            let data = SmtProfile::new(dim, f, q.clone());
            good = good.max(bessel_zero_vanishing(&data, dim.k(), 0, 10, &q).unwrap().worst_ratio());
        }
    }
    let b = Bump::unchecked(1.4, 0.2);
    let off = JetData { jet: |t: f64, o: usize| b.jet(t, o), support: (1.2, 1.6), max_order: 0 };
    let bad = bessel_zero_vanishing(&off, 0, 0, 10, &q).unwrap().worst_ratio();
    (good <= 1e-6 && bad >= 1e-2, format!("range data {good:.3e} (tol 1e-6), off-center bump {bad:.3e} (need >= 1e-2)"))
}

fn c7_general_case() -> Verdict {
    let q = QuadratureRule::default();
    let f = Bump::new(0.5, 0.3).unwrap();
    let grid = default_grid();
    let (mut rel, mut defect, mut range): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for (n, m) in [(3, 1), (3, 2), (5, 1)] {
        let dim = Dimension::new(n).unwrap();
        let c = const_kmn(n, m).unwrap();
        let ts: Vec<f64> = (0..80).map(|i| 0.51 + 0.98 * i as f64 / 79.0).collect();
        let h: Vec<f64> = ts.iter().map(|&t| t.powi(n as i32 - 2) * forward_harmonic(&f, dim, m, t, &q).unwrap()).collect();
        let dm: Vec<f64> = ts.iter().map(|&t| c * phi_harmonic_dp(&f, dim, m, t, m, &q).unwrap()).collect();
        let sup = max(h.iter().map(|v| v.abs()));
        rel = rel.max(max(h.iter().zip(&dm).map(|(a, b)| (a - b).abs())) / sup);
        let r = general_range_check(HarmonicSource::Analytic { f: &f }, dim, m, &grid, &q).unwrap();
        defect = defect.max(max(r.defects.iter().zip(&r.defect_scales).map(|(d, s)| d.abs() / s)));
        range = range.max(r.range.normalized);
    }
    (
        rel <= 1e-6 && defect <= 1e-8 && range <= 1e-6,
        format!("h vs const*D^m phi {rel:.3e} (tol 1e-6), moment defects {defect:.3e} (tol 1e-8), symmetry {range:.3e} (tol 1e-6)"),
    )
}

fn c8_inversion() -> Verdict {
    let q = QuadratureRule::default();
    let dim3 = Dimension::new(3).unwrap();
    let inv = vec![
        PowerWeighted { power: 0, inner: Bump::new(0.5, 0.3).unwrap() },
        PowerWeighted { power: 2, inner: Bump::new(0.45, 0.4).unwrap() },
        PowerWeighted { power: 1, inner: Bump::new(0.6, 0.25).unwrap().scaled(3.0) },
    ];
    let rs: Vec<f64> = (1..200).map(|i| i as f64 / 200.0).collect();
    let mut closed: f64 = 0.0;
    for f in &inv {
        let sup = max(rs.iter().map(|&r| f.value(r).abs()));
        let err = max(rs.iter().map(|&r| (invert_radial_n3(|t| forward_h_derivative(f, dim3, t, &q), r).unwrap() - f.value(r)).abs()));
        closed = closed.max(err / sup);
    }
    let cfg = InversionConfig::default();
    let mut colloc: f64 = 0.0;
    for n in [3, 5] {
        let dim = Dimension::new(n).unwrap();
        for f in &inv {
            let t = cfg.collocation_grid();
            let g: Vec<f64> = t.iter().map(|&ti| forward_radial(f, dim, ti, &q).unwrap()).collect();
            let rec = invert_radial(&t, &g, dim, &cfg).unwrap();
            let want: Vec<f64> = rec.nodes.iter().map(|&r| f.value(r)).collect();
            colloc = colloc.max(rel_l2(&rec.values, &want));
        }
    }
    (closed <= 1e-8 && colloc <= 1e-3, format!("n=3 closed form {closed:.3e} (tol 1e-8), collocation {colloc:.3e} (tol 1e-3)"))
}

fn c9_ucp() -> Verdict {
    let q = QuadratureRule::new(32, 32).unwrap();
    let grid = default_t_grid(1000);
    let mut ok = true;
    let mut msg = Vec::new();
    for s in [
        UcpSpec { n: 3, epsilon: 0.25, m: 2, center: 0.6, width: 0.15 },
        UcpSpec { n: 5, epsilon: 0.2, m: 6, center: 0.6, width: 0.15 },
    ] {
        let r = verify_counterexample(&s, &q, &grid, 1e-7).unwrap();
        ok &= r.passed && r.outside_max >= 1e3 * r.inside_max && r.f_vanishes_near_origin;
        msg.push(format!("n={} ratio {:.2e} outside/inside {:.2e}", s.n, r.ratio_inside, r.outside_max / r.inside_max));
    }
    (ok, msg.join("; "))
}

fn c10_special_functions() -> Verdict {
    let mut closed: f64 = 0.0;
    for p in 0..=10 {
        for i in 0..=200 {
            let x = 0.3 + (50.0 - 0.3) * (i as f64 / 200.0).powi(2);
            let v = Jet::<Dd>::variable(x, p);
            let (s, c) = v.sin_cos();
            let js = d_operator(&(&s / &v), p).unwrap().to_f64();
            let jc = d_operator(&(&c / &v), p).unwrap().to_f64();
            let (a, b) = (dp_sinc(p, x).unwrap(), dp_cosc(p, x).unwrap());
            closed = closed.max((a - js).abs() / a.abs().max(1.0)).max((b - jc).abs() / b.abs().max(1.0));
        }
    }
    let q = QuadratureRule::default();
    let mut fwd: f64 = 0.0;
    for n in [3, 5, 7, 9] {
        let dim = Dimension::new(n).unwrap();
        for f in bumps() {
            let ts: Vec<f64> = (0..200).map(|i| 0.005 + 0.01 * i as f64).collect();
            let a: Vec<f64> = ts.iter().map(|&t| forward_radial(&f, dim, t, &q).unwrap()).collect();
            let b: Vec<f64> = ts.iter().map(|&t| funk_hecke_forward(&f, dim, t, &q).unwrap()).collect();
            let sup = max(a.iter().map(|v| v.abs()));
            fwd = fwd.max(max(a.iter().zip(&b).map(|(x, y)| (x - y).abs())) / sup);
        }
    }
    (closed <= 1e-10 && fwd <= 1e-9, format!("closed sums vs jets {closed:.3e} (tol 1e-10), forward vs Funk-Hecke {fwd:.3e} (tol 1e-9)"))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("exact identity suite", c1_exact_identities),
        ("range necessity", c2_range_necessity),
        ("range detection", c3_range_detection),
        ("Bessel cross-product identity", c4_cross_product),
        ("M_k identity", c5_mk_identity),
        ("Bessel-zero oracle", c6_bessel_zeros),
        ("general harmonic case", c7_general_case),
        ("inversion", c8_inversion),
        ("unique continuation counterexample", c9_ucp),
        ("special-function cross-validation", c10_special_functions),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = check();
        let secs = start.elapsed().as_secs_f64();
        let line = format!("{} criterion {:>2} {name}: {detail} [{secs:.1}s]\n", if ok { "PASS" } else { "FAIL" }, i + 1);
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(line.as_bytes());
        let _ = out.flush();
        if !ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria {failed:?}");
}
