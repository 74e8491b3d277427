// Each example is compiled here as a module and its run_example checked.

macro_rules! example {
    ($name:ident) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!("../examples/", stringify!($name), ".rs"));
        }
    };
}

example!(forward_transform);
example!(exact_identities);
example!(range_check);
example!(harmonic_range);
example!(cross_product);
example!(mk_identity);
example!(bessel_zeros);
example!(inversion);
example!(ucp_counterexample);
example!(special_functions);

#[test]
fn forward_transform_agrees() {
    assert!(forward_transform::run_example().unwrap() <= 1e-9);
}

#[test]
fn exact_identities_hold() {
    assert!(exact_identities::run_example());
}

#[test]
fn range_check_separates() {
    let (clean, bad) = range_check::run_example().unwrap();
    assert!(clean <= 1e-6);
    assert!(bad.iter().all(|&(d, r)| r >= d / 10.0));
}

#[test]
fn harmonic_range_holds() {
    for (_, _, res, def) in harmonic_range::run_example().unwrap() {
        assert!(res <= 1e-6 && def <= 1e-8);
    }
}

#[test]
fn cross_product_holds() {
    assert!(cross_product::run_example().unwrap() <= 1e-8);
}

#[test]
fn mk_identity_holds() {
    let w = mk_identity::run_example().unwrap();
    assert!(w[0] <= 1e-14 && w.iter().all(|&x| x <= 1e-8));
}

#[test]
fn bessel_zeros_separate() {
    let (good, bad) = bessel_zeros::run_example().unwrap();
    assert!(good <= 1e-6 && bad >= 1e-2);
}

#[test]
fn inversion_recovers() {
    let (closed, colloc) = inversion::run_example().unwrap();
    assert!(closed <= 1e-8 && colloc.iter().all(|&e| e <= 1e-3));
}

#[test]
fn ucp_counterexample_holds() {
    assert!(ucp_counterexample::run_example().unwrap().iter().all(|r| r.passed));
}

#[test]
fn special_functions_agree() {
    assert!(special_functions::run_example().unwrap() <= 1e-10);
}
