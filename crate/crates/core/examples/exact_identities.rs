// Combinatorial identities behind the range conditions, checked in exact
// rational arithmetic.
//
//     cargo run --example exact_identities

use smt_core::exactmath::{coeff_c, run_identity_suite, suite_passed, SuiteBounds};

pub fn run_example() -> bool {
    let rows = run_identity_suite(&SuiteBounds::uniform(6));
    for r in &rows {
        let status = if r.passed() { "ok" } else if r.informational { "info" } else { "FAIL" };
        println!("{:<22} {:<28} {:>5} cases  {status}", r.name, r.range, r.cases);
    }
    let row: Vec<String> = (0..=4).map(|p| coeff_c(4, p).unwrap().to_string()).collect();
    println!("C(4, p) = {}", row.join(", "));
    suite_passed(&rows)
}

fn main() {
    if !run_example() {
        std::process::exit(1);
    }
}
