use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::{binom, binom_general, coeff_c, factorial, rat, sign, BiPoly, BinomConvention};
use crate::error::{invalid, Result};

const STD: BinomConvention = BinomConvention::Standard;

fn b(n: i64, k: i64) -> BigRational {
    binom(n, k, STD).expect("nonnegative upper index")
}

pub fn verify_lemma35a(k: usize, l: usize, s: usize) -> Result<bool> {
    if s > l {
        return invalid(format!("the sum needs l >= s, got l={l}, s={s}"));
    }
    let (k, l, s) = (k as i64, l as i64, s as i64);
    let mut lhs = BigRational::zero();
    for m in 0..=(l - s) {
        lhs += sign(m as usize) * b(k + m, 2 * l - s) * b(l - s, m);
    }
    Ok(lhs == sign((l - s) as usize) * b(k, l))
}

pub fn verify_lemma35b(l: usize) -> bool {
    // A is carried by `t`, B by `u`
    let a = BiPoly::t();
    let bb = BiPoly::u();
    let diff = &a - &bb;
    let mut sum = BiPoly::zero();
    for s in 0..=l {
        let c = sign(s) * b((2 * l - s) as i64, l as i64) * b(l as i64, s as i64);
        let e = (l - s) as u32;
        let inner = a.pow(e) - bb.pow(e).scale(&sign(s));
        sum = sum + (diff.pow(s as u32) * inner).scale(&c);
    }
    sum.is_zero()
}

pub fn verify_abel_aigner(p: usize, r: usize, s: usize) -> Result<bool> {
    if p == 0 || r + s > p - 1 {
        return invalid(format!("Abel-Aigner needs p >= 1 and r + s <= p - 1, got ({p},{r},{s})"));
    }
    let (p, r, s) = (p as i64, r as i64, s as i64);
    let mut lhs = BigRational::zero();
    for m in r..=(p - 1 - s) {
        let w = BigRational::new(1.into(), (p - m).into());
        lhs += w * b(2 * m - r, m - r) * b(2 * (p - 1 - m) - s, p - 1 - m - s);
    }
    let rhs = b(2 * p - r - s - 1, p) / rat(s + 1);
    Ok(lhs == rhs)
}

fn range_operator_sum(p_poly: &BiPoly, k: usize) -> Result<BiPoly> {
    let one_minus_t = BiPoly::one() - BiPoly::t();
    let mut dp = p_poly.clone();
    let mut sum = BiPoly::zero();
    for p in 0..=k {
        if p > 0 {
            dp = dp.formal_d()?;
        }
        let both = &dp + &dp.reflect().scale(&sign(p + 1));
        sum = sum + (one_minus_t.pow(p as u32) * both).scale(&coeff_c(k, p)?);
    }
    Ok(sum)
}

/// `sum_p C(k,p) (1-t)^p ([D^p P](t,u) - (-1)^p [D^p P](2-t,u))` with `P = Q^k`
/// is the zero polynomial.
pub fn verify_necessity_identity(k: usize) -> bool {
    let p = BiPoly::q_kernel().pow(k as u32);
    range_operator_sum(&p, k).map(|s| s.is_zero()).unwrap_or(false)
}

/// `K(p,q) = k! p! (-4)^(p-q) / ((k-q)! (2q-p)! (p-q)! 2^(2q-p))`.
pub fn coeff_k(k: usize, p: usize, q: usize) -> BigRational {
    let num = BigRational::from_integer(factorial(k as u64) * factorial(p as u64))
        * num_traits::pow(rat(-4), p - q);
    let den = BigRational::from_integer(
        factorial((k - q) as u64) * factorial((2 * q - p) as u64) * factorial((p - q) as u64),
    ) * num_traits::pow(rat(2), 2 * q - p);
    num / den
}

pub fn verify_dp_expansion(k: usize, p: usize) -> Result<bool> {
    if p > k {
        return invalid(format!("D^p expansion needs p <= k, got k={k}, p={p}"));
    }
    let q = BiPoly::q_kernel();
    let one_minus_t = BiPoly::one() - BiPoly::t();
    let lhs = one_minus_t.pow(p as u32) * q.pow(k as u32).formal_d_pow(p)?;
    let bracket = q.reflect() - &q + one_minus_t.pow(2).scale(&rat(16));
    let mut rhs = BiPoly::zero();
    for qq in p.div_ceil(2)..=p {
        let term = one_minus_t.pow((2 * p - 2 * qq) as u32)
            * q.pow((k - qq) as u32)
            * bracket.pow((2 * qq - p) as u32);
        rhs = rhs + term.scale(&coeff_k(k, p, qq));
    }
    Ok(lhs == rhs)
}

/// The defining double sum for `C(j)`.
pub fn cj_double_sum(k: usize, u: usize, j: usize) -> BigRational {
    let (k, u, j) = (k as i64, u as i64, j as i64);
    let mut acc = BigRational::zero();
    for m in 0..=(u / 2) {
        for q in 0..=m {
            let t = sign((q + m) as usize)
                * num_traits::pow(rat(4), q as usize)
                * b(u - 2 * q, j - q)
                * b(u, 2 * m)
                * b(m, q)
                * b(2 * m, m)
                * b(2 * k - m, k)
                * b(2 * k - q, k)
                / b(2 * k - m, m);
            acc += t;
        }
    }
    acc
}

pub fn cj_closed_form(k: usize, u: usize, j: usize) -> BigRational {
    let (k, u, j) = (k as i64, u as i64, j as i64);
    num_traits::pow(rat(2), u as usize) * b(u, j) * b(2 * k - j, k) * b(2 * k - u + j, k)
}

/// Compares the double sum with the closed form. The closed form is only
/// claimed for even `u`; odd `u` is accepted for exploratory sweeps.
pub fn verify_cj_closed_form(k: usize, u: usize, j: usize) -> Result<bool> {
    if j > u || u > 2 * k {
        return invalid(format!("C(j) needs 0 <= j <= u <= 2k, got k={k}, u={u}, j={j}"));
    }
    Ok(cj_double_sum(k, u, j) == cj_closed_form(k, u, j))
}

pub fn verify_gamma_contour(k: usize, m: usize) -> Result<bool> {
    if m > k {
        return invalid(format!("gamma coefficient check needs m <= k, got k={k}, m={m}"));
    }
    let a = rat(m as i64) - BigRational::new(1.into(), 2.into());
    let lhs = binom_general(&a, k as u64) * num_traits::pow(rat(-4), k);
    let (k, m) = (k as i64, m as i64);
    let rhs = sign(m as usize) * b(2 * m, m) * b(2 * k - m, k) / b(2 * k - m, m);
    Ok(lhs == rhs)
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteBounds {
    pub lemma35a_k: usize,
    pub lemma35b_l: usize,
    pub abel_aigner_p: usize,
    pub necessity_k: usize,
    pub dp_expansion_k: usize,
    pub cj_k: usize,
    pub gamma_k: usize,
}

impl Default for SuiteBounds {
    fn default() -> Self {
        SuiteBounds {
            lemma35a_k: 12,
            lemma35b_l: 14,
            abel_aigner_p: 12,
            necessity_k: 8,
            dp_expansion_k: 6,
            cj_k: 6,
            gamma_k: 10,
        }
    }
}

impl SuiteBounds {
    /// Every bound set to `k`.
    pub fn uniform(k: usize) -> Self {
        SuiteBounds {
            lemma35a_k: k,
            lemma35b_l: k,
            abel_aigner_p: k.max(1),
            necessity_k: k,
            dp_expansion_k: k,
            cj_k: k,
            gamma_k: k,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityRow {
    pub name: &'static str,
    pub range: String,
    pub cases: usize,
    pub failures: Vec<String>,
    /// Failures here are recorded but do not fail the suite.
    pub informational: bool,
}

impl IdentityRow {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn sweep<P, F>(name: &'static str, range: String, cases: Vec<P>, check: F) -> IdentityRow
where
    P: Send + Sync + std::fmt::Debug,
    F: Fn(&P) -> bool + Send + Sync,
{
    let failures: Vec<String> =
        cases.par_iter().filter(|c| !check(c)).map(|c| format!("{c:?}")).collect();
    IdentityRow { name, range, cases: cases.len(), failures, informational: false }
}

pub fn run_identity_suite(bd: &SuiteBounds) -> Vec<IdentityRow> {
    let mut rows = Vec::new();

    let mut c = Vec::new();
    for k in 0..=bd.lemma35a_k {
        for l in 0..=k {
            for s in 0..=l {
                c.push((k, l, s));
            }
        }
    }
    rows.push(sweep(
        "lemma35a",
        format!("0<=s<=l<=k<={}", bd.lemma35a_k),
        c,
        |&(k, l, s)| verify_lemma35a(k, l, s).unwrap_or(false),
    ));

    rows.push(sweep(
        "lemma35b",
        format!("l<={}", bd.lemma35b_l),
        (0..=bd.lemma35b_l).collect(),
        |&l| verify_lemma35b(l),
    ));

    let mut c = Vec::new();
    for p in 1..=bd.abel_aigner_p {
        for r in 0..p {
            for s in 0..(p - r) {
                c.push((p, r, s));
            }
        }
    }
    rows.push(sweep(
        "abel_aigner",
        format!("1<=p<={}, r+s<=p-1", bd.abel_aigner_p),
        c,
        |&(p, r, s)| verify_abel_aigner(p, r, s).unwrap_or(false),
    ));

    rows.push(sweep(
        "necessity_identity",
        format!("k<={}", bd.necessity_k),
        (0..=bd.necessity_k).collect(),
        |&k| verify_necessity_identity(k),
    ));

    let mut c = Vec::new();
    for k in 0..=bd.dp_expansion_k {
        for p in 0..=k {
            c.push((k, p));
        }
    }
    rows.push(sweep(
        "dp_expansion",
        format!("p<=k<={}", bd.dp_expansion_k),
        c,
        |&(k, p)| verify_dp_expansion(k, p).unwrap_or(false),
    ));

    let mut even = Vec::new();
    let mut odd = Vec::new();
    for k in 0..=bd.cj_k {
        for u in 0..=2 * k {
            for j in 0..=u {
                if u % 2 == 0 {
                    even.push((k, u, j));
                } else {
                    odd.push((k, u, j));
                }
            }
        }
    }
    rows.push(sweep(
        "cj_closed_form",
        format!("even u<=2k, k<={}", bd.cj_k),
        even,
        |&(k, u, j)| verify_cj_closed_form(k, u, j).unwrap_or(false),
    ));
    let mut row = sweep(
        "cj_closed_form_odd_u",
        format!("odd u<=2k, k<={}", bd.cj_k),
        odd,
        |&(k, u, j)| verify_cj_closed_form(k, u, j).unwrap_or(false),
    );
    row.informational = true;
    rows.push(row);

    let mut c = Vec::new();
    for k in 0..=bd.gamma_k {
        for m in 0..=k {
            c.push((k, m));
        }
    }
    rows.push(sweep(
        "gamma_contour",
        format!("m<=k<={}", bd.gamma_k),
        c,
        |&(k, m)| verify_gamma_contour(k, m).unwrap_or(false),
    ));

    rows
}

/// True when every non-informational row passed.
pub fn suite_passed(rows: &[IdentityRow]) -> bool {
    rows.iter().all(|r| r.informational || r.passed())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn worked_cases() {
        assert!(verify_lemma35a(2, 1, 0).unwrap());
        assert!(verify_lemma35b(0));
        assert!(verify_lemma35b(1));
        assert!(verify_abel_aigner(2, 0, 0).unwrap());
        assert!(verify_abel_aigner(1, 0, 0).unwrap());
        assert!(verify_necessity_identity(0));
        assert!(verify_necessity_identity(1));
        assert!(verify_dp_expansion(2, 1).unwrap());
        assert_eq!(cj_double_sum(1, 2, 1), rat(8));
        assert!(verify_cj_closed_form(1, 2, 1).unwrap());
        assert!(verify_gamma_contour(1, 0).unwrap());
    }

    #[test]
    fn preconditions_are_enforced() {
        assert!(verify_lemma35a(3, 1, 2).is_err());
        assert!(verify_abel_aigner(2, 1, 1).is_err());
        assert!(verify_dp_expansion(1, 2).is_err());
        assert!(verify_gamma_contour(1, 2).is_err());
        assert!(verify_cj_closed_form(1, 3, 1).is_err());
    }

    #[test]
    fn coefficient_k_at_p_zero_is_one() {
        for k in 0..6 {
            assert_eq!(coeff_k(k, 0, 0), BigRational::one());
        }
    }
}
