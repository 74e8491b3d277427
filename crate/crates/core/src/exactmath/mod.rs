//! Exact rational arithmetic: binomials under the two conventions in use,
//! the range-operator coefficients, a bivariate polynomial ring with the
//! formal `D` operator, and verifiers for the combinatorial identities.

mod bipoly;
mod identities;

pub use bipoly::{BiPoly, NumPoly};
pub use identities::*;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{invalid, Result, SmtError};

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BinomConvention {
    #[default]
    Standard,
    /// Standard, plus `(-1 choose -1) = 1` and `(-1 choose 0) = 1`.
    Contour,
}

impl BinomConvention {
    fn name(self) -> &'static str {
        match self {
            BinomConvention::Standard => "standard",
            BinomConvention::Contour => "contour",
        }
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `n choose k` for `n >= 0`, as an integer.
pub fn binom_u(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn binom(n: i64, k: i64, conv: BinomConvention) -> Result<BigRational> {
    if n >= 0 {
        if k < 0 || k > n {
            return Ok(BigRational::zero());
        }
        return Ok(BigRational::from_integer(binom_u(n as u64, k as u64)));
    }
    match (conv, n, k) {
        (BinomConvention::Contour, -1, -1) | (BinomConvention::Contour, -1, 0) => {
            Ok(BigRational::one())
        }
        _ => Err(SmtError::UnsupportedBinomial { n, k, mode: conv.name() }),
    }
}

/// Generalized binomial `a choose k` for rational `a`.
pub fn binom_general(a: &BigRational, k: u64) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..k {
        acc = acc * (a - rat(i as i64)) / rat(i as i64 + 1);
    }
    acc
}

/// `C(k,p) = (2k-p)! / (p! 2^(k-p) (k-p)!)`.
pub fn coeff_c(k: usize, p: usize) -> Result<BigRational> {
    if p > k {
        return invalid(format!("coeff_c needs 0 <= p <= k, got k={k}, p={p}"));
    }
    let num = factorial((2 * k - p) as u64);
    let den = factorial(p as u64) * (BigInt::one() << (k - p)) * factorial((k - p) as u64);
    Ok(BigRational::new(num, den))
}


pub(crate) fn sign(e: usize) -> BigRational {
    if e.is_even() {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_conventions() {
        let s = BinomConvention::Standard;
        let c = BinomConvention::Contour;
        assert_eq!(binom(5, 2, s).unwrap(), rat(10));
        assert_eq!(binom(3, 5, s).unwrap(), rat(0));
        assert_eq!(binom(4, -1, s).unwrap(), rat(0));
        assert_eq!(binom(-1, -1, c).unwrap(), rat(1));
        assert_eq!(binom(-1, 0, c).unwrap(), rat(1));
        assert!(binom(-1, -1, s).is_err());
        assert!(binom(-2, -1, c).is_err());
        assert!(binom(-1, 1, c).is_err());
    }

    #[test]
    fn coefficients_of_the_range_operator() {
        for k in 0..=12 {
            assert_eq!(coeff_c(k, k).unwrap(), rat(1));
        }
        for k in 1..=12i64 {
            assert_eq!(coeff_c(k as usize, k as usize - 1).unwrap(), rat(k * (k + 1) / 2));
        }
        assert_eq!(coeff_c(1, 0).unwrap(), rat(1));
        assert!(coeff_c(2, 3).is_err());
        for k in 0..=10 {
            for p in 0..=k {
                assert!(coeff_c(k, p).unwrap().is_integer());
            }
        }
    }

    #[test]
    fn generalized_binomial() {
        // (-1/2 choose 2) = 3/8
        assert_eq!(binom_general(&ratio(-1, 2), 2), ratio(3, 8));
        assert_eq!(binom_general(&rat(6), 2), rat(15));
        assert_eq!(binom_general(&rat(2), 5), rat(0));
    }
}
