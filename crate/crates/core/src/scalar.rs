//! Floating types the jet engine and the closed-form kernels run over.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, ToPrimitive, Zero};

use crate::dd::Dd;

pub trait Scalar:
    Copy
    + Debug
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
{
    /// Relative size below which a series term is dropped.
    const SERIES_EPS: f64;

    fn from_f64(v: f64) -> Self;
    fn to_f64(self) -> f64;
    fn sin_cos(self) -> (Self, Self);
    fn exp(self) -> Self;
    fn sqrt(self) -> Self;
    fn abs(self) -> Self;
    fn from_rational(q: &BigRational) -> Self;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }

    fn one() -> Self {
        Self::from_f64(1.0)
    }

    fn powi(self, n: i32) -> Self {
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        if n < 0 {
            Self::one() / acc
        } else {
            acc
        }
    }
}

impl Scalar for f64 {
    const SERIES_EPS: f64 = 1e-18;
    fn from_f64(v: f64) -> Self {
        v
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn sin_cos(self) -> (f64, f64) {
        f64::sin_cos(self)
    }
    fn exp(self) -> f64 {
        f64::exp(self)
    }
    fn sqrt(self) -> f64 {
        f64::sqrt(self)
    }
    fn abs(self) -> f64 {
        f64::abs(self)
    }
    fn from_rational(q: &BigRational) -> f64 {
        q.to_f64().unwrap_or(f64::NAN)
    }
    fn powi(self, n: i32) -> f64 {
        f64::powi(self, n)
    }
}

fn bigint_to_dd(n: &BigInt) -> Dd {
    let hi = n.to_f64().unwrap_or(f64::NAN);
    if !hi.is_finite() || n.is_zero() {
        return Dd::from_f64(hi);
    }
    let rest = n - BigInt::from_f64(hi).expect("finite");
    Dd::new(hi, 0.0) + Dd::from_f64(rest.to_f64().unwrap_or(0.0))
}

impl Scalar for Dd {
    const SERIES_EPS: f64 = 1e-34;
    fn from_f64(v: f64) -> Self {
        Dd::from_f64(v)
    }
    fn to_f64(self) -> f64 {
        Dd::to_f64(self)
    }
    fn sin_cos(self) -> (Dd, Dd) {
        Dd::sin_cos(self)
    }
    fn exp(self) -> Dd {
        Dd::exp(self)
    }
    fn sqrt(self) -> Dd {
        Dd::sqrt(self)
    }
    fn abs(self) -> Dd {
        Dd::abs(self)
    }
    fn from_rational(q: &BigRational) -> Dd {
        bigint_to_dd(q.numer()) / bigint_to_dd(q.denom())
    }
    fn powi(self, n: i32) -> Dd {
        Dd::powi(self, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_conversion_keeps_low_bits() {
        let q = BigRational::new(BigInt::from(1), BigInt::from(3));
        let d = Dd::from_rational(&q);
        assert!((d * Dd::from_f64(3.0) - Dd::ONE).to_f64().abs() < 1e-31);
        let big = BigInt::from(2).pow(80) + BigInt::from(7);
        let d = Dd::from_rational(&BigRational::from_integer(big));
        assert_eq!(d.lo, 7.0);
    }
}
