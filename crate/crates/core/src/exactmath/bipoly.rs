use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{binom_u, rat};
use crate::error::{domain, Result};
use crate::scalar::Scalar;

/// Polynomial in two variables `t`, `u` with exact rational coefficients.
///
/// Keys are exponent pairs `(i, j)` for `t^i u^j`. Zero coefficients are
/// never stored, so `is_zero` is a structural check.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        BiPoly::monomial(0, 0, c)
    }

    pub fn monomial(i: u32, j: u32, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BiPoly { terms }
    }

    pub fn t() -> Self {
        BiPoly::monomial(1, 0, BigRational::one())
    }

    pub fn u() -> Self {
        BiPoly::monomial(0, 1, BigRational::one())
    }

    /// `Q(t,u) = 2(u^2+1)t^2 - t^4 - (1-u^2)^2`.
    pub fn q_kernel() -> Self {
        let t2 = BiPoly::t().pow(2);
        let u2 = BiPoly::u().pow(2);
        let one = BiPoly::one();
        let a = (&u2 + &one).scale(&rat(2)) * &t2;
        a - t2.pow(2) - (&one - &u2).pow(2)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigRational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn degree_t(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    fn add_term(&mut self, key: (u32, u32), c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = BiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Ordinary `d/dt`.
    pub fn d_dt(&self) -> Self {
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                out.add_term((i - 1, j), c * rat(i as i64));
            }
        }
        out
    }

    /// `D = (1/t) d/dt`, defined on polynomials even in `t`.
    pub fn formal_d(&self) -> Result<Self> {
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            if i % 2 == 1 {
                return domain(format!("formal D needs even t-degrees, found t^{i} u^{j}"));
            }
            if i > 0 {
                out.add_term((i - 2, j), c * rat(i as i64));
            }
        }
        Ok(out)
    }

    pub fn formal_d_pow(&self, p: usize) -> Result<Self> {
        let mut out = self.clone();
        for _ in 0..p {
            out = out.formal_d()?;
        }
        Ok(out)
    }

    /// Substitute `t -> a + b t`.
    pub fn subst_t_affine(&self, a: &BigRational, b: &BigRational) -> Self {
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            // (a + b t)^i = sum_r binom(i,r) a^(i-r) b^r t^r
            for r in 0..=i {
                let coef = BigRational::from_integer(binom_u(i as u64, r as u64))
                    * num_traits::pow(a.clone(), (i - r) as usize)
                    * num_traits::pow(b.clone(), r as usize);
                out.add_term((r, j), c * coef);
            }
        }
        out
    }

    /// `t -> 2 - t`.
    pub fn reflect(&self) -> Self {
        self.subst_t_affine(&rat(2), &rat(-1))
    }

    pub fn eval<T: Scalar>(&self, t: T, u: T) -> T {
        self.to_numeric::<T>().eval(t, u)
    }

    pub fn to_numeric<T: Scalar>(&self) -> NumPoly<T> {
        NumPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| (i, j, T::from_rational(c)))
                .collect(),
        }
    }
}

/// Floating-point copy of a [`BiPoly`] for repeated evaluation.
#[derive(Clone, Debug)]
pub struct NumPoly<T = f64> {
    terms: Vec<(u32, u32, T)>,
}

impl<T: Scalar> NumPoly<T> {
    pub fn eval(&self, t: T, u: T) -> T {
        let mut acc = T::zero();
        for &(i, j, c) in &self.terms {
            acc += c * t.powi(i as i32) * u.powi(j as i32);
        }
        acc
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|((i, j), c)| format!("({c}) t^{i} u^{j}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, -c.clone());
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &o.terms {
                out.add_term((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(&rat(-1))
    }
}

macro_rules! owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for BiPoly {
            type Output = BiPoly;
            fn $m(self, o: BiPoly) -> BiPoly { (&self).$m(&o) }
        }
        impl $tr<&BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $m(self, o: &BiPoly) -> BiPoly { (&self).$m(o) }
        }
    )*};
}
owned!(Add add, Sub sub, Mul mul);
