//! Truncated Taylor jets: the value and derivatives of a function at one point.
//!
//! Coefficients are stored in Taylor form (`f^(j)(x) / j!`), which keeps the
//! product rule a plain Cauchy product. [`Jet::deriv`] converts back.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Jet<T = f64> {
    x: f64,
    c: Vec<T>,
}

impl<T: Scalar> Jet<T> {
    /// The identity function at `x`.
    pub fn variable(x: f64, order: usize) -> Self {
        let mut c = vec![T::zero(); order + 1];
        c[0] = T::from_f64(x);
        if order >= 1 {
            c[1] = T::one();
        }
        Jet { x, c }
    }

    /// The identity function at `x`, with `x` itself carried as a `T`.
    pub fn variable_t(x: T, order: usize) -> Self {
        let mut j = Jet::variable(x.to_f64(), order);
        j.c[0] = x;
        j
    }

    pub fn constant(x: f64, value: T, order: usize) -> Self {
        let mut c = vec![T::zero(); order + 1];
        c[0] = value;
        Jet { x, c }
    }

    pub fn zero(x: f64, order: usize) -> Self {
        Jet::constant(x, T::zero(), order)
    }

    /// Build from ordinary derivatives `f(x), f'(x), ..., f^(n)(x)`.
    pub fn from_derivs(x: f64, derivs: &[T]) -> Self {
        assert!(!derivs.is_empty(), "a jet needs at least the value");
        let mut fact = 1.0;
        let c = derivs
            .iter()
            .enumerate()
            .map(|(j, &d)| {
                if j > 0 {
                    fact *= j as f64;
                }
                d / T::from_f64(fact)
            })
            .collect();
        Jet { x, c }
    }

    pub fn from_taylor(x: f64, coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a jet needs at least the value");
        Jet { x, c: coeffs }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn value(&self) -> T {
        self.c[0]
    }

    pub fn taylor(&self) -> &[T] {
        &self.c
    }

    /// `f^(j)(x)`.
    pub fn deriv(&self, j: usize) -> T {
        let mut f = 1.0;
        for i in 2..=j {
            f *= i as f64;
        }
        self.c[j] * T::from_f64(f)
    }

    pub fn derivs(&self) -> Vec<T> {
        (0..self.c.len()).map(|j| self.deriv(j)).collect()
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order());
        Jet { x: self.x, c: self.c[..=order].to_vec() }
    }

    /// Jet of `f^(m)` from a jet of `f` of order at least `m + order`.
    pub fn shift_derivative(&self, m: usize, order: usize) -> Self {
        assert!(self.order() >= m + order, "jet order too low for shift");
        // (f^(m))^(i)/i! = f^(m+i)/(m+i)! * (m+i)!/i!
        let c = (0..=order)
            .map(|i| {
                let mut r = 1.0;
                for q in (i + 1)..=(i + m) {
                    r *= q as f64;
                }
                self.c[m + i] * T::from_f64(r)
            })
            .collect();
        Jet { x: self.x, c }
    }

    pub fn map_f64(&self) -> Jet<f64> {
        Jet { x: self.x, c: self.c.iter().map(|v| v.to_f64()).collect() }
    }

    pub fn scale(&self, s: T) -> Self {
        Jet { x: self.x, c: self.c.iter().map(|&v| v * s).collect() }
    }

    pub fn add_scalar(&self, s: T) -> Self {
        let mut out = self.clone();
        out.c[0] += s;
        out
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.c.len(), other.c.len(), "jet orders differ");
    }

    pub fn recip(&self) -> Self {
        Jet::constant(self.x, T::one(), self.order()) / self
    }

    pub fn sin_cos(&self) -> (Self, Self) {
        let n = self.c.len();
        let (s0, c0) = self.c[0].sin_cos();
        let mut s = vec![T::zero(); n];
        let mut c = vec![T::zero(); n];
        s[0] = s0;
        c[0] = c0;
        for k in 1..n {
            let mut as_ = T::zero();
            let mut ac = T::zero();
            for j in 1..=k {
                let w = self.c[j] * T::from_f64(j as f64);
                as_ += w * c[k - j];
                ac += w * s[k - j];
            }
            let kk = T::from_f64(k as f64);
            s[k] = as_ / kk;
            c[k] = -(ac / kk);
        }
        (Jet { x: self.x, c: s }, Jet { x: self.x, c })
    }

    pub fn sin(&self) -> Self {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Self {
        self.sin_cos().1
    }

    pub fn exp(&self) -> Self {
        let n = self.c.len();
        let mut e = vec![T::zero(); n];
        e[0] = self.c[0].exp();
        for k in 1..n {
            let mut acc = T::zero();
            for j in 1..=k {
                acc += self.c[j] * T::from_f64(j as f64) * e[k - j];
            }
            e[k] = acc / T::from_f64(k as f64);
        }
        Jet { x: self.x, c: e }
    }

    pub fn sqrt(&self) -> Self {
        let n = self.c.len();
        let mut s = vec![T::zero(); n];
        s[0] = self.c[0].sqrt();
        let two_s0 = s[0] + s[0];
        for k in 1..n {
            let mut acc = self.c[k];
            for j in 1..k {
                acc -= s[j] * s[k - j];
            }
            s[k] = acc / two_s0;
        }
        Jet { x: self.x, c: s }
    }

    pub fn powi(&self, n: i32) -> Self {
        let mut base = self.clone();
        let mut e = n.unsigned_abs();
        let mut acc = Jet::constant(self.x, T::one(), self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    /// `sum_i a[i] * self^i` by Horner.
    pub fn polynomial(&self, a: &[T]) -> Self {
        let mut acc = Jet::zero(self.x, self.order());
        for &ai in a.iter().rev() {
            acc = (&acc * self).add_scalar(ai);
        }
        acc
    }
}

impl<T: Scalar> Add for &Jet<T> {
    type Output = Jet<T>;
    fn add(self, o: &Jet<T>) -> Jet<T> {
        self.check(o);
        Jet { x: self.x, c: self.c.iter().zip(&o.c).map(|(&a, &b)| a + b).collect() }
    }
}

impl<T: Scalar> Sub for &Jet<T> {
    type Output = Jet<T>;
    fn sub(self, o: &Jet<T>) -> Jet<T> {
        self.check(o);
        Jet { x: self.x, c: self.c.iter().zip(&o.c).map(|(&a, &b)| a - b).collect() }
    }
}

impl<T: Scalar> Mul for &Jet<T> {
    type Output = Jet<T>;
    fn mul(self, o: &Jet<T>) -> Jet<T> {
        self.check(o);
        let n = self.c.len();
        let mut c = vec![T::zero(); n];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in o.c[..n - i].iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Jet { x: self.x, c }
    }
}

impl<T: Scalar> Div for &Jet<T> {
    type Output = Jet<T>;
    fn div(self, o: &Jet<T>) -> Jet<T> {
        self.check(o);
        let n = self.c.len();
        let b0 = o.c[0];
        let mut q = vec![T::zero(); n];
        for k in 0..n {
            let mut acc = self.c[k];
            for j in 1..=k {
                acc -= o.c[j] * q[k - j];
            }
            q[k] = acc / b0;
        }
        Jet { x: self.x, c: q }
    }
}

impl<T: Scalar> Neg for &Jet<T> {
    type Output = Jet<T>;
    fn neg(self) -> Jet<T> {
        Jet { x: self.x, c: self.c.iter().map(|&a| -a).collect() }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl<T: Scalar> $tr for Jet<T> {
            type Output = Jet<T>;
            fn $m(self, o: Jet<T>) -> Jet<T> {
                (&self).$m(&o)
            }
        }
        impl<T: Scalar> $tr<&Jet<T>> for Jet<T> {
            type Output = Jet<T>;
            fn $m(self, o: &Jet<T>) -> Jet<T> {
                (&self).$m(o)
            }
        }
        impl<T: Scalar> $tr<Jet<T>> for &Jet<T> {
            type Output = Jet<T>;
            fn $m(self, o: Jet<T>) -> Jet<T> {
                self.$m(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl<T: Scalar> Neg for Jet<T> {
    type Output = Jet<T>;
    fn neg(self) -> Jet<T> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn sin_derivatives_cycle() {
        let x = 0.7f64;
        let s = Jet::<f64>::variable(x, 6).sin();
        let want = [x.sin(), x.cos(), -x.sin(), -x.cos(), x.sin(), x.cos(), -x.sin()];
        for (j, w) in want.iter().enumerate() {
            assert_relative_eq!(s.deriv(j), *w, epsilon = 1e-14);
        }
    }

    #[test]
    fn quotient_and_power_rules() {
        // f = x^3 / (1 + x), f' = (2x^3 + 3x^2)/(1+x)^2
        let x = 1.5;
        let v = Jet::<f64>::variable(x, 3);
        let f = v.powi(3) / v.add_scalar(1.0);
        assert_relative_eq!(f.value(), 3.375 / 2.5, epsilon = 1e-15);
        assert_relative_eq!(f.deriv(1), (2.0 * 3.375 + 3.0 * 2.25) / 6.25, epsilon = 1e-14);
        let g = v.powi(-2);
        assert_relative_eq!(g.deriv(2), 6.0 / x.powi(4), epsilon = 1e-14);
    }

    #[test]
    fn exp_sqrt_and_shift() {
        let x = 0.4;
        let v = Jet::<f64>::variable(x, 5);
        let e = (&v * &v).exp();
        // d/dx exp(x^2) = 2x exp(x^2)
        assert_relative_eq!(e.deriv(1), 2.0 * x * (x * x).exp(), epsilon = 1e-14);
        let r = v.sqrt();
        assert_relative_eq!(r.deriv(2), -0.25 * x.powf(-1.5), epsilon = 1e-13);
        let sh = e.shift_derivative(2, 3);
        assert_relative_eq!(sh.value(), e.deriv(2), epsilon = 1e-14);
        assert_relative_eq!(sh.deriv(3), e.deriv(5), epsilon = 1e-12);
    }
}
