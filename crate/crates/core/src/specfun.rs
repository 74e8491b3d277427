//! Spherical Bessel functions of half-integer order in two normalizations,
//! closed-form `D^p` kernels, the `D` operator on jets, Gegenbauer
//! polynomials and Bessel zeros.
//!
//! `D = (1/x) d/dx`. The "raw" functions are `D^k(sin x / x)` and
//! `D^k(cos x / x)`; the normalized ones satisfy `j(0) = 1` and differ from
//! the raw ones by the factor `c_k = (-1)^k / (2k+1)!!`.

use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::dd::Dd;
use crate::error::{domain, Result, SmtError};
use crate::exactmath::{coeff_c, rat};
use crate::jet::Jet;
use crate::scalar::Scalar;

/// Largest `p` for which coefficient tables are precomputed.
pub const MAX_TABLE_ORDER: usize = 60;

/// Order `alpha = k + 1/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HalfIntOrder(pub usize);

impl HalfIntOrder {
    pub fn k(self) -> usize {
        self.0
    }

    pub fn alpha(self) -> f64 {
        self.0 as f64 + 0.5
    }
}

impl From<usize> for HalfIntOrder {
    fn from(k: usize) -> Self {
        HalfIntOrder(k)
    }
}

pub fn switch_radius(k: usize) -> f64 {
    k as f64 + 0.5
}

fn lift<T: Scalar>(d: Dd) -> T {
    T::from_f64(d.hi) + T::from_f64(d.lo)
}

/// `c_k = (-1)^k sqrt(pi) / (2^(k+1) Gamma(k + 3/2)) = (-1)^k / (2k+1)!!`.
pub fn norm_const(k: usize) -> f64 {
    norm_const_t::<Dd>(k).to_f64()
}

fn norm_const_t<T: Scalar>(k: usize) -> T {
    let mut c = T::one();
    for i in 1..=k {
        c /= T::from_f64((2 * i + 1) as f64);
    }
    if k % 2 == 1 {
        -c
    } else {
        c
    }
}

fn c_table() -> &'static Vec<Vec<Dd>> {
    static T: OnceLock<Vec<Vec<Dd>>> = OnceLock::new();
    T.get_or_init(|| {
        (0..=MAX_TABLE_ORDER)
            .map(|p| {
                (0..=p).map(|l| Dd::from_rational(&coeff_c(p, l).expect("l <= p"))).collect()
            })
            .collect()
    })
}

fn check_order(p: usize) -> Result<()> {
    if p > MAX_TABLE_ORDER {
        return Err(SmtError::InvalidArgument(format!(
            "order {p} exceeds the precomputed limit {MAX_TABLE_ORDER}"
        )));
    }
    Ok(())
}

/// `D^p(sin x / x)` and `D^p(cos x / x)` by the closed sums
/// `sum_l C(p,l) x^l / x^(2p+1) {...}`, both at once.
fn dp_trig_closed<T: Scalar>(p: usize, x: T) -> (T, T) {
    let (s, c) = x.sin_cos();
    let row = &c_table()[p];
    let mut xs = T::one() / x.powi(2 * p as i32 + 1);
    let mut sinc = T::zero();
    let mut cosc = T::zero();
    for (l, &cl) in row.iter().enumerate() {
        let w: T = lift::<T>(cl) * xs;
        if l % 2 == 0 {
            let sg = if (p + l / 2).is_multiple_of(2) { w } else { -w };
            sinc += sg * s;
            cosc += sg * c;
        } else {
            let sg = if (p + l.div_ceil(2)).is_multiple_of(2) { w } else { -w };
            sinc += sg * c;
            cosc -= sg * s;
        }
        xs *= x;
    }
    (sinc, cosc)
}

pub fn dp_sinc_t<T: Scalar>(p: usize, x: T) -> Result<T> {
    check_order(p)?;
    if x.to_f64() == 0.0 {
        return domain("D^p(sin x/x) closed form needs x != 0");
    }
    Ok(dp_trig_closed(p, x).0)
}

pub fn dp_cosc_t<T: Scalar>(p: usize, x: T) -> Result<T> {
    check_order(p)?;
    if x.to_f64() == 0.0 {
        return domain("D^p(cos x/x) has a pole at x = 0");
    }
    Ok(dp_trig_closed(p, x).1)
}

/// Closed sum for `D^p(sin x / x)`, evaluated in double-double.
pub fn dp_sinc(p: usize, x: f64) -> Result<f64> {
    dp_sinc_t(p, Dd::from_f64(x)).map(Dd::to_f64)
}

/// Closed sum for `D^p(cos x / x)`, evaluated in double-double.
pub fn dp_cosc(p: usize, x: f64) -> Result<f64> {
    dp_cosc_t(p, Dd::from_f64(x)).map(Dd::to_f64)
}

/// `D^m (1 / (t (t+1)^d))`
/// `= (-1)^m sum_r C(m,r) binom(d+r-1, r) r! / (t^(2m+1-r) (t+1)^(d+r))`.
pub fn dp_inv_poly_t<T: Scalar>(m: usize, d: usize, t: T) -> Result<T> {
    check_order(m)?;
    let tf = t.to_f64();
    if tf == 0.0 || tf == -1.0 {
        return domain("D^m(1/(t(t+1)^d)) needs t not in {0, -1}");
    }
    let one = T::one();
    let tp1 = t + one;
    let mut acc = T::zero();
    // binom(d+r-1, r) r! = d (d+1) ... (d+r-1), with the empty product 1 at r = 0
    let mut rising = T::one();
    for r in 0..=m {
        if r > 0 {
            rising *= T::from_f64((d + r - 1) as f64);
        }
        if rising.to_f64() == 0.0 {
            break;
        }
        let num = lift::<T>(c_table()[m][r]) * rising;
        acc += num / (t.powi((2 * m + 1 - r) as i32) * tp1.powi((d + r) as i32));
    }
    Ok(if m % 2 == 1 { -acc } else { acc })
}

pub fn dp_inv_poly(m: usize, d: usize, t: f64) -> Result<f64> {
    dp_inv_poly_t(m, d, Dd::from_f64(t)).map(Dd::to_f64)
}

/// Power series of `D^k(sin x / x)`:
/// `sum_i (-1)^(k+i) 2^k (k+i)! / (i! (2k+2i+1)!) x^(2i)`.
fn raw_j_series<T: Scalar>(k: usize, x: T) -> T {
    let x2 = x * x;
    let mut term = norm_const_t::<T>(k);
    let mut sum = term;
    for i in 0..200usize {
        let den = (2 * (i + 1) * (2 * i + 2 * k + 3)) as f64;
        term = -(term * x2) / T::from_f64(den);
        sum += term;
        if term.abs().to_f64() <= T::SERIES_EPS * sum.abs().to_f64() {
            break;
        }
    }
    sum
}

/// `D^k(sin x / x)`: power series below `switch_radius(k)`, closed form above.
pub fn raw_j_t<T: Scalar>(k: usize, x: T) -> T {
    if x.to_f64().abs() < switch_radius(k) || k > MAX_TABLE_ORDER {
        raw_j_series(k, x)
    } else {
        dp_trig_closed(k, x).0
    }
}

/// `D^k(cos x / x)`; the pole dominates near 0, so the closed form is used throughout.
pub fn raw_y_t<T: Scalar>(k: usize, x: T) -> Result<T> {
    dp_cosc_t(k, x)
}

pub fn raw_j(k: usize, x: f64) -> f64 {
    raw_j_t(k, Dd::from_f64(x)).to_f64()
}

pub fn raw_y(k: usize, x: f64) -> Result<f64> {
    raw_y_t(k, Dd::from_f64(x)).map(Dd::to_f64)
}

/// Normalized `j_(k+1/2)` with `j(0) = 1`.
pub fn sph_bessel_j(k: usize, x: f64) -> f64 {
    (raw_j_t(k, Dd::from_f64(x)) / norm_const_t::<Dd>(k)).to_f64()
}

/// Normalized `y_(k+1/2)`, the same constant as for `j`.
pub fn sph_bessel_y(k: usize, x: f64) -> Result<f64> {
    Ok((raw_y_t(k, Dd::from_f64(x))? / norm_const_t::<Dd>(k)).to_f64())
}

/// Taylor coefficients of `y -> D^k(sin y / y)` at `y0`, up to `order`.
///
/// Uses `f^(i) = sum_j b[i][j] y^(2j-i) D^j f`, whose powers of `y` are all
/// nonnegative, so nothing cancels near `y = 0`.
pub fn raw_j_taylor<T: Scalar>(k: usize, y0: T, order: usize) -> Vec<T> {
    let mut b = vec![vec![0.0f64; order + 1]; order + 1];
    b[0][0] = 1.0;
    for i in 0..order {
        for j in 0..=i {
            let v = b[i][j];
            if v == 0.0 {
                continue;
            }
            let e = 2.0 * j as f64 - i as f64;
            b[i + 1][j] += e * v;
            b[i + 1][j + 1] += v;
        }
    }
    let dj: Vec<T> = (0..=order).map(|j| raw_j_t(k + j, y0)).collect();
    let mut fact = 1.0;
    (0..=order)
        .map(|i| {
            if i > 0 {
                fact *= i as f64;
            }
            let mut acc = T::zero();
            for j in 0..=i {
                if b[i][j] != 0.0 {
                    acc += T::from_f64(b[i][j]) * y0.powi(2 * j as i32 - i as i32) * dj[j];
                }
            }
            acc / T::from_f64(fact)
        })
        .collect()
}

/// Exact coefficients of `D^p f = sum_{j=1..p} a[p][j] t^(j-2p) f^(j)`.
#[derive(Clone, Debug)]
pub struct DCoeffTable {
    rows: Vec<Vec<BigRational>>,
}

impl DCoeffTable {
    pub fn new(max_p: usize) -> Self {
        let mut rows: Vec<Vec<BigRational>> = vec![vec![BigRational::one()]];
        if max_p >= 1 {
            rows.push(vec![BigRational::zero(), BigRational::one()]);
        }
        for p in 1..max_p {
            let prev = &rows[p];
            let mut next = vec![BigRational::zero(); p + 2];
            for (j, slot) in next.iter_mut().enumerate().skip(1) {
                let left = if j >= 1 && j - 1 < prev.len() { prev[j - 1].clone() } else { BigRational::zero() };
                let here = if j < prev.len() { prev[j].clone() } else { BigRational::zero() };
                *slot = left + rat(j as i64 - 2 * p as i64) * here;
            }
            rows.push(next);
        }
        DCoeffTable { rows }
    }

    /// Shared table up to `MAX_TABLE_ORDER`.
    pub fn shared() -> &'static DCoeffTable {
        static T: OnceLock<DCoeffTable> = OnceLock::new();
        T.get_or_init(|| DCoeffTable::new(MAX_TABLE_ORDER))
    }

    pub fn max_order(&self) -> usize {
        self.rows.len() - 1
    }

    /// `a[p][j]`, zero outside `1 <= j <= p` (and `a[0][0] = 1`).
    pub fn get(&self, p: usize, j: usize) -> BigRational {
        self.rows.get(p).and_then(|r| r.get(j)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn row(&self, p: usize) -> &[BigRational] {
        &self.rows[p]
    }
}

fn d_table_dd() -> &'static Vec<Vec<Dd>> {
    static T: OnceLock<Vec<Vec<Dd>>> = OnceLock::new();
    T.get_or_init(|| {
        DCoeffTable::shared()
            .rows
            .iter()
            .map(|r| r.iter().map(Dd::from_rational).collect())
            .collect()
    })
}

/// `D^p f` at the jet's point from the jet's derivatives.
pub fn d_operator<T: Scalar>(jet: &Jet<T>, p: usize) -> Result<T> {
    if jet.order() < p {
        return Err(SmtError::InsufficientOrder { need: p, have: jet.order() });
    }
    check_order(p)?;
    if p == 0 {
        return Ok(jet.value());
    }
    if jet.x() == 0.0 {
        return domain("D needs t != 0");
    }
    let x = T::from_f64(jet.x());
    let row = &d_table_dd()[p];
    let mut acc = T::zero();
    for (j, &a) in row.iter().enumerate().skip(1) {
        acc += lift::<T>(a) * x.powi(j as i32 - 2 * p as i32) * jet.deriv(j);
    }
    Ok(acc)
}

/// `C_m^alpha(x)` by the three-term recurrence.
pub fn gegenbauer(m: usize, alpha: f64, x: f64) -> f64 {
    let mut c0 = 1.0;
    if m == 0 {
        return c0;
    }
    let mut c1 = 2.0 * alpha * x;
    for n in 2..=m {
        let nf = n as f64;
        let c2 = (2.0 * x * (nf + alpha - 1.0) * c1 - (nf + 2.0 * alpha - 2.0) * c0) / nf;
        c0 = c1;
        c1 = c2;
    }
    c1
}

fn j_sign(k: usize, x: f64) -> f64 {
    raw_j(k, x)
}

fn bisect(k: usize, mut a: f64, mut b: f64) -> f64 {
    let mut fa = j_sign(k, a);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if b - a <= 1e-13 || mid <= a || mid >= b {
            break;
        }
        let fm = j_sign(k, mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (fa > 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

/// The first `count` positive zeros of `j_(k+1/2)`.
///
/// The scan starts at `k + 1/2` (no zeros below it) and steps by `pi/4`,
/// less than the zero spacing, up to the asymptotic guess `(i + k/2) pi`,
/// which bounds the `i`-th zero from above. Each sign change is bisected.
pub fn bessel_zeros(k: usize, count: usize) -> Result<Vec<f64>> {
    let mut zeros = Vec::with_capacity(count);
    if count == 0 {
        return Ok(zeros);
    }
    let step = std::f64::consts::FRAC_PI_4;
    let limit = (count as f64 + k as f64 / 2.0 + 1.0) * std::f64::consts::PI;
    let mut a = switch_radius(k);
    let mut fa = j_sign(k, a);
    while zeros.len() < count {
        let b = a + step;
        if b > limit {
            return Err(SmtError::Bracketing { k, i: zeros.len() + 1 });
        }
        let fb = j_sign(k, b);
        if fb == 0.0 {
            zeros.push(b);
            a = b + 1e-9;
            fa = j_sign(k, a);
            continue;
        }
        if (fa > 0.0) != (fb > 0.0) {
            zeros.push(bisect(k, a, b));
        }
        a = b;
        fa = fb;
    }
    Ok(zeros)
}

pub fn bessel_zero(k: usize, i: usize) -> Result<f64> {
    if i == 0 {
        return Err(SmtError::InvalidArgument("zero index starts at 1".into()));
    }
    Ok(*bessel_zeros(k, i)?.last().expect("i >= 1"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn low_order_values() {
        assert!(sph_bessel_j(0, PI).abs() < 1e-16);
        assert_eq!(sph_bessel_j(3, 0.0), 1.0);
        assert!(sph_bessel_y(0, PI / 2.0).unwrap().abs() < 1e-16);
        assert_relative_eq!(sph_bessel_y(0, PI).unwrap(), -1.0 / PI, max_relative = 1e-15);
        assert!(sph_bessel_y(2, 1e-6).unwrap().abs() > 1e20);
        assert!(sph_bessel_y(1, 0.0).is_err());
        let x: f64 = 2.0;
        assert_relative_eq!(raw_j(1, x), (x * x.cos() - x.sin()) / x.powi(3), max_relative = 1e-15);
        assert_relative_eq!(raw_y(0, x).unwrap(), x.cos() / x, max_relative = 1e-15);
        assert_relative_eq!(raw_j(0, 1.3), 1.3f64.sin() / 1.3, max_relative = 1e-15);
        // j_{3/2} normalized: 3 (sin x - x cos x) / x^3
        assert_relative_eq!(
            sph_bessel_j(1, x),
            3.0 * (x.sin() - x * x.cos()) / x.powi(3),
            max_relative = 1e-14
        );
    }

    #[test]
    fn closed_forms_small_cases() {
        assert_relative_eq!(dp_sinc(0, 1.0).unwrap(), 1f64.sin(), max_relative = 1e-15);
        let want = (2.0 * 2f64.cos() - 2f64.sin()) / 8.0;
        assert_relative_eq!(dp_sinc(1, 2.0).unwrap(), want, max_relative = 1e-15);
        assert_relative_eq!(dp_inv_poly(0, 1, 0.5).unwrap(), 4.0 / 3.0, max_relative = 1e-15);
        assert!(dp_inv_poly(1, 1, -1.0).is_err());
        assert!(dp_sinc(2, 0.0).is_err());
    }

    #[test]
    fn d_table_rows() {
        let t = DCoeffTable::new(4);
        assert_eq!(t.get(1, 1), rat(1));
        assert_eq!(t.get(2, 1), rat(-1));
        assert_eq!(t.get(2, 2), rat(1));
        // D t^2 = 2 at t = 3; D^2 t^4 = 8 at t = 2
        let v = Jet::<f64>::variable(3.0, 1);
        assert_relative_eq!(d_operator(&(&v * &v), 1).unwrap(), 2.0);
        let v = Jet::<f64>::variable(2.0, 2);
        assert_relative_eq!(d_operator(&v.powi(4), 2).unwrap(), 8.0, max_relative = 1e-15);
        assert!(d_operator(&v, 3).is_err());
    }

    #[test]
    fn d_operator_matches_closed_form_at_p3() {
        let v = Jet::<Dd>::variable(1.7, 3);
        let f = &v.sin() / &v;
        let got = d_operator(&f, 3).unwrap().to_f64();
        assert_relative_eq!(got, dp_sinc(3, 1.7).unwrap(), max_relative = 1e-11);
    }

    #[test]
    fn gegenbauer_basics() {
        assert_eq!(gegenbauer(0, 0.7, 0.3), 1.0);
        assert_relative_eq!(gegenbauer(1, 0.7, 0.3), 2.0 * 0.7 * 0.3);
        assert_relative_eq!(gegenbauer(2, 0.5, 1.0), 1.0);
        // C_m^alpha(1) = binom(m + 2 alpha - 1, m); alpha = 3/2, m = 4 -> binom(6,4) = 15
        assert_relative_eq!(gegenbauer(4, 1.5, 1.0), 15.0, max_relative = 1e-14);
    }

    #[test]
    fn first_zeros() {
        assert_relative_eq!(bessel_zero(0, 1).unwrap(), PI, epsilon = 1e-12);
        assert_relative_eq!(bessel_zero(0, 7).unwrap(), 7.0 * PI, epsilon = 1e-12);
        let z = bessel_zero(1, 1).unwrap();
        assert!((z.tan() - z).abs() < 1e-9);
        assert_relative_eq!(z, 4.493409457909064, epsilon = 1e-12);
    }
}
