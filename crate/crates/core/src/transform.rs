//! Forward spherical mean transform of radial and single-harmonic profiles
//! in odd dimension `n`, centers on the unit sphere, radii `t` in `(0, 2)`.
//!
//! With `k = (n-3)/2` and `Q(t,u) = 2(u^2+1)t^2 - t^4 - (1-u^2)^2`,
//! `h(t) = t^(n-2) g(t) = omega_(n-1) / (4^k omega_n) * int_{|1-t|}^1 u f(u) Q^k du`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{domain, invalid, Result, SmtError};
use crate::exactmath::{binom_u, factorial, BiPoly, NumPoly};
use crate::jet::Jet;
use crate::quadrature::QuadratureRule;
use crate::specfun::gegenbauer;

/// `g = h / t^(n-2)` is refused below this radius.
pub const T_FLOOR: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dimension {
    n: usize,
    k: usize,
}

impl Dimension {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 || n.is_multiple_of(2) {
            return invalid(format!("dimension must be odd and >= 3, got {n}"));
        }
        Ok(Dimension { n, k: (n - 3) / 2 })
    }

    pub fn n(self) -> usize {
        self.n
    }

    pub fn k(self) -> usize {
        self.k
    }

    /// Gegenbauer order `(n-2)/2`.
    pub fn alpha(self) -> f64 {
        (self.n as f64 - 2.0) / 2.0
    }
}

/// Surface area of the unit sphere in `R^n`, `2 pi^(n/2) / Gamma(n/2)`.
pub fn omega(n: usize) -> f64 {
    assert!(n >= 1, "omega needs n >= 1");
    let (mut w, mut m) = if n % 2 == 1 { (2.0, 1) } else { (2.0 * PI, 2) };
    while m < n {
        w *= 2.0 * PI / m as f64;
        m += 2;
    }
    w
}

pub fn q_kernel(t: f64, u: f64) -> f64 {
    let t2 = t * t;
    let u2 = u * u;
    2.0 * (u2 + 1.0) * t2 - t2 * t2 - (1.0 - u2) * (1.0 - u2)
}

/// `omega_(n-1) / (4^k omega_n)`.
pub fn radial_constant(dim: Dimension) -> f64 {
    omega(dim.n - 1) / (4f64.powi(dim.k as i32) * omega(dim.n))
}

/// A radial function on `[0, 1)` with jets on demand.
pub trait RadialProfile: Send + Sync {
    /// `[r_lo, r_hi]`, outside of which the profile is identically zero.
    fn support(&self) -> (f64, f64);
    fn value(&self, r: f64) -> f64;
    fn jet(&self, r: f64, order: usize) -> Jet<f64>;
}

impl<P: RadialProfile + ?Sized> RadialProfile for Arc<P> {
    fn support(&self) -> (f64, f64) {
        (**self).support()
    }
    fn value(&self, r: f64) -> f64 {
        (**self).value(r)
    }
    fn jet(&self, r: f64, order: usize) -> Jet<f64> {
        (**self).jet(r, order)
    }
}

impl<P: RadialProfile + ?Sized> RadialProfile for &P {
    fn support(&self) -> (f64, f64) {
        (**self).support()
    }
    fn value(&self, r: f64) -> f64 {
        (**self).value(r)
    }
    fn jet(&self, r: f64, order: usize) -> Jet<f64> {
        (**self).jet(r, order)
    }
}

/// `a * exp(-1 / (1 - ((r-c)/w)^2))` on `(c-w, c+w)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bump {
    pub center: f64,
    pub width: f64,
    pub amplitude: f64,
}

impl Bump {
    /// A radial bump; its support must sit inside `[0, 1)`.
    pub fn new(center: f64, width: f64) -> Result<Self> {
        let b = Bump { center, width, amplitude: 1.0 };
        if !(width > 0.0) || center - width < 0.0 || center + width >= 1.0 {
            return invalid(format!(
                "bump support ({}, {}) must lie in [0, 1)",
                center - width,
                center + width
            ));
        }
        Ok(b)
    }

    /// A bump anywhere on the line, for data-side test functions.
    pub fn unchecked(center: f64, width: f64) -> Self {
        Bump { center, width, amplitude: 1.0 }
    }

    pub fn scaled(self, amplitude: f64) -> Self {
        Bump { amplitude, ..self }
    }
}

impl RadialProfile for Bump {
    fn support(&self) -> (f64, f64) {
        (self.center - self.width, self.center + self.width)
    }

    fn value(&self, r: f64) -> f64 {
        let s = (r - self.center) / self.width;
        if s.abs() >= 1.0 {
            return 0.0;
        }
        self.amplitude * (-1.0 / (1.0 - s * s)).exp()
    }

    fn jet(&self, r: f64, order: usize) -> Jet<f64> {
        let s0 = (r - self.center) / self.width;
        if s0.abs() >= 1.0 {
            return Jet::zero(r, order);
        }
        let s = Jet::<f64>::variable(r, order).add_scalar(-self.center).scale(1.0 / self.width);
        let q = (&s * &s).scale(-1.0).add_scalar(1.0);
        q.recip().scale(-1.0).exp().scale(self.amplitude)
    }
}

/// `r^power * inner(r)`.
#[derive(Clone, Debug)]
pub struct PowerWeighted<P> {
    pub power: u32,
    pub inner: P,
}

impl<P: RadialProfile> RadialProfile for PowerWeighted<P> {
    fn support(&self) -> (f64, f64) {
        self.inner.support()
    }
    fn value(&self, r: f64) -> f64 {
        r.powi(self.power as i32) * self.inner.value(r)
    }
    fn jet(&self, r: f64, order: usize) -> Jet<f64> {
        &Jet::<f64>::variable(r, order).powi(self.power as i32) * &self.inner.jet(r, order)
    }
}

/// `f = F^(m)`.
#[derive(Clone, Debug)]
pub struct Derivative<P> {
    pub m: usize,
    pub inner: P,
}

impl<P: RadialProfile> RadialProfile for Derivative<P> {
    fn support(&self) -> (f64, f64) {
        self.inner.support()
    }
    fn value(&self, r: f64) -> f64 {
        self.inner.jet(r, self.m).deriv(self.m)
    }
    fn jet(&self, r: f64, order: usize) -> Jet<f64> {
        self.inner.jet(r, self.m + order).shift_derivative(self.m, order)
    }
}

/// Polynomial on `[0, r_hi]` with `r_hi <= 1`. Not smooth at `r_hi`; only for
/// quadrature checks against closed forms.
#[derive(Clone, Debug)]
pub struct PolynomialTestProfile {
    pub coeffs: Vec<f64>,
    pub r_hi: f64,
}

impl PolynomialTestProfile {
    pub fn unit(coeffs: Vec<f64>) -> Self {
        PolynomialTestProfile { coeffs, r_hi: 1.0 }
    }
}

impl RadialProfile for PolynomialTestProfile {
    fn support(&self) -> (f64, f64) {
        (0.0, self.r_hi)
    }
    fn value(&self, r: f64) -> f64 {
        if !(0.0..=self.r_hi).contains(&r) {
            return 0.0;
        }
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c)
    }
    fn jet(&self, r: f64, order: usize) -> Jet<f64> {
        if !(0.0..=self.r_hi).contains(&r) {
            return Jet::zero(r, order);
        }
        Jet::<f64>::variable(r, order).polynomial(&self.coeffs)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum KernelOp {
    D,
    Ordinary,
}

/// `op^p (Q^power)` as a floating polynomial, memoized.
fn kernel_poly(power: usize, p: usize, op: KernelOp) -> Arc<NumPoly<f64>> {
    type Cache = Mutex<HashMap<(usize, usize, KernelOp), Arc<NumPoly<f64>>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("kernel cache").get(&(power, p, op)) {
        return v.clone();
    }
    let mut poly = BiPoly::q_kernel().pow(power as u32);
    for _ in 0..p {
        poly = match op {
            KernelOp::D => poly.formal_d().expect("Q^k is even in t"),
            KernelOp::Ordinary => poly.d_dt(),
        };
    }
    let num = Arc::new(poly.to_numeric::<f64>());
    cache.lock().expect("kernel cache").insert((power, p, op), num.clone());
    num
}

fn check_t(t: f64) -> Result<()> {
    if !(t > 0.0 && t < 2.0) {
        return domain(format!("t = {t} is outside (0, 2)"));
    }
    Ok(())
}

fn limits(f: &dyn RadialProfile, t: f64) -> (f64, f64) {
    let (r_lo, r_hi) = f.support();
    ((1.0 - t).abs().max(r_lo), r_hi.min(1.0))
}

fn radial_integral<F: Fn(f64, f64) -> f64>(
    f: &dyn RadialProfile,
    t: f64,
    quad: &QuadratureRule,
    kernel: F,
) -> f64 {
    let (lo, hi) = limits(f, t);
    if lo >= hi {
        return 0.0;
    }
    quad.integrate(|u| u * f.value(u) * kernel(t, u), lo, hi)
}

/// `h(t) = t^(n-2) g(t)`.
pub fn forward_h(f: &dyn RadialProfile, dim: Dimension, t: f64, quad: &QuadratureRule) -> Result<f64> {
    check_t(t)?;
    let k = dim.k as i32;
    Ok(radial_constant(dim) * radial_integral(f, t, quad, |t, u| q_kernel(t, u).powi(k)))
}

/// `g(t)`, the spherical mean itself.
pub fn forward_radial(f: &dyn RadialProfile, dim: Dimension, t: f64, quad: &QuadratureRule) -> Result<f64> {
    if t < T_FLOOR {
        return domain(format!("g is not evaluated below t_floor = {T_FLOOR}"));
    }
    Ok(forward_h(f, dim, t, quad)? / t.powi(dim.n as i32 - 2))
}

/// `g(t) = omega_(n-1)/omega_n * int_{-1}^{1} f(sqrt(1+t^2+2st)) (1-s^2)^k ds`,
/// integrated only over the `s` where `f` can be nonzero.
pub fn funk_hecke_forward(
    f: &dyn RadialProfile,
    dim: Dimension,
    t: f64,
    quad: &QuadratureRule,
) -> Result<f64> {
    check_t(t)?;
    if t < T_FLOOR {
        return domain(format!("g is not evaluated below t_floor = {T_FLOOR}"));
    }
    let (r_lo, r_hi) = f.support();
    let s_of = |r: f64| (r * r - 1.0 - t * t) / (2.0 * t);
    let a = s_of(r_lo).max(-1.0);
    let b = s_of(r_hi).min(1.0);
    if a >= b {
        return Ok(0.0);
    }
    let k = dim.k as i32;
    let v = quad.integrate(
        |s| {
            let r = (1.0 + t * t + 2.0 * s * t).max(0.0).sqrt();
            f.value(r) * (1.0 - s * s).powi(k)
        },
        a,
        b,
    );
    Ok(omega(dim.n - 1) / omega(dim.n) * v)
}

/// `D^p h(t)` by differentiating the kernel exactly, `p <= k`.
pub fn forward_h_dp(
    f: &dyn RadialProfile,
    dim: Dimension,
    t: f64,
    p: usize,
    quad: &QuadratureRule,
) -> Result<f64> {
    if p > dim.k {
        return Err(SmtError::InvalidArgument(format!(
            "D^{p} h needs p <= k = {}; boundary terms would appear",
            dim.k
        )));
    }
    check_t(t)?;
    let kp = kernel_poly(dim.k, p, KernelOp::D);
    Ok(radial_constant(dim) * radial_integral(f, t, quad, |t, u| kp.eval(t, u)))
}

/// Ordinary `h'(t)` by the Leibniz rule, moving-endpoint term included.
pub fn forward_h_derivative(
    f: &dyn RadialProfile,
    dim: Dimension,
    t: f64,
    quad: &QuadratureRule,
) -> Result<f64> {
    check_t(t)?;
    let kp = kernel_poly(dim.k, 1, KernelOp::Ordinary);
    let interior = radial_integral(f, t, quad, |t, u| kp.eval(t, u));
    let (r_lo, r_hi) = f.support();
    let e = (1.0 - t).abs();
    let mut boundary = 0.0;
    if e > r_lo && e < r_hi.min(1.0) {
        // d/dt |1-t| = -sign(1-t)
        let sgn = if t < 1.0 { 1.0 } else { -1.0 };
        boundary = sgn * e * f.value(e) * q_kernel(t, e).powi(dim.k as i32);
    }
    Ok(radial_constant(dim) * (interior + boundary))
}

/// `C_m^alpha(1) = binom(m + 2 alpha - 1, m)` for `alpha = (n-2)/2`.
fn gegenbauer_at_one(n: usize, m: usize) -> BigRational {
    BigRational::from_integer(binom_u((m + n - 3) as u64, m as u64))
}

/// `g_(m,l)(t)` for `f(x) = f_(m,l)(|x|) Y_(m,l)(x/|x|)`.
pub fn forward_harmonic(
    f: &dyn RadialProfile,
    dim: Dimension,
    m: usize,
    t: f64,
    quad: &QuadratureRule,
) -> Result<f64> {
    check_t(t)?;
    if t < T_FLOOR {
        return domain(format!("g is not evaluated below t_floor = {T_FLOOR}"));
    }
    let (lo, hi) = limits(f, t);
    if lo >= hi {
        return Ok(0.0);
    }
    let alpha = dim.alpha();
    let k = dim.k as i32;
    let n = dim.n as i32;
    let worst = std::cell::Cell::new(0.0f64);
    let v = quad.integrate(
        |u| {
            let x = (1.0 + u * u - t * t) / (2.0 * u);
            worst.set(worst.get().max(x.abs()));
            u.powi(n - 2) * f.value(u) * gegenbauer(m, alpha, x) * (1.0 - x * x).powi(k)
        },
        lo,
        hi,
    );
    // Q >= 0 on the integration set, so the Gegenbauer argument stays in [-1, 1]
    if worst.get() > 1.0 + 1e-12 {
        return domain(format!("Gegenbauer argument {} left [-1, 1]", worst.get()));
    }
    let c = omega(dim.n - 1) / (omega(dim.n) * gegenbauer_at_one(dim.n, m).to_f64().unwrap_or(1.0));
    Ok(c * v / t.powi(n - 2))
}

fn phi_limits(f: &dyn RadialProfile, t: f64) -> Result<(f64, f64)> {
    check_t(t)?;
    Ok(limits(f, t))
}

/// `phi_(m,l)(t) = int_{|1-t|}^1 u^(1-m) f(u) Q^(m+k) du`.
pub fn phi_harmonic(f: &dyn RadialProfile, dim: Dimension, m: usize, t: f64, quad: &QuadratureRule) -> Result<f64> {
    phi_harmonic_dp(f, dim, m, t, 0, quad)
}

/// `D^p phi_(m,l)(t)`, `p <= m + k`.
pub fn phi_harmonic_dp(
    f: &dyn RadialProfile,
    dim: Dimension,
    m: usize,
    t: f64,
    p: usize,
    quad: &QuadratureRule,
) -> Result<f64> {
    let power = m + dim.k;
    if p > power {
        return invalid(format!("D^{p} phi needs p <= m + k = {power}"));
    }
    let (lo, hi) = phi_limits(f, t)?;
    if lo >= hi {
        return Ok(0.0);
    }
    let kp = kernel_poly(power, p, KernelOp::D);
    let e = 1 - m as i32;
    Ok(quad.integrate(|u| u.powi(e) * f.value(u) * kp.eval(t, u), lo, hi))
}

/// Jet of `phi_(m,l)` at `t` with ordinary derivatives up to `order <= m + k`,
/// from `d^j/dt^j Q^(m+k)` (the endpoint terms vanish up to that order).
pub fn phi_harmonic_jet(
    f: &dyn RadialProfile,
    dim: Dimension,
    m: usize,
    t: f64,
    order: usize,
    quad: &QuadratureRule,
) -> Result<Jet<f64>> {
    let power = m + dim.k;
    if order > power {
        return invalid(format!("phi jet order {order} exceeds m + k = {power}"));
    }
    let (lo, hi) = phi_limits(f, t)?;
    let e = 1 - m as i32;
    let derivs: Vec<f64> = (0..=order)
        .map(|j| {
            if lo >= hi {
                return 0.0;
            }
            let kp = kernel_poly(power, j, KernelOp::Ordinary);
            quad.integrate(|u| u.powi(e) * f.value(u) * kp.eval(t, u), lo, hi)
        })
        .collect();
    Ok(Jet::from_derivs(t, &derivs))
}

/// The scalar in `h_(m,l) = const_kmn(n, m) * D^m phi_(m,l)`:
/// `K (-1)^m omega_(n-1) / (4^(m+k) omega_n C_m^alpha(1))` with the Rodrigues
/// constant `K = (-1)^m Gamma(alpha+1/2) Gamma(m+2alpha) / (2^m m! Gamma(2alpha) Gamma(m+alpha+1/2))`.
pub fn const_kmn(n: usize, m: usize) -> Result<f64> {
    let dim = Dimension::new(n)?;
    let k = dim.k as u64;
    let m64 = m as u64;
    let n64 = n as u64;
    // for odd n every Gamma argument is an integer: alpha + 1/2 = k + 1, 2 alpha = n - 2
    let num = factorial(k) * factorial(m64 + n64 - 3);
    let den = (num_bigint::BigInt::from(1) << m) * factorial(m64) * factorial(n64 - 3) * factorial(m64 + k);
    let k_times_sign = BigRational::new(num, den);
    let c1 = gegenbauer_at_one(n, m);
    let ratio = (k_times_sign / c1).to_f64().unwrap_or(f64::NAN);
    let c = ratio * omega(n - 1) / (4f64.powi((m + dim.k) as i32) * omega(n));
    debug_assert!(c > 0.0);
    Ok(c)
}

/// Transform data `h` with access to `D^p h`.
pub trait HData: Sync {
    fn h(&self, t: f64) -> Result<f64> {
        self.dp_h(t, 0)
    }
    fn dp_h(&self, t: f64, p: usize) -> Result<f64>;
    /// Highest trusted `D`-order.
    fn max_order(&self) -> usize;
    /// Closed interval outside of which `h` vanishes identically.
    fn support(&self) -> (f64, f64);
}

/// Forward-generated data for a radial profile, with analytic `D`-derivatives.
#[derive(Clone)]
pub struct SmtProfile<P> {
    pub dim: Dimension,
    pub profile: P,
    pub quad: QuadratureRule,
}

impl<P: RadialProfile> SmtProfile<P> {
    pub fn new(dim: Dimension, profile: P, quad: QuadratureRule) -> Self {
        SmtProfile { dim, profile, quad }
    }

    pub fn g(&self, t: f64) -> Result<f64> {
        forward_radial(&self.profile, self.dim, t, &self.quad)
    }

    pub fn k_eff(&self) -> usize {
        self.dim.k
    }
}

impl<P: RadialProfile> HData for SmtProfile<P> {
    fn dp_h(&self, t: f64, p: usize) -> Result<f64> {
        forward_h_dp(&self.profile, self.dim, t, p, &self.quad)
    }
    fn max_order(&self) -> usize {
        self.dim.k
    }
    fn support(&self) -> (f64, f64) {
        let r_hi = self.profile.support().1;
        (1.0 - r_hi, 1.0 + r_hi)
    }
}
