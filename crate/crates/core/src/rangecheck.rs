//! The range operator `L_k = sum_p C(k,p) (1-t)^p D^p`, the reflection
//! residual `[L_k h](1-t) - [L_k h](1+t)`, and the `D`-antiderivative chain.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Result, SmtError};
use crate::exactmath::coeff_c;
use crate::jet::Jet;
use crate::quadrature::QuadratureRule;
use crate::specfun::d_operator;
use crate::transform::{
    forward_harmonic, phi_harmonic_dp, Dimension, HData, RadialProfile,
};

/// Default symmetry grid: 101 points on `[0.01, 1]`.
pub fn default_grid() -> Vec<f64> {
    uniform_grid(0.01, 1.0, 101)
}

pub fn uniform_grid(a: f64, b: f64, count: usize) -> Vec<f64> {
    if count < 2 {
        return vec![a];
    }
    (0..count).map(|i| a + (b - a) * i as f64 / (count - 1) as f64).collect()
}

fn coeffs(k: usize) -> Vec<f64> {
    (0..=k)
        .map(|p| coeff_c(k, p).expect("p <= k").to_f64().unwrap_or(f64::NAN))
        .collect()
}

/// `[L_k h](tau)` given `h_dp(tau, p) = D^p h(tau)`.
pub fn apply_lk<F>(h_dp: F, k: usize, tau: f64) -> Result<f64>
where
    F: Fn(f64, usize) -> Result<f64>,
{
    let c = coeffs(k);
    let mut acc = 0.0;
    let mut w = 1.0;
    for (p, cp) in c.iter().enumerate() {
        acc += cp * w * h_dp(tau, p)?;
        w *= 1.0 - tau;
    }
    Ok(acc)
}

/// `L_k h` at `tau`, zero outside the data's support.
pub fn lk_of(data: &dyn HData, k: usize, tau: f64) -> Result<f64> {
    if k > data.max_order() {
        return Err(SmtError::InsufficientOrder { need: k, have: data.max_order() });
    }
    let (a, b) = data.support();
    if tau <= a || tau >= b || tau <= 0.0 || tau >= 2.0 {
        return Ok(0.0);
    }
    apply_lk(|t, p| data.dp_h(t, p), k, tau)
}

#[derive(Clone, Debug, Serialize)]
pub struct RangeReport {
    pub k_used: usize,
    pub grid: Vec<f64>,
    pub residual: Vec<f64>,
    pub sup_residual: f64,
    pub scale: f64,
    pub normalized: f64,
}

impl RangeReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.normalized <= tol
    }
}

/// `sup_t |[L_k h](1-t) - [L_k h](1+t)|` over `grid`, with `t` in `[0, 1]`.
pub fn range_residual(data: &dyn HData, k: usize, grid: &[f64]) -> Result<RangeReport> {
    if let Some(t) = grid.iter().find(|t| !(0.0..=1.0).contains(*t)) {
        return invalid(format!("grid point {t} is outside [0, 1]"));
    }
    let pairs: Vec<(f64, f64)> = grid
        .par_iter()
        .map(|&t| Ok((lk_of(data, k, 1.0 - t)?, lk_of(data, k, 1.0 + t)?)))
        .collect::<Result<_>>()?;
    let residual: Vec<f64> = pairs.iter().map(|(l, r)| (l - r).abs()).collect();
    let sup_residual = residual.iter().cloned().fold(0.0, f64::max);
    let scale = pairs.iter().map(|(l, r)| l.abs().max(r.abs())).fold(0.0, f64::max);
    let normalized = if scale > 0.0 { sup_residual / scale } else { 0.0 };
    Ok(RangeReport { k_used: k, grid: grid.to_vec(), residual, sup_residual, scale, normalized })
}

/// Data given by a jet-valued closure `t -> h` with the `D`-derivatives taken
/// from the jet.
pub struct JetData<F> {
    pub jet: F,
    pub support: (f64, f64),
    pub max_order: usize,
}

impl<F: Fn(f64, usize) -> Jet<f64> + Sync> HData for JetData<F> {
    fn dp_h(&self, t: f64, p: usize) -> Result<f64> {
        d_operator(&(self.jet)(t, p), p)
    }
    fn max_order(&self) -> usize {
        self.max_order
    }
    fn support(&self) -> (f64, f64) {
        self.support
    }
}

/// Scales every `D^p h` by `1 + delta` for `t > 1`.
pub struct PerturbedData<H> {
    pub inner: H,
    pub delta: f64,
}

impl<H: HData> HData for PerturbedData<H> {
    fn dp_h(&self, t: f64, p: usize) -> Result<f64> {
        let v = self.inner.dp_h(t, p)?;
        Ok(if t > 1.0 { (1.0 + self.delta) * v } else { v })
    }
    fn max_order(&self) -> usize {
        self.inner.max_order()
    }
    fn support(&self) -> (f64, f64) {
        self.inner.support()
    }
}

/// Chebyshev series fit of externally sampled `h` on `[a, b]`, differentiated
/// spectrally. Only trustworthy above roughly `eps * degree^2` per derivative.
#[derive(Clone, Debug)]
pub struct SampledH {
    a: f64,
    b: f64,
    // derivative series: dcoef[j] is the Chebyshev series of h^(j)
    dcoef: Arc<Vec<Vec<f64>>>,
}

pub const DEFAULT_CHEB_DEGREE: usize = 128;

fn cheb_row(x: f64, n: usize) -> Vec<f64> {
    let mut row = vec![0.0; n + 1];
    row[0] = 1.0;
    if n > 0 {
        row[1] = x;
    }
    for j in 2..=n {
        row[j] = 2.0 * x * row[j - 1] - row[j - 2];
    }
    row
}

fn clenshaw(c: &[f64], x: f64) -> f64 {
    let (mut b1, mut b2) = (0.0, 0.0);
    for &cj in c.iter().skip(1).rev() {
        let b0 = 2.0 * x * b1 - b2 + cj;
        b2 = b1;
        b1 = b0;
    }
    x * b1 - b2 + c.first().copied().unwrap_or(0.0)
}

fn cheb_derivative(c: &[f64]) -> Vec<f64> {
    let n = c.len();
    if n <= 1 {
        return vec![0.0];
    }
    let mut d = vec![0.0; n];
    for j in (1..n).rev() {
        d[j - 1] = 2.0 * j as f64 * c[j] + if j + 1 < n { d[j + 1] } else { 0.0 };
    }
    d[0] *= 0.5;
    d.truncate(n - 1);
    d
}

impl SampledH {
    /// Chebyshev-Lobatto points of `[a, b]`.
    pub fn nodes(a: f64, b: f64, degree: usize) -> Vec<f64> {
        (0..=degree)
            .map(|i| {
                let x = -(std::f64::consts::PI * i as f64 / degree as f64).cos();
                0.5 * (a + b) + 0.5 * (b - a) * x
            })
            .collect()
    }

    /// Least-squares Chebyshev fit of `(t_i, h_i)`; an interpolant when the
    /// samples are exactly the `degree + 1` Lobatto points.
    pub fn from_samples(t: &[f64], h: &[f64], degree: usize, max_order: usize) -> Result<Self> {
        if t.len() != h.len() || t.len() < 2 {
            return invalid("need matching t and h columns with at least two rows");
        }
        let a = t.iter().cloned().fold(f64::INFINITY, f64::min);
        let b = t.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if !(a > 0.0 && b < 2.0 && a < b) {
            return invalid(format!("samples must lie in (0, 2), got [{a}, {b}]"));
        }
        let degree = degree.min(t.len() - 1);
        let mut m = DMatrix::zeros(t.len(), degree + 1);
        for (i, &ti) in t.iter().enumerate() {
            let x = (2.0 * ti - a - b) / (b - a);
            for (j, v) in cheb_row(x, degree).into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        let rhs = DVector::from_column_slice(h);
        let svd = m.svd(true, true);
        let c = svd
            .solve(&rhs, 1e-14)
            .map_err(|e| SmtError::IllPosed(e.to_string()))?;
        Ok(Self::from_coefficients(a, b, c.as_slice().to_vec(), max_order))
    }

    /// Sample `h` at the Lobatto points and interpolate.
    pub fn from_fn<F: Fn(f64) -> f64 + Sync>(h: F, a: f64, b: f64, degree: usize, max_order: usize) -> Result<Self> {
        let t = Self::nodes(a, b, degree);
        let v: Vec<f64> = t.par_iter().map(|&x| h(x)).collect();
        Self::from_samples(&t, &v, degree, max_order)
    }

    fn from_coefficients(a: f64, b: f64, c: Vec<f64>, max_order: usize) -> Self {
        let s = 2.0 / (b - a);
        let mut dcoef = vec![c];
        for _ in 0..max_order {
            let d: Vec<f64> = cheb_derivative(dcoef.last().expect("nonempty")).iter().map(|v| v * s).collect();
            dcoef.push(d);
        }
        SampledH { a, b, dcoef: Arc::new(dcoef) }
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn degree(&self) -> usize {
        self.dcoef[0].len() - 1
    }

    /// `h^(j)(t)` for `j <= order`.
    pub fn jet(&self, t: f64, order: usize) -> Result<Jet<f64>> {
        if order >= self.dcoef.len() {
            return Err(SmtError::InsufficientOrder { need: order, have: self.dcoef.len() - 1 });
        }
        let x = (2.0 * t - self.a - self.b) / (self.b - self.a);
        let d: Vec<f64> = self.dcoef[..=order].iter().map(|c| clenshaw(c, x)).collect();
        Ok(Jet::from_derivs(t, &d))
    }
}

impl HData for SampledH {
    fn dp_h(&self, t: f64, p: usize) -> Result<f64> {
        if t < self.a || t > self.b {
            return Ok(0.0);
        }
        d_operator(&self.jet(t, p)?, p)
    }
    fn max_order(&self) -> usize {
        self.dcoef.len() - 1
    }
    fn support(&self) -> (f64, f64) {
        (self.a, self.b)
    }
}

/// The chain `phi = A^m psi`, `A psi(t) = int_0^t s psi(s) ds`, so that
/// `D^m phi = psi` and `phi` vanishes near 0.
pub struct AntiD<'a> {
    psi: &'a (dyn Fn(f64) -> f64 + Sync),
    support: (f64, f64),
    m: usize,
    quad: QuadratureRule,
}

impl<'a> AntiD<'a> {
    pub fn new(psi: &'a (dyn Fn(f64) -> f64 + Sync), support: (f64, f64), m: usize, quad: QuadratureRule) -> Self {
        AntiD { psi, support, m, quad }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `A^i psi(t) = int_0^t s psi(s) ((t^2 - s^2)/2)^(i-1) / (i-1)! ds`.
    pub fn iterate(&self, i: usize, t: f64) -> f64 {
        if i == 0 {
            return if t < self.support.0 || t > self.support.1 { 0.0 } else { (self.psi)(t) };
        }
        let (a, b) = self.support;
        let hi = t.min(b);
        if hi <= a {
            return 0.0;
        }
        let fact: f64 = (1..i).map(|j| j as f64).product();
        self.quad.integrate(
            |s| s * (self.psi)(s) * (0.5 * (t * t - s * s)).powi(i as i32 - 1) / fact,
            a,
            hi,
        )
    }

    pub fn phi(&self, t: f64) -> f64 {
        self.iterate(self.m, t)
    }

    /// `D^q phi = A^(m-q) psi` for `q <= m`.
    pub fn phi_dp(&self, t: f64, q: usize) -> Result<f64> {
        if q > self.m {
            return invalid(format!("D^{q} of A^{} psi needs derivatives of psi", self.m));
        }
        Ok(self.iterate(self.m - q, t))
    }

    /// `A^i psi(2)` for `i = 1..=m`; all vanish iff `phi` has compact support.
    pub fn defects(&self) -> Vec<f64> {
        (1..=self.m).map(|i| self.iterate(i, 2.0)).collect()
    }

    /// `int |s psi(s)| ((4 - s^2)/2)^(i-1) / (i-1)! ds`, the natural size of each defect.
    pub fn defect_scales(&self) -> Vec<f64> {
        let (a, b) = self.support;
        (1..=self.m)
            .map(|i| {
                let fact: f64 = (1..i).map(|j| j as f64).product();
                self.quad.integrate(
                    |s| (s * (self.psi)(s)).abs() * (0.5 * (4.0 - s * s)).powi(i as i32 - 1) / fact,
                    a,
                    b,
                )
            })
            .collect()
    }
}

/// `phi` for `L_(m+k)`: orders `<= m` from the antiderivative chain,
/// higher orders from `D^j psi` of the underlying data.
struct ChainData<'a, H> {
    chain: &'a AntiD<'a>,
    data: &'a H,
}

impl<H: HData> HData for ChainData<'_, H> {
    fn dp_h(&self, t: f64, p: usize) -> Result<f64> {
        let m = self.chain.m();
        if p <= m {
            self.chain.phi_dp(t, p)
        } else {
            self.data.dp_h(t, p - m)
        }
    }
    fn max_order(&self) -> usize {
        self.chain.m() + self.data.max_order()
    }
    fn support(&self) -> (f64, f64) {
        // phi may not vanish past the data when moments are off
        (self.data.support().0, 2.0)
    }
}

/// `phi_(m,l)` of a radial-times-harmonic profile with analytic derivatives.
pub struct PhiData<'a> {
    pub f: &'a dyn RadialProfile,
    pub dim: Dimension,
    pub m: usize,
    pub quad: QuadratureRule,
}

impl HData for PhiData<'_> {
    fn dp_h(&self, t: f64, p: usize) -> Result<f64> {
        phi_harmonic_dp(self.f, self.dim, self.m, t, p, &self.quad)
    }
    fn max_order(&self) -> usize {
        self.m + self.dim.k()
    }
    fn support(&self) -> (f64, f64) {
        let r = self.f.support().1;
        (1.0 - r, 1.0 + r)
    }
}

/// `h_(m,l)(t) = t^(n-2) g_(m,l)(t)` with value access only.
pub struct HarmonicH<'a> {
    pub f: &'a dyn RadialProfile,
    pub dim: Dimension,
    pub m: usize,
    pub quad: QuadratureRule,
}

impl HData for HarmonicH<'_> {
    fn dp_h(&self, t: f64, p: usize) -> Result<f64> {
        if p > 0 {
            return Err(SmtError::InsufficientOrder { need: p, have: 0 });
        }
        if t <= 0.0 || t >= 2.0 {
            return Ok(0.0);
        }
        let g = forward_harmonic(self.f, self.dim, self.m, t, &self.quad)?;
        Ok(t.powi(self.dim.n() as i32 - 2) * g)
    }
    fn max_order(&self) -> usize {
        0
    }
    fn support(&self) -> (f64, f64) {
        let r = self.f.support().1;
        (1.0 - r, 1.0 + r)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneralReport {
    pub m: usize,
    pub range: RangeReport,
    pub defects: Vec<f64>,
    pub defect_scales: Vec<f64>,
}

impl GeneralReport {
    /// Every defect within `defect_tol` of its scale.
    pub fn moments_vanish(&self, defect_tol: f64) -> bool {
        self.defects.iter().zip(&self.defect_scales).all(|(d, s)| d.abs() <= defect_tol * s)
    }

    pub fn passes(&self, tol: f64, defect_tol: f64) -> bool {
        self.range.passes(tol) && self.moments_vanish(defect_tol)
    }
}

/// Where `h_(m,l)` comes from.
pub enum HarmonicSource<'a> {
    /// A profile: `phi_(m,l)` is known in closed form.
    Analytic { f: &'a dyn RadialProfile },
    /// Anything else: `phi` is rebuilt with [`AntiD`]; `data` must supply `D^j h` for `j <= k`.
    External { data: &'a dyn HData },
}

/// Symmetry of `L_(m+k) phi_(m,l)` and the compact-support moments of
/// `h_(m,l) = D^m phi_(m,l)`.
pub fn general_range_check(
    source: HarmonicSource<'_>,
    dim: Dimension,
    m: usize,
    grid: &[f64],
    quad: &QuadratureRule,
) -> Result<GeneralReport> {
    let order = m + dim.k();
    match source {
        HarmonicSource::Analytic { f } => {
            let phi = PhiData { f, dim, m, quad: quad.clone() };
            let range = range_residual(&phi, order, grid)?;
            let h = HarmonicH { f, dim, m, quad: quad.clone() };
            let psi = |t: f64| h.h(t).unwrap_or(f64::NAN);
            let chain = AntiD::new(&psi, h.support(), m, quad.clone());
            Ok(GeneralReport { m, range, defects: chain.defects(), defect_scales: chain.defect_scales() })
        }
        HarmonicSource::External { data } => {
            if data.max_order() < dim.k() {
                return Err(SmtError::InsufficientOrder { need: dim.k(), have: data.max_order() });
            }
            let psi = |t: f64| data.h(t).unwrap_or(f64::NAN);
            let chain = AntiD::new(&psi, data.support(), m, quad.clone());
            let phi = ChainData { chain: &chain, data: &DynData(data) };
            let range = range_residual(&phi, order, grid)?;
            Ok(GeneralReport { m, range, defects: chain.defects(), defect_scales: chain.defect_scales() })
        }
    }
}

struct DynData<'a>(&'a dyn HData);

impl HData for DynData<'_> {
    fn dp_h(&self, t: f64, p: usize) -> Result<f64> {
        self.0.dp_h(t, p)
    }
    fn max_order(&self) -> usize {
        self.0.max_order()
    }
    fn support(&self) -> (f64, f64) {
        self.0.support()
    }
}
