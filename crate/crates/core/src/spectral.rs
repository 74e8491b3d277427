//! Hankel transforms, the Bessel cross-product identity for range data,
//! the `M_k` identity, and vanishing of the Hankel transform at Bessel zeros.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dd::Dd;
use crate::error::{domain, invalid, Result};
use crate::exactmath::coeff_c;
use crate::jet::Jet;
use crate::quadrature::QuadratureRule;
use crate::scalar::Scalar as _;
use crate::specfun::{bessel_zeros, d_operator, raw_j, raw_j_t, raw_j_taylor, raw_y, raw_y_t, sph_bessel_j};
use crate::transform::HData;

/// Relative floor in residual denominators.
pub const RESIDUAL_FLOOR: f64 = 1e-14;

/// At least 4 panels per oscillation period of `j(lambda t)` on `[a, b]`.
pub fn hankel_panels(lambda: f64, a: f64, b: f64, base: usize) -> usize {
    let osc = (4.0 * lambda * (b - a) / (2.0 * PI)).ceil() as usize;
    base.max(8).max(osc)
}

fn nodes(quad: &QuadratureRule, lambda: f64, a: f64, b: f64) -> Vec<(f64, f64)> {
    if b <= a {
        return Vec::new();
    }
    quad.points(a, b, hankel_panels(lambda, a, b, quad.panels()))
}

/// `F_(k+1/2)(g)(lambda) = int g(t) j_(k+1/2)(lambda t) t^(2k+2) dt`, normalized `j`.
pub fn hankel<G: Fn(f64) -> f64 + Sync>(g: G, support: (f64, f64), k: usize, lambda: f64, quad: &QuadratureRule) -> f64 {
    let e = 2 * k as i32 + 2;
    nodes(quad, lambda, support.0, support.1)
        .par_iter()
        .map(|&(t, w)| w * g(t) * sph_bessel_j(k, lambda * t) * t.powi(e))
        .collect::<Vec<_>>()
        .iter()
        .sum()
}

/// The same transform written through `h = t^(2k+1) g`: `int j(lambda t) t h(t) dt`.
pub fn hankel_h<H: Fn(f64) -> f64 + Sync>(h: H, support: (f64, f64), k: usize, lambda: f64, quad: &QuadratureRule) -> f64 {
    nodes(quad, lambda, support.0, support.1)
        .par_iter()
        .map(|&(t, w)| w * sph_bessel_j(k, lambda * t) * t * h(t))
        .collect::<Vec<_>>()
        .iter()
        .sum()
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct CrossProduct {
    pub lambda: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

/// `w_i t_i h(t_i)` on a node set fine enough for every `lambda <= lambda_max`,
/// so a `lambda` sweep evaluates the data once.
#[derive(Clone, Debug)]
pub struct HankelSamples {
    support: (f64, f64),
    t: Vec<f64>,
    wth: Vec<f64>,
}

impl HankelSamples {
    pub fn new(data: &dyn HData, lambda_max: f64, quad: &QuadratureRule) -> Result<Self> {
        let (a, b) = data.support();
        let (a, b) = (a.max(0.0), b.min(2.0));
        let pts = nodes(quad, lambda_max, a, b);
        let wth: Vec<f64> = pts.par_iter().map(|&(t, w)| Ok(w * t * data.h(t)?)).collect::<Result<_>>()?;
        Ok(HankelSamples { support: (a, b), t: pts.iter().map(|p| p.0).collect(), wth })
    }

    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    /// `int j_(k+1/2)(lambda t) t h(t) dt`, normalized `j`.
    pub fn hankel(&self, k: usize, lambda: f64) -> f64 {
        // summed in order so results do not depend on the thread count
        let terms: Vec<f64> = self.t.par_iter().zip(&self.wth).map(|(&t, &v)| v * sph_bessel_j(k, lambda * t)).collect();
        terms.iter().sum()
    }

    /// `(int D^k(sin)(lambda t) t h) y(lambda)` against `(int D^k(cos)(lambda t) t h) j(lambda)`.
    pub fn cross_product(&self, k: usize, lambda: f64) -> Result<CrossProduct> {
        if !(lambda > 0.0) {
            return invalid(format!("lambda must be positive, got {lambda}"));
        }
        if self.support.0 <= 0.0 && !self.t.is_empty() {
            return domain("data support touches t = 0, where the second-kind integrand has a pole");
        }
        let terms: Vec<(f64, f64)> = self
            .t
            .par_iter()
            .zip(&self.wth)
            .map(|(&t, &v)| Ok((v * raw_j(k, lambda * t), v * raw_y(k, lambda * t)?)))
            .collect::<Result<_>>()?;
        let ij: f64 = terms.iter().map(|v| v.0).sum();
        let iy: f64 = terms.iter().map(|v| v.1).sum();
        let sj: f64 = terms.iter().map(|v| v.0.abs()).sum();
        let sy: f64 = terms.iter().map(|v| v.1.abs()).sum();
        let jl = raw_j(k, lambda);
        let yl = raw_y(k, lambda)?;
        let lhs = ij * yl;
        let rhs = iy * jl;
        let scale = sj * yl.abs() + sy * jl.abs();
        Ok(CrossProduct { lambda, lhs, rhs, residual: rel_residual(lhs, rhs, scale) })
    }
}

/// Single-`lambda` form of [`HankelSamples::cross_product`].
pub fn cross_product_residual(data: &dyn HData, k: usize, lambda: f64, quad: &QuadratureRule) -> Result<CrossProduct> {
    HankelSamples::new(data, lambda, quad)?.cross_product(k, lambda)
}

fn rel_residual(lhs: f64, rhs: f64, scale: f64) -> f64 {
    let den = lhs.abs().max(rhs.abs()).max(RESIDUAL_FLOOR * scale);
    if den == 0.0 {
        0.0
    } else {
        (lhs - rhs).abs() / den
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct MkValue {
    pub k: usize,
    pub lambda: f64,
    pub t: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

/// `sum_p C(k,p) (-1)^p D^p[(1+t)^(p+1) j(lambda(1+t)) / t]` against
/// `(-1)^k [D^k(sin(lambda t)/t) y(lambda) + D^k(cos(lambda t)/t) j(lambda)]`,
/// all in the raw normalization and in double-double.
pub fn mk_residual(k: usize, lambda: f64, t: f64) -> Result<MkValue> {
    if !(lambda > 0.0) {
        return invalid(format!("lambda must be positive, got {lambda}"));
    }
    if t == 0.0 || t == -1.0 {
        return domain(format!("t = {t} is excluded"));
    }
    let lam = Dd::from_f64(lambda);
    let tv = Jet::<Dd>::variable(t, k);
    let one_plus = tv.add_scalar(Dd::ONE);
    let inv_t = tv.recip();
    // j(lambda(1+t)) as a jet in t: the i-th Taylor coefficient picks up lambda^i
    let y0 = lam * (Dd::ONE + Dd::from_f64(t));
    let mut lam_i = Dd::ONE;
    let jc: Vec<Dd> = raw_j_taylor::<Dd>(k, y0, k)
        .into_iter()
        .map(|c| {
            let v = c * lam_i;
            lam_i *= lam;
            v
        })
        .collect();
    let jj = Jet::from_taylor(t, jc);
    let base = &jj * &inv_t;
    let mut lhs = Dd::ZERO;
    let mut scale = Dd::ZERO;
    let mut pw = one_plus.clone();
    for p in 0..=k {
        let c = Dd::from_rational(&coeff_c(k, p)?);
        let term = c * d_operator(&(&pw * &base), p)?;
        let term = if p % 2 == 1 { -term } else { term };
        lhs += term;
        scale += term.abs();
        pw = &pw * &one_plus;
    }
    let lt = lam * Dd::from_f64(t);
    let lk = lam.powi(2 * k as i32 + 1);
    let a = lk * raw_j_t(k, lt) * raw_y_t(k, lam)?;
    let b = lk * raw_y_t(k, lt)? * raw_j_t(k, lam);
    let rhs = if k % 2 == 1 { -(a + b) } else { a + b };
    scale += a.abs() + b.abs();
    let (lhs, rhs) = (lhs.to_f64(), rhs.to_f64());
    Ok(MkValue { k, lambda, t, lhs, rhs, residual: rel_residual(lhs, rhs, scale.to_f64()) })
}

/// Default seed of the `M_k` sweep.
pub const DEFAULT_SEED: u64 = 0x534D5431;

/// `count` residuals at seeded `(lambda, t)`, `lambda` in `[0.5, 20)` and `t` in
/// `(-3, 3)` kept `0.05` away from `0` and `-1`. One stream per `k`.
pub fn mk_sweep(k: usize, count: usize, seed: u64) -> Result<Vec<MkValue>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
    let mut pts = Vec::with_capacity(count);
    while pts.len() < count {
        let l = rng.random_range(0.5..20.0);
        let t: f64 = rng.random_range(-3.0..3.0);
        if t.abs() >= 0.05 && (t + 1.0).abs() >= 0.05 {
            pts.push((l, t));
        }
    }
    pts.par_iter().map(|&(l, t)| mk_residual(k, l, t)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ZeroReport {
    pub order: usize,
    pub zeros: Vec<f64>,
    pub values: Vec<f64>,
    /// `max |F|` over a `lambda` grid up to the last zero.
    pub max_abs: f64,
}

impl ZeroReport {
    pub fn ratios(&self) -> Vec<f64> {
        self.values.iter().map(|v| if self.max_abs > 0.0 { v / self.max_abs } else { 0.0 }).collect()
    }

    pub fn worst_ratio(&self) -> f64 {
        self.ratios().into_iter().fold(0.0, f64::max)
    }
}

/// `|F_(k+1/2)(g)|` at the first `count` positive zeros of `j_(m+k+1/2)`.
pub fn bessel_zero_vanishing(data: &dyn HData, k: usize, m: usize, count: usize, quad: &QuadratureRule) -> Result<ZeroReport> {
    if count == 0 {
        return invalid("count must be at least 1");
    }
    let zeros = bessel_zeros(m + k, count)?;
    let last = *zeros.last().expect("count >= 1");
    let s = HankelSamples::new(data, last, quad)?;
    let values: Vec<f64> = zeros.iter().map(|&z| s.hankel(k, z).abs()).collect();
    let max_abs = (0..=400)
        .map(|i| s.hankel(k, last * i as f64 / 400.0).abs())
        .fold(0.0, f64::max)
        .max(values.iter().cloned().fold(0.0, f64::max));
    Ok(ZeroReport { order: m + k, zeros, values, max_abs })
}

/// `n` values evenly spaced on `[a, b]`.
pub fn lambda_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n < 2 {
        return vec![a];
    }
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}
