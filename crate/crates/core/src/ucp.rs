//! A radial `f = F^(m)` that vanishes near the origin while its spherical
//! means vanish for all radii in `(1 - eps, 1 + eps)`.
//!
//! For such `t` the integral runs over the whole support of `F`, the kernel
//! `u Q(t,u)^k` is a polynomial of degree `4k + 1` in `u`, and `m >= 4k + 2`
//! integrations by parts kill it.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::quadrature::QuadratureRule;
use crate::transform::{forward_radial, Bump, Derivative, Dimension, RadialProfile, T_FLOOR};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UcpSpec {
    pub n: usize,
    pub epsilon: f64,
    pub m: usize,
    pub center: f64,
    pub width: f64,
}

impl UcpSpec {
    pub fn validate(&self) -> Result<Dimension> {
        let dim = Dimension::new(self.n)?;
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return invalid(format!("epsilon must lie in (0, 1), got {}", self.epsilon));
        }
        let need = 4 * dim.k() + 2;
        if self.m < need {
            return invalid(format!("m = {} is below the sufficient order 4k + 2 = {need}", self.m));
        }
        let (lo, hi) = (self.center - self.width, self.center + self.width);
        if !(self.width > 0.0 && lo >= self.epsilon && hi < 1.0) {
            return invalid(format!("bump support ({lo}, {hi}) must lie in (epsilon, 1) = ({}, 1)", self.epsilon));
        }
        Ok(dim)
    }

    /// The same spec with `m` lowered below the sufficient order, for comparison only.
    pub fn below_threshold(&self) -> Result<UcpSpec> {
        let dim = Dimension::new(self.n)?;
        Ok(UcpSpec { m: 4 * dim.k() + 1, ..*self })
    }
}

/// `f = F^(m)` with `F` the bump of `spec`.
pub fn build_counterexample(spec: &UcpSpec) -> Result<Derivative<Bump>> {
    spec.validate()?;
    Ok(build_unchecked(spec))
}

fn build_unchecked(spec: &UcpSpec) -> Derivative<Bump> {
    Derivative { m: spec.m, inner: Bump::unchecked(spec.center, spec.width) }
}

#[derive(Clone, Debug, Serialize)]
pub struct UcpReport {
    pub spec: UcpSpec,
    /// `max |g|` for `t` in `(1 - eps, 1 + eps)`.
    pub inside_max: f64,
    /// `max |g|` elsewhere on the grid.
    pub outside_max: f64,
    pub global_max: f64,
    pub ratio_inside: f64,
    /// `max |f|` on `[0, 1)`.
    pub f_max: f64,
    /// `f(r) == 0.0` exactly at every sampled `r <= eps`.
    pub f_vanishes_near_origin: bool,
    /// `f` or `g` vanished everywhere sampled; the ratio is then undefined.
    pub trivial: bool,
    pub tol: f64,
    pub passed: bool,
}

/// `t` grid on `[t_floor, 2)`.
pub fn default_t_grid(count: usize) -> Vec<f64> {
    (0..count).map(|i| T_FLOOR + (2.0 - T_FLOOR) * i as f64 / count as f64).collect()
}

/// Same measurement for an arbitrary profile, e.g. to see the trivial-input flag.
pub fn measure(spec: &UcpSpec, f: &dyn RadialProfile, quad: &QuadratureRule, grid: &[f64], tol: f64) -> Result<UcpReport> {
    let dim = Dimension::new(spec.n)?;
    report(spec, f, dim, quad, grid, tol).map(|r| r.0)
}

fn report(spec: &UcpSpec, f: &dyn RadialProfile, dim: Dimension, quad: &QuadratureRule, grid: &[f64], tol: f64) -> Result<(UcpReport, Vec<f64>)> {
    let g: Vec<f64> = grid.par_iter().map(|&t| forward_radial(f, dim, t, quad)).collect::<Result<_>>()?;
    let eps = spec.epsilon;
    let mut inside: f64 = 0.0;
    let mut outside: f64 = 0.0;
    for (&t, &v) in grid.iter().zip(&g) {
        if (t - 1.0).abs() < eps {
            inside = inside.max(v.abs());
        } else {
            outside = outside.max(v.abs());
        }
    }
    let global = inside.max(outside);
    let near: Vec<f64> = (0..=1000).map(|i| eps * i as f64 / 1000.0).collect();
    let vanishes = near.iter().all(|&r| f.value(r) == 0.0);
    let f_max = (0..1000).map(|i| f.value(i as f64 / 1000.0).abs()).fold(0.0, f64::max);
    let ratio = if global > 0.0 { inside / global } else { f64::NAN };
    let trivial = !(global > 0.0 && f_max > 0.0);
    let passed = !trivial && ratio <= tol && vanishes;
    Ok((
        UcpReport {
            spec: *spec,
            inside_max: inside,
            outside_max: outside,
            global_max: global,
            ratio_inside: ratio,
            f_max,
            f_vanishes_near_origin: vanishes,
            trivial,
            tol,
            passed,
        },
        g,
    ))
}

/// Forward transform of the counterexample on `grid`; passes when the
/// inside-window ratio is at most `tol` and `f` is nontrivial.
pub fn verify_counterexample(spec: &UcpSpec, quad: &QuadratureRule, grid: &[f64], tol: f64) -> Result<UcpReport> {
    verify_with_data(spec, quad, grid, tol).map(|r| r.0)
}

/// As [`verify_counterexample`], also returning `g` on the grid.
pub fn verify_with_data(spec: &UcpSpec, quad: &QuadratureRule, grid: &[f64], tol: f64) -> Result<(UcpReport, Vec<f64>)> {
    let dim = spec.validate()?;
    let f = build_unchecked(spec);
    report(spec, &f, dim, quad, grid, tol)
}

/// The same measurement at `m = 4k + 1`, where nothing is claimed.
pub fn below_threshold_report(spec: &UcpSpec, quad: &QuadratureRule, grid: &[f64]) -> Result<UcpReport> {
    let low = spec.below_threshold()?;
    let dim = Dimension::new(low.n)?;
    let f = build_unchecked(&low);
    report(&low, &f, dim, quad, grid, f64::INFINITY).map(|r| r.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_and_support_checks() {
        let s = UcpSpec { n: 5, epsilon: 0.2, m: 5, center: 0.6, width: 0.15 };
        assert!(build_counterexample(&s).is_err());
        let s = UcpSpec { m: 6, center: 0.3, ..s };
        assert!(build_counterexample(&s).is_err());
        let s = UcpSpec { center: 0.6, ..s };
        assert!(build_counterexample(&s).is_ok());
    }
}
