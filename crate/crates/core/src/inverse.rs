//! Recovering a radial profile from the half data `g` on `(0, 1)`.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, invalid, Result, SmtError};
use crate::quadrature::QuadratureRule;
use crate::transform::{q_kernel, radial_constant, Dimension};

/// `f` is not reconstructed below this radius by the closed form.
pub const R_FLOOR: f64 = 1e-3;

/// `n = 3`: `h(t) = 1/2 int_{1-t}^1 u f(u) du` for `t < 1`, so `f(r) = 2 h'(1-r) / r`.
pub fn invert_radial_n3<F: Fn(f64) -> Result<f64>>(h_prime: F, r: f64) -> Result<f64> {
    if !(R_FLOOR..1.0).contains(&r) {
        return domain(format!("r = {r} is outside [{R_FLOOR}, 1)"));
    }
    Ok(2.0 * h_prime(1.0 - r)? / r)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InversionConfig {
    pub n_unknowns: usize,
    pub n_collocation: usize,
    pub svd_cutoff: f64,
    /// Unknowns per panel; `f` is a polynomial of degree `nodes_per_panel - 1` on each panel.
    pub nodes_per_panel: usize,
}

impl Default for InversionConfig {
    fn default() -> Self {
        InversionConfig { n_unknowns: 80, n_collocation: 160, svd_cutoff: 1e-10, nodes_per_panel: 8 }
    }
}

impl InversionConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_unknowns < 2 {
            return invalid("n_unknowns must be at least 2");
        }
        if self.n_collocation < self.n_unknowns {
            return invalid(format!(
                "n_collocation ({}) must be at least n_unknowns ({})",
                self.n_collocation, self.n_unknowns
            ));
        }
        if self.nodes_per_panel < 1 || !self.n_unknowns.is_multiple_of(self.nodes_per_panel) {
            return invalid(format!(
                "n_unknowns ({}) must be a multiple of nodes_per_panel ({})",
                self.n_unknowns, self.nodes_per_panel
            ));
        }
        if !(self.svd_cutoff > 0.0 && self.svd_cutoff < 1.0) {
            return invalid(format!("svd_cutoff must lie in (0, 1), got {}", self.svd_cutoff));
        }
        Ok(())
    }

    /// Midpoint collocation radii `(i + 1/2) / n_collocation`.
    pub fn collocation_grid(&self) -> Vec<f64> {
        (0..self.n_collocation).map(|i| (i as f64 + 0.5) / self.n_collocation as f64).collect()
    }
}

/// Nodal values of `f` at composite Gauss nodes, joined by a natural cubic spline.
#[derive(Clone, Debug, Serialize)]
pub struct Reconstruction {
    pub nodes: Vec<f64>,
    pub values: Vec<f64>,
    /// `|A f - h| / |h|`.
    pub residual_norm: f64,
    pub rank: usize,
    #[serde(skip)]
    basis: SplineBasis,
}

impl Reconstruction {
    pub fn eval(&self, r: f64) -> f64 {
        self.basis.row(r).iter().zip(&self.values).map(|(l, v)| l * v).sum()
    }
}

/// Cardinal natural cubic splines on `x`: `row(r)[j]` is the spline through `e_j` at `r`.
#[derive(Clone, Debug, Default)]
struct SplineBasis {
    x: Vec<f64>,
    // second derivatives at the nodes as a linear map of the nodal values
    m: Vec<Vec<f64>>,
}

impl SplineBasis {
    fn new(x: Vec<f64>) -> Result<Self> {
        let n = x.len();
        if n < 3 {
            return invalid("a cubic spline needs at least three nodes");
        }
        let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
        let mut t = DMatrix::<f64>::zeros(n, n);
        let mut r = DMatrix::<f64>::zeros(n, n);
        t[(0, 0)] = 1.0;
        t[(n - 1, n - 1)] = 1.0;
        for i in 1..n - 1 {
            t[(i, i - 1)] = h[i - 1];
            t[(i, i)] = 2.0 * (h[i - 1] + h[i]);
            t[(i, i + 1)] = h[i];
            r[(i, i - 1)] = 6.0 / h[i - 1];
            r[(i, i)] = -6.0 / h[i - 1] - 6.0 / h[i];
            r[(i, i + 1)] = 6.0 / h[i];
        }
        let s = t.lu().solve(&r).ok_or_else(|| SmtError::IllPosed("singular spline system".into()))?;
        let m = (0..n).map(|i| s.row(i).iter().cloned().collect()).collect();
        Ok(SplineBasis { x, m })
    }

    /// Interval index used for `r`; the end cubics extend past the outer nodes.
    fn interval(&self, r: f64) -> usize {
        let n = self.x.len();
        match self.x.partition_point(|&xi| xi <= r) {
            0 => 0,
            i if i >= n => n - 2,
            i => i - 1,
        }
    }

    fn row(&self, r: f64) -> Vec<f64> {
        self.row_in(self.interval(r), r)
    }

    fn row_in(&self, i: usize, r: f64) -> Vec<f64> {
        let h = self.x[i + 1] - self.x[i];
        let a = (self.x[i + 1] - r) / h;
        let b = 1.0 - a;
        let ca = (a * a * a - a) * h * h / 6.0;
        let cb = (b * b * b - b) * h * h / 6.0;
        let mut out: Vec<f64> = self.m[i].iter().zip(&self.m[i + 1]).map(|(mi, mj)| ca * mi + cb * mj).collect();
        out[i] += a;
        out[i + 1] += b;
        out
    }

    /// Breakpoints of `[0, 1]`: interval `i` of the returned list uses cubic `i`.
    fn pieces(&self) -> Vec<(f64, f64, usize)> {
        let n = self.x.len();
        let mut out = vec![(0.0, self.x[1], 0)];
        for i in 1..n - 2 {
            out.push((self.x[i], self.x[i + 1], i));
        }
        out.push((self.x[n - 2], 1.0, n - 2));
        out
    }
}

/// Least-squares solve of `h(t_i) = c int_{1-t_i}^1 u Q(t_i,u)^k f(u) du` with `f`
/// the natural cubic spline through its values at `n_unknowns` composite Gauss
/// nodes. Row integrals are exact for that basis; the system is cut at
/// `svd_cutoff * sigma_max`.
pub fn invert_radial(t: &[f64], g: &[f64], dim: Dimension, cfg: &InversionConfig) -> Result<Reconstruction> {
    cfg.validate()?;
    if t.len() != g.len() || t.is_empty() {
        return invalid("t and g must be nonempty and of equal length");
    }
    if let Some(bad) = t.iter().find(|&&ti| !(ti > 0.0 && ti < 1.0)) {
        return invalid(format!("half data must have t in (0, 1), got {bad}"));
    }
    let n = cfg.n_unknowns;
    let per = cfg.nodes_per_panel;
    let k = dim.k();
    let nodes: Vec<f64> = QuadratureRule::new(per.max(2), n / per)?
        .points(0.0, 1.0, n / per)
        .into_iter()
        .map(|p| p.0)
        .collect();
    let nodes = if per == 1 { (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect() } else { nodes };
    let basis = SplineBasis::new(nodes.clone())?;
    let pieces = basis.pieces();
    // integrand degree per piece: 3 + 1 + 4k
    let exact = QuadratureRule::new(2 * k + 3, 1)?;
    let c = radial_constant(dim);
    let rows: Vec<Vec<f64>> = t
        .par_iter()
        .map(|&ti| {
            let mut row = vec![0.0; n];
            let lo = 1.0 - ti;
            for &(a, b, i) in &pieces {
                let a = a.max(lo);
                if b <= a {
                    continue;
                }
                for (u, w) in exact.points(a, b, 1) {
                    let kern = c * w * u * q_kernel(ti, u).powi(k as i32);
                    for (acc, l) in row.iter_mut().zip(basis.row_in(i, u)) {
                        *acc += kern * l;
                    }
                }
            }
            row
        })
        .collect();
    let a = DMatrix::from_fn(t.len(), n, |i, j| rows[i][j]);
    let h = DVector::from_iterator(t.len(), t.iter().zip(g).map(|(&ti, &gi)| ti.powi(dim.n() as i32 - 2) * gi));
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let cut = cfg.svd_cutoff * smax;
    let rank = svd.singular_values.iter().filter(|&&s| s > cut).count();
    if (rank as f64) < 0.25 * n as f64 {
        return Err(SmtError::IllPosed(format!("effective rank {rank} of {n} unknowns")));
    }
    let x = svd.solve(&h, cut).map_err(|e| SmtError::IllPosed(e.to_string()))?;
    let hn = h.norm();
    let residual_norm = if hn > 0.0 { (&a * &x - &h).norm() / hn } else { (&a * &x).norm() };
    Ok(Reconstruction { nodes, values: x.iter().cloned().collect(), residual_norm, rank, basis })
}

/// `sqrt(sum (a-b)^2 / sum b^2)`.
pub fn rel_l2(a: &[f64], b: &[f64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
    let den: f64 = b.iter().map(|y| y * y).sum();
    if den == 0.0 {
        num.sqrt()
    } else {
        (num / den).sqrt()
    }
}
