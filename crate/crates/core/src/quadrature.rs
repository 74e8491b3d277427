//! Composite Gauss–Legendre quadrature.

use std::sync::Arc;

use gauss_quad::GaussLegendre;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Clone, Debug)]
pub struct QuadratureRule {
    nodes_per_panel: usize,
    panels: usize,
    // reference rule on [-1, 1]
    rule: Arc<Vec<(f64, f64)>>,
}

impl QuadratureRule {
    pub fn new(nodes_per_panel: usize, panels: usize) -> Result<Self> {
        if nodes_per_panel < 2 || panels < 1 {
            return invalid(format!(
                "quadrature needs >= 2 nodes per panel and >= 1 panel, got {nodes_per_panel} x {panels}"
            ));
        }
        let gl = GaussLegendre::new(nodes_per_panel.try_into().expect("nonzero"));
        let mut rule: Vec<(f64, f64)> = gl.iter().map(|(x, w)| (*x, *w)).collect();
        rule.sort_by(|a, b| a.0.total_cmp(&b.0));
        Ok(QuadratureRule { nodes_per_panel, panels, rule: Arc::new(rule) })
    }

    pub fn nodes_per_panel(&self) -> usize {
        self.nodes_per_panel
    }

    pub fn panels(&self) -> usize {
        self.panels
    }

    /// Same node count, different panel count.
    pub fn with_panels(&self, panels: usize) -> Self {
        QuadratureRule { panels: panels.max(1), ..self.clone() }
    }

    /// Nodes and weights on `[a, b]` for `panels` equal panels.
    pub fn points(&self, a: f64, b: f64, panels: usize) -> Vec<(f64, f64)> {
        let h = (b - a) / panels as f64;
        let mut out = Vec::with_capacity(panels * self.rule.len());
        for p in 0..panels {
            let lo = a + h * p as f64;
            let mid = lo + 0.5 * h;
            for &(x, w) in self.rule.iter() {
                out.push((mid + 0.5 * h * x, 0.5 * h * w));
            }
        }
        out
    }

    pub fn integrate_panels<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64, panels: usize) -> f64 {
        if b <= a {
            return 0.0;
        }
        let h = (b - a) / panels as f64;
        let mut total = 0.0;
        for p in 0..panels {
            let mid = a + h * (p as f64 + 0.5);
            let mut s = 0.0;
            for &(x, w) in self.rule.iter() {
                s += w * f(mid + 0.5 * h * x);
            }
            total += 0.5 * h * s;
        }
        total
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> f64 {
        self.integrate_panels(f, a, b, self.panels)
    }
}

impl Default for QuadratureRule {
    fn default() -> Self {
        QuadratureRule::new(32, 8).expect("valid default")
    }
}

/// Serializable `{nodes, panels}` form used in configs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadSpec {
    pub nodes: usize,
    pub panels: usize,
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec { nodes: 32, panels: 8 }
    }
}

impl QuadSpec {
    pub fn build(&self) -> Result<QuadratureRule> {
        QuadratureRule::new(self.nodes, self.panels)
    }
}
