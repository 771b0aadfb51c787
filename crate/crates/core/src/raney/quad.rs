use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

/// Gauss-Legendre rule on `[-1, 1]` from the eigen-decomposition of the
/// Jacobi matrix (Golub-Welsch).
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "order must be positive");
        let jacobi = DMatrix::from_fn(order, order, |i, j| {
            if i + 1 == j || j + 1 == i {
                let k = i.max(j) as f64;
                k / (4.0 * k * k - 1.0).sqrt()
            } else {
                0.0
            }
        });
        let eig = SymmetricEigen::new(jacobi);
        let mut pairs: Vec<(f64, f64)> = (0..order)
            .map(|i| (eig.eigenvalues[i], 2.0 * eig.eigenvectors[(0, i)].powi(2)))
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        // Symmetrise to remove eigen-solver round-off.
        for i in 0..order / 2 {
            let j = order - 1 - i;
            let x = 0.5 * (pairs[j].0 - pairs[i].0);
            let w = 0.5 * (pairs[i].1 + pairs[j].1);
            pairs[i] = (-x, w);
            pairs[j] = (x, w);
        }
        if order % 2 == 1 {
            pairs[order / 2].0 = 0.0;
        }
        GaussLegendre {
            nodes: pairs.iter().map(|p| p.0).collect(),
            weights: pairs.iter().map(|p| p.1).collect(),
        }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Composite rule with `panels` equal panels on `[a, b]`.
    pub fn composite<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64, panels: usize) -> f64 {
        let h = (b - a) / panels as f64;
        (0..panels)
            .map(|p| {
                let mid = a + (p as f64 + 0.5) * h;
                self.nodes
                    .iter()
                    .zip(&self.weights)
                    .map(|(x, w)| w * f(mid + 0.5 * h * x))
                    .sum::<f64>()
                    * 0.5
                    * h
            })
            .sum()
    }
}

pub(crate) const PANEL_ORDER: usize = 20;
const MAX_PANELS: usize = 1 << 12;

/// Composite Gauss-Legendre with panel doubling until two successive
/// estimates agree to `tol` (relative, with an absolute floor of `tol`).
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    let rule = GaussLegendre::new(PANEL_ORDER);
    let mut panels = 4;
    let mut prev = rule.composite(&f, a, b, panels);
    while panels < MAX_PANELS {
        panels *= 2;
        let cur = rule.composite(&f, a, b, panels);
        if !cur.is_finite() {
            return Err(Error::Numeric(format!(
                "non-finite quadrature value on [{a}, {b}]"
            )));
        }
        if (cur - prev).abs() <= tol * cur.abs().max(1.0) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::Numeric(format!(
        "quadrature on [{a}, {b}] did not stabilise within {MAX_PANELS} panels"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_for_polynomials() {
        let g = GaussLegendre::new(5);
        assert!((g.weights().iter().sum::<f64>() - 2.0).abs() < 1e-14);
        // degree 9 is the limit for 5 nodes
        let v = g.composite(&|x: f64| x.powi(8), -1.0, 1.0, 1);
        assert!((v - 2.0 / 9.0).abs() < 1e-14);
    }

    #[test]
    fn known_nodes() {
        let g = GaussLegendre::new(3);
        let n = g.nodes();
        assert!((n[2] - (0.6f64).sqrt()).abs() < 1e-15);
        assert_eq!(n[1], 0.0);
        assert!((g.weights()[1] - 8.0 / 9.0).abs() < 1e-14);
    }

    #[test]
    fn smooth_integral() {
        let v = integrate(f64::exp, 0.0, 1.0, 1e-14).unwrap();
        assert!((v - (1f64.exp() - 1.0)).abs() < 1e-14);
    }
}
