use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

use super::{saddle_coords, sigma_inv, x_star};
use crate::charpoly::PolySpec;
use crate::error::{Error, Result};

/// Largest degree the quadrature oracle accepts.
pub const MAX_ORACLE_DEGREE: usize = 8;

/// Trapezoidal quadrature of the r-fold torus integral
///
/// ```text
/// F_n(n^(r-1) x) = n^(-Σν) (2π)^(-r) ∫_{[-π,π]^r} H^n (1-w_1)^(-κ) Π_{j≥2} w_j^(-ν_{j-1}) dT
/// H = exp(w_2 + ... + w_r) (1 - w_1)^(-1) (1 - x / (w_1 ... w_r))
/// w_1 = b e^{i t_1},  w_j = a e^{i t_j}
/// ```
///
/// where the radii are the saddle radii `b(φ), a(φ)` for `x = σ(φ)` inside the
/// zero interval and `(1/2, 1)` outside it. The integrand is smooth and
/// periodic, so the trapezoid rule converges geometrically in `grid_points`.
pub fn contour_oracle(spec: &PolySpec, n: usize, x: f64, grid_points: usize) -> Result<f64> {
    if n > MAX_ORACLE_DEGREE {
        return Err(Error::Domain(format!(
            "contour oracle is limited to n <= {MAX_ORACLE_DEGREE}, got {n}"
        )));
    }
    if grid_points < 64 {
        return Err(Error::Domain(format!(
            "contour oracle needs at least 64 grid points, got {grid_points}"
        )));
    }
    let r = spec.r();
    let (b, a) = if x > 0.0 && x < x_star(r) {
        let sd = saddle_coords(&sigma_inv(x, r)?);
        (sd.b, sd.a)
    } else {
        (0.5, 1.0)
    };
    // For n = 0 the rescaling is void; use unit scale.
    let m = n.max(1) as f64;
    let m_int = n as i32;
    let one = Complex64::new(1.0, 0.0);
    let kappa = spec.kappa() as i32;
    let nu = spec.nu();
    let axis: Vec<f64> = (0..grid_points)
        .map(|k| -PI + 2.0 * PI * k as f64 / grid_points as f64)
        .collect();
    let w1s: Vec<Complex64> = axis.iter().map(|&t| Complex64::from_polar(b, t)).collect();
    let ws: Vec<Complex64> = axis.iter().map(|&t| Complex64::from_polar(a, t)).collect();

    let inner = grid_points.pow(r as u32 - 1);
    let total: Complex64 = (0..grid_points)
        .into_par_iter()
        .map(|i1| {
            let w1 = w1s[i1];
            let base1 = (one - w1).inv();
            let q1 = (one - w1).powi(-kappa);
            let mut acc = Complex64::new(0.0, 0.0);
            for idx in 0..inner {
                let mut rem = idx;
                let mut prod = w1;
                let mut sum = Complex64::new(0.0, 0.0);
                let mut q = q1;
                for &v in nu.iter() {
                    let w = ws[rem % grid_points];
                    rem /= grid_points;
                    prod *= w;
                    sum += w;
                    q *= w.powi(-(v as i32));
                }
                let h = base1 * (one - x / prod);
                acc += (sum * m).exp() * h.powi(m_int) * q;
            }
            acc
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum();
    let scale = m.powi(-(spec.nu_sum() as i32)) / (grid_points as f64).powi(r as i32);
    Ok(total.re * scale)
}
