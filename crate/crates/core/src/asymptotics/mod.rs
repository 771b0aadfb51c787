//! The angle coordinate `φ ∈ (0, π/(r+1))` parameterising the oscillatory
//! interval, and everything expressed through it: the map `σ`, the saddle
//! point data, the phases of the Plancherel-Rotach formula, the Hessian of
//! the saddle exponent and a brute-force contour quadrature.

mod contour;
mod phases;
mod saddle;

pub use contour::contour_oracle;
pub use phases::{
    cosine_approximant, cosine_approximant_with, fig1_table, normalized_poly, phase_f, phase_g,
    phase_g_with, phases, phases_with, pr_approx, pr_approx_with, Fig1Preset, Fig1Row, PRParts,
    PhaseVariant,
};
pub use saddle::{
    ae_residual, ae_residual_conjugate, h_argmax, h_modulus, hessian_det, hessian_matrix,
    real_hessian_det, saddle_point, HessianDet, RealHessianDet,
};

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Right end `x* = (r+1)^((r+1)/2) / (2 (r-1)^((r-1)/2))` of the zero interval.
pub fn x_star(r: usize) -> f64 {
    let r = r as f64;
    ((r + 1.0) / 2.0 * (r + 1.0).ln() - (r - 1.0) / 2.0 * (r - 1.0).ln()).exp() / 2.0
}

/// Upper end `π/(r+1)` of the angle interval.
pub fn phi_max(r: usize) -> f64 {
    PI / (r as f64 + 1.0)
}

/// An angle strictly inside `(0, π/(r+1))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhiCoord {
    phi: f64,
    r: usize,
}

impl PhiCoord {
    pub fn new(phi: f64, r: usize) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidParams(format!("r must be >= 2, got {r}")));
        }
        if !(phi > 0.0 && phi < phi_max(r)) {
            return Err(Error::Domain(format!(
                "phi = {phi} outside (0, pi/{})",
                r + 1
            )));
        }
        Ok(PhiCoord { phi, r })
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn r(&self) -> usize {
        self.r
    }

    fn rf(&self) -> f64 {
        self.r as f64
    }

    /// `sin((r+1)φ)` and `sin((r-1)φ)`.
    pub(crate) fn sines(&self) -> (f64, f64) {
        let r = self.rf();
        (((r + 1.0) * self.phi).sin(), ((r - 1.0) * self.phi).sin())
    }
}

/// `a(φ) = sqrt(sin((r+1)φ) / sin((r-1)φ))`.
pub fn a_of(phi: &PhiCoord) -> f64 {
    let (sp, sm) = phi.sines();
    (sp / sm).sqrt()
}

/// `σ(φ) = sin((r+1)φ)^((r+1)/2) / (sin 2φ · sin((r-1)φ)^((r-1)/2))`.
pub fn sigma(phi: &PhiCoord) -> f64 {
    let r = phi.rf();
    let (sp, sm) = phi.sines();
    let s2 = (2.0 * phi.phi).sin();
    ((r + 1.0) / 2.0 * sp.ln() - s2.ln() - (r - 1.0) / 2.0 * sm.ln()).exp()
}

/// `dσ/dφ`, through the logarithmic derivative.
pub fn sigma_derivative(phi: &PhiCoord) -> f64 {
    let r = phi.rf();
    let t = phi.phi;
    let cot = |u: f64| u.cos() / u.sin();
    let dlog = (r + 1.0).powi(2) / 2.0 * cot((r + 1.0) * t)
        - 2.0 * cot(2.0 * t)
        - (r - 1.0).powi(2) / 2.0 * cot((r - 1.0) * t);
    sigma(phi) * dlog
}

/// Inverse of the strictly decreasing bijection `σ: (0, π/(r+1)) → (0, x*)`.
pub fn sigma_inv(x: f64, r: usize) -> Result<PhiCoord> {
    if r < 2 {
        return Err(Error::InvalidParams(format!("r must be >= 2, got {r}")));
    }
    let xs = x_star(r);
    if !(x > 0.0 && x < xs) {
        return Err(Error::Domain(format!("x = {x} outside (0, {xs})")));
    }
    let (mut lo, mut hi) = (0.0, phi_max(r));
    // σ(lo) > x > σ(hi)
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let p = PhiCoord { phi: mid, r };
        if sigma(&p) > x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let pick = |t: f64| (sigma(&PhiCoord { phi: t, r }) - x).abs();
    let phi = if lo > 0.0 && pick(lo) <= pick(hi) {
        lo
    } else {
        hi
    };
    PhiCoord::new(phi, r)
}

/// The saddle-point bundle at one angle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SaddleData {
    pub a: f64,
    pub b: f64,
    pub theta: f64,
    /// `w = a e^{iφ}`, a root of `w^(r+1) - x w^2 + x = 0` at `x = σ(φ)`.
    pub w: Complex64,
}

pub fn saddle_coords(phi: &PhiCoord) -> SaddleData {
    let a = a_of(phi);
    let (s, c) = phi.phi.sin_cos();
    let b = a / (1.0 + 2.0 * a * c + a * a).sqrt();
    let theta = (s / (c + a)).atan();
    SaddleData {
        a,
        b,
        theta,
        w: Complex64::from_polar(a, phi.phi),
    }
}

/// Evenly spaced interior angles, excluding both endpoints.
pub fn interior_grid(r: usize, points: usize) -> Vec<PhiCoord> {
    let end = phi_max(r);
    (1..=points)
        .map(|i| PhiCoord {
            phi: end * i as f64 / (points + 1) as f64,
            r,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_6, FRAC_PI_8};

    #[test]
    fn endpoints_are_rejected() {
        assert!(PhiCoord::new(0.0, 3).is_err());
        assert!(PhiCoord::new(PI / 4.0, 3).is_err());
        assert!(PhiCoord::new(0.1, 1).is_err());
    }

    #[test]
    fn sigma_values() {
        let p = PhiCoord::new(FRAC_PI_8, 3).unwrap();
        assert!((sigma(&p) - 2.0).abs() < 1e-14);
        let p = PhiCoord::new(FRAC_PI_6, 2).unwrap();
        assert!((sigma(&p) - 2.0 * 2f64.sqrt() / 3f64.sqrt()).abs() < 1e-14);
        let p = PhiCoord::new(1e-7, 3).unwrap();
        assert!((sigma(&p) - 4.0).abs() < 1e-10);
        assert!((x_star(3) - 4.0).abs() < 1e-14);
        assert!((x_star(2) - 3f64.powf(1.5) / 2.0).abs() < 1e-14);
    }

    #[test]
    fn sigma_inverse() {
        let p = sigma_inv(2.0, 3).unwrap();
        assert!((p.phi() - FRAC_PI_8).abs() < 1e-14);
        let p = sigma_inv(2.0 * 2f64.sqrt() / 3f64.sqrt(), 2).unwrap();
        assert!((p.phi() - FRAC_PI_6).abs() < 1e-14);
        let p = sigma_inv(3.9, 3).unwrap();
        assert!((sigma(&p) - 3.9).abs() <= 1e-12 * 3.9);
        assert!(sigma_inv(4.0, 3).is_err());
        assert!(sigma_inv(0.0, 3).is_err());
    }

    #[test]
    fn sigma_derivative_matches_finite_differences() {
        for r in 2..=5 {
            for p in interior_grid(r, 20) {
                let h = 1e-6;
                let up = sigma(&PhiCoord::new(p.phi() + h, r).unwrap());
                let dn = sigma(&PhiCoord::new(p.phi() - h, r).unwrap());
                let fd = (up - dn) / (2.0 * h);
                let d = sigma_derivative(&p);
                assert!(
                    (fd - d).abs() <= 1e-6 * d.abs().max(1.0),
                    "r={r} phi={}",
                    p.phi()
                );
            }
        }
    }

    #[test]
    fn saddle_values() {
        let s = saddle_coords(&PhiCoord::new(FRAC_PI_8, 3).unwrap());
        assert!((s.a - 2f64.powf(0.25)).abs() < 1e-14);
        let s = saddle_coords(&PhiCoord::new(FRAC_PI_6, 2).unwrap());
        assert!((s.a - 2f64.sqrt()).abs() < 1e-14);
        for r in 2..=5 {
            let s = saddle_coords(&PhiCoord::new(1e-8, r).unwrap());
            let lim = ((r as f64 + 1.0) / (r as f64 - 1.0)).sqrt();
            assert!((s.a - lim).abs() < 1e-10);
        }
    }

    #[test]
    fn saddle_invariants() {
        for r in 2..=5 {
            for p in interior_grid(r, 50) {
                let s = saddle_coords(&p);
                let (sp, sm) = p.sines();
                assert!((s.a * s.a - sp / sm).abs() <= 1e-12 * (sp / sm));
                let lhs = s.w / (s.w + 1.0);
                let rhs = Complex64::from_polar(s.b, s.theta);
                assert!((lhs - rhs).norm() <= 1e-12);
                assert!(s.b < 1.0);
            }
        }
    }
}
