use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::PI;

use super::{saddle_coords, sigma, PhiCoord};

fn residual(w: Complex64, x: f64, r: usize) -> f64 {
    (w.powu(r as u32 + 1) - w * w * x + x).norm()
}

/// `|w^(r+1) - w² σ(φ) + σ(φ)|` at `w = a e^{iφ}`.
pub fn ae_residual(phi: &PhiCoord) -> f64 {
    residual(saddle_coords(phi).w, sigma(phi), phi.r())
}

/// Same residual at the conjugate root `a e^{-iφ}`.
pub fn ae_residual_conjugate(phi: &PhiCoord) -> f64 {
    residual(saddle_coords(phi).w.conj(), sigma(phi), phi.r())
}

/// Hessian of the saddle exponent at `S(φ) = (θ, φ, ..., φ)`:
/// `2w` in the corner, `w - w(w-1)` on the rest of the diagonal and
/// `-w(w-1)` everywhere else.
pub fn hessian_matrix(phi: &PhiCoord) -> DMatrix<Complex64> {
    let r = phi.r();
    let w = saddle_coords(phi).w;
    let off = -w * (w - 1.0);
    DMatrix::from_fn(r, r, |i, j| match (i, j) {
        (0, 0) => 2.0 * w,
        _ if i == j => w + off,
        _ => off,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HessianDet {
    /// `w^r (r + 1 - (r-1) w²)`.
    pub closed_form: Complex64,
    /// Determinant of [`hessian_matrix`] by LU.
    pub assembled: Complex64,
}

impl HessianDet {
    pub fn rel_mismatch(&self) -> f64 {
        (self.closed_form - self.assembled).norm() / self.closed_form.norm()
    }
}

pub fn hessian_det(phi: &PhiCoord) -> HessianDet {
    let r = phi.r();
    let w = saddle_coords(phi).w;
    let closed_form = w.powu(r as u32) * (r as f64 + 1.0 - (r as f64 - 1.0) * w * w);
    HessianDet {
        closed_form,
        assembled: hessian_matrix(phi).determinant(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RealHessianDet {
    /// `a^r cos^(r-2) φ ((r+1) cos² φ - (r-1) (sin(r+1)φ / sin(r-1)φ) cos² 2φ)`.
    pub closed_form: f64,
    pub assembled: f64,
}

/// Determinant of the entrywise real part of the Hessian.
pub fn real_hessian_det(phi: &PhiCoord) -> RealHessianDet {
    let r = phi.r() as f64;
    let t = phi.phi();
    let (sp, sm) = phi.sines();
    let a = saddle_coords(phi).a;
    let c = t.cos();
    let closed_form = a.powi(phi.r() as i32)
        * c.powi(phi.r() as i32 - 2)
        * ((r + 1.0) * c * c - (r - 1.0) * sp / sm * (2.0 * t).cos().powi(2));
    let assembled = hessian_matrix(phi).map(|z| z.re).determinant();
    RealHessianDet {
        closed_form,
        assembled,
    }
}

/// Saddle location `S(φ) = (θ, φ, ..., φ)` in the torus coordinates.
pub fn saddle_point(phi: &PhiCoord) -> Vec<f64> {
    let mut s = vec![phi.phi(); phi.r()];
    s[0] = saddle_coords(phi).theta;
    s
}

fn log_h(t: &[f64], phi: &PhiCoord) -> f64 {
    let sd = saddle_coords(phi);
    let (sp, _) = phi.sines();
    let s = sp / (sd.b * (2.0 * phi.phi()).sin());
    let total: f64 = t.iter().sum();
    let ring: f64 = t[1..].iter().map(|tj| tj.cos()).sum();
    let first = (Complex64::new(1.0, 0.0) - Complex64::from_polar(sd.b, t[0])).norm();
    let last = (Complex64::new(1.0, 0.0) - Complex64::from_polar(s, -total)).norm();
    sd.a * ring - first.ln() + last.ln()
}

/// Modulus of the integrand base
/// `exp(a Σ_{j≥2} e^{i t_j}) (1 - b e^{i t_1})^{-1} (1 - s e^{-i Σ t})`
/// with `s = sin((r+1)φ) / (b sin 2φ)`.
pub fn h_modulus(t: &[f64], phi: &PhiCoord) -> f64 {
    assert_eq!(t.len(), phi.r(), "need one angle per factor");
    log_h(t, phi).exp()
}

/// Global maximiser of `h` on `[-π, π]^r`: exhaustive grid search with
/// `grid` points per axis, then pattern-search refinement of `log h`.
pub fn h_argmax(phi: &PhiCoord, grid: usize) -> Vec<f64> {
    let r = phi.r();
    let axis: Vec<f64> = (0..grid)
        .map(|i| -PI + 2.0 * PI * i as f64 / (grid - 1) as f64)
        .collect();
    let total = grid.pow(r as u32);
    let mut best = (f64::NEG_INFINITY, vec![0.0; r]);
    let mut t = vec![0.0; r];
    for idx in 0..total {
        let mut rem = idx;
        for tj in t.iter_mut() {
            *tj = axis[rem % grid];
            rem /= grid;
        }
        let v = log_h(&t, phi);
        if v > best.0 {
            best = (v, t.clone());
        }
    }
    refine_max(best.1, phi, 2.0 * PI / (grid - 1) as f64)
}

fn refine_max(start: Vec<f64>, phi: &PhiCoord, initial_step: f64) -> Vec<f64> {
    let r = start.len();
    let mut x = start;
    let mut fx = log_h(&x, phi);
    let mut step = initial_step;
    // Directions: coordinate axes plus the all-ones diagonal and its partial
    // sums, which follow the ridge along Σt = const.
    let mut dirs: Vec<Vec<f64>> = (0..r)
        .map(|i| (0..r).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    dirs.push(vec![1.0 / (r as f64).sqrt(); r]);
    for i in 0..r {
        for j in (i + 1)..r {
            let mut d = vec![0.0; r];
            d[i] = std::f64::consts::FRAC_1_SQRT_2;
            d[j] = -std::f64::consts::FRAC_1_SQRT_2;
            dirs.push(d);
        }
    }
    let mut budget = 200_000usize;
    while step > 1e-13 && budget > 0 {
        budget -= 1;
        let mut improved = false;
        for d in &dirs {
            for sgn in [1.0, -1.0] {
                let y: Vec<f64> = x
                    .iter()
                    .zip(d)
                    .map(|(xi, di)| xi + sgn * step * di)
                    .collect();
                if y.iter().any(|v| v.abs() > PI) {
                    continue;
                }
                let fy = log_h(&y, phi);
                if fy > fx {
                    x = y;
                    fx = fy;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::interior_grid;
    use std::f64::consts::FRAC_PI_8;

    #[test]
    fn exact_algebraic_zero_at_pi_over_8() {
        // w² = 1 + i, w⁴ = 2i and σ = 2, in Gaussian integers.
        let w2 = (1i64, 1i64);
        let w4 = (w2.0 * w2.0 - w2.1 * w2.1, 2 * w2.0 * w2.1);
        assert_eq!(w4, (0, 2));
        let res = (w4.0 - 2 * w2.0 + 2, w4.1 - 2 * w2.1);
        assert_eq!(res, (0, 0));
        let p = PhiCoord::new(FRAC_PI_8, 3).unwrap();
        assert!(ae_residual(&p) < 1e-14);
        assert!(ae_residual_conjugate(&p) < 1e-14);
        assert!(ae_residual(&PhiCoord::new(std::f64::consts::PI / 7.0, 3).unwrap()) < 1e-12);
    }

    #[test]
    fn hessian_reference() {
        let p = PhiCoord::new(FRAC_PI_8, 3).unwrap();
        let h = hessian_det(&p);
        assert!((h.closed_form.norm() - 2f64.powf(2.25)).abs() < 1e-12);
        assert!(h.rel_mismatch() < 1e-12);
    }

    #[test]
    fn hessian_entries_match_finite_differences() {
        // p(t) = -a Σ_{j≥2} e^{i t_j} + log(1 - b e^{i t_1}) - log(1 - s e^{-i Σ t})
        for r in 2..=4 {
            let phi = PhiCoord::new(0.6 * crate::asymptotics::phi_max(r), r).unwrap();
            let sd = saddle_coords(&phi);
            let (sp, _) = phi.sines();
            let s = sp / (sd.b * (2.0 * phi.phi()).sin());
            let p = |t: &[f64]| -> Complex64 {
                let one = Complex64::new(1.0, 0.0);
                let total: f64 = t.iter().sum();
                let ring: Complex64 = t[1..]
                    .iter()
                    .map(|&tj| Complex64::from_polar(sd.a, tj))
                    .sum();
                -ring + (one - Complex64::from_polar(sd.b, t[0])).ln()
                    - (one - Complex64::from_polar(s, -total)).ln()
            };
            let s0 = saddle_point(&phi);
            let h = 1e-4;
            let m = hessian_matrix(&phi);
            for i in 0..r {
                for j in 0..r {
                    let shifted = |di: f64, dj: f64| {
                        let mut t = s0.clone();
                        t[i] += di;
                        t[j] += dj;
                        p(&t)
                    };
                    let fd = (shifted(h, h) - shifted(h, -h) - shifted(-h, h) + shifted(-h, -h))
                        / (4.0 * h * h);
                    assert!(
                        (fd - m[(i, j)]).norm() < 1e-6,
                        "r={r} ({i},{j}): {fd} vs {}",
                        m[(i, j)]
                    );
                }
            }
        }
    }

    #[test]
    fn real_part_determinant_positive() {
        for r in 2..=4 {
            for phi in interior_grid(r, 200) {
                let d = real_hessian_det(&phi);
                assert!(d.closed_form > 0.0);
                assert!((d.closed_form - d.assembled).abs() <= 1e-10 * d.closed_form.abs());
                assert!(hessian_det(&phi).closed_form.norm() > 0.0);
            }
        }
    }

    #[test]
    fn h_symmetry_and_dominance() {
        use rand::{Rng, SeedableRng};
        let phi = PhiCoord::new(FRAC_PI_8, 3).unwrap();
        let peak = h_modulus(&saddle_point(&phi), &phi);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let t: Vec<f64> = (0..3).map(|_| rng.random_range(-PI..PI)).collect();
            let neg: Vec<f64> = t.iter().map(|v| -v).collect();
            let h = h_modulus(&t, &phi);
            assert!((h - h_modulus(&neg, &phi)).abs() <= 1e-12 * h);
            assert!(peak >= h);
        }
    }
}
