//! The Raney distribution `R_{(r+1)/2, 1/2}` on `[0, x*]`: moments, density,
//! distribution function, Stieltjes transform and sampling.
//!
//! Every x-space integral runs in the angle coordinate `x = σ(φ)`. With the
//! further substitution `φ = π/(r+1) - u²` the integrand is smooth on the whole
//! range, so plain composite Gauss-Legendre converges fast.

mod quad;
mod stieltjes;

pub use quad::{integrate, GaussLegendre};
pub use stieltjes::{stieltjes, stieltjes_quadrature, stieltjes_root};

use std::f64::consts::PI;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::asymptotics::{phase_f, phi_max, sigma, sigma_inv, x_star, PhiCoord};
use crate::error::{Error, Result};
use crate::numerics::{gen_binomial, gen_binomial_exact, Rational};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RaneyParams {
    alpha: f64,
    beta: f64,
}

impl RaneyParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha >= 1.0 && beta > 0.0 && beta <= alpha) {
            return Err(Error::InvalidParams(format!(
                "need alpha >= 1 and 0 < beta <= alpha, got ({alpha}, {beta})"
            )));
        }
        Ok(RaneyParams { alpha, beta })
    }

    /// `α = (r+1)/2, β = 1/2`.
    pub fn model(r: usize) -> Result<Self> {
        validate_r(r)?;
        Self::new((r as f64 + 1.0) / 2.0, 0.5)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    fn halves(&self) -> Option<(Rational, Rational)> {
        let half = |v: f64| {
            let t = 2.0 * v;
            (t.fract() == 0.0 && t.abs() < 1e15).then(|| Rational::new((t as i64).into(), 2.into()))
        };
        Some((half(self.alpha)?, half(self.beta)?))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SupportInterval {
    pub upper: f64,
    pub r: usize,
}

impl SupportInterval {
    pub fn new(r: usize) -> Result<Self> {
        validate_r(r)?;
        Ok(SupportInterval {
            upper: x_star(r),
            r,
        })
    }

    pub fn contains(&self, x: f64) -> bool {
        (0.0..=self.upper).contains(&x)
    }
}

pub(crate) fn validate_r(r: usize) -> Result<()> {
    if r < 2 {
        return Err(Error::InvalidParams(format!("r must be >= 2, got {r}")));
    }
    Ok(())
}

/// `β/(αn+β) · binom(αn+β, n)` in exact arithmetic; `None` unless `2α` and
/// `2β` are integers.
pub fn raney_number_exact(params: &RaneyParams, n: u64) -> Option<Rational> {
    let (alpha, beta) = params.halves()?;
    let top = alpha * Rational::from_integer(n.into()) + &beta;
    Some(&beta / &top * gen_binomial_exact(&top, n))
}

pub fn raney_number(params: &RaneyParams, n: u64) -> f64 {
    if let Some(v) = raney_number_exact(params, n).and_then(|q| q.to_f64()) {
        return v;
    }
    let top = params.alpha * n as f64 + params.beta;
    params.beta / top * gen_binomial(top, n)
}

/// `v(σ(φ)) = sin 2φ sin φ sin((r-1)φ)^(r/2-1) / (π sin((r+1)φ)^(r/2))`.
pub fn density_at_phi(phi: &PhiCoord) -> f64 {
    let r = phi.r() as f64;
    let t = phi.phi();
    let sp = ((r + 1.0) * t).sin();
    let sm = ((r - 1.0) * t).sin();
    let log = (2.0 * t).sin().ln() + t.sin().ln() + (r / 2.0 - 1.0) * sm.ln() - r / 2.0 * sp.ln();
    log.exp() / PI
}

/// Density of the limiting zero distribution on `(0, x*)`.
pub fn density_v(x: f64, r: usize) -> Result<f64> {
    Ok(density_at_phi(&sigma_inv(x, r)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CdfForm {
    /// `1 - f(σ⁻¹(x))/π`.
    Phase,
    /// `½ + (r-1) sin φ √(sin(r+1)φ / sin(r-1)φ)/π + arctan(cos rφ / √(sin(r-1)φ sin(r+1)φ))/π`.
    Closed,
}

pub fn cdf_at_phi(phi: &PhiCoord, form: CdfForm) -> f64 {
    match form {
        CdfForm::Phase => 1.0 - phase_f(phi) / PI,
        CdfForm::Closed => {
            let r = phi.r() as f64;
            let t = phi.phi();
            let sp = ((r + 1.0) * t).sin();
            let sm = ((r - 1.0) * t).sin();
            0.5 + (r - 1.0) * t.sin() / PI * (sp / sm).sqrt()
                + (r * t).cos().atan2((sm * sp).sqrt()) / PI
        }
    }
}

/// Distribution function `V`, extended by 0 below the support and 1 above.
///
/// # Panics
/// If `r < 2`.
pub fn cdf_v(x: f64, r: usize, form: CdfForm) -> f64 {
    assert!(r >= 2, "r must be >= 2");
    if x.is_nan() {
        return f64::NAN;
    }
    if x <= 0.0 {
        return 0.0;
    }
    if x >= x_star(r) {
        return 1.0;
    }
    match sigma_inv(x, r) {
        Ok(phi) => cdf_at_phi(&phi, form),
        // x sits within rounding of an endpoint
        Err(_) => {
            if x < 0.5 * x_star(r) {
                0.0
            } else {
                1.0
            }
        }
    }
}

/// `x = σ(φ)` and the smooth weight `2u · (-σ'(φ)) · v(σ(φ))` at
/// `φ = π/(r+1) - u²`. The factor `sin((r+1)φ) = sin((r+1)u²)` is taken from
/// `u` directly so it keeps full relative precision near `x = 0`.
fn weight_at(u: f64, r: usize) -> (f64, f64) {
    let rf = r as f64;
    let umax = phi_max(r).sqrt();
    let t = (umax - u) * (umax + u);
    if !(t > 0.0 && u > 0.0) {
        return (if u > 0.0 { x_star(r) } else { 0.0 }, 0.0);
    }
    let y = (rf + 1.0) * u * u;
    let (sp, cp) = (y.sin(), -y.cos());
    let sm = ((rf - 1.0) * t).sin();
    let s2 = (2.0 * t).sin();
    let cot = |v: f64| v.cos() / v.sin();
    let log_sigma = (rf + 1.0) / 2.0 * sp.ln() - s2.ln() - (rf - 1.0) / 2.0 * sm.ln();
    let dlog = (rf + 1.0).powi(2) / 2.0 * cp / sp
        - 2.0 * cot(2.0 * t)
        - (rf - 1.0).powi(2) / 2.0 * cot((rf - 1.0) * t);
    // σ · v = sin 2φ · sin φ · sin((r+1)φ)^(1/2) · sin((r-1)φ)^(-1/2) / (π sin 2φ)
    let sigma_v = (t.sin().ln() + 0.5 * sp.ln() - 0.5 * sm.ln()).exp() / PI;
    (log_sigma.exp(), 2.0 * u * (-dlog) * sigma_v)
}

/// `∫ g(x) v(x) dx` over `(0, σ(π/(r+1) - u_max²))`, with `u_max` defaulting
/// to the full support.
fn integrate_weight<G: Fn(f64) -> f64>(r: usize, g: G, u_max: f64, tol: f64) -> Result<f64> {
    integrate(
        |u| {
            let (x, w) = weight_at(u, r);
            if w == 0.0 {
                0.0
            } else {
                g(x) * w
            }
        },
        0.0,
        u_max,
        tol,
    )
}

/// `∫ g(x) v(x) dx` over the support, in the coordinate `φ = π/(r+1) - u²`
/// where the weight `-σ'(φ) v(σ(φ)) dφ` becomes smooth.
pub fn integrate_against_v<G: Fn(f64) -> f64>(r: usize, g: G, tol: f64) -> Result<f64> {
    validate_r(r)?;
    integrate_weight(r, g, phi_max(r).sqrt(), tol)
}

/// `∫ x^k v(x) dx` by quadrature.
pub fn moment_quadrature(k: u32, r: usize) -> Result<f64> {
    integrate_against_v(r, |x| x.powi(k as i32), 1e-14)
}

/// Inverse of `V` on `[0, 1]`, by bisection of `f(φ) = π (1 - p)`.
pub fn quantile(p: f64, r: usize) -> Result<f64> {
    validate_r(r)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("probability {p} outside [0, 1]")));
    }
    if p == 0.0 {
        return Ok(0.0);
    }
    if p == 1.0 {
        return Ok(x_star(r));
    }
    let target = PI * (1.0 - p);
    let (mut lo, mut hi) = (0.0, phi_max(r));
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let phi = PhiCoord::new(mid, r)?;
        if phase_f(&phi) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = 0.5 * (lo + hi);
    Ok(match PhiCoord::new(t, r) {
        Ok(phi) => sigma(&phi),
        Err(_) if t <= 0.0 => x_star(r),
        Err(_) => 0.0,
    })
}

/// `count` i.i.d. draws from `V` by inverse-CDF sampling.
pub fn sample(r: usize, count: usize, seed: u64) -> Result<Vec<f64>> {
    validate_r(r)?;
    if count == 0 {
        return Err(Error::InvalidParams("sample count must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| quantile(rng.random::<f64>(), r))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::{interior_grid, sigma_derivative};

    #[test]
    fn raney_numbers_small() {
        let p3 = RaneyParams::model(3).unwrap();
        let exp3 = [(0, 1.0), (1, 0.5), (2, 7.0 / 8.0), (3, 33.0 / 16.0)];
        for (n, e) in exp3 {
            assert_eq!(raney_number(&p3, n), e);
        }
        let p2 = RaneyParams::model(2).unwrap();
        assert_eq!(raney_number(&p2, 1), 0.5);
        assert_eq!(raney_number(&p2, 2), 5.0 / 8.0);
        let q = raney_number_exact(&p3, 3).unwrap();
        assert_eq!(q, Rational::new(33.into(), 16.into()));
    }

    #[test]
    fn raney_matches_moment_formula_and_float_route() {
        // 1/((r+1)n+1) binom(((r+1)n+1)/2, n)
        for r in 2..=5usize {
            let p = RaneyParams::model(r).unwrap();
            for n in 0..10u64 {
                let top = ((r as f64 + 1.0) * n as f64 + 1.0) / 2.0;
                let alt = gen_binomial(top, n) / ((r as f64 + 1.0) * n as f64 + 1.0);
                let v = raney_number(&p, n);
                assert!((v - alt).abs() <= 1e-12 * v, "r={r} n={n}");
            }
        }
        let irr = RaneyParams::new(2.3, 0.7).unwrap();
        assert!(raney_number_exact(&irr, 2).is_none());
        assert!((raney_number(&irr, 0) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn params_validation() {
        assert!(RaneyParams::new(0.5, 0.5).is_err());
        assert!(RaneyParams::new(2.0, 3.0).is_err());
        assert!(RaneyParams::new(2.0, 0.0).is_err());
        assert!(RaneyParams::model(1).is_err());
        assert_eq!(SupportInterval::new(3).unwrap().upper, x_star(3));
    }

    #[test]
    fn density_reference_and_edges() {
        let v = density_v(2.0, 3).unwrap();
        // 30-digit evaluation of the closed form at φ = π/8
        assert!((v - 0.072_429_800_859_479_876).abs() < 1e-15, "{v}");
        assert!((v - 0.072_428).abs() < 5e-6);
        let near_end = density_v(x_star(3) * (1.0 - 1e-9), 3).unwrap();
        assert!(near_end < 1e-3);
        assert!(density_v(0.0, 3).is_err());
        assert!(density_v(4.0, 3).is_err());
    }

    #[test]
    fn density_identity_against_derivatives() {
        for r in 2..=4 {
            for p in interior_grid(r, 200) {
                let h = 1e-6;
                let up = PhiCoord::new(p.phi() + h, r).unwrap();
                let dn = PhiCoord::new(p.phi() - h, r).unwrap();
                let df = (phase_f(&up) - phase_f(&dn)) / (2.0 * h);
                let rhs = -df / (PI * sigma_derivative(&p));
                let lhs = density_at_phi(&p);
                assert!(
                    (lhs - rhs).abs() <= 1e-6 * lhs.max(1.0),
                    "r={r} phi={}",
                    p.phi()
                );
            }
        }
    }

    #[test]
    fn cdf_forms_agree() {
        for r in 2..=4 {
            for p in interior_grid(r, 1000) {
                let a = cdf_at_phi(&p, CdfForm::Phase);
                let b = cdf_at_phi(&p, CdfForm::Closed);
                assert!((a - b).abs() < 1e-10, "r={r} phi={}", p.phi());
            }
        }
        let v = cdf_v(2.0, 3, CdfForm::Closed);
        assert!((v - 0.925_662_539_664_042_79).abs() < 1e-14, "{v}");
        assert!((v - 0.925_653).abs() < 2e-5);
        assert_eq!(cdf_v(-1.0, 3, CdfForm::Phase), 0.0);
        assert_eq!(cdf_v(4.0, 3, CdfForm::Closed), 1.0);
    }

    #[test]
    fn cdf_matches_integrated_density() {
        // ∫_0^2 v dx over u in (0, sqrt(π/4 - σ⁻¹(2)))
        let start = sigma_inv(2.0, 3).unwrap().phi();
        let m = integrate_weight(3, |_| 1.0, (phi_max(3) - start).sqrt(), 1e-14).unwrap();
        assert!((m - cdf_v(2.0, 3, CdfForm::Phase)).abs() < 1e-12, "{m}");
    }

    #[test]
    fn weight_matches_phi_route() {
        for r in 2..=4 {
            for p in interior_grid(r, 50) {
                let u = (phi_max(r) - p.phi()).sqrt();
                let (x, w) = weight_at(u, r);
                let alt = 2.0 * u * (-sigma_derivative(&p)) * density_at_phi(&p);
                assert!((x - sigma(&p)).abs() <= 1e-10 * x);
                assert!((w - alt).abs() <= 1e-8 * alt, "r={r}: {w} vs {alt}");
            }
        }
        assert!((integrate_against_v(3, |_| 1.0, 1e-14).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn moments_match() {
        for r in 2..=4usize {
            let p = RaneyParams::model(r).unwrap();
            for k in 0..=8u32 {
                let q = moment_quadrature(k, r).unwrap();
                let e = raney_number(&p, k as u64);
                assert!((q - e).abs() <= 1e-8 * e, "r={r} k={k}: {q} vs {e}");
            }
        }
    }

    #[test]
    fn quantile_inverts_cdf() {
        for &p in &[1e-6, 0.1, 0.5, 0.925_653, 0.999] {
            let x = quantile(p, 3).unwrap();
            let back = cdf_v(x, 3, CdfForm::Phase);
            assert!((back - p).abs() < 1e-10, "{p}: {back}");
        }
        assert_eq!(quantile(0.0, 3).unwrap(), 0.0);
        assert_eq!(quantile(1.0, 3).unwrap(), x_star(3));
    }

    #[test]
    fn sampling_is_deterministic_and_supported() {
        let a = sample(3, 1000, 9).unwrap();
        assert_eq!(a, sample(3, 1000, 9).unwrap());
        assert_ne!(a, sample(3, 1000, 10).unwrap());
        assert!(a.iter().all(|x| (0.0..=4.0).contains(x)));
        assert!(sample(3, 0, 1).is_err());
    }
}
