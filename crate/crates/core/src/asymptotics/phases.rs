use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;

use super::{a_of, sigma, PhiCoord};
use crate::charpoly::{evaluate, EvalMode, PolySpec};
use crate::error::{Error, Result};
use crate::numerics::PrecisionPolicy;

/// Pieces of the Plancherel-Rotach right-hand side at one angle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PRParts {
    /// Natural log of the positive prefactor (everything except `(-1)^n`
    /// and the cosine).
    pub envelope_log: f64,
    pub phase_f: f64,
    pub phase_g: f64,
    /// `(-1)^n`.
    pub sign: f64,
}

/// `f(φ) = π/2 - (r-1) a sin φ + arctan((1 - a²)/(2 a sin φ))`, a strictly
/// increasing bijection onto `(0, π)`.
pub fn phase_f(phi: &PhiCoord) -> f64 {
    let r = phi.r() as f64;
    let a = a_of(phi);
    let s = phi.phi().sin();
    FRAC_PI_2 - (r - 1.0) * a * s + ((1.0 - a * a) / (2.0 * a * s)).atan()
}

/// Coefficient of the linear term of `g`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PhaseVariant {
    /// `(π/2 + Σν) φ`.
    #[default]
    PiOverTwo,
    /// `(r/2 + Σν) φ`. With this choice `F̃_n - cos(n f + g) → 0` for every
    /// `r`; the two variants differ by `(π - r) φ / 2`, which is small only
    /// near `r = 3`.
    ROverTwo,
}

/// `g(φ) = (π/2 + Σν) φ - κ arctan(a sin φ / (1 + a cos φ))
///        - ½ arctan((r-1) a² sin 2φ / (r+1 - (r-1) a² cos 2φ))`.
pub fn phase_g(phi: &PhiCoord, spec: &PolySpec) -> f64 {
    phase_g_with(phi, spec, PhaseVariant::PiOverTwo)
}

pub fn phase_g_with(phi: &PhiCoord, spec: &PolySpec, variant: PhaseVariant) -> f64 {
    let r = phi.r() as f64;
    let t = phi.phi();
    let a = a_of(phi);
    let (s, c) = t.sin_cos();
    let kappa = spec.kappa() as f64;
    let nu = spec.nu_sum() as f64;
    let second = (a * s).atan2(1.0 + a * c);
    // Numerator is positive in the interior, so atan2 is the continuous branch.
    let third =
        ((r - 1.0) * a * a * (2.0 * t).sin()).atan2(r + 1.0 - (r - 1.0) * a * a * (2.0 * t).cos());
    let lead = match variant {
        PhaseVariant::PiOverTwo => FRAC_PI_2,
        PhaseVariant::ROverTwo => r / 2.0,
    };
    (lead + nu) * t - kappa * second - 0.5 * third
}

fn envelope_log(phi: &PhiCoord, spec: &PolySpec, n: usize) -> f64 {
    let r = phi.r() as f64;
    let a = a_of(phi);
    let (s, c) = phi.phi().sin_cos();
    let nf = n as f64;
    let nu = spec.nu_sum() as f64;
    let kappa = spec.kappa() as f64;
    let a2 = a * a;
    let quartic = (r + 1.0).powi(2) - 2.0 * (r * r - 1.0) * a2 * (2.0 * phi.phi()).cos()
        + (r - 1.0).powi(2) * a2 * a2;
    let growth =
        0.5 * ((1.0 - a2).powi(2) + (2.0 * a * s).powi(2)).ln() - (1.0 + a2 - 2.0 * a * c).ln();
    2f64.ln() - r / 2.0 * (2.0 * PI).ln()
        + (-r / 2.0 - nu) * (a * nf).ln()
        + kappa / 2.0 * (1.0 + 2.0 * a * c + a2).ln()
        - 0.25 * quartic.ln()
        + nf * a * (r - 1.0) * c
        + nf * growth
}

pub fn phases(phi: &PhiCoord, spec: &PolySpec, n: usize) -> PRParts {
    phases_with(phi, spec, n, PhaseVariant::PiOverTwo)
}

pub fn phases_with(phi: &PhiCoord, spec: &PolySpec, n: usize, variant: PhaseVariant) -> PRParts {
    PRParts {
        envelope_log: envelope_log(phi, spec, n),
        phase_f: phase_f(phi),
        phase_g: phase_g_with(phi, spec, variant),
        sign: if n.is_multiple_of(2) { 1.0 } else { -1.0 },
    }
}

fn check_r(phi: &PhiCoord, spec: &PolySpec) {
    assert_eq!(phi.r(), spec.r(), "angle and polynomial disagree on r");
}

/// `cos(n f(φ) + g(φ))`.
pub fn cosine_approximant(phi: &PhiCoord, spec: &PolySpec, n: usize) -> f64 {
    cosine_approximant_with(phi, spec, n, PhaseVariant::PiOverTwo)
}

pub fn cosine_approximant_with(
    phi: &PhiCoord,
    spec: &PolySpec,
    n: usize,
    variant: PhaseVariant,
) -> f64 {
    check_r(phi, spec);
    (n as f64 * phase_f(phi) + phase_g_with(phi, spec, variant)).cos()
}

/// Leading term of the Plancherel-Rotach formula for `F_n(n^(r-1) σ(φ))`.
/// Overflows to ±inf only if the envelope itself exceeds the double range.
pub fn pr_approx(phi: &PhiCoord, spec: &PolySpec, n: usize) -> f64 {
    pr_approx_with(phi, spec, n, PhaseVariant::PiOverTwo)
}

pub fn pr_approx_with(phi: &PhiCoord, spec: &PolySpec, n: usize, variant: PhaseVariant) -> f64 {
    check_r(phi, spec);
    let p = phases_with(phi, spec, n, variant);
    p.sign * p.envelope_log.exp() * (n as f64 * p.phase_f + p.phase_g).cos()
}

/// `F_n(n^(r-1) σ(φ))` divided by `(-1)^n` times the envelope, evaluated
/// in log space.
pub fn normalized_poly(
    phi: &PhiCoord,
    spec: &PolySpec,
    n: usize,
    policy: &PrecisionPolicy,
) -> Result<f64> {
    check_r(phi, spec);
    let p = phases(phi, spec, n);
    let value = evaluate(spec, n, sigma(phi), EvalMode::Rescaled, policy)?;
    if value.signum() == 0 {
        return Ok(0.0);
    }
    let magnitude = (value.ln_abs() - p.envelope_log).exp();
    Ok(p.sign * value.signum() as f64 * magnitude)
}

/// Parameters of the oscillation figure.
#[derive(Clone, Debug, PartialEq)]
pub struct Fig1Preset {
    pub spec: PolySpec,
    pub n: usize,
    pub phi_min: f64,
    pub phi_max: f64,
    pub points: usize,
    pub variant: PhaseVariant,
}

impl Default for Fig1Preset {
    fn default() -> Self {
        Fig1Preset {
            spec: PolySpec::fig1(),
            n: 150,
            phi_min: 2.0 * PI / 13.0,
            phi_max: PI / 6.0,
            points: 500,
            variant: PhaseVariant::PiOverTwo,
        }
    }
}

impl Fig1Preset {
    pub fn grid(&self) -> Vec<f64> {
        let m = self.points.max(2) - 1;
        (0..self.points)
            .map(|i| self.phi_min + (self.phi_max - self.phi_min) * i as f64 / m as f64)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Fig1Row {
    pub phi: f64,
    pub x: f64,
    pub normalized_poly: f64,
    pub cosine_approximant: f64,
}

/// Samples the normalized polynomial and its cosine approximant on the
/// preset window. Rows are in grid order regardless of scheduling.
pub fn fig1_table(preset: &Fig1Preset, policy: &PrecisionPolicy) -> Result<Vec<Fig1Row>> {
    let r = preset.spec.r();
    if !(preset.phi_min > 0.0
        && preset.phi_min < preset.phi_max
        && preset.phi_max < super::phi_max(r))
    {
        return Err(Error::InvalidParams(format!(
            "window [{}, {}] not inside (0, pi/{})",
            preset.phi_min,
            preset.phi_max,
            r + 1
        )));
    }
    preset
        .grid()
        .par_iter()
        .map(|&t| {
            let phi = PhiCoord::new(t, r)?;
            Ok(Fig1Row {
                phi: t,
                x: sigma(&phi),
                normalized_poly: normalized_poly(&phi, &preset.spec, preset.n, policy)?,
                cosine_approximant: cosine_approximant_with(
                    &phi,
                    &preset.spec,
                    preset.n,
                    preset.variant,
                ),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::{interior_grid, phi_max};
    use std::f64::consts::FRAC_PI_8;

    #[test]
    fn f_reference_value() {
        // Independent route: a = 2^(1/4), sin(π/8), evaluated term by term.
        let a = 2f64.powf(0.25);
        let s = (FRAC_PI_8).sin();
        let expect = FRAC_PI_2 - 2.0 * a * s + ((1.0 - a * a) / (2.0 * a * s)).atan();
        let got = phase_f(&PhiCoord::new(FRAC_PI_8, 3).unwrap());
        assert!((got - expect).abs() < 1e-15);
        // 40-digit evaluation of the same expression
        assert!((got - 0.233_538_019_277_965_81).abs() < 1e-15);
        assert!((got - 0.233_536_8).abs() < 2e-6);
    }

    #[test]
    fn g_reference_value() {
        let spec = PolySpec::fig1();
        let phi = PhiCoord::new(FRAC_PI_8, 3).unwrap();
        let a = 2f64.powf(0.25);
        let (s, c) = FRAC_PI_8.sin_cos();
        // third arctan argument is exactly 1 here
        let expect =
            (FRAC_PI_2 + 7.0) * FRAC_PI_8 - 2.0 * (a * s / (1.0 + a * c)).atan() - FRAC_PI_8;
        let got = phase_g(&phi, &spec);
        assert!((got - expect).abs() < 1e-14);
        assert!((got - 2.545_967).abs() < 1e-5, "{got}");
    }

    #[test]
    fn f_boundary_behaviour() {
        for r in 2..=5 {
            let small = phase_f(&PhiCoord::new(1e-4, r).unwrap());
            assert!(small > 0.0 && small < 1e-9, "r={r}: {small}");
            // near the right end: π - f ≈ (r+1) a sin φ
            let t = phi_max(r) - 1e-10;
            let p = PhiCoord::new(t, r).unwrap();
            let gap = PI - phase_f(&p);
            let lead = (r as f64 + 1.0) * a_of(&p) * t.sin();
            assert!((gap - lead).abs() <= 1e-3 * lead, "r={r}: {gap} vs {lead}");
        }
    }

    #[test]
    fn f_monotone_and_in_range() {
        for r in 2..=5 {
            let vals: Vec<f64> = interior_grid(r, 10_000).iter().map(phase_f).collect();
            assert!(vals.windows(2).all(|w| w[0] < w[1]), "r={r}");
            assert!(vals[0] > 0.0 && *vals.last().unwrap() < PI);
        }
    }

    #[test]
    fn pr_approx_bounded_by_envelope() {
        let spec = PolySpec::fig1();
        let phi = PhiCoord::new(0.49, 3).unwrap();
        let v = pr_approx(&phi, &spec, 150);
        let env = phases(&phi, &spec, 150).envelope_log.exp();
        assert!(v.is_finite());
        assert!(v.abs() <= env);
    }

    #[test]
    fn leading_term_accuracy_r2() {
        // |exact - pr_approx| / envelope at n = 60, φ = π/6
        let spec = PolySpec::new(2, 0, vec![0]).unwrap();
        let phi = PhiCoord::new(PI / 6.0, 2).unwrap();
        let n = 60;
        let norm = normalized_poly(&phi, &spec, n, &PrecisionPolicy::default()).unwrap();
        let p = phases(&phi, &spec, n);
        let exact_over_env = p.sign * norm;
        let dev = |v: PhaseVariant| {
            let approx = pr_approx_with(&phi, &spec, n, v) / p.envelope_log.exp();
            (exact_over_env - approx).abs()
        };
        assert!(
            dev(PhaseVariant::ROverTwo) <= 0.05,
            "{}",
            dev(PhaseVariant::ROverTwo)
        );
        // the π/2 coefficient leaves a phase error of (π - 2) π / 12 here
        assert!(dev(PhaseVariant::PiOverTwo) > 0.1);
    }

    #[test]
    fn variants_differ_by_linear_term() {
        let spec = PolySpec::fig1();
        for p in interior_grid(3, 20) {
            let d = phase_g(&p, &spec) - phase_g_with(&p, &spec, PhaseVariant::ROverTwo);
            assert!((d - (PI - 3.0) / 2.0 * p.phi()).abs() < 1e-14);
        }
    }

    #[test]
    fn cosine_range() {
        let spec = PolySpec::fig1();
        for p in interior_grid(3, 100) {
            let c = cosine_approximant(&p, &spec, 150);
            assert!((-1.0..=1.0).contains(&c));
        }
    }

    #[test]
    fn preset_grid_shape() {
        let p = Fig1Preset::default();
        let g = p.grid();
        assert_eq!(g.len(), 500);
        assert_eq!(g[0], 2.0 * PI / 13.0);
        assert!((g[499] - PI / 6.0).abs() < 1e-15);
    }
}
