use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;

use super::{coefficients, IntegerPoly, PolySpec};
use crate::asymptotics::{phase_f, phase_g_with, sigma, PhaseVariant, PhiCoord};
use crate::error::{Error, Result};
use crate::numerics::Rational;

pub const DEFAULT_ZERO_TOL: f64 = 1e-12;
const MAX_SCAN_POINTS: usize = 1 << 22;

/// Interval with exactly representable (dyadic) endpoints on which `F_n`
/// has exact opposite signs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub sign_lo: i8,
    pub sign_hi: i8,
}

impl Bracket {
    pub fn lo_rational(&self) -> Rational {
        Rational::from_float(self.lo).expect("finite endpoint")
    }

    pub fn hi_rational(&self) -> Rational {
        Rational::from_float(self.hi).expect("finite endpoint")
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

/// All `n` zeros of `F_n`, each isolated by an exact sign change.
#[derive(Clone, Debug)]
pub struct CertifiedZeros {
    n: usize,
    zeros: Vec<f64>,
    brackets: Vec<Bracket>,
}

impl CertifiedZeros {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn zeros(&self) -> &[f64] {
        &self.zeros
    }

    pub fn brackets(&self) -> &[Bracket] {
        &self.brackets
    }

    /// Zeros divided by `n^(r-1)`.
    pub fn rescaled(&self, r: usize) -> Vec<f64> {
        let scale = (self.n as f64).powi(r as i32 - 1);
        self.zeros.iter().map(|z| z / scale).collect()
    }
}

pub fn zeros(spec: &PolySpec, n: usize) -> Result<CertifiedZeros> {
    zeros_with_tolerance(spec, n, DEFAULT_ZERO_TOL)
}

/// Certified zero finder: brackets seeded from the asymptotic phase condition,
/// falling back to an exhaustive geometric sign scan, then bisection with
/// exact rational signs down to `rel_tol` relative width.
pub fn zeros_with_tolerance(spec: &PolySpec, n: usize, rel_tol: f64) -> Result<CertifiedZeros> {
    if n == 0 {
        return Ok(CertifiedZeros {
            n,
            zeros: vec![],
            brackets: vec![],
        });
    }
    let ip = IntegerPoly::new(spec, n);
    let (lower, upper) = root_bounds(spec, n)?;

    let mut brackets = brackets_from_points(&ip, &seed_separators(spec, n, lower, upper));
    if brackets.len() != n {
        brackets = scan_brackets(&ip, n, lower, upper)?;
    }
    if brackets.len() != n {
        return Err(Error::Certification(format!(
            "found {} sign changes for degree {n} ({spec:?})",
            brackets.len()
        )));
    }

    let refined: Vec<Bracket> = brackets
        .par_iter()
        .map(|b| refine(&ip, *b, rel_tol))
        .collect();
    let mut zeros: Vec<f64> = refined.iter().map(Bracket::midpoint).collect();
    zeros.sort_by(f64::total_cmp);
    Ok(CertifiedZeros {
        n,
        zeros,
        brackets: refined,
    })
}

/// Any zero lies in `[c0/|c1|, |c_{n-1}/c_n|]` when all zeros are positive;
/// these are only search limits, the certificate is the sign pattern.
fn root_bounds(spec: &PolySpec, n: usize) -> Result<(f64, f64)> {
    let poly = coefficients(spec, n);
    let c = poly.coeffs();
    let ratio =
        |a: &Rational, b: &Rational| -> f64 { (a.abs() / b.abs()).to_f64().unwrap_or(f64::NAN) };
    let lower = 0.5 * ratio(&c[0], &c[1]);
    let upper = 1.01 * ratio(&c[n - 1], &c[n]) + 1.0;
    if !(lower > 0.0 && upper.is_finite() && upper > lower) {
        return Err(Error::Numeric(format!(
            "degenerate zero search range [{lower}, {upper}]"
        )));
    }
    Ok((lower, upper))
}

/// Points separating the asymptotically predicted zeros
/// `n f(φ) + g(φ) = π/2 + kπ`, mapped through `x = n^(r-1) σ(φ)`.
fn seed_separators(spec: &PolySpec, n: usize, lower: f64, upper: f64) -> Vec<f64> {
    let r = spec.r();
    let end = std::f64::consts::PI / (r as f64 + 1.0);
    let scale = (n as f64).powi(r as i32 - 1);
    let psi = |phi: f64| -> Option<f64> {
        let p = PhiCoord::new(phi, r).ok()?;
        Some(n as f64 * phase_f(&p) + phase_g_with(&p, spec, PhaseVariant::ROverTwo))
    };
    let grid = 16 * (n + 1);
    let mut seeds = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for i in 1..grid {
        let phi = end * i as f64 / grid as f64;
        let Some(v) = psi(phi) else { continue };
        if let Some((p0, v0)) = prev {
            let k0 = ((v0 - std::f64::consts::FRAC_PI_2) / std::f64::consts::PI).floor();
            let k1 = ((v - std::f64::consts::FRAC_PI_2) / std::f64::consts::PI).floor();
            if k0 != k1 {
                let target = std::f64::consts::FRAC_PI_2 + k0.max(k1) * std::f64::consts::PI;
                let (mut a, mut b) = (p0, phi);
                for _ in 0..60 {
                    let m = 0.5 * (a + b);
                    match psi(m) {
                        Some(vm) if (vm - target).signum() == (v0 - target).signum() => a = m,
                        _ => b = m,
                    }
                }
                if let Ok(p) = PhiCoord::new(0.5 * (a + b), r) {
                    seeds.push(scale * sigma(&p));
                }
            }
        }
        prev = Some((phi, v));
    }
    seeds.retain(|x| *x > lower && *x < upper);
    seeds.sort_by(f64::total_cmp);
    let mut points = Vec::with_capacity(seeds.len() + 1);
    points.push(lower);
    points.extend(seeds.windows(2).map(|w| (w[0] * w[1]).sqrt()));
    points.push(upper);
    points
}

fn nonzero_sign(ip: &IntegerPoly, x: f64) -> (f64, i8) {
    let mut x = x;
    loop {
        let s = ip.sign_at(x);
        if s != 0 {
            return (x, s);
        }
        // Landed exactly on a zero; step to the next double.
        x = f64::from_bits(x.to_bits() + 1);
    }
}

fn brackets_from_points(ip: &IntegerPoly, points: &[f64]) -> Vec<Bracket> {
    let signed: Vec<(f64, i8)> = points.par_iter().map(|&x| nonzero_sign(ip, x)).collect();
    signed
        .windows(2)
        .filter(|w| w[0].1 != w[1].1 && w[0].0 < w[1].0)
        .map(|w| Bracket {
            lo: w[0].0,
            hi: w[1].0,
            sign_lo: w[0].1,
            sign_hi: w[1].1,
        })
        .collect()
}

fn scan_brackets(ip: &IntegerPoly, n: usize, lower: f64, upper: f64) -> Result<Vec<Bracket>> {
    let mut points = 4 * (n + 1);
    let ratio = upper / lower;
    loop {
        let grid: Vec<f64> = (0..=points)
            .map(|i| lower * ratio.powf(i as f64 / points as f64))
            .collect();
        let found = brackets_from_points(ip, &grid);
        if found.len() >= n || points >= MAX_SCAN_POINTS {
            return Ok(found);
        }
        points *= 2;
    }
}

fn refine(ip: &IntegerPoly, b: Bracket, rel_tol: f64) -> Bracket {
    let mut b = b;
    while b.hi - b.lo > rel_tol * b.lo.abs() {
        let mid = b.midpoint();
        if mid <= b.lo || mid >= b.hi {
            break;
        }
        match ip.sign_at(mid) {
            0 => {
                return Bracket {
                    lo: mid,
                    hi: mid,
                    sign_lo: 0,
                    sign_hi: 0,
                }
            }
            s if s == b.sign_lo => b.lo = mid,
            _ => b.hi = mid,
        }
    }
    b
}
