//! The polynomials `F_n` and the monic average characteristic polynomials
//! `P_n` of the Gaussian / truncated-unitary product, with certified zeros.
//!
//! ```text
//! F_n(x) = sum_{k=0}^{n} C(n,k) (n+κ)_k (-x)^k / (k! (ν_1+k)! ... (ν_{r-1}+k)!)
//! P_n(x) = (-1)^n n! prod_i Γ(n+1+ν_i) Γ(κ+n)/Γ(κ+2n) F_n(x)
//! ```

mod eval;
mod zeros;

pub use eval::{
    avg_charpoly_coefficients, avg_charpoly_prefactor, evaluate, evaluate_at_precision,
    evaluate_avg_charpoly, evaluate_exact, horner_rational, EvalMode,
};
pub use zeros::{zeros, zeros_with_tolerance, Bracket, CertifiedZeros};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::numerics::gamma::{factorial, falling_factorial_ratio};
use crate::numerics::Rational;

/// Integer parameters `(r, κ, ν_1..ν_{r-1})`; `ν_r = 0` implicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolySpec {
    r: usize,
    kappa: u32,
    nu: Vec<u32>,
}

impl PolySpec {
    pub fn new(r: usize, kappa: u32, nu: Vec<u32>) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidParams(format!("r must be >= 2, got {r}")));
        }
        if nu.len() != r - 1 {
            return Err(Error::InvalidParams(format!(
                "expected {} values of nu for r = {r}, got {}",
                r - 1,
                nu.len()
            )));
        }
        Ok(PolySpec { r, kappa, nu })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn kappa(&self) -> u32 {
        self.kappa
    }

    pub fn nu(&self) -> &[u32] {
        &self.nu
    }

    pub fn nu_sum(&self) -> u32 {
        self.nu.iter().sum()
    }

    /// The preset used for the oscillation figure: `r = 3, κ = 2, ν = [2, 5]`.
    pub fn fig1() -> Self {
        PolySpec::new(3, 2, vec![2, 5]).expect("valid preset")
    }

    /// `(n-k+1)(n+κ+k-1)` and `k^2 prod_j (ν_j+k)`: the ratio `|c_k / c_{k-1}|`.
    pub(crate) fn term_ratio(&self, n: u64, k: u64) -> (u64, u64) {
        let num = (n - k + 1) * (n + self.kappa as u64 + k - 1);
        let den = self.nu.iter().fold(k * k, |acc, &v| acc * (v as u64 + k));
        (num, den)
    }
}

/// Polynomial with exact rational coefficients, `coeffs[k]` multiplying `x^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: Vec<Rational>,
}

impl RationalPoly {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        RationalPoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> &Rational {
        self.coeffs.last().expect("non-empty polynomial")
    }
}

/// Exact coefficients of `F_n`.
pub fn coefficients(spec: &PolySpec, n: usize) -> RationalPoly {
    let n64 = n as u64;
    let c0_den = spec
        .nu
        .iter()
        .fold(BigInt::one(), |acc, &v| acc * factorial(v as u64));
    let mut c = Rational::new(BigInt::one(), c0_den);
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(c.clone());
    for k in 1..=n64 {
        let (num, den) = spec.term_ratio(n64, k);
        c = -c * Rational::new(BigInt::from(num), BigInt::from(den));
        coeffs.push(c.clone());
    }
    RationalPoly::new(coeffs)
}

/// `F_n` scaled by `L = n! prod_j (ν_j+n)!` so that every coefficient is an
/// integer. Stored as magnitudes `A_k`; the coefficient of `x^k` is
/// `(-1)^k A_k / L`.
#[derive(Clone, Debug)]
pub(crate) struct IntegerPoly {
    pub magnitudes: Vec<BigInt>,
    pub scale: BigInt,
}

impl IntegerPoly {
    pub fn new(spec: &PolySpec, n: usize) -> Self {
        let n64 = n as u64;
        let mut magnitudes = Vec::with_capacity(n + 1);
        // A_k = C(n,k) (n+κ)_k (n!/k!) prod_j (ν_j+n)!/(ν_j+k)!
        let mut binom = BigInt::one();
        let mut rising = BigInt::one();
        for k in 0..=n64 {
            if k > 0 {
                binom = binom * BigInt::from(n64 - k + 1) / BigInt::from(k);
                rising *= BigInt::from(n64 + spec.kappa as u64 + k - 1);
            }
            let mut a = &binom * &rising * falling_factorial_ratio(n64, k);
            for &v in &spec.nu {
                a *= falling_factorial_ratio(v as u64 + n64, v as u64 + k);
            }
            magnitudes.push(a);
        }
        let scale = spec
            .nu
            .iter()
            .fold(factorial(n64), |acc, &v| acc * factorial(v as u64 + n64));
        IntegerPoly { magnitudes, scale }
    }

    pub fn degree(&self) -> usize {
        self.magnitudes.len() - 1
    }

    /// `L * 2^(s n) * F_n(m / 2^s)` as an exact integer.
    pub fn eval_dyadic_scaled(&self, m: &BigInt, s: u64) -> BigInt {
        let n = self.degree() as u64;
        let neg_m = -m;
        let mut acc = self.magnitudes[self.degree()].clone();
        for k in (0..self.degree()).rev() {
            acc = acc * &neg_m + (&self.magnitudes[k] << (s * (n - k as u64)));
        }
        acc
    }

    /// Exact sign of `F_n(x)` at a finite double.
    pub fn sign_at(&self, x: f64) -> i8 {
        let (m, s) = dyadic_parts(x);
        let v = self.eval_dyadic_scaled(&m, s);
        if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        }
    }

    /// Exact value of `F_n` at a finite double.
    #[cfg(test)]
    pub fn value_at(&self, x: f64) -> Rational {
        let (m, s) = dyadic_parts(x);
        let v = self.eval_dyadic_scaled(&m, s);
        let den = &self.scale << (s * self.degree() as u64);
        Rational::new(v, den)
    }
}

/// Writes a finite double exactly as `m / 2^s` with `s >= 0`.
pub(crate) fn dyadic_parts(x: f64) -> (BigInt, u64) {
    let b = crate::numerics::BigFloat::from_f64(x).expect("finite argument");
    b.to_dyadic()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn spec_validation() {
        assert!(PolySpec::new(1, 0, vec![]).is_err());
        assert!(PolySpec::new(3, 0, vec![1]).is_err());
        assert!(PolySpec::new(3, 0, vec![1, 2]).is_ok());
    }

    #[test]
    fn small_coefficients() {
        let spec = PolySpec::new(2, 0, vec![0]).unwrap();
        assert_eq!(coefficients(&spec, 1).coeffs(), &[q(1, 1), q(-1, 1)]);
        assert_eq!(
            coefficients(&spec, 2).coeffs(),
            &[q(1, 1), q(-4, 1), q(3, 2)]
        );
        let spec = PolySpec::new(3, 0, vec![1, 2]).unwrap();
        assert_eq!(coefficients(&spec, 0).coeffs(), &[q(1, 2)]);
    }

    #[test]
    fn coefficient_signs_alternate() {
        let spec = PolySpec::new(4, 3, vec![1, 0, 2]).unwrap();
        let poly = coefficients(&spec, 9);
        for (k, c) in poly.coeffs().iter().enumerate() {
            assert_eq!(c.is_positive(), k % 2 == 0, "k = {k}");
        }
    }

    #[test]
    fn integer_form_matches_rational_form() {
        let spec = PolySpec::new(3, 2, vec![2, 5]).unwrap();
        let n = 7;
        let ip = IntegerPoly::new(&spec, n);
        let rp = coefficients(&spec, n);
        for (k, c) in rp.coeffs().iter().enumerate() {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let from_int = Rational::new(sign * ip.magnitudes[k].clone(), ip.scale.clone());
            assert_eq!(&from_int, c);
        }
    }

    #[test]
    fn dyadic_sign_and_value() {
        let spec = PolySpec::new(2, 0, vec![0]).unwrap();
        let ip = IntegerPoly::new(&spec, 2);
        assert_eq!(ip.value_at(2.0), q(-1, 1));
        assert_eq!(ip.sign_at(0.25), 1);
        assert_eq!(ip.sign_at(0.5), -1);
        let ip1 = IntegerPoly::new(&spec, 1);
        assert_eq!(ip1.sign_at(1.0), 0);
    }
}
