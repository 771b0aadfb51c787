use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{coefficients, IntegerPoly, PolySpec, RationalPoly};
use crate::error::{Error, Result};
use crate::numerics::adaptive::{stabilize, Evaluation};
use crate::numerics::gamma::{factorial, falling_factorial_ratio};
use crate::numerics::{AdaptiveReal, BigFloat, PrecisionPolicy, Rational};

/// How [`evaluate`] interprets its argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalMode {
    /// `F_n(x)`.
    Plain,
    /// `F_n(n^(r-1) x)`, the scaling under which the zeros have a limit law.
    Rescaled,
}

fn series_argument(spec: &PolySpec, n: usize, x: f64, mode: EvalMode) -> Result<BigFloat> {
    let xb = BigFloat::from_f64(x)
        .ok_or_else(|| Error::Domain(format!("non-finite evaluation point {x}")))?;
    Ok(match mode {
        EvalMode::Plain => xb,
        EvalMode::Rescaled => {
            let mut scale = BigFloat::one();
            for _ in 1..spec.r() {
                scale = scale.mul_u64(n as u64, u32::MAX);
            }
            xb.mul(&scale, u32::MAX)
        }
    })
}

/// Sums the defining series in increasing `k` at a fixed working precision.
pub fn evaluate_at_precision(
    spec: &PolySpec,
    n: usize,
    x: f64,
    mode: EvalMode,
    bits: u32,
) -> Result<Evaluation> {
    let arg = series_argument(spec, n, x, mode)?;
    Ok(series_at(spec, n, &arg, bits))
}

fn series_at(spec: &PolySpec, n: usize, arg: &BigFloat, bits: u32) -> Evaluation {
    let c0_den = spec
        .nu()
        .iter()
        .fold(BigInt::one(), |acc, &v| acc * factorial(v as u64));
    let mut term = BigFloat::one().div(&BigFloat::from_bigint(&c0_den), bits);
    let neg_arg = arg.neg();
    let mut sum = term.clone();
    let mut max_top = term.top_bit();
    for k in 1..=n as u64 {
        let (num, den) = spec.term_ratio(n as u64, k);
        term = term
            .mul(&neg_arg, bits)
            .mul_u64(num, bits)
            .div_u64(den, bits);
        if term.is_zero() {
            break;
        }
        max_top = max_top.max(term.top_bit());
        sum = sum.add(&term, bits);
    }
    // Roughly 3 roundings per term, each at most half an ulp of the largest term.
    let slack = (64 - (3 * (n as u64 + 1)).leading_zeros()) as i64 + 2;
    Evaluation {
        value: sum,
        noise_log2: max_top - bits as i64 + slack,
    }
}

/// `F_n(x)` (or `F_n(n^(r-1) x)`) under the adaptive precision policy.
pub fn evaluate(
    spec: &PolySpec,
    n: usize,
    x: f64,
    mode: EvalMode,
    policy: &PrecisionPolicy,
) -> Result<AdaptiveReal> {
    let arg = series_argument(spec, n, x, mode)?;
    if n == 0 {
        return Ok(AdaptiveReal::new(
            series_at(spec, 0, &arg, policy.start_bits).value,
            policy.start_bits,
            0.0,
        ));
    }
    stabilize(
        policy,
        |bits| Ok(series_at(spec, n, &arg, bits)),
        || {
            let (m, s) = arg.to_dyadic();
            Some(
                IntegerPoly::new(spec, n)
                    .eval_dyadic_scaled(&m, s)
                    .is_zero(),
            )
        },
    )
}

/// Exact `F_n(x)` for rational `x`, through the integer-coefficient form.
pub fn evaluate_exact(spec: &PolySpec, n: usize, x: &Rational) -> Rational {
    let ip = IntegerPoly::new(spec, n);
    let p = x.numer();
    let q = x.denom();
    // sum_k A_k (-p)^k q^(n-k) / (L q^n)
    let neg_p = -p;
    let mut acc = ip.magnitudes[n].clone();
    let mut q_pow = BigInt::one();
    for k in (0..n).rev() {
        q_pow *= q;
        acc = acc * &neg_p + &ip.magnitudes[k] * &q_pow;
    }
    let den = ip.scale * q_pow;
    Rational::new(acc, den)
}

/// Plain Horner evaluation of a rational polynomial.
pub fn horner_rational(poly: &RationalPoly, x: &Rational) -> Rational {
    poly.coeffs()
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * x + c)
}

/// `(-1)^n n! prod_i (n+ν_i)! (κ+n-1)! / (κ+2n-1)!`, the factor turning `F_n`
/// into the monic `P_n`.
pub fn avg_charpoly_prefactor(spec: &PolySpec, n: usize) -> Result<Rational> {
    if n == 0 {
        return Err(Error::Domain(
            "average characteristic polynomial needs n >= 1".into(),
        ));
    }
    let n64 = n as u64;
    let kappa = spec.kappa() as u64;
    let num = spec
        .nu()
        .iter()
        .fold(factorial(n64), |acc, &v| acc * factorial(n64 + v as u64));
    let den = falling_factorial_ratio(kappa + 2 * n64 - 1, kappa + n64 - 1);
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    Ok(Rational::new(num * sign, den))
}

/// Exact coefficients of `P_n`.
pub fn avg_charpoly_coefficients(spec: &PolySpec, n: usize) -> Result<RationalPoly> {
    let pre = avg_charpoly_prefactor(spec, n)?;
    Ok(RationalPoly::new(
        coefficients(spec, n)
            .coeffs()
            .iter()
            .map(|c| c * &pre)
            .collect(),
    ))
}

/// `P_n(x)` under the adaptive precision policy.
pub fn evaluate_avg_charpoly(
    spec: &PolySpec,
    n: usize,
    x: f64,
    policy: &PrecisionPolicy,
) -> Result<AdaptiveReal> {
    let pre = avg_charpoly_prefactor(spec, n)?;
    let arg = series_argument(spec, n, x, EvalMode::Plain)?;
    stabilize(
        policy,
        |bits| {
            let f = series_at(spec, n, &arg, bits);
            let pre_b = BigFloat::from_ratio(pre.numer(), pre.denom(), bits);
            let shift = pre_b.top_bit();
            Ok(Evaluation {
                value: f.value.mul(&pre_b, bits),
                noise_log2: f.noise_log2.saturating_add(shift),
            })
        },
        || {
            let (m, s) = arg.to_dyadic();
            Some(
                IntegerPoly::new(spec, n)
                    .eval_dyadic_scaled(&m, s)
                    .is_zero(),
            )
        },
    )
}
