use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::adaptive::{stabilize, AdaptiveReal, Evaluation, PrecisionPolicy};
use super::bigfloat::{pi, BigFloat};
use crate::error::{Error, Result};

/// Even-index Bernoulli numbers `B_2, B_4, ..., B_{2k}`.
fn bernoulli_even(k: usize) -> Vec<BigRational> {
    let m_max = 2 * k;
    let mut b: Vec<BigRational> = Vec::with_capacity(m_max + 1);
    b.push(BigRational::one());
    for m in 1..=m_max {
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                acc += BigRational::from_integer(binom.clone()) * bj;
            }
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    (1..=k).map(|i| b[2 * i].clone()).collect()
}

/// `ln Γ(x)` at a fixed working precision, via upward shift and the
/// asymptotic series.
pub fn log_gamma_at(x: f64, bits: u32) -> Result<Evaluation> {
    check_positive(x)?;
    let w = bits + 64;
    let xb = BigFloat::from_f64(x).expect("finite");
    let target = 4.0 * bits as f64;
    let shift = if x < target {
        (target - x).ceil() as u64
    } else {
        0
    };
    let mut prod = BigFloat::one();
    for j in 0..shift {
        prod = prod.mul(&xb.add(&BigFloat::from_u64(j), w), w);
    }
    let y = xb.add(&BigFloat::from_u64(shift), w);

    let half = BigFloat::one().scale2(-1);
    let ln_y = y.ln(w);
    let ln_2pi = pi(w).scale2(1).ln(w);
    let mut sum = y
        .sub(&half, w)
        .mul(&ln_y, w)
        .sub(&y, w)
        .add(&ln_2pi.scale2(-1), w);

    let terms = (bits / 16 + 2) as usize;
    let y2 = y.mul(&y, w);
    let mut y_pow = y.clone();
    for (i, b2k) in bernoulli_even(terms).iter().enumerate() {
        let k = (i + 1) as u64;
        let num = BigFloat::from_ratio(b2k.numer(), b2k.denom(), w);
        let term = num.div_u64(2 * k * (2 * k - 1), w).div(&y_pow, w);
        sum = sum.add(&term, w);
        y_pow = y_pow.mul(&y2, w);
    }
    let scale = sum.top_bit();
    let value = if shift > 0 {
        sum.sub(&prod.ln(w), w)
    } else {
        sum
    };
    // The shifted sum and log-product both have magnitude ~2^scale.
    Ok(Evaluation {
        value: value.round(bits),
        noise_log2: scale - bits as i64 + 8,
    })
}

fn check_positive(x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "log_gamma requires finite x > 0, got {x}"
        )));
    }
    Ok(())
}

/// Extended-precision `ln Γ(x)` under the adaptive precision policy.
pub fn log_gamma_ext(x: f64, policy: &PrecisionPolicy) -> Result<AdaptiveReal> {
    check_positive(x)?;
    stabilize(
        policy,
        |bits| log_gamma_at(x, bits),
        || Some(x == 1.0 || x == 2.0),
    )
}

/// `ln Γ(x)` for `x > 0` in double precision (rounded from an extended
/// evaluation, so the relative error is at the rounding level).
pub fn log_gamma(x: f64) -> Result<f64> {
    check_positive(x)?;
    if x == 1.0 || x == 2.0 {
        return Ok(0.0);
    }
    let policy = PrecisionPolicy {
        start_bits: 128,
        rel_tol: 1e-17,
        ..Default::default()
    };
    Ok(log_gamma_ext(x, &policy)?.to_f64())
}

/// Generalized binomial `a (a-1) ... (a-n+1) / n!`.
pub fn gen_binomial(a: f64, n: u64) -> f64 {
    let mut acc = 1.0;
    for j in 0..n {
        acc *= (a - j as f64) / (j + 1) as f64;
    }
    acc
}

/// Exact generalized binomial for rational upper argument.
pub fn gen_binomial_exact(a: &BigRational, n: u64) -> BigRational {
    let mut acc = BigRational::one();
    for j in 0..n {
        let factor = a - BigRational::from_integer(BigInt::from(j));
        acc = acc * factor / BigRational::from_integer(BigInt::from(j + 1));
    }
    acc
}

/// `n!` as an exact integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Exact ratio of factorials `a! / b!` for `a >= b`.
pub fn falling_factorial_ratio(a: u64, b: u64) -> BigInt {
    debug_assert!(a >= b);
    ((b + 1)..=a).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}
