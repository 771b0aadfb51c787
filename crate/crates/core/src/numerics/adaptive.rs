use std::fmt;

use super::bigfloat::BigFloat;
use crate::error::{Error, Result};

pub const DEFAULT_START_BITS: u32 = 256;
pub const DEFAULT_MAX_BITS: u32 = 1 << 20;
pub const DEFAULT_REL_TOL: f64 = 1e-12;

/// Controls the precision-doubling loop.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrecisionPolicy {
    pub start_bits: u32,
    pub max_bits: u32,
    pub rel_tol: f64,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy {
            start_bits: DEFAULT_START_BITS,
            max_bits: DEFAULT_MAX_BITS,
            rel_tol: DEFAULT_REL_TOL,
        }
    }
}

impl PrecisionPolicy {
    pub fn with_tolerance(rel_tol: f64) -> Self {
        PrecisionPolicy {
            rel_tol,
            ..Default::default()
        }
    }
}

/// One evaluation at a fixed working precision.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub value: BigFloat,
    /// log2 of the absolute rounding noise; values below it are
    /// indistinguishable from zero at this precision.
    pub noise_log2: i64,
}

impl Evaluation {
    pub fn exact(value: BigFloat) -> Self {
        Evaluation {
            value,
            noise_log2: i64::MIN,
        }
    }

    fn below_noise(&self) -> bool {
        self.value.top_bit() <= self.noise_log2
    }
}

/// Extended-precision real together with the precision it was obtained at and
/// the observed relative change from the previous (half) precision.
#[derive(Clone, Debug)]
pub struct AdaptiveReal {
    value: BigFloat,
    precision_bits: u32,
    rel_error_bound: f64,
}

impl AdaptiveReal {
    pub fn new(value: BigFloat, precision_bits: u32, rel_error_bound: f64) -> Self {
        AdaptiveReal {
            value,
            precision_bits,
            rel_error_bound,
        }
    }

    pub fn exact(value: BigFloat) -> Self {
        let bits = value.top_bit().max(1) as u32;
        AdaptiveReal::new(value, bits, 0.0)
    }

    pub fn value(&self) -> &BigFloat {
        &self.value
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn rel_error_bound(&self) -> f64 {
        self.rel_error_bound
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    pub fn signum(&self) -> i8 {
        self.value.signum()
    }

    pub fn ln_abs(&self) -> f64 {
        self.value.ln_abs_f64()
    }
}

impl fmt::Display for AdaptiveReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m, e) = self.value.frexp();
        if (-1000..1000).contains(&e) {
            write!(f, "{:e}", self.to_f64())
        } else {
            let log10 = self.ln_abs() / std::f64::consts::LN_10;
            let exp10 = log10.floor();
            let sign = if m < 0.0 { "-" } else { "" };
            write!(f, "{sign}{}e{}", 10f64.powf(log10 - exp10), exp10)
        }
    }
}

/// Relative difference `|a - b| / max(|a|, |b|)`; zero when both are zero.
pub fn rel_diff(a: &BigFloat, b: &BigFloat) -> f64 {
    if a.is_zero() && b.is_zero() {
        return 0.0;
    }
    let diff = a.sub(b, 64);
    if diff.is_zero() {
        return 0.0;
    }
    let scale = if a.cmp_abs(b).is_ge() { a } else { b };
    (diff.ln_abs_f64() - scale.ln_abs_f64()).exp()
}

/// Runs `eval` at doubling precision until two successive results agree to
/// `policy.rel_tol`.
///
/// `resolve_zero` is consulted when two successive results are both below
/// their noise floors; returning `Some(true)` certifies an exact zero.
pub fn stabilize<F, Z>(policy: &PrecisionPolicy, eval: F, resolve_zero: Z) -> Result<AdaptiveReal>
where
    F: Fn(u32) -> Result<Evaluation>,
    Z: Fn() -> Option<bool>,
{
    let mut bits = policy.start_bits.max(16);
    if bits > policy.max_bits {
        return Err(Error::PrecisionCap {
            requested: bits,
            cap: policy.max_bits,
        });
    }
    let mut prev = eval(bits)?;
    let mut zero_checked = false;
    loop {
        let next_bits = bits.saturating_mul(2);
        if next_bits > policy.max_bits {
            return Err(Error::PrecisionCap {
                requested: next_bits,
                cap: policy.max_bits,
            });
        }
        let cur = eval(next_bits)?;
        let rd = rel_diff(&prev.value, &cur.value);
        if rd <= policy.rel_tol {
            let floor = 2f64.powi(-(next_bits.min(1000) as i32) + 4);
            return Ok(AdaptiveReal::new(cur.value, next_bits, rd.max(floor)));
        }
        if !zero_checked && prev.below_noise() && cur.below_noise() {
            zero_checked = true;
            if resolve_zero() == Some(true) {
                return Ok(AdaptiveReal::new(BigFloat::zero(), next_bits, 0.0));
            }
        }
        prev = cur;
        bits = next_bits;
    }
}

/// Convenience for closures without an exact-zero oracle.
pub fn no_zero_oracle() -> Option<bool> {
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn converging_sequence_stabilizes() {
        // value = 1 + 2^-(bits/2): differences shrink with precision
        let policy = PrecisionPolicy::default();
        let res = stabilize(
            &policy,
            |bits| {
                Ok(Evaluation::exact(BigFloat::one().add(
                    &BigFloat::one().scale2(-(bits as i64) / 8),
                    4 * bits,
                )))
            },
            no_zero_oracle,
        )
        .unwrap();
        assert!((res.to_f64() - 1.0).abs() < 1e-12);
        assert!(res.rel_error_bound() <= 1e-12);
        assert!(res.precision_bits() >= 512);
    }

    #[test]
    fn cap_breach_is_an_error() {
        let policy = PrecisionPolicy {
            start_bits: 256,
            max_bits: 1024,
            rel_tol: 1e-12,
        };
        // Never converges: alternates sign.
        let res = stabilize(
            &policy,
            |bits| {
                Ok(Evaluation::exact(BigFloat::from_i64(
                    if bits.trailing_zeros() % 2 == 0 {
                        1
                    } else {
                        -1
                    },
                )))
            },
            no_zero_oracle,
        );
        assert!(matches!(res, Err(Error::PrecisionCap { cap: 1024, .. })));
    }

    #[test]
    fn noise_level_values_consult_zero_oracle() {
        let policy = PrecisionPolicy::default();
        let res = stabilize(
            &policy,
            |bits| {
                Ok(Evaluation {
                    value: BigFloat::one().scale2(-(bits as i64)),
                    noise_log2: -(bits as i64) + 8,
                })
            },
            || Some(true),
        )
        .unwrap();
        assert!(res.value().is_zero());
    }
}
