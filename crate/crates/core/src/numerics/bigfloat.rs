//! Minimal binary floating point with arbitrary-size mantissa.
//!
//! A value is `(-1)^neg * mag * 2^exp`. Every arithmetic operation takes the
//! target precision in bits explicitly and rounds to nearest; there is no
//! ambient precision state.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigFloat {
    neg: bool,
    mag: BigUint,
    exp: i64,
}

/// `m * 2^e` without intermediate overflow for moderately out-of-range `e`.
pub fn ldexp(m: f64, e: i64) -> f64 {
    let mut v = m;
    let mut e = e;
    while e > 1000 {
        v *= 2f64.powi(1000);
        e -= 1000;
        if v.is_infinite() {
            return v;
        }
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        e += 1000;
        if v == 0.0 {
            return v;
        }
    }
    v * 2f64.powi(e as i32)
}

impl BigFloat {
    pub fn zero() -> Self {
        BigFloat {
            neg: false,
            mag: BigUint::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Self::from_u64(1)
    }

    pub fn from_u64(v: u64) -> Self {
        BigFloat {
            neg: false,
            mag: BigUint::from(v),
            exp: 0,
        }
        .normalized()
    }

    pub fn from_i64(v: i64) -> Self {
        let mut out = Self::from_u64(v.unsigned_abs());
        out.neg = v < 0 && !out.mag.is_zero();
        out
    }

    pub fn from_biguint(v: BigUint) -> Self {
        BigFloat {
            neg: false,
            mag: v,
            exp: 0,
        }
        .normalized()
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        let neg = v.sign() == Sign::Minus;
        BigFloat {
            neg,
            mag: v.magnitude().clone(),
            exp: 0,
        }
        .normalized()
    }

    /// Exact conversion; `None` for NaN or infinities.
    pub fn from_f64(x: f64) -> Option<Self> {
        if !x.is_finite() {
            return None;
        }
        if x == 0.0 {
            return Some(Self::zero());
        }
        let bits = x.to_bits();
        let neg = (bits >> 63) == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if biased == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        Some(
            BigFloat {
                neg,
                mag: BigUint::from(mant),
                exp,
            }
            .normalized(),
        )
    }

    /// `num / den` correctly rounded to `prec` bits.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Self {
        Self::from_bigint(num).div(&Self::from_bigint(den), prec)
    }

    /// Strips trailing zero bits so equal values have equal representations.
    fn normalized(mut self) -> Self {
        if self.mag.is_zero() {
            return Self::zero();
        }
        let tz = self.mag.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mag >>= tz;
            self.exp += tz as i64;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.mag.is_zero()
    }

    pub fn signum(&self) -> i8 {
        if self.mag.is_zero() {
            0
        } else if self.neg {
            -1
        } else {
            1
        }
    }

    pub fn abs(&self) -> Self {
        BigFloat {
            neg: false,
            ..self.clone()
        }
    }

    pub fn neg(&self) -> Self {
        BigFloat {
            neg: !self.neg && !self.mag.is_zero(),
            ..self.clone()
        }
    }

    /// Position of the leading bit: `2^(top-1) <= |self| < 2^top`.
    /// Returns `i64::MIN` for zero.
    pub fn top_bit(&self) -> i64 {
        if self.mag.is_zero() {
            i64::MIN
        } else {
            self.mag.bits() as i64 + self.exp
        }
    }

    pub fn round(&self, prec: u32) -> Self {
        let prec = prec.max(2) as u64;
        let bits = self.mag.bits();
        if bits <= prec {
            return self.clone();
        }
        let shift = bits - prec;
        let mut kept = &self.mag >> shift;
        if self.mag.bit(shift - 1) {
            kept += 1u32;
        }
        BigFloat {
            neg: self.neg,
            mag: kept,
            exp: self.exp + shift as i64,
        }
        .normalized()
    }

    pub fn add(&self, other: &Self, prec: u32) -> Self {
        if self.is_zero() {
            return other.round(prec);
        }
        if other.is_zero() {
            return self.round(prec);
        }
        // An operand lying entirely below the rounding position of the other
        // cannot change the rounded result except through ties.
        let gap = self.top_bit() - other.top_bit();
        let guard = prec as i64 + 4;
        if gap > guard {
            return self.round(prec);
        }
        if -gap > guard {
            return other.round(prec);
        }
        let exp = self.exp.min(other.exp);
        let a = &self.mag << (self.exp - exp) as u64;
        let b = &other.mag << (other.exp - exp) as u64;
        let (neg, mag) = if self.neg == other.neg {
            (self.neg, a + b)
        } else {
            match a.cmp(&b) {
                Ordering::Greater => (self.neg, a - b),
                Ordering::Less => (other.neg, b - a),
                Ordering::Equal => return Self::zero(),
            }
        };
        BigFloat { neg, mag, exp }.normalized().round(prec)
    }

    pub fn sub(&self, other: &Self, prec: u32) -> Self {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &Self, prec: u32) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        BigFloat {
            neg: self.neg != other.neg,
            mag: &self.mag * &other.mag,
            exp: self.exp + other.exp,
        }
        .normalized()
        .round(prec)
    }

    pub fn mul_u64(&self, k: u64, prec: u32) -> Self {
        if k == 0 || self.is_zero() {
            return Self::zero();
        }
        BigFloat {
            neg: self.neg,
            mag: &self.mag * k,
            exp: self.exp,
        }
        .normalized()
        .round(prec)
    }

    pub fn div(&self, other: &Self, prec: u32) -> Self {
        assert!(!other.is_zero(), "BigFloat division by zero");
        if self.is_zero() {
            return Self::zero();
        }
        let want = prec as i64 + 3;
        let shift = (want + other.mag.bits() as i64 - self.mag.bits() as i64).max(0) as u64;
        let num = &self.mag << shift;
        let (q, rem) = num.div_rem(&other.mag);
        // Sticky bit keeps round-to-nearest honest when the quotient is inexact.
        let (q, extra) = if rem.is_zero() {
            (q, 0)
        } else {
            ((q << 1u32) | BigUint::one(), 1)
        };
        BigFloat {
            neg: self.neg != other.neg,
            mag: q,
            exp: self.exp - other.exp - shift as i64 - extra,
        }
        .normalized()
        .round(prec)
    }

    pub fn div_u64(&self, k: u64, prec: u32) -> Self {
        self.div(&Self::from_u64(k), prec)
    }

    /// Multiplication by `2^k`; exact.
    pub fn scale2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        BigFloat {
            exp: self.exp + k,
            ..self.clone()
        }
    }

    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let (ta, tb) = (self.top_bit(), other.top_bit());
        if ta != tb {
            return ta.cmp(&tb);
        }
        let exp = self.exp.min(other.exp);
        let a = &self.mag << (self.exp - exp) as u64;
        let b = &other.mag << (other.exp - exp) as u64;
        a.cmp(&b)
    }

    /// `(m, e)` with `self ~= m * 2^e`, `0.5 <= |m| < 1` (or `m == 0`).
    pub fn frexp(&self) -> (f64, i64) {
        if self.is_zero() {
            return (0.0, 0);
        }
        let bits = self.mag.bits();
        let top = if bits > 64 {
            (&self.mag >> (bits - 64)).to_u64().unwrap_or(u64::MAX)
        } else {
            self.mag.to_u64().unwrap_or(u64::MAX)
        };
        let width = bits.min(64) as i32;
        let mut m = top as f64 / 2f64.powi(width);
        let mut e = self.exp + bits as i64;
        if m >= 1.0 {
            m *= 0.5;
            e += 1;
        }
        (if self.neg { -m } else { m }, e)
    }

    /// Nearest `f64`; saturates to infinities or zero outside the range.
    pub fn to_f64(&self) -> f64 {
        let (m, e) = self.frexp();
        ldexp(m, e)
    }

    /// Natural log of the absolute value as `f64`; `-inf` for zero.
    pub fn ln_abs_f64(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let (m, e) = self.frexp();
        m.abs().ln() + e as f64 * std::f64::consts::LN_2
    }

    /// Exact integer part toward zero, if `self` is an integer.
    pub fn to_bigint_exact(&self) -> Option<BigInt> {
        if self.exp < 0 {
            return None;
        }
        let mag = &self.mag << self.exp as u64;
        let sign = if self.is_zero() {
            Sign::NoSign
        } else if self.neg {
            Sign::Minus
        } else {
            Sign::Plus
        };
        Some(BigInt::from_biguint(sign, mag))
    }

    /// Exact rational value as `(numerator, log2 of denominator)`.
    pub fn to_dyadic(&self) -> (BigInt, u64) {
        let sign = if self.neg { Sign::Minus } else { Sign::Plus };
        if self.exp >= 0 {
            (BigInt::from_biguint(sign, &self.mag << self.exp as u64), 0)
        } else {
            (
                BigInt::from_biguint(sign, self.mag.clone()),
                (-self.exp) as u64,
            )
        }
    }

    /// Natural logarithm of a positive value.
    pub fn ln(&self, prec: u32) -> Self {
        assert!(
            self.signum() > 0,
            "BigFloat::ln requires a positive argument"
        );
        let work = prec + 32;
        // self = m * 2^k with m in [1/2, 1); move m to [sqrt(1/2), sqrt(2)).
        let (_, mut k) = self.frexp();
        let mut m = self.scale2(-k);
        if m.to_f64() < std::f64::consts::FRAC_1_SQRT_2 {
            m = m.scale2(1);
            k -= 1;
        }
        let one = Self::one();
        let y = m.sub(&one, work).div(&m.add(&one, work), work);
        let ln_m = atanh_series(&y, work).scale2(1);
        let ln2 = ln2(work);
        ln_m.add(&ln2.mul(&Self::from_i64(k), work), work)
            .round(prec)
    }
}

/// `atanh(y)` by its Taylor series; intended for `|y| <= 1/3` or so.
fn atanh_series(y: &BigFloat, prec: u32) -> BigFloat {
    if y.is_zero() {
        return BigFloat::zero();
    }
    let y2 = y.mul(y, prec);
    let mut power = y.clone();
    let mut sum = y.clone();
    let mut k = 1u64;
    loop {
        power = power.mul(&y2, prec);
        let term = power.div_u64(2 * k + 1, prec);
        if term.is_zero() || term.top_bit() < sum.top_bit() - prec as i64 - 4 {
            break;
        }
        sum = sum.add(&term, prec);
        k += 1;
    }
    sum
}

pub fn ln2(prec: u32) -> BigFloat {
    let third = BigFloat::one().div_u64(3, prec + 16);
    atanh_series(&third, prec + 16).scale2(1).round(prec)
}

/// `atan(1/m)` for an integer `m >= 2`.
fn atan_inv(m: u64, prec: u32) -> BigFloat {
    let m2 = m * m;
    let mut power = BigFloat::one().div_u64(m, prec);
    let mut sum = power.clone();
    let mut k = 1u64;
    loop {
        power = power.div_u64(m2, prec);
        let term = power.div_u64(2 * k + 1, prec);
        if term.is_zero() || term.top_bit() < sum.top_bit() - prec as i64 - 4 {
            break;
        }
        sum = if k % 2 == 1 {
            sum.sub(&term, prec)
        } else {
            sum.add(&term, prec)
        };
        k += 1;
    }
    sum
}

/// Machin's formula.
pub fn pi(prec: u32) -> BigFloat {
    let w = prec + 16;
    atan_inv(5, w)
        .mul_u64(16, w)
        .sub(&atan_inv(239, w).mul_u64(4, w), w)
        .round(prec)
}
