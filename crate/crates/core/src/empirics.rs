//! Empirical measures with equal weights, the one-sample Kolmogorov-Smirnov
//! statistic and histograms.

use crate::charpoly::CertifiedZeros;
use crate::error::{Error, Result};

/// Uniform probability measure on a finite multiset of reals.
#[derive(Clone, Debug, PartialEq)]
pub struct EmpiricalMeasure {
    atoms: Vec<f64>,
}

impl EmpiricalMeasure {
    /// Sorts the atoms; rejects an empty set and NaN.
    pub fn new(mut atoms: Vec<f64>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidParams(
                "empirical measure needs at least one atom".into(),
            ));
        }
        if atoms.iter().any(|a| a.is_nan()) {
            return Err(Error::InvalidParams("NaN atom".into()));
        }
        atoms.sort_by(f64::total_cmp);
        Ok(EmpiricalMeasure { atoms })
    }

    pub fn atoms(&self) -> &[f64] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn weight(&self) -> f64 {
        1.0 / self.atoms.len() as f64
    }

    /// Mass of `(-∞, x]`.
    pub fn cdf(&self, x: f64) -> f64 {
        self.atoms.partition_point(|a| *a <= x) as f64 * self.weight()
    }

    pub fn moment(&self, k: i32) -> f64 {
        self.atoms.iter().map(|a| a.powi(k)).sum::<f64>() * self.weight()
    }

    pub fn mean(&self) -> f64 {
        self.moment(1)
    }
}

/// Zeros divided by `scale`, each with weight `1/n`.
pub fn zero_counting_measure(zeros: &CertifiedZeros, scale: f64) -> Result<EmpiricalMeasure> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::InvalidParams(format!(
            "scale must be positive, got {scale}"
        )));
    }
    EmpiricalMeasure::new(zeros.zeros().iter().map(|z| z / scale).collect())
}

/// `sup_x |F_emp(x) - cdf(x)|`, attained at an atom from the left or the right.
pub fn ks_distance<F: Fn(f64) -> f64>(mu: &EmpiricalMeasure, cdf: F) -> f64 {
    let m = mu.len() as f64;
    mu.atoms
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let c = cdf(x);
            ((i + 1) as f64 / m - c).max(c - i as f64 / m)
        })
        .fold(0.0, f64::max)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    /// Mass in the bin divided by its width.
    pub density: f64,
}

/// `bins` equal-width bins on `[lo, hi]`; atoms outside are dropped, the right
/// edge is closed.
pub fn histogram(
    mu: &EmpiricalMeasure,
    bins: usize,
    lo: f64,
    hi: f64,
) -> Result<Vec<HistogramBin>> {
    if bins == 0 || !(lo < hi) {
        return Err(Error::InvalidParams(format!(
            "need bins >= 1 and lo < hi, got {bins} on [{lo}, {hi}]"
        )));
    }
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0usize; bins];
    for &a in mu.atoms() {
        if a < lo || a > hi {
            continue;
        }
        let k = (((a - lo) / width) as usize).min(bins - 1);
        counts[k] += 1;
    }
    Ok(counts
        .iter()
        .enumerate()
        .map(|(k, &c)| HistogramBin {
            lo: lo + k as f64 * width,
            hi: lo + (k + 1) as f64 * width,
            density: c as f64 * mu.weight() / width,
        })
        .collect())
}
