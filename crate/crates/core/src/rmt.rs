//! Monte-Carlo sampling of `Z_r = G_r ⋯ G_2 X`, with `X` a truncated Haar
//! unitary and `G_j` complex Ginibre factors.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::empirics::EmpiricalMeasure;
use crate::error::{Error, Result};

const UNITARITY_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnsembleConfig {
    r: usize,
    n: usize,
    kappa: usize,
    nu: Vec<usize>,
    trials: usize,
    seed: u64,
    identity_factors: bool,
}

impl EnsembleConfig {
    pub fn new(
        r: usize,
        n: usize,
        kappa: usize,
        nu: Vec<usize>,
        trials: usize,
        seed: u64,
    ) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidParams(format!("r must be >= 2, got {r}")));
        }
        if n < 2 {
            return Err(Error::InvalidParams(format!("n must be >= 2, got {n}")));
        }
        if nu.len() != r - 1 {
            return Err(Error::InvalidParams(format!(
                "nu needs {} entries, got {}",
                r - 1,
                nu.len()
            )));
        }
        if trials == 0 {
            return Err(Error::InvalidParams("trials must be >= 1".into()));
        }
        if kappa < nu[0] + 1 {
            return Err(Error::InvalidParams(format!(
                "kappa = {kappa} too small: l = 2n + kappa - 1 must be >= 2n + nu_1 = 2n + {}",
                nu[0]
            )));
        }
        Ok(EnsembleConfig {
            r,
            n,
            kappa,
            nu,
            trials,
            seed,
            identity_factors: false,
        })
    }

    /// Debug mode: every Ginibre factor replaced by a rectangular identity.
    pub fn with_identity_factors(mut self) -> Self {
        self.identity_factors = true;
        self
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kappa(&self) -> usize {
        self.kappa
    }

    pub fn nu(&self) -> &[usize] {
        &self.nu
    }

    pub fn trials(&self) -> usize {
        self.trials
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// `l = 2n + κ - 1`.
    pub fn l(&self) -> usize {
        2 * self.n + self.kappa - 1
    }

    /// `ν_j` for `j = 0..=r`, with `ν_0 = ν_r = 0`.
    fn nu_at(&self, j: usize) -> usize {
        if j == 0 || j >= self.r {
            0
        } else {
            self.nu[j - 1]
        }
    }

    /// Generator for one matrix of one trial, independent of scheduling.
    pub fn stream(&self, trial: usize, matrix: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(((trial as u64) << 16) | matrix as u64);
        rng
    }
}

/// Dense complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::InvalidParams(format!(
                "{} entries do not fill a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(ComplexMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.cols + j]
    }

    pub fn to_dmatrix(&self) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.entries)
    }

    pub fn from_dmatrix(m: &DMatrix<Complex64>) -> Self {
        let (rows, cols) = m.shape();
        let entries = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)])
            .collect();
        ComplexMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn singular_values(&self) -> Vec<f64> {
        self.to_dmatrix()
            .singular_values()
            .iter()
            .copied()
            .collect()
    }
}

fn gaussian<R: Rng>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// i.i.d. standard complex Gaussian entries with `E|g|² = 1`.
pub fn ginibre<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    assert!(rows >= 1 && cols >= 1, "empty Ginibre shape");
    let entries = (0..rows * cols).map(|_| gaussian(rng)).collect();
    ComplexMatrix {
        rows,
        cols,
        entries,
    }
}

/// First `cols` columns of a Haar unitary `l x l`: QR of an `l x cols`
/// Ginibre draw with the columns of `Q` rotated by the phases of `diag R`.
fn haar_columns<R: Rng>(l: usize, cols: usize, rng: &mut R) -> Result<DMatrix<Complex64>> {
    let g = ginibre(l, cols, rng).to_dmatrix();
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..cols {
        let d = r[(j, j)];
        let norm = d.norm();
        if norm == 0.0 {
            return Err(Error::Numeric("rank-deficient Gaussian draw".into()));
        }
        let phase = d / norm;
        q.column_mut(j).iter_mut().for_each(|e| *e *= phase);
    }
    let residual = unitarity_residual(&q);
    if residual > UNITARITY_TOL {
        return Err(Error::Numeric(format!(
            "orthonormalisation residual {residual:e} exceeds {UNITARITY_TOL:e}"
        )));
    }
    Ok(q)
}

/// `max |(Q* Q - I)_{ij}|`.
pub fn unitarity_residual(q: &DMatrix<Complex64>) -> f64 {
    let gram = q.adjoint() * q;
    let (k, _) = gram.shape();
    let mut worst = 0.0f64;
    for i in 0..k {
        for j in 0..k {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((gram[(i, j)] - target).norm());
        }
    }
    worst
}

/// Upper-left `rows x cols` block of a Haar unitary of size `l`.
pub fn truncated_unitary<R: Rng>(
    l: usize,
    rows: usize,
    cols: usize,
    rng: &mut R,
) -> Result<ComplexMatrix> {
    if rows == 0 || cols == 0 || rows > l || cols > l {
        return Err(Error::InvalidParams(format!(
            "block {rows}x{cols} does not fit in a {l}x{l} unitary"
        )));
    }
    let q = haar_columns(l, cols, rng)?;
    Ok(ComplexMatrix::from_dmatrix(&q.rows(0, rows).into_owned()))
}

fn rect_identity(rows: usize, cols: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(rows, cols, |i, j| {
        if i == j {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Squared singular values of `Z_r` for one trial, ascending, unscaled.
pub fn product_squared_singvals(config: &EnsembleConfig, trial: usize) -> Result<Vec<f64>> {
    let n = config.n;
    let fail = |e: Error| match e {
        Error::Numeric(m) => Error::Numeric(format!("trial {trial}: {m}")),
        other => other,
    };
    let x = truncated_unitary(
        config.l(),
        n + config.nu_at(1),
        n,
        &mut config.stream(trial, 0),
    )
    .map_err(fail)?;
    let mut z = x.to_dmatrix();
    for j in 2..=config.r {
        let shape = (n + config.nu_at(j), n + config.nu_at(j - 1));
        let g = if config.identity_factors {
            rect_identity(shape.0, shape.1)
        } else {
            ginibre(shape.0, shape.1, &mut config.stream(trial, j - 1)).to_dmatrix()
        };
        z = g * z;
    }
    let mut s: Vec<f64> = z.singular_values().iter().map(|v| v * v).collect();
    if s.len() != n || s.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numeric(format!(
            "trial {trial}: singular value decomposition failed"
        )));
    }
    s.sort_by(f64::total_cmp);
    Ok(s)
}

/// All trials pooled, each squared singular value divided by `n^(r-1)`.
/// The result does not depend on the rayon pool that runs it.
pub fn ensemble_run(config: &EnsembleConfig) -> Result<EmpiricalMeasure> {
    let scale = (config.n as f64).powi(config.r as i32 - 1);
    let per_trial: Vec<Vec<f64>> = (0..config.trials)
        .into_par_iter()
        .map(|t| product_squared_singvals(config, t))
        .collect::<Result<_>>()?;
    EmpiricalMeasure::new(per_trial.into_iter().flatten().map(|v| v / scale).collect())
}
