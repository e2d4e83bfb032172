//! Sample-side spectral inputs: eigenvalues of covariance and correlation
//! matrices, plus tail means of a spectrum.
//!
//! Eigenvalues are always computed on the smaller side: the `p x p`
//! product matrix when `p <= n`, otherwise the `n x n` Gram matrix, whose
//! nonzero spectrum is identical; missing eigenvalues are padded with
//! exact zeros.

#[cfg(not(feature = "std"))]
use crate::fmath::F64Ext as _;

use crate::linalg::{sym_eigenvalues, Mat};
use crate::{Error, Result};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

/// An `n x p` data matrix, rows are observations.
#[derive(Debug, Clone)]
pub struct DataMatrix {
    pub(crate) mat: Mat,
}

impl DataMatrix {
    /// Build from row-major values.
    pub fn new(n: usize, p: usize, values: Vec<f64>) -> Result<Self> {
        if n < 2 || p < 1 {
            return Err(Error::config(format!(
                "data matrix needs n >= 2 and p >= 1, got {n} x {p}"
            )));
        }
        if values.len() != n * p {
            return Err(Error::config(format!(
                "expected {} values for a {n} x {p} matrix, got {}",
                n * p,
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::config("data contains non-finite entries"));
        }
        Ok(DataMatrix {
            mat: Mat {
                data: values,
                rows: n,
                cols: p,
            },
        })
    }

    pub fn n(&self) -> usize {
        self.mat.rows
    }

    pub fn p(&self) -> usize {
        self.mat.cols
    }

    pub fn values(&self) -> &[f64] {
        &self.mat.data
    }
}

/// Which matrix a spectrum came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumSource {
    Covariance,
    Correlation,
    External,
}

/// Divisor convention for the sample covariance matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CovDivisor {
    #[default]
    NMinusOne,
    N,
}

impl CovDivisor {
    pub fn value(self, n: usize) -> f64 {
        match self {
            CovDivisor::NMinusOne => (n - 1) as f64,
            CovDivisor::N => n as f64,
        }
    }
}

/// Descending sample eigenvalues with their `(n, p)` metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSpectrum {
    eigenvalues: Vec<f64>,
    n: usize,
    p: usize,
    source: SpectrumSource,
}

impl EigenSpectrum {
    pub fn new(eigenvalues: Vec<f64>, n: usize, p: usize, source: SpectrumSource) -> Result<Self> {
        if eigenvalues.len() != p {
            return Err(Error::config(format!(
                "expected {p} eigenvalues, got {}",
                eigenvalues.len()
            )));
        }
        if eigenvalues.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::config("eigenvalues must be in descending order"));
        }
        if eigenvalues.last().is_some_and(|&v| v < 0.0)
            || eigenvalues.iter().any(|v| !v.is_finite())
        {
            return Err(Error::config("eigenvalues must be finite and nonnegative"));
        }
        Ok(EigenSpectrum {
            eigenvalues,
            n,
            p,
            source,
        })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn source(&self) -> SpectrumSource {
        self.source
    }

    /// The spectrum with every eigenvalue multiplied by `s > 0`.
    pub fn scaled(&self, s: f64) -> Result<EigenSpectrum> {
        if s <= 0.0 {
            return Err(Error::config("scale factor must be positive"));
        }
        EigenSpectrum::new(
            self.eigenvalues.iter().map(|v| v * s).collect(),
            self.n,
            self.p,
            self.source,
        )
    }
}

/// Sort descending, clamp roundoff negatives to zero, pad with exact
/// zeros up to `p`.
fn finish_eigenvalues(mut ev: Vec<f64>, p: usize) -> Result<Vec<f64>> {
    ev.sort_by(|a, b| b.total_cmp(a));
    let scale = ev.first().map(|v| v.abs()).unwrap_or(0.0).max(1.0);
    for v in ev.iter_mut() {
        if *v < 0.0 {
            if *v < -1e-8 * scale {
                return Err(Error::Numerical(format!(
                    "eigenvalue {v} is negative beyond roundoff"
                )));
            }
            *v = 0.0;
        }
    }
    ev.truncate(p);
    while ev.len() < p {
        ev.push(0.0);
    }
    Ok(ev)
}

fn product_eigenvalues(x: &Mat, div: f64) -> Result<Vec<f64>> {
    let (n, p) = (x.rows, x.cols);
    let mut m = if p <= n {
        x.gram_t(1.0 / div)
    } else {
        x.gram(1.0 / div)
    };
    let side = m.rows;
    let ev = sym_eigenvalues(&mut m.data, side)?;
    finish_eigenvalues(ev, p)
}

/// Eigenvalues of the sample covariance matrix, descending, zero-padded
/// when rank deficient.
pub fn cov_eigenvalues(
    x: &DataMatrix,
    centered: bool,
    divisor: CovDivisor,
) -> Result<EigenSpectrum> {
    let mut work = x.mat.clone();
    if centered {
        work.center_columns();
    }
    let ev = product_eigenvalues(&work, divisor.value(x.n()))?;
    EigenSpectrum::new(ev, x.n(), x.p(), SpectrumSource::Covariance)
}

/// Diagonal of the sample covariance matrix (no eigendecomposition).
pub fn cov_diagonal(x: &DataMatrix, centered: bool, divisor: CovDivisor) -> Vec<f64> {
    let div = divisor.value(x.n());
    let (n, p) = (x.n(), x.p());
    let mut out = vec![0.0; p];
    for (j, d) in out.iter_mut().enumerate() {
        let mut mean = 0.0;
        if centered {
            for i in 0..n {
                mean += x.mat.at(i, j);
            }
            mean /= n as f64;
        }
        let mut ss = 0.0;
        for i in 0..n {
            let v = x.mat.at(i, j) - mean;
            ss += v * v;
        }
        *d = ss / div;
    }
    out
}

/// Eigenvalues of the sample correlation matrix, descending. Their sum is
/// `p` up to roundoff.
pub fn corr_eigenvalues(x: &DataMatrix) -> Result<EigenSpectrum> {
    let (n, p) = (x.n(), x.p());
    let mut work = x.mat.clone();
    work.center_columns();
    let div = (n - 1) as f64;
    let mut inv_sd = vec![0.0; p];
    for (j, slot) in inv_sd.iter_mut().enumerate() {
        let mut ss = 0.0;
        for i in 0..n {
            let v = work.at(i, j);
            ss += v * v;
        }
        if ss <= 0.0 {
            return Err(Error::DegenerateColumn(j));
        }
        *slot = 1.0 / (ss / div).sqrt();
    }
    work.scale_columns(&inv_sd);
    let ev = product_eigenvalues(&work, div)?;
    EigenSpectrum::new(ev, n, p, SpectrumSource::Correlation)
}

/// Mean of the trailing `p - r` eigenvalues.
pub fn tail_mean(spec: &EigenSpectrum, r: usize) -> Result<f64> {
    let p = spec.p();
    if r >= p {
        return Err(Error::Range(format!(
            "tail mean needs r < p, got r={r}, p={p}"
        )));
    }
    let tail = &spec.eigenvalues()[r..];
    Ok(tail.iter().sum::<f64>() / tail.len() as f64)
}
