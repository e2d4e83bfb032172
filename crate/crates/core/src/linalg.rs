//! Internal dense linear algebra: a minimal row-major matrix, gemm-backed
//! products, Householder QR (for Haar-orthogonal sampling) and a
//! symmetric eigenvalue solver (tridiagonalization plus implicit QL).

#[cfg(not(feature = "std"))]
use crate::fmath::F64Ext as _;

use crate::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Mat {
    pub data: Vec<f64>,
    pub rows: usize,
    pub cols: usize,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat {
            data: vec![0.0; rows * cols],
            rows,
            cols,
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }

    /// `self * other` via gemm.
    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zeros(self.rows, other.cols);
        unsafe {
            matrixmultiply::dgemm(
                self.rows,
                self.cols,
                other.cols,
                1.0,
                self.data.as_ptr(),
                self.cols as isize,
                1,
                other.data.as_ptr(),
                other.cols as isize,
                1,
                0.0,
                out.data.as_mut_ptr(),
                out.cols as isize,
                1,
            );
        }
        out
    }

    /// `alpha * self^T self` (cols x cols).
    pub fn gram_t(&self, alpha: f64) -> Mat {
        let mut out = Mat::zeros(self.cols, self.cols);
        unsafe {
            matrixmultiply::dgemm(
                self.cols,
                self.rows,
                self.cols,
                alpha,
                self.data.as_ptr(),
                1,
                self.cols as isize,
                self.data.as_ptr(),
                self.cols as isize,
                1,
                0.0,
                out.data.as_mut_ptr(),
                out.cols as isize,
                1,
            );
        }
        out
    }

    /// `alpha * self self^T` (rows x rows).
    pub fn gram(&self, alpha: f64) -> Mat {
        let mut out = Mat::zeros(self.rows, self.rows);
        unsafe {
            matrixmultiply::dgemm(
                self.rows,
                self.cols,
                self.rows,
                alpha,
                self.data.as_ptr(),
                self.cols as isize,
                1,
                self.data.as_ptr(),
                1,
                self.cols as isize,
                0.0,
                out.data.as_mut_ptr(),
                out.cols as isize,
                1,
            );
        }
        out
    }

    /// Subtract the column mean from every column.
    pub fn center_columns(&mut self) {
        for j in 0..self.cols {
            let mut mean = 0.0;
            for i in 0..self.rows {
                mean += self.at(i, j);
            }
            mean /= self.rows as f64;
            for i in 0..self.rows {
                *self.at_mut(i, j) -= mean;
            }
        }
    }

    /// Multiply column `j` by `s[j]`.
    pub fn scale_columns(&mut self, s: &[f64]) {
        assert_eq!(s.len(), self.cols);
        for row in self.data.chunks_exact_mut(self.cols) {
            for (v, &f) in row.iter_mut().zip(s) {
                *v *= f;
            }
        }
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j);
            }
        }
        out
    }
}

/// Orthonormalize a square matrix in place via Householder QR and return
/// `Q` with columns flipped so the `R` diagonal is positive. Applied to an
/// iid Gaussian matrix this yields a Haar-distributed orthogonal matrix.
pub(crate) fn orthonormalize_qr(a: &mut Mat) -> Mat {
    let p = a.rows;
    assert_eq!(p, a.cols);
    // Householder vectors, normalized to unit length, stored column-wise.
    let mut vs = Mat::zeros(p, p);
    for k in 0..p {
        let mut norm2 = 0.0;
        for i in k..p {
            let x = a.at(i, k);
            norm2 += x * x;
        }
        if norm2 == 0.0 {
            continue;
        }
        let norm = norm2.sqrt();
        let akk = a.at(k, k);
        let alpha = if akk >= 0.0 { -norm } else { norm };
        let v0 = akk - alpha;
        let vnorm = (norm2 - 2.0 * alpha * akk + alpha * alpha).sqrt();
        *vs.at_mut(k, k) = v0 / vnorm;
        for i in k + 1..p {
            *vs.at_mut(i, k) = a.at(i, k) / vnorm;
        }
        *a.at_mut(k, k) = alpha;
        for j in k + 1..p {
            let mut w = 0.0;
            for i in k..p {
                w += vs.at(i, k) * a.at(i, j);
            }
            w *= 2.0;
            for i in k..p {
                *a.at_mut(i, j) -= w * vs.at(i, k);
            }
        }
    }
    // Accumulate Q = H_0 .. H_{p-1} applied to the identity.
    let mut q = Mat::identity(p);
    for k in (0..p).rev() {
        for j in k..p {
            let mut w = 0.0;
            for i in k..p {
                w += vs.at(i, k) * q.at(i, j);
            }
            w *= 2.0;
            for i in k..p {
                *q.at_mut(i, j) -= w * vs.at(i, k);
            }
        }
    }
    // Positive R diagonal fixes the measure on the orthogonal group.
    for j in 0..p {
        if a.at(j, j) < 0.0 {
            for i in 0..p {
                *q.at_mut(i, j) = -q.at(i, j);
            }
        }
    }
    q
}

/// Eigenvalues of a symmetric matrix, unordered. The input buffer is a
/// row-major `n x n` matrix and is destroyed.
pub(crate) fn sym_eigenvalues(a: &mut [f64], n: usize) -> Result<Vec<f64>> {
    assert_eq!(a.len(), n * n);
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tridiagonalize(a, n, &mut d, &mut e);
    ql_implicit(&mut d, &mut e)?;
    Ok(d)
}

/// Householder reduction to tridiagonal form without accumulating the
/// transformation (eigenvalues only).
fn tridiagonalize(a: &mut [f64], n: usize, d: &mut [f64], e: &mut [f64]) {
    for i in (1..n).rev() {
        let l = i;
        let mut h = 0.0;
        if l > 1 {
            let mut scale = 0.0;
            for k in 0..l {
                scale += a[i * n + k].abs();
            }
            if scale == 0.0 {
                e[i] = a[i * n + l - 1];
            } else {
                for k in 0..l {
                    a[i * n + k] /= scale;
                    h += a[i * n + k] * a[i * n + k];
                }
                let mut f = a[i * n + l - 1];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[i * n + l - 1] = f - g;
                f = 0.0;
                for j in 0..l {
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += a[j * n + k] * a[i * n + k];
                    }
                    for k in (j + 1)..l {
                        g += a[k * n + j] * a[i * n + k];
                    }
                    e[j] = g / h;
                    f += e[j] * a[i * n + j];
                }
                let hh = f / (h + h);
                for j in 0..l {
                    let f = a[i * n + j];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[j * n + k] -= f * e[k] + g * a[i * n + k];
                    }
                }
            }
        } else {
            e[i] = a[i * n + l - 1];
        }
        d[i] = h;
    }
    e[0] = 0.0;
    for i in 0..n {
        d[i] = a[i * n + i];
    }
}

/// Implicit QL with Wilkinson shifts on a symmetric tridiagonal matrix.
fn ql_implicit(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(Error::Numerical("QL iteration did not converge".into()));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            let sign_r = if g >= 0.0 { r.abs() } else { -r.abs() };
            g = d[m] - d[l] + e[l] / (g + sign_r);
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = d[i + 1];
                let _ = f;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}
