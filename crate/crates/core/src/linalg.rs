// SPDX-License-Identifier: Apache-2.0

//! Dense square matrices and the handful of symmetric routines the distance
//! pipeline needs: SPD inversion via Cholesky, the Laplacian pseudoinverse,
//! and elementwise logarithms.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

/// Residual bound above which an inverse is rejected.
pub const INVERSE_RESIDUAL_LIMIT: f64 = 1e-6;

/// Dense real `n x n` matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    /// Matrix with every entry equal to `value`.
    pub fn filled(n: usize, value: f64) -> Self {
        Self {
            n,
            data: vec![value; n * n],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { n, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        self.expect_dim(other.n)?;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self { n: self.n, data })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.expect_dim(other.n)?;
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        Ok(out)
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.max_abs())
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| (self[(i, j)] - self[(j, i)]).abs() <= tol))
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.row(i).iter().sum()).collect()
    }

    /// `(X + X^T) / 2`.
    pub fn symmetrized(&self) -> Self {
        Self::from_fn(self.n, |i, j| 0.5 * (self[(i, j)] + self[(j, i)]))
    }

    fn expect_dim(&self, got: usize) -> Result<()> {
        if got != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got });
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for SquareMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for SquareMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SquareMatrix({})", self.n)?;
        for i in 0..self.n {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Lower-triangular Cholesky factor `G` with `m = G G^T`.
struct Cholesky {
    n: usize,
    lower: Vec<f64>,
}

impl Cholesky {
    fn factor(m: &SquareMatrix) -> Result<Self> {
        let n = m.dim();
        let mut lower = vec![0.0; n * n];
        for j in 0..n {
            let mut diag = m[(j, j)];
            for k in 0..j {
                diag -= lower[j * n + k] * lower[j * n + k];
            }
            if !(diag > 0.0) || !diag.is_finite() {
                return Err(Error::NotPositiveDefinite { pivot: j, value: diag });
            }
            let pivot = diag.sqrt();
            lower[j * n + j] = pivot;
            for i in j + 1..n {
                let mut s = m[(i, j)];
                for k in 0..j {
                    s -= lower[i * n + k] * lower[j * n + k];
                }
                lower[i * n + j] = s / pivot;
            }
        }
        Ok(Self { n, lower })
    }

    /// Solves `m x = b` in place.
    fn solve_in_place(&self, b: &mut [f64]) {
        let n = self.n;
        let g = &self.lower;
        for i in 0..n {
            let mut s = b[i];
            for k in 0..i {
                s -= g[i * n + k] * b[k];
            }
            b[i] = s / g[i * n + i];
        }
        for i in (0..n).rev() {
            let mut s = b[i];
            for k in i + 1..n {
                s -= g[k * n + i] * b[k];
            }
            b[i] = s / g[i * n + i];
        }
    }
}

/// Inverts a symmetric positive definite matrix.
///
/// The inverse is assembled column by column from a Cholesky factorization
/// and then symmetrized. Fails if the factorization breaks down or if the
/// max-norm residual `|m X - I|` exceeds [`INVERSE_RESIDUAL_LIMIT`].
pub fn invert_spd(m: &SquareMatrix) -> Result<SquareMatrix> {
    let n = m.dim();
    let chol = Cholesky::factor(m)?;
    let mut inv = SquareMatrix::zeros(n);
    let mut col = vec![0.0; n];
    for j in 0..n {
        col.iter_mut().for_each(|x| *x = 0.0);
        col[j] = 1.0;
        chol.solve_in_place(&mut col);
        for i in 0..n {
            inv[(i, j)] = col[i];
        }
    }
    let inv = inv.symmetrized();

    let residual = m.matmul(&inv)?.max_abs_diff(&SquareMatrix::identity(n))?;
    if !(residual <= INVERSE_RESIDUAL_LIMIT) {
        return Err(Error::IllConditioned {
            residual,
            limit: INVERSE_RESIDUAL_LIMIT,
        });
    }
    Ok(inv)
}

/// Inverse of `diag(excess) + L(W)`, where `L(W)` is the Laplacian of the
/// nonnegative symmetric weight matrix `weights` and every `excess_i > 0`.
///
/// Such a matrix is a diagonally dominant M-matrix with row sums `excess`.
/// Elimination tracks the row sums of each Schur complement and rebuilds the
/// pivots from them, so no step subtracts and every entry of the (positive)
/// inverse carries full relative accuracy even when weights span many orders
/// of magnitude. The result is checked with a componentwise residual
/// `|M X - I| <= 1e-6 |M| |X|`.
pub fn invert_shifted_laplacian(weights: &SquareMatrix, excess: &[f64]) -> Result<SquareMatrix> {
    let n = weights.dim();
    if excess.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: excess.len(),
        });
    }
    for (i, &s) in excess.iter().enumerate() {
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::NotPositiveDefinite { pivot: i, value: s });
        }
    }
    for i in 0..n {
        for j in 0..n {
            let w = weights[(i, j)];
            if i != j && (!(w >= 0.0) || !w.is_finite() || w != weights[(j, i)]) {
                return Err(Error::InvalidParameter(format!(
                    "weight ({i}, {j}) = {w} is not symmetric nonnegative"
                )));
            }
        }
    }

    // magnitudes of the off-diagonal Schur complement entries
    let mut off = weights.clone();
    let mut rowsum = excess.to_vec();
    let mut pivot = vec![0.0; n];
    for k in 0..n {
        let d = rowsum[k] + (k + 1..n).map(|j| off[(k, j)]).sum::<f64>();
        pivot[k] = d;
        for i in k + 1..n {
            let a_ik = off[(i, k)];
            if a_ik == 0.0 {
                continue;
            }
            rowsum[i] += a_ik * rowsum[k] / d;
            for j in k + 1..n {
                if j != i {
                    off[(i, j)] += a_ik * off[(k, j)] / d;
                }
            }
        }
    }

    // M = U^T diag(pivot) U with U unit upper triangular, U_kj = -off_kj / pivot_k
    let mut inv = SquareMatrix::zeros(n);
    let mut x = vec![0.0; n];
    for col in 0..n {
        x.iter_mut().for_each(|v| *v = 0.0);
        x[col] = 1.0;
        for i in 0..n {
            let mut acc = x[i];
            for k in 0..i {
                acc += off[(k, i)] / pivot[k] * x[k];
            }
            x[i] = acc;
        }
        for i in 0..n {
            x[i] /= pivot[i];
        }
        for i in (0..n).rev() {
            let mut acc = x[i];
            for j in i + 1..n {
                acc += off[(i, j)] / pivot[i] * x[j];
            }
            x[i] = acc;
        }
        for i in 0..n {
            inv[(i, col)] = x[i];
        }
    }
    let inv = inv.symmetrized();

    let mut m = weights.scale(-1.0);
    for i in 0..n {
        m[(i, i)] = excess[i] + (0..n).filter(|&j| j != i).map(|j| weights[(i, j)]).sum::<f64>();
    }
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let (mut r, mut scale) = (if i == j { -1.0 } else { 0.0 }, 0.0);
            for k in 0..n {
                r += m[(i, k)] * inv[(k, j)];
                scale += (m[(i, k)] * inv[(k, j)]).abs();
            }
            worst = worst.max(r.abs() / scale);
        }
    }
    if !(worst <= INVERSE_RESIDUAL_LIMIT) {
        return Err(Error::IllConditioned {
            residual: worst,
            limit: INVERSE_RESIDUAL_LIMIT,
        });
    }
    Ok(inv)
}

/// Moore-Penrose inverse of a connected graph's Laplacian, `(L + J/n)^-1 - J/n`.
pub fn laplacian_pseudoinverse(laplacian: &SquareMatrix) -> Result<SquareMatrix> {
    shifted_laplacian_pseudoinverse(laplacian, 1.0)
}

/// `(L + a J/n)^-1 - a^-1 J/n` for `a > 0`; independent of `a` on connected graphs.
pub fn shifted_laplacian_pseudoinverse(laplacian: &SquareMatrix, a: f64) -> Result<SquareMatrix> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::InvalidParameter(format!("shift must be positive, got {a}")));
    }
    let n = laplacian.dim();
    let jbar = SquareMatrix::filled(n, 1.0 / n as f64);
    let shifted = laplacian.add(&jbar.scale(a))?;
    let inv = invert_spd(&shifted).map_err(|e| match e {
        Error::NotPositiveDefinite { .. } | Error::IllConditioned { .. } => Error::Disconnected,
        other => other,
    })?;
    inv.sub(&jbar.scale(1.0 / a))
}

/// Entry `(i, j)` of the result is `base_factor * ln(m_ij)`.
///
/// Every entry must be a normal positive float; zeros and subnormals mean the
/// kernel has lost the information the logarithm would expose.
pub fn elementwise_log(m: &SquareMatrix, base_factor: f64) -> Result<SquareMatrix> {
    let n = m.dim();
    let mut out = SquareMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let v = m[(i, j)];
            if !(v >= f64::MIN_POSITIVE) || !v.is_finite() {
                return Err(Error::NonPositiveEntry {
                    row: i,
                    col: j,
                    value: v,
                });
            }
            out[(i, j)] = base_factor * v.ln();
        }
    }
    Ok(out)
}
