// SPDX-License-Identifier: Apache-2.0

use std::ops::Index;

use crate::error::{Error, Result};

/// Symmetric matrix of vertex distances; `+inf` marks pairs in different
/// components.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    /// All entries `+inf` except the zero diagonal.
    pub fn disconnected(n: usize) -> Self {
        let mut data = vec![f64::INFINITY; n * n];
        for i in 0..n {
            data[i * n + i] = 0.0;
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

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set_pair(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
        self.data[j * self.n + i] = value;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    /// Largest finite entry, 0 when there is none.
    pub fn max_finite(&self) -> f64 {
        self.data.iter().filter(|x| x.is_finite()).fold(0.0, |m, &x| m.max(x))
    }

    /// Smallest finite off-diagonal entry.
    pub fn min_finite_off_diagonal(&self) -> Option<f64> {
        let mut best: Option<f64> = None;
        for i in 0..self.n {
            for j in 0..self.n {
                let d = self.get(i, j);
                if i != j && d.is_finite() {
                    best = Some(best.map_or(d, |b| b.min(d)));
                }
            }
        }
        best
    }

    /// Entrywise `self * c`.
    pub fn scale(&self, c: f64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// Max absolute difference over off-diagonal pairs. Pairs that are
    /// infinite in both matrices contribute 0; a finite/infinite mismatch
    /// contributes `+inf`.
    pub fn max_off_diagonal_error(&self, other: &Self) -> Result<f64> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i == j {
                    continue;
                }
                let (a, b) = (self.get(i, j), other.get(i, j));
                let err = if a == b { 0.0 } else { (a - b).abs() };
                worst = worst.max(err);
            }
        }
        Ok(worst)
    }

    /// `1e-9 * (1 + largest finite entry)`: the tolerance used for metric
    /// and geodetic checks.
    pub fn default_tolerance(&self) -> f64 {
        1e-9 * (1.0 + self.max_finite())
    }

    /// Scans the metric axioms at absolute tolerance `tol`.
    ///
    /// Distinct vertices must be separated by more than `10 * tol`.
    pub fn metric_violations(&self, tol: f64) -> Vec<MetricViolation> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            let d = self.get(i, i);
            if d != 0.0 {
                out.push(MetricViolation::NonzeroDiagonal { i, value: d });
            }
            for j in 0..n {
                let d = self.get(i, j);
                if d.is_nan() || d < -tol {
                    out.push(MetricViolation::Negative { i, j, value: d });
                }
                if j > i {
                    let t = self.get(j, i);
                    if !(d == t || (d - t).abs() <= tol) {
                        out.push(MetricViolation::Asymmetric {
                            i,
                            j,
                            value: d,
                            transposed: t,
                        });
                    }
                    if d.is_finite() && d <= 10.0 * tol {
                        out.push(MetricViolation::Indiscernible { i, j, value: d });
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (ij, jk, ik) = (self.get(i, j), self.get(j, k), self.get(i, k));
                    if ik.is_finite() && ij + jk < ik - tol {
                        out.push(MetricViolation::Triangle {
                            i,
                            j,
                            k,
                            slack: ij + jk - ik,
                        });
                    }
                    if ik.is_infinite() && (ij + jk).is_finite() {
                        out.push(MetricViolation::Triangle {
                            i,
                            j,
                            k,
                            slack: f64::NEG_INFINITY,
                        });
                    }
                }
            }
        }
        out
    }
}

impl Index<(usize, usize)> for DistanceMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

/// A failed metric axiom; indices are 0-based.
#[derive(Debug, Clone, PartialEq)]
pub enum MetricViolation {
    NonzeroDiagonal {
        i: usize,
        value: f64,
    },
    Negative {
        i: usize,
        j: usize,
        value: f64,
    },
    Asymmetric {
        i: usize,
        j: usize,
        value: f64,
        transposed: f64,
    },
    Indiscernible {
        i: usize,
        j: usize,
        value: f64,
    },
    Triangle {
        i: usize,
        j: usize,
        k: usize,
        slack: f64,
    },
}
