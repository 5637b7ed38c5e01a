// SPDX-License-Identifier: Apache-2.0

//! Brute-force enumeration of spanning rooted forests.
//!
//! Everything here is computed by walking the edge-subset lattice directly
//! and never touches a matrix inverse, so it can serve as ground truth for
//! the linear-algebra routes elsewhere in the crate.

use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};
use crate::graph::WeightedMultigraph;
use crate::linalg::{invert_shifted_laplacian, SquareMatrix};

/// Largest edge count [`enumerate_rooted_forests`] accepts.
pub const ENUMERATION_EDGE_CAP: usize = 22;

/// Exact forest weights of a graph.
///
/// Indices are 0-based. A rooted forest contributes to `f_ij` when vertex
/// `i` lies in the tree rooted at `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct ForestTally {
    /// Total weight of all spanning rooted forests.
    pub f: f64,
    pub f_ij: SquareMatrix,
    /// `by_edge_count[p]` restricts `f_ij` to forests with exactly `p` edges.
    pub by_edge_count: Vec<SquareMatrix>,
    /// Total weight of rooted forests with exactly `p` edges; equals
    /// `sum_j by_edge_count[p][(i, j)]` for every `i`.
    pub by_edge_count_total: Vec<f64>,
    /// Total weight of spanning trees (0 when disconnected).
    pub t: f64,
}

impl ForestTally {
    pub fn dim(&self) -> usize {
        self.f_ij.dim()
    }
}

struct Enumerator<'a> {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
    tally: &'a mut ForestTally,
}

impl Enumerator<'_> {
    fn visit(&mut self, next: usize, labels: &mut Vec<usize>, weight: f64, edge_count: usize) {
        if next == self.edges.len() {
            self.record(labels, weight, edge_count);
            return;
        }
        self.visit(next + 1, labels, weight, edge_count);

        let (a, b, w) = self.edges[next];
        let (la, lb) = (labels[a], labels[b]);
        if la == lb {
            return;
        }
        let mut merged = labels.clone();
        for l in merged.iter_mut() {
            if *l == lb {
                *l = la;
            }
        }
        self.visit(next + 1, &mut merged, weight * w, edge_count + 1);
    }

    fn record(&mut self, labels: &[usize], weight: f64, edge_count: usize) {
        let n = self.n;
        let mut size = vec![0usize; n];
        for &l in labels {
            size[l] += 1;
        }
        // one root choice per tree
        let rootings: f64 = size.iter().filter(|&&s| s > 0).map(|&s| s as f64).product();
        let total = weight * rootings;
        let tally = &mut *self.tally;
        tally.f += total;
        tally.by_edge_count_total[edge_count] += total;
        for i in 0..n {
            let share = weight * (rootings / size[labels[i]] as f64);
            for j in 0..n {
                if labels[j] == labels[i] {
                    tally.f_ij[(i, j)] += share;
                    tally.by_edge_count[edge_count][(i, j)] += share;
                }
            }
        }
        if edge_count + 1 == n {
            tally.t += weight;
        }
    }
}

/// Enumerates every spanning rooted forest of `g`.
///
/// Parallel edges are distinct members of the subset lattice, so two of them
/// together form a cycle. Cost grows as `2^|E|`; graphs above
/// [`ENUMERATION_EDGE_CAP`] edges are refused.
pub fn enumerate_rooted_forests(g: &WeightedMultigraph) -> Result<ForestTally> {
    if g.edge_count() > ENUMERATION_EDGE_CAP {
        return Err(Error::EnumerationCap {
            edges: g.edge_count(),
            cap: ENUMERATION_EDGE_CAP,
        });
    }
    let n = g.vertex_count();
    let mut tally = ForestTally {
        f: 0.0,
        f_ij: SquareMatrix::zeros(n),
        by_edge_count: vec![SquareMatrix::zeros(n); n],
        by_edge_count_total: vec![0.0; n],
        t: 0.0,
    };
    let edges = g.edges().iter().map(|e| (e.u.index(), e.v.index(), e.weight)).collect();
    let mut labels: Vec<usize> = (0..n).collect();
    Enumerator {
        n,
        edges,
        tally: &mut tally,
    }
    .visit(0, &mut labels, 1.0, 0);
    Ok(tally)
}

/// Outcome of comparing `f * (I + L)^-1` with the enumerated forest matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ForestCheck {
    /// `max_ij |f q_ij - f_ij| / f_ij`; an entry with `f_ij = 0` counts as
    /// exact only when `f q_ij` is exactly zero too.
    pub max_relative_error: f64,
    pub tolerance: f64,
}

impl ForestCheck {
    pub fn passed(&self) -> bool {
        self.max_relative_error <= self.tolerance
    }
}

/// Checks the matrix forest theorem `f (I + L)^-1 = F` on `g`, using the
/// same kernel inversion as the distance pipeline.
pub fn matrix_forest_check(g: &WeightedMultigraph, tol: f64) -> Result<ForestCheck> {
    let tally = enumerate_rooted_forests(g)?;
    let n = g.vertex_count();
    let q = invert_shifted_laplacian(&g.total_weight_matrix(), &vec![1.0; n])?;
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let (exact, got) = (tally.f_ij[(i, j)], tally.f * q[(i, j)]);
            let err = match exact {
                0.0 if got == 0.0 => 0.0,
                0.0 => f64::INFINITY,
                _ => (got - exact).abs() / exact,
            };
            worst = worst.max(err);
        }
    }
    Ok(ForestCheck {
        max_relative_error: worst,
        tolerance: tol,
    })
}

/// Resistance distance from forest counts:
/// `(f_ii + f_jj - 2 f_ij) / (n t)` over forests with `n - 2` edges.
pub fn resistance_via_forests(g: &WeightedMultigraph) -> Result<DistanceMatrix> {
    let tally = enumerate_rooted_forests(g)?;
    resistance_from_tally(&tally)
}

pub fn resistance_from_tally(tally: &ForestTally) -> Result<DistanceMatrix> {
    let n = tally.dim();
    if !(tally.t > 0.0) {
        return Err(Error::Disconnected);
    }
    // n = 2 uses the edgeless forests
    let fp = &tally.by_edge_count[n - 2];
    let denom = n as f64 * tally.t;
    let mut d = DistanceMatrix::disconnected(n);
    for i in 0..n {
        for j in i + 1..n {
            d.set_pair(i, j, (fp[(i, i)] + fp[(j, j)] - 2.0 * fp[(i, j)]) / denom);
        }
    }
    Ok(d)
}
