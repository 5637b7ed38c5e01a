// SPDX-License-Identifier: Apache-2.0

//! Small named graphs and seeded random graphs for tests, benches and
//! examples.

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::WeightedMultigraph;

fn build(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> WeightedMultigraph {
    WeightedMultigraph::new(n, edges.into_iter().map(|(u, v)| (u, v, 1.0))).expect("valid named graph")
}

/// Path `1 - 2 - ... - n` with unit weights.
pub fn path(n: usize) -> WeightedMultigraph {
    build(n, (1..n).map(|i| (i, i + 1)))
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> WeightedMultigraph {
    build(n, (1..n).map(|i| (i, i + 1)).chain([(n, 1)]))
}

pub fn complete(n: usize) -> WeightedMultigraph {
    build(n, (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))))
}

/// Star with centre 1 and `n - 1` leaves.
pub fn star(n: usize) -> WeightedMultigraph {
    build(n, (2..=n).map(|j| (1, j)))
}

/// Two triangles sharing vertex 3: `{1, 2, 3}` and `{3, 4, 5}`.
pub fn bowtie() -> WeightedMultigraph {
    build(5, [(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)])
}

/// Connected graph: a random spanning tree plus each remaining pair with
/// probability `extra_edge_prob`. Weights are uniform in `weights`; labels
/// are shuffled.
pub fn random_connected<R: Rng>(
    rng: &mut R,
    n: usize,
    extra_edge_prob: f64,
    weights: RangeInclusive<f64>,
) -> WeightedMultigraph {
    let mut label: Vec<usize> = (1..=n).collect();
    label.shuffle(rng);
    let mut in_tree = vec![vec![false; n]; n];
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.random_range(0..v);
        in_tree[u][v] = true;
        edges.push((label[u], label[v], rng.random_range(weights.clone())));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !in_tree[u][v] && rng.random_bool(extra_edge_prob) {
                edges.push((label[u], label[v], rng.random_range(weights.clone())));
            }
        }
    }
    WeightedMultigraph::new(n, edges).expect("valid random graph")
}

/// Up to `max_edges` edges between uniformly chosen distinct endpoints.
/// Repeated pairs give parallel edges; the result may be disconnected.
pub fn random_multigraph<R: Rng>(
    rng: &mut R,
    n: usize,
    max_edges: usize,
    weights: RangeInclusive<f64>,
) -> WeightedMultigraph {
    let m = rng.random_range(0..=max_edges);
    let edges: Vec<_> = (0..m)
        .map(|_| {
            let u = rng.random_range(1..=n);
            let mut v = rng.random_range(1..n);
            if v >= u {
                v += 1;
            }
            (u, v, rng.random_range(weights.clone()))
        })
        .collect();
    WeightedMultigraph::new(n, edges).expect("valid random graph")
}
