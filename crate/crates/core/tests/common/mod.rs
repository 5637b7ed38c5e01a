// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use logforest::{generate, WeightedMultigraph};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Connected graph on `n` vertices with weights in `[0.1, 10]`.
pub fn connected(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = WeightedMultigraph> {
    (n, any::<u64>(), 0.0..0.7f64)
        .prop_map(|(n, seed, p)| generate::random_connected(&mut ChaCha8Rng::seed_from_u64(seed), n, p, 0.1..=10.0))
}

/// Possibly disconnected multigraph with parallel edges.
pub fn multigraph(n: std::ops::RangeInclusive<usize>, max_edges: usize) -> impl Strategy<Value = WeightedMultigraph> {
    (n, any::<u64>()).prop_map(move |(n, seed)| {
        generate::random_multigraph(&mut ChaCha8Rng::seed_from_u64(seed), n, max_edges, 0.1..=10.0)
    })
}

/// Unit-weight connected graph.
pub fn unit_connected(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = WeightedMultigraph> {
    connected(n).prop_map(|g| {
        WeightedMultigraph::new(g.vertex_count(), g.edges().iter().map(|e| (e.u.get(), e.v.get(), 1.0))).unwrap()
    })
}

/// Random tree with weights in `[0.5, 2]`.
pub fn tree(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = WeightedMultigraph> {
    (n, any::<u64>())
        .prop_map(|(n, seed)| generate::random_connected(&mut ChaCha8Rng::seed_from_u64(seed), n, 0.0, 0.5..=2.0))
}

pub fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}
