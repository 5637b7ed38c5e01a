// SPDX-License-Identifier: Apache-2.0

//! Seeded inputs shared by the benchmarks.

use logforest::{generate, SquareMatrix, WeightedMultigraph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed;

/// Connected graph on `n` vertices with about `density` of the extra pairs
/// present and weights in `[0.1, 10]`.
pub fn graph(n: usize, density: f64) -> WeightedMultigraph {
    generate::random_connected(&mut ChaCha8Rng::seed_from_u64(SEED ^ n as u64), n, density, 0.1..=10.0)
}

/// Connected graph with exactly `edges` edges, for the enumeration bench.
pub fn graph_with_edges(n: usize, edges: usize) -> WeightedMultigraph {
    let g = graph(n, 1.0);
    let kept = g.edges().iter().take(edges).map(|e| (e.u.get(), e.v.get(), e.weight));
    WeightedMultigraph::new(n, kept).expect("subset of a valid graph")
}

/// `I + L` of [`graph`], a well-conditioned SPD matrix.
pub fn spd(n: usize) -> SquareMatrix {
    graph(n, 0.2)
        .laplacian()
        .add(&SquareMatrix::identity(n))
        .expect("same dimension")
}
