// SPDX-License-Identifier: Apache-2.0

//! Shortest-path, weighted shortest-path and resistance distances.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use crate::distance::DistanceMatrix;
use crate::error::Result;
use crate::graph::WeightedMultigraph;
use crate::linalg::laplacian_pseudoinverse;

/// Hop counts; weights are ignored.
pub fn shortest_path_matrix(g: &WeightedMultigraph) -> DistanceMatrix {
    let n = g.vertex_count();
    let adj = g.adjacency();
    let mut d = DistanceMatrix::disconnected(n);
    let mut hops = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        hops.iter_mut().for_each(|h| *h = usize::MAX);
        hops[s] = 0;
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if hops[y] == usize::MAX {
                    hops[y] = hops[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        for (t, &h) in hops.iter().enumerate().skip(s + 1) {
            if h != usize::MAX {
                d.set_pair(s, t, h as f64);
            }
        }
    }
    d
}

#[derive(PartialEq)]
struct Label {
    dist: f64,
    vertex: usize,
}

impl Eq for Label {}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on distance, ties broken by vertex for determinism
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Minimum total edge resistance `1 / w` over paths.
///
/// Among parallel edges only the heaviest (least resistive) one matters.
pub fn weighted_shortest_path_matrix(g: &WeightedMultigraph) -> DistanceMatrix {
    let n = g.vertex_count();
    let mut best = vec![vec![f64::INFINITY; n]; n];
    for e in g.edges() {
        let (i, j, r) = (e.u.index(), e.v.index(), e.resistance());
        if r < best[i][j] {
            best[i][j] = r;
            best[j][i] = r;
        }
    }
    let adj: Vec<Vec<(usize, f64)>> = best
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|(_, r)| r.is_finite())
                .map(|(j, &r)| (j, r))
                .collect()
        })
        .collect();

    let mut d = DistanceMatrix::disconnected(n);
    let mut dist = vec![f64::INFINITY; n];
    let mut heap = BinaryHeap::new();
    for s in 0..n {
        dist.iter_mut().for_each(|x| *x = f64::INFINITY);
        dist[s] = 0.0;
        heap.push(Label { dist: 0.0, vertex: s });
        while let Some(Label { dist: dx, vertex: x }) = heap.pop() {
            if dx > dist[x] {
                continue;
            }
            for &(y, r) in &adj[x] {
                let cand = dx + r;
                if cand < dist[y] {
                    dist[y] = cand;
                    heap.push(Label { dist: cand, vertex: y });
                }
            }
        }
        for (t, &dt) in dist.iter().enumerate().skip(s + 1) {
            if dt.is_finite() {
                d.set_pair(s, t, dt);
            }
        }
    }
    d
}

/// Effective resistance with edge weights as conductances.
///
/// Each connected component is handled separately through the pseudoinverse
/// of its Laplacian; pairs in different components are `+inf`.
pub fn resistance_matrix(g: &WeightedMultigraph) -> Result<DistanceMatrix> {
    let mut d = DistanceMatrix::disconnected(g.vertex_count());
    for comp in g.connected_components() {
        if comp.len() < 2 {
            continue;
        }
        let sub = g.induced(&comp);
        let x = laplacian_pseudoinverse(&sub.laplacian())?;
        for a in 0..comp.len() {
            for b in a + 1..comp.len() {
                let r = x[(a, a)] + x[(b, b)] - 2.0 * x[(a, b)];
                d.set_pair(comp[a].index(), comp[b].index(), r);
            }
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize, f64)]) -> WeightedMultigraph {
        WeightedMultigraph::new(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn hop_counts() {
        let k3 = graph(3, &[(1, 2, 1.0), (2, 3, 1.0), (1, 3, 1.0)]);
        let d = shortest_path_matrix(&k3);
        assert_eq!(
            d.rows(),
            vec![vec![0.0, 1.0, 1.0], vec![1.0, 0.0, 1.0], vec![1.0, 1.0, 0.0]]
        );
        let p4 = graph(4, &[(1, 2, 1.0), (2, 3, 5.0), (3, 4, 1.0)]);
        assert_eq!(shortest_path_matrix(&p4).row(0), &[0.0, 1.0, 2.0, 3.0]);
        let g = graph(3, &[(1, 2, 1.0)]);
        assert_eq!(shortest_path_matrix(&g).get(0, 2), f64::INFINITY);
    }

    #[test]
    fn weighted_paths() {
        assert_eq!(weighted_shortest_path_matrix(&graph(2, &[(1, 2, 4.0)])).get(0, 1), 0.25);
        let tri = graph(3, &[(1, 2, 1.0), (2, 3, 1.0), (1, 3, 0.25)]);
        assert_eq!(weighted_shortest_path_matrix(&tri).get(0, 2), 2.0);
        let multi = graph(2, &[(1, 2, 0.5), (1, 2, 2.0)]);
        assert_eq!(weighted_shortest_path_matrix(&multi).get(0, 1), 0.5);
        let g = graph(3, &[(1, 2, 1.0)]);
        assert_eq!(weighted_shortest_path_matrix(&g).get(1, 2), f64::INFINITY);
    }

    #[test]
    fn unit_weights_give_hop_counts() {
        let g = graph(
            5,
            &[
                (1, 2, 1.0),
                (2, 3, 1.0),
                (3, 4, 1.0),
                (4, 5, 1.0),
                (5, 1, 1.0),
                (2, 4, 1.0),
            ],
        );
        assert_eq!(weighted_shortest_path_matrix(&g), shortest_path_matrix(&g));
    }

    #[test]
    fn resistance_examples() {
        let k2 = graph(2, &[(1, 2, 1.0)]);
        assert!((resistance_matrix(&k2).unwrap().get(0, 1) - 1.0).abs() < 1e-15);
        let k3 = graph(3, &[(1, 2, 1.0), (2, 3, 1.0), (1, 3, 1.0)]);
        assert!((resistance_matrix(&k3).unwrap().get(1, 2) - 2.0 / 3.0).abs() < 1e-15);
        let p3 = graph(3, &[(1, 2, 1.0), (2, 3, 1.0)]);
        let d = resistance_matrix(&p3).unwrap();
        assert!((d.get(0, 2) - 2.0).abs() < 1e-14);
        assert!((d.get(0, 1) + d.get(1, 2) - d.get(0, 2)).abs() < 1e-14);
    }

    #[test]
    fn parallel_conductances_add() {
        let g = graph(2, &[(1, 2, 2.5), (1, 2, 0.5)]);
        assert!((resistance_matrix(&g).unwrap().get(0, 1) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn resistance_across_components() {
        let g = graph(4, &[(1, 2, 1.0), (3, 4, 2.0)]);
        let d = resistance_matrix(&g).unwrap();
        assert!((d.get(2, 3) - 0.5).abs() < 1e-15);
        assert_eq!(d.get(0, 3), f64::INFINITY);
    }
}
