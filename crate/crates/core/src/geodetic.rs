// SPDX-License-Identifier: Apache-2.0

//! Vertex separation and the graph-geodetic check: a distance is
//! graph-geodetic when `d(i, j) + d(j, k) = d(i, k)` exactly for the triples
//! in which every `i`-`k` path passes through `j`.

use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};
use crate::graph::{VertexId, WeightedMultigraph};

/// Whether every path from `i` to `k` contains `j`.
///
/// True when `j` is an endpoint, when `i` and `k` are already in different
/// components, or when deleting `j` disconnects them.
pub fn separates(g: &WeightedMultigraph, i: VertexId, j: VertexId, k: VertexId) -> Result<bool> {
    for v in [i, j, k] {
        g.check_vertex(v)?;
    }
    if i == k {
        return Err(Error::InvalidParameter(format!(
            "separation needs distinct endpoints, got {i} twice"
        )));
    }
    if j == i || j == k {
        return Ok(true);
    }
    let labels = g.component_labels();
    if labels[i.index()] != labels[k.index()] {
        return Ok(true);
    }
    let (without, _) = g.remove_vertex(j)?;
    let labels = without.component_labels();
    let shift = |v: VertexId| if v > j { v.index() - 1 } else { v.index() };
    Ok(labels[shift(i)] != labels[shift(k)])
}

/// Why a triple broke the geodetic property.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MismatchKind {
    EqualityWithoutSeparation,
    SeparationWithoutEquality,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeodeticMismatch {
    pub triple: (VertexId, VertexId, VertexId),
    pub residual: f64,
    pub kind: MismatchKind,
}

/// Classification of every checked triple `(i, j, k)`, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GeodeticReport {
    pub triples_checked: usize,
    pub equality_triples: Vec<(VertexId, VertexId, VertexId)>,
    pub separation_triples: Vec<(VertexId, VertexId, VertexId)>,
    pub mismatches: Vec<GeodeticMismatch>,
    pub tolerance: f64,
}

impl GeodeticReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// Separated triples whose distances are not additive. Empty means the
    /// "separation implies equality" half holds.
    pub fn separation_failures(&self) -> impl Iterator<Item = &GeodeticMismatch> {
        self.mismatches
            .iter()
            .filter(|m| m.kind == MismatchKind::SeparationWithoutEquality)
    }
}

/// Compares additivity of `d` with vertex separation in `g`.
///
/// Checks ordered triples with `i != k` and `j` distinct from both, skipping
/// any triple with an infinite distance. A triple counts as an equality when
/// `|d_ij + d_jk - d_ik| <= tol`.
#[allow(clippy::needless_range_loop)]
pub fn verify_geodetic(g: &WeightedMultigraph, d: &DistanceMatrix, tol: f64) -> Result<GeodeticReport> {
    let n = g.vertex_count();
    if d.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: d.dim(),
        });
    }
    let labels = g.component_labels();
    // component labels of g - j, indexed by original vertex (j itself unused)
    let mut without: Vec<Vec<usize>> = Vec::with_capacity(n);
    for j in 0..n {
        if n < 3 {
            without.push(Vec::new());
            continue;
        }
        let (h, map) = g.remove_vertex(VertexId::from_index(j))?;
        let sub = h.component_labels();
        let mut full = vec![usize::MAX; n];
        for (new, old) in map.iter().enumerate() {
            full[old.index()] = sub[new];
        }
        without.push(full);
    }

    let mut report = GeodeticReport {
        tolerance: tol,
        ..Default::default()
    };
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == k || j == i || j == k {
                    continue;
                }
                let (ij, jk, ik) = (d.get(i, j), d.get(j, k), d.get(i, k));
                if !(ij.is_finite() && jk.is_finite() && ik.is_finite()) {
                    continue;
                }
                report.triples_checked += 1;
                let triple = (
                    VertexId::from_index(i),
                    VertexId::from_index(j),
                    VertexId::from_index(k),
                );
                let residual = (ij + jk - ik).abs();
                let equal = residual <= tol;
                let separated = labels[i] != labels[k] || without[j][i] != without[j][k];
                if equal {
                    report.equality_triples.push(triple);
                }
                if separated {
                    report.separation_triples.push(triple);
                }
                let kind = match (equal, separated) {
                    (true, false) => Some(MismatchKind::EqualityWithoutSeparation),
                    (false, true) => Some(MismatchKind::SeparationWithoutEquality),
                    _ => None,
                };
                if let Some(kind) = kind {
                    report.mismatches.push(GeodeticMismatch { triple, residual, kind });
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::shortest_path_matrix;

    fn v(i: usize) -> VertexId {
        VertexId::new(i)
    }

    fn p3() -> WeightedMultigraph {
        WeightedMultigraph::new(3, [(1, 2, 1.0), (2, 3, 1.0)]).unwrap()
    }

    fn k3() -> WeightedMultigraph {
        WeightedMultigraph::new(3, [(1, 2, 1.0), (2, 3, 1.0), (1, 3, 1.0)]).unwrap()
    }

    #[test]
    fn separation_examples() {
        assert!(separates(&p3(), v(1), v(2), v(3)).unwrap());
        assert!(!separates(&k3(), v(1), v(2), v(3)).unwrap());
        assert!(separates(&k3(), v(1), v(1), v(3)).unwrap());
        assert!(separates(&k3(), v(1), v(3), v(3)).unwrap());
        assert!(!separates(&p3(), v(1), v(3), v(2)).unwrap());
    }

    #[test]
    fn separation_edge_cases() {
        assert!(separates(&k3(), v(1), v(2), v(1)).is_err());
        assert!(separates(&k3(), v(1), v(2), v(4)).is_err());
        // already disconnected endpoints are vacuously separated
        let g = WeightedMultigraph::new(3, [(1, 2, 1.0)]).unwrap();
        assert!(separates(&g, v(1), v(2), v(3)).unwrap());
        let two = WeightedMultigraph::new(2, [(1, 2, 1.0)]).unwrap();
        assert!(separates(&two, v(1), v(2), v(2)).unwrap());
    }

    #[test]
    fn hop_counts_on_triangle_and_path() {
        let d = shortest_path_matrix(&k3());
        let r = verify_geodetic(&k3(), &d, d.default_tolerance()).unwrap();
        assert_eq!(r.triples_checked, 6);
        assert!(r.equality_triples.is_empty() && r.passed());

        let d = shortest_path_matrix(&p3());
        let r = verify_geodetic(&p3(), &d, d.default_tolerance()).unwrap();
        assert_eq!(r.equality_triples, vec![(v(1), v(2), v(3)), (v(3), v(2), v(1))]);
        assert_eq!(r.separation_triples, r.equality_triples);
        assert!(r.passed());
    }

    #[test]
    fn hop_counts_fail_only_if_on_square() {
        let c4 = WeightedMultigraph::new(4, [(1, 2, 1.0), (2, 3, 1.0), (3, 4, 1.0), (4, 1, 1.0)]).unwrap();
        let d = shortest_path_matrix(&c4);
        let r = verify_geodetic(&c4, &d, d.default_tolerance()).unwrap();
        assert!(!r.passed());
        assert!(r
            .mismatches
            .iter()
            .all(|m| m.kind == MismatchKind::EqualityWithoutSeparation));
        assert_eq!(r.separation_failures().count(), 0);
    }

    #[test]
    fn rejects_wrong_dimension() {
        let d = DistanceMatrix::disconnected(4);
        assert!(matches!(
            verify_geodetic(&k3(), &d, 1e-9),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
