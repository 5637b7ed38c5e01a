// SPDX-License-Identifier: Apache-2.0

mod common;

use common::{connected, tree};
use logforest::{
    log_forest_distance_matrix, resistance_matrix, separates, shortest_path_matrix, verify_geodetic, FamilyConfig,
    VertexId,
};
use proptest::prelude::*;

fn v(i: usize) -> VertexId {
    VertexId::from_index(i)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn separation_is_symmetric_in_endpoints(g in connected(3..=8)) {
        let n = g.vertex_count();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if i != k {
                        prop_assert_eq!(separates(&g, v(i), v(j), v(k)).unwrap(), separates(&g, v(k), v(j), v(i)).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn resistance_is_additive_across_cut_vertices(g in connected(3..=8)) {
        let d = resistance_matrix(&g).unwrap();
        let report = verify_geodetic(&g, &d, d.default_tolerance()).unwrap();
        prop_assert_eq!(report.separation_failures().count(), 0);
    }

    #[test]
    fn tree_equalities_are_path_interiors(g in tree(3..=8), alpha in 0.2..5.0f64) {
        let d = log_forest_distance_matrix(&g, &FamilyConfig::SHORTEST_PATH, alpha).unwrap();
        let report = verify_geodetic(&g, &d, d.default_tolerance()).unwrap();
        prop_assert!(report.passed(), "{:?}", report.mismatches);
        // on a tree, j separates i and k exactly when it lies on the i-k path
        let hops = shortest_path_matrix(&g);
        let on_path: Vec<_> = report
            .separation_triples
            .iter()
            .map(|&(i, j, k)| hops.get(i.index(), j.index()) + hops.get(j.index(), k.index()) == hops.get(i.index(), k.index()))
            .collect();
        prop_assert!(on_path.iter().all(|&x| x));
        prop_assert_eq!(&report.equality_triples, &report.separation_triples);
    }

    #[test]
    fn forest_distance_is_geodetic_at_unit_alpha(g in connected(3..=7)) {
        let d = log_forest_distance_matrix(&g, &FamilyConfig::SHORTEST_PATH, 1.0).unwrap();
        let report = verify_geodetic(&g, &d, d.default_tolerance()).unwrap();
        prop_assert!(report.passed(), "{:?}", report.mismatches);
    }
}
