// SPDX-License-Identifier: Apache-2.0

mod common;

use common::{close, connected, multigraph};
use logforest::{enumerate_rooted_forests, matrix_forest_check, resistance_matrix, resistance_via_forests};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tally_is_consistent(g in multigraph(2..=6, 10)) {
        let t = enumerate_rooted_forests(&g).unwrap();
        let n = g.vertex_count();
        let labels = g.component_labels();
        for i in 0..n {
            let row: f64 = (0..n).map(|j| t.f_ij[(i, j)]).sum();
            prop_assert!(close(row, t.f, 1e-12));
            for j in 0..n {
                prop_assert_eq!(t.f_ij[(i, j)], t.f_ij[(j, i)]);
                let by_p: f64 = t.by_edge_count.iter().map(|m| m[(i, j)]).sum();
                prop_assert!(close(by_p, t.f_ij[(i, j)], 1e-12));
                prop_assert_eq!(t.f_ij[(i, j)] == 0.0, labels[i] != labels[j]);
                if i != j {
                    prop_assert!(t.f_ij[(i, i)] > t.f_ij[(i, j)]);
                }
            }
        }
        let total: f64 = t.by_edge_count_total.iter().sum();
        prop_assert!(close(total, t.f, 1e-12));
        for (p, m) in t.by_edge_count.iter().enumerate() {
            let row: f64 = (0..n).map(|j| m[(0, j)]).sum();
            prop_assert!(close(row, t.by_edge_count_total[p], 1e-12));
        }
    }

    #[test]
    fn trees_are_the_largest_forests(g in connected(2..=6)) {
        let t = enumerate_rooted_forests(&g).unwrap();
        let n = g.vertex_count();
        prop_assert!(t.t > 0.0);
        for i in 0..n {
            for j in 0..n {
                prop_assert!(close(t.by_edge_count[n - 1][(i, j)], t.t, 1e-12));
            }
        }
    }

    #[test]
    fn kernel_times_forest_weight_is_forest_matrix(g in multigraph(2..=6, 12)) {
        let check = matrix_forest_check(&g, 1e-9).unwrap();
        prop_assert!(check.passed(), "{check:?}");
    }

    #[test]
    fn forest_resistance_matches_pseudoinverse(g in connected(2..=6)) {
        let a = resistance_via_forests(&g).unwrap();
        let b = resistance_matrix(&g).unwrap();
        prop_assert!(a.max_off_diagonal_error(&b).unwrap() <= 1e-8 * b.max_finite().max(1.0));
    }
}
