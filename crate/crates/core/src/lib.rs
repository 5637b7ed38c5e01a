// SPDX-License-Identifier: Apache-2.0

//! Logarithmic forest distances on weighted multigraphs.
//!
//! The family `d_alpha` is built from the regularized Laplacian kernel
//! `(I + L_alpha)^-1` through an elementwise logarithm. Every member is a
//! metric, is graph-geodetic (additive exactly along cut vertices), and
//! suitable parameter choices recover the shortest-path, weighted
//! shortest-path and resistance distances as limits in `alpha`.
//!
//! ```
//! use logforest::{generate, log_forest_distance_matrix, FamilyConfig};
//!
//! let g = generate::path(4);
//! let d = log_forest_distance_matrix(&g, &FamilyConfig::SHORTEST_PATH, 1.0).unwrap();
//! // additive along the path
//! assert!((d.get(0, 1) + d.get(1, 3) - d.get(0, 3)).abs() < 1e-9);
//! // the pendant edge is shorter than the inner one
//! assert!(d.get(0, 1) < d.get(1, 2));
//! ```
//!
//! The [`forest`] module enumerates spanning rooted forests directly and is
//! the independent oracle for the matrix routes.

// `!(x > 0.0)` style checks reject NaN along with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classical;
pub mod distance;
pub mod error;
pub mod family;
pub mod forest;
pub mod generate;
pub mod geodetic;
pub mod graph;
pub mod linalg;

pub use classical::{resistance_matrix, shortest_path_matrix, weighted_shortest_path_matrix};
pub use distance::{DistanceMatrix, MetricViolation};
pub use error::{Error, Result};
pub use family::{
    convergence_report, default_alpha_grid, distance_from_h, geometric_range, h_matrix, kernel_matrix,
    log_forest_distance_matrix, ordinary_forest_distance_matrix, ConvergenceReport, FamilyConfig, GammaRule, HMatrix,
    HVariant,
};
pub use forest::{
    enumerate_rooted_forests, matrix_forest_check, resistance_via_forests, ForestCheck, ForestTally,
    ENUMERATION_EDGE_CAP,
};
pub use geodetic::{separates, verify_geodetic, GeodeticMismatch, GeodeticReport, MismatchKind};
pub use graph::{parse_edge_list, write_edge_list, Edge, EdgeTransform, Transformed, VertexId, WeightedMultigraph};
pub use linalg::{elementwise_log, invert_shifted_laplacian, invert_spd, laplacian_pseudoinverse, SquareMatrix};
