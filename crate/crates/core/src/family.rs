// SPDX-License-Identifier: Apache-2.0

//! The logarithmic forest distance family.
//!
//! For a parameter `alpha > 0` the edge weights are transformed, the kernel
//! `Q = (I + L_alpha)^-1` is formed, its entries are mapped through a scaled
//! logarithm into `H`, and distances are read off as
//! `d_ij = (h_ii + h_jj) / 2 - h_ij`. The edge transform, the logarithm
//! scaling and the factor `gamma` together select a member of the family;
//! [`FamilyConfig`] carries that choice.

use std::fmt;
use std::str::FromStr;

use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};
use crate::graph::{check_alpha, EdgeTransform, WeightedMultigraph};
use crate::linalg::{elementwise_log, invert_shifted_laplacian, SquareMatrix};

/// How the logarithm of the kernel is scaled into `H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HVariant {
    /// `H = gamma (alpha - 1) log_alpha Q`, and `gamma ln Q` at `alpha = 1`.
    Standard,
    /// `H = gamma alpha ln Q`.
    AlphaLn,
}

impl HVariant {
    pub const ALL: [HVariant; 2] = [HVariant::Standard, HVariant::AlphaLn];

    pub fn name(self) -> &'static str {
        match self {
            HVariant::Standard => "standard",
            HVariant::AlphaLn => "alpha-ln",
        }
    }

    /// Multiplier applied to `ln q_ij`, excluding `gamma`.
    pub fn log_scale(self, alpha: f64) -> f64 {
        match self {
            HVariant::Standard if alpha == 1.0 => 1.0,
            HVariant::Standard => (alpha - 1.0) / (alpha - 1.0).ln_1p(),
            HVariant::AlphaLn => alpha,
        }
    }
}

impl fmt::Display for HVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown h-variant `{s}`")))
    }
}

/// Rule for the positive scaling factor `gamma(alpha, n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GammaRule {
    /// `ln(e + alpha^(2/n))`: tends to 1 as `alpha -> 0` and grows like
    /// `(2/n) ln alpha`, which makes the linear family reach both the
    /// shortest-path and resistance limits.
    Formula13,
    One,
    /// `((2/n) alpha + beta) / (alpha + beta)`, `beta > 0`.
    Interpolating(f64),
    Constant(f64),
}

impl GammaRule {
    pub fn gamma(self, alpha: f64, n: usize) -> f64 {
        let two_over_n = 2.0 / n as f64;
        match self {
            GammaRule::Formula13 => (std::f64::consts::E + alpha.powf(two_over_n)).ln(),
            GammaRule::One => 1.0,
            GammaRule::Interpolating(beta) => (two_over_n * alpha + beta) / (alpha + beta),
            GammaRule::Constant(c) => c,
        }
    }

    pub fn validate(self) -> Result<()> {
        match self {
            GammaRule::Interpolating(x) | GammaRule::Constant(x) if !(x > 0.0 && x.is_finite()) => Err(
                Error::InvalidParameter(format!("gamma parameter must be positive, got {x}")),
            ),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for GammaRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GammaRule::Formula13 => f.write_str("formula13"),
            GammaRule::One => f.write_str("one"),
            GammaRule::Interpolating(b) => write!(f, "interp:{b}"),
            GammaRule::Constant(c) => write!(f, "const:{c}"),
        }
    }
}

impl FromStr for GammaRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("unknown gamma rule `{s}`"));
        let rule = match s.split_once(':') {
            None if s == "formula13" => GammaRule::Formula13,
            None if s == "one" => GammaRule::One,
            Some(("interp", x)) => GammaRule::Interpolating(x.parse().map_err(|_| bad())?),
            Some(("const", x)) => GammaRule::Constant(x.parse().map_err(|_| bad())?),
            _ => return Err(bad()),
        };
        rule.validate()?;
        Ok(rule)
    }
}

/// One member of the family, minus the parameter `alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyConfig {
    pub transform: EdgeTransform,
    pub h_variant: HVariant,
    pub gamma_rule: GammaRule,
}

impl FamilyConfig {
    /// Tends to hop counts as `alpha -> 0` and to resistance as `alpha -> inf`.
    pub const SHORTEST_PATH: FamilyConfig = FamilyConfig {
        transform: EdgeTransform::LinearScale,
        h_variant: HVariant::Standard,
        gamma_rule: GammaRule::Formula13,
    };

    /// Tends to the weighted shortest-path distance as `alpha -> 0`.
    pub const WEIGHTED_SHORTEST_PATH: FamilyConfig = FamilyConfig {
        transform: EdgeTransform::PowerOfAlpha,
        h_variant: HVariant::Standard,
        gamma_rule: GammaRule::One,
    };

    /// Weighted shortest-path at `alpha -> 0`, resistance at `alpha -> inf`.
    pub const UNIFIED: FamilyConfig = FamilyConfig {
        transform: EdgeTransform::ExpScaledByAlpha,
        h_variant: HVariant::AlphaLn,
        gamma_rule: GammaRule::Interpolating(1.0),
    };

    pub fn new(transform: EdgeTransform, h_variant: HVariant, gamma_rule: GammaRule) -> Self {
        Self {
            transform,
            h_variant,
            gamma_rule,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.gamma_rule.validate()
    }
}

impl fmt::Display for FamilyConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}/{}", self.transform, self.h_variant, self.gamma_rule)
    }
}

/// `H` together with the parameters that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct HMatrix {
    pub matrix: SquareMatrix,
    pub alpha: f64,
    pub gamma: f64,
}

/// `Q_alpha = (I + L_alpha)^-1` for the transformed graph.
pub fn kernel_matrix(g: &WeightedMultigraph, cfg: &FamilyConfig, alpha: f64) -> Result<SquareMatrix> {
    cfg.validate()?;
    let transformed = g.transform_weights(cfg.transform, alpha)?;
    let n = g.vertex_count();
    invert_shifted_laplacian(&transformed.graph.total_weight_matrix(), &vec![1.0; n])
}

/// Scaled elementwise logarithm of a kernel; `n` enters through `gamma`.
pub fn h_matrix(q: &SquareMatrix, cfg: &FamilyConfig, alpha: f64, n: usize) -> Result<HMatrix> {
    check_alpha(alpha)?;
    cfg.validate()?;
    let gamma = cfg.gamma_rule.gamma(alpha, n);
    let matrix = elementwise_log(q, gamma * cfg.h_variant.log_scale(alpha))?;
    Ok(HMatrix { matrix, alpha, gamma })
}

/// `d_ij = (h_ii + h_jj) / 2 - h_ij`.
pub fn distance_from_h(h: &HMatrix) -> DistanceMatrix {
    similarity_to_distance(&h.matrix)
}

fn similarity_to_distance(s: &SquareMatrix) -> DistanceMatrix {
    let n = s.dim();
    let mut d = DistanceMatrix::disconnected(n);
    for i in 0..n {
        for j in i + 1..n {
            d.set_pair(i, j, 0.5 * (s[(i, i)] + s[(j, j)]) - s[(i, j)]);
        }
    }
    d
}

/// Computes `per_component` on every component with at least two vertices
/// and scatters the results; cross-component pairs stay `+inf`.
fn by_component(
    g: &WeightedMultigraph,
    mut per_component: impl FnMut(&WeightedMultigraph) -> Result<DistanceMatrix>,
) -> Result<DistanceMatrix> {
    let mut d = DistanceMatrix::disconnected(g.vertex_count());
    for comp in g.connected_components() {
        if comp.len() < 2 {
            continue;
        }
        let sub = g.induced(&comp);
        let local = per_component(&sub)?;
        for a in 0..comp.len() {
            for b in a + 1..comp.len() {
                d.set_pair(comp[a].index(), comp[b].index(), local.get(a, b));
            }
        }
    }
    Ok(d)
}

/// The logarithmic forest distance with parameter `alpha`.
///
/// Components are processed independently (with `n` in `gamma` set to the
/// component size) and vertices in different components are at `+inf`.
pub fn log_forest_distance_matrix(g: &WeightedMultigraph, cfg: &FamilyConfig, alpha: f64) -> Result<DistanceMatrix> {
    check_alpha(alpha)?;
    cfg.validate()?;
    by_component(g, |sub| {
        let q = kernel_matrix(sub, cfg, alpha)?;
        Ok(distance_from_h(&h_matrix(&q, cfg, alpha, sub.vertex_count())?))
    })
}

/// Forest distance without the logarithm: `Q = (I + alpha L)^-1`,
/// `d_ij = (q_ii + q_jj) / 2 - q_ij`.
pub fn ordinary_forest_distance_matrix(g: &WeightedMultigraph, alpha: f64) -> Result<DistanceMatrix> {
    check_alpha(alpha)?;
    by_component(g, |sub| {
        let n = sub.vertex_count();
        let q = invert_shifted_laplacian(&sub.total_weight_matrix().scale(alpha), &vec![1.0; n])?;
        Ok(similarity_to_distance(&q))
    })
}

/// `10^-4, 10^-3, ..., 10^4`.
pub fn default_alpha_grid() -> Vec<f64> {
    (-4..=4).map(|k| 10f64.powi(k)).collect()
}

/// `points` values spaced geometrically from `from` to `to` inclusive.
pub fn geometric_range(from: f64, to: f64, points: usize) -> Result<Vec<f64>> {
    check_alpha(from)?;
    check_alpha(to)?;
    match points {
        0 => Err(Error::InvalidParameter("range needs at least one point".into())),
        1 => Ok(vec![from]),
        _ => {
            let (lo, hi) = (from.ln(), to.ln());
            let step = (hi - lo) / (points - 1) as f64;
            Ok((0..points)
                .map(|k| match k {
                    0 => from,
                    k if k == points - 1 => to,
                    k => (lo + step * k as f64).exp(),
                })
                .collect())
        }
    }
}

/// Max off-diagonal error of `d_alpha` against a target, per `alpha`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    /// `(alpha, max_error)` in the order the alphas were given.
    pub rows: Vec<(f64, f64)>,
}

impl ConvergenceReport {
    pub fn errors(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.1).collect()
    }

    pub fn final_error(&self) -> Option<f64> {
        self.rows.last().map(|r| r.1)
    }

    pub fn is_strictly_decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].1 < w[0].1)
    }

    /// Each error is at most `slack` times the previous one.
    pub fn is_monotone_within(&self, slack: f64) -> bool {
        self.rows.windows(2).all(|w| w[1].1 <= slack * w[0].1)
    }
}

/// Evaluates the family at each alpha, in the given order, against `target`.
///
/// List the alphas so they approach the limit being tested.
pub fn convergence_report(
    g: &WeightedMultigraph,
    cfg: &FamilyConfig,
    alphas: &[f64],
    target: &DistanceMatrix,
) -> Result<ConvergenceReport> {
    let rows = alphas
        .iter()
        .map(|&alpha| {
            let d = log_forest_distance_matrix(g, cfg, alpha)?;
            Ok((alpha, d.max_off_diagonal_error(target)?))
        })
        .collect::<Result<_>>()?;
    Ok(ConvergenceReport { rows })
}
