// SPDX-License-Identifier: Apache-2.0

//! Weighted multigraphs, the edge-list text format, and edge-weight
//! transformations.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::SquareMatrix;

/// Transformed weights below this are treated as underflow.
pub const MIN_TRANSFORMED_WEIGHT: f64 = 1e-300;

/// 1-based vertex label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(usize);

impl VertexId {
    /// Panics on 0; ids are 1-based.
    pub fn new(id: usize) -> Self {
        assert!(id >= 1, "vertex ids are 1-based");
        Self(id)
    }

    pub fn from_index(index: usize) -> Self {
        Self(index + 1)
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// 0-based position, used for matrix indexing.
    pub fn index(self) -> usize {
        self.0 - 1
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    /// Conductance; strictly positive.
    pub weight: f64,
}

impl Edge {
    pub fn resistance(&self) -> f64 {
        1.0 / self.weight
    }
}

/// Undirected multigraph on vertices `1..=n` with positive edge weights.
///
/// Parallel edges are kept as separate records.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedMultigraph {
    n: usize,
    edges: Vec<Edge>,
}

impl WeightedMultigraph {
    /// Builds a graph from `(u, v, weight)` triples with 1-based ids.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewVertices(n));
        }
        let mut g = Self { n, edges: Vec::new() };
        for (u, v, w) in edges {
            g.push_edge(u, v, w)?;
        }
        Ok(g)
    }

    fn push_edge(&mut self, u: usize, v: usize, weight: f64) -> Result<()> {
        for id in [u, v] {
            if id == 0 || id > self.n {
                return Err(Error::VertexOutOfRange { id, n: self.n });
            }
        }
        if u == v {
            return Err(Error::LoopEdge(u));
        }
        if !(weight > 0.0) || !weight.is_finite() {
            return Err(Error::InvalidWeight { u, v, weight });
        }
        self.edges.push(Edge {
            u: VertexId(u),
            v: VertexId(v),
            weight,
        });
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (1..=self.n).map(VertexId)
    }

    pub fn check_vertex(&self, id: VertexId) -> Result<()> {
        if id.0 > self.n {
            return Err(Error::VertexOutOfRange { id: id.0, n: self.n });
        }
        Ok(())
    }

    /// Number of parallel edges joining `u` and `v`.
    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> usize {
        self.edges.iter().filter(|e| same_pair(e, u, v)).count()
    }

    /// Total weight `w_uv` of the edges joining `u` and `v`.
    pub fn total_weight(&self, u: VertexId, v: VertexId) -> f64 {
        self.edges.iter().filter(|e| same_pair(e, u, v)).map(|e| e.weight).sum()
    }

    /// Symmetric matrix of total edge weights with zero diagonal.
    pub fn total_weight_matrix(&self) -> SquareMatrix {
        let mut w = SquareMatrix::zeros(self.n);
        for e in &self.edges {
            let (i, j) = (e.u.index(), e.v.index());
            w[(i, j)] += e.weight;
            w[(j, i)] += e.weight;
        }
        w
    }

    /// `L = diag(W 1) - W`.
    pub fn laplacian(&self) -> SquareMatrix {
        let mut l = SquareMatrix::zeros(self.n);
        for e in &self.edges {
            let (i, j) = (e.u.index(), e.v.index());
            l[(i, j)] -= e.weight;
            l[(j, i)] -= e.weight;
            l[(i, i)] += e.weight;
            l[(j, j)] += e.weight;
        }
        l
    }

    /// Sorted neighbor lists (0-based, deduplicated across parallel edges).
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.u.index()].push(e.v.index());
            adj[e.v.index()].push(e.u.index());
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
            nbrs.dedup();
        }
        adj
    }

    /// Component label per vertex (0-based). Labels are numbered in order of
    /// each component's smallest vertex.
    pub fn component_labels(&self) -> Vec<usize> {
        let adj = self.adjacency();
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut stack = Vec::new();
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            stack.push(start);
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if label[y] == usize::MAX {
                        label[y] = next;
                        stack.push(y);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// Maximal connected vertex sets, each sorted, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        let labels = self.component_labels();
        let count = labels.iter().max().map_or(0, |m| m + 1);
        let mut comps = vec![Vec::new(); count];
        for (i, &c) in labels.iter().enumerate() {
            comps[c].push(VertexId::from_index(i));
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.component_labels().iter().all(|&c| c == 0)
    }

    /// Deletes vertex `j` and its incident edges.
    ///
    /// Remaining vertices are renumbered `1..n-1` in their original order;
    /// `map[new.index()]` is the original id.
    pub fn remove_vertex(&self, j: VertexId) -> Result<(WeightedMultigraph, Vec<VertexId>)> {
        self.check_vertex(j)?;
        if self.n < 3 {
            return Err(Error::TooFewVertices(self.n - 1));
        }
        let map: Vec<VertexId> = self.vertices().filter(|&v| v != j).collect();
        let relabel = |v: VertexId| if v.0 > j.0 { v.0 - 1 } else { v.0 };
        let edges = self
            .edges
            .iter()
            .filter(|e| e.u != j && e.v != j)
            .map(|e| Edge {
                u: VertexId(relabel(e.u)),
                v: VertexId(relabel(e.v)),
                weight: e.weight,
            })
            .collect();
        Ok((WeightedMultigraph { n: self.n - 1, edges }, map))
    }

    /// Subgraph induced on `vertices` (sorted), renumbered in that order.
    ///
    /// Unlike [`WeightedMultigraph::new`] this allows a single vertex, which is
    /// what isolated components look like.
    pub(crate) fn induced(&self, vertices: &[VertexId]) -> WeightedMultigraph {
        let mut position = vec![usize::MAX; self.n];
        for (k, v) in vertices.iter().enumerate() {
            position[v.index()] = k;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| position[e.u.index()] != usize::MAX && position[e.v.index()] != usize::MAX)
            .map(|e| Edge {
                u: VertexId::from_index(position[e.u.index()]),
                v: VertexId::from_index(position[e.v.index()]),
                weight: e.weight,
            })
            .collect();
        WeightedMultigraph {
            n: vertices.len(),
            edges,
        }
    }

    /// Replaces every edge weight `w` by `psi_alpha(1 / w)`.
    pub fn transform_weights(&self, transform: EdgeTransform, alpha: f64) -> Result<Transformed> {
        check_alpha(alpha)?;
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            let weight = transform.psi(alpha, e.resistance());
            if !(weight >= MIN_TRANSFORMED_WEIGHT) || !weight.is_finite() {
                return Err(Error::TransformRange { alpha, weight });
            }
            edges.push(Edge { weight, ..*e });
        }
        Ok(Transformed {
            graph: WeightedMultigraph { n: self.n, edges },
            outside_admissible_range: !transform.is_admissible(alpha),
        })
    }
}

fn same_pair(e: &Edge, u: VertexId, v: VertexId) -> bool {
    (e.u == u && e.v == v) || (e.u == v && e.v == u)
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "alpha must be positive and finite, got {alpha}"
        )));
    }
    Ok(())
}

/// Result of [`WeightedMultigraph::transform_weights`].
#[derive(Debug, Clone, PartialEq)]
pub struct Transformed {
    pub graph: WeightedMultigraph,
    /// Set when `alpha` lies outside the range where the transform is
    /// decreasing in resistance and vanishes for large resistance.
    pub outside_admissible_range: bool,
}

/// Edge-weight transformation `w -> psi_alpha(r)` with `r = 1 / w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeTransform {
    /// `psi = alpha / r`, i.e. every weight scaled by `alpha`.
    LinearScale,
    /// `psi = alpha^r`.
    PowerOfAlpha,
    /// `psi = (alpha / r) exp(-r / alpha)`.
    ExpScaledByAlpha,
    /// `psi = exp(-r / alpha)`.
    PureExponential,
}

impl EdgeTransform {
    pub const ALL: [EdgeTransform; 4] = [
        EdgeTransform::LinearScale,
        EdgeTransform::PowerOfAlpha,
        EdgeTransform::ExpScaledByAlpha,
        EdgeTransform::PureExponential,
    ];

    /// Transformed weight of an edge with resistance `r`.
    pub fn psi(self, alpha: f64, r: f64) -> f64 {
        match self {
            EdgeTransform::LinearScale => alpha / r,
            EdgeTransform::PowerOfAlpha => alpha.powf(r),
            // evaluated as a single exponential so the two factors cannot
            // underflow separately
            EdgeTransform::ExpScaledByAlpha => (alpha.ln() - r.ln() - r / alpha).exp(),
            EdgeTransform::PureExponential => (-r / alpha).exp(),
        }
    }

    pub fn is_admissible(self, alpha: f64) -> bool {
        match self {
            EdgeTransform::PowerOfAlpha => alpha > 0.0 && alpha < 1.0,
            _ => alpha > 0.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            EdgeTransform::LinearScale => "linear",
            EdgeTransform::PowerOfAlpha => "power",
            EdgeTransform::ExpScaledByAlpha => "exp-scaled",
            EdgeTransform::PureExponential => "exp",
        }
    }
}

impl fmt::Display for EdgeTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EdgeTransform {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown transform `{s}`")))
    }
}

/// Reads the edge-list format.
///
/// The first non-comment line holds the vertex count; every later line is
/// `u v [w]` with 1-based ids and weight defaulting to 1. `#` starts a
/// comment, blank lines are skipped, repeated pairs become parallel edges.
pub fn parse_edge_list(text: &str) -> Result<WeightedMultigraph> {
    let mut graph = None::<WeightedMultigraph>;
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let parse_err = |message: String| Error::Parse { line, message };
        match &mut graph {
            None => {
                if fields.len() != 1 {
                    return Err(parse_err(format!("expected vertex count, found `{content}`")));
                }
                let count: usize = fields[0]
                    .parse()
                    .map_err(|_| parse_err(format!("invalid vertex count `{}`", fields[0])))?;
                graph = Some(WeightedMultigraph::new(count, [])?);
            }
            Some(g) => {
                if fields.len() < 2 || fields.len() > 3 {
                    return Err(parse_err(format!("expected `u v [w]`, found `{content}`")));
                }
                let id = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| parse_err(format!("invalid vertex id `{s}`")))
                };
                let u = id(fields[0])?;
                let v = id(fields[1])?;
                let w = match fields.get(2) {
                    Some(s) => s
                        .parse::<f64>()
                        .map_err(|_| parse_err(format!("invalid weight `{s}`")))?,
                    None => 1.0,
                };
                g.push_edge(u, v, w).map_err(|e| parse_err(e.to_string()))?;
            }
        }
    }
    graph.ok_or(Error::Parse {
        line: 0,
        message: "missing vertex count".into(),
    })
}

/// Inverse of [`parse_edge_list`].
pub fn write_edge_list(g: &WeightedMultigraph) -> String {
    let mut out = format!("{}\n", g.n);
    for e in &g.edges {
        out.push_str(&format!("{} {} {}\n", e.u, e.v, e.weight));
    }
    out
}
