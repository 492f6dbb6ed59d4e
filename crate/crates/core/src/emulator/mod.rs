// SPDX-License-Identifier: Apache-2.0

//! Emulator edge sets, the stretch algebra and the builders.

mod build;
mod fast;
mod io;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

pub use build::{assemble_products, build_alg1, build_alg2, build_general, build_general_with};
pub use fast::{build_fast, build_fast_with, EstimateMatrix};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Family an emulator edge was first produced by. The derived order is the
/// precedence used when several families emit the same pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeTag {
    D,
    E1,
    /// `S_{i-1} × S_{k-i}`, with `i` folded onto its mirror `k + 1 - i`.
    Product(usize),
    B1,
    B2,
    Original,
}

impl fmt::Display for EdgeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeTag::D => f.write_str("D"),
            EdgeTag::E1 => f.write_str("E1"),
            EdgeTag::Product(i) => write!(f, "PRODUCT({i})"),
            EdgeTag::B1 => f.write_str("B1"),
            EdgeTag::B2 => f.write_str("B2"),
            EdgeTag::Original => f.write_str("ORIGINAL"),
        }
    }
}

impl FromStr for EdgeTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "D" => EdgeTag::D,
            "E1" => EdgeTag::E1,
            "B1" => EdgeTag::B1,
            "B2" => EdgeTag::B2,
            "ORIGINAL" => EdgeTag::Original,
            _ => {
                let i = s
                    .strip_prefix("PRODUCT(")
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|r| r.parse().ok())
                    .ok_or_else(|| Error::arg(format!("unknown edge tag `{s}`")))?;
                EdgeTag::Product(i)
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BuildMode {
    Alg1,
    Alg2,
    General,
    Fast,
    /// The input graph itself; used as a reference emulator.
    Original,
}

impl BuildMode {
    pub fn as_str(self) -> &'static str {
        match self {
            BuildMode::Alg1 => "alg1",
            BuildMode::Alg2 => "alg2",
            BuildMode::General => "general",
            BuildMode::Fast => "fast",
            BuildMode::Original => "original",
        }
    }
}

impl fmt::Display for BuildMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BuildMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alg1" => Ok(BuildMode::Alg1),
            "alg2" => Ok(BuildMode::Alg2),
            "general" => Ok(BuildMode::General),
            "fast" => Ok(BuildMode::Fast),
            "original" => Ok(BuildMode::Original),
            _ => Err(Error::arg(format!("unknown build mode `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BuildMeta {
    pub k: usize,
    pub seed: u64,
    pub mode: BuildMode,
    pub betas: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmulatorEdge {
    pub u: VertexId,
    pub v: VertexId,
    /// Infinite only for fast-mode pairs that no estimate reached.
    pub w: f64,
    pub tag: EdgeTag,
}

/// Weighted edge set on `0..n`, sorted by `(u, v)` with `u < v`.
#[derive(Debug, Clone, PartialEq)]
pub struct Emulator {
    n: usize,
    edges: Vec<EmulatorEdge>,
    meta: BuildMeta,
}

impl Emulator {
    /// Normalizes, sorts and checks the edge list; duplicates are rejected.
    pub fn new(n: usize, mut edges: Vec<EmulatorEdge>, meta: BuildMeta) -> Result<Self> {
        for e in &mut edges {
            if e.u >= n || e.v >= n {
                return Err(Error::InvalidVertex {
                    vertex: e.u.max(e.v),
                    n,
                });
            }
            if e.u == e.v {
                return Err(Error::arg(format!("emulator self-loop at {}", e.u)));
            }
            if e.w.is_nan() || e.w < 0.0 {
                return Err(Error::arg(format!(
                    "emulator edge ({},{}) has weight {}",
                    e.u, e.v, e.w
                )));
            }
            if e.u > e.v {
                std::mem::swap(&mut e.u, &mut e.v);
            }
        }
        edges.sort_by_key(|e| (e.u, e.v));
        if let Some(w) = edges.windows(2).find(|w| (w[0].u, w[0].v) == (w[1].u, w[1].v)) {
            return Err(Error::arg(format!("duplicate emulator edge ({},{})", w[0].u, w[0].v)));
        }
        Ok(Self { n, edges, meta })
    }

    /// Every edge of `graph` with its original weight.
    pub fn from_graph(graph: &Graph, meta: BuildMeta) -> Self {
        let edges = graph
            .edges()
            .iter()
            .map(|e| EmulatorEdge {
                u: e.u,
                v: e.v,
                w: e.w,
                tag: EdgeTag::Original,
            })
            .collect();
        Self::new(graph.n(), edges, meta).expect("graph edges are valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[EmulatorEdge] {
        &self.edges
    }

    pub fn meta(&self) -> &BuildMeta {
        &self.meta
    }

    /// Undirected pairs of `F`.
    pub fn pairs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.edges.iter().map(|e| (e.u, e.v))
    }

    pub fn tag_counts(&self) -> BTreeMap<EdgeTag, usize> {
        let mut counts = BTreeMap::new();
        for e in &self.edges {
            *counts.entry(e.tag).or_insert(0) += 1;
        }
        counts
    }

    /// The emulator as a graph for shortest-path queries. Infinite edges
    /// cannot lie on a finite path and are left out.
    pub fn to_graph(&self) -> Graph {
        Graph::new(
            self.n,
            self.edges.iter().filter(|e| e.w.is_finite()).map(|e| (e.u, e.v, e.w)),
        )
        .expect("emulator edges are valid graph edges")
    }
}

/// `(alpha, a, b)` for the bound `alpha·δ + a·W1 + b·W2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StretchParams {
    pub k: usize,
    pub alpha: usize,
    pub a: usize,
    pub b: usize,
}

impl StretchParams {
    pub fn bound(&self, delta: f64, w1: f64, w2: f64) -> f64 {
        self.alpha as f64 * delta + self.a as f64 * w1 + self.b as f64 * w2
    }
}

pub fn stretch_params(k: usize) -> Result<StretchParams> {
    if k < 2 {
        return Err(Error::arg(format!("k must be at least 2, got {k}")));
    }
    let (lo, hi) = (k / 2, k.div_ceil(2));
    Ok(StretchParams {
        k,
        alpha: 2 * lo - 1,
        a: 2 * hi,
        b: 2 * hi.saturating_sub(2),
    })
}

/// Min-weight, first-tag collection of candidate pairs.
#[derive(Debug, Default)]
pub(crate) struct Assembler {
    pairs: BTreeMap<(VertexId, VertexId), (f64, EdgeTag)>,
}

impl Assembler {
    pub(crate) fn add(&mut self, u: VertexId, v: VertexId, w: f64, tag: EdgeTag) {
        if u == v {
            return;
        }
        let entry = self.pairs.entry((u.min(v), u.max(v))).or_insert((w, tag));
        entry.0 = entry.0.min(w);
        entry.1 = entry.1.min(tag);
    }

    pub(crate) fn finish(self, n: usize, meta: BuildMeta) -> Emulator {
        let edges = self
            .pairs
            .into_iter()
            .map(|((u, v), (w, tag))| EmulatorEdge { u, v, w, tag })
            .collect();
        Emulator { n, edges, meta }
    }
}
