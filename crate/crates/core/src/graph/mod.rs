// SPDX-License-Identifier: Apache-2.0

//! Immutable undirected weighted graphs and exact shortest-path machinery.

pub(crate) mod io;
mod paths;
mod sssp;

use std::collections::HashSet;

use crate::error::{Error, Result};

pub use paths::{heaviest_two, min_bound_from_row, min_bound_shortest_path, MinBoundPath, PathRecord};
pub use sssp::{apsp_exact, multi_source_sssp, sssp, DistanceMatrix, DistanceRow, LevelFilter, NearestSource};

pub type VertexId = usize;

/// Relative tolerance for internal consistency checks.
pub const INTERNAL_TOL: f64 = 1e-12;
/// Relative tolerance used when comparing distances during verification.
pub const VERIFY_TOL: f64 = 1e-9;

/// `a <= b` up to relative tolerance `tol`. Infinite values compare exactly.
#[inline]
pub fn le_tol(a: f64, b: f64, tol: f64) -> bool {
    if a <= b {
        return true;
    }
    if !b.is_finite() || !a.is_finite() {
        return false;
    }
    a - b <= tol * a.abs().max(b.abs()).max(1.0)
}

/// `a < b` by more than relative tolerance `tol`.
#[inline]
pub fn lt_tol(a: f64, b: f64, tol: f64) -> bool {
    !le_tol(b, a, tol)
}

#[inline]
pub fn approx_eq(a: f64, b: f64, tol: f64) -> bool {
    le_tol(a, b, tol) && le_tol(b, a, tol)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub w: f64,
}

impl Edge {
    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Undirected graph with non-negative edge weights on vertices `0..n`.
///
/// The adjacency lists are sorted by neighbour id so every traversal is
/// deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(VertexId, usize)>>,
    weighted: bool,
}

impl Graph {
    /// Build a weighted graph. Rejects self-loops, duplicate undirected
    /// edges, out-of-range ids and negative or non-finite weights.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (VertexId, VertexId, f64)>) -> Result<Self> {
        Self::with_flag(n, edges, true)
    }

    /// Build an unweighted graph: every edge gets weight 1.
    pub fn unweighted(n: usize, pairs: impl IntoIterator<Item = (VertexId, VertexId)>) -> Result<Self> {
        Self::with_flag(n, pairs.into_iter().map(|(u, v)| (u, v, 1.0)), false)
    }

    pub fn with_flag(
        n: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId, f64)>,
        weighted: bool,
    ) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        for (u, v, w) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::InvalidVertex { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::arg(format!("self-loop at vertex {u}")));
            }
            if !(w.is_finite() && w >= 0.0) {
                return Err(Error::arg(format!("edge ({u},{v}) has invalid weight {w}")));
            }
            if !weighted && w != 1.0 {
                return Err(Error::arg(format!("unweighted edge ({u},{v}) has weight {w}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::arg(format!("duplicate edge ({u},{v})")));
            }
            list.push(Edge { u, v, w });
        }
        let mut adjacency = vec![Vec::new(); n];
        for (idx, e) in list.iter().enumerate() {
            adjacency[e.u].push((e.v, idx));
            adjacency[e.v].push((e.u, idx));
        }
        for row in &mut adjacency {
            row.sort_unstable();
        }
        Ok(Self {
            n,
            edges: list,
            adjacency,
            weighted,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> &Edge {
        &self.edges[idx]
    }

    /// `(neighbour, edge index)` pairs, sorted by neighbour.
    pub fn neighbors(&self, u: VertexId) -> &[(VertexId, usize)] {
        &self.adjacency[u]
    }

    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<usize> {
        let row = self.adjacency.get(u)?;
        row.binary_search_by_key(&v, |&(x, _)| x).ok().map(|i| row[i].1)
    }

    pub(crate) fn check_vertex(&self, u: VertexId) -> Result<()> {
        if u < self.n {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: u, n: self.n })
        }
    }

    /// Round-trip check between the edge list and the adjacency index.
    pub fn adjacency_consistent(&self) -> bool {
        let mut count = 0;
        for (u, row) in self.adjacency.iter().enumerate() {
            for &(v, idx) in row {
                let Some(e) = self.edges.get(idx) else {
                    return false;
                };
                if !((e.u == u && e.v == v) || (e.u == v && e.v == u)) {
                    return false;
                }
                count += 1;
            }
        }
        count == 2 * self.edges.len()
    }

    /// Connected components by BFS; returns the component id of each vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut queue = std::collections::VecDeque::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &(v, _) in &self.adjacency[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = next;
                        queue.push_back(v);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }
}
