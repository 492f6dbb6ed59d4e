// SPDX-License-Identifier: Apache-2.0

//! Binary-heap Dijkstra in single-source, multi-source and edge-restricted
//! flavours, plus an all-pairs oracle.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use super::{Graph, VertexId};
use crate::error::{Error, Result};

/// Restricts a search to edges whose level is at most `cap`.
#[derive(Debug, Clone, Copy)]
pub struct LevelFilter<'a> {
    pub levels: &'a [usize],
    pub cap: usize,
}

impl LevelFilter<'_> {
    #[inline]
    fn allows(&self, edge: usize) -> bool {
        self.levels[edge] <= self.cap
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistanceRow {
    pub source: VertexId,
    /// `f64::INFINITY` marks unreachable vertices.
    pub dist: Vec<f64>,
    pub parent: Vec<Option<VertexId>>,
}

impl DistanceRow {
    /// Vertex sequence `source..=target` along the parent chain.
    pub fn path_to(&self, target: VertexId) -> Option<Vec<VertexId>> {
        if !self.dist.get(target)?.is_finite() {
            return None;
        }
        let mut path = vec![target];
        let mut cur = target;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        Some(path)
    }
}

#[derive(Clone, Copy, PartialEq)]
struct Entry {
    dist: f64,
    tie: usize,
    vertex: VertexId,
}

impl Eq for Entry {}

impl Ord for Entry {
    // Reversed so that `BinaryHeap` pops the smallest (dist, tie, vertex).
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.tie.cmp(&self.tie))
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact single-source distances, optionally over the sub-graph of edges with
/// level at most `filter.cap`. Among equally short predecessors the smallest
/// vertex id becomes the parent.
pub fn sssp(graph: &Graph, source: VertexId, filter: Option<LevelFilter<'_>>) -> Result<DistanceRow> {
    graph.check_vertex(source)?;
    if let Some(f) = filter {
        if f.levels.len() != graph.m() {
            return Err(Error::arg("edge level vector does not match the edge count"));
        }
    }
    let n = graph.n();
    let mut dist = vec![f64::INFINITY; n];
    let mut parent: Vec<Option<VertexId>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(Entry {
        dist: 0.0,
        tie: 0,
        vertex: source,
    });
    while let Some(Entry { dist: d, vertex: u, .. }) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        for &(v, e) in graph.neighbors(u) {
            if done[v] || filter.is_some_and(|f| !f.allows(e)) {
                continue;
            }
            let nd = d + graph.edge(e).w;
            if nd < dist[v] {
                dist[v] = nd;
                parent[v] = Some(u);
                heap.push(Entry {
                    dist: nd,
                    tie: 0,
                    vertex: v,
                });
            } else if nd == dist[v] && parent[v].is_some_and(|p| u < p) {
                parent[v] = Some(u);
            }
        }
    }
    Ok(DistanceRow { source, dist, parent })
}

/// Nearest source of every vertex together with its distance.
#[derive(Debug, Clone, PartialEq)]
pub struct NearestSource {
    /// `None` when no source is reachable.
    pub nearest: Vec<Option<VertexId>>,
    pub dist: Vec<f64>,
}

/// One Dijkstra from a virtual super-source joined to every member of
/// `sources` by a zero-weight edge. Ties between equally distant sources go
/// to the smallest source id.
pub fn multi_source_sssp(
    graph: &Graph,
    sources: &[VertexId],
    filter: Option<LevelFilter<'_>>,
) -> Result<NearestSource> {
    let n = graph.n();
    let mut dist = vec![f64::INFINITY; n];
    let mut nearest: Vec<Option<VertexId>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    for &s in sources {
        graph.check_vertex(s)?;
        if nearest[s].is_none_or(|t| s < t) {
            dist[s] = 0.0;
            nearest[s] = Some(s);
            heap.push(Entry {
                dist: 0.0,
                tie: s,
                vertex: s,
            });
        }
    }
    // Labels are (distance, source id) compared lexicographically; adding a
    // non-negative weight preserves that order, so Dijkstra stays exact.
    while let Some(Entry {
        dist: d,
        tie: src,
        vertex: u,
    }) = heap.pop()
    {
        if done[u] || nearest[u] != Some(src) || dist[u] != d {
            continue;
        }
        done[u] = true;
        for &(v, e) in graph.neighbors(u) {
            if done[v] || filter.is_some_and(|f| !f.allows(e)) {
                continue;
            }
            let nd = d + graph.edge(e).w;
            let better = match nearest[v] {
                None => true,
                Some(t) => nd < dist[v] || (nd == dist[v] && src < t),
            };
            if better {
                dist[v] = nd;
                nearest[v] = Some(src);
                heap.push(Entry {
                    dist: nd,
                    tie: src,
                    vertex: v,
                });
            }
        }
    }
    Ok(NearestSource { nearest, dist })
}

/// Dense symmetric `n × n` distance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<f64>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: VertexId, v: VertexId) -> f64 {
        self.dist[u * self.n + v]
    }

    pub fn row(&self, u: VertexId) -> &[f64] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }
}

/// Exact all-pairs distances from one Dijkstra per source, run in parallel.
/// Entry `(u, v)` with `u > v` mirrors the value computed from `v`, so the
/// matrix is symmetric bit for bit.
pub fn apsp_exact(graph: &Graph) -> DistanceMatrix {
    let n = graph.n();
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|s| sssp(graph, s, None).expect("source in range").dist)
        .collect();
    let mut dist = vec![f64::INFINITY; n * n];
    for u in 0..n {
        for v in 0..n {
            dist[u * n + v] = if u <= v { rows[u][v] } else { rows[v][u] };
        }
    }
    DistanceMatrix { n, dist }
}
