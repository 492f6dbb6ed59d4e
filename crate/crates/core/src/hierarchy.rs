// SPDX-License-Identifier: Apache-2.0

//! Nested hitting sets `V = S_0 ⊇ S_1 ⊇ … ⊇ S_{k-1}`, their pivots, the
//! per-edge level index and the auxiliary families `D`, `B_1(V)`, `B_2(S_1)`.

use std::collections::BTreeMap;
use std::io::Write;

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{
    lt_tol, multi_source_sssp, sssp, DistanceMatrix, DistanceRow, Graph, LevelFilter, VertexId, INTERNAL_TOL,
};
use crate::seed;

/// Auxiliary edge `(u, s)` with its exact distance.
pub type WeightedPair = (VertexId, VertexId, f64);

/// Per-level pivot ids and pivot distances, indexed `[level][vertex]`.
pub type PivotTable = (Vec<Vec<Option<VertexId>>>, Vec<Vec<f64>>);

#[derive(Debug, Clone, PartialEq)]
pub struct HierarchyConfig {
    pub k: usize,
    /// `betas[j - 1]` is the exponent for entering `S_j` from `S_{j-1}`.
    pub betas: Vec<f64>,
    pub seed: u64,
}

impl HierarchyConfig {
    /// Every level sampled with probability `n^(-1/k)`.
    pub fn uniform(k: usize, seed: u64) -> Result<Self> {
        if k < 2 {
            return Err(Error::arg(format!("k must be at least 2, got {k}")));
        }
        Self::new(k, vec![1.0 / k as f64; k - 1], seed)
    }

    pub fn new(k: usize, betas: Vec<f64>, seed: u64) -> Result<Self> {
        let config = Self { k, betas, seed };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::arg(format!("k must be at least 2, got {}", self.k)));
        }
        if self.betas.len() != self.k - 1 {
            return Err(Error::arg(format!(
                "expected {} sampling exponents for k = {}, got {}",
                self.k - 1,
                self.k,
                self.betas.len()
            )));
        }
        // 0 is allowed and means "keep every vertex".
        if let Some(b) = self.betas.iter().find(|b| !(0.0..=1.0).contains(*b)) {
            return Err(Error::arg(format!("sampling exponent {b} outside [0, 1]")));
        }
        Ok(())
    }
}

/// Highest level of every vertex. Vertices are visited in ascending id and
/// each draws exactly `k - 1` uniforms, one per level in order; `u` reaches
/// level `i` iff draws `1..=i` all fall below `n^(-beta_j)`.
pub fn sample_hierarchy(n: usize, config: &HierarchyConfig) -> Result<Vec<usize>> {
    config.validate()?;
    let probs: Vec<f64> = config.betas.iter().map(|b| (n as f64).powf(-b)).collect();
    let mut rng = seed::rng(config.seed, seed::STREAM_HIERARCHY, 0);
    let mut level_of = vec![0; n];
    for level in level_of.iter_mut() {
        let mut alive = true;
        for (j, &p) in probs.iter().enumerate() {
            let draw: f64 = rng.gen();
            alive &= draw < p;
            if alive {
                *level = j + 1;
            }
        }
    }
    Ok(level_of)
}

/// Pivot ids and distances for levels `0..k`. Level 0 is the vertex itself;
/// an empty level has no pivots and infinite distances.
pub fn compute_pivots(graph: &Graph, k: usize, level_of: &[usize]) -> Result<PivotTable> {
    let n = graph.n();
    let mut pivots = vec![(0..n).map(Some).collect::<Vec<_>>()];
    let mut dist = vec![vec![0.0; n]];
    for i in 1..k {
        let sources: Vec<VertexId> = (0..n).filter(|&u| level_of[u] >= i).collect();
        let r = multi_source_sssp(graph, &sources, None)?;
        pivots.push(r.nearest);
        dist.push(r.dist);
    }
    Ok((pivots, dist))
}

/// `min { i in 1..k : w < pd_i(u) or w < pd_i(v) }`, or `k` when no level
/// qualifies. `pivot_dist` is indexed from level 0.
pub fn compute_edge_levels(graph: &Graph, k: usize, pivot_dist: &[Vec<f64>]) -> Vec<usize> {
    graph
        .edges()
        .iter()
        .map(|e| {
            (1..k)
                .find(|&i| e.w < pivot_dist[i][e.u] || e.w < pivot_dist[i][e.v])
                .unwrap_or(k)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hierarchy {
    k: usize,
    level_of: Vec<usize>,
    sets: Vec<Vec<VertexId>>,
    pivots: Vec<Vec<Option<VertexId>>>,
    pivot_dist: Vec<Vec<f64>>,
    edge_level: Vec<usize>,
}

impl Hierarchy {
    pub fn build(graph: &Graph, config: &HierarchyConfig) -> Result<Self> {
        let level_of = sample_hierarchy(graph.n(), config)?;
        Self::from_levels(graph, config.k, level_of)
    }

    /// Builds the hierarchy for a fixed set assignment; `level_of[u] < k`.
    pub fn from_levels(graph: &Graph, k: usize, level_of: Vec<usize>) -> Result<Self> {
        if k < 2 {
            return Err(Error::arg(format!("k must be at least 2, got {k}")));
        }
        if level_of.len() != graph.n() {
            return Err(Error::arg("level vector does not match the vertex count"));
        }
        if let Some(u) = level_of.iter().position(|&l| l >= k) {
            return Err(Error::arg(format!("vertex {u} has level {} but k = {k}", level_of[u])));
        }
        let sets = (0..k)
            .map(|i| (0..graph.n()).filter(|&u| level_of[u] >= i).collect())
            .collect();
        let (pivots, pivot_dist) = compute_pivots(graph, k, &level_of)?;
        let edge_level = compute_edge_levels(graph, k, &pivot_dist);
        Ok(Self {
            k,
            level_of,
            sets,
            pivots,
            pivot_dist,
            edge_level,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.level_of.len()
    }

    pub fn level_of(&self, u: VertexId) -> usize {
        self.level_of[u]
    }

    pub fn levels(&self) -> &[usize] {
        &self.level_of
    }

    /// Members of `S_i` in ascending order; empty for `i >= k`.
    pub fn set(&self, i: usize) -> &[VertexId] {
        self.sets.get(i).map_or(&[], Vec::as_slice)
    }

    pub fn in_set(&self, i: usize, u: VertexId) -> bool {
        i < self.k && self.level_of[u] >= i
    }

    pub fn pivot(&self, i: usize, u: VertexId) -> Option<VertexId> {
        self.pivots.get(i).and_then(|p| p[u])
    }

    /// `δ(u, p_i(u))`; infinite for `i >= k` or an empty `S_i`.
    pub fn pivot_dist(&self, i: usize, u: VertexId) -> f64 {
        self.pivot_dist.get(i).map_or(f64::INFINITY, |d| d[u])
    }

    pub fn edge_level(&self, e: usize) -> usize {
        self.edge_level[e]
    }

    pub fn edge_levels(&self) -> &[usize] {
        &self.edge_level
    }

    /// Whether edge `e` belongs to `E_i`.
    pub fn in_e(&self, i: usize, e: usize) -> bool {
        self.edge_level[e] <= i
    }

    /// `s ∈ Ball(c, S_j, S_t)` given `dist = δ(c, s)`.
    pub fn in_ball(&self, c: VertexId, s: VertexId, j: usize, t: usize, dist: f64) -> bool {
        self.in_set(j, s) && self.inside_pivot_radius(c, t, dist)
    }

    /// `dist < δ(c, p_t(c))`, with values equal up to rounding counted as
    /// equal: the two sides may sum the same path in opposite directions.
    pub fn inside_pivot_radius(&self, c: VertexId, t: usize, dist: f64) -> bool {
        lt_tol(dist, self.pivot_dist(t, c), INTERNAL_TOL)
    }

    /// Diagnostic text dump.
    pub fn write_dump<W: Write>(&self, mut out: W) -> Result<()> {
        for (u, l) in self.level_of.iter().enumerate() {
            writeln!(out, "v {u} {l}")?;
        }
        for i in 1..self.k {
            for u in 0..self.n() {
                match self.pivots[i][u] {
                    Some(p) => writeln!(out, "pivot {i} {u} {p} {}", self.pivot_dist[i][u])?,
                    None => writeln!(out, "pivot {i} {u} none inf")?,
                }
            }
        }
        for (e, l) in self.edge_level.iter().enumerate() {
            writeln!(out, "elevel {e} {l}")?;
        }
        Ok(())
    }
}

/// Pivot pairs `(u, p_i(u))` for `i in 1..k`, normalized to `u < v`, without
/// self-pairs, deduplicated on the minimal weight and sorted.
pub fn build_d(h: &Hierarchy) -> Vec<WeightedPair> {
    let mut pairs = BTreeMap::new();
    for i in 1..h.k() {
        for u in 0..h.n() {
            if let Some(p) = h.pivot(i, u) {
                if p != u {
                    insert_min(&mut pairs, u, p, h.pivot_dist(i, u));
                }
            }
        }
    }
    pairs.into_iter().map(|((u, v), w)| (u, v, w)).collect()
}

pub(crate) fn insert_min(map: &mut BTreeMap<(VertexId, VertexId), f64>, u: VertexId, v: VertexId, w: f64) {
    let key = (u.min(v), u.max(v));
    map.entry(key)
        .and_modify(|old| {
            if w < *old {
                *old = w;
            }
        })
        .or_insert(w);
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BunchEdges {
    /// `(u, s, δ(u, s))` with `s ∈ Ball(u, S_i, S_{i+1})`, sorted by `(u, s)`.
    pub b1: Vec<WeightedPair>,
    /// `(u, s, δ(u, s))` with `u ∈ S_1` and `s ∈ Ball(u, S_i, S_{i+2})`.
    pub b2: Vec<WeightedPair>,
}

#[derive(Debug, Clone, Copy)]
pub enum BunchMode<'a> {
    /// Distances read from an all-pairs matrix.
    Exact(&'a DistanceMatrix),
    /// One edge-restricted Dijkstra per centre.
    Restricted,
}

/// Restricted Dijkstra from every member of `S_level` over `E_cap`.
pub fn restricted_sweep(graph: &Graph, h: &Hierarchy, level: usize, cap: usize) -> Vec<DistanceRow> {
    let filter = LevelFilter {
        levels: h.edge_levels(),
        cap,
    };
    h.set(level)
        .par_iter()
        .map(|&s| sssp(graph, s, Some(filter)).expect("vertex in range"))
        .collect()
}

/// `B_1(V)` and, when `with_b2`, `B_2(S_1)`. Witness levels range over
/// `i + j <= k - 1` so that the bounding pivot level exists.
pub fn build_bunch_edges(graph: &Graph, h: &Hierarchy, mode: BunchMode<'_>, with_b2: bool) -> BunchEdges {
    let k = h.k();
    let mut out = BunchEdges::default();
    for (j, list) in [(1, &mut out.b1), (2, &mut out.b2)] {
        if j == 2 && !with_b2 {
            continue;
        }
        let mut found = BTreeMap::new();
        for i in 0..k.saturating_sub(j) {
            let centre_ok = |u: VertexId| j == 1 || h.in_set(1, u);
            match mode {
                BunchMode::Exact(d) => {
                    for &s in h.set(i) {
                        for u in (0..h.n()).filter(|&u| u != s && centre_ok(u)) {
                            let dist = d.get(u, s);
                            if h.inside_pivot_radius(u, i + j, dist) {
                                found.insert((u, s), dist);
                            }
                        }
                    }
                }
                BunchMode::Restricted => {
                    for row in restricted_sweep(graph, h, i, i + j) {
                        let s = row.source;
                        for u in (0..h.n()).filter(|&u| u != s && centre_ok(u)) {
                            let dist = row.dist[u];
                            if h.inside_pivot_radius(u, i + j, dist) {
                                found.insert((u, s), dist);
                            }
                        }
                    }
                }
            }
        }
        *list = found.into_iter().map(|((u, s), w)| (u, s, w)).collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::apsp_exact;

    fn path(n: usize) -> Graph {
        Graph::unweighted(n, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(HierarchyConfig::uniform(1, 0).is_err());
        assert!(HierarchyConfig::new(3, vec![0.5], 0).is_err());
        assert!(HierarchyConfig::new(3, vec![0.5, 1.5], 0).is_err());
        let c = HierarchyConfig::uniform(4, 9).unwrap();
        assert_eq!(c.betas, vec![0.25; 3]);
    }

    #[test]
    fn certain_sampling_reaches_top() {
        let c = HierarchyConfig::new(4, vec![0.0; 3], 1).unwrap();
        assert_eq!(sample_hierarchy(10, &c).unwrap(), vec![3; 10]);
        // n = 1 gives probability 1 at every level as well.
        let c = HierarchyConfig::uniform(3, 5).unwrap();
        assert_eq!(sample_hierarchy(1, &c).unwrap(), vec![2]);
    }

    #[test]
    fn pivots_on_path() {
        let g = path(3);
        let h = Hierarchy::from_levels(&g, 2, vec![0, 0, 1]).unwrap();
        assert_eq!((0..3).map(|u| h.pivot(1, u)).collect::<Vec<_>>(), vec![Some(2); 3]);
        assert_eq!(
            (0..3).map(|u| h.pivot_dist(1, u)).collect::<Vec<_>>(),
            vec![2.0, 1.0, 0.0]
        );
        assert_eq!(build_d(&h), vec![(0, 2, 2.0), (1, 2, 1.0)]);
        assert_eq!(h.pivot_dist(2, 0), f64::INFINITY);
        assert_eq!(h.pivot(0, 1), Some(1));
    }

    #[test]
    fn empty_levels_make_every_edge_level_one() {
        let g = path(4);
        let h = Hierarchy::from_levels(&g, 3, vec![0; 4]).unwrap();
        assert!(h.edge_levels().iter().all(|&l| l == 1));
        assert!(h.set(1).is_empty());
        assert_eq!(h.pivot(1, 0), None);
        // Every finite pair lands in B_1 through the S_0 ball.
        let d = apsp_exact(&g);
        let b = build_bunch_edges(&g, &h, BunchMode::Exact(&d), true);
        assert_eq!(b.b1.len(), 12);
        assert!(b.b2.is_empty());
    }

    #[test]
    fn middle_level_edge() {
        // Edge 1-2 (w=2) is heavier than the p_1 distances of both ends but
        // lighter than the p_2 distance of vertex 2.
        let g = Graph::new(4, [(0, 1, 1.0), (1, 2, 2.0), (2, 3, 1.0)]).unwrap();
        let h = Hierarchy::from_levels(&g, 3, vec![2, 1, 0, 1]).unwrap();
        assert_eq!(h.pivot_dist(1, 2), 1.0);
        assert_eq!(h.pivot_dist(2, 2), 3.0);
        assert_eq!(h.edge_level(1), 2);
        assert_eq!(h.edge_level(0), 3);
        assert_eq!(h.edge_level(2), 2);
    }

    #[test]
    fn ball_on_small_path() {
        let g = path(3);
        let h = Hierarchy::from_levels(&g, 3, vec![1, 0, 0]).unwrap();
        let d = apsp_exact(&g);
        let b = build_bunch_edges(&g, &h, BunchMode::Exact(&d), true);
        // Ball(1, S_0, S_1) = {1}; the only entry for centre 1 comes from the
        // S_1 ball, which is unbounded because S_2 is empty.
        let from_1: Vec<_> = b.b1.iter().filter(|e| e.0 == 1).copied().collect();
        assert_eq!(from_1, vec![(1, 0, 1.0)]);
        let r = build_bunch_edges(&g, &h, BunchMode::Restricted, true);
        assert_eq!(b, r);
    }

    #[test]
    fn all_pivots_are_self() {
        let g = path(5);
        let h = Hierarchy::from_levels(&g, 3, vec![2; 5]).unwrap();
        assert!(build_d(&h).is_empty());
        assert_eq!(h.pivot_dist(2, 3), 0.0);
    }

    #[test]
    fn dump_format() {
        let g = path(2);
        let h = Hierarchy::from_levels(&g, 2, vec![0, 0]).unwrap();
        let mut buf = Vec::new();
        h.write_dump(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "v 0 0\nv 1 0\npivot 1 0 none inf\npivot 1 1 none inf\nelevel 0 1\n"
        );
    }

    #[test]
    fn rejects_bad_levels() {
        let g = path(2);
        assert!(Hierarchy::from_levels(&g, 2, vec![0, 2]).is_err());
        assert!(Hierarchy::from_levels(&g, 2, vec![0]).is_err());
    }
}
