// SPDX-License-Identifier: Apache-2.0

//! Builder that fills emulator weights from pivot distances, edge
//! relaxations and edge-restricted Dijkstra sweeps instead of all-pairs
//! distances.

use std::collections::BTreeMap;

use super::build::{assemble_products, meta, push_e1};
use super::{Assembler, BuildMode, EdgeTag, Emulator};
use crate::error::Result;
use crate::graph::{Graph, VertexId};
use crate::hierarchy::{build_d, restricted_sweep, Hierarchy, HierarchyConfig};

/// Dense symmetric upper estimates `d[u][v] >= δ(u, v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimateMatrix {
    n: usize,
    d: Vec<f64>,
}

impl EstimateMatrix {
    fn new(n: usize) -> Self {
        let mut d = vec![f64::INFINITY; n * n];
        for u in 0..n {
            d[u * n + u] = 0.0;
        }
        Self { n, d }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: VertexId, v: VertexId) -> f64 {
        self.d[u * self.n + v]
    }

    #[inline]
    fn lower(&mut self, u: VertexId, v: VertexId, w: f64) {
        let n = self.n;
        if w < self.d[u * n + v] {
            self.d[u * n + v] = w;
            self.d[v * n + u] = w;
        }
    }
}

/// Samples the hierarchy and runs [`build_fast_with`].
pub fn build_fast(graph: &Graph, k: usize, betas: Option<Vec<f64>>, seed: u64) -> Result<(Emulator, EstimateMatrix)> {
    let config = match betas {
        Some(b) => HierarchyConfig::new(k, b, seed)?,
        None => HierarchyConfig::uniform(k, seed)?,
    };
    let h = Hierarchy::build(graph, &config)?;
    Ok(build_fast_with(graph, &h, meta(&config, BuildMode::Fast)))
}

/// Same families as the oracle builder, weighted by the estimate matrix.
/// `B_2(S_1)` and its sweeps are only built for `k >= 5`; below that the
/// stretch argument does not use them.
pub fn build_fast_with(graph: &Graph, h: &Hierarchy, meta: super::BuildMeta) -> (Emulator, EstimateMatrix) {
    let n = graph.n();
    let k = h.k();
    let mut d = EstimateMatrix::new(n);

    for i in 1..k {
        for u in 0..n {
            if let Some(p) = h.pivot(i, u) {
                d.lower(u, p, h.pivot_dist(i, u));
            }
        }
    }

    // Paths x -> p_i(x) -- y -> p_j(y); level 0 stands for the endpoint.
    for e in graph.edges() {
        for (x, y) in [(e.u, e.v), (e.v, e.u)] {
            for i in 0..k {
                let Some(px) = h.pivot(i, x) else { continue };
                let dx = h.pivot_dist(i, x) + e.w;
                for j in 0..k {
                    if let Some(py) = h.pivot(j, y) {
                        d.lower(px, py, dx + h.pivot_dist(j, y));
                    }
                }
            }
        }
    }

    // Sweeps from S_i over E_{i+1}; the last one runs over E_k = E and makes
    // V × S_{k-1} exact. Only the members of the witnessing ball enter B_j.
    let mut b1 = BTreeMap::new();
    let mut b2 = BTreeMap::new();
    let mut sweeps = vec![(1, 0..k)];
    if k >= 5 {
        sweeps.push((2, 0..k - 2));
    }
    for (j, range) in sweeps {
        for i in range {
            for row in restricted_sweep(graph, h, i, i + j) {
                let s = row.source;
                for (u, &du) in row.dist.iter().enumerate() {
                    if !du.is_finite() {
                        continue;
                    }
                    d.lower(s, u, du);
                    if u == s || i + j >= k || !h.inside_pivot_radius(u, i + j, du) {
                        continue;
                    }
                    if j == 1 {
                        b1.insert((u, s), ());
                    } else if h.in_set(1, u) {
                        b2.insert((u, s), ());
                    }
                }
            }
        }
    }

    let mut asm = Assembler::default();
    for (u, p, _) in build_d(h) {
        asm.add(u, p, d.get(u, p), EdgeTag::D);
    }
    push_e1(graph, h, &mut asm);
    for (u, v, i) in assemble_products(h) {
        asm.add(u, v, d.get(u, v), EdgeTag::Product(i));
    }
    for (u, s) in b1.into_keys() {
        asm.add(u, s, d.get(u, s), EdgeTag::B1);
    }
    for (u, s) in b2.into_keys() {
        asm.add(u, s, d.get(u, s), EdgeTag::B2);
    }
    (asm.finish(n, meta), d)
}
