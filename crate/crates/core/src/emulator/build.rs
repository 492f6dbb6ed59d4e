// SPDX-License-Identifier: Apache-2.0

//! Oracle-weighted builders: auxiliary edges get exact graph distances.

use std::collections::BTreeMap;

use super::{Assembler, BuildMeta, BuildMode, EdgeTag, Emulator};
use crate::error::Result;
use crate::graph::{apsp_exact, DistanceMatrix, Graph, VertexId};
use crate::hierarchy::{build_bunch_edges, build_d, BunchMode, Hierarchy, HierarchyConfig};

/// Pairs of `S_{i-1} × S_{k-i}` over `i in 1..=k`, normalized to `u < v`
/// and tagged with the smaller of `i` and its mirror `k + 1 - i`.
pub fn assemble_products(h: &Hierarchy) -> Vec<(VertexId, VertexId, usize)> {
    products_where(h, |_| true)
}

fn products_where(h: &Hierarchy, keep: impl Fn(usize) -> bool) -> Vec<(VertexId, VertexId, usize)> {
    let k = h.k();
    let mut out = BTreeMap::new();
    // i and k + 1 - i give the same undirected set.
    for i in (1..=k.div_ceil(2)).filter(|&i| keep(i)) {
        for &s in h.set(i - 1) {
            for &t in h.set(k - i) {
                if s != t {
                    out.entry((s.min(t), s.max(t))).or_insert(i);
                }
            }
        }
    }
    out.into_iter().map(|((u, v), i)| (u, v, i)).collect()
}

pub(crate) struct Families {
    pub products: fn(usize, usize) -> bool,
    pub b1: bool,
    pub b2: bool,
}

pub(crate) fn push_e1(graph: &Graph, h: &Hierarchy, asm: &mut Assembler) {
    for (idx, e) in graph.edges().iter().enumerate() {
        if h.in_e(1, idx) {
            asm.add(e.u, e.v, e.w, EdgeTag::E1);
        }
    }
}

fn oracle_emulator(graph: &Graph, h: &Hierarchy, dist: &DistanceMatrix, fam: Families, meta: BuildMeta) -> Emulator {
    let mut asm = Assembler::default();
    for (u, p, w) in build_d(h) {
        asm.add(u, p, w, EdgeTag::D);
    }
    push_e1(graph, h, &mut asm);
    let k = h.k();
    for (u, v, i) in products_where(h, |i| (fam.products)(k, i)) {
        asm.add(u, v, dist.get(u, v), EdgeTag::Product(i));
    }
    if fam.b1 || fam.b2 {
        let bunches = build_bunch_edges(graph, h, BunchMode::Exact(dist), fam.b2);
        if fam.b1 {
            for (u, s, w) in bunches.b1 {
                asm.add(u, s, w, EdgeTag::B1);
            }
        }
        for (u, s, w) in bunches.b2 {
            asm.add(u, s, w, EdgeTag::B2);
        }
    }
    asm.finish(graph.n(), meta)
}

/// `D ∪ E_1 ∪ (S_1 × S_1) ∪ (V × S_2)` on a two-level hierarchy sampled with
/// exponents `beta` and `gamma`.
pub fn build_alg1(graph: &Graph, beta: f64, gamma: f64, seed: u64) -> Result<Emulator> {
    let config = HierarchyConfig::new(3, vec![beta, gamma], seed)?;
    let h = Hierarchy::build(graph, &config)?;
    let dist = apsp_exact(graph);
    let fam = Families {
        products: |_, _| true,
        b1: false,
        b2: false,
    };
    Ok(oracle_emulator(graph, &h, &dist, fam, meta(&config, BuildMode::Alg1)))
}

/// `D ∪ E_1 ∪ (S_1 × S_2) ∪ B_1(V)` on a three-level hierarchy.
pub fn build_alg2(graph: &Graph, betas: [f64; 3], seed: u64) -> Result<Emulator> {
    let config = HierarchyConfig::new(4, betas.to_vec(), seed)?;
    let h = Hierarchy::build(graph, &config)?;
    let dist = apsp_exact(graph);
    let fam = Families {
        products: |_, i| i == 2,
        b1: true,
        b2: false,
    };
    Ok(oracle_emulator(graph, &h, &dist, fam, meta(&config, BuildMode::Alg2)))
}

/// All five families over `k - 1` sampled levels. `betas` defaults to `1/k`
/// at every level.
pub fn build_general(graph: &Graph, k: usize, betas: Option<Vec<f64>>, seed: u64) -> Result<Emulator> {
    let config = match betas {
        Some(b) => HierarchyConfig::new(k, b, seed)?,
        None => HierarchyConfig::uniform(k, seed)?,
    };
    let h = Hierarchy::build(graph, &config)?;
    let dist = apsp_exact(graph);
    Ok(build_general_with(graph, &h, &dist, meta(&config, BuildMode::General)))
}

/// [`build_general`] over a given hierarchy and distance matrix.
pub fn build_general_with(graph: &Graph, h: &Hierarchy, dist: &DistanceMatrix, meta: BuildMeta) -> Emulator {
    let fam = Families {
        products: |_, _| true,
        b1: true,
        b2: true,
    };
    oracle_emulator(graph, h, dist, fam, meta)
}

pub(crate) fn meta(config: &HierarchyConfig, mode: BuildMode) -> BuildMeta {
    BuildMeta {
        k: config.k,
        seed: config.seed,
        mode,
        betas: config.betas.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::sssp;

    fn star(n: usize) -> Graph {
        Graph::unweighted(n, (1..n).map(|v| (0, v))).unwrap()
    }

    #[test]
    fn products_fold_mirrors() {
        let g = star(5);
        let h = Hierarchy::from_levels(&g, 2, vec![0, 1, 0, 1, 0]).unwrap();
        let p = assemble_products(&h);
        // V × S_1 without self pairs: 4 + 4 - 1 shared pair (1,3).
        assert_eq!(p.len(), 7);
        assert!(p.iter().all(|&(u, v, i)| u < v && i == 1));
    }

    #[test]
    fn products_count_for_k4() {
        let g = star(8);
        let levels = vec![3, 2, 1, 1, 0, 0, 0, 0];
        let h = Hierarchy::from_levels(&g, 4, levels).unwrap();
        let p = assemble_products(&h);
        let (s1, s2, s3) = (h.set(1).len(), h.set(2).len(), h.set(3).len());
        assert!(p.len() <= 8 * s3 + s1 * s2);
        let mut brute = std::collections::BTreeSet::new();
        for i in 1..=4 {
            for &s in h.set(i - 1) {
                for &t in h.set(4 - i) {
                    if s != t {
                        brute.insert((s.min(t), s.max(t)));
                    }
                }
            }
        }
        assert_eq!(
            p.iter()
                .map(|&(u, v, _)| (u, v))
                .collect::<std::collections::BTreeSet<_>>(),
            brute
        );
    }

    #[test]
    fn empty_factor_contributes_nothing() {
        let g = star(4);
        let h = Hierarchy::from_levels(&g, 3, vec![1, 0, 0, 0]).unwrap();
        let p = assemble_products(&h);
        // S_2 is empty, leaving only S_1 × S_1 which has no off-diagonal pair.
        assert!(p.is_empty());
    }

    #[test]
    fn single_vertex_graph() {
        let g = Graph::new(1, []).unwrap();
        assert!(build_alg1(&g, 1.0 / 3.0, 1.0 / 3.0, 1).unwrap().is_empty());
        assert!(build_general(&g, 4, None, 1).unwrap().is_empty());
    }

    #[test]
    fn two_vertex_alg2() {
        let g = Graph::new(2, [(0, 1, 0.75)]).unwrap();
        let e = build_alg2(&g, [0.25; 3], 3).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e.edges()[0].w, 0.75);
    }

    #[test]
    fn star_with_at_most_one_sampled_vertex_is_exact() {
        // With |S_1| <= 1 every star edge is in E_1 or is the centre's pivot
        // edge in D.
        let g = star(6);
        let mut checked = 0;
        for k in 2..=6 {
            for seed in 0..40 {
                let config = HierarchyConfig::uniform(k, seed).unwrap();
                let h = Hierarchy::build(&g, &config).unwrap();
                let e = build_general(&g, k, None, seed).unwrap();
                let hg = e.to_graph();
                let p = crate::emulator::stretch_params(k).unwrap();
                for u in 0..6 {
                    let dh = sssp(&hg, u, None).unwrap().dist;
                    let dg = sssp(&g, u, None).unwrap().dist;
                    for v in 0..6 {
                        assert!(dh[v] <= p.bound(dg[v], 1.0, 1.0));
                    }
                    if h.set(1).len() <= 1 {
                        assert_eq!(dh, dg);
                    }
                }
                checked += usize::from(h.set(1).len() <= 1);
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn star_with_two_sampled_leaves_can_stretch() {
        // Leaves 1 and 2 in S_2 and leaf 1 in S_3: the centre edge to 2 is
        // neither light nor a pivot edge, and no ball reaches across it.
        let g = star(4);
        let h = Hierarchy::from_levels(&g, 4, vec![0, 3, 2, 0]).unwrap();
        assert!(!h.in_e(1, g.edge_between(0, 2).unwrap()));
        let meta = BuildMeta {
            k: 4,
            seed: 0,
            mode: BuildMode::General,
            betas: vec![0.25; 3],
        };
        let e = build_general_with(&g, &h, &apsp_exact(&g), meta);
        assert!(!e.pairs().any(|p| p == (0, 2)));
        assert_eq!(sssp(&e.to_graph(), 0, None).unwrap().dist[2], 3.0);
    }

    #[test]
    fn k4_with_everything_sampled_keeps_distances() {
        let g = Graph::new(4, [(0, 1, 0.1), (1, 2, 0.2), (2, 3, 0.3), (0, 3, 0.9), (0, 2, 0.5)]).unwrap();
        let e = build_alg1(&g, 0.0, 0.0, 1).unwrap();
        let hg = e.to_graph();
        let d = apsp_exact(&g);
        for u in 0..4 {
            let row = sssp(&hg, u, None).unwrap();
            for v in 0..4 {
                assert!((row.dist[v] - d.get(u, v)).abs() <= 1e-12);
            }
        }
    }
}
