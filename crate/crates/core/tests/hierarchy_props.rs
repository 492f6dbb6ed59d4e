// SPDX-License-Identifier: Apache-2.0

#![allow(clippy::needless_range_loop)]

mod common;

use common::{close, floyd_warshall};
use emulator_forge::gen::WeightDist;
use emulator_forge::graph::{apsp_exact, sssp};
use emulator_forge::hierarchy::{build_bunch_edges, build_d, sample_hierarchy, BunchMode};
use emulator_forge::{Graph, Hierarchy, HierarchyConfig};

fn suite() -> Vec<(Graph, usize, u64)> {
    let mut out = Vec::new();
    for k in 2..=6 {
        for seed in 0..3u64 {
            out.push((common::weighted(60, 180, seed * 11 + k as u64), k, seed));
            out.push((
                common::connected(60, 150, WeightDist::Unit, seed * 13 + k as u64),
                k,
                seed,
            ));
        }
    }
    out
}

fn hierarchy(g: &Graph, k: usize, seed: u64) -> Hierarchy {
    Hierarchy::build(g, &HierarchyConfig::uniform(k, seed).unwrap()).unwrap()
}

#[test]
fn levels_are_nested() {
    for (g, k, seed) in suite() {
        let h = hierarchy(&g, k, seed);
        assert_eq!(h.set(0).len(), g.n());
        for i in 1..k {
            for &u in h.set(i) {
                assert!(h.in_set(i - 1, u));
                assert!(h.level_of(u) >= i);
            }
            let count = (0..g.n()).filter(|&u| h.level_of(u) >= i).count();
            assert_eq!(count, h.set(i).len());
        }
        assert!(h.levels().iter().all(|&l| l < k));
    }
}

#[test]
fn pivots_match_brute_force() {
    for (g, k, seed) in suite() {
        let h = hierarchy(&g, k, seed);
        let fw = floyd_warshall(&g);
        for i in 0..k {
            for u in 0..g.n() {
                let best = h.set(i).iter().map(|&s| fw[u][s]).fold(f64::INFINITY, f64::min);
                assert!(close(h.pivot_dist(i, u), best), "level {i} vertex {u}");
                let p = h.pivot(i, u).unwrap();
                assert!(h.in_set(i, p));
                assert!(close(fw[u][p], best));
            }
            if i > 0 {
                for u in 0..g.n() {
                    assert!(h.pivot_dist(i, u) >= h.pivot_dist(i - 1, u));
                }
            }
        }
        for u in 0..g.n() {
            assert_eq!(h.pivot(k, u), None);
            assert_eq!(h.pivot_dist(k, u), f64::INFINITY);
        }
    }
}

#[test]
fn edge_levels_match_definition() {
    for (g, k, seed) in suite() {
        let h = hierarchy(&g, k, seed);
        let fw = floyd_warshall(&g);
        let pd = |i: usize, u: usize| h.set(i).iter().map(|&s| fw[u][s]).fold(f64::INFINITY, f64::min);
        let mut e1 = 0;
        for (idx, e) in g.edges().iter().enumerate() {
            let want = (1..k).find(|&i| e.w < pd(i, e.u) || e.w < pd(i, e.v)).unwrap_or(k);
            assert_eq!(h.edge_level(idx), want);
            for i in 1..=k {
                assert_eq!(h.in_e(i, idx), want <= i);
            }
            assert!(h.in_e(k, idx));
            e1 += usize::from(e.w < pd(1, e.u) || e.w < pd(1, e.v));
        }
        assert_eq!((0..g.m()).filter(|&e| h.in_e(1, e)).count(), e1);
    }
}

#[test]
fn pivot_pairs_carry_distances() {
    for (g, k, seed) in suite() {
        let h = hierarchy(&g, k, seed);
        let d = apsp_exact(&g);
        let pairs = build_d(&h);
        assert!(pairs.len() <= g.n() * (k - 1));
        for &(u, v, w) in &pairs {
            assert!(u < v);
            assert!(close(w, d.get(u, v)));
            assert!((1..k).any(|i| h.pivot(i, u) == Some(v) || h.pivot(i, v) == Some(u)));
        }
    }
}

#[test]
fn restricted_bunches_equal_exact_bunches() {
    for (g, k, seed) in suite() {
        let h = hierarchy(&g, k, seed);
        let d = apsp_exact(&g);
        let exact = build_bunch_edges(&g, &h, BunchMode::Exact(&d), true);
        let restricted = build_bunch_edges(&g, &h, BunchMode::Restricted, true);
        let keys = |v: &[(usize, usize, f64)]| v.iter().map(|e| (e.0, e.1)).collect::<Vec<_>>();
        assert_eq!(keys(&exact.b1), keys(&restricted.b1), "k {k} seed {seed}");
        assert_eq!(keys(&exact.b2), keys(&restricted.b2), "k {k} seed {seed}");
        for (a, b) in exact
            .b1
            .iter()
            .zip(&restricted.b1)
            .chain(exact.b2.iter().zip(&restricted.b2))
        {
            assert!(
                close(a.2, b.2),
                "k {k} seed {seed} {a:?} {b:?} unit {}",
                !g.is_weighted()
            );
        }
    }
}

#[test]
fn ball_members_reach_over_bounded_levels() {
    // A canonical shortest path from u to a member of Ball(u, S_i, S_t) uses
    // only edges of level at most t.
    for (g, k, seed) in suite() {
        let h = hierarchy(&g, k, seed);
        for i in 0..k - 1 {
            for &s in h.set(i) {
                let row = sssp(&g, s, None).unwrap();
                for u in 0..g.n() {
                    for t in i + 1..k {
                        if !h.in_ball(u, s, i, t, row.dist[u]) {
                            continue;
                        }
                        let path = row.path_to(u).unwrap();
                        for w in path.windows(2) {
                            let e = g.edge_between(w[0], w[1]).unwrap();
                            assert!(h.edge_level(e) <= t, "k {k} seed {seed} i {i} t {t}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn same_seed_same_hierarchy() {
    let g = common::weighted(200, 600, 4);
    let c = HierarchyConfig::uniform(4, 99).unwrap();
    assert_eq!(Hierarchy::build(&g, &c).unwrap(), Hierarchy::build(&g, &c).unwrap());
    let other = HierarchyConfig::uniform(4, 100).unwrap();
    assert_ne!(
        sample_hierarchy(200, &c).unwrap(),
        sample_hierarchy(200, &other).unwrap()
    );
}

#[test]
fn first_level_size_concentrates() {
    let n = 10_000;
    let expected = (n as f64).powf(2.0 / 3.0);
    let mut total = 0usize;
    for seed in 0..20 {
        let levels = sample_hierarchy(n, &HierarchyConfig::uniform(3, seed).unwrap()).unwrap();
        let s1 = levels.iter().filter(|&&l| l >= 1).count();
        assert!(
            (s1 as f64) >= expected / 4.0 && (s1 as f64) <= expected * 4.0,
            "seed {seed}: {s1}"
        );
        total += s1;
    }
    let mean = total as f64 / 20.0;
    assert!((mean - expected).abs() < 0.1 * expected, "mean {mean}");
}

#[test]
fn empty_top_level_for_k3() {
    let g = common::weighted(30, 80, 2);
    let h = Hierarchy::from_levels(&g, 3, (0..30).map(|u| usize::from(u % 5 == 0)).collect()).unwrap();
    assert!(h.set(2).is_empty());
    for u in 0..30 {
        assert_eq!(h.pivot(2, u), None);
        assert_eq!(h.pivot_dist(2, u), f64::INFINITY);
    }
    // Nothing is above level 2 once S_2 is empty.
    assert!(h.edge_levels().iter().all(|&l| l <= 2));
    let d = apsp_exact(&g);
    let b = build_bunch_edges(&g, &h, BunchMode::Exact(&d), true);
    // S_1 balls are unbounded: every (u, s) with s in S_1 appears.
    for &s in h.set(1) {
        for u in (0..30).filter(|&u| u != s) {
            assert!(b.b1.iter().any(|e| e.0 == u && e.1 == s));
        }
    }
}
