// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use emulator_forge::gen::{generate, Connectivity, GraphSpec, WeightDist};
use emulator_forge::Graph;

pub fn connected(n: usize, m: usize, weights: WeightDist, seed: u64) -> Graph {
    generate(&GraphSpec {
        n,
        m,
        weights,
        connectivity: Connectivity::RequireConnected,
        seed,
    })
    .expect("feasible spec")
    .graph
}

pub fn weighted(n: usize, m: usize, seed: u64) -> Graph {
    connected(n, m, WeightDist::Uniform, seed)
}

pub fn any_graph(n: usize, m: usize, weights: WeightDist, seed: u64) -> Graph {
    generate(&GraphSpec {
        n,
        m,
        weights,
        connectivity: Connectivity::Any,
        seed,
    })
    .expect("feasible spec")
    .graph
}

/// Bellman–Ford from `s`.
pub fn bellman_ford(g: &Graph, s: usize) -> Vec<f64> {
    let mut d = vec![f64::INFINITY; g.n()];
    d[s] = 0.0;
    for _ in 0..g.n() {
        let mut changed = false;
        for e in g.edges() {
            for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                if d[a] + e.w < d[b] {
                    d[b] = d[a] + e.w;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    d
}

/// Floyd–Warshall distances as nested rows.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.n();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (u, row) in d.iter_mut().enumerate() {
        row[u] = 0.0;
    }
    for e in g.edges() {
        d[e.u][e.v] = d[e.u][e.v].min(e.w);
        d[e.v][e.u] = d[e.v][e.u].min(e.w);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Relative closeness at the internal-consistency tolerance.
pub fn close(a: f64, b: f64) -> bool {
    if a.is_infinite() || b.is_infinite() {
        return a == b;
    }
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}
