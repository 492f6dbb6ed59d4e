// SPDX-License-Identifier: Apache-2.0

//! Spot checks of the pivot-distance bounds behind the case-b and case-c
//! stretch arguments, evaluated on exact distances.

use rand::seq::SliceRandom;
use rayon::prelude::*;

use super::classify::{classify_path, Case};
use super::stretch::select_pairs;
use super::PairSelection;
use crate::graph::{le_tol, sssp, DistanceMatrix, Graph, VertexId, VERIFY_TOL};
use crate::hierarchy::Hierarchy;
use crate::seed;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ClaimsReport {
    /// Edges outside `E_1` examined for the case-b bound.
    pub b_edges: usize,
    /// `(edge, i)` instances with all case-b premises satisfied.
    pub b_instances: usize,
    /// Sampled shortest paths with at least two edges outside `E_1`.
    pub c_paths: usize,
    /// `(path, i)` instances with all case-c premises satisfied.
    pub c_instances: usize,
    pub counterexamples: Vec<String>,
}

impl ClaimsReport {
    pub fn instances(&self) -> usize {
        self.b_instances + self.c_instances
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    fn merge(&mut self, other: ClaimsReport) {
        self.b_edges += other.b_edges;
        self.b_instances += other.b_instances;
        self.c_paths += other.c_paths;
        self.c_instances += other.c_instances;
        self.counterexamples.extend(other.counterexamples);
    }
}

/// Bounds on `(δ(x, p_i(x)), δ(w, p_i(w)))` in terms of `δ(x, w)` and the
/// weights of the first and last missing edges.
pub fn case_c_bound(i: usize, dxw: f64, wxy: f64, wzw: f64) -> (f64, f64) {
    let h = |t: usize| t as f64 / 2.0;
    let (cd, c_near, c_far) = if i % 2 == 1 {
        (h(i - 1), h(i + 1), h(i - 1))
    } else if i.is_multiple_of(4) {
        // i - 4 may be negative only for the unused i = 0.
        (h(i), h(i + 2), (i as f64 - 4.0) / 2.0)
    } else {
        (h(i), h(i - 2), h(i))
    };
    (
        cd * dxw + c_near * wxy + c_far * wzw,
        cd * dxw + c_far * wxy + c_near * wzw,
    )
}

/// Samples up to `sample_budget` edges outside `E_1` for the case-b bound and
/// up to `sample_budget` vertex pairs whose canonical shortest path has at
/// least two such edges for the case-c bound.
pub fn verify_claims(
    graph: &Graph,
    h: &Hierarchy,
    dist: &DistanceMatrix,
    sample_budget: usize,
    seed_base: u64,
) -> ClaimsReport {
    let mut report = ClaimsReport::default();
    let mut heavy: Vec<usize> = (0..graph.m()).filter(|&e| !h.in_e(1, e)).collect();
    if heavy.len() > sample_budget {
        let mut rng = seed::rng(seed_base, seed::STREAM_VERIFY, 1);
        heavy.shuffle(&mut rng);
        heavy.truncate(sample_budget);
        heavy.sort_unstable();
    }
    for e in heavy {
        report.b_edges += 1;
        check_case_b(graph, h, dist, e, &mut report);
    }

    let targets = select_pairs(graph.n(), PairSelection::Sample(sample_budget), seed_base ^ 0xC1A1);
    let parts: Vec<ClaimsReport> = targets
        .par_iter()
        .enumerate()
        .filter(|(_, vs)| !vs.is_empty())
        .map(|(u, vs)| {
            let mut part = ClaimsReport::default();
            let row = sssp(graph, u, None).expect("vertex in range");
            for &v in vs {
                let Some(vertices) = row.path_to(v) else { continue };
                let path = crate::graph::PathRecord::from_vertices(graph, vertices).expect("path edges exist");
                let class = classify_path(&path, h.edge_levels()).expect("non-empty path");
                if class.case != Case::C {
                    continue;
                }
                part.c_paths += 1;
                let (f, l) = (class.first_missing.unwrap(), class.last_missing.unwrap());
                let x = path.vertices[f.position];
                let w = path.vertices[l.position + 1];
                let wxy = path.edge_weights[f.position];
                let wzw = path.edge_weights[l.position];
                check_case_c(h, dist, x, w, wxy, wzw, &mut part);
            }
            part
        })
        .collect();
    for p in parts {
        report.merge(p);
    }
    report
}

/// `p ∉ Ball(c, S_j, S_t)` using exact distances; an undefined pivot is
/// never a member.
fn outside(h: &Hierarchy, dist: &DistanceMatrix, p: Option<VertexId>, c: Option<VertexId>, j: usize, t: usize) -> bool {
    match (p, c) {
        (Some(p), Some(c)) => !h.in_ball(c, p, j, t, dist.get(c, p)),
        _ => true,
    }
}

fn check_case_b(graph: &Graph, h: &Hierarchy, dist: &DistanceMatrix, e: usize, report: &mut ClaimsReport) {
    let edge = graph.edge(e);
    let (x, y, w) = (edge.u, edge.v, edge.w);
    for i in 2..=h.k() {
        // Premise at level i adds j = i - 1 to those already checked.
        let j = i - 1;
        if !(outside(h, dist, h.pivot(j, x), Some(y), j, j + 1) && outside(h, dist, h.pivot(j, y), Some(x), j, j + 1)) {
            return;
        }
        report.b_instances += 1;
        let bound = i as f64 * w;
        for c in [x, y] {
            let d = h.pivot_dist(i, c);
            if !le_tol(d, bound, VERIFY_TOL) {
                report.counterexamples.push(format!(
                    "case b: edge ({x},{y}) w={w} i={i}: δ({c}, p_{i}({c})) = {d} > {bound}"
                ));
            }
        }
    }
}

fn check_case_c(
    h: &Hierarchy,
    dist: &DistanceMatrix,
    x: VertexId,
    w: VertexId,
    wxy: f64,
    wzw: f64,
    report: &mut ClaimsReport,
) {
    let (p1x, p1w) = (h.pivot(1, x), h.pivot(1, w));
    if !(outside(h, dist, p1x, Some(w), 1, 2) && outside(h, dist, p1w, Some(x), 1, 2)) {
        return;
    }
    let dxw = dist.get(x, w);
    for i in 2..=h.k() {
        if i >= 3 {
            let j = i - 2;
            if !(outside(h, dist, h.pivot(j, x), p1w, j, j + 2) && outside(h, dist, h.pivot(j, w), p1x, j, j + 2)) {
                return;
            }
        }
        report.c_instances += 1;
        let (bx, bw) = case_c_bound(i, dxw, wxy, wzw);
        for (c, bound) in [(x, bx), (w, bw)] {
            let d = h.pivot_dist(i, c);
            if !le_tol(d, bound, VERIFY_TOL) {
                report.counterexamples.push(format!(
                    "case c: x={x} w={w} δ(x,w)={dxw} w(x,y)={wxy} w(z,w)={wzw} i={i}: δ({c}, p_{i}({c})) = {d} > {bound}"
                ));
            }
        }
    }
}
