// SPDX-License-Identifier: Apache-2.0

use std::io::Write;

use rand::Rng;
use rayon::prelude::*;

use super::classify::{classify_path, Case};
use crate::emulator::{Emulator, StretchParams};
use crate::error::{Error, Result};
use crate::graph::{le_tol, min_bound_from_row, sssp, Graph, VertexId, VERIFY_TOL};
use crate::seed;

/// Which vertex pairs to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairSelection {
    /// Every pair for `n <= 300`, otherwise 10⁴ sampled pairs.
    Auto,
    All,
    /// Up to this many distinct pairs drawn with the report seed.
    Sample(usize),
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions<'a> {
    pub enumeration_cap: usize,
    pub pairs: PairSelection,
    /// Pair-sampling seed.
    pub seed: u64,
    /// `E_i` levels of the graph edges; without them no case labels.
    pub edge_levels: Option<&'a [usize]>,
}

impl Default for VerifyOptions<'_> {
    fn default() -> Self {
        Self {
            enumeration_cap: 100_000,
            pairs: PairSelection::Auto,
            seed: 0,
            edge_levels: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairRecord {
    pub u: VertexId,
    pub v: VertexId,
    pub delta_g: f64,
    pub delta_h: f64,
    pub case: Option<Case>,
    pub w1: f64,
    pub w2: f64,
    pub bound: f64,
    /// `bound - delta_h`.
    pub slack: f64,
    pub truncated: bool,
}

impl PairRecord {
    pub fn fails_bound(&self) -> bool {
        !le_tol(self.delta_h, self.bound, VERIFY_TOL)
    }

    pub fn below_distance(&self) -> bool {
        self.delta_h < self.delta_g * (1.0 - VERIFY_TOL)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct StretchReport {
    pub records: Vec<PairRecord>,
    /// Bound failures on pairs whose path search completed.
    pub violations: usize,
    /// Bound failures after the enumeration cap was hit.
    pub inconclusive: usize,
    /// Pairs with `δ_H < δ_G` beyond tolerance.
    pub lower_violations: usize,
    pub max_ratio: f64,
    /// Pairs per case `a`, `b`, `c`.
    pub case_counts: [usize; 3],
    /// Case-a pairs with `δ_H != δ_G`.
    pub case_a_mismatches: usize,
    /// Case-b pairs above `δ_G + 2(k-1)W_1`.
    pub case_b_exceeded: usize,
}

impl StretchReport {
    pub fn pairs(&self) -> usize {
        self.records.len()
    }

    pub fn passed(&self) -> bool {
        self.violations == 0 && self.lower_violations == 0
    }

    pub fn summary(&self) -> String {
        format!(
            "summary: pairs={} violations={} max_ratio={} inconclusive={} lower_violations={} case_a={} case_b={} case_c={}",
            self.pairs(),
            self.violations,
            self.max_ratio,
            self.inconclusive,
            self.lower_violations,
            self.case_counts[0],
            self.case_counts[1],
            self.case_counts[2],
        )
    }

    /// Per-pair CSV followed by the summary line.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "u,v,delta_g,delta_h,case,w1,w2,bound,slack,truncated")?;
        for r in &self.records {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                r.u,
                r.v,
                r.delta_g,
                r.delta_h,
                r.case.map_or("-", Case::as_str),
                r.w1,
                r.w2,
                r.bound,
                r.slack,
                r.truncated
            )?;
        }
        writeln!(out, "{}", self.summary())?;
        Ok(())
    }
}

/// Checks `δ_G <= δ_H <= alpha·δ_G + a·W_1 + b·W_2` on every selected pair,
/// with `W_1, W_2` taken from the shortest path minimizing the bound.
pub fn verify_stretch(
    graph: &Graph,
    emulator: &Emulator,
    params: StretchParams,
    options: VerifyOptions<'_>,
) -> Result<StretchReport> {
    let n = graph.n();
    if emulator.n() != n {
        return Err(Error::arg(format!(
            "emulator has {} vertices but the graph has {n}",
            emulator.n()
        )));
    }
    if let Some(levels) = options.edge_levels {
        if levels.len() != graph.m() {
            return Err(Error::arg("edge level vector does not match the edge count"));
        }
    }
    let targets = select_pairs(n, options.pairs, options.seed);
    let h = emulator.to_graph();
    let (a, b) = (params.a as f64, params.b as f64);
    let per_source: Vec<Result<Vec<PairRecord>>> = targets
        .par_iter()
        .enumerate()
        .filter(|(_, vs)| !vs.is_empty())
        .map(|(u, vs)| {
            let row_g = sssp(graph, u, None)?;
            let row_h = sssp(&h, u, None)?;
            let mut out = Vec::with_capacity(vs.len());
            for &v in vs {
                let delta_g = row_g.dist[v];
                if !delta_g.is_finite() {
                    continue;
                }
                let best = min_bound_from_row(graph, &row_g, v, a, b, options.enumeration_cap)?;
                let case = match options.edge_levels {
                    Some(levels) => Some(classify_path(&best.path, levels)?.case),
                    None => None,
                };
                let delta_h = row_h.dist[v];
                let bound = params.alpha as f64 * delta_g + best.bound_term;
                out.push(PairRecord {
                    u,
                    v,
                    delta_g,
                    delta_h,
                    case,
                    w1: best.w1,
                    w2: best.w2,
                    bound,
                    slack: bound - delta_h,
                    truncated: best.truncated,
                });
            }
            Ok(out)
        })
        .collect();
    let mut report = StretchReport::default();
    for chunk in per_source {
        report.records.extend(chunk?);
    }
    let k = params.k as f64;
    for r in &report.records {
        if r.fails_bound() {
            if r.truncated {
                report.inconclusive += 1;
            } else {
                report.violations += 1;
            }
        }
        if r.below_distance() {
            report.lower_violations += 1;
        }
        if r.delta_g > 0.0 {
            report.max_ratio = report.max_ratio.max(r.delta_h / r.delta_g);
        }
        match r.case {
            Some(Case::A) => {
                report.case_counts[0] += 1;
                if !(le_tol(r.delta_h, r.delta_g, VERIFY_TOL) && !r.below_distance()) {
                    report.case_a_mismatches += 1;
                }
            }
            Some(Case::B) => {
                report.case_counts[1] += 1;
                if !le_tol(r.delta_h, r.delta_g + 2.0 * (k - 1.0) * r.w1, VERIFY_TOL) {
                    report.case_b_exceeded += 1;
                }
            }
            Some(Case::C) => report.case_counts[2] += 1,
            None => {}
        }
    }
    Ok(report)
}

/// Targets per source, each list ascending and holding only `v > u`.
pub(crate) fn select_pairs(n: usize, selection: PairSelection, base: u64) -> Vec<Vec<VertexId>> {
    let budget = match selection {
        PairSelection::All => None,
        PairSelection::Auto if n <= 300 => None,
        PairSelection::Auto => Some(10_000),
        PairSelection::Sample(s) => Some(s),
    };
    let total = n * n.saturating_sub(1) / 2;
    let mut targets = vec![Vec::new(); n];
    match budget {
        Some(s) if s < total => {
            let mut rng = seed::rng(base, seed::STREAM_VERIFY, 0);
            let mut chosen = std::collections::BTreeSet::new();
            while chosen.len() < s {
                let u = rng.gen_range(0..n);
                let v = rng.gen_range(0..n);
                if u != v {
                    chosen.insert((u.min(v), u.max(v)));
                }
            }
            for (u, v) in chosen {
                targets[u].push(v);
            }
        }
        _ => {
            for (u, t) in targets.iter_mut().enumerate() {
                t.extend(u + 1..n);
            }
        }
    }
    targets
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::emulator::{stretch_params, BuildMeta, BuildMode};

    fn meta() -> BuildMeta {
        BuildMeta {
            k: 2,
            seed: 0,
            mode: BuildMode::Original,
            betas: vec![0.5],
        }
    }

    fn cycle() -> Graph {
        Graph::new(5, [(0, 1, 0.5), (1, 2, 0.25), (2, 3, 1.0), (3, 4, 0.75), (4, 0, 0.125)]).unwrap()
    }

    #[test]
    fn original_graph_is_exact() {
        let g = cycle();
        let e = Emulator::from_graph(&g, meta());
        let r = verify_stretch(&g, &e, stretch_params(2).unwrap(), VerifyOptions::default()).unwrap();
        assert_eq!(r.pairs(), 10);
        assert!(r.passed());
        assert_eq!(r.max_ratio, 1.0);
        assert!(r.records.iter().all(|p| p.slack >= 0.0 && p.delta_h == p.delta_g));
    }

    #[test]
    fn empty_emulator_violates() {
        let g = cycle();
        let e = Emulator::new(5, vec![], meta()).unwrap();
        let r = verify_stretch(&g, &e, stretch_params(2).unwrap(), VerifyOptions::default()).unwrap();
        assert_eq!(r.violations, 10);
        assert!(!r.passed());
        assert!(r.records.iter().all(|p| p.delta_h.is_infinite()));
    }

    #[test]
    fn mismatched_sizes() {
        let g = cycle();
        let e = Emulator::new(4, vec![], meta()).unwrap();
        assert!(verify_stretch(&g, &e, stretch_params(2).unwrap(), VerifyOptions::default()).is_err());
    }

    #[test]
    fn sampling_is_deterministic_and_distinct() {
        let a = select_pairs(500, PairSelection::Auto, 3);
        let b = select_pairs(500, PairSelection::Auto, 3);
        assert_eq!(a, b);
        assert_eq!(a.iter().map(Vec::len).sum::<usize>(), 10_000);
        assert!(a.iter().enumerate().all(|(u, vs)| vs.iter().all(|&v| v > u)));
        assert_eq!(select_pairs(4, PairSelection::Sample(100), 0).concat().len(), 6);
    }

    #[test]
    fn csv_layout() {
        let g = Graph::new(2, [(0, 1, 0.5)]).unwrap();
        let e = Emulator::from_graph(&g, meta());
        let levels = [1];
        let opts = VerifyOptions {
            edge_levels: Some(&levels),
            ..VerifyOptions::default()
        };
        let r = verify_stretch(&g, &e, stretch_params(2).unwrap(), opts).unwrap();
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "u,v,delta_g,delta_h,case,w1,w2,bound,slack,truncated");
        assert_eq!(lines[1], "0,1,0.5,0.5,a,0.5,0,1.5,1,false");
        assert!(lines[2].starts_with("summary: pairs=1 violations=0 max_ratio=1"));
    }
}
