// SPDX-License-Identifier: Apache-2.0

//! Seeded `G(n, m)` random graphs.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::seed;

/// Resampling budget for [`Connectivity::RequireConnected`].
pub const MAX_ATTEMPTS: u64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightDist {
    /// Uniform on `(0, 1]`.
    Uniform,
    Unit,
}

impl FromStr for WeightDist {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(WeightDist::Uniform),
            "unit" => Ok(WeightDist::Unit),
            _ => Err(Error::arg(format!("unknown weight distribution `{s}`"))),
        }
    }
}

impl fmt::Display for WeightDist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeightDist::Uniform => "uniform",
            WeightDist::Unit => "unit",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connectivity {
    Any,
    RequireConnected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphSpec {
    pub n: usize,
    pub m: usize,
    pub weights: WeightDist,
    pub connectivity: Connectivity,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Generated {
    pub graph: Graph,
    /// Number of graphs drawn, including the returned one.
    pub attempts: u64,
}

/// Attempt `a` draws from stream `(seed, graph, a)`: first `m` distinct pairs
/// uniformly among all `n(n-1)/2`, then one weight per pair in `(u, v)` order.
pub fn generate(spec: &GraphSpec) -> Result<Generated> {
    if spec.n == 0 {
        return Err(Error::arg("n must be at least 1"));
    }
    let total = spec.n * (spec.n - 1) / 2;
    if spec.m > total {
        return Err(Error::arg(format!(
            "m = {} exceeds the {total} possible edges on {} vertices",
            spec.m, spec.n
        )));
    }
    let connected = spec.connectivity == Connectivity::RequireConnected;
    if connected && spec.m + 1 < spec.n {
        return Err(Error::arg(format!(
            "{} edges cannot connect {} vertices",
            spec.m, spec.n
        )));
    }
    for attempt in 0..MAX_ATTEMPTS {
        let graph = draw(spec, total, attempt);
        if !connected || graph.is_connected() {
            return Ok(Generated {
                graph,
                attempts: attempt + 1,
            });
        }
    }
    Err(Error::arg(format!(
        "no connected G({}, {}) after {MAX_ATTEMPTS} attempts",
        spec.n, spec.m
    )))
}

fn draw(spec: &GraphSpec, total: usize, attempt: u64) -> Graph {
    let mut rng = seed::rng(spec.seed, seed::STREAM_GRAPH, attempt);
    let mut pairs: Vec<(usize, usize)> = if spec.m * 2 <= total {
        let mut seen = HashSet::with_capacity(spec.m);
        let mut out = Vec::with_capacity(spec.m);
        while out.len() < spec.m {
            let u = rng.gen_range(0..spec.n);
            let v = rng.gen_range(0..spec.n);
            if u != v && seen.insert((u.min(v), u.max(v))) {
                out.push((u.min(v), u.max(v)));
            }
        }
        out
    } else {
        sample(&mut rng, total, spec.m)
            .into_iter()
            .map(|idx| unrank(idx, spec.n))
            .collect()
    };
    pairs.sort_unstable();
    match spec.weights {
        WeightDist::Unit => Graph::unweighted(spec.n, pairs),
        WeightDist::Uniform => Graph::new(spec.n, pairs.into_iter().map(|(u, v)| (u, v, 1.0 - rng.gen::<f64>()))),
    }
    .expect("generated pairs are distinct and in range")
}

/// Pair with index `idx` in the row-major order of `u < v`.
fn unrank(mut idx: usize, n: usize) -> (usize, usize) {
    let mut u = 0;
    loop {
        let row = n - 1 - u;
        if idx < row {
            return (u, u + 1 + idx);
        }
        idx -= row;
        u += 1;
    }
}
