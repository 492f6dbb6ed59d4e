// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;
use std::io::Write;

use crate::emulator::{EdgeTag, Emulator};
use crate::error::Result;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq)]
pub struct SizeReport {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub edges: usize,
    pub tag_counts: BTreeMap<EdgeTag, usize>,
    /// `1 + 1/k`.
    pub predicted_exponent: f64,
    /// `ln|F| / ln n`; undefined for `n < 2` or an empty `F`.
    pub observed_exponent: Option<f64>,
}

pub fn size_report(emulator: &Emulator, graph: &Graph) -> SizeReport {
    let k = emulator.meta().k;
    let n = emulator.n();
    let edges = emulator.len();
    let observed_exponent = (n >= 2 && edges > 0).then(|| (edges as f64).ln() / (n as f64).ln());
    SizeReport {
        n,
        m: graph.m(),
        k,
        edges,
        tag_counts: emulator.tag_counts(),
        predicted_exponent: 1.0 + 1.0 / k as f64,
        observed_exponent,
    }
}

impl SizeReport {
    pub const CSV_HEADER: &'static str = "n,m,k,edges,predicted_exponent,observed_exponent,tag_counts";

    pub fn csv_row(&self) -> String {
        let tags: Vec<String> = self.tag_counts.iter().map(|(t, c)| format!("{t}={c}")).collect();
        format!(
            "{},{},{},{},{},{},{}",
            self.n,
            self.m,
            self.k,
            self.edges,
            self.predicted_exponent,
            self.observed_exponent
                .map_or_else(|| "n/a".to_string(), |x| x.to_string()),
            tags.join(";")
        )
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{}", Self::CSV_HEADER)?;
        writeln!(out, "{}", self.csv_row())?;
        Ok(())
    }
}

/// Least-squares slope of `ln size` against `ln n`. `None` unless at least
/// two distinct `n` appear and every size is positive.
pub fn log_slope(points: &[(usize, usize)]) -> Option<f64> {
    if points.iter().any(|&(n, s)| n == 0 || s == 0) {
        return None;
    }
    let first = points.first()?.0;
    if points.iter().all(|&(n, _)| n == first) {
        return None;
    }
    let xs: Vec<f64> = points.iter().map(|&(n, _)| (n as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, s)| (s as f64).ln()).collect();
    let len = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / len;
    let my = ys.iter().sum::<f64>() / len;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Some(sxy / sxx)
}
