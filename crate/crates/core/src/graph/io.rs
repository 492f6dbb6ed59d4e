// SPDX-License-Identifier: Apache-2.0

//! Edge-list text format.
//!
//! ```text
//! p <n> <m> <weighted|unweighted>
//! <u> <v> <w>
//! ```
//!
//! Ids are 0-based, unweighted graphs print every weight as `1`, and lines
//! starting with `#` are comments. Weights are written with the shortest
//! decimal representation that parses back to the same `f64`.

use std::io::{BufRead, Write};

use super::Graph;
use crate::error::{Error, Result};

impl Graph {
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> Result<()> {
        let kind = if self.weighted { "weighted" } else { "unweighted" };
        writeln!(out, "p {} {} {}", self.n, self.edges.len(), kind)?;
        for e in &self.edges {
            if self.weighted {
                writeln!(out, "{} {} {}", e.u, e.v, e.w)?;
            } else {
                writeln!(out, "{} {} 1", e.u, e.v)?;
            }
        }
        Ok(())
    }

    pub fn to_edge_list_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_edge_list(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("edge list is ASCII")
    }

    pub fn read_edge_list<R: BufRead>(input: R) -> Result<Graph> {
        let mut header: Option<(usize, usize, bool)> = None;
        let mut edges = Vec::new();
        for (idx, line) in input.lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            match header {
                None => {
                    if fields.len() != 4 || fields[0] != "p" {
                        return Err(Error::parse(
                            lineno,
                            "expected header `p <n> <m> <weighted|unweighted>`",
                        ));
                    }
                    let n = parse_num::<usize>(fields[1], lineno, "vertex count")?;
                    let m = parse_num::<usize>(fields[2], lineno, "edge count")?;
                    let weighted = match fields[3] {
                        "weighted" => true,
                        "unweighted" => false,
                        other => return Err(Error::parse(lineno, format!("unknown graph kind `{other}`"))),
                    };
                    header = Some((n, m, weighted));
                    edges.reserve(m);
                }
                Some((n, _, weighted)) => {
                    if fields.len() != 3 {
                        return Err(Error::parse(lineno, "expected `<u> <v> <w>`"));
                    }
                    let u = parse_num::<usize>(fields[0], lineno, "vertex id")?;
                    let v = parse_num::<usize>(fields[1], lineno, "vertex id")?;
                    let w = parse_num::<f64>(fields[2], lineno, "weight")?;
                    if u >= n || v >= n {
                        return Err(Error::parse(lineno, format!("vertex id out of range 0..{n}")));
                    }
                    if !weighted && w != 1.0 {
                        return Err(Error::parse(lineno, "unweighted graphs must use weight 1"));
                    }
                    edges.push((u, v, w, lineno));
                }
            }
        }
        let Some((n, m, weighted)) = header else {
            return Err(Error::parse(0, "missing header line"));
        };
        if edges.len() != m {
            return Err(Error::parse(
                0,
                format!("header declares {m} edges, found {}", edges.len()),
            ));
        }
        // Report structural problems against the offending line.
        let mut seen = std::collections::HashSet::new();
        for &(u, v, w, lineno) in &edges {
            if u == v {
                return Err(Error::parse(lineno, "self-loop"));
            }
            if !(w.is_finite() && w >= 0.0) {
                return Err(Error::parse(lineno, format!("invalid weight {w}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::parse(lineno, "duplicate edge"));
            }
        }
        Graph::with_flag(n, edges.into_iter().map(|(u, v, w, _)| (u, v, w)), weighted)
    }

    pub fn from_edge_list_str(text: &str) -> Result<Graph> {
        Self::read_edge_list(text.as_bytes())
    }
}

pub(crate) fn parse_num<T: std::str::FromStr>(s: &str, line: usize, what: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} `{s}`")))
}
