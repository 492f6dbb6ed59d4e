// SPDX-License-Identifier: Apache-2.0

//! Emulator text format.
//!
//! ```text
//! h <n> <|F|> <k> <mode> <seed>
//! # betas <b_1> ... <b_{k-1}>
//! e <u> <v> <w_H> <tag>
//! ```
//!
//! Edges are sorted by `(u, v)` with `u < v`. The `# betas` comment keeps the
//! sampling exponents so that a re-read emulator equals the one written;
//! readers that ignore comments lose nothing else. A weight of `inf` marks a
//! pair no estimate reached.

use std::io::{BufRead, Write};

use super::{BuildMeta, BuildMode, EdgeTag, Emulator, EmulatorEdge};
use crate::error::{Error, Result};
use crate::graph::io::parse_num;

impl Emulator {
    pub fn write_emulator<W: Write>(&self, mut out: W) -> Result<()> {
        let m = &self.meta;
        writeln!(out, "h {} {} {} {} {}", self.n, self.edges.len(), m.k, m.mode, m.seed)?;
        write!(out, "# betas")?;
        for b in &m.betas {
            write!(out, " {b}")?;
        }
        writeln!(out)?;
        for e in &self.edges {
            writeln!(out, "e {} {} {} {}", e.u, e.v, e.w, e.tag)?;
        }
        Ok(())
    }

    pub fn to_emulator_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_emulator(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("emulator text is ASCII")
    }

    pub fn read_emulator<R: BufRead>(input: R) -> Result<Emulator> {
        let mut header: Option<(usize, usize, BuildMeta)> = None;
        let mut betas: Option<Vec<f64>> = None;
        let mut edges = Vec::new();
        for (idx, line) in input.lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            let trimmed = line.trim();
            if let Some(rest) = trimmed.strip_prefix("# betas") {
                betas = Some(
                    rest.split_whitespace()
                        .map(|b| parse_num::<f64>(b, lineno, "sampling exponent"))
                        .collect::<Result<_>>()?,
                );
                continue;
            }
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            match &header {
                None => {
                    if fields.len() != 6 || fields[0] != "h" {
                        return Err(Error::parse(lineno, "expected header `h <n> <|F|> <k> <mode> <seed>`"));
                    }
                    let n = parse_num::<usize>(fields[1], lineno, "vertex count")?;
                    let count = parse_num::<usize>(fields[2], lineno, "edge count")?;
                    let k = parse_num::<usize>(fields[3], lineno, "k")?;
                    let mode: BuildMode = fields[4]
                        .parse()
                        .map_err(|_| Error::parse(lineno, format!("unknown mode `{}`", fields[4])))?;
                    let seed = parse_num::<u64>(fields[5], lineno, "seed")?;
                    let meta = BuildMeta {
                        k,
                        seed,
                        mode,
                        betas: Vec::new(),
                    };
                    header = Some((n, count, meta));
                    edges.reserve(count);
                }
                Some((n, _, _)) => {
                    if fields.len() != 5 || fields[0] != "e" {
                        return Err(Error::parse(lineno, "expected `e <u> <v> <w> <tag>`"));
                    }
                    let u = parse_num::<usize>(fields[1], lineno, "vertex id")?;
                    let v = parse_num::<usize>(fields[2], lineno, "vertex id")?;
                    let w = parse_num::<f64>(fields[3], lineno, "weight")?;
                    let tag: EdgeTag = fields[4]
                        .parse()
                        .map_err(|_| Error::parse(lineno, format!("unknown tag `{}`", fields[4])))?;
                    if u >= *n || v >= *n {
                        return Err(Error::parse(lineno, format!("vertex id out of range 0..{n}")));
                    }
                    if u >= v {
                        return Err(Error::parse(lineno, "edges must be written with u < v"));
                    }
                    if let Some(last) = edges.last().map(|e: &EmulatorEdge| (e.u, e.v)) {
                        if last >= (u, v) {
                            return Err(Error::parse(lineno, "edges out of order or duplicated"));
                        }
                    }
                    if w.is_nan() || w < 0.0 {
                        return Err(Error::parse(lineno, format!("invalid weight {w}")));
                    }
                    edges.push(EmulatorEdge { u, v, w, tag });
                }
            }
        }
        let Some((n, count, mut meta)) = header else {
            return Err(Error::parse(0, "missing header line"));
        };
        if edges.len() != count {
            return Err(Error::parse(
                0,
                format!("header declares {count} edges, found {}", edges.len()),
            ));
        }
        meta.betas = betas.unwrap_or_default();
        Emulator::new(n, edges, meta)
    }

    pub fn from_emulator_str(text: &str) -> Result<Emulator> {
        Self::read_emulator(text.as_bytes())
    }
}
