// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::PathRecord;

/// Number of path edges missing from `E_1`: none, exactly one, or more.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Case {
    A,
    B,
    C,
}

impl Case {
    pub fn as_str(self) -> &'static str {
        match self {
            Case::A => "a",
            Case::B => "b",
            Case::C => "c",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A path edge outside `E_1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Missing {
    /// Position along the path, counted from the source.
    pub position: usize,
    /// Index into the graph's edge list.
    pub edge: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathClass {
    pub case: Case,
    pub first_missing: Option<Missing>,
    pub last_missing: Option<Missing>,
    pub missing_count: usize,
}

pub fn classify_path(path: &PathRecord, edge_levels: &[usize]) -> Result<PathClass> {
    if path.edges.is_empty() {
        return Err(Error::arg("cannot classify an empty path"));
    }
    let mut missing = path
        .edges
        .iter()
        .enumerate()
        .filter(|&(_, &e)| edge_levels[e] > 1)
        .map(|(position, &edge)| Missing { position, edge });
    let first_missing = missing.next();
    let rest = missing.count();
    let last_missing = match rest {
        0 => first_missing,
        _ => path
            .edges
            .iter()
            .enumerate()
            .rev()
            .find(|&(_, &e)| edge_levels[e] > 1)
            .map(|(position, &edge)| Missing { position, edge }),
    };
    let missing_count = usize::from(first_missing.is_some()) + rest;
    let case = match missing_count {
        0 => Case::A,
        1 => Case::B,
        _ => Case::C,
    };
    Ok(PathClass {
        case,
        first_missing,
        last_missing,
        missing_count,
    })
}
