// SPDX-License-Identifier: Apache-2.0

//! Shortest-path records and the search for the shortest path minimizing a
//! linear combination of its two heaviest edge weights.

use super::sssp::{sssp, DistanceRow};
use super::{Graph, VertexId, INTERNAL_TOL};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct PathRecord {
    /// `vertices[0]` is the source, the last entry the target.
    pub vertices: Vec<VertexId>,
    /// Edge indices into the graph, one per consecutive vertex pair.
    pub edges: Vec<usize>,
    pub edge_weights: Vec<f64>,
    pub total: f64,
}

impl PathRecord {
    /// Builds a record from a vertex sequence, looking up each edge.
    pub fn from_vertices(graph: &Graph, vertices: Vec<VertexId>) -> Result<Self> {
        let mut edges = Vec::with_capacity(vertices.len().saturating_sub(1));
        let mut edge_weights = Vec::with_capacity(edges.capacity());
        for pair in vertices.windows(2) {
            let e = graph
                .edge_between(pair[0], pair[1])
                .ok_or_else(|| Error::arg(format!("no edge between {} and {}", pair[0], pair[1])))?;
            edges.push(e);
            edge_weights.push(graph.edge(e).w);
        }
        let total = edge_weights.iter().sum();
        Ok(Self {
            vertices,
            edges,
            edge_weights,
            total,
        })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Heaviest and second heaviest edge weight. A one-edge path has `W2 = 0`.
pub fn heaviest_two(path: &PathRecord) -> Result<(f64, f64)> {
    if path.edge_weights.is_empty() {
        return Err(Error::arg("heaviest_two needs a path with at least one edge"));
    }
    Ok(top_two(&path.edge_weights))
}

fn top_two(weights: &[f64]) -> (f64, f64) {
    let (mut w1, mut w2) = (0.0_f64, 0.0_f64);
    for &w in weights {
        if w > w1 {
            w2 = w1;
            w1 = w;
        } else if w > w2 {
            w2 = w;
        }
    }
    (w1, w2)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinBoundPath {
    pub path: PathRecord,
    pub w1: f64,
    pub w2: f64,
    /// `coeff_w1 * w1 + coeff_w2 * w2` for the chosen path.
    pub bound_term: f64,
    /// Set when the search stopped at the enumeration cap.
    pub truncated: bool,
}

/// Runs one Dijkstra from `u` and delegates to [`min_bound_from_row`].
pub fn min_bound_shortest_path(
    graph: &Graph,
    u: VertexId,
    v: VertexId,
    coeff_w1: f64,
    coeff_w2: f64,
    enumeration_cap: usize,
) -> Result<MinBoundPath> {
    graph.check_vertex(v)?;
    let row = sssp(graph, u, None)?;
    min_bound_from_row(graph, &row, v, coeff_w1, coeff_w2, enumeration_cap)
}

/// Branch and bound over the shortest-path predecessor DAG of `row`, walking
/// backward from `target`. The parent chain seeds the incumbent, so with a
/// unique shortest path the result is that chain. `enumeration_cap` bounds
/// the number of partial paths expanded.
pub fn min_bound_from_row(
    graph: &Graph,
    row: &DistanceRow,
    target: VertexId,
    coeff_w1: f64,
    coeff_w2: f64,
    enumeration_cap: usize,
) -> Result<MinBoundPath> {
    graph.check_vertex(target)?;
    if !(coeff_w1 >= 0.0 && coeff_w2 >= 0.0) {
        return Err(Error::arg("bound coefficients must be non-negative"));
    }
    let source = row.source;
    if !row.dist[target].is_finite() {
        return Err(Error::Unreachable {
            from: source,
            to: target,
        });
    }
    let chain = row.path_to(target).expect("finite distance implies a parent chain");
    let chain = PathRecord::from_vertices(graph, chain)?;
    let (w1, w2) = top_two(&chain.edge_weights);
    let mut search = Search {
        graph,
        dist: &row.dist,
        source,
        a: coeff_w1,
        b: coeff_w2,
        cap: enumeration_cap,
        expanded: 0,
        truncated: false,
        on_path: vec![false; graph.n()],
        stack: vec![target],
        best: coeff_w1 * w1 + coeff_w2 * w2,
        best_path: None,
    };
    if target != source && search.best > 0.0 {
        search.on_path[target] = true;
        search.descend(target, 0.0, 0.0);
    }
    let path = match search.best_path.take() {
        Some(mut vs) => {
            vs.reverse();
            PathRecord::from_vertices(graph, vs)?
        }
        None => chain,
    };
    let (w1, w2) = top_two(&path.edge_weights);
    Ok(MinBoundPath {
        bound_term: coeff_w1 * w1 + coeff_w2 * w2,
        w1,
        w2,
        path,
        truncated: search.truncated,
    })
}

struct Search<'a> {
    graph: &'a Graph,
    dist: &'a [f64],
    source: VertexId,
    a: f64,
    b: f64,
    cap: usize,
    expanded: usize,
    truncated: bool,
    on_path: Vec<bool>,
    /// Vertices from the target back to the current frontier.
    stack: Vec<VertexId>,
    best: f64,
    best_path: Option<Vec<VertexId>>,
}

impl Search<'_> {
    fn descend(&mut self, y: VertexId, w1: f64, w2: f64) {
        if y == self.source {
            let value = self.a * w1 + self.b * w2;
            if value < self.best {
                self.best = value;
                self.best_path = Some(self.stack.clone());
            }
            return;
        }
        let dy = self.dist[y];
        let tol = INTERNAL_TOL * dy.max(1.0);
        let mut preds: Vec<(f64, VertexId)> = self
            .graph
            .neighbors(y)
            .iter()
            .filter_map(|&(x, e)| {
                let w = self.graph.edge(e).w;
                let dx = self.dist[x];
                (dx.is_finite() && !self.on_path[x] && (dx + w - dy).abs() <= tol).then_some((w, x))
            })
            .collect();
        preds.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.cmp(&q.1)));
        for (w, x) in preds {
            if self.truncated {
                return;
            }
            let (n1, n2) = if w > w1 {
                (w, w1)
            } else if w > w2 {
                (w1, w)
            } else {
                (w1, w2)
            };
            // Adding edges never lowers the heaviest two, so the partial
            // value bounds every completion from below.
            if self.a * n1 + self.b * n2 >= self.best {
                continue;
            }
            if self.expanded >= self.cap {
                self.truncated = true;
                return;
            }
            self.expanded += 1;
            self.on_path[x] = true;
            self.stack.push(x);
            self.descend(x, n1, n2);
            self.stack.pop();
            self.on_path[x] = false;
        }
    }
}
