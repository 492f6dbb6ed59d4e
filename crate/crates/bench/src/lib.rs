// SPDX-License-Identifier: Apache-2.0

//! Shared inputs for the construction benchmarks.

use emulator_forge::gen::{generate, Connectivity, GraphSpec, WeightDist};
use emulator_forge::Graph;

/// Vertex counts used by the construction benchmarks.
pub const SIZES: [usize; 3] = [128, 256, 512];

/// Connected `G(n, m_per_n · n)` with weights in `(0, 1]`.
pub fn workload(n: usize, m_per_n: usize, seed: u64) -> Graph {
    generate(&GraphSpec {
        n,
        m: m_per_n * n,
        weights: WeightDist::Uniform,
        connectivity: Connectivity::RequireConnected,
        seed,
    })
    .expect("benchmark spec is feasible")
    .graph
}
