// SPDX-License-Identifier: Apache-2.0

//! Weighted-graph emulators with additive stretch in the two heaviest edges
//! of a shortest path, plus brute-force verification tools.
//!
//! The builders sample a hierarchy of hitting sets `V = S_0 ⊇ … ⊇ S_{k-1}`
//! and assemble an edge set `F` of size about `n^{1+1/k}` such that
//!
//! ```text
//! δ_G(u,v) <= δ_H(u,v) <= alpha·δ_G(u,v) + a·W_1 + b·W_2
//! ```
//!
//! where `W_1 >= W_2` are the two heaviest edges of a shortest `u`–`v`
//! path and `(alpha, a, b)` come from [`stretch_params`].
//!
//! ```
//! use emulator_forge::{build_general, gen, stretch_params, verify_stretch, VerifyOptions};
//!
//! let spec = gen::GraphSpec {
//!     n: 60,
//!     m: 180,
//!     weights: gen::WeightDist::Uniform,
//!     connectivity: gen::Connectivity::RequireConnected,
//!     seed: 1,
//! };
//! let graph = gen::generate(&spec)?.graph;
//! let emulator = build_general(&graph, 3, None, 7)?;
//! let report = verify_stretch(&graph, &emulator, stretch_params(3)?, VerifyOptions::default())?;
//! assert_eq!(report.violations, 0);
//! # Ok::<(), emulator_forge::Error>(())
//! ```

pub mod emulator;
pub mod error;
pub mod gen;
pub mod graph;
pub mod hierarchy;
pub mod seed;
pub mod tz;
pub mod verifier;

pub use emulator::{
    build_alg1, build_alg2, build_fast, build_general, stretch_params, BuildMeta, BuildMode, EdgeTag, Emulator,
    StretchParams,
};
pub use error::{Error, Result};
pub use graph::{apsp_exact, sssp, DistanceMatrix, Edge, Graph, VertexId};
pub use hierarchy::{Hierarchy, HierarchyConfig};
pub use verifier::{verify_claims, verify_stretch, StretchReport, VerifyOptions};
