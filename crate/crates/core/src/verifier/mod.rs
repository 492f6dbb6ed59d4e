// SPDX-License-Identifier: Apache-2.0

//! Brute-force checks of emulator guarantees against exact distances.

mod claims;
mod classify;
mod size;
mod stretch;

pub use claims::{case_c_bound, verify_claims, ClaimsReport};
pub use classify::{classify_path, Case, Missing, PathClass};
pub use size::{log_slope, size_report, SizeReport};
pub use stretch::{verify_stretch, PairRecord, PairSelection, StretchReport, VerifyOptions};
