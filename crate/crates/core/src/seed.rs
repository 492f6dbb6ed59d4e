// SPDX-License-Identifier: Apache-2.0

//! Counter-based seed derivation.
//!
//! Every random decision in the crate is drawn from a ChaCha8 stream whose
//! 64-bit seed is derived from the user's base seed with [`derive`]. The
//! derivation is the SplitMix64 finalizer applied to a fixed mix of
//! `(base, stream, index)`, so any implementation that reproduces SplitMix64
//! and ChaCha8 (8 rounds, `seed_from_u64` key expansion) reproduces every
//! sampled set and generated graph.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Name of the generator behind every random stream.
pub const GENERATOR: &str = "ChaCha8 (rand_chacha 0.3, seed_from_u64)";

/// Stream tag for Erdős–Rényi graph generation attempts.
pub const STREAM_GRAPH: u64 = 0x6772_6170_6800_0001;
/// Stream tag for hitting-set sampling.
pub const STREAM_HIERARCHY: u64 = 0x6869_6572_6100_0002;
/// Stream tag for pair and edge sampling inside the verifier.
pub const STREAM_VERIFY: u64 = 0x7665_7269_6600_0003;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive the seed of sub-stream `index` of `stream` from `base`.
pub fn derive(base: u64, stream: u64, index: u64) -> u64 {
    splitmix64(splitmix64(base ^ stream).wrapping_add(index.wrapping_mul(GOLDEN)))
}

pub fn rng(base: u64, stream: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive(base, stream, index))
}
