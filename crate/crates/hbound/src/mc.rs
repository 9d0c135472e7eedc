//! Deterministic chunked Monte Carlo plumbing.
//!
//! Samples are drawn in fixed chunks of 4096, each chunk from its own
//! counter-derived ChaCha8 stream, and chunk results are reduced in index
//! order. Output is therefore byte-identical for a given seed regardless of
//! worker count.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub const CHUNK: u64 = 4096;
const SPLIT: u64 = 0x9E37_79B9_7F4A_7C15;

/// Default seed used by the verification drivers.
pub const DEFAULT_SEED: u64 = 0x5EED;

/// Stream for chunk index `chunk` under `seed`.
pub fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ chunk.wrapping_mul(SPLIT))
}

/// Uniform sample from the closed unit disk, by rejection.
pub fn unit_disk(rng: &mut ChaCha8Rng) -> Complex64 {
    loop {
        let re = rng.gen_range(-1.0..=1.0);
        let im = rng.gen_range(-1.0..=1.0);
        if re * re + im * im <= 1.0 {
            return Complex64::new(re, im);
        }
    }
}

/// Map every chunk of an `n`-sample run through `body` and fold the chunk
/// summaries in chunk order. `body` receives the chunk RNG and the number of
/// samples in that chunk.
pub fn run_chunked<T, F>(seed: u64, n: u64, init: T, body: F) -> T
where
    T: Send,
    F: Fn(&mut ChaCha8Rng, u64) -> T + Sync,
    T: Merge,
{
    let chunks = n.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = chunk_rng(seed, c);
            let len = CHUNK.min(n - c * CHUNK);
            body(&mut rng, len)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(init, |acc, item| acc.merge(item))
}

/// Order-dependent reduction of chunk summaries.
pub trait Merge: Sized {
    fn merge(self, other: Self) -> Self;
}
