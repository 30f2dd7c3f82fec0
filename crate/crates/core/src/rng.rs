//! Seeded randomness. Every random choice in the crate draws from ChaCha8
//! keyed by a 64-bit seed, with independent consumers separated by stream
//! number, so a seed reproduces the same draws on every platform.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

pub fn stream(seed: u64, stream: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
