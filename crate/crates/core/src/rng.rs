//! Reproducible random streams.
//!
//! Every replicate owns an independent ChaCha8 stream selected by
//! `(master_seed, stream_id)`. ChaCha is a counter-based generator, so the
//! stream for a replicate does not depend on how many replicates ran before it
//! or on which worker thread executes it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator used for every random draw in this crate.
pub type StreamRng = ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RngStream {
    pub master_seed: u64,
    pub stream_id: u64,
}

impl RngStream {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        Self { master_seed, stream_id }
    }

    /// Materializes the generator positioned at the start of the stream.
    pub fn rng(&self) -> StreamRng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_id);
        rng
    }

    /// A stream in a separate family, for experiments that need two
    /// unrelated sources under one master seed.
    pub fn family(master_seed: u64, family: u64, stream_id: u64) -> Self {
        Self::new(splitmix64(master_seed ^ splitmix64(family)), stream_id)
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
