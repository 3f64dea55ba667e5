//! Deterministic random sampling for rank estimates.
//!
//! Every draw comes from a counter-based splitmix64 stream, so a recorded
//! seed replays the exact sequence of evaluation points.

use num_bigint::BigInt;
use num_rational::BigRational;
use std::sync::Arc;

use crate::ring::{RationalPoint, Ring};

/// Inclusive bound for sampled integer coordinates.
pub const COORD_BOUND: i64 = 999;

/// Maximum resampling attempts when a degeneracy condition rejects a draw.
pub const MAX_RESAMPLE: u32 = 32;

/// A counter-based splitmix64 generator.
#[derive(Debug, Clone)]
pub struct Sampler {
    seed: u64,
    counter: u64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { seed, counter: 0 }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        let mut z = self
            .seed
            .wrapping_add(self.counter.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform integer in `[-COORD_BOUND, COORD_BOUND]`.
    pub fn next_coord(&mut self) -> i64 {
        let span = (2 * COORD_BOUND + 1) as u64;
        (self.next_u64() % span) as i64 - COORD_BOUND
    }

    /// A point with independent uniform integer coordinates.
    pub fn sample_point(&mut self, ring: &Arc<Ring>) -> RationalPoint {
        let values = (0..ring.num_vars())
            .map(|_| BigRational::from_integer(BigInt::from(self.next_coord())))
            .collect();
        RationalPoint::new(ring, values).expect("aligned by construction")
    }
}
