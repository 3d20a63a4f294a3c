//! Counter-addressed random streams.
//!
//! A [`RandomSource`] is a ChaCha key. Draws are addressed by `(step, slot)`:
//! the step selects the ChaCha stream and the slot a fixed window of words
//! within it. Two coupled copies that ask for the same `(step, slot)` see the
//! same bits regardless of the order in which they ask.

use rand::{RngCore, SeedableRng};
use rand_chacha::{ChaCha20Rng, ChaCha8Rng};

/// Words reserved per slot. Slots never overlap unless a single slot consumes
/// more than this many 32-bit words.
const SLOT_WORDS: u128 = 1 << 8;

/// Stream reserved for sequential (non counter-addressed) draws.
const SEQUENTIAL_STREAM: u64 = u64::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomSource {
    seed: u64,
    key: [u8; 32],
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        let mut key = [0u8; 32];
        ChaCha20Rng::seed_from_u64(seed).fill_bytes(&mut key);
        Self { seed, key }
    }

    /// The seed this source (or its root ancestor) was created from.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Derives an independent source for `label` (a replica index, a level,
    /// a pair index). Derivation is a keyed ChaCha20 expansion, so children of
    /// distinct labels share no key material in any usable sense.
    pub fn child(&self, label: u64) -> Self {
        let mut gen = ChaCha20Rng::from_seed(self.key);
        gen.set_stream(label);
        let mut key = [0u8; 32];
        gen.fill_bytes(&mut key);
        Self { seed: self.seed, key }
    }

    /// Generator positioned at the start of `slot` within `step`.
    pub fn at(&self, step: u64, slot: u64) -> ChaCha8Rng {
        let mut gen = ChaCha8Rng::from_seed(self.key);
        gen.set_stream(step);
        gen.set_word_pos(u128::from(slot) * SLOT_WORDS);
        gen
    }

    /// A plain sequential generator for long single-chain runs.
    pub fn sequential(&self) -> ChaCha8Rng {
        let mut gen = ChaCha8Rng::from_seed(self.key);
        gen.set_stream(SEQUENTIAL_STREAM);
        gen
    }
}
