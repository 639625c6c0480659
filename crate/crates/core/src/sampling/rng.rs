//! Counter-based randomness: the uniform word for item `k` of sample `s` is a
//! pure function of `(master seed, stream, s, k)`, so any subset of items can
//! be drawn in any order, on any thread, with identical results.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::rational::Probability;

/// Largest number of items addressable within one sample.
pub const MAX_ITEMS: u64 = 1 << 32;
/// Largest sample index.
pub const MAX_SAMPLES: u64 = 1 << 35;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seed {
    pub master: u64,
    pub stream: u64,
}

impl Seed {
    pub fn new(master: u64) -> Self {
        Seed { master, stream: 0 }
    }

    pub fn with_stream(master: u64, stream: u64) -> Self {
        Seed { master, stream }
    }

    fn base(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master);
        rng.set_stream(self.stream);
        rng
    }

    /// Sequential uniform words for items `0, 1, 2, ...` of `sample`.
    pub fn items(&self, sample: u64) -> ItemDraws {
        self.items_from(sample, 0)
    }

    /// Sequential uniform words starting at item `first`.
    pub fn items_from(&self, sample: u64, first: u64) -> ItemDraws {
        assert!(sample < MAX_SAMPLES, "sample index {sample} out of range");
        assert!(first < MAX_ITEMS, "item index {first} out of range");
        let mut rng = self.base();
        rng.set_word_pos(word_pos(sample, first));
        ItemDraws { rng, next: first }
    }

    /// Uniform word for a single item; equals the `item`-th value of
    /// [`Seed::items`].
    pub fn item(&self, sample: u64, item: u64) -> u64 {
        self.items_from(sample, item).next_word()
    }
}

fn word_pos(sample: u64, item: u64) -> u128 {
    // two 32-bit words per u64 draw
    2 * ((u128::from(sample) << 32) + u128::from(item))
}

pub struct ItemDraws {
    rng: ChaCha8Rng,
    next: u64,
}

impl ItemDraws {
    pub fn next_word(&mut self) -> u64 {
        assert!(self.next < MAX_ITEMS, "too many items in one sample");
        self.next += 1;
        self.rng.next_u64()
    }

    pub fn position(&self) -> u64 {
        self.next
    }
}

/// Inclusion test `u < p * 2^64` on a uniform 64-bit word; `p = 1` always
/// includes and `p = 0` never does.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Threshold(u128);

impl Threshold {
    pub const NEVER: Threshold = Threshold(0);
    pub const ALWAYS: Threshold = Threshold(1 << 64);

    pub fn from_probability<P: Probability>(p: &P) -> Self {
        let v = p.to_f64();
        if v >= 1.0 {
            Threshold::ALWAYS
        } else if v <= 0.0 {
            Threshold::NEVER
        } else {
            Threshold((v * 18_446_744_073_709_551_616.0) as u128)
        }
    }

    #[inline]
    pub fn accepts(self, word: u64) -> bool {
        u128::from(word) < self.0
    }

    pub fn is_never(self) -> bool {
        self.0 == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_access_matches_sequential() {
        let seed = Seed::with_stream(42, 3);
        let mut seq = seed.items(5);
        let words: Vec<u64> = (0..100).map(|_| seq.next_word()).collect();
        for k in [0u64, 1, 17, 63, 64, 99] {
            assert_eq!(seed.item(5, k), words[k as usize]);
        }
        let mut tail = seed.items_from(5, 40);
        assert_eq!(tail.next_word(), words[40]);
    }

    #[test]
    fn samples_and_streams_differ() {
        let a = Seed::with_stream(1, 0);
        let b = Seed::with_stream(1, 1);
        assert_ne!(a.item(0, 0), a.item(1, 0));
        assert_ne!(a.item(0, 0), b.item(0, 0));
        assert_ne!(a.item(0, 0), Seed::new(2).item(0, 0));
    }

    #[test]
    fn thresholds() {
        assert!(Threshold::from_probability(&1.0).accepts(u64::MAX));
        assert!(!Threshold::from_probability(&0.0).accepts(0));
        let half = Threshold::from_probability(&0.5);
        assert!(half.accepts((1 << 63) - 1));
        assert!(!half.accepts(1 << 63));
    }
}
