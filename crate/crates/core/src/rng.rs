//! SplitMix64, the single source of randomness for mazes, brains and
//! batch seeds. Every draw is a pure function of the 64-bit state.

use crate::error::{Error, Result};

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Rng {
    state: u64,
}

/// The SplitMix64 output finalizer.
#[inline]
pub fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl Rng {
    pub const fn new(state: u64) -> Self {
        Rng { state }
    }

    pub const fn state(&self) -> u64 {
        self.state
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        mix(self.state)
    }

    /// Index in `[0, k)` from one draw, by plain modulo.
    pub fn below(&mut self, k: usize) -> Result<usize> {
        if k == 0 {
            return Err(Error::invalid("rng_below needs k >= 1"));
        }
        Ok((self.next_u64() % k as u64) as usize)
    }
}

/// Value-passing form: returns the advanced generator and the drawn value.
pub fn rng_next(r: Rng) -> (Rng, u64) {
    let mut r = r;
    let v = r.next_u64();
    (r, v)
}

pub fn rng_below(r: Rng, k: usize) -> Result<(Rng, usize)> {
    let mut r = r;
    let i = r.below(k)?;
    Ok((r, i))
}

/// The `n`-th output (0-based) of the stream seeded with `seed`, in O(1).
pub fn stream_value(seed: u64, n: u64) -> u64 {
    mix(seed.wrapping_add(n.wrapping_add(1).wrapping_mul(GAMMA)))
}

/// Derives a child seed from a parent seed and an index (level number,
/// episode number, restart count) with one generator step.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    rng_next(Rng::new(base ^ index)).1
}
