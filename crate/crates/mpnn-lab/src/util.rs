//! Small deterministic helpers shared across modules.
//!
//! Everything here has a fixed, platform-independent definition so that
//! seeded runs stay byte-identical across machines and releases.

/// SplitMix64 step. Used for deriving per-item seeds from a master seed.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives the seed for item `index` from a master seed.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index.wrapping_add(1)))
}

fn mix64(h: u64) -> u64 {
    let mut h = h;
    h ^= h >> 33;
    h = h.wrapping_mul(0xff51_afd7_ed55_8ccd);
    h ^= h >> 33;
    h = h.wrapping_mul(0xc4ce_b9fe_1a85_ec53);
    h ^= h >> 33;
    h
}

/// A seeded stable hash over a byte stream.
///
/// The construction absorbs 8 bytes at a time into a SplitMix/Murmur-style
/// state. It is not cryptographic; it only needs to be stable across
/// platforms and injective-in-practice at the scales this crate works at.
#[derive(Clone, Copy)]
pub struct StableHasher {
    state: u64,
}

impl StableHasher {
    pub fn new(seed: u64) -> Self {
        StableHasher {
            state: mix64(seed ^ 0x5851_f42d_4c95_7f2d),
        }
    }

    pub fn write(&mut self, bytes: &[u8]) {
        for chunk in bytes.chunks(8) {
            let mut word = [0u8; 8];
            word[..chunk.len()].copy_from_slice(chunk);
            self.state = mix64(self.state ^ u64::from_le_bytes(word)).wrapping_add(chunk.len() as u64);
        }
    }

    pub fn write_u64(&mut self, v: u64) {
        self.write(&v.to_le_bytes());
    }

    /// Length-prefixed absorb, so that `["ab","c"]` and `["a","bc"]` differ.
    pub fn write_framed(&mut self, bytes: &[u8]) {
        self.write_u64(bytes.len() as u64);
        self.write(bytes);
    }

    pub fn finish(&self) -> u64 {
        mix64(self.state)
    }
}

/// Expands a 64-bit digest into an unbounded stream of base-`s` digits.
pub struct DigitStream {
    state: u64,
    word: u64,
    remaining: u32,
    s: u64,
}

impl DigitStream {
    pub fn new(digest: u64, s: u64) -> Self {
        debug_assert!(s >= 2);
        DigitStream {
            state: digest,
            word: 0,
            remaining: 0,
            s,
        }
    }

    /// Digits per 64-bit word such that s^k <= 2^64 comfortably.
    fn digits_per_word(&self) -> u32 {
        let mut k = 0;
        let mut acc: u128 = 1;
        while acc * self.s as u128 <= 1u128 << 63 {
            acc *= self.s as u128;
            k += 1;
        }
        k.max(1)
    }

    pub fn next_digit(&mut self) -> u8 {
        if self.remaining == 0 {
            self.state = splitmix64(self.state);
            self.word = self.state;
            self.remaining = self.digits_per_word();
        }
        let d = (self.word % self.s) as u8;
        self.word /= self.s;
        self.remaining -= 1;
        d
    }

    pub fn take(&mut self, count: usize) -> Vec<u8> {
        (0..count).map(|_| self.next_digit()).collect()
    }
}
