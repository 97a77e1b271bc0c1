//! Counter-based pseudo-random numbers for reproducible parallel sampling.
//!
//! Monte-Carlo workers must produce identical samples for identical
//! `(seed, shot, outcome)` triples regardless of thread scheduling, so the
//! generator is stateless: every draw is a hash of its coordinates rather
//! than a step of a shared sequence. The hash is the SplitMix64 finalizer,
//! whose output passes standard statistical batteries and whose fixed-stride
//! evaluation (`mix64(key + i·GAMMA)`) is exactly the SplitMix64 stream
//! seeded at `key`.

/// Golden-ratio increment of the SplitMix64 sequence.
const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer: a bijective 64-bit mix with full avalanche.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a stream key from a global seed and two coordinates
/// (typically shot index and a per-purpose salt).
///
/// Chaining the finalizer between coordinates gives full avalanche per
/// stage, so neighboring shots share no statistical structure.
#[inline]
pub fn stream(seed: u64, a: u64, b: u64) -> u64 {
    let k = mix64(seed.wrapping_add(GAMMA));
    let k = mix64(k ^ a.wrapping_mul(GAMMA));
    mix64(k ^ b.wrapping_mul(GAMMA))
}

/// The `i`-th raw draw of a stream.
#[inline]
pub fn u64_at(stream: u64, i: u64) -> u64 {
    mix64(stream.wrapping_add(i.wrapping_mul(GAMMA)))
}

/// The `i`-th uniform draw in `[0, 1)` of a stream (53-bit mantissa).
#[inline]
pub fn unit_at(stream: u64, i: u64) -> f64 {
    (u64_at(stream, i) >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0)
}

/// Small stateful generator for shuffles and test fixtures.
///
/// This is plain SplitMix64; use only where a sequential stream is wanted
/// (oracle instance generation), never on the Monte-Carlo hot path.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    /// Creates a generator from a seed.
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Next raw 64-bit value.
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        mix64(self.state)
    }

    /// Next uniform value in `[0, 1)`.
    pub fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0)
    }

    /// Uniform integer in `[0, n)` by rejection-free multiply-shift.
    pub fn next_below(&mut self, n: u64) -> u64 {
        ((self.next_u64() as u128 * n as u128) >> 64) as u64
    }

    /// Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            let j = self.next_below(i as u64 + 1) as usize;
            xs.swap(i, j);
        }
    }
}
