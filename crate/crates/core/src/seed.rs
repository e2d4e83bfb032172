//! Seed derivation for reproducible, parallel-safe random streams.

/// SplitMix64 finalizer.
#[inline]
pub fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Mix an ordered tuple of words into one 64-bit seed. Used to derive
/// independent child streams from `(master, setting, replication)` style
/// coordinates; documented in run metadata as `splitmix64-chain`.
pub fn mix(words: &[u64]) -> u64 {
    let mut h = 0x243F6A8885A308D3; // pi digits, arbitrary nonzero start
    for &w in words {
        h = splitmix64(h ^ w);
    }
    h
}
