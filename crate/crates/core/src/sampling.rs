//! Seeded randomness for the property suites.
//!
//! Every random event is drawn from ChaCha8 seeded with `seed_from_u64`, so a
//! report that records its seed can be regenerated bit-for-bit.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x0051_6D65_6173_7572;

pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derive an independent stream for one (suite, level) cell so results do
/// not depend on which other cells ran first.
pub fn rng_for(seed: u64, suite: &str, level: u32) -> SuiteRng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in suite.bytes().chain(level.to_le_bytes()) {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}
