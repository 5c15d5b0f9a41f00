//! Seed derivation and counter-based noise.
//!
//! Every stochastic component of the workspace draws its randomness from a
//! `u64` seed run through `mix64` (the splitmix64 finalizer). Derived streams
//! are therefore a pure function of `(base_seed, indices...)`, which is what
//! makes task pairing, per-game seeds, and parallel scheduling independence
//! possible: two workers asking for the same logical stream get identical
//! values no matter which thread asks first.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// splitmix64 finalizer: a fixed 64-bit mixing function.
///
/// Used for all seed derivation, e.g. per-game seeds are
/// `mix64(base_seed ^ game_index)`.
#[inline]
pub const fn mix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Derives an independent child seed from a parent seed and a stream index.
#[inline]
pub fn derive_seed(base: u64, stream: u64) -> u64 {
    mix64(base ^ mix64(stream))
}

/// The deterministic generator handed to playouts and engines.
pub type PlayoutRng = ChaCha8Rng;

/// Builds the playout generator for a given seed.
pub fn playout_rng(seed: u64) -> PlayoutRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Maps a mixed counter value to a uniform in (0, 1].
#[inline]
fn unit_open_closed(bits: u64) -> f64 {
    // 53 mantissa bits; +1 keeps the value strictly positive so ln() is finite.
    ((bits >> 11) + 1) as f64 * (1.0 / 9_007_199_254_740_992.0)
}

/// Maps a mixed counter value to a uniform in [0, 1).
#[inline]
fn unit_closed_open(bits: u64) -> f64 {
    (bits >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0)
}

/// Counter-based standard normal draw.
///
/// The same `(seed, counter)` pair always yields the same deviate, so reward
/// noise can be indexed by `(task, arm, pull_index)` and shared across
/// policies. Uses Box-Muller over two mixed sub-streams.
#[inline]
pub fn counter_normal(seed: u64, counter: u64) -> f64 {
    let u1 = unit_open_closed(mix64(seed ^ mix64(counter.wrapping_mul(2))));
    let u2 = unit_closed_open(mix64(seed ^ mix64(counter.wrapping_mul(2) + 1)));
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}
