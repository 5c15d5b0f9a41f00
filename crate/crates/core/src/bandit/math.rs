//! Shared confidence-bound arithmetic.
//!
//! Both the improved UCB round schedule and the modified variant read the
//! same two quantities: the per-arm sample target
//! `n = ceil(2 ln(T d^2) / d^2)` and the half width
//! `sqrt(ln(T d^2) / (2 n))`. All `log`s are natural; the log argument is
//! clamped below at 1 so the bound term never goes negative when an episodic
//! restart makes `T d^2 < 1`.

use super::BanditError;

/// Natural log of `x` with the argument clamped below at 1.
#[inline]
pub fn ln_clamped(x: f64) -> f64 {
    x.max(1.0).ln()
}

/// Per-arm sample target `max(1, ceil(2 ln(T d^2) / d^2))`.
pub fn n_arm_samples(horizon_t: u64, delta: f64) -> Result<u64, BanditError> {
    if horizon_t < 1 {
        return Err(BanditError::InvalidHorizon(horizon_t));
    }
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(BanditError::InvalidDelta(delta));
    }
    Ok(n_arm_samples_clamped(horizon_t, delta))
}

/// As [`n_arm_samples`] but with preconditions assumed to hold.
#[inline]
pub(crate) fn n_arm_samples_clamped(horizon_t: u64, delta: f64) -> u64 {
    let d2 = delta * delta;
    let raw = (2.0 * (horizon_t as f64 * d2).ln() / d2).ceil();
    if raw < 1.0 {
        1
    } else {
        raw as u64
    }
}

/// Number of elimination rounds the improved UCB executes for horizon `T`:
/// `max(0, floor(0.5 log2(T / e))) + 1` (the round loop is inclusive of its
/// final index).
pub fn num_rounds(horizon_t: u64) -> Result<u64, BanditError> {
    if horizon_t < 1 {
        return Err(BanditError::InvalidHorizon(horizon_t));
    }
    let half_log = 0.5 * (horizon_t as f64 / std::f64::consts::E).log2();
    let floored = half_log.floor();
    Ok(if floored < 0.0 { 1 } else { floored as u64 + 1 })
}

/// Elimination half width `sqrt(ln(T d^2) / (2 n))`.
#[inline]
pub fn half_width(horizon_t: u64, delta: f64, n: u64) -> f64 {
    (ln_clamped(horizon_t as f64 * delta * delta) / (2.0 * n as f64)).sqrt()
}

/// Selection bound term `sqrt(ln(T d^2) * r / (2 n))`.
#[inline]
pub fn bound_term(horizon_t: u64, delta: f64, n: u64, r: f64) -> f64 {
    (ln_clamped(horizon_t as f64 * delta * delta) * r / (2.0 * n as f64)).sqrt()
}
