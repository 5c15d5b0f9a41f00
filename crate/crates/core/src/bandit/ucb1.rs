//! Classic UCB1 baseline.

use super::ArmStats;

/// UCB1 selection: any unpulled arm first (lowest index), then
/// `argmax w_i + c * sqrt(2 ln t / t_i)` where `t` is the total number of
/// plays so far. Ties break to the lowest index.
pub fn ucb1_select(stats: &[ArmStats], total_plays: u64, exploration_c: f64) -> usize {
    debug_assert!(!stats.is_empty());
    let ln_t = (total_plays.max(1) as f64).ln();
    let mut best = 0usize;
    let mut best_val = f64::NEG_INFINITY;
    for (i, s) in stats.iter().enumerate() {
        if s.pulls == 0 {
            return i;
        }
        let val = s.mean_reward + exploration_c * (2.0 * ln_t / s.pulls as f64).sqrt();
        if val > best_val {
            best_val = val;
            best = i;
        }
    }
    best
}
