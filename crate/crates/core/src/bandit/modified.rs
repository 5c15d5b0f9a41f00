//! Modified improved UCB: greedy optimistic sampling with an arm-count
//! proxy for the candidate set.
//!
//! Instead of sweeping every candidate arm `n` times per round, only the arm
//! with the highest upper bound is sampled. The candidate set is replaced by
//! a count of arms still considered potentially optimal; the count sizes the
//! deadline at which the gap estimate `delta` halves. The same bookkeeping
//! block doubles as the per-node state of the tree-search variant.

use super::math::{bound_term, half_width, ln_clamped, n_arm_samples_clamped};
use super::ArmStats;

/// Bookkeeping block of the modified improved UCB algorithm.
///
/// One instance serves one episode of one bandit (or one game-tree node,
/// where it is re-initialized in place at episode rollovers).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModIucbState {
    /// Current gap estimate; always `2^-h` for some integer `h >= 0`.
    pub delta: f64,
    /// The episode's play budget `T`; bounds and `r` factors read it.
    pub horizon_t: u64,
    /// Per-arm sample target for the current `delta`.
    pub n_k: u64,
    /// Count of arms still considered potentially optimal.
    pub arm_count: u64,
    /// Play index at which `delta` next halves.
    pub delta_deadline: u64,
    /// Episode counter (0 for the first episode).
    pub episode: u64,
    /// Play index at which the current episode began.
    pub episode_start: u64,
}

impl ModIucbState {
    /// Fresh state for an episode with budget `horizon_t` over `total_arms`
    /// arms, with the deadline measured from play index 0.
    pub fn new(total_arms: u64, horizon_t: u64) -> Self {
        let n_k = n_arm_samples_clamped(horizon_t, 1.0);
        ModIucbState {
            delta: 1.0,
            horizon_t,
            n_k,
            arm_count: total_arms,
            delta_deadline: n_k * total_arms,
            episode: 0,
            episode_start: 0,
        }
    }

    /// Re-initializes the episode-local fields in place for a new episode
    /// with budget `horizon_t`, keeping the deadline relative to the current
    /// play index `now`. Arm statistics live outside this block and are
    /// deliberately untouched.
    pub fn rollover(&mut self, horizon_t: u64, total_arms: u64, now: u64) {
        let n_k = n_arm_samples_clamped(horizon_t, 1.0);
        self.delta = 1.0;
        self.horizon_t = horizon_t;
        self.n_k = n_k;
        self.arm_count = total_arms;
        self.delta_deadline = now + n_k * total_arms;
        self.episode += 1;
        self.episode_start = now;
    }

    /// Elimination half width at the current `delta` and `n_k`.
    pub fn half_width(&self) -> f64 {
        half_width(self.horizon_t, self.delta, self.n_k)
    }

    /// Upper-bound value of an arm with mean `mean` and `pulls` pulls.
    /// Unpulled arms get `+inf`.
    pub fn upper_bound(&self, mean: f64, pulls: u64, use_r_factor: bool) -> f64 {
        if pulls == 0 {
            return f64::INFINITY;
        }
        let r = if use_r_factor {
            self.horizon_t as f64 / pulls as f64
        } else {
            1.0
        };
        mean + bound_term(self.horizon_t, self.delta, self.n_k, r)
    }

    /// Processes a `delta` deadline: recounts the potentially-optimal arms
    /// against `reference` (the best mean for the bandit, the node's own
    /// mean in the tree), halves `delta`, recomputes `n_k`, and schedules
    /// the next deadline from play index `now`.
    ///
    /// The recount is stateless: the count is recomputed from the current
    /// means each time rather than decremented cumulatively, floored at 1
    /// so the deadline keeps advancing, and capped at its previous value so
    /// it never grows within an episode.
    pub fn process_deadline<I>(&mut self, means: I, total_arms: u64, reference: f64, now: u64)
    where
        I: IntoIterator<Item = f64>,
    {
        let h = self.half_width();
        let eliminated = means
            .into_iter()
            .filter(|&w| w + h < reference - h)
            .count() as u64;
        self.arm_count = total_arms
            .saturating_sub(eliminated)
            .min(self.arm_count)
            .max(1);
        self.delta /= 2.0;
        self.n_k = n_arm_samples_clamped(self.horizon_t, self.delta);
        self.delta_deadline = now + self.n_k * self.arm_count;
    }
}

/// Greedy optimistic selection: the arm with the highest upper bound
/// `w_i + sqrt(ln(T d^2) r_i / (2 n_k))`, `r_i = T / t_i` when the `r`
/// factor is enabled and 1 otherwise. All arms take part; unpulled arms
/// have value `+inf`; ties break to the lowest index.
pub fn modiucb_select(stats: &[ArmStats], st: &ModIucbState, use_r_factor: bool) -> usize {
    modiucb_select_among(stats, st, use_r_factor, None)
}

/// As [`modiucb_select`], restricted to the arms whose `alive` flag is set
/// when a mask is given. The bandit runner masks out arms the deadline
/// recount found separated; the unrestricted form is the literal
/// pseudo-code reading.
pub fn modiucb_select_among(
    stats: &[ArmStats],
    st: &ModIucbState,
    use_r_factor: bool,
    alive: Option<&[bool]>,
) -> usize {
    debug_assert!(!stats.is_empty());
    let considered = |i: usize| alive.is_none_or(|mask| mask[i]);
    let ln_term = ln_clamped(st.horizon_t as f64 * st.delta * st.delta);
    let mut best = usize::MAX;
    let mut best_val = f64::NEG_INFINITY;
    for (i, s) in stats.iter().enumerate() {
        if !considered(i) {
            continue;
        }
        if s.pulls == 0 {
            return i;
        }
        let r = if use_r_factor {
            st.horizon_t as f64 / s.pulls as f64
        } else {
            1.0
        };
        let val = s.mean_reward + (ln_term * r / (2.0 * st.n_k as f64)).sqrt();
        if best == usize::MAX || val > best_val {
            best_val = val;
            best = i;
        }
    }
    debug_assert_ne!(best, usize::MAX, "alive mask must keep at least one arm");
    best
}

/// Records one pull and services the `delta` deadline when the play index
/// `m` has reached it. The recount reference is the highest current mean
/// among all arms. When an `alive` mask is given it is refreshed in place
/// from the same recount (arms whose upper bound has fallen below the best
/// arm's lower bound stop being selectable until a later recount, or the
/// next episode, readmits them).
pub fn modiucb_update(
    stats: &mut [ArmStats],
    st: &mut ModIucbState,
    arm: usize,
    reward: f64,
    m: u64,
    alive: Option<&mut [bool]>,
) {
    stats[arm].update(reward);
    if m >= st.delta_deadline {
        let w_max = stats
            .iter()
            .map(|s| s.mean_reward)
            .fold(f64::NEG_INFINITY, f64::max);
        let total = stats.len() as u64;
        if let Some(mask) = alive {
            let h = st.half_width();
            let mut any = false;
            for (flag, s) in mask.iter_mut().zip(stats.iter()) {
                *flag = s.mean_reward + h >= w_max - h;
                any |= *flag;
            }
            debug_assert!(any, "the best arm never separates from itself");
        }
        st.process_deadline(stats.iter().map(|s| s.mean_reward), total, w_max, m);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stats_from(pairs: &[(u64, f64)]) -> Vec<ArmStats> {
        pairs
            .iter()
            .map(|&(pulls, mean_reward)| ArmStats { pulls, mean_reward })
            .collect()
    }

    #[test]
    fn initialization_matches_hand_evaluation() {
        // K = 60, T = 2: n_0 = ceil(2 ln 2) = 2, deadline = 2 * 60 = 120.
        let st = ModIucbState::new(60, 2);
        assert_eq!(st.n_k, 2);
        assert_eq!(st.delta_deadline, 120);
        assert_eq!(st.delta, 1.0);
        assert_eq!(st.arm_count, 60);
        assert_eq!(st.episode, 0);
    }

    #[test]
    fn unpulled_arm_is_preferred_lowest_index_first() {
        let st = ModIucbState::new(3, 100);
        let stats = stats_from(&[(5, 0.9), (0, 0.0), (0, 0.0)]);
        assert_eq!(modiucb_select(&stats, &st, true), 1);
    }

    #[test]
    fn select_value_matches_hand_evaluation() {
        // w = 0.5, T = 16, delta = 1, n_k = 6, t_i = 4 so r = 4:
        // 0.5 + sqrt(ln 16 * 4 / 12) = 1.46135...
        let st = ModIucbState {
            delta: 1.0,
            horizon_t: 16,
            n_k: 6,
            arm_count: 1,
            delta_deadline: u64::MAX,
            episode: 0,
            episode_start: 0,
        };
        let v = st.upper_bound(0.5, 4, true);
        assert!((v - 1.461_351_257_733_921_8).abs() < 1e-12);
        assert!((v - 1.46135).abs() < 1e-5);
    }

    #[test]
    fn select_without_r_prefers_higher_mean_on_equal_pulls() {
        let st = ModIucbState::new(2, 100);
        let stats = stats_from(&[(10, 0.2), (10, 0.6)]);
        assert_eq!(modiucb_select(&stats, &st, false), 1);
        // Ties break to the lowest index.
        let tied = stats_from(&[(10, 0.6), (10, 0.6)]);
        assert_eq!(modiucb_select(&tied, &st, false), 0);
    }

    #[test]
    fn elimination_inequality_counts_strictly_separated_arms() {
        // w_max = 0.9, half width 0.1: an arm at 0.6 has 0.7 < 0.8.
        let mut st = ModIucbState {
            delta: 1.0,
            horizon_t: 100,
            n_k: 10,
            arm_count: 3,
            delta_deadline: 0,
            episode: 0,
            episode_start: 0,
        };
        // Pick T, delta, n_k so the half width is exactly 0.1:
        // ln(T d^2) / (2 n) = 0.01. Easier to drive process_deadline directly
        // with crafted means and verify the recount via arm_count.
        let h = st.half_width();
        let means = [0.9, 0.9 - 2.0 * h - 1e-9, 0.9 - 2.0 * h + 1e-9];
        st.process_deadline(means, 3, 0.9, 50);
        // Only the strictly separated arm counts as eliminated.
        assert_eq!(st.arm_count, 2);
        assert_eq!(st.delta, 0.5);
        assert_eq!(st.delta_deadline, 50 + st.n_k * 2);
    }

    #[test]
    fn deadline_halves_delta_twice_over_two_crossings() {
        let mut stats = stats_from(&[(1, 0.5), (1, 0.5)]);
        let mut st = ModIucbState::new(2, 100);
        let first_deadline = st.delta_deadline;
        modiucb_update(&mut stats, &mut st, 0, 0.5, first_deadline, None);
        assert_eq!(st.delta, 0.5);
        let second_deadline = st.delta_deadline;
        assert!(second_deadline > first_deadline);
        modiucb_update(&mut stats, &mut st, 1, 0.5, second_deadline, None);
        assert_eq!(st.delta, 0.25);
    }

    #[test]
    fn deadline_recount_refreshes_the_alive_mask() {
        // Arm 1 sits far below arm 0: the recount drops it from selection.
        let mut stats = stats_from(&[(40, 0.9), (40, -5.0)]);
        let mut st = ModIucbState::new(2, 100);
        let mut alive = vec![true, true];
        let deadline = st.delta_deadline;
        modiucb_update(&mut stats, &mut st, 0, 0.9, deadline, Some(&mut alive));
        assert_eq!(alive, vec![true, false]);
        assert_eq!(st.arm_count, 1);
        assert_eq!(modiucb_select_among(&stats, &st, true, Some(&alive)), 0);
        // Unmasked selection still ranges over every arm.
        let all = modiucb_select(&stats, &st, true);
        assert!(all < 2);
    }

    #[test]
    fn arm_count_is_floored_at_one() {
        let mut st = ModIucbState::new(2, 100);
        // Both arms far below the reference: raw recount would hit zero.
        st.process_deadline([0.0, 0.0], 2, 10.0, 7);
        assert_eq!(st.arm_count, 1);
        assert!(st.delta_deadline > 7);
    }

    #[test]
    fn arm_count_never_grows_within_an_episode() {
        let mut st = ModIucbState::new(5, 1000);
        // First recount separates three arms (half width here is ~0.497,
        // so only means below 0.9 - 2h = -0.093 count as eliminated).
        st.process_deadline([0.9, -2.0, -2.0, -2.0, 0.85], 5, 0.9, 100);
        assert_eq!(st.arm_count, 2);
        // Means re-converge: the stateless recount would say 5, but the
        // count is capped at its previous value.
        st.process_deadline([0.5, 0.5, 0.5, 0.5, 0.5], 5, 0.5, 200);
        assert_eq!(st.arm_count, 2);
        // A rollover readmits everything.
        st.rollover(2000, 5, 300);
        assert_eq!(st.arm_count, 5);
    }

    #[test]
    fn rollover_resets_bounds_but_not_episode_zero() {
        let mut st = ModIucbState::new(60, 2);
        st.delta = 0.25;
        st.rollover(4, 60, 2);
        assert_eq!(st.delta, 1.0);
        assert_eq!(st.horizon_t, 4);
        assert_eq!(st.episode, 1);
        // n(4, 1) = ceil(2 ln 4) = 3, deadline measured from now = 2.
        assert_eq!(st.n_k, 3);
        assert_eq!(st.delta_deadline, 2 + 3 * 60);
    }
}
