//! Improved UCB: round-based sampling with arm elimination.
//!
//! The algorithm receives a play budget `T` up front and divides it into
//! rounds. Round `m` tops every candidate arm up to `n_m` samples (sampling
//! is cumulative across rounds), removes candidates whose upper bound falls
//! below the best candidate's lower bound, and halves the gap estimate. The
//! driver may cut the schedule short at any point when the play budget runs
//! out.

use super::math::{half_width, n_arm_samples_clamped, num_rounds};
use super::ArmStats;

/// Candidate-arm flags. Flags only ever go from alive to eliminated; the
/// algorithm has no re-admission.
#[derive(Clone, Debug)]
pub struct CandidateSet {
    alive: Vec<bool>,
}

impl CandidateSet {
    pub fn new(num_arms: usize) -> Self {
        CandidateSet {
            alive: vec![true; num_arms],
        }
    }

    #[inline]
    pub fn is_alive(&self, arm: usize) -> bool {
        self.alive[arm]
    }

    pub fn eliminate(&mut self, arm: usize) {
        self.alive[arm] = false;
    }

    pub fn alive_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    pub fn alive_arms(&self) -> impl Iterator<Item = usize> + '_ {
        self.alive
            .iter()
            .enumerate()
            .filter_map(|(i, &a)| a.then_some(i))
    }
}

/// Incremental driver for one improved-UCB run over a fixed horizon.
///
/// Sampling progress is local to the instance: in episodic mode each episode
/// gets a fresh schedule even though the shared arm statistics keep
/// accumulating across episodes.
#[derive(Clone, Debug)]
pub struct ImprovedUcbSchedule {
    horizon_t: u64,
    candidates: CandidateSet,
    delta: f64,
    round: u64,
    rounds_total: u64,
    n_target: u64,
    /// Pulls per arm within this schedule instance.
    local_pulls: Vec<u64>,
    /// Arm currently being topped up.
    cursor: usize,
    exhausted: bool,
}

impl ImprovedUcbSchedule {
    pub fn new(num_arms: usize, horizon_t: u64) -> Self {
        let mut schedule = ImprovedUcbSchedule {
            horizon_t,
            candidates: CandidateSet::new(num_arms),
            delta: 1.0,
            round: 0,
            rounds_total: num_rounds(horizon_t).expect("horizon checked by caller"),
            n_target: n_arm_samples_clamped(horizon_t, 1.0),
            local_pulls: vec![0; num_arms],
            cursor: 0,
            exhausted: false,
        };
        schedule.advance_cursor();
        schedule
    }

    /// True once every scheduled round has completed.
    pub fn is_exhausted(&self) -> bool {
        self.exhausted
    }

    pub fn candidates(&self) -> &CandidateSet {
        &self.candidates
    }

    pub fn current_delta(&self) -> f64 {
        self.delta
    }

    /// The arm the schedule wants sampled next. After exhaustion, falls back
    /// to the alive arm with the best empirical mean (the schedule itself
    /// never asks for more samples, but a caller on a fixed play budget may).
    pub fn select(&self, stats: &[ArmStats]) -> usize {
        if !self.exhausted {
            return self.cursor;
        }
        let mut best = 0usize;
        let mut best_mean = f64::NEG_INFINITY;
        for arm in self.candidates.alive_arms() {
            if stats[arm].mean_reward > best_mean {
                best_mean = stats[arm].mean_reward;
                best = arm;
            }
        }
        best
    }

    /// Records that `arm` was sampled and advances the round machinery,
    /// running elimination and the `delta` halving whenever a round's sweep
    /// completes.
    pub fn record_pull(&mut self, arm: usize, stats: &[ArmStats]) {
        if self.exhausted {
            return;
        }
        debug_assert_eq!(arm, self.cursor, "pulls must follow the schedule");
        self.local_pulls[arm] += 1;
        self.advance_cursor();
        while !self.exhausted && !self.round_has_pending_samples() {
            self.finish_round(stats);
        }
    }

    fn round_has_pending_samples(&self) -> bool {
        self.candidates
            .alive_arms()
            .any(|arm| self.local_pulls[arm] < self.n_target)
    }

    /// Moves the cursor to the next alive arm still below the round target.
    fn advance_cursor(&mut self) {
        for arm in 0..self.local_pulls.len() {
            if self.candidates.is_alive(arm) && self.local_pulls[arm] < self.n_target {
                self.cursor = arm;
                return;
            }
        }
        // Sweep complete; `record_pull` finishes the round.
    }

    /// Arm elimination followed by the `delta` update.
    fn finish_round(&mut self, stats: &[ArmStats]) {
        let h = half_width(self.horizon_t, self.delta, self.n_target);
        let w_max = self
            .candidates
            .alive_arms()
            .map(|arm| stats[arm].mean_reward)
            .fold(f64::NEG_INFINITY, f64::max);
        let doomed: Vec<usize> = self
            .candidates
            .alive_arms()
            .filter(|&arm| stats[arm].mean_reward + h < w_max - h)
            .collect();
        for arm in doomed {
            self.candidates.eliminate(arm);
        }

        self.delta /= 2.0;
        self.round += 1;
        if self.round >= self.rounds_total {
            self.exhausted = true;
            return;
        }
        self.n_target = n_arm_samples_clamped(self.horizon_t, self.delta);
        self.advance_cursor();
    }
}
