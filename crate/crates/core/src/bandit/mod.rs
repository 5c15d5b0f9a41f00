//! Bandit policies behind one pull-by-pull interface.
//!
//! Three policy families share the [`PolicyRunner`] driver:
//!
//! - UCB1, the classic baseline;
//! - improved UCB, round-based sampling with arm elimination over a known
//!   horizon;
//! - modified improved UCB, greedy optimistic sampling with an arm-count
//!   proxy and optional per-arm `r = T / t_i` bound widening.
//!
//! The improved variants additionally run in episodic mode for unknown
//! horizons: the budget of episode `l + 1` is the square of episode `l`'s,
//! starting from 2. Episode-local bound state is re-initialized at each
//! boundary while the per-arm pull counts and means persist.

mod improved;
mod math;
mod modified;
mod ucb1;

pub use improved::{CandidateSet, ImprovedUcbSchedule};
pub use math::{half_width, ln_clamped, n_arm_samples, num_rounds};
pub use modified::{modiucb_select, modiucb_select_among, modiucb_update, ModIucbState};
pub use ucb1::ucb1_select;

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum BanditError {
    #[error("horizon must be at least 1 (got {0})")]
    InvalidHorizon(u64),
    #[error("delta must be in (0, 1] (got {0})")]
    InvalidDelta(f64),
    #[error("need at least 2 arms (got {0})")]
    TooFewArms(usize),
    #[error("the r factor only applies to the modified improved UCB policy")]
    RFactorNotApplicable,
    #[error("UCB1 has no episodic mode")]
    EpisodicUcb1,
    #[error("non-episodic {0} requires a horizon")]
    MissingHorizon(&'static str),
    #[error("the episodic runner needs an episodic policy")]
    NotEpisodic,
    #[error("exploration constant must be positive (got {0})")]
    InvalidExplorationC(f64),
    #[error("unknown policy name `{0}`")]
    UnknownPolicy(String),
}

/// Per-arm pull count and running mean reward.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ArmStats {
    pub pulls: u64,
    pub mean_reward: f64,
}

impl ArmStats {
    /// Folds one reward into the running mean.
    #[inline]
    pub fn update(&mut self, reward: f64) {
        self.pulls += 1;
        self.mean_reward += (reward - self.mean_reward) / self.pulls as f64;
    }
}

/// Which policy family to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolicyKind {
    Ucb1,
    ImprovedUcb,
    ModifiedImprovedUcb,
}

/// Full policy selection, covering the seven testbed variants.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolicyConfig {
    pub kind: PolicyKind,
    pub episodic: bool,
    pub use_r_factor: bool,
    /// Exploration constant; read by UCB1 only.
    pub exploration_c: f64,
    /// Play budget `T`; required when a non-episodic improved variant runs.
    pub horizon: Option<u64>,
}

impl PolicyConfig {
    pub fn ucb1(exploration_c: f64) -> Self {
        PolicyConfig {
            kind: PolicyKind::Ucb1,
            episodic: false,
            use_r_factor: false,
            exploration_c,
            horizon: None,
        }
    }

    pub fn improved_ucb(horizon: u64) -> Self {
        PolicyConfig {
            kind: PolicyKind::ImprovedUcb,
            episodic: false,
            use_r_factor: false,
            exploration_c: 1.0,
            horizon: Some(horizon),
        }
    }

    pub fn improved_ucb_episodic() -> Self {
        PolicyConfig {
            kind: PolicyKind::ImprovedUcb,
            episodic: true,
            use_r_factor: false,
            exploration_c: 1.0,
            horizon: None,
        }
    }

    pub fn modified_iucb(horizon: u64, use_r_factor: bool) -> Self {
        PolicyConfig {
            kind: PolicyKind::ModifiedImprovedUcb,
            episodic: false,
            use_r_factor,
            exploration_c: 1.0,
            horizon: Some(horizon),
        }
    }

    pub fn modified_iucb_episodic(use_r_factor: bool) -> Self {
        PolicyConfig {
            kind: PolicyKind::ModifiedImprovedUcb,
            episodic: true,
            use_r_factor,
            exploration_c: 1.0,
            horizon: None,
        }
    }

    /// Maps a testbed policy name to its configuration. Non-episodic
    /// improved variants take `horizon` as their play budget.
    pub fn from_name(name: &str, horizon: u64) -> Result<Self, BanditError> {
        let config = match name {
            "ucb1" => Self::ucb1(1.0),
            "iucb" => Self::improved_ucb(horizon),
            "iucb-ep" => Self::improved_ucb_episodic(),
            "miucb-nor" => Self::modified_iucb(horizon, false),
            "miucb-nor-ep" => Self::modified_iucb_episodic(false),
            "miucb" => Self::modified_iucb(horizon, true),
            "miucb-ep" => Self::modified_iucb_episodic(true),
            other => return Err(BanditError::UnknownPolicy(other.to_string())),
        };
        Ok(config)
    }

    /// Canonical short name used in emitted curve files.
    pub fn variant_name(&self) -> &'static str {
        match (self.kind, self.use_r_factor, self.episodic) {
            (PolicyKind::Ucb1, _, _) => "ucb1",
            (PolicyKind::ImprovedUcb, _, false) => "iucb",
            (PolicyKind::ImprovedUcb, _, true) => "iucb-ep",
            (PolicyKind::ModifiedImprovedUcb, false, false) => "miucb-nor",
            (PolicyKind::ModifiedImprovedUcb, false, true) => "miucb-nor-ep",
            (PolicyKind::ModifiedImprovedUcb, true, false) => "miucb",
            (PolicyKind::ModifiedImprovedUcb, true, true) => "miucb-ep",
        }
    }

    pub fn validate(&self) -> Result<(), BanditError> {
        if self.use_r_factor && self.kind != PolicyKind::ModifiedImprovedUcb {
            return Err(BanditError::RFactorNotApplicable);
        }
        match self.kind {
            PolicyKind::Ucb1 => {
                if self.episodic {
                    return Err(BanditError::EpisodicUcb1);
                }
                if self.exploration_c.is_nan() || self.exploration_c <= 0.0 {
                    return Err(BanditError::InvalidExplorationC(self.exploration_c));
                }
            }
            PolicyKind::ImprovedUcb | PolicyKind::ModifiedImprovedUcb => {
                if !self.episodic {
                    match self.horizon {
                        None => {
                            return Err(BanditError::MissingHorizon(match self.kind {
                                PolicyKind::ImprovedUcb => "improved UCB",
                                _ => "modified improved UCB",
                            }))
                        }
                        Some(0) => return Err(BanditError::InvalidHorizon(0)),
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(())
    }
}

/// A reward source. Implementations own their randomness so a pull sequence
/// is reproducible from the oracle's construction alone.
pub trait BanditOracle {
    fn pull(&mut self, arm: usize) -> f64;
}

impl<F: FnMut(usize) -> f64> BanditOracle for F {
    fn pull(&mut self, arm: usize) -> f64 {
        self(arm)
    }
}

/// One logged play.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pull {
    pub arm: usize,
    pub reward: f64,
}

pub type PullLog = Vec<Pull>;

/// First episode budget of the episodic scheme.
pub const FIRST_EPISODE_BUDGET: u64 = 2;

enum AlgState {
    Ucb1,
    Improved(ImprovedUcbSchedule),
    Modified {
        st: ModIucbState,
        /// Arms still selectable; refreshed at each deadline recount and
        /// reset at episode boundaries.
        alive: Vec<bool>,
    },
}

/// Pull-by-pull driver for any [`PolicyConfig`].
///
/// `select` is read-only; `update` folds the observed reward in and advances
/// round, deadline, and episode machinery. One runner serves one bandit run;
/// parallel experiments use independent runners.
pub struct PolicyRunner {
    config: PolicyConfig,
    stats: Vec<ArmStats>,
    alg: AlgState,
    episode: u64,
    episode_horizon: u64,
    plays_in_episode: u64,
    total_plays: u64,
}

impl PolicyRunner {
    pub fn new(config: PolicyConfig, num_arms: usize) -> Result<Self, BanditError> {
        config.validate()?;
        if num_arms < 2 {
            return Err(BanditError::TooFewArms(num_arms));
        }
        let episode_horizon = if config.episodic {
            FIRST_EPISODE_BUDGET
        } else {
            config.horizon.unwrap_or(u64::MAX)
        };
        let alg = Self::fresh_alg(&config, num_arms, episode_horizon);
        Ok(PolicyRunner {
            config,
            stats: vec![ArmStats::default(); num_arms],
            alg,
            episode: 0,
            episode_horizon,
            plays_in_episode: 0,
            total_plays: 0,
        })
    }

    fn fresh_alg(config: &PolicyConfig, num_arms: usize, episode_horizon: u64) -> AlgState {
        match config.kind {
            PolicyKind::Ucb1 => AlgState::Ucb1,
            PolicyKind::ImprovedUcb => {
                AlgState::Improved(ImprovedUcbSchedule::new(num_arms, episode_horizon))
            }
            PolicyKind::ModifiedImprovedUcb => AlgState::Modified {
                st: ModIucbState::new(num_arms as u64, episode_horizon),
                alive: vec![true; num_arms],
            },
        }
    }

    pub fn stats(&self) -> &[ArmStats] {
        &self.stats
    }

    pub fn config(&self) -> &PolicyConfig {
        &self.config
    }

    /// Episode index `l` (always 0 for non-episodic runs).
    pub fn episode(&self) -> u64 {
        self.episode
    }

    /// Episode-local bound state, when the modified variant is running.
    pub fn modiucb_state(&self) -> Option<&ModIucbState> {
        match &self.alg {
            AlgState::Modified { st, .. } => Some(st),
            _ => None,
        }
    }

    /// Selectable-arm flags of the modified variant.
    pub fn modiucb_alive(&self) -> Option<&[bool]> {
        match &self.alg {
            AlgState::Modified { alive, .. } => Some(alive),
            _ => None,
        }
    }

    /// True when a non-episodic improved-UCB schedule has run every round.
    pub fn schedule_exhausted(&self) -> bool {
        match &self.alg {
            AlgState::Improved(schedule) => schedule.is_exhausted(),
            _ => false,
        }
    }

    /// The arm to pull next.
    pub fn select(&self) -> usize {
        match &self.alg {
            AlgState::Ucb1 => ucb1_select(&self.stats, self.total_plays, self.config.exploration_c),
            AlgState::Improved(schedule) => schedule.select(&self.stats),
            AlgState::Modified { st, alive } => {
                modified::modiucb_select_among(&self.stats, st, self.config.use_r_factor, Some(alive))
            }
        }
    }

    /// Folds in the reward for `arm` and advances the policy.
    pub fn update(&mut self, arm: usize, reward: f64) {
        match &mut self.alg {
            AlgState::Ucb1 => self.stats[arm].update(reward),
            AlgState::Improved(schedule) => {
                self.stats[arm].update(reward);
                schedule.record_pull(arm, &self.stats);
            }
            AlgState::Modified { st, alive } => {
                modiucb_update(
                    &mut self.stats,
                    st,
                    arm,
                    reward,
                    self.plays_in_episode,
                    Some(alive),
                );
            }
        }
        self.plays_in_episode += 1;
        self.total_plays += 1;
        if self.config.episodic && self.plays_in_episode >= self.episode_horizon {
            self.episode += 1;
            self.episode_horizon = self.episode_horizon.saturating_mul(self.episode_horizon);
            self.plays_in_episode = 0;
            self.alg = Self::fresh_alg(&self.config, self.stats.len(), self.episode_horizon);
        }
    }
}

/// Runs `policy` against `oracle` for exactly `total_plays` pulls.
///
/// A non-episodic improved-UCB run whose round schedule completes before the
/// budget keeps pulling the best remaining arm greedily.
pub fn run_policy(
    policy: PolicyConfig,
    oracle: &mut dyn BanditOracle,
    num_arms: usize,
    total_plays: u64,
) -> Result<PullLog, BanditError> {
    let mut runner = PolicyRunner::new(policy, num_arms)?;
    let mut log = Vec::with_capacity(total_plays.min(1 << 20) as usize);
    for _ in 0..total_plays {
        let arm = runner.select();
        let reward = oracle.pull(arm);
        runner.update(arm, reward);
        log.push(Pull { arm, reward });
    }
    Ok(log)
}

/// One full improved-UCB run (rounds, elimination, `delta` halving) over a
/// known horizon. Stops when `horizon_t` pulls have been made or when every
/// scheduled round has completed, whichever comes first.
pub fn run_improved_ucb(
    oracle: &mut dyn BanditOracle,
    num_arms: usize,
    horizon_t: u64,
) -> Result<PullLog, BanditError> {
    if horizon_t < 1 {
        return Err(BanditError::InvalidHorizon(horizon_t));
    }
    let mut runner = PolicyRunner::new(PolicyConfig::improved_ucb(horizon_t), num_arms)?;
    let mut log = Vec::new();
    for _ in 0..horizon_t {
        if runner.schedule_exhausted() {
            break;
        }
        let arm = runner.select();
        let reward = oracle.pull(arm);
        runner.update(arm, reward);
        log.push(Pull { arm, reward });
    }
    Ok(log)
}

/// Runs an episodic policy for exactly `total_plays` pulls, restarting the
/// underlying algorithm with squared budgets 2, 4, 16, 256, ... and keeping
/// the per-arm statistics across boundaries.
pub fn run_episodic(
    policy: PolicyConfig,
    oracle: &mut dyn BanditOracle,
    num_arms: usize,
    total_plays: u64,
) -> Result<PullLog, BanditError> {
    if !policy.episodic {
        return Err(BanditError::NotEpisodic);
    }
    run_policy(policy, oracle, num_arms, total_plays)
}
