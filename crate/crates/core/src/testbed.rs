//! Gaussian multi-armed bandit testbed.
//!
//! Tasks are K-armed bandits whose true means are drawn from a standard
//! normal; pulling an arm returns its mean plus unit normal noise. Policies
//! are compared on averaged cumulative regret and optimal-action percentage
//! over a shared task sequence: every policy sees identical tasks, and the
//! noise of the j-th pull of arm `a` within a task is the same no matter
//! which policy asks for it, so curve differences are attributable to the
//! policy alone.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;
use thiserror::Error;

use crate::bandit::{BanditError, BanditOracle, PolicyConfig, PolicyRunner, Pull};
use crate::rng::{counter_normal, derive_seed, mix64};

/// Fixed number of tasks per parallel work unit. Chunking depends only on
/// the config, so aggregation order (and therefore the emitted curves) is
/// identical at any worker count.
const TASKS_PER_CHUNK: u64 = 16;

#[derive(Debug, Error)]
pub enum TestbedError {
    #[error(transparent)]
    Bandit(#[from] BanditError),
    #[error("testbed needs at least 1 task")]
    NoTasks,
    #[error("testbed needs at least 2 arms (got {0})")]
    TooFewArms(usize),
    #[error("testbed needs a horizon of at least 1")]
    NoHorizon,
    #[error("testbed needs at least one policy")]
    NoPolicies,
    #[error("failed to write {path}: {source}")]
    Io { path: String, source: io::Error },
}

/// One K-armed Gaussian bandit instance.
#[derive(Clone, Debug)]
pub struct GaussianBanditTask {
    pub means: Vec<f64>,
    pub optimal_arm: usize,
    noise_seed: u64,
    noise_scale: f64,
}

impl GaussianBanditTask {
    /// Generates a task from its seed: K independent standard-normal means
    /// plus a derived noise stream.
    pub fn generate(num_arms: usize, task_seed: u64) -> Self {
        let mean_seed = derive_seed(task_seed, 0x4d45414e); // "MEAN"
        let means: Vec<f64> = (0..num_arms as u64)
            .map(|i| counter_normal(mean_seed, i))
            .collect();
        Self::from_means(means, derive_seed(task_seed, 0x4e4f4953), 1.0)
    }

    /// A noise-free task with the given true means; pulls return the mean
    /// exactly. Used by tests that need a deterministic reward stream.
    pub fn deterministic(means: Vec<f64>) -> Self {
        Self::from_means(means, 0, 0.0)
    }

    fn from_means(means: Vec<f64>, noise_seed: u64, noise_scale: f64) -> Self {
        debug_assert!(!means.is_empty());
        let optimal_arm = means
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .unwrap_or(0);
        GaussianBanditTask {
            means,
            optimal_arm,
            noise_seed,
            noise_scale,
        }
    }

    /// Reward of the `pull_index`-th pull of `arm` (0-based). A pure
    /// function of `(task, arm, pull_index)`: policies pulling the same arm
    /// the same number of times see the same noise.
    pub fn reward(&self, arm: usize, pull_index: u64) -> f64 {
        let counter = (arm as u64) << 40 | pull_index;
        self.means[arm] + self.noise_scale * counter_normal(self.noise_seed, counter)
    }
}

/// Stateful per-run oracle: counts pulls per arm to index the noise stream.
pub struct TaskOracle<'a> {
    task: &'a GaussianBanditTask,
    pull_counts: Vec<u64>,
}

impl<'a> TaskOracle<'a> {
    pub fn new(task: &'a GaussianBanditTask) -> Self {
        TaskOracle {
            task,
            pull_counts: vec![0; task.means.len()],
        }
    }
}

impl BanditOracle for TaskOracle<'_> {
    fn pull(&mut self, arm: usize) -> f64 {
        let idx = self.pull_counts[arm];
        self.pull_counts[arm] += 1;
        self.task.reward(arm, idx)
    }
}

/// How a regret increment is computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RegretMode {
    /// `mean[optimal] - mean[pulled]`: non-negative, monotone, low variance.
    #[default]
    PseudoTrueMeans,
    /// `mean[optimal] - received reward`: the raw definition.
    ReceivedReward,
}

#[derive(Clone, Debug)]
pub struct TestbedConfig {
    pub num_tasks: u64,
    pub num_arms: usize,
    pub horizon: u64,
    pub seed: u64,
    pub policies: Vec<PolicyConfig>,
    pub regret_mode: RegretMode,
    /// Worker threads; 1 runs inline.
    pub workers: usize,
}

impl TestbedConfig {
    pub fn validate(&self) -> Result<(), TestbedError> {
        if self.num_tasks < 1 {
            return Err(TestbedError::NoTasks);
        }
        if self.num_arms < 2 {
            return Err(TestbedError::TooFewArms(self.num_arms));
        }
        if self.horizon < 1 {
            return Err(TestbedError::NoHorizon);
        }
        if self.policies.is_empty() {
            return Err(TestbedError::NoPolicies);
        }
        for p in &self.policies {
            p.validate()?;
        }
        Ok(())
    }

    /// Seed of task `index`; all policies share it.
    pub fn task_seed(&self, index: u64) -> u64 {
        derive_seed(self.seed, mix64(index))
    }
}

/// Anything that can pick arms pull-by-pull.
pub trait Selector {
    fn select(&mut self) -> usize;
    fn update(&mut self, arm: usize, reward: f64);
}

impl Selector for PolicyRunner {
    fn select(&mut self) -> usize {
        PolicyRunner::select(self)
    }
    fn update(&mut self, arm: usize, reward: f64) {
        PolicyRunner::update(self, arm, reward)
    }
}

/// Per-play outputs of one policy on one task.
#[derive(Clone, Debug)]
pub struct TaskRun {
    pub pulls: Vec<Pull>,
    pub regret_increments: Vec<f64>,
    pub optimal_flags: Vec<bool>,
}

/// Plays `selector` on `task` for exactly `horizon` pulls.
pub fn run_task_with<S: Selector>(
    task: &GaussianBanditTask,
    selector: &mut S,
    horizon: u64,
    mode: RegretMode,
) -> TaskRun {
    let mut oracle = TaskOracle::new(task);
    let optimal_mean = task.means[task.optimal_arm];
    let mut run = TaskRun {
        pulls: Vec::with_capacity(horizon as usize),
        regret_increments: Vec::with_capacity(horizon as usize),
        optimal_flags: Vec::with_capacity(horizon as usize),
    };
    for _ in 0..horizon {
        let arm = selector.select();
        let reward = oracle.pull(arm);
        selector.update(arm, reward);
        run.pulls.push(Pull { arm, reward });
        run.regret_increments.push(match mode {
            RegretMode::PseudoTrueMeans => optimal_mean - task.means[arm],
            RegretMode::ReceivedReward => optimal_mean - reward,
        });
        run.optimal_flags.push(arm == task.optimal_arm);
    }
    run
}

/// Plays `policy` on `task` for exactly `horizon` pulls.
pub fn run_task(
    task: &GaussianBanditTask,
    policy: PolicyConfig,
    horizon: u64,
    mode: RegretMode,
) -> Result<TaskRun, TestbedError> {
    let mut runner = PolicyRunner::new(policy, task.means.len())?;
    Ok(run_task_with(task, &mut runner, horizon, mode))
}

/// Averaged per-play curves of one policy.
#[derive(Clone, Debug, PartialEq)]
pub struct RegretCurve {
    /// Mean cumulative regret after play `p + 1`.
    pub cum_regret: Vec<f64>,
    /// Percentage of tasks whose play `p + 1` pulled the true best arm.
    pub optimal_pct: Vec<f64>,
}

#[derive(Clone)]
struct Accumulator {
    // Per policy: summed regret increments and optimal-pull counts per play.
    regret_sum: Vec<Vec<f64>>,
    optimal_count: Vec<Vec<u64>>,
}

impl Accumulator {
    fn zero(num_policies: usize, horizon: usize) -> Self {
        Accumulator {
            regret_sum: vec![vec![0.0; horizon]; num_policies],
            optimal_count: vec![vec![0; horizon]; num_policies],
        }
    }

    fn absorb_task(&mut self, policy_idx: usize, run: &TaskRun) {
        let rs = &mut self.regret_sum[policy_idx];
        let oc = &mut self.optimal_count[policy_idx];
        for (p, (&inc, &opt)) in run
            .regret_increments
            .iter()
            .zip(&run.optimal_flags)
            .enumerate()
        {
            rs[p] += inc;
            oc[p] += opt as u64;
        }
    }

    fn merge(&mut self, other: &Accumulator) {
        for (a, b) in self.regret_sum.iter_mut().zip(&other.regret_sum) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
        for (a, b) in self.optimal_count.iter_mut().zip(&other.optimal_count) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
    }
}

/// Runs every configured policy over the shared task sequence and averages.
///
/// Tasks fan out to `workers` threads in fixed chunks; the reduction is a
/// chunk-ordered sum, so results do not depend on scheduling or worker
/// count.
pub fn run_testbed(config: &TestbedConfig) -> Result<Vec<RegretCurve>, TestbedError> {
    config.validate()?;
    let horizon = config.horizon as usize;
    let num_chunks = config.num_tasks.div_euclid(TASKS_PER_CHUNK)
        + u64::from(config.num_tasks % TASKS_PER_CHUNK != 0);

    let accumulate_chunk = |chunk: u64| -> Result<Accumulator, TestbedError> {
        let mut acc = Accumulator::zero(config.policies.len(), horizon);
        let lo = chunk * TASKS_PER_CHUNK;
        let hi = (lo + TASKS_PER_CHUNK).min(config.num_tasks);
        for task_idx in lo..hi {
            let task = GaussianBanditTask::generate(config.num_arms, config.task_seed(task_idx));
            for (policy_idx, policy) in config.policies.iter().enumerate() {
                let run = run_task(&task, *policy, config.horizon, config.regret_mode)?;
                acc.absorb_task(policy_idx, &run);
            }
        }
        Ok(acc)
    };

    let partials: Vec<Result<Accumulator, TestbedError>> = if config.workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .expect("thread pool");
        pool.install(|| (0..num_chunks).into_par_iter().map(accumulate_chunk).collect())
    } else {
        (0..num_chunks).map(accumulate_chunk).collect()
    };

    let mut total = Accumulator::zero(config.policies.len(), horizon);
    for partial in partials {
        total.merge(&partial?);
    }

    let n = config.num_tasks as f64;
    let curves = (0..config.policies.len())
        .map(|poly| {
            let mut cum = 0.0;
            let cum_regret = total.regret_sum[poly]
                .iter()
                .map(|&s| {
                    cum += s / n;
                    cum
                })
                .collect();
            let optimal_pct = total.optimal_count[poly]
                .iter()
                .map(|&c| 100.0 * c as f64 / n)
                .collect();
            RegretCurve {
                cum_regret,
                optimal_pct,
            }
        })
        .collect();
    Ok(curves)
}

/// Writes curves as CSV: header `play,policy,cum_regret,optimal_pct`, one
/// row per (play, policy), plays 1-indexed, rows grouped by policy in config
/// order.
pub fn emit_curves(
    names_and_curves: &[(&str, &RegretCurve)],
    path: &Path,
) -> Result<(), TestbedError> {
    let wrap = |source: io::Error| TestbedError::Io {
        path: path.display().to_string(),
        source,
    };
    let file = File::create(path).map_err(wrap)?;
    let mut out = BufWriter::new(file);
    let mut write = || -> io::Result<()> {
        writeln!(out, "play,policy,cum_regret,optimal_pct")?;
        for (name, curve) in names_and_curves {
            for (p, (regret, pct)) in curve.cum_regret.iter().zip(&curve.optimal_pct).enumerate() {
                writeln!(out, "{},{},{},{}", p + 1, name, regret, pct)?;
            }
        }
        out.flush()
    };
    write().map_err(wrap)
}
