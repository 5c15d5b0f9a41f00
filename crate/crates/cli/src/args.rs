//! Argument definitions and their translation into run configurations.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use miuct_core::bandit::PolicyConfig;
use miuct_core::harness::{GameKind, MatchConfig};
use miuct_core::mcts::EngineConfig;
use miuct_core::testbed::{RegretMode, TestbedConfig};

#[derive(Parser, Debug)]
#[command(
    name = "miuct",
    version,
    about = "Bandit testbed and 9x9 Go / NoGo engine match runner"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run Gaussian K-armed bandit tasks and emit regret curves
    Bandit(BanditArgs),
    /// Play an engine-vs-engine match and emit per-game records
    Match(MatchArgs),
}

#[derive(Args, Debug)]
pub struct BanditArgs {
    /// Policy to evaluate; repeat the flag for several. One of: ucb1,
    /// iucb, iucb-ep, miucb-nor, miucb-nor-ep, miucb, miucb-ep
    #[arg(long = "policy", value_name = "NAME", required = true)]
    pub policies: Vec<String>,

    /// Number of arms per task
    #[arg(long, default_value_t = 60)]
    pub arms: usize,

    /// Number of random tasks to average over
    #[arg(long, default_value_t = 2000)]
    pub tasks: u64,

    /// Plays per task
    #[arg(long, default_value_t = 5000)]
    pub horizon: u64,

    /// Base seed for task generation and reward noise
    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    /// Output CSV path (play,policy,cum_regret,optimal_pct)
    #[arg(long, value_name = "PATH")]
    pub out: PathBuf,

    /// Worker threads
    #[arg(long, default_value_t = 1)]
    pub parallel: usize,

    /// Report received-reward regret instead of true-mean pseudo-regret
    #[arg(long)]
    pub received_reward: bool,
}

impl BanditArgs {
    pub fn to_config(&self) -> Result<TestbedConfig> {
        let mut policies = Vec::with_capacity(self.policies.len());
        for name in &self.policies {
            let policy = PolicyConfig::from_name(name, self.horizon)
                .with_context(|| format!("bad --policy {name}"))?;
            policies.push(policy);
        }
        let config = TestbedConfig {
            num_tasks: self.tasks,
            num_arms: self.arms,
            horizon: self.horizon,
            seed: self.seed,
            policies,
            regret_mode: if self.received_reward {
                RegretMode::ReceivedReward
            } else {
                RegretMode::PseudoTrueMeans
            },
            workers: self.parallel.max(1),
        };
        config.validate()?;
        Ok(config)
    }
}

#[derive(Args, Debug)]
pub struct MatchArgs {
    /// Game to play: go9 or nogo9
    #[arg(long)]
    pub game: String,

    /// First engine: miuct or uct:C=<real>
    #[arg(long = "engine-a", value_name = "SPEC")]
    pub engine_a: String,

    /// Second engine: miuct or uct:C=<real>
    #[arg(long = "engine-b", value_name = "SPEC")]
    pub engine_b: String,

    /// Random playouts per move for both engines
    #[arg(long, default_value_t = 1000)]
    pub playouts: u32,

    /// Number of games (Black alternates, engine A first)
    #[arg(long, default_value_t = 1000)]
    pub games: u64,

    /// Base seed; per-game seeds derive from it
    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    /// Output CSV path (game,black,winner,moves,seed + summary line)
    #[arg(long, value_name = "PATH")]
    pub out: PathBuf,

    /// Worker threads (one game per worker at a time)
    #[arg(long, default_value_t = 1)]
    pub parallel: usize,
}

impl MatchArgs {
    pub fn to_config(&self) -> Result<MatchConfig> {
        let game: GameKind = self.game.parse()?;
        if self.playouts == 0 {
            bail!("--playouts must be at least 1");
        }
        let engine_a = EngineConfig::parse_spec(&self.engine_a, self.playouts)
            .with_context(|| format!("bad --engine-a {}", self.engine_a))?;
        let engine_b = EngineConfig::parse_spec(&self.engine_b, self.playouts)
            .with_context(|| format!("bad --engine-b {}", self.engine_b))?;
        let config = MatchConfig {
            game,
            engine_a,
            engine_b,
            num_games: self.games,
            base_seed: self.seed,
            workers: self.parallel.max(1),
        };
        config.validate()?;
        Ok(config)
    }
}
