//! Bandit algorithms, 9x9 Go/NoGo engines, and two tree-search engines
//! (plain UCT and Mi-UCT, the modified improved UCB run as a tree policy),
//! plus the experiment harnesses that compare them: a Gaussian multi-armed
//! bandit testbed and a deterministic self-play match runner.

pub mod bandit;
pub mod game;
pub mod harness;
pub mod mcts;
pub mod rng;
pub mod testbed;

pub use bandit::{ArmStats, BanditError, PolicyConfig, PolicyKind};
pub use game::{GameError, GameState, Go9State, Move, NoGo9State, Player, Winner};
pub use harness::{GameKind, MatchConfig, MatchError, MatchRecord, MatchSummary};
pub use mcts::{EngineConfig, EngineError, EngineKind, Searcher};
pub use testbed::{GaussianBanditTask, RegretCurve, RegretMode, TestbedConfig};
