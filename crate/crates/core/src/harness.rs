//! Engine-vs-engine match runner.
//!
//! A match plays `num_games` games between two engine configurations,
//! alternating which one takes Black (game 0: A is Black). Each game's seed
//! derives from `mix64(base_seed ^ mix64(game_index))` and the two engines
//! draw from independent per-color streams of it, so a record set is a pure
//! function of the config regardless of worker count or scheduling. Results
//! come with a Wilson 95% interval: a bare win rate over a thousand games
//! carries roughly three points of sampling error, and downstream
//! comparisons need that band.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::game::{GameState, Go9State, NoGo9State, Player, Winner};
use crate::mcts::{EngineConfig, EngineError, Searcher};
use crate::rng::{derive_seed, playout_rng};

#[derive(Debug, Error)]
pub enum MatchError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("match needs at least 1 game")]
    NoGames,
    #[error("game {game_index}: {source}")]
    GameFailed {
        game_index: u64,
        #[source]
        source: Box<MatchError>,
    },
    #[error("engine produced illegal move {mv} at game move {move_number}")]
    EngineIllegalMove { mv: String, move_number: u32 },
    #[error("unknown game `{0}` (expected go9 or nogo9)")]
    UnknownGame(String),
    #[error("nothing to emit: empty record set")]
    EmptyRecords,
    #[error("failed to write {path}: {source}")]
    Io { path: String, source: io::Error },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GameKind {
    Go9,
    NoGo9,
}

impl GameKind {
    pub fn name(self) -> &'static str {
        match self {
            GameKind::Go9 => "go9",
            GameKind::NoGo9 => "nogo9",
        }
    }
}

impl FromStr for GameKind {
    type Err = MatchError;
    fn from_str(s: &str) -> Result<Self, MatchError> {
        match s {
            "go9" => Ok(GameKind::Go9),
            "nogo9" => Ok(GameKind::NoGo9),
            other => Err(MatchError::UnknownGame(other.to_string())),
        }
    }
}

/// Which configured engine a record field refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EngineSide {
    A,
    B,
}

impl EngineSide {
    pub fn label(self) -> &'static str {
        match self {
            EngineSide::A => "A",
            EngineSide::B => "B",
        }
    }
}

#[derive(Clone, Debug)]
pub struct MatchConfig {
    pub game: GameKind,
    pub engine_a: EngineConfig,
    pub engine_b: EngineConfig,
    pub num_games: u64,
    pub base_seed: u64,
    /// Worker threads; 1 runs inline.
    pub workers: usize,
}

impl MatchConfig {
    pub fn validate(&self) -> Result<(), MatchError> {
        if self.num_games < 1 {
            return Err(MatchError::NoGames);
        }
        self.engine_a.validate()?;
        self.engine_b.validate()?;
        Ok(())
    }

    pub fn game_seed(&self, game_index: u64) -> u64 {
        derive_seed(self.base_seed, game_index)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatchRecord {
    pub game_index: u64,
    pub black_player: EngineSide,
    pub winner: EngineSide,
    pub move_count: u32,
    pub game_seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MatchSummary {
    pub wins_a: u64,
    pub games: u64,
    pub win_rate_a: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
}

impl MatchSummary {
    pub fn from_records(records: &[MatchRecord]) -> MatchSummary {
        let games = records.len() as u64;
        let wins_a = records
            .iter()
            .filter(|r| r.winner == EngineSide::A)
            .count() as u64;
        let (wilson_low, wilson_high) = wilson_interval(wins_a, games);
        MatchSummary {
            wins_a,
            games,
            win_rate_a: wins_a as f64 / games as f64,
            wilson_low,
            wilson_high,
        }
    }
}

/// Wilson score interval at 95% confidence for `wins` out of `games`.
pub fn wilson_interval(wins: u64, games: u64) -> (f64, f64) {
    assert!(games > 0, "interval needs at least one game");
    const Z: f64 = 1.959_963_984_540_054; // 97.5th normal percentile
    let n = games as f64;
    let p = wins as f64 / n;
    let z2 = Z * Z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Plays one game between two engine configurations from `initial`.
/// Engines draw from independent streams derived from `(seed, color)`.
/// Returns the winner and the final move count.
pub fn run_game<G: GameState>(
    initial: &G,
    black: &EngineConfig,
    white: &EngineConfig,
    seed: u64,
) -> Result<(Winner, u32), MatchError> {
    let mut black_rng = playout_rng(derive_seed(seed, 0));
    let mut white_rng = playout_rng(derive_seed(seed, 1));
    let mut state = initial.clone();
    loop {
        if state.is_terminal() {
            let winner = state.result().expect("terminal state scores");
            return Ok((winner, state.move_count()));
        }
        let (config, rng) = match state.to_move() {
            Player::Black => (black, &mut black_rng),
            Player::White => (white, &mut white_rng),
        };
        let mut searcher = Searcher::new(*config, &state)?;
        searcher.run(rng);
        debug_assert_eq!(searcher.iterations_run(), config.playouts_per_move as u64);
        let mv = searcher.best_move();
        if !state.is_legal(mv) {
            return Err(MatchError::EngineIllegalMove {
                mv: mv.to_string(),
                move_number: state.move_count(),
            });
        }
        state.apply(mv).map_err(|_| MatchError::EngineIllegalMove {
            mv: mv.to_string(),
            move_number: state.move_count(),
        })?;
    }
}

fn play_indexed_game(config: &MatchConfig, game_index: u64) -> Result<MatchRecord, MatchError> {
    let a_is_black = game_index % 2 == 0;
    let (black_cfg, white_cfg) = if a_is_black {
        (&config.engine_a, &config.engine_b)
    } else {
        (&config.engine_b, &config.engine_a)
    };
    let seed = config.game_seed(game_index);
    let outcome = match config.game {
        GameKind::Go9 => run_game(&Go9State::new(), black_cfg, white_cfg, seed),
        GameKind::NoGo9 => run_game(&NoGo9State::new(), black_cfg, white_cfg, seed),
    };
    let (winner, move_count) = outcome.map_err(|e| MatchError::GameFailed {
        game_index,
        source: Box::new(e),
    })?;
    let black_won = winner == Winner::BlackWin;
    let winner_side = if black_won == a_is_black {
        EngineSide::A
    } else {
        EngineSide::B
    };
    Ok(MatchRecord {
        game_index,
        black_player: if a_is_black { EngineSide::A } else { EngineSide::B },
        winner: winner_side,
        move_count,
        game_seed: seed,
    })
}

/// Plays the whole match. Games fan out to `workers` threads; records come
/// back sorted by game index and identical at any worker count.
pub fn run_match(config: &MatchConfig) -> Result<(Vec<MatchRecord>, MatchSummary), MatchError> {
    config.validate()?;
    let indices: Vec<u64> = (0..config.num_games).collect();
    let records: Result<Vec<MatchRecord>, MatchError> = if config.workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .expect("thread pool");
        pool.install(|| {
            indices
                .par_iter()
                .map(|&i| play_indexed_game(config, i))
                .collect()
        })
    } else {
        indices.iter().map(|&i| play_indexed_game(config, i)).collect()
    };
    let records = records?;
    let summary = MatchSummary::from_records(&records);
    Ok((records, summary))
}

/// Writes records as CSV (`game,black,winner,moves,seed`) followed by a
/// summary comment line with 4-decimal fixed formatting.
pub fn emit_match(
    records: &[MatchRecord],
    summary: &MatchSummary,
    path: &Path,
) -> Result<(), MatchError> {
    if records.is_empty() {
        return Err(MatchError::EmptyRecords);
    }
    let wrap = |source: io::Error| MatchError::Io {
        path: path.display().to_string(),
        source,
    };
    let file = File::create(path).map_err(wrap)?;
    let mut out = BufWriter::new(file);
    let mut write = || -> io::Result<()> {
        writeln!(out, "game,black,winner,moves,seed")?;
        for r in records {
            writeln!(
                out,
                "{},{},{},{},{}",
                r.game_index,
                r.black_player.label(),
                r.winner.label(),
                r.move_count,
                r.game_seed
            )?;
        }
        writeln!(
            out,
            "# win_rate_a={:.4} n={} wilson95=[{:.4},{:.4}]",
            summary.win_rate_a, summary.games, summary.wilson_low, summary.wilson_high
        )?;
        out.flush()
    };
    write().map_err(wrap)
}
