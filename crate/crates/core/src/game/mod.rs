//! Two-player, zero-sum, perfect-information games behind one interface,
//! with concrete 9x9 Go and 9x9 NoGo rule sets and the pure-random playout
//! both search engines use.

mod board;
mod go;
mod nogo;

pub use board::{Board, BLACK, EMPTY, POINTS, SIZE, WHITE};
pub use go::{Go9State, GO_KOMI, MOVE_CAP};
pub use nogo::NoGo9State;

use std::fmt;

use thiserror::Error;

use crate::rng::PlayoutRng;

/// The side to move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Player {
    Black,
    White,
}

impl Player {
    #[inline]
    pub fn opponent(self) -> Player {
        match self {
            Player::Black => Player::White,
            Player::White => Player::Black,
        }
    }

    #[inline]
    pub(crate) fn stone(self) -> u8 {
        match self {
            Player::Black => BLACK,
            Player::White => WHITE,
        }
    }
}

/// Terminal verdict. Komi is fractional, so Go has no draws; NoGo cannot
/// draw by construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Winner {
    BlackWin,
    WhiteWin,
}

impl Winner {
    /// Reward of the verdict from `player`'s perspective: 1 for a win,
    /// 0 for a loss.
    #[inline]
    pub fn reward_for(self, player: Player) -> f64 {
        match (self, player) {
            (Winner::BlackWin, Player::Black) | (Winner::WhiteWin, Player::White) => 1.0,
            _ => 0.0,
        }
    }

    #[inline]
    pub fn player(self) -> Player {
        match self {
            Winner::BlackWin => Player::Black,
            Winner::WhiteWin => Player::White,
        }
    }
}

/// A move: points 0..=80 row-major (a1 = 0, j9 = 80), 81 = pass.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Move(u8);

pub const PASS: Move = Move(81);

impl Move {
    pub fn point(p: u8) -> Move {
        debug_assert!(p < POINTS as u8);
        Move(p)
    }

    pub fn from_row_col(row: u8, col: u8) -> Move {
        debug_assert!(row < SIZE as u8 && col < SIZE as u8);
        Move(row * SIZE as u8 + col)
    }

    #[inline]
    pub fn is_pass(self) -> bool {
        self.0 == 81
    }

    /// Raw encoding: 0..=80 for points, 81 for pass.
    #[inline]
    pub fn index(self) -> u8 {
        self.0
    }

    #[inline]
    pub(crate) fn point_index(self) -> Option<u8> {
        (!self.is_pass()).then_some(self.0)
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_pass() {
            return write!(f, "pass");
        }
        // Column letters skip 'i' by Go convention.
        const COLS: [char; 9] = ['a', 'b', 'c', 'd', 'e', 'f', 'g', 'h', 'j'];
        let row = self.0 / SIZE as u8;
        let col = self.0 % SIZE as u8;
        write!(f, "{}{}", COLS[col as usize], row + 1)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GameError {
    #[error("illegal move {mv} for {player:?}: {reason}")]
    IllegalMove {
        mv: Move,
        player: Player,
        reason: &'static str,
    },
    #[error("operation requires a terminal state")]
    NotTerminal,
    #[error("cannot play on a terminal state")]
    AlreadyTerminal,
    #[error("bad position diagram: {0}")]
    BadDiagram(&'static str),
}

/// Abstract game position. Implementations are value-like: cheap to clone,
/// never shared mutably; playouts and searches work on independent copies.
pub trait GameState: Clone + Send {
    fn to_move(&self) -> Player;
    fn move_count(&self) -> u32;
    /// All legal moves in deterministic (index) order.
    fn legal_moves(&self) -> Vec<Move>;
    fn is_legal(&self, mv: Move) -> bool;
    /// Plays `mv`; an illegal move is an error, never silent corruption.
    fn apply(&mut self, mv: Move) -> Result<(), GameError>;
    fn is_terminal(&self) -> bool;
    /// Winner of a terminal state.
    fn result(&self) -> Result<Winner, GameError>;
    /// Plays uniformly random moves to termination and scores. Go excludes
    /// moves filling the mover's own single-point true eyes and passes only
    /// when nothing else is playable; a hard cap of 300 total game moves
    /// scores the position as it stands.
    fn random_playout(&self, rng: &mut PlayoutRng) -> Winner;
}

/// Free-function form of the playout, for callers generic over the game.
pub fn random_playout<G: GameState>(state: &G, rng: &mut PlayoutRng) -> Winner {
    state.random_playout(rng)
}
