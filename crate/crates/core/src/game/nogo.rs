//! 9x9 NoGo: the misere Go variant where a move may neither capture nor
//! suicide and there is no pass. The first player with no legal move loses.
//!
//! Stones only ever get added, so a game lasts at most 81 moves and the
//! stone count always equals the move count.

use std::fmt;

use rand::Rng;

use super::board::{other, Board, EMPTY, POINTS};
use super::go::parse_diagram;
use super::{GameError, GameState, Move, Player, Winner};
use crate::rng::PlayoutRng;

#[derive(Clone, Copy, Debug)]
pub struct NoGo9State {
    board: Board,
    to_move: Player,
    move_count: u16,
}

impl Default for NoGo9State {
    fn default() -> Self {
        Self::new()
    }
}

impl NoGo9State {
    pub fn new() -> Self {
        NoGo9State {
            board: Board::new(),
            to_move: Player::Black,
            move_count: 0,
        }
    }

    /// Parses the same diagram format as Go. The move count starts at the
    /// stone count.
    pub fn from_diagram(diagram: &str, to_move: Player) -> Result<Self, GameError> {
        let board = parse_diagram(diagram)?;
        let stones = board.stone_count();
        Ok(NoGo9State {
            board,
            to_move,
            move_count: stones as u16,
        })
    }

    pub fn position_hash(&self) -> u64 {
        self.board.hash()
    }

    pub fn board(&self) -> &Board {
        &self.board
    }

    /// Legal iff the placement neither captures any opposing group nor
    /// leaves its own group without a liberty.
    fn point_is_legal(&self, p: u8) -> bool {
        if self.board.cell(p) != EMPTY {
            return false;
        }
        let own = self.to_move.stone();
        let opp = other(own);
        let mut keeps_liberty = false;
        for &n in super::board::neighbors(p) {
            let c = self.board.cell(n);
            if c == EMPTY {
                keeps_liberty = true;
            } else if c == opp {
                if !self.board.group_has_liberty_excluding(n, p) {
                    return false; // would capture
                }
            } else if !keeps_liberty && self.board.group_has_liberty_excluding(n, p) {
                keeps_liberty = true;
            }
        }
        keeps_liberty
    }

    fn apply_point_unchecked(&mut self, p: u8) {
        self.board.place(p, self.to_move.stone());
        self.move_count += 1;
        self.to_move = self.to_move.opponent();
    }

    /// Uniformly random legal move, or None when the side to move has none
    /// (which is exactly the terminal condition).
    pub fn sample_playout_move(&mut self, rng: &mut PlayoutRng) -> Option<Move> {
        let len = self.board.empty_count();
        for i in 0..len {
            let j = i + rng.random_range(0..len - i);
            self.board.swap_empties(i, j);
            let p = self.board.empties()[i];
            if self.point_is_legal(p) {
                return Some(Move::point(p));
            }
        }
        None
    }
}

impl GameState for NoGo9State {
    fn to_move(&self) -> Player {
        self.to_move
    }

    fn move_count(&self) -> u32 {
        self.move_count as u32
    }

    fn legal_moves(&self) -> Vec<Move> {
        (0..POINTS as u8)
            .filter(|&p| self.point_is_legal(p))
            .map(Move::point)
            .collect()
    }

    fn is_legal(&self, mv: Move) -> bool {
        match mv.point_index() {
            None => false, // no pass in NoGo
            Some(p) => self.point_is_legal(p),
        }
    }

    fn apply(&mut self, mv: Move) -> Result<(), GameError> {
        let Some(p) = mv.point_index() else {
            return Err(GameError::IllegalMove {
                mv,
                player: self.to_move,
                reason: "NoGo has no pass",
            });
        };
        if !self.point_is_legal(p) {
            let reason = if self.board.cell(p) != EMPTY {
                "point occupied"
            } else {
                "placement would capture or suicide"
            };
            return Err(GameError::IllegalMove {
                mv,
                player: self.to_move,
                reason,
            });
        }
        self.apply_point_unchecked(p);
        Ok(())
    }

    fn is_terminal(&self) -> bool {
        !self
            .board
            .empties()
            .iter()
            .any(|&p| self.point_is_legal(p))
    }

    fn result(&self) -> Result<Winner, GameError> {
        if !self.is_terminal() {
            return Err(GameError::NotTerminal);
        }
        // The side to move has no legal move and loses.
        Ok(match self.to_move {
            Player::Black => Winner::WhiteWin,
            Player::White => Winner::BlackWin,
        })
    }

    fn random_playout(&self, rng: &mut PlayoutRng) -> Winner {
        let mut s = *self;
        loop {
            match s.sample_playout_move(rng) {
                Some(mv) => s.apply_point_unchecked(mv.point_index().unwrap()),
                None => {
                    return match s.to_move {
                        Player::Black => Winner::WhiteWin,
                        Player::White => Winner::BlackWin,
                    }
                }
            }
        }
    }
}

impl fmt::Display for NoGo9State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::go::write_diagram(&self.board, f)
    }
}
