//! 9x9 Go: area scoring, suicide illegal, simple ko, komi 7.5.
//!
//! The game ends on two consecutive passes or at a 300-move cap, scored as
//! the position stands. Area scoring counts stones plus empty regions
//! bordering a single color; komi 7.5 means no draws. Superko is not
//! tracked; the move cap bounds pathological cycles.

use std::fmt;

use rand::Rng;

use super::board::{other, Board, EMPTY, INVALID_POINT, POINTS, SIZE};
use super::{GameError, GameState, Move, Player, Winner, PASS};
use crate::rng::PlayoutRng;

/// Compensation added to White's area.
pub const GO_KOMI: f64 = 7.5;

/// Hard cap on total game moves, for engine games and playouts alike.
pub const MOVE_CAP: u32 = 300;

#[derive(Clone, Copy, Debug)]
pub struct Go9State {
    board: Board,
    to_move: Player,
    /// Simple-ko point; INVALID_POINT when no ko is active.
    ko: u8,
    pass_count: u8,
    pub(crate) move_count: u16,
}

impl Default for Go9State {
    fn default() -> Self {
        Self::new()
    }
}

impl Go9State {
    pub fn new() -> Self {
        Go9State {
            board: Board::new(),
            to_move: Player::Black,
            ko: INVALID_POINT,
            pass_count: 0,
            move_count: 0,
        }
    }

    /// Parses a 9-line diagram, top row (row 9) first: `X` black, `O`
    /// white, `.` empty; spaces ignored. Stones must all have liberties.
    /// Move count starts at the stone count; no ko is active.
    pub fn from_diagram(diagram: &str, to_move: Player) -> Result<Self, GameError> {
        let board = parse_diagram(diagram)?;
        let stones = board.stone_count();
        Ok(Go9State {
            board,
            to_move,
            ko: INVALID_POINT,
            pass_count: 0,
            move_count: stones as u16,
        })
    }

    /// Zobrist hash of the stones (to-move not included).
    pub fn position_hash(&self) -> u64 {
        self.board.hash()
    }

    pub fn board(&self) -> &Board {
        &self.board
    }

    /// Active simple-ko point, if any.
    pub fn ko_point(&self) -> Option<Move> {
        (self.ko != INVALID_POINT).then(|| Move::point(self.ko))
    }

    /// Area partition (black, white, neutral).
    pub fn area(&self) -> (u32, u32, u32) {
        self.board.area_score()
    }

    /// Verdict if the position is scored as it stands: Black wins iff
    /// `black_area - white_area > komi`.
    pub fn score_verdict(&self) -> Winner {
        let (black, white, _) = self.board.area_score();
        if black as f64 - white as f64 > GO_KOMI {
            Winner::BlackWin
        } else {
            Winner::WhiteWin
        }
    }

    fn point_legality(&self, p: u8) -> Result<(), &'static str> {
        if self.board.cell(p) != EMPTY {
            return Err("point occupied");
        }
        if p == self.ko {
            return Err("simple ko retake");
        }
        let own = self.to_move.stone();
        let opp = other(own);
        for &n in super::board::neighbors(p) {
            if self.board.cell(n) == EMPTY {
                return Ok(());
            }
        }
        for &n in super::board::neighbors(p) {
            let c = self.board.cell(n);
            if c == opp && !self.board.group_has_liberty_excluding(n, p) {
                return Ok(()); // the placement captures
            }
            if c == own && self.board.group_has_liberty_excluding(n, p) {
                return Ok(()); // joins a group that keeps a liberty
            }
        }
        Err("suicide")
    }

    fn apply_point_unchecked(&mut self, p: u8) {
        let own = self.to_move.stone();
        let opp = other(own);
        self.board.place(p, own);
        let mut captured = 0u32;
        let mut last_captured = INVALID_POINT;
        for &n in super::board::neighbors(p) {
            if self.board.cell(n) == opp && !self.board.group_has_liberty(n) {
                let (count, last) = self.board.remove_group(n);
                captured += count;
                last_captured = last;
            }
        }
        debug_assert!(
            self.board.group_has_liberty(p),
            "suicide slipped through legality"
        );
        self.ko = INVALID_POINT;
        if captured == 1 {
            // Simple ko: the capturing stone stands alone with exactly one
            // liberty (the point just vacated).
            let mut own_neighbor = false;
            let mut empty_neighbors = 0u32;
            for &n in super::board::neighbors(p) {
                let c = self.board.cell(n);
                if c == own {
                    own_neighbor = true;
                } else if c == EMPTY {
                    empty_neighbors += 1;
                }
            }
            if !own_neighbor && empty_neighbors == 1 {
                self.ko = last_captured;
            }
        }
        self.pass_count = 0;
        self.move_count += 1;
        self.to_move = self.to_move.opponent();
    }

    fn apply_pass(&mut self) {
        self.ko = INVALID_POINT;
        self.pass_count += 1;
        self.move_count += 1;
        self.to_move = self.to_move.opponent();
    }

    /// Uniformly random playout move: a legal point that is not a true eye
    /// of the mover's color, or pass when no such point exists.
    pub fn sample_playout_move(&mut self, rng: &mut PlayoutRng) -> Move {
        let own = self.to_move.stone();
        let len = self.board.empty_count();
        for i in 0..len {
            let j = i + rng.random_range(0..len - i);
            self.board.swap_empties(i, j);
            let p = self.board.empties()[i];
            if self.board.is_true_eye(p, own) {
                continue;
            }
            if self.point_legality(p).is_ok() {
                return Move::point(p);
            }
        }
        PASS
    }
}

impl GameState for Go9State {
    fn to_move(&self) -> Player {
        self.to_move
    }

    fn move_count(&self) -> u32 {
        self.move_count as u32
    }

    fn legal_moves(&self) -> Vec<Move> {
        let mut moves = Vec::with_capacity(self.board.empty_count() + 1);
        for p in 0..POINTS as u8 {
            if self.point_legality(p).is_ok() {
                moves.push(Move::point(p));
            }
        }
        moves.push(PASS);
        moves
    }

    fn is_legal(&self, mv: Move) -> bool {
        match mv.point_index() {
            None => true,
            Some(p) => self.point_legality(p).is_ok(),
        }
    }

    fn apply(&mut self, mv: Move) -> Result<(), GameError> {
        if self.is_terminal() {
            return Err(GameError::AlreadyTerminal);
        }
        match mv.point_index() {
            None => {
                self.apply_pass();
                Ok(())
            }
            Some(p) => match self.point_legality(p) {
                Ok(()) => {
                    self.apply_point_unchecked(p);
                    Ok(())
                }
                Err(reason) => Err(GameError::IllegalMove {
                    mv,
                    player: self.to_move,
                    reason,
                }),
            },
        }
    }

    fn is_terminal(&self) -> bool {
        self.pass_count >= 2 || self.move_count as u32 >= MOVE_CAP
    }

    fn result(&self) -> Result<Winner, GameError> {
        if !self.is_terminal() {
            return Err(GameError::NotTerminal);
        }
        Ok(self.score_verdict())
    }

    fn random_playout(&self, rng: &mut PlayoutRng) -> Winner {
        let mut s = *self;
        loop {
            if s.is_terminal() {
                return s.score_verdict();
            }
            match s.sample_playout_move(rng).point_index() {
                Some(p) => s.apply_point_unchecked(p),
                None => s.apply_pass(),
            }
        }
    }
}

impl fmt::Display for Go9State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_diagram(&self.board, f)
    }
}

pub(super) fn parse_diagram(diagram: &str) -> Result<Board, GameError> {
    let rows: Vec<&str> = diagram
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .collect();
    if rows.len() != SIZE {
        return Err(GameError::BadDiagram("expected 9 rows"));
    }
    let mut board = Board::new();
    for (line_idx, line) in rows.iter().enumerate() {
        let row = SIZE - 1 - line_idx;
        let cells: Vec<char> = line.chars().filter(|c| !c.is_whitespace()).collect();
        if cells.len() != SIZE {
            return Err(GameError::BadDiagram("expected 9 cells per row"));
        }
        for (col, ch) in cells.iter().enumerate() {
            let p = (row * SIZE + col) as u8;
            match ch {
                'X' | 'x' | 'B' | 'b' => board.place(p, super::board::BLACK),
                'O' | 'o' | 'W' | 'w' => board.place(p, super::board::WHITE),
                '.' => {}
                _ => return Err(GameError::BadDiagram("cells must be X, O or .")),
            }
        }
    }
    // Every group must have a liberty; captures are resolved in real games.
    for p in 0..POINTS as u8 {
        if board.cell(p) != EMPTY && !board.group_has_liberty(p) {
            return Err(GameError::BadDiagram("a group has no liberties"));
        }
    }
    Ok(board)
}

pub(super) fn write_diagram(board: &Board, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for row in (0..SIZE).rev() {
        for col in 0..SIZE {
            let p = (row * SIZE + col) as u8;
            let ch = match board.cell(p) {
                super::board::BLACK => 'X',
                super::board::WHITE => 'O',
                _ => '.',
            };
            if col > 0 {
                write!(f, " ")?;
            }
            write!(f, "{ch}")?;
        }
        if row > 0 {
            writeln!(f)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::playout_rng;

    #[test]
    fn empty_board_has_81_point_moves_plus_pass() {
        let state = Go9State::new();
        let moves = state.legal_moves();
        assert_eq!(moves.len(), 82);
        assert_eq!(*moves.last().unwrap(), PASS);
    }

    #[test]
    fn capturing_a_single_stone_removes_it() {
        // White a1 with black b1; black plays a2 and takes the corner stone.
        let mut state = Go9State::from_diagram(
            "\
             . . . . . . . . .\n\
             . . . . . . . . .\n\
             . . . . . . . . .\n\
             . . . . . . . . .\n\
             . . . . . . . . .\n\
             . . . . . . . . .\n\
             . . . . . . . . .\n\
             . . . . . . . . .\n\
             O X . . . . . . .",
            Player::Black,
        )
        .unwrap();
        state.apply(Move::point(9)).unwrap(); // a2
        assert_eq!(state.board.cell(0), EMPTY);
        assert_eq!(state.board.cell(9), super::super::board::BLACK);
        assert_eq!(state.position_hash(), state.board.recompute_hash());
    }

    #[test]
    fn simple_ko_forbids_immediate_recapture() {
        // Black d5/e4/e6 surround e5 (White); White f4/f6/g5 support f5.
        // Black captures at f5; White may not retake at e5 immediately.
        let mut state = Go9State::from_diagram(
            "\
             . . . . . . . . .\n\
             . . . . . . . . .\n\
             . . . . . . . . .\n\
             . . . . X O . . .\n\
             . . . X O . O . .\n\
             . . . . X O . . .\n\
             . . . . . . . . .\n\
             . . . . . . . . .\n\
             . . . . . . . . .",
            Player::Black,
        )
        .unwrap();
        let f5 = Move::point(41);
        let e5 = Move::point(40);
        assert!(state.is_legal(f5));
        state.apply(f5).unwrap();
        assert_eq!(state.board.cell(40), EMPTY, "ko stone captured");
        assert_eq!(state.ko_point(), Some(e5));
        assert!(!state.is_legal(e5), "immediate recapture must be illegal");
        assert!(!state.legal_moves().contains(&e5));
        assert_eq!(
            state.apply(e5),
            Err(GameError::IllegalMove {
                mv: e5,
                player: Player::White,
                reason: "simple ko retake",
            })
        );
        // After any other move the ko lifts.
        state.apply(Move::point(0)).unwrap();
        assert_eq!(state.ko_point(), None);
        let mut later = state;
        later.apply(Move::point(1)).unwrap(); // black elsewhere
        assert!(later.is_legal(e5), "recapture legal once the ko passed");
    }

    #[test]
    fn suicide_is_rejected() {
        // Black b1 + a2; White to move may not fill a1.
        let mut state = Go9State::from_diagram(
            "\
             . . . . . . . . .\n\
             . . . . . . . . .\n\
             . . . . . . . . .\n\
             . . . . . . . . .\n\
             . . . . . . . . .\n\
             . . . . . . . . .\n\
             . . . . . . . . .\n\
             X . . . . . . . .\n\
             . X . . . . . . .",
            Player::White,
        )
        .unwrap();
        let a1 = Move::point(0);
        assert!(!state.is_legal(a1));
        assert_eq!(
            state.apply(a1),
            Err(GameError::IllegalMove {
                mv: a1,
                player: Player::White,
                reason: "suicide",
            })
        );
        // Occupied points report as such.
        assert_eq!(
            state.apply(Move::point(9)),
            Err(GameError::IllegalMove {
                mv: Move::point(9),
                player: Player::White,
                reason: "point occupied",
            })
        );
    }

    #[test]
    fn two_passes_end_the_game() {
        let mut state = Go9State::new();
        state.apply(PASS).unwrap();
        assert!(!state.is_terminal());
        assert_eq!(state.result(), Err(GameError::NotTerminal));
        state.apply(PASS).unwrap();
        assert!(state.is_terminal());
        // Empty board: 0 - 0 < komi, White wins.
        assert_eq!(state.result(), Ok(Winner::WhiteWin));
        assert_eq!(state.apply(Move::point(3)), Err(GameError::AlreadyTerminal));
    }

    #[test]
    fn move_cap_scores_the_position_as_it_stands() {
        let mut state = Go9State::new();
        state.move_count = MOVE_CAP as u16;
        assert!(state.is_terminal());
        assert_eq!(state.result(), Ok(Winner::WhiteWin));
    }

    #[test]
    fn hand_scored_full_board_position() {
        // Black wall e1..e8 bending to d9; White wall f1..f8 plus e9.
        // Black: 9 stones + 35 territory = 44; White: 9 + 28 = 37.
        // 44 - 37 = 7 < komi 7.5, so White wins.
        let state = Go9State::from_diagram(
            "\
             . . . X O . . . .\n\
             . . . . X O . . .\n\
             . . . . X O . . .\n\
             . . . . X O . . .\n\
             . . . . X O . . .\n\
             . . . . X O . . .\n\
             . . . . X O . . .\n\
             . . . . X O . . .\n\
             . . . . X O . . .",
            Player::Black,
        )
        .unwrap();
        let (black, white, neutral) = state.area();
        assert_eq!((black, white, neutral), (44, 37, 0));
        assert_eq!(state.score_verdict(), Winner::WhiteWin);
    }

    #[test]
    fn capture_order_changes_the_hash_but_recompute_always_matches() {
        // White a1 in atari against black b1. Playing a2 and c1 in the two
        // orders captures in one line and not the other.
        let diagram = "\
             . . . . . . . . .\n\
             . . . . . . . . .\n\
             . . . . . . . . .\n\
             . . . . . . . . .\n\
             . . . . . . . . .\n\
             . . . . . . . . .\n\
             . . . . . . . . .\n\
             . . . . . . . . .\n\
             O X . . . . . . .";
        let base = Go9State::from_diagram(diagram, Player::Black).unwrap();
        let mut one = base;
        one.apply(Move::point(9)).unwrap(); // black a2 captures a1
        one.apply(Move::point(2)).unwrap(); // white c1
        let mut two = base;
        two.apply(Move::point(2)).unwrap(); // black c1
        two.apply(Move::point(9)).unwrap(); // white a2 connects a1 instead
        assert_ne!(one.position_hash(), two.position_hash());
        assert_eq!(one.position_hash(), one.board.recompute_hash());
        assert_eq!(two.position_hash(), two.board.recompute_hash());
    }

    #[test]
    fn playouts_are_deterministic_per_seed() {
        let state = Go9State::new();
        for seed in 0..20u64 {
            let a = state.random_playout(&mut playout_rng(seed));
            let b = state.random_playout(&mut playout_rng(seed));
            assert_eq!(a, b);
        }
        let verdicts: Vec<Winner> = (0..50)
            .map(|s| state.random_playout(&mut playout_rng(s)))
            .collect();
        assert!(verdicts.contains(&Winner::BlackWin));
        assert!(verdicts.contains(&Winner::WhiteWin));
    }

    #[test]
    fn diagram_round_trips_through_display() {
        let diagram = "\
             . . . X O . . . .\n\
             . . . . X O . . .\n\
             . . . . X O . . .\n\
             . . . . X O . . .\n\
             . . . . X O . . .\n\
             . . . . X O . . .\n\
             . . . . X O . . .\n\
             . . . . X O . . .\n\
             . . . . X O . . .";
        let state = Go9State::from_diagram(diagram, Player::Black).unwrap();
        let printed = state.to_string();
        let reparsed = Go9State::from_diagram(&printed, Player::Black).unwrap();
        assert_eq!(state.position_hash(), reparsed.position_hash());
        assert_eq!(printed.lines().count(), 9);
    }

    #[test]
    fn dead_group_diagrams_are_rejected() {
        let bad = "\
             . . . . . . . . .\n\
             . . . . . . . . .\n\
             . . . . . . . . .\n\
             . . . . . . . . .\n\
             . . . . . . . . .\n\
             . . . . . . . . .\n\
             . . . . . . . . .\n\
             X . . . . . . . .\n\
             O X . . . . . . .";
        assert!(matches!(
            Go9State::from_diagram(bad, Player::Black),
            Err(GameError::BadDiagram("a group has no liberties"))
        ));
    }
}
