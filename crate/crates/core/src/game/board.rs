//! Shared 9x9 board machinery for the Go and NoGo rule sets.
//!
//! Points are 0..=80 row-major (a1 = 0, b1 = 1, ..., j9 = 80). The board
//! keeps an incremental Zobrist hash of the stones and a swap-remove list of
//! empty points so playouts can probe candidate moves in uniformly random
//! order without scanning the grid. Liberty questions are answered by
//! early-exit flood fills over a `u128` visited mask; on a 9x9 board these
//! touch a handful of points in the common case.

use crate::rng::mix64;

pub const SIZE: usize = 9;
pub const POINTS: usize = 81;

pub const EMPTY: u8 = 0;
pub const BLACK: u8 = 1;
pub const WHITE: u8 = 2;

const INVALID: u8 = 0xFF;

const fn neighbor_tables() -> ([[u8; 4]; POINTS], [u8; POINTS]) {
    let mut nbrs = [[INVALID; 4]; POINTS];
    let mut counts = [0u8; POINTS];
    let mut p = 0;
    while p < POINTS {
        let r = p / SIZE;
        let c = p % SIZE;
        let mut k = 0;
        if r > 0 {
            nbrs[p][k] = (p - SIZE) as u8;
            k += 1;
        }
        if r < SIZE - 1 {
            nbrs[p][k] = (p + SIZE) as u8;
            k += 1;
        }
        if c > 0 {
            nbrs[p][k] = (p - 1) as u8;
            k += 1;
        }
        if c < SIZE - 1 {
            nbrs[p][k] = (p + 1) as u8;
            k += 1;
        }
        counts[p] = k as u8;
        p += 1;
    }
    (nbrs, counts)
}

const fn diagonal_tables() -> ([[u8; 4]; POINTS], [u8; POINTS]) {
    let mut diags = [[INVALID; 4]; POINTS];
    let mut counts = [0u8; POINTS];
    let mut p = 0;
    while p < POINTS {
        let r = p / SIZE;
        let c = p % SIZE;
        let mut k = 0;
        if r > 0 && c > 0 {
            diags[p][k] = (p - SIZE - 1) as u8;
            k += 1;
        }
        if r > 0 && c < SIZE - 1 {
            diags[p][k] = (p - SIZE + 1) as u8;
            k += 1;
        }
        if r < SIZE - 1 && c > 0 {
            diags[p][k] = (p + SIZE - 1) as u8;
            k += 1;
        }
        if r < SIZE - 1 && c < SIZE - 1 {
            diags[p][k] = (p + SIZE + 1) as u8;
            k += 1;
        }
        counts[p] = k as u8;
        p += 1;
    }
    (diags, counts)
}

const NEIGHBOR_TABLES: ([[u8; 4]; POINTS], [u8; POINTS]) = neighbor_tables();
const DIAGONAL_TABLES: ([[u8; 4]; POINTS], [u8; POINTS]) = diagonal_tables();

/// Zobrist keys, generated from a fixed seed so hashes are reproducible
/// across builds and platforms.
const fn zobrist_tables() -> [[u64; POINTS]; 2] {
    let mut keys = [[0u64; POINTS]; 2];
    let mut counter = 0x6F05_9E3D_C96B_ED4Au64;
    let mut color = 0;
    while color < 2 {
        let mut p = 0;
        while p < POINTS {
            counter += 1;
            keys[color][p] = mix64(counter);
            p += 1;
        }
        color += 1;
    }
    keys
}

const ZOBRIST: [[u64; POINTS]; 2] = zobrist_tables();

#[inline]
pub fn neighbors(p: u8) -> &'static [u8] {
    let n = NEIGHBOR_TABLES.1[p as usize] as usize;
    &NEIGHBOR_TABLES.0[p as usize][..n]
}

#[inline]
pub fn diagonals(p: u8) -> &'static [u8] {
    let n = DIAGONAL_TABLES.1[p as usize] as usize;
    &DIAGONAL_TABLES.0[p as usize][..n]
}

#[inline]
pub fn other(color: u8) -> u8 {
    debug_assert!(color == BLACK || color == WHITE);
    BLACK + WHITE - color
}

/// Stone grid with incremental hash and an unordered empty-point list.
#[derive(Clone, Copy, Debug)]
pub struct Board {
    cells: [u8; POINTS],
    /// Unordered list of the empty points; order is probe state, not
    /// position identity.
    empties: [u8; POINTS],
    /// Index of each empty point inside `empties` (INVALID when occupied).
    empty_pos: [u8; POINTS],
    empties_len: u8,
    hash: u64,
}

impl Default for Board {
    fn default() -> Self {
        Self::new()
    }
}

impl Board {
    pub fn new() -> Self {
        let mut empties = [0u8; POINTS];
        let mut empty_pos = [0u8; POINTS];
        for p in 0..POINTS as u8 {
            empties[p as usize] = p;
            empty_pos[p as usize] = p;
        }
        Board {
            cells: [EMPTY; POINTS],
            empties,
            empty_pos,
            empties_len: POINTS as u8,
            hash: 0,
        }
    }

    #[inline]
    pub fn cell(&self, p: u8) -> u8 {
        self.cells[p as usize]
    }

    #[inline]
    pub fn hash(&self) -> u64 {
        self.hash
    }

    #[inline]
    pub fn empty_count(&self) -> usize {
        self.empties_len as usize
    }

    #[inline]
    pub fn stone_count(&self) -> usize {
        POINTS - self.empties_len as usize
    }

    #[inline]
    pub fn empties(&self) -> &[u8] {
        &self.empties[..self.empties_len as usize]
    }

    /// Recomputes the Zobrist hash from the stones alone; the incremental
    /// hash must always match this.
    pub fn recompute_hash(&self) -> u64 {
        let mut h = 0u64;
        for (p, &cell) in self.cells.iter().enumerate() {
            match cell {
                BLACK => h ^= ZOBRIST[0][p],
                WHITE => h ^= ZOBRIST[1][p],
                _ => {}
            }
        }
        h
    }

    pub fn place(&mut self, p: u8, color: u8) {
        debug_assert_eq!(self.cells[p as usize], EMPTY);
        self.cells[p as usize] = color;
        self.hash ^= ZOBRIST[(color - 1) as usize][p as usize];
        let pos = self.empty_pos[p as usize];
        debug_assert_ne!(pos, INVALID);
        self.empties_len -= 1;
        let last = self.empties[self.empties_len as usize];
        self.empties[pos as usize] = last;
        self.empty_pos[last as usize] = pos;
        self.empty_pos[p as usize] = INVALID;
    }

    fn clear(&mut self, p: u8) {
        let color = self.cells[p as usize];
        debug_assert_ne!(color, EMPTY);
        self.cells[p as usize] = EMPTY;
        self.hash ^= ZOBRIST[(color - 1) as usize][p as usize];
        self.empties[self.empties_len as usize] = p;
        self.empty_pos[p as usize] = self.empties_len;
        self.empties_len += 1;
    }

    /// Swaps two slots of the empty list; used by random probing.
    #[inline]
    pub fn swap_empties(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let pa = self.empties[a];
        let pb = self.empties[b];
        self.empties.swap(a, b);
        self.empty_pos[pa as usize] = b as u8;
        self.empty_pos[pb as usize] = a as u8;
    }

    /// True if the group containing `start` has a liberty other than
    /// `excluded` (pass `INVALID_POINT` to count every liberty).
    pub fn group_has_liberty_excluding(&self, start: u8, excluded: u8) -> bool {
        let color = self.cells[start as usize];
        debug_assert_ne!(color, EMPTY);
        let mut visited: u128 = 1 << start;
        let mut stack = [0u8; POINTS];
        stack[0] = start;
        let mut sp = 1usize;
        while sp > 0 {
            sp -= 1;
            let p = stack[sp];
            for &n in neighbors(p) {
                let c = self.cells[n as usize];
                if c == EMPTY {
                    if n != excluded {
                        return true;
                    }
                } else if c == color && visited & (1 << n) == 0 {
                    visited |= 1 << n;
                    stack[sp] = n;
                    sp += 1;
                }
            }
        }
        false
    }

    #[inline]
    pub fn group_has_liberty(&self, start: u8) -> bool {
        self.group_has_liberty_excluding(start, INVALID)
    }

    /// Removes the whole group containing `start`; returns the number of
    /// stones removed and one removed point (the last one cleared).
    pub fn remove_group(&mut self, start: u8) -> (u32, u8) {
        let color = self.cells[start as usize];
        debug_assert_ne!(color, EMPTY);
        let mut visited: u128 = 1 << start;
        let mut stack = [0u8; POINTS];
        stack[0] = start;
        let mut sp = 1usize;
        let mut removed = 0u32;
        let mut last = start;
        while sp > 0 {
            sp -= 1;
            let p = stack[sp];
            for &n in neighbors(p) {
                if self.cells[n as usize] == color && visited & (1 << n) == 0 {
                    visited |= 1 << n;
                    stack[sp] = n;
                    sp += 1;
                }
            }
            self.clear(p);
            removed += 1;
            last = p;
        }
        (removed, last)
    }

    /// Full liberty audit of one group, by set size. Test support; the hot
    /// paths use the early-exit variants above.
    pub fn group_liberties(&self, start: u8) -> u32 {
        let color = self.cells[start as usize];
        debug_assert_ne!(color, EMPTY);
        let mut visited: u128 = 1 << start;
        let mut libs: u128 = 0;
        let mut stack = [0u8; POINTS];
        stack[0] = start;
        let mut sp = 1usize;
        while sp > 0 {
            sp -= 1;
            let p = stack[sp];
            for &n in neighbors(p) {
                let c = self.cells[n as usize];
                if c == EMPTY {
                    libs |= 1 << n;
                } else if c == color && visited & (1 << n) == 0 {
                    visited |= 1 << n;
                    stack[sp] = n;
                    sp += 1;
                }
            }
        }
        libs.count_ones()
    }

    /// Area partition: (black, white, neutral) where a color's area is its
    /// stones plus the empty regions bordering only that color. The three
    /// parts always sum to 81.
    pub fn area_score(&self) -> (u32, u32, u32) {
        let mut black = 0u32;
        let mut white = 0u32;
        let mut neutral = 0u32;
        let mut seen: u128 = 0;
        for p in 0..POINTS as u8 {
            match self.cells[p as usize] {
                BLACK => black += 1,
                WHITE => white += 1,
                _ => {
                    if seen & (1 << p) != 0 {
                        continue;
                    }
                    let mut stack = [0u8; POINTS];
                    stack[0] = p;
                    let mut sp = 1usize;
                    seen |= 1 << p;
                    let mut size = 0u32;
                    let mut touches_black = false;
                    let mut touches_white = false;
                    while sp > 0 {
                        sp -= 1;
                        let q = stack[sp];
                        size += 1;
                        for &n in neighbors(q) {
                            match self.cells[n as usize] {
                                BLACK => touches_black = true,
                                WHITE => touches_white = true,
                                _ => {
                                    if seen & (1 << n) == 0 {
                                        seen |= 1 << n;
                                        stack[sp] = n;
                                        sp += 1;
                                    }
                                }
                            }
                        }
                    }
                    match (touches_black, touches_white) {
                        (true, false) => black += size,
                        (false, true) => white += size,
                        _ => neutral += size,
                    }
                }
            }
        }
        (black, white, neutral)
    }

    /// True single-point eye for `color`: every orthogonal neighbor is
    /// `color`, and the opponent holds at most one diagonal in the center
    /// (none on edges and corners).
    pub fn is_true_eye(&self, p: u8, color: u8) -> bool {
        for &n in neighbors(p) {
            if self.cells[n as usize] != color {
                return false;
            }
        }
        let opp = other(color);
        let diags = diagonals(p);
        let mut bad = 0;
        for &d in diags {
            if self.cells[d as usize] == opp {
                bad += 1;
            }
        }
        if diags.len() == 4 {
            bad <= 1
        } else {
            bad == 0
        }
    }
}

pub const INVALID_POINT: u8 = INVALID;
