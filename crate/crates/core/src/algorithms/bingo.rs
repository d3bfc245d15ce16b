//! The bingo-card round robin for K = 3 scenarios and unit jobs.
//!
//! Each card has m rows (machines) and 3 columns. Column k holds two
//! triangle placeholders per row — one for jobs exactly in scenario k, one
//! for jobs exactly in the other two scenarios — and a square occupying the
//! whole cell for jobs in all three scenarios. Column k's round robin
//! starts in row 1, ⌈m/3⌉+1, ⌈2m/3⌉+1 respectively and counts downward
//! with 1-based wraparound. Triangles fill forward from the start row;
//! squares fill backward from the row just before it, ties toward the
//! largest column index. A job that fits no placeholder opens a new card.

use crate::instance::Reveal;
use crate::state::AssignmentState;
use crate::weight::Weight;

use super::{AlgoError, OnlineAlgorithm};

/// Occupancy of one cell (row × column) of a card.
#[derive(Clone, Default)]
struct Cell {
    /// Triangle for the column's single-scenario type {k}.
    single: bool,
    /// Triangle for the complementary double-scenario type.
    double: bool,
    /// Whole-cell square for triple-scenario jobs.
    square: bool,
}

impl Cell {
    fn empty(&self) -> bool {
        !self.single && !self.double && !self.square
    }

    /// Scenarios represented in this cell, as a bitmask over {0,1,2},
    /// given the column index.
    fn scenario_mask(&self, col: usize) -> u8 {
        let mut mask = 0u8;
        if self.single || self.square {
            mask |= 1 << col;
        }
        if self.double || self.square {
            mask |= 0b111 & !(1 << col);
        }
        mask
    }
}

#[derive(Clone)]
struct Card {
    m: usize,
    cells: Vec<[Cell; 3]>,
}

impl Card {
    fn new(m: usize) -> Self {
        Card { m, cells: vec![Default::default(); m] }
    }

    /// Row of counting position `p` (0-based) in column `col`.
    fn row_at(&self, col: usize, p: usize) -> usize {
        (start_row(self.m, col) + p) % self.m
    }

    fn triangle_vacant(&self, row: usize, col: usize, single: bool) -> bool {
        let cell = &self.cells[row][col];
        if cell.square {
            return false;
        }
        if single {
            !cell.single
        } else {
            !cell.double
        }
    }

    /// First vacant triangle of the given type in counting order.
    fn first_triangle(&self, col: usize, single: bool) -> Option<usize> {
        (0..self.m).find(|&p| self.triangle_vacant(self.row_at(col, p), col, single))
    }

    /// Vacant square with the largest counting position, ties toward the
    /// largest column.
    fn best_square(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for col in 0..3 {
            for p in (0..self.m).rev() {
                if self.cells[self.row_at(col, p)][col].empty() {
                    match best {
                        Some((bp, bc)) if (bp, bc) >= (p, col) => {}
                        _ => best = Some((p, col)),
                    }
                    break;
                }
            }
        }
        best
    }

    fn column_nonempty(&self, col: usize) -> bool {
        self.cells.iter().any(|row| !row[col].empty())
    }

    /// A column is bingo when some scenario is represented in every one of
    /// its cells.
    fn column_bingo(&self, col: usize) -> bool {
        let mut common = 0b111u8;
        for row in &self.cells {
            common &= row[col].scenario_mask(col);
        }
        common != 0
    }
}

fn start_row(m: usize, col: usize) -> usize {
    match col {
        0 => 0,
        1 => m.div_ceil(3) % m,
        _ => (2 * m).div_ceil(3) % m,
    }
}

/// Structural audit outcome over all cards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BingoAudit {
    /// At most one non-empty, non-bingo copy of each column exists.
    pub single_open_copy_per_column: bool,
    pub cards: usize,
}

pub struct Bingo {
    cards: Vec<Card>,
}

impl Bingo {
    pub fn new() -> Self {
        Bingo { cards: Vec::new() }
    }

    pub fn audit(&self) -> BingoAudit {
        let mut ok = true;
        for col in 0..3 {
            let open = self
                .cards
                .iter()
                .filter(|c| c.column_nonempty(col) && !c.column_bingo(col))
                .count();
            if open > 1 {
                ok = false;
            }
        }
        BingoAudit { single_open_copy_per_column: ok, cards: self.cards.len() }
    }

    fn place_triangle(&mut self, m: usize, col: usize, single: bool) -> usize {
        for card in &mut self.cards {
            if let Some(p) = card.first_triangle(col, single) {
                let row = card.row_at(col, p);
                let cell = &mut card.cells[row][col];
                if single {
                    cell.single = true;
                } else {
                    cell.double = true;
                }
                return row;
            }
        }
        let mut card = Card::new(m);
        let row = card.row_at(col, 0);
        if single {
            card.cells[row][col].single = true;
        } else {
            card.cells[row][col].double = true;
        }
        self.cards.push(card);
        row
    }

    fn place_square(&mut self, m: usize) -> usize {
        for card in &mut self.cards {
            if let Some((p, col)) = card.best_square() {
                let row = card.row_at(col, p);
                card.cells[row][col].square = true;
                return row;
            }
        }
        let mut card = Card::new(m);
        let (p, col) = (m - 1, 2);
        let row = card.row_at(col, p);
        card.cells[row][col].square = true;
        self.cards.push(card);
        row
    }
}

impl Default for Bingo {
    fn default() -> Self {
        Self::new()
    }
}

impl OnlineAlgorithm for Bingo {
    fn name(&self) -> String {
        "bingo".into()
    }

    fn assign(&mut self, state: &AssignmentState, reveal: &Reveal) -> Result<usize, AlgoError> {
        if state.k() > 3 {
            return Err(AlgoError::Configuration {
                algorithm: self.name(),
                reason: format!("requires K = 3, got K = {}", state.k()),
            });
        }
        if reveal.p != Weight::one() {
            return Err(AlgoError::UnsupportedInstance {
                algorithm: self.name(),
                reason: format!("requires unit weights, got p = {}", reveal.p),
            });
        }
        let m = state.m();
        match reveal.scenarios.len() {
            // A job in no scenario occupies nothing.
            0 => Ok(0),
            3 => Ok(self.place_square(m)),
            1 => Ok(self.place_triangle(m, reveal.scenarios[0], true)),
            2 => {
                let col = (0..3)
                    .find(|k| !reveal.scenarios.contains(k))
                    .expect("two scenarios leave one column");
                Ok(self.place_triangle(m, col, false))
            }
            _ => unreachable!("scenario sets are subsets of {{1,2,3}}"),
        }
    }
}
