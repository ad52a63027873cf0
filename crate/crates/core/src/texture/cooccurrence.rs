use std::fmt;

use serde::{Deserialize, Serialize};

use super::GrayPatch;

/// Pixel offsets at distance one. Angles are measured counter-clockwise from
/// the row direction, so 90° points one row up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "0")]
    Deg0,
    #[serde(rename = "45")]
    Deg45,
    #[serde(rename = "90")]
    Deg90,
    #[serde(rename = "135")]
    Deg135,
}

impl Direction {
    pub const ALL: [Direction; 4] = [Direction::Deg0, Direction::Deg45, Direction::Deg90, Direction::Deg135];

    /// (row, column) step to the paired pixel.
    pub fn offset(self) -> (isize, isize) {
        match self {
            Direction::Deg0 => (0, 1),
            Direction::Deg45 => (-1, 1),
            Direction::Deg90 => (-1, 0),
            Direction::Deg135 => (-1, -1),
        }
    }

    pub fn degrees(self) -> u32 {
        match self {
            Direction::Deg0 => 0,
            Direction::Deg45 => 45,
            Direction::Deg90 => 90,
            Direction::Deg135 => 135,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}°", self.degrees())
    }
}

/// Gray-level transition probabilities C(i, j): the fraction of ordered pixel
/// pairs (p, p + offset) with p at level i and its neighbour at level j.
#[derive(Clone, Debug, PartialEq)]
pub struct CooccurrenceMatrix {
    levels: usize,
    entries: Vec<f64>,
}

impl CooccurrenceMatrix {
    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.levels + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Marginal over rows: P(i) = Σ_j C(i, j).
    pub fn row_marginal(&self) -> Vec<f64> {
        self.entries.chunks(self.levels).map(|r| r.iter().sum()).collect()
    }

    /// Marginal over columns: P(j) = Σ_i C(i, j).
    pub fn column_marginal(&self) -> Vec<f64> {
        (0..self.levels)
            .map(|j| (0..self.levels).map(|i| self.get(i, j)).sum())
            .collect()
    }

    /// (mean, standard deviation) of the row index.
    pub fn row_moments(&self) -> (f64, f64) {
        moments(&self.row_marginal())
    }

    /// (mean, standard deviation) of the column index.
    pub fn column_moments(&self) -> (f64, f64) {
        moments(&self.column_marginal())
    }
}

fn moments(marginal: &[f64]) -> (f64, f64) {
    let mean: f64 = marginal.iter().enumerate().map(|(i, p)| i as f64 * p).sum();
    let var: f64 = marginal
        .iter()
        .enumerate()
        .map(|(i, p)| (i as f64 - mean).powi(2) * p)
        .sum();
    (mean, var.max(0.0).sqrt())
}

pub fn cooccurrence(patch: &GrayPatch, direction: Direction) -> CooccurrenceMatrix {
    let levels = patch.levels();
    let (dr, dc) = direction.offset();
    let mut counts = vec![0u64; levels * levels];
    let mut pairs = 0u64;
    for r in 0..patch.height() {
        let Some(r2) = r.checked_add_signed(dr).filter(|&v| v < patch.height()) else {
            continue;
        };
        for c in 0..patch.width() {
            let Some(c2) = c.checked_add_signed(dc).filter(|&v| v < patch.width()) else {
                continue;
            };
            let i = patch.get(r, c) as usize;
            let j = patch.get(r2, c2) as usize;
            counts[i * levels + j] += 1;
            pairs += 1;
        }
    }
    let entries = counts.iter().map(|&n| n as f64 / pairs as f64).collect();
    CooccurrenceMatrix { levels, entries }
}
