//! Belief functions on real intervals, discretized on a fixed support grid.
//!
//! Focal elements are the closed intervals [x_i, x_j] with i ≤ j between grid
//! points, so every intersection of focal elements is again grid-aligned and
//! the combination integrals reduce to exact sums over interval pairs.
//! Intervals that touch at one endpoint intersect in the point [x_k, x_k].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::SUM_TOLERANCE;
use crate::error::{Error, Result};
use crate::sum::{self, CompensatedSum};

pub const DEFAULT_GRID_CELLS: usize = 128;

/// `cells + 1` evenly spaced points from `lo` to `hi`.
pub fn uniform_support(lo: f64, hi: f64, cells: usize) -> Result<Vec<f64>> {
    if cells == 0 || lo >= hi || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidGrid(format!(
            "need lo < hi and at least one cell, got [{lo}, {hi}] with {cells}"
        )));
    }
    let step = (hi - lo) / cells as f64;
    let mut support: Vec<f64> = (0..cells).map(|k| lo + k as f64 * step).collect();
    support.push(hi);
    Ok(support)
}

/// Masses on grid-aligned intervals plus a mass on ∅.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GridRepr", into = "GridRepr")]
pub struct IntervalMassGrid {
    support: Vec<f64>,
    masses: BTreeMap<(usize, usize), f64>,
    conflict: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridRepr {
    support: Vec<f64>,
    masses: Vec<IntervalEntry>,
    #[serde(default)]
    conflict: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IntervalEntry {
    i: usize,
    j: usize,
    w: f64,
}

impl TryFrom<GridRepr> for IntervalMassGrid {
    type Error = Error;

    fn try_from(repr: GridRepr) -> Result<Self> {
        IntervalMassGrid::new(
            repr.support,
            repr.masses.into_iter().map(|e| (e.i, e.j, e.w)),
            repr.conflict,
        )
    }
}

impl From<IntervalMassGrid> for GridRepr {
    fn from(grid: IntervalMassGrid) -> Self {
        GridRepr {
            support: grid.support,
            masses: grid
                .masses
                .into_iter()
                .map(|((i, j), w)| IntervalEntry { i, j, w })
                .collect(),
            conflict: grid.conflict,
        }
    }
}

impl IntervalMassGrid {
    /// Validates the support (finite, strictly increasing), the interval
    /// indices and the total mass.
    pub fn new<I>(support: Vec<f64>, masses: I, conflict: f64) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        if support.is_empty() {
            return Err(Error::InvalidGrid("support is empty".into()));
        }
        if support.iter().any(|x| !x.is_finite()) || support.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGrid(
                "support must be finite and strictly increasing".into(),
            ));
        }
        if conflict.is_nan() || conflict < 0.0 {
            return Err(Error::NegativeMass(conflict));
        }
        let mut map = BTreeMap::new();
        for (i, j, w) in masses {
            if i > j || j >= support.len() {
                return Err(Error::InvalidGrid(format!(
                    "interval ({i}, {j}) is not a valid index pair on {} points",
                    support.len()
                )));
            }
            if w.is_nan() || w < 0.0 {
                return Err(Error::NegativeMass(w));
            }
            if map.insert((i, j), w).is_some() {
                return Err(Error::InvalidGrid(format!("interval ({i}, {j}) listed twice")));
            }
        }
        map.retain(|_, w| *w > 0.0);
        let grid = IntervalMassGrid {
            support,
            masses: map,
            conflict,
        };
        let total = grid.total();
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::SumNotOne(total));
        }
        Ok(grid)
    }

    /// All mass on the interval [x_i, x_j].
    pub fn certain(support: Vec<f64>, i: usize, j: usize) -> Result<Self> {
        IntervalMassGrid::new(support, [(i, j, 1.0)], 0.0)
    }

    pub fn support(&self) -> &[f64] {
        &self.support
    }

    pub fn mass(&self, i: usize, j: usize) -> f64 {
        self.masses.get(&(i, j)).copied().unwrap_or(0.0)
    }

    pub fn conflict(&self) -> f64 {
        self.conflict
    }

    /// Focal intervals as (i, j, mass), ordered by (i, j).
    pub fn intervals(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.masses.iter().map(|(&(i, j), &w)| (i, j, w))
    }

    /// Σ w + conflict.
    pub fn total(&self) -> f64 {
        sum::sum(self.masses.values().copied().chain([self.conflict]))
    }

    /// The same masses on a support with every cell split at its midpoint.
    pub fn refined(&self) -> IntervalMassGrid {
        let mut support = Vec::with_capacity(2 * self.support.len() - 1);
        for w in self.support.windows(2) {
            support.push(w[0]);
            support.push(0.5 * (w[0] + w[1]));
        }
        support.push(*self.support.last().expect("support is non-empty"));
        IntervalMassGrid {
            support,
            masses: self.masses.iter().map(|(&(i, j), &w)| ((2 * i, 2 * j), w)).collect(),
            conflict: self.conflict,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("grid serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

fn intersect((a, b): (usize, usize), (c, d): (usize, usize)) -> Option<(usize, usize)> {
    let lo = a.max(c);
    let hi = b.min(d);
    (lo <= hi).then_some((lo, hi))
}

fn check_supports(m1: &IntervalMassGrid, m2: &IntervalMassGrid) -> Result<()> {
    if m1.support != m2.support {
        return Err(Error::GridMismatch);
    }
    Ok(())
}

fn collect(support: &[f64], acc: BTreeMap<(usize, usize), CompensatedSum>, conflict: f64) -> IntervalMassGrid {
    IntervalMassGrid {
        support: support.to_vec(),
        masses: acc
            .into_iter()
            .map(|(k, v)| (k, v.value()))
            .filter(|(_, w)| *w > 0.0)
            .collect(),
        conflict,
    }
}

/// Conjunctive combination: each pair of intervals sends its product mass to
/// their intersection, or to ∅ when they are disjoint. Mass already on ∅ in
/// either input stays on ∅.
pub fn continuous_conjunctive(m1: &IntervalMassGrid, m2: &IntervalMassGrid) -> Result<IntervalMassGrid> {
    check_supports(m1, m2)?;
    let mut acc: BTreeMap<(usize, usize), CompensatedSum> = BTreeMap::new();
    let mut conflict = CompensatedSum::new();
    for (&x, &a) in &m1.masses {
        for (&y, &b) in &m2.masses {
            match intersect(x, y) {
                Some(z) => acc.entry(z).or_default().add(a * b),
                None => conflict.add(a * b),
            }
        }
    }
    let rest1 = sum::sum(m1.masses.values().copied());
    let rest2 = sum::sum(m2.masses.values().copied());
    conflict.add(m1.conflict * (rest2 + m2.conflict) + rest1 * m2.conflict);
    Ok(collect(&m1.support, acc, conflict.value()))
}

/// Proportional conflict redistribution for two sources: a disjoint pair
/// with masses a on X and b on Y gives a²b/(a+b) back to X and ab²/(a+b) to Y.
pub fn continuous_pcr(m1: &IntervalMassGrid, m2: &IntervalMassGrid) -> Result<IntervalMassGrid> {
    check_supports(m1, m2)?;
    if m1.conflict > 0.0 || m2.conflict > 0.0 {
        return Err(Error::InvalidArgument(
            "proportional redistribution needs conflict-free inputs".into(),
        ));
    }
    let mut acc: BTreeMap<(usize, usize), CompensatedSum> = BTreeMap::new();
    for (&x, &a) in &m1.masses {
        for (&y, &b) in &m2.masses {
            match intersect(x, y) {
                Some(z) => acc.entry(z).or_default().add(a * b),
                None => {
                    let share = a * b / (a + b);
                    acc.entry(x).or_default().add(a * share);
                    acc.entry(y).or_default().add(b * share);
                }
            }
        }
    }
    Ok(collect(&m1.support, acc, 0.0))
}

/// Conflict of `m` combined conjunctively with itself `n` times.
pub fn continuous_auto_conflict(m: &IntervalMassGrid, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("auto-conflict order must be at least 1".into()));
    }
    let mut acc = m.clone();
    for _ in 1..n {
        acc = continuous_conjunctive(&acc, m)?;
    }
    Ok(acc.conflict)
}
