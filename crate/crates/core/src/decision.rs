//! Decision on singletons by maximum of credibility, plausibility or
//! pignistic probability.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{MassFunction, Subset, TOTAL_CONFLICT_EPS};
use crate::error::{Error, Result};

/// Scores within this distance of the maximum are reported as ties.
pub const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Criterion {
    #[serde(rename = "bel")]
    Bel,
    #[serde(rename = "pl")]
    Pl,
    #[serde(rename = "betP")]
    BetP,
}

impl Criterion {
    pub const ALL: [Criterion; 3] = [Criterion::Bel, Criterion::Pl, Criterion::BetP];

    pub fn id(self) -> &'static str {
        match self {
            Criterion::Bel => "bel",
            Criterion::Pl => "pl",
            Criterion::BetP => "betP",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Criterion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bel" => Ok(Criterion::Bel),
            "pl" => Ok(Criterion::Pl),
            "betP" | "betp" => Ok(Criterion::BetP),
            _ => Err(Error::UnknownCriterion(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecisionResult {
    pub criterion: Criterion,
    /// Index of the chosen hypothesis; the lowest index among ties.
    pub winner: usize,
    pub score: f64,
    /// Every hypothesis whose score is within [`TIE_TOLERANCE`] of the best.
    pub ties: Vec<usize>,
}

impl DecisionResult {
    pub fn is_tie(&self) -> bool {
        self.ties.len() > 1
    }
}

/// Criterion value on every singleton, in frame order.
pub fn singleton_scores(m: &MassFunction, criterion: Criterion) -> Result<Vec<f64>> {
    let n = m.frame().len();
    match criterion {
        Criterion::Bel => Ok((0..n).map(|i| m.bel(Subset::singleton(i))).collect()),
        Criterion::Pl => Ok((0..n).map(|i| m.pl(Subset::singleton(i))).collect()),
        Criterion::BetP => m.betp_singletons(),
    }
}

pub fn decide(m: &MassFunction, criterion: Criterion) -> Result<DecisionResult> {
    if 1.0 - m.conflict() <= TOTAL_CONFLICT_EPS {
        return Err(Error::TotalConflict);
    }
    let scores = singleton_scores(m, criterion)?;
    let best = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let ties: Vec<usize> = scores
        .iter()
        .enumerate()
        .filter(|(_, s)| best - **s <= TIE_TOLERANCE)
        .map(|(i, _)| i)
        .collect();
    let winner = ties[0];
    Ok(DecisionResult {
        criterion,
        winner,
        score: scores[winner],
        ties,
    })
}
