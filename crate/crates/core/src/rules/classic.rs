use std::collections::BTreeMap;

use super::conflict::{ConflictReport, PartialConflict};
use super::{canonical_order, conjunctive_masses, validate, walk, Accumulator, DENOMINATOR_EPS};
use crate::algebra::{Frame, MassFunction, Subset, SUM_TOLERANCE};
use crate::error::{Error, Result};
use crate::sum::{self, CompensatedSum};

/// Unnormalized conjunctive rule. The result is open-world; its mass on ∅ is
/// the total conflict, itemized in the returned report.
///
/// Open-world sources are accepted, so the rule can be applied to its own
/// output.
pub fn conjunctive(sources: &[MassFunction]) -> Result<(MassFunction, ConflictReport)> {
    let frame = validate(sources, false)?;
    let order = canonical_order(sources);
    let mut acc = Accumulator::default();
    let mut conflict = CompensatedSum::new();
    let mut partials = Vec::new();
    walk(sources, &order, false, |t| {
        if t.intersection.is_empty() {
            conflict.add(t.product);
            let mut focals = vec![Subset::EMPTY; t.focals.len()];
            for (k, &i) in order.iter().enumerate() {
                focals[i] = t.focals[k];
            }
            partials.push(PartialConflict {
                focals,
                mass: t.product,
            });
        } else {
            acc.add(t.intersection, t.product);
        }
    });
    let total = conflict.value();
    let mut map = acc.into_map();
    if total > 0.0 {
        map.insert(Subset::EMPTY, total);
    }
    Ok((
        MassFunction::from_map(&frame, map, true),
        ConflictReport::new(frame, total, partials),
    ))
}

/// Dempster's rule: the conjunctive result renormalized by 1 − m(∅).
pub fn dempster(sources: &[MassFunction]) -> Result<MassFunction> {
    let frame = validate(sources, false)?;
    let mut map = conjunctive_masses(sources, &canonical_order(sources)).into_map();
    let conflict = map.remove(&Subset::EMPTY).unwrap_or(0.0);
    let norm = 1.0 - conflict;
    if norm <= DENOMINATOR_EPS {
        return Err(Error::TotalConflict);
    }
    for v in map.values_mut() {
        *v /= norm;
    }
    Ok(MassFunction::from_map(&frame, map, false))
}

/// Yager's rule: all conflict is transferred to Θ.
pub fn yager(sources: &[MassFunction]) -> Result<MassFunction> {
    let frame = validate(sources, false)?;
    let mut map = conjunctive_masses(sources, &canonical_order(sources)).into_map();
    if let Some(conflict) = map.remove(&Subset::EMPTY) {
        *map.entry(frame.theta()).or_insert(0.0) += conflict;
    }
    Ok(MassFunction::from_map(&frame, map, false))
}

/// Dubois-Prade rule: each partial conflict goes to the union of the focal
/// elements that produced it.
pub fn dubois_prade(sources: &[MassFunction]) -> Result<MassFunction> {
    let frame = validate(sources, true)?;
    let order = canonical_order(sources);
    let mut acc = Accumulator::default();
    walk(sources, &order, false, |t| {
        let target = if t.intersection.is_empty() {
            t.focals.iter().fold(Subset::EMPTY, |u, s| u.union(*s))
        } else {
            t.intersection
        };
        acc.add(target, t.product);
    });
    Ok(MassFunction::from_map(&frame, acc.into_map(), false))
}

/// Weights w(X) used to spread the total conflict, with Σ w = 1 and w(∅) = 0.
#[derive(Clone, Debug, PartialEq)]
pub struct RedistributionWeights {
    frame: Frame,
    weights: BTreeMap<Subset, f64>,
}

impl RedistributionWeights {
    pub fn new<I>(frame: &Frame, weights: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Subset, f64)>,
    {
        let mut map = BTreeMap::new();
        for (subset, w) in weights {
            if !frame.contains(subset) {
                return Err(Error::SubsetOutsideFrame(subset.bits()));
            }
            if !(0.0..=1.0 + SUM_TOLERANCE).contains(&w) {
                return Err(Error::NegativeMass(w));
            }
            if subset.is_empty() && w > 0.0 {
                return Err(Error::WeightOnEmptySet);
            }
            if map.insert(subset, w).is_some() {
                return Err(Error::DuplicateFocal(frame.format_subset(subset)));
            }
        }
        let total = sum::sum(map.values().copied());
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::WeightsNotNormalized(total));
        }
        map.retain(|_, w| *w > 0.0);
        Ok(RedistributionWeights {
            frame: frame.clone(),
            weights: map,
        })
    }

    /// All weight on Θ.
    pub fn total_ignorance(frame: &Frame) -> Self {
        RedistributionWeights {
            frame: frame.clone(),
            weights: BTreeMap::from([(frame.theta(), 1.0)]),
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn weight(&self, subset: Subset) -> f64 {
        self.weights.get(&subset).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Subset, f64)> + '_ {
        self.weights.iter().map(|(s, w)| (*s, *w))
    }
}

/// m(X) = m_Conj(X) + w(X)·m_Conj(∅) for X ≠ ∅, and m(∅) = 0.
pub fn weighted_redistribution(sources: &[MassFunction], weights: &RedistributionWeights) -> Result<MassFunction> {
    let frame = validate(sources, false)?;
    if weights.frame() != &frame {
        return Err(Error::FrameMismatch);
    }
    let mut map = conjunctive_masses(sources, &canonical_order(sources)).into_map();
    let conflict = map.remove(&Subset::EMPTY).unwrap_or(0.0);
    if conflict > 0.0 {
        for (subset, w) in weights.iter() {
            *map.entry(subset).or_insert(0.0) += w * conflict;
        }
    }
    Ok(MassFunction::from_map(&frame, map, false))
}

/// Auto-conflict of order `n`: the mass on ∅ after conjunctively combining
/// `n` copies of `m`. Non-decreasing in `n`.
pub fn auto_conflict(m: &MassFunction, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("auto-conflict order must be at least 1".into()));
    }
    validate(std::slice::from_ref(m), true)?;
    let mut acc = m.clone();
    for _ in 1..n {
        let pair = [acc, m.clone()];
        let map = conjunctive_masses(&pair, &[0, 1]).into_map();
        acc = MassFunction::from_map(m.frame(), map, true);
    }
    Ok(acc.conflict())
}
