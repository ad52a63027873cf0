//! Proportional conflict redistribution.
//!
//! Each conflicting focal tuple (empty intersection) hands its product mass
//! back to the focal elements that formed it. The variants differ only in how
//! the share of each contributor is weighted:
//!
//! * PCR5 groups the sources by the focal element they committed to and
//!   weights each distinct element by the product of its sources' masses.
//! * PCR6 weights every source by its own mass, so an element named by two
//!   sources receives two shares.
//! * The `f` and `g` generalizations replace the source mass by a shaping
//!   function in the numerator and, respectively, the denominator.

use super::{canonical_order, validate, walk, Accumulator, ShapingFunction, Tuple, DENOMINATOR_EPS};
use crate::algebra::{MassFunction, Subset};
use crate::error::{Error, Result};
use crate::sum::CompensatedSum;

fn require_sources(sources: &[MassFunction], needed: usize) -> Result<()> {
    if sources.is_empty() {
        return Err(Error::EmptySourceList);
    }
    if sources.len() < needed {
        return Err(Error::TooFewSources {
            needed,
            got: sources.len(),
        });
    }
    Ok(())
}

/// Runs the conjunctive walk and lets `redistribute` place the mass of every
/// conflicting tuple.
fn redistribute_conflicts<F>(sources: &[MassFunction], mut redistribute: F) -> Result<MassFunction>
where
    F: FnMut(&Tuple<'_>, &mut Accumulator),
{
    require_sources(sources, 2)?;
    let frame = validate(sources, true)?;
    let order = canonical_order(sources);
    let mut acc = Accumulator::default();
    walk(sources, &order, false, |t| {
        if t.intersection.is_empty() {
            redistribute(t, &mut acc);
        } else {
            acc.add(t.intersection, t.product);
        }
    });
    Ok(MassFunction::from_map(&frame, acc.into_map(), false))
}

/// Two-source PCR5: for X ∩ Y = ∅, X receives m1(X)²m2(Y)/(m1(X)+m2(Y)) and
/// Y receives m2(Y)²m1(X)/(m2(Y)+m1(X)).
pub fn pcr5_two(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    let sources = [m1.clone(), m2.clone()];
    let frame = validate(&sources, true)?;
    let order = canonical_order(&sources);
    let (a, b) = (&sources[order[0]], &sources[order[1]]);
    let mut acc = Accumulator::default();
    for &(x, mx) in a.focal_elements() {
        for &(y, my) in b.focal_elements() {
            let inter = x.intersect(y);
            if !inter.is_empty() {
                acc.add(inter, mx * my);
                continue;
            }
            let denom = mx + my;
            if denom < DENOMINATOR_EPS {
                continue;
            }
            acc.add(x, mx * mx * my / denom);
            acc.add(y, my * my * mx / denom);
        }
    }
    Ok(MassFunction::from_map(&frame, acc.into_map(), false))
}

/// M-source PCR5. Sources naming the same focal element share one
/// proportion slot whose weight is the product of their masses.
pub fn pcr5_m(sources: &[MassFunction]) -> Result<MassFunction> {
    let mut groups: Vec<(Subset, f64)> = Vec::with_capacity(sources.len());
    redistribute_conflicts(sources, |t, acc| {
        groups.clear();
        for (&s, &m) in t.focals.iter().zip(t.masses) {
            match groups.iter_mut().find(|(g, _)| *g == s) {
                Some((_, w)) => *w *= m,
                None => groups.push((s, m)),
            }
        }
        let denom: f64 = groups.iter().map(|(_, w)| w).sum();
        if denom < DENOMINATOR_EPS {
            return;
        }
        for &(s, w) in &groups {
            acc.add(s, t.product * w / denom);
        }
    })
}

/// PCR5 dispatch: the closed two-source form for M = 2, the grouped form
/// otherwise.
pub fn pcr5(sources: &[MassFunction]) -> Result<MassFunction> {
    match sources {
        [m1, m2] => pcr5_two(m1, m2),
        _ => pcr5_m(sources),
    }
}

/// PCR6: every source of a conflicting tuple gets back a share of the
/// product proportional to its own mass, on the focal element it named.
pub fn pcr6(sources: &[MassFunction]) -> Result<MassFunction> {
    redistribute_conflicts(sources, |t, acc| {
        let denom: f64 = t.masses.iter().sum();
        if denom < DENOMINATOR_EPS {
            return;
        }
        for (&s, &m) in t.focals.iter().zip(t.masses) {
            acc.add(s, t.product * m / denom);
        }
    })
}

/// PCR6 with shaping function `f`: source i's share is proportional to
/// f(m_i), normalized by Σ_j f(m_j) over the tuple.
pub fn pcr6_f(sources: &[MassFunction], f: &ShapingFunction) -> Result<MassFunction> {
    let mut weights = Vec::with_capacity(sources.len());
    redistribute_conflicts(sources, |t, acc| {
        weights.clear();
        weights.extend(t.masses.iter().map(|&m| f.eval(m)));
        let denom: f64 = weights.iter().sum();
        if denom < DENOMINATOR_EPS {
            return;
        }
        for (&s, &w) in t.focals.iter().zip(&weights) {
            acc.add(s, t.product * w / denom);
        }
    })
}

/// PCR6 with shaping function `g` applied to the summed tuple masses:
/// source i receives product·g(m_i)/g(Σ_j m_j).
///
/// Those raw shares only add up to the tuple's product when g is linear, so
/// the redistributed total is rescaled to the conjunctive conflict. For
/// g(x) = x the scale factor is 1.
pub fn pcr6_g(sources: &[MassFunction], g: &ShapingFunction) -> Result<MassFunction> {
    require_sources(sources, 2)?;
    let frame = validate(sources, true)?;
    let order = canonical_order(sources);
    let mut acc = Accumulator::default();
    let mut shares = Accumulator::default();
    let mut conflict = CompensatedSum::new();
    let mut redistributed = CompensatedSum::new();
    walk(sources, &order, false, |t| {
        if !t.intersection.is_empty() {
            acc.add(t.intersection, t.product);
            return;
        }
        conflict.add(t.product);
        let denom = g.eval(t.masses.iter().sum());
        if denom < DENOMINATOR_EPS {
            return;
        }
        for (&s, &m) in t.focals.iter().zip(t.masses) {
            let share = t.product * g.eval(m) / denom;
            shares.add(s, share);
            redistributed.add(share);
        }
    });
    let mut map = acc.into_map();
    let redistributed = redistributed.value();
    if redistributed > 0.0 {
        let scale = conflict.value() / redistributed;
        for (s, share) in shares.into_map() {
            *map.entry(s).or_insert(0.0) += share * scale;
        }
    }
    Ok(MassFunction::from_map(&frame, map, false))
}
