//! M-source combination rules.
//!
//! Every rule walks the Cartesian product of the sources' focal-element
//! lists, so the cost is Π |focal_j| rather than (2^n)^M. Sources are visited
//! in a canonical order, which makes each rule exactly symmetric in its inputs.

mod classic;
mod conflict;
mod dispatch;
mod pcr;
mod shaping;

pub use classic::{
    auto_conflict, conjunctive, dempster, dubois_prade, weighted_redistribution, yager, RedistributionWeights,
};
pub use conflict::{ConflictReport, PartialConflict};
pub use dispatch::{combine, fold_sequential, Combination, CombineOptions, Rule};
pub use pcr::{pcr5, pcr5_m, pcr5_two, pcr6, pcr6_f, pcr6_g};
pub use shaping::ShapingFunction;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::algebra::{Frame, MassFunction, Subset};
use crate::error::{Error, Result};
use crate::sum::CompensatedSum;

/// Denominators below this are treated as zero and their term skipped.
pub const DENOMINATOR_EPS: f64 = 1e-12;

/// Checks that the sources share a frame and, when asked, carry no mass on ∅.
pub(crate) fn validate(sources: &[MassFunction], closed_world: bool) -> Result<Frame> {
    let first = sources.first().ok_or(Error::EmptySourceList)?;
    for (i, s) in sources.iter().enumerate() {
        if s.frame() != first.frame() {
            return Err(Error::FrameMismatch);
        }
        if closed_world && s.conflict() > 0.0 {
            return Err(Error::OpenWorldSource(i));
        }
    }
    Ok(first.frame().clone())
}

fn compare_sources(a: &MassFunction, b: &MassFunction) -> Ordering {
    let fa = a.focal_elements();
    let fb = b.focal_elements();
    for ((sa, ma), (sb, mb)) in fa.iter().zip(fb) {
        let ord = sa.cmp(sb).then_with(|| ma.total_cmp(mb));
        if ord != Ordering::Equal {
            return ord;
        }
    }
    fa.len().cmp(&fb.len())
}

/// Source indices in canonical visiting order.
pub(crate) fn canonical_order(sources: &[MassFunction]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..sources.len()).collect();
    order.sort_by(|&i, &j| compare_sources(&sources[i], &sources[j]).then(i.cmp(&j)));
    order
}

/// One combination of focal elements, one per visited source.
pub(crate) struct Tuple<'a> {
    pub focals: &'a [Subset],
    pub masses: &'a [f64],
    pub product: f64,
    pub intersection: Subset,
}

/// Visits every focal tuple of `sources` in the given order.
///
/// With `prune` set, a branch whose running intersection is already empty is
/// reported once as a truncated tuple carrying its prefix product: the
/// remaining sources each sum to one, so the subtree's total mass is that
/// product. Truncated tuples are shorter than `order`.
pub(crate) fn walk<F>(sources: &[MassFunction], order: &[usize], prune: bool, mut visit: F)
where
    F: FnMut(&Tuple<'_>),
{
    let lists: Vec<&[(Subset, f64)]> = order.iter().map(|&i| sources[i].focal_elements()).collect();
    let m = lists.len();
    if m == 0 || lists.iter().any(|l| l.is_empty()) {
        return;
    }
    let mut idx = vec![0usize; m];
    let mut focals = vec![Subset::EMPTY; m];
    let mut masses = vec![0.0; m];
    let mut inter = vec![Subset::from_bits(u64::MAX); m + 1];
    let mut prod = vec![1.0; m + 1];
    let mut depth = 0;
    loop {
        while depth < m {
            let (s, v) = lists[depth][idx[depth]];
            focals[depth] = s;
            masses[depth] = v;
            inter[depth + 1] = inter[depth].intersect(s);
            prod[depth + 1] = prod[depth] * v;
            depth += 1;
            if prune && depth < m && inter[depth].is_empty() {
                break;
            }
        }
        visit(&Tuple {
            focals: &focals[..depth],
            masses: &masses[..depth],
            product: prod[depth],
            intersection: inter[depth],
        });
        loop {
            if depth == 0 {
                return;
            }
            depth -= 1;
            idx[depth] += 1;
            if idx[depth] < lists[depth].len() {
                break;
            }
            idx[depth] = 0;
        }
    }
}

/// Per-subset compensated accumulator.
#[derive(Default)]
pub(crate) struct Accumulator(BTreeMap<Subset, CompensatedSum>);

impl Accumulator {
    pub fn add(&mut self, subset: Subset, value: f64) {
        self.0.entry(subset).or_default().add(value);
    }

    pub fn into_map(self) -> BTreeMap<Subset, f64> {
        self.0.into_iter().map(|(k, v)| (k, v.value())).collect()
    }
}

/// Unnormalized conjunctive masses, with conflicting subtrees pruned.
pub(crate) fn conjunctive_masses(sources: &[MassFunction], order: &[usize]) -> Accumulator {
    let mut acc = Accumulator::default();
    walk(sources, order, true, |t| acc.add(t.intersection, t.product));
    acc
}
