use std::collections::BTreeMap;

use super::{Frame, Subset};
use crate::error::{Error, Result};
use crate::sum::{self, CompensatedSum};

/// Tolerance on Σ m = 1 when a mass function is built from user input.
pub const SUM_TOLERANCE: f64 = 1e-9;

/// m(∅) at or above `1 - TOTAL_CONFLICT_EPS` counts as total conflict.
pub const TOTAL_CONFLICT_EPS: f64 = 1e-12;

/// A basic belief assignment over 2^Θ.
///
/// Focal elements are kept sorted by bitmask and every stored mass is strictly
/// positive. Mass on ∅ is only allowed when the function is open-world, which
/// is what the unnormalized conjunctive rule produces.
#[derive(Clone, Debug, PartialEq)]
pub struct MassFunction {
    frame: Frame,
    focal: Vec<(Subset, f64)>,
    open_world: bool,
}

impl MassFunction {
    /// Builds a closed-world mass function, checking Σ m = 1.
    pub fn new<I>(frame: &Frame, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Subset, f64)>,
    {
        Self::build(frame, entries, false)
    }

    /// Builds a mass function that may carry mass on ∅.
    pub fn open_world<I>(frame: &Frame, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Subset, f64)>,
    {
        Self::build(frame, entries, true)
    }

    /// Convenience constructor from `"A|B"` style keys.
    pub fn from_labels(frame: &Frame, entries: &[(&str, f64)]) -> Result<Self> {
        let parsed = entries
            .iter()
            .map(|(k, v)| frame.parse_subset(k).map(|s| (s, *v)))
            .collect::<Result<Vec<_>>>()?;
        let open = parsed.iter().any(|(s, v)| s.is_empty() && *v > 0.0);
        Self::build(frame, parsed, open)
    }

    /// m(Θ) = 1.
    pub fn vacuous(frame: &Frame) -> Self {
        MassFunction {
            frame: frame.clone(),
            focal: vec![(frame.theta(), 1.0)],
            open_world: false,
        }
    }

    fn build<I>(frame: &Frame, entries: I, open_world: bool) -> Result<Self>
    where
        I: IntoIterator<Item = (Subset, f64)>,
    {
        let mut map = BTreeMap::new();
        for (subset, mass) in entries {
            if !frame.contains(subset) {
                return Err(Error::SubsetOutsideFrame(subset.bits()));
            }
            if !(0.0..=1.0 + SUM_TOLERANCE).contains(&mass) {
                return Err(Error::NegativeMass(mass));
            }
            if map.insert(subset, mass).is_some() {
                return Err(Error::DuplicateFocal(frame.format_subset(subset)));
            }
        }
        if !open_world && map.get(&Subset::EMPTY).is_some_and(|m| *m > 0.0) {
            return Err(Error::EmptySetInClosedWorld);
        }
        let total = sum::sum(map.values().copied());
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::SumNotOne(total));
        }
        Ok(Self::from_map(frame, map, open_world))
    }

    /// Assembles a mass function from already-validated rule output.
    /// Non-positive entries are dropped.
    pub(crate) fn from_map(frame: &Frame, map: BTreeMap<Subset, f64>, open_world: bool) -> Self {
        let focal = map.into_iter().filter(|(_, m)| *m > 0.0).collect();
        MassFunction {
            frame: frame.clone(),
            focal,
            open_world,
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn is_open_world(&self) -> bool {
        self.open_world
    }

    /// Focal elements and their masses, sorted by bitmask.
    pub fn focal_elements(&self) -> &[(Subset, f64)] {
        &self.focal
    }

    pub fn mass(&self, subset: Subset) -> f64 {
        self.focal
            .binary_search_by_key(&subset, |(s, _)| *s)
            .map(|i| self.focal[i].1)
            .unwrap_or(0.0)
    }

    /// m(∅), the conflict carried by an open-world function.
    pub fn conflict(&self) -> f64 {
        self.mass(Subset::EMPTY)
    }

    pub fn total(&self) -> f64 {
        sum::sum(self.focal.iter().map(|(_, m)| *m))
    }

    pub fn is_vacuous(&self) -> bool {
        self.focal.len() == 1 && self.focal[0].0 == self.frame.theta()
    }

    /// Credibility: Σ m(Y) over nonempty Y ⊆ X.
    pub fn bel(&self, x: Subset) -> f64 {
        self.focal
            .iter()
            .filter(|(y, _)| !y.is_empty() && y.is_subset_of(x))
            .map(|(_, m)| *m)
            .collect::<CompensatedSum>()
            .value()
    }

    /// Plausibility, computed as 1 − m(∅) − bel(Xᶜ).
    pub fn pl(&self, x: Subset) -> f64 {
        if x.is_empty() {
            return 0.0;
        }
        let complement = x.complement(self.frame.len());
        (1.0 - self.conflict() - self.bel(complement)).max(0.0)
    }

    /// Plausibility by direct summation over focal elements meeting X.
    pub fn pl_direct(&self, x: Subset) -> f64 {
        self.focal
            .iter()
            .filter(|(y, _)| y.intersects(x))
            .map(|(_, m)| *m)
            .collect::<CompensatedSum>()
            .value()
    }

    /// Pignistic probability. `betp(∅)` is 0.
    pub fn betp(&self, x: Subset) -> Result<f64> {
        let norm = 1.0 - self.conflict();
        if norm <= TOTAL_CONFLICT_EPS {
            return Err(Error::TotalConflict);
        }
        if x.is_empty() {
            return Ok(0.0);
        }
        let acc: CompensatedSum = self
            .focal
            .iter()
            .filter(|(y, _)| !y.is_empty())
            .map(|(y, m)| x.intersect(*y).len() as f64 / y.len() as f64 * m)
            .collect();
        Ok(acc.value() / norm)
    }

    /// Pignistic probability of every singleton, in frame order.
    pub fn betp_singletons(&self) -> Result<Vec<f64>> {
        let norm = 1.0 - self.conflict();
        if norm <= TOTAL_CONFLICT_EPS {
            return Err(Error::TotalConflict);
        }
        let mut acc = vec![CompensatedSum::new(); self.frame.len()];
        for (y, m) in self.focal.iter().filter(|(y, _)| !y.is_empty()) {
            let share = m / y.len() as f64;
            for i in y.indices() {
                acc[i].add(share);
            }
        }
        Ok(acc.iter().map(|a| a.value() / norm).collect())
    }

    /// Classical discounting with reliability `alpha`: every mass is scaled by
    /// `alpha` and the removed mass moves to Θ.
    pub fn discount(&self, alpha: f64) -> Result<Self> {
        self.discount_by(&BTreeMap::new(), alpha)
    }

    /// Discounting with a per-focal-element coefficient; focal elements
    /// missing from `alphas` use `default_alpha`.
    pub fn discount_by(&self, alphas: &BTreeMap<Subset, f64>, default_alpha: f64) -> Result<Self> {
        let check = |a: f64| {
            if (0.0..=1.0).contains(&a) {
                Ok(a)
            } else {
                Err(Error::AlphaOutOfRange(a))
            }
        };
        check(default_alpha)?;
        for a in alphas.values() {
            check(*a)?;
        }
        let theta = self.frame.theta();
        let mut map = BTreeMap::new();
        let mut moved = CompensatedSum::new();
        for &(x, m) in &self.focal {
            if x == theta {
                continue;
            }
            let alpha = alphas.get(&x).copied().unwrap_or(default_alpha);
            let kept = alpha * m;
            moved.add(kept);
            map.insert(x, kept);
        }
        map.insert(theta, 1.0 - moved.value());
        Ok(Self::from_map(&self.frame, map, self.open_world))
    }

    /// Moves the mass of ∅ onto a new hypothesis `e` appended to the frame.
    pub fn hedge(&self) -> Result<ExtendedMassFunction> {
        let (frame, hedge_index) = self.frame.extended("e")?;
        let e = Subset::singleton(hedge_index);
        let mut map: BTreeMap<Subset, f64> = self.focal.iter().filter(|(s, _)| !s.is_empty()).copied().collect();
        let conflict = self.conflict();
        if conflict > 0.0 {
            map.insert(e, conflict);
        }
        Ok(ExtendedMassFunction {
            base: self.frame.clone(),
            mass: Self::from_map(&frame, map, false),
            hedge_index,
        })
    }

    /// Largest absolute difference between two mass functions over the union
    /// of their focal elements.
    pub fn max_abs_diff(&self, other: &MassFunction) -> f64 {
        let mut keys: Vec<Subset> = self.focal.iter().chain(other.focal.iter()).map(|(s, _)| *s).collect();
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter()
            .map(|s| (self.mass(s) - other.mass(s)).abs())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &MassFunction, tol: f64) -> bool {
        self.frame == other.frame && self.max_abs_diff(other) <= tol
    }
}

/// Closed-world mass function over Θ ∪ {e}, produced by hedging.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtendedMassFunction {
    base: Frame,
    mass: MassFunction,
    hedge_index: usize,
}

impl ExtendedMassFunction {
    /// The frame before extension.
    pub fn base_frame(&self) -> &Frame {
        &self.base
    }

    /// The mass function over the extended frame.
    pub fn as_mass(&self) -> &MassFunction {
        &self.mass
    }

    pub fn into_mass(self) -> MassFunction {
        self.mass
    }

    pub fn hedge_index(&self) -> usize {
        self.hedge_index
    }

    /// m(e), the absorbed conflict.
    pub fn hedge_mass(&self) -> f64 {
        self.mass.mass(Subset::singleton(self.hedge_index))
    }

    /// Mass of a subset of the original frame.
    pub fn mass(&self, subset: Subset) -> f64 {
        self.mass.mass(subset)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Frame {
        Frame::new(["A", "B", "C"]).unwrap()
    }

    #[test]
    fn constructor_contract() {
        let f = abc();
        let vac = MassFunction::from_labels(&f, &[("A|B|C", 1.0)]).unwrap();
        assert!(vac.is_vacuous());
        let z1 = MassFunction::from_labels(&f, &[("A", 0.9), ("C", 0.1)]).unwrap();
        assert_eq!(z1.focal_elements().len(), 2);
        assert!(matches!(
            MassFunction::from_labels(&f, &[("A", 0.9), ("C", 0.2)]),
            Err(Error::SumNotOne(_))
        ));
        assert!(matches!(
            MassFunction::from_labels(&f, &[("A", -0.1), ("C", 1.1)]),
            Err(Error::NegativeMass(_))
        ));
        assert!(matches!(
            MassFunction::from_labels(&f, &[("A|B", 0.5), ("B|A", 0.5)]),
            Err(Error::DuplicateFocal(_))
        ));
        assert_eq!(
            MassFunction::new(&f, [(Subset::EMPTY, 0.5), (f.theta(), 0.5)]),
            Err(Error::EmptySetInClosedWorld)
        );
        assert!(matches!(
            MassFunction::new(&f, [(Subset::from_bits(0b1000), 1.0)]),
            Err(Error::SubsetOutsideFrame(8))
        ));
    }

    #[test]
    fn zero_entries_are_not_focal() {
        let f = abc();
        let m = MassFunction::from_labels(&f, &[("A", 1.0), ("B", 0.0)]).unwrap();
        assert_eq!(m.focal_elements().len(), 1);
    }

    #[test]
    fn measures_on_zadeh_dubois_prade_result() {
        let f = abc();
        let m = MassFunction::from_labels(&f, &[("A|B", 0.99), ("C", 0.01)]).unwrap();
        let s = |k: &str| f.parse_subset(k).unwrap();
        assert!((m.bel(s("A|B")) - 0.99).abs() < 1e-12);
        assert!((m.bel(s("A|C")) - 0.01).abs() < 1e-12);
        assert_eq!(m.bel(Subset::EMPTY), 0.0);
        assert!((m.pl(s("A")) - 0.99).abs() < 1e-12);
        assert!((m.pl(s("C")) - 0.01).abs() < 1e-12);
        assert!((m.betp(s("A")).unwrap() - 0.495).abs() < 1e-12);
        assert!((m.betp(s("A|C")).unwrap() - 0.505).abs() < 1e-12);
        assert_eq!(m.betp(Subset::EMPTY).unwrap(), 0.0);
    }

    #[test]
    fn vacuous_measures() {
        let f = Frame::new(["A", "B"]).unwrap();
        let v = MassFunction::vacuous(&f);
        assert_eq!(v.betp(Subset::singleton(0)).unwrap(), 0.5);
        for x in f.power_set().skip(1) {
            assert_eq!(v.pl(x), 1.0);
        }
    }

    #[test]
    fn betp_needs_some_non_conflicting_mass() {
        let f = abc();
        let m = MassFunction::open_world(&f, [(Subset::EMPTY, 1.0)]).unwrap();
        assert_eq!(m.betp(Subset::singleton(0)), Err(Error::TotalConflict));
    }

    #[test]
    fn discounting() {
        let f = abc();
        let m = MassFunction::from_labels(&f, &[("A", 0.6), ("A|B|C", 0.4)]).unwrap();
        assert_eq!(m.discount(1.0).unwrap(), m);
        assert!(m.discount(0.0).unwrap().is_vacuous());
        let d = m.discount(0.5).unwrap();
        assert!((d.mass(Subset::singleton(0)) - 0.3).abs() < 1e-15);
        assert!((d.mass(f.theta()) - 0.7).abs() < 1e-15);
        assert!((d.total() - 1.0).abs() < 1e-15);
        assert_eq!(m.discount(1.5), Err(Error::AlphaOutOfRange(1.5)));
    }

    #[test]
    fn per_focal_discounting() {
        let f = abc();
        let m = MassFunction::from_labels(&f, &[("A", 0.5), ("B", 0.5)]).unwrap();
        let alphas = BTreeMap::from([(Subset::singleton(0), 0.5)]);
        let d = m.discount_by(&alphas, 1.0).unwrap();
        assert!((d.mass(Subset::singleton(0)) - 0.25).abs() < 1e-15);
        assert!((d.mass(Subset::singleton(1)) - 0.5).abs() < 1e-15);
        assert!((d.mass(f.theta()) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn hedging() {
        let f = abc();
        let conj = MassFunction::open_world(&f, [(Subset::EMPTY, 0.99), (Subset::singleton(2), 0.01)]).unwrap();
        let h = conj.hedge().unwrap();
        assert_eq!(h.hedge_mass(), 0.99);
        assert_eq!(h.mass(Subset::singleton(2)), 0.01);
        assert_eq!(h.as_mass().conflict(), 0.0);
        assert!(!h.as_mass().is_open_world());
        assert_eq!(h.as_mass().frame().label(3), "e");

        let closed = MassFunction::from_labels(&f, &[("A", 0.3), ("B|C", 0.7)]).unwrap();
        let h = closed.hedge().unwrap();
        assert_eq!(h.hedge_mass(), 0.0);
        assert_eq!(h.mass(Subset::singleton(0)), 0.3);

        let all = MassFunction::open_world(&f, [(Subset::EMPTY, 1.0)]).unwrap();
        assert_eq!(all.hedge().unwrap().hedge_mass(), 1.0);
    }
}
