#![allow(dead_code)]

pub mod oracle;

use belief_fusion::continuous::{uniform_support, IntervalMassGrid};
use belief_fusion::{Frame, MassFunction, Subset};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const LABELS: [&str; 6] = ["A", "B", "C", "D", "E", "F"];

pub fn frame(n: usize) -> Frame {
    Frame::new(LABELS[..n].iter().copied()).unwrap()
}

/// A closed-world mass function with 1..=`max_focals` distinct nonempty
/// focal elements and random positive masses.
pub fn random_mass<R: Rng>(rng: &mut R, frame: &Frame, max_focals: usize) -> MassFunction {
    let mut subsets: Vec<u64> = (1..1u64 << frame.len()).collect();
    subsets.shuffle(rng);
    let count = rng.gen_range(1..=max_focals.min(subsets.len()));
    let weights: Vec<f64> = (0..count).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    let mut entries: Vec<(Subset, f64)> = subsets[..count]
        .iter()
        .zip(&weights)
        .map(|(&s, &w)| (Subset::from_bits(s), w / total))
        .collect();
    // Push the rounding residue onto one element so Σ = 1 holds tightly.
    let residue = 1.0 - entries.iter().map(|(_, w)| w).sum::<f64>();
    entries[0].1 += residue;
    MassFunction::new(frame, entries).unwrap()
}

/// Largest absolute difference between `m` and a dense table indexed by
/// subset bits.
pub fn dense_diff(m: &MassFunction, dense: &[f64]) -> f64 {
    let mut worst: f64 = 0.0;
    for (bits, &expected) in dense.iter().enumerate() {
        worst = worst.max((m.mass(Subset::from_bits(bits as u64)) - expected).abs());
    }
    for &(s, _) in m.focal_elements() {
        if s.bits() as usize >= dense.len() {
            worst = f64::INFINITY;
        }
    }
    worst
}

/// Whether `m` is a valid mass function: nonnegative entries summing to one,
/// and nothing on ∅ unless `open_world`.
pub fn is_valid_mass(m: &MassFunction, open_world: bool, tol: f64) -> bool {
    let nonneg = m.focal_elements().iter().all(|(_, w)| *w >= 0.0 && w.is_finite());
    let closed = open_world || m.conflict() == 0.0;
    nonneg && closed && (m.total() - 1.0).abs() <= tol
}

/// A conflict-free grid on [0, 1] with `focals` distinct random intervals.
pub fn random_grid(seed: u64, cells: usize, focals: usize) -> IntervalMassGrid {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entries: Vec<(usize, usize, f64)> = Vec::new();
    while entries.len() < focals {
        let i = rng.gen_range(0..=cells);
        let j = rng.gen_range(i..=cells);
        if entries.iter().all(|e| (e.0, e.1) != (i, j)) {
            entries.push((i, j, rng.gen_range(0.05..1.0)));
        }
    }
    let total: f64 = entries.iter().map(|e| e.2).sum();
    for e in &mut entries {
        e.2 /= total;
    }
    IntervalMassGrid::new(uniform_support(0.0, 1.0, cells).unwrap(), entries, 0.0).unwrap()
}
