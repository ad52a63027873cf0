//! Naive reference implementations. Every source is a dense table of 2^n
//! masses indexed by subset bits, and every output entry X is computed on
//! its own by enumerating all focal tuples, with no shared accumulation.

use std::collections::BTreeMap;

use belief_fusion::{MassFunction, Subset};

pub fn dense(m: &MassFunction) -> Vec<f64> {
    let size = 1usize << m.frame().len();
    (0..size).map(|b| m.mass(Subset::from_bits(b as u64))).collect()
}

/// Every tuple (one focal element per source) as (subsets, masses).
fn tuples(sources: &[Vec<f64>]) -> Vec<(Vec<usize>, Vec<f64>)> {
    let mut out = vec![(Vec::new(), Vec::new())];
    for src in sources {
        let mut next = Vec::new();
        for (subsets, masses) in &out {
            for (y, &w) in src.iter().enumerate() {
                if w > 0.0 {
                    let mut s = subsets.clone();
                    s.push(y);
                    let mut m = masses.clone();
                    m.push(w);
                    next.push((s, m));
                }
            }
        }
        out = next;
    }
    out
}

fn size(sources: &[Vec<f64>]) -> usize {
    sources[0].len()
}

fn meet(subsets: &[usize], full: usize) -> usize {
    subsets.iter().fold(full, |acc, &y| acc & y)
}

fn product(masses: &[f64]) -> f64 {
    masses.iter().product()
}

pub fn conjunctive(sources: &[Vec<f64>]) -> Vec<f64> {
    let n = size(sources);
    let all = tuples(sources);
    (0..n)
        .map(|x| {
            all.iter()
                .filter(|(s, _)| meet(s, n - 1) == x)
                .map(|(_, m)| product(m))
                .sum()
        })
        .collect()
}

pub fn dempster(sources: &[Vec<f64>]) -> Vec<f64> {
    let conj = conjunctive(sources);
    let k = conj[0];
    (0..conj.len())
        .map(|x| if x == 0 { 0.0 } else { conj[x] / (1.0 - k) })
        .collect()
}

pub fn yager(sources: &[Vec<f64>]) -> Vec<f64> {
    let conj = conjunctive(sources);
    let theta = conj.len() - 1;
    (0..conj.len())
        .map(|x| match x {
            0 => 0.0,
            _ if x == theta => conj[x] + conj[0],
            _ => conj[x],
        })
        .collect()
}

pub fn dubois_prade(sources: &[Vec<f64>]) -> Vec<f64> {
    let n = size(sources);
    let all = tuples(sources);
    (0..n)
        .map(|x| {
            if x == 0 {
                return 0.0;
            }
            all.iter()
                .filter(|(s, _)| {
                    let i = meet(s, n - 1);
                    let u = s.iter().fold(0, |acc, &y| acc | y);
                    i == x || (i == 0 && u == x)
                })
                .map(|(_, m)| product(m))
                .sum()
        })
        .collect()
}

pub fn weighted(sources: &[Vec<f64>], weights: &[f64]) -> Vec<f64> {
    let conj = conjunctive(sources);
    (0..conj.len())
        .map(|x| if x == 0 { 0.0 } else { conj[x] + weights[x] * conj[0] })
        .collect()
}

/// Two-source PCR5 written directly over the power set: for each X, sum over
/// every Y with X ∩ Y = ∅.
pub fn pcr5_two(m1: &[f64], m2: &[f64]) -> Vec<f64> {
    let n = m1.len();
    let conj = conjunctive(&[m1.to_vec(), m2.to_vec()]);
    (0..n)
        .map(|x| {
            if x == 0 {
                return 0.0;
            }
            let mut v = conj[x];
            for y in 1..n {
                if x & y != 0 {
                    continue;
                }
                if m1[x] + m2[y] >= 1e-12 {
                    v += m1[x] * m1[x] * m2[y] / (m1[x] + m2[y]);
                }
                if m2[x] + m1[y] >= 1e-12 {
                    v += m2[x] * m2[x] * m1[y] / (m2[x] + m1[y]);
                }
            }
            v
        })
        .collect()
}

/// M-source PCR5: within a conflicting tuple, sources naming the same focal
/// element are merged into one slot weighted by the product of their masses.
pub fn pcr5_m(sources: &[Vec<f64>]) -> Vec<f64> {
    let n = size(sources);
    let all = tuples(sources);
    let conj = conjunctive(sources);
    (0..n)
        .map(|x| {
            if x == 0 {
                return 0.0;
            }
            let mut v = conj[x];
            for (s, m) in &all {
                if meet(s, n - 1) != 0 || !s.contains(&x) {
                    continue;
                }
                let mut slots: BTreeMap<usize, f64> = BTreeMap::new();
                for (&y, &w) in s.iter().zip(m) {
                    *slots.entry(y).or_insert(1.0) *= w;
                }
                let denom: f64 = slots.values().sum();
                if denom >= 1e-12 {
                    v += product(m) * slots[&x] / denom;
                }
            }
            v
        })
        .collect()
}

/// Source i with focal X against every tuple of the other sources whose
/// intersection with X is empty:
/// m_i(X)·weight(m_i(X))·Π others / denom(m_i(X), others).
fn pcr6_family<W, D>(sources: &[Vec<f64>], weight: W, denom: D) -> Vec<f64>
where
    W: Fn(f64) -> f64,
    D: Fn(f64, &[f64]) -> f64,
{
    let n = size(sources);
    let conj = conjunctive(sources);
    let mut out = conj.clone();
    out[0] = 0.0;
    for x in 1..n {
        for i in 0..sources.len() {
            let mx = sources[i][x];
            if mx == 0.0 {
                continue;
            }
            let others: Vec<Vec<f64>> = sources
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, s)| s.clone())
                .collect();
            for (s, m) in tuples(&others) {
                if meet(&s, n - 1) & x != 0 {
                    continue;
                }
                let d = denom(mx, &m);
                if d >= 1e-12 {
                    out[x] += mx * weight(mx) * product(&m) / d;
                }
            }
        }
    }
    out
}

pub fn pcr6(sources: &[Vec<f64>]) -> Vec<f64> {
    pcr6_family(sources, |m| m, |mx, others| mx + others.iter().sum::<f64>())
}

pub fn pcr6_f(sources: &[Vec<f64>], f: &dyn Fn(f64) -> f64) -> Vec<f64> {
    pcr6_family(sources, f, |mx, others| {
        f(mx) + others.iter().map(|&w| f(w)).sum::<f64>()
    })
}

/// The g-shaped shares, rescaled so that the redistributed total equals the
/// conjunctive conflict.
pub fn pcr6_g(sources: &[Vec<f64>], g: &dyn Fn(f64) -> f64) -> Vec<f64> {
    let raw = pcr6_family(sources, g, |mx, others| g(mx + others.iter().sum::<f64>()));
    let conj = conjunctive(sources);
    let redistributed: f64 = (1..raw.len()).map(|x| raw[x] - conj[x]).sum();
    let scale = if redistributed > 0.0 {
        conj[0] / redistributed
    } else {
        0.0
    };
    (0..raw.len())
        .map(|x| {
            if x == 0 {
                0.0
            } else {
                conj[x] + (raw[x] - conj[x]) * scale
            }
        })
        .collect()
}

pub type Intervals = Vec<(usize, usize, f64)>;

/// Conjunctive combination of two interval lists over a shared grid:
/// (masses by interval, conflict).
pub fn continuous_conjunctive(a: &Intervals, b: &Intervals) -> (BTreeMap<(usize, usize), f64>, f64) {
    let mut out = BTreeMap::new();
    let mut conflict = 0.0;
    for &(i1, j1, w1) in a {
        for &(i2, j2, w2) in b {
            let lo = i1.max(i2);
            let hi = j1.min(j2);
            if lo <= hi {
                *out.entry((lo, hi)).or_insert(0.0) += w1 * w2;
            } else {
                conflict += w1 * w2;
            }
        }
    }
    (out, conflict)
}
