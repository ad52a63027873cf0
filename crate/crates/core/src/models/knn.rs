//! Distance-based evidential k-NN model.
//!
//! Each of the k nearest training values of a feature contributes a simple
//! support function {C_i: α·exp(−γ d²), Θ: rest} for its class C_i; the k
//! supports are fused with Dempster's rule.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::TrainingSet;
use crate::algebra::{Frame, MassFunction, Subset};
use crate::error::{Error, Result};
use crate::rules::dempster;

pub const DEFAULT_K: usize = 5;
pub const DEFAULT_ALPHA: f64 = 0.95;

/// Parameters of the k-NN mass model. `alpha` and `gamma` are indexed
/// `[class][feature]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KnnModelParams {
    pub k: usize,
    pub alpha: Vec<Vec<f64>>,
    pub gamma: Vec<Vec<f64>>,
}

impl KnnModelParams {
    /// α = `alpha` everywhere and γ_ip = 1 / (mean squared distance from
    /// each class-i value of feature p to its nearest class-i neighbour).
    pub fn fit_defaults(train: &TrainingSet, k: usize, alpha: f64) -> Result<Self> {
        if train.is_empty() {
            return Err(Error::EmptyTraining);
        }
        let classes = train.frame().len();
        let features = train.feature_count();
        let mut gamma = vec![vec![1.0; features]; classes];
        for p in 0..features {
            let overall = mean_squared_nn_distance(train.samples().map(|(s, _)| s[p]).collect());
            for (class, row) in gamma.iter_mut().enumerate() {
                let values: Vec<f64> = train
                    .samples()
                    .filter(|(_, l)| *l == class)
                    .map(|(s, _)| s[p])
                    .collect();
                let spread = mean_squared_nn_distance(values)
                    .filter(|v| *v > 0.0)
                    .or(overall.filter(|v| *v > 0.0));
                row[p] = spread.map_or(1.0, |v| 1.0 / v);
            }
        }
        let params = KnnModelParams {
            k,
            alpha: vec![vec![alpha; features]; classes],
            gamma,
        };
        params.validate(train)?;
        Ok(params)
    }

    pub fn validate(&self, train: &TrainingSet) -> Result<()> {
        let classes = train.frame().len();
        let features = train.feature_count();
        if self.k == 0 || self.k > train.len() {
            return Err(Error::InvalidParams(format!(
                "k = {} must be in 1..={}",
                self.k,
                train.len()
            )));
        }
        let shaped = |t: &Vec<Vec<f64>>| t.len() == classes && t.iter().all(|r| r.len() == features);
        if !shaped(&self.alpha) || !shaped(&self.gamma) {
            return Err(Error::InvalidParams(format!(
                "alpha and gamma must be {classes}x{features}"
            )));
        }
        if let Some(a) = self.alpha.iter().flatten().find(|a| !(**a > 0.0 && **a < 1.0)) {
            return Err(Error::InvalidParams(format!("alpha {a} outside (0, 1)")));
        }
        if let Some(g) = self.gamma.iter().flatten().find(|g| !(**g > 0.0 && g.is_finite())) {
            return Err(Error::InvalidParams(format!("gamma {g} must be positive")));
        }
        Ok(())
    }
}

fn mean_squared_nn_distance(mut values: Vec<f64>) -> Option<f64> {
    if values.len() < 2 {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let n = values.len();
    let total: f64 = (0..n)
        .map(|i| {
            let left = (i > 0).then(|| values[i] - values[i - 1]);
            let right = (i + 1 < n).then(|| values[i + 1] - values[i]);
            let d = match (left, right) {
                (Some(l), Some(r)) => l.min(r),
                (Some(d), None) | (None, Some(d)) => d,
                (None, None) => unreachable!(),
            };
            d * d
        })
        .sum();
    Some(total / n as f64)
}

/// {C_class: support, Θ: 1 − support}.
pub(crate) fn simple_support(frame: &Frame, class: usize, support: f64) -> Result<MassFunction> {
    let mut map = BTreeMap::new();
    *map.entry(Subset::singleton(class)).or_insert(0.0) += support;
    *map.entry(frame.theta()).or_insert(0.0) += 1.0 - support;
    MassFunction::new(frame, map)
}

/// Indices of the `k` training samples closest to `x` on feature `p`,
/// nearest first, ties broken by sample index.
pub fn nearest_neighbours(train: &TrainingSet, p: usize, x: f64, k: usize) -> Result<Vec<(usize, f64)>> {
    train.check_feature(p)?;
    let mut dist: Vec<(usize, f64)> = (0..train.len()).map(|i| (i, (train.sample(i)[p] - x).abs())).collect();
    let k = k.min(dist.len());
    let by_distance = |a: &(usize, f64), b: &(usize, f64)| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0));
    if k < dist.len() {
        dist.select_nth_unstable_by(k, by_distance);
        dist.truncate(k);
    }
    dist.sort_by(by_distance);
    Ok(dist)
}

/// Mass function of feature `p` at value `x`.
pub fn knn_mass(train: &TrainingSet, params: &KnnModelParams, p: usize, x: f64) -> Result<MassFunction> {
    if train.is_empty() {
        return Err(Error::EmptyTraining);
    }
    train.check_feature(p)?;
    params.validate(train)?;
    let frame = train.frame();
    let supports = nearest_neighbours(train, p, x, params.k)?
        .into_iter()
        .map(|(i, d)| {
            let class = train.label(i);
            let support = params.alpha[class][p] * (-params.gamma[class][p] * d * d).exp();
            simple_support(frame, class, support)
        })
        .collect::<Result<Vec<_>>>()?;
    dempster(&supports)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_class(values: &[(f64, usize)]) -> TrainingSet {
        let frame = Frame::new(["A", "B"]).unwrap();
        TrainingSet::new(
            frame,
            vec!["x".into()],
            values.iter().map(|(v, _)| vec![*v]).collect(),
            values.iter().map(|(_, l)| *l).collect(),
        )
        .unwrap()
    }

    fn params(k: usize, gamma: f64) -> KnnModelParams {
        KnnModelParams {
            k,
            alpha: vec![vec![0.95]; 2],
            gamma: vec![vec![gamma]; 2],
        }
    }

    #[test]
    fn exact_neighbour_gives_alpha() {
        let t = two_class(&[(0.0, 0), (10.0, 1)]);
        let m = knn_mass(&t, &params(1, 1.0), 0, 0.0).unwrap();
        assert!((m.mass(Subset::singleton(0)) - 0.95).abs() < 1e-12);
        assert!((m.mass(t.frame().theta()) - 0.05).abs() < 1e-12);
    }

    #[test]
    fn far_neighbour_is_vacuous() {
        let t = two_class(&[(0.0, 0), (10.0, 1)]);
        let m = knn_mass(&t, &params(1, 1.0), 0, 1e200).unwrap();
        assert!(m.is_vacuous());
    }

    #[test]
    fn equidistant_opposite_neighbours_are_symmetric() {
        let t = two_class(&[(-1.0, 0), (1.0, 1), (50.0, 0)]);
        let m = knn_mass(&t, &params(2, 0.5), 0, 0.0).unwrap();
        let a = m.betp(Subset::singleton(0)).unwrap();
        let b = m.betp(Subset::singleton(1)).unwrap();
        assert!((a - b).abs() < 1e-15);
        // direct two-mass oracle: s = 0.95 e^{-0.5}, Dempster of {A:s,Θ}+{B:s,Θ}
        let s = 0.95 * (-0.5f64).exp();
        let norm = 1.0 - s * s;
        assert!((m.mass(Subset::singleton(0)) - s * (1.0 - s) / norm).abs() < 1e-12);
        assert!((m.mass(t.frame().theta()) - (1.0 - s) * (1.0 - s) / norm).abs() < 1e-12);
    }

    #[test]
    fn class_mass_decays_with_distance() {
        let t = two_class(&[(0.0, 0), (100.0, 1)]);
        let p = params(1, 0.3);
        let mut previous = f64::INFINITY;
        for step in 0..50 {
            let x = step as f64 * 0.1;
            let m = knn_mass(&t, &p, 0, x).unwrap().mass(Subset::singleton(0));
            assert!(m <= previous);
            previous = m;
        }
    }

    #[test]
    fn parameter_validation() {
        let t = two_class(&[(0.0, 0), (1.0, 1)]);
        assert!(matches!(
            knn_mass(&t, &params(3, 1.0), 0, 0.0),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            knn_mass(&t, &params(1, 1.0), 4, 0.0),
            Err(Error::InvalidFeature { .. })
        ));
        let mut bad = params(1, 1.0);
        bad.alpha[0][0] = 1.0;
        assert!(matches!(bad.validate(&t), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn default_gamma_from_within_class_spacing() {
        let t = two_class(&[(0.0, 0), (2.0, 0), (10.0, 1), (11.0, 1)]);
        let p = KnnModelParams::fit_defaults(&t, 2, DEFAULT_ALPHA).unwrap();
        assert!((p.gamma[0][0] - 0.25).abs() < 1e-15);
        assert!((p.gamma[1][0] - 1.0).abs() < 1e-15);
        assert_eq!(p.alpha, vec![vec![0.95]; 2]);
    }
}
