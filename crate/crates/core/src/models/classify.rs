use rayon::prelude::*;

use super::{histogram_mass, knn_mass, HistogramModel, KnnModelParams, TrainingSet};
use crate::algebra::{Frame, MassFunction};
use crate::decision::{decide, Criterion, DecisionResult};
use crate::error::{Error, Result};
use crate::rules::{combine, CombineOptions, Rule};

/// A fitted per-feature mass model.
#[derive(Clone, Debug)]
pub enum MassModel {
    Knn { train: TrainingSet, params: KnnModelParams },
    Histogram(HistogramModel),
}

impl MassModel {
    pub fn frame(&self) -> &Frame {
        match self {
            MassModel::Knn { train, .. } => train.frame(),
            MassModel::Histogram(h) => h.frame(),
        }
    }

    pub fn feature_count(&self) -> usize {
        match self {
            MassModel::Knn { train, .. } => train.feature_count(),
            MassModel::Histogram(h) => h.feature_count(),
        }
    }

    pub fn feature_mass(&self, p: usize, x: f64) -> Result<MassFunction> {
        match self {
            MassModel::Knn { train, params } => knn_mass(train, params, p, x),
            MassModel::Histogram(h) => histogram_mass(h, p, x),
        }
    }

    /// One mass function per feature of `sample`.
    pub fn feature_masses(&self, sample: &[f64]) -> Result<Vec<MassFunction>> {
        if sample.len() != self.feature_count() {
            return Err(Error::InvalidArgument(format!(
                "sample has {} features, model expects {}",
                sample.len(),
                self.feature_count()
            )));
        }
        sample
            .iter()
            .enumerate()
            .map(|(p, &x)| self.feature_mass(p, x))
            .collect()
    }
}

/// Builds the feature masses of `sample`, fuses them with `rule` and decides.
pub fn classify(
    sample: &[f64],
    model: &MassModel,
    rule: Rule,
    criterion: Criterion,
    options: &CombineOptions,
) -> Result<DecisionResult> {
    if rule == Rule::Hedging {
        return Err(Error::InvalidArgument(
            "hedging adds a hypothesis and cannot be used to classify".into(),
        ));
    }
    let masses = model.feature_masses(sample)?;
    if masses.len() == 1 {
        return decide(&masses[0], criterion);
    }
    let fused = combine(rule, &masses, options)?;
    decide(&fused.mass, criterion)
}

/// A model bundled with its fusion rule and decision criterion.
#[derive(Clone, Debug)]
pub struct Classifier {
    pub model: MassModel,
    pub rule: Rule,
    pub criterion: Criterion,
    pub options: CombineOptions,
}

impl Classifier {
    pub fn new(model: MassModel, rule: Rule, criterion: Criterion) -> Self {
        Classifier {
            model,
            rule,
            criterion,
            options: CombineOptions::default(),
        }
    }

    pub fn classify(&self, sample: &[f64]) -> Result<DecisionResult> {
        classify(sample, &self.model, self.rule, self.criterion, &self.options)
    }

    /// Classifies every sample in parallel; results keep the input order.
    pub fn classify_all(&self, samples: &[&[f64]]) -> Vec<Result<DecisionResult>> {
        samples.par_iter().map(|s| self.classify(s)).collect()
    }
}
