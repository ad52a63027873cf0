use std::fs;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::ConfusionMatrix;
use crate::decision::Criterion;
use crate::error::{Error, Result};
use crate::models::{
    fit_histograms, Classifier, KnnModelParams, MassModel, TrainingSet, DEFAULT_ALPHA, DEFAULT_BINS, DEFAULT_K,
};
use crate::rules::Rule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Knn,
    Histogram,
}

/// Experiment settings, read from JSON. Only `dataset` is required.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Feature CSV: optional `id` column, feature columns, label column.
    pub dataset: PathBuf,
    #[serde(default = "default_model")]
    pub model: ModelKind,
    /// Histogram bins per feature.
    #[serde(default = "default_bins")]
    pub bins: usize,
    /// Neighbours used by the k-NN model.
    #[serde(default = "default_k")]
    pub k: usize,
    /// k-NN discount factor, the same for every class and feature.
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default = "default_rule")]
    pub rule: Rule,
    #[serde(default = "default_criterion")]
    pub criterion: Criterion,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_fraction")]
    pub train_fraction: f64,
    #[serde(default = "default_output")]
    pub output_dir: PathBuf,
}

fn default_model() -> ModelKind {
    ModelKind::Histogram
}
fn default_bins() -> usize {
    DEFAULT_BINS
}
fn default_k() -> usize {
    DEFAULT_K
}
fn default_alpha() -> f64 {
    DEFAULT_ALPHA
}
fn default_rule() -> Rule {
    Rule::Pcr6
}
fn default_criterion() -> Criterion {
    Criterion::BetP
}
fn default_fraction() -> f64 {
    0.5
}
fn default_output() -> PathBuf {
    PathBuf::from("results")
}

impl ExperimentConfig {
    pub fn new(dataset: impl Into<PathBuf>) -> Self {
        ExperimentConfig {
            dataset: dataset.into(),
            model: default_model(),
            bins: default_bins(),
            k: default_k(),
            alpha: default_alpha(),
            rule: default_rule(),
            criterion: default_criterion(),
            seed: 0,
            train_fraction: default_fraction(),
            output_dir: default_output(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let config: ExperimentConfig = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.train_fraction > 0.0 && self.train_fraction < 1.0) {
            return Err(Error::InvalidParams(format!(
                "train_fraction {} must lie strictly between 0 and 1",
                self.train_fraction
            )));
        }
        if self.bins == 0 || self.k == 0 {
            return Err(Error::InvalidParams("bins and k must be at least 1".into()));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidParams(format!("alpha {} outside (0, 1)", self.alpha)));
        }
        if matches!(self.rule, Rule::Hedging | Rule::Weighted | Rule::Pcr6F | Rule::Pcr6G) {
            return Err(Error::InvalidParams(format!(
                "rule `{}` needs parameters that experiments do not configure",
                self.rule
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassSummary {
    pub class: String,
    pub test_count: usize,
    pub correct: usize,
    pub rejected: usize,
    /// Percentage, or `null` when the class has no test samples.
    pub accuracy: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentSummary {
    pub dataset: String,
    pub model: ModelKind,
    pub rule: Rule,
    pub criterion: Criterion,
    pub seed: u64,
    pub train_fraction: f64,
    pub train_size: usize,
    pub test_size: usize,
    pub per_class: Vec<ClassSummary>,
    pub accuracy: Option<f64>,
    pub confusion: ConfusionMatrix,
}

#[derive(Clone, Debug)]
pub struct ExperimentOutcome {
    pub confusion: ConfusionMatrix,
    pub summary: ExperimentSummary,
    pub confusion_path: PathBuf,
    pub summary_path: PathBuf,
}

/// Per-class shuffled split. Every class keeps at least one training sample
/// and, when it has two or more, at least one test sample.
pub fn stratified_split(data: &TrainingSet, fraction: f64, seed: u64) -> (Vec<usize>, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut train = Vec::new();
    let mut test = Vec::new();
    for class in 0..data.frame().len() {
        let mut members: Vec<usize> = (0..data.len()).filter(|&i| data.label(i) == class).collect();
        if members.is_empty() {
            continue;
        }
        members.shuffle(&mut rng);
        let n = members.len();
        let take = ((fraction * n as f64).round() as usize).clamp(1, n.saturating_sub(1).max(1));
        train.extend_from_slice(&members[..take]);
        test.extend_from_slice(&members[take..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    (train, test)
}

pub fn fit_model(config: &ExperimentConfig, train: &TrainingSet) -> Result<MassModel> {
    match config.model {
        ModelKind::Histogram => Ok(MassModel::Histogram(fit_histograms(train, config.bins)?)),
        ModelKind::Knn => {
            let k = config.k.min(train.len());
            let params = KnnModelParams::fit_defaults(train, k, config.alpha)?;
            Ok(MassModel::Knn {
                train: train.clone(),
                params,
            })
        }
    }
}

/// Fits the model on the training split, classifies the test split and
/// writes `confusion.csv` and `summary.json` to the output directory.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutcome> {
    config.validate()?;
    let data = TrainingSet::from_csv_path(&config.dataset)?;
    let (train_idx, test_idx) = stratified_split(&data, config.train_fraction, config.seed);
    let train = data.select(&train_idx);
    log::info!(
        "{} samples, {} classes: training on {}, testing on {}",
        data.len(),
        data.frame().len(),
        train_idx.len(),
        test_idx.len()
    );
    let classifier = Classifier::new(fit_model(config, &train)?, config.rule, config.criterion);
    let samples: Vec<&[f64]> = test_idx.iter().map(|&i| data.sample(i)).collect();
    let mut confusion = ConfusionMatrix::new(data.frame().labels().to_vec());
    for (&i, decision) in test_idx.iter().zip(classifier.classify_all(&samples)) {
        match decision {
            Ok(d) => confusion.record(data.label(i), Some(d.winner)),
            Err(Error::TotalConflict) => confusion.record(data.label(i), None),
            Err(e) => return Err(e),
        }
    }

    let per_class = (0..confusion.classes().len())
        .map(|i| ClassSummary {
            class: confusion.classes()[i].clone(),
            test_count: confusion.row_total(i),
            correct: confusion.count(i, i),
            rejected: confusion.rejected(i),
            accuracy: confusion.class_accuracy(i),
        })
        .collect();
    let summary = ExperimentSummary {
        dataset: config.dataset.display().to_string(),
        model: config.model,
        rule: config.rule,
        criterion: config.criterion,
        seed: config.seed,
        train_fraction: config.train_fraction,
        train_size: train_idx.len(),
        test_size: test_idx.len(),
        per_class,
        accuracy: confusion.accuracy(),
        confusion: confusion.clone(),
    };

    fs::create_dir_all(&config.output_dir).map_err(|e| Error::Io(format!("{}: {e}", config.output_dir.display())))?;
    let confusion_path = config.output_dir.join("confusion.csv");
    let summary_path = config.output_dir.join("summary.json");
    let file =
        fs::File::create(&confusion_path).map_err(|e| Error::Io(format!("{}: {e}", confusion_path.display())))?;
    confusion.write_csv(file)?;
    let mut json = serde_json::to_string_pretty(&summary)?;
    json.push('\n');
    fs::write(&summary_path, json).map_err(|e| Error::Io(format!("{}: {e}", summary_path.display())))?;

    Ok(ExperimentOutcome {
        confusion,
        summary,
        confusion_path,
        summary_path,
    })
}
