//! Normalized-histogram mass model.
//!
//! For feature p and value x falling in bin b, m(C_i) = d_i(b) / N_p where
//! d_i(b) counts the class-i training values in that bin and N_p is the
//! largest class-summed count over the bins of the feature. The rest goes to Θ.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::TrainingSet;
use crate::algebra::{Frame, MassFunction, Subset};
use crate::error::{Error, Result};

pub const DEFAULT_BINS: usize = 32;

/// Equal-width bins of one feature and the per-class counts in each bin.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeatureHistogram {
    edges: Vec<f64>,
    /// `counts[class][bin]`
    counts: Vec<Vec<u64>>,
    normalizer: f64,
}

impl FeatureHistogram {
    pub fn new(edges: Vec<f64>, counts: Vec<Vec<u64>>) -> Result<Self> {
        if edges.len() < 2 {
            return Err(Error::InvalidParams("a histogram needs at least two edges".into()));
        }
        if edges.iter().any(|e| !e.is_finite()) || edges.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParams(
                "bin edges must be finite and strictly increasing".into(),
            ));
        }
        let bins = edges.len() - 1;
        if counts.is_empty() || counts.iter().any(|c| c.len() != bins) {
            return Err(Error::InvalidParams(format!("every class needs {bins} bin counts")));
        }
        let normalizer = (0..bins)
            .map(|b| counts.iter().map(|c| c[b]).sum::<u64>())
            .max()
            .unwrap_or(0) as f64;
        if normalizer <= 0.0 {
            return Err(Error::InvalidParams("histogram has no samples".into()));
        }
        Ok(FeatureHistogram {
            edges,
            counts,
            normalizer,
        })
    }

    pub fn edges(&self) -> &[f64] {
        &self.edges
    }

    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    pub fn bins(&self) -> usize {
        self.edges.len() - 1
    }

    /// Largest class-summed bin count.
    pub fn normalizer(&self) -> f64 {
        self.normalizer
    }

    /// Bin holding `x`; values outside the edges fall in the end bins.
    pub fn bin_of(&self, x: f64) -> usize {
        let bins = self.bins();
        self.edges[1..bins].partition_point(|e| *e <= x)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "HistogramModelRepr", into = "HistogramModelRepr")]
pub struct HistogramModel {
    frame: Frame,
    feature_names: Vec<String>,
    features: Vec<FeatureHistogram>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HistogramModelRepr {
    classes: Vec<String>,
    feature_names: Vec<String>,
    features: Vec<FeatureHistogram>,
}

impl TryFrom<HistogramModelRepr> for HistogramModel {
    type Error = Error;

    fn try_from(repr: HistogramModelRepr) -> Result<Self> {
        let frame = Frame::new(repr.classes)?;
        let features = repr
            .features
            .into_iter()
            .map(|f| FeatureHistogram::new(f.edges, f.counts))
            .collect::<Result<Vec<_>>>()?;
        HistogramModel::from_parts(frame, repr.feature_names, features)
    }
}

impl From<HistogramModel> for HistogramModelRepr {
    fn from(model: HistogramModel) -> Self {
        HistogramModelRepr {
            classes: model.frame.labels().to_vec(),
            feature_names: model.feature_names,
            features: model.features,
        }
    }
}

impl HistogramModel {
    pub fn from_parts(frame: Frame, feature_names: Vec<String>, features: Vec<FeatureHistogram>) -> Result<Self> {
        if feature_names.len() != features.len() {
            return Err(Error::InvalidParams(format!(
                "{} feature names for {} histograms",
                feature_names.len(),
                features.len()
            )));
        }
        if let Some(h) = features.iter().find(|h| h.counts.len() != frame.len()) {
            return Err(Error::InvalidParams(format!(
                "histogram has {} classes, frame has {}",
                h.counts.len(),
                frame.len()
            )));
        }
        Ok(HistogramModel {
            frame,
            feature_names,
            features,
        })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn feature_count(&self) -> usize {
        self.features.len()
    }

    pub fn feature(&self, p: usize) -> Result<&FeatureHistogram> {
        if self.features.is_empty() {
            return Err(Error::ModelNotFitted("histogram model has no features".into()));
        }
        self.features.get(p).ok_or(Error::InvalidFeature {
            index: p,
            count: self.features.len(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("histogram model serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Equal-width histograms over each feature's observed range.
///
/// A feature whose values are all equal gets a single bin of width one
/// centred on that value.
pub fn fit_histograms(train: &TrainingSet, bins: usize) -> Result<HistogramModel> {
    if bins == 0 {
        return Err(Error::InvalidParams("bin count must be at least 1".into()));
    }
    if train.is_empty() {
        return Err(Error::EmptyTraining);
    }
    let counts = train.class_counts();
    if let Some(class) = counts.iter().position(|&c| c == 0) {
        return Err(Error::InvalidParams(format!(
            "class `{}` has no training samples",
            train.frame().label(class)
        )));
    }
    let classes = train.frame().len();
    let features = (0..train.feature_count())
        .map(|p| {
            let (lo, hi) = train
                .samples()
                .map(|(s, _)| s[p])
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
            let edges = if lo == hi {
                log::debug!("feature {p} is constant at {lo}; using a single bin");
                vec![lo - 0.5, hi + 0.5]
            } else {
                let width = (hi - lo) / bins as f64;
                let mut e: Vec<f64> = (0..bins).map(|k| lo + k as f64 * width).collect();
                e.push(hi);
                e
            };
            let mut hist = FeatureHistogram {
                counts: vec![vec![0; edges.len() - 1]; classes],
                edges,
                normalizer: 0.0,
            };
            for (s, label) in train.samples() {
                let b = hist.bin_of(s[p]);
                hist.counts[label][b] += 1;
            }
            FeatureHistogram::new(hist.edges, hist.counts)
        })
        .collect::<Result<Vec<_>>>()?;
    HistogramModel::from_parts(train.frame().clone(), train.feature_names().to_vec(), features)
}

/// Mass function of feature `p` at value `x`.
pub fn histogram_mass(model: &HistogramModel, p: usize, x: f64) -> Result<MassFunction> {
    let hist = model.feature(p)?;
    if !x.is_finite() {
        return Err(Error::InvalidArgument(format!("feature value {x} is not finite")));
    }
    let b = hist.bin_of(x);
    let frame = model.frame();
    let mut map = BTreeMap::new();
    let mut assigned = 0.0;
    for (class, counts) in hist.counts.iter().enumerate() {
        let m = counts[b] as f64 / hist.normalizer;
        assigned += m;
        *map.entry(Subset::singleton(class)).or_insert(0.0) += m;
    }
    *map.entry(frame.theta()).or_insert(0.0) += (1.0 - assigned).max(0.0);
    MassFunction::new(frame, map)
}
