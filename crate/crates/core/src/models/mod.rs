//! Per-feature mass functions learned from labeled samples.

mod classify;
mod histogram;
mod knn;
mod training;

pub use classify::{classify, Classifier, MassModel};
pub use histogram::{fit_histograms, histogram_mass, FeatureHistogram, HistogramModel, DEFAULT_BINS};
pub use knn::{knn_mass, nearest_neighbours, KnnModelParams, DEFAULT_ALPHA, DEFAULT_K};
pub use training::TrainingSet;
