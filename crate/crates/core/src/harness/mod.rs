//! Demos, feature extraction and the experiment runner behind the command line.

mod confusion;
pub mod demo;
mod experiment;
mod extract;
pub mod synthetic;

pub use confusion::ConfusionMatrix;
pub use demo::{run_demo, DemoReport, DEMOS, DEMO_TOLERANCE};
pub use experiment::{
    fit_model, run_experiment, stratified_split, ClassSummary, ExperimentConfig, ExperimentOutcome, ExperimentSummary,
    ModelKind,
};
pub use extract::{extract_features, parse_patch_name, write_feature_csv, Extraction, FeatureRow};
