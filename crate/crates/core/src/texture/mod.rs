//! Gray-level co-occurrence texture features.

mod cooccurrence;
mod haralick;
mod patch;

pub use cooccurrence::{cooccurrence, CooccurrenceMatrix, Direction};
pub use haralick::{
    directional_features, haralick, matrix_features, TextureFeatures, FEATURE_NAMES, ZERO_VARIANCE_EPS,
};
pub use patch::{decode_pgm, read_csv_patch, read_pgm, GrayPatch, DEFAULT_LEVELS};
