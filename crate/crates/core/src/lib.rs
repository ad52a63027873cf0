pub mod algebra;
pub mod continuous;
pub mod decision;
pub mod error;
pub mod harness;
pub mod models;
pub mod rules;
pub mod sum;
pub mod texture;

pub use algebra::{Frame, MassFunction, Subset};
pub use decision::{decide, Criterion, DecisionResult};
pub use error::{Error, Result};
pub use rules::{combine, CombineOptions, Rule};
