//! Frames of discernment, power-set elements, mass functions and the
//! credibility, plausibility and pignistic measures derived from them.

mod frame;
mod json;
mod mass;
mod subset;

pub use frame::{Frame, EMPTY_KEY};
pub use json::read_mass_file;
pub use mass::{ExtendedMassFunction, MassFunction, SUM_TOLERANCE, TOTAL_CONFLICT_EPS};
pub use subset::{Indices, Subset, SubsetsOf};
