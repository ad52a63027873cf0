use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::algebra::{Frame, Subset};

/// One conflicting combination: the focal element each source contributed
/// (in the caller's source order) and the product of their masses.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialConflict {
    pub focals: Vec<Subset>,
    pub mass: f64,
}

/// Total conflict m_Conj(∅) with its breakdown into partial conflicts.
#[derive(Clone, Debug, PartialEq)]
pub struct ConflictReport {
    frame: Frame,
    total: f64,
    partials: Vec<PartialConflict>,
}

impl ConflictReport {
    pub(crate) fn new(frame: Frame, total: f64, partials: Vec<PartialConflict>) -> Self {
        ConflictReport { frame, total, partials }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn partials(&self) -> &[PartialConflict] {
        &self.partials
    }
}

#[derive(Serialize)]
struct PartialJson {
    focals: Vec<String>,
    mass: f64,
}

impl Serialize for ConflictReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let partials: Vec<PartialJson> = self
            .partials
            .iter()
            .map(|p| PartialJson {
                focals: p.focals.iter().map(|s| self.frame.format_subset(*s)).collect(),
                mass: p.mass,
            })
            .collect();
        let mut s = serializer.serialize_struct("ConflictReport", 2)?;
        s.serialize_field("total", &self.total)?;
        s.serialize_field("partials", &partials)?;
        s.end()
    }
}
