//! JSON form of a mass function:
//! `{"frame": ["A","B","C"], "masses": {"A": 0.9, "C": 0.1}}`.

use std::fmt;

use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use super::{Frame, MassFunction, Subset};
use crate::error::{Error, Result};

struct Masses<'a>(&'a MassFunction);

impl Serialize for Masses<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let frame = self.0.frame();
        let focal = self.0.focal_elements();
        let mut map = serializer.serialize_map(Some(focal.len()))?;
        for (subset, mass) in focal {
            map.serialize_entry(&frame.format_subset(*subset), mass)?;
        }
        map.end()
    }
}

impl Serialize for MassFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("MassFunction", 2)?;
        s.serialize_field("frame", self.frame().labels())?;
        s.serialize_field("masses", &Masses(self))?;
        s.end()
    }
}

/// Keeps JSON object entries in document order, duplicates included.
struct OrderedEntries(Vec<(String, f64)>);

impl<'de> Deserialize<'de> for OrderedEntries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct EntriesVisitor;

        impl<'de> Visitor<'de> for EntriesVisitor {
            type Value = OrderedEntries;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object mapping subset keys to masses")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
                let mut entries = Vec::new();
                while let Some((k, v)) = access.next_entry::<String, f64>()? {
                    entries.push((k, v));
                }
                Ok(OrderedEntries(entries))
            }
        }

        deserializer.deserialize_map(EntriesVisitor)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMass {
    frame: Vec<String>,
    masses: OrderedEntries,
}

impl RawMass {
    fn into_mass(self) -> Result<MassFunction> {
        let frame = Frame::new(self.frame)?;
        let entries = self
            .masses
            .0
            .into_iter()
            .map(|(k, v)| frame.parse_subset(&k).map(|s| (s, v)))
            .collect::<Result<Vec<(Subset, f64)>>>()?;
        if entries.iter().any(|(s, v)| s.is_empty() && *v > 0.0) {
            MassFunction::open_world(&frame, entries)
        } else {
            MassFunction::new(&frame, entries)
        }
    }
}

impl<'de> Deserialize<'de> for MassFunction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        RawMass::deserialize(deserializer)?
            .into_mass()
            .map_err(de::Error::custom)
    }
}

impl MassFunction {
    /// Parses the JSON form, surfacing invariant violations as typed errors.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawMass = serde_json::from_str(text)?;
        raw.into_mass()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("mass function serializes")
    }
}

/// Reads a mass function from a JSON file.
pub fn read_mass_file(path: &std::path::Path) -> Result<MassFunction> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    MassFunction::from_json(&text)
}
