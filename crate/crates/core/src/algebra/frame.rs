use std::sync::Arc;

use super::Subset;
use crate::error::{Error, Result};

/// Key used for the empty set in textual subset notation.
pub const EMPTY_KEY: &str = "EMPTY";

/// Ordered, exhaustive set of exclusive hypotheses.
///
/// Cloning is cheap; the label list is shared.
#[derive(Clone)]
pub struct Frame {
    labels: Arc<[String]>,
}

impl Frame {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyFrame);
        }
        if labels.len() > 64 {
            return Err(Error::FrameTooLarge(labels.len()));
        }
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() || label == EMPTY_KEY || label.contains('|') {
                return Err(Error::Parse(format!("invalid hypothesis label `{label}`")));
            }
            if labels[..i].contains(label) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Frame { labels: labels.into() })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Θ, the whole frame.
    pub fn theta(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn singleton(&self, label: &str) -> Result<Subset> {
        self.index_of(label)
            .map(Subset::singleton)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn contains(&self, subset: Subset) -> bool {
        subset.is_subset_of(self.theta())
    }

    /// Iterates the whole power set 2^Θ. Only sensible for small frames.
    pub fn power_set(&self) -> impl Iterator<Item = Subset> {
        self.theta().subsets()
    }

    /// Parses `"A|B"` style keys; `"EMPTY"` is ∅.
    pub fn parse_subset(&self, key: &str) -> Result<Subset> {
        let key = key.trim();
        if key == EMPTY_KEY {
            return Ok(Subset::EMPTY);
        }
        key.split('|')
            .map(|part| self.singleton(part.trim()))
            .try_fold(Subset::EMPTY, |acc, s| s.map(|s| acc.union(s)))
    }

    pub fn format_subset(&self, subset: Subset) -> String {
        if subset.is_empty() {
            return EMPTY_KEY.to_string();
        }
        subset
            .indices()
            .map(|i| self.labels[i].as_str())
            .collect::<Vec<_>>()
            .join("|")
    }

    /// A frame with one extra hypothesis appended, returning its index.
    pub fn extended(&self, label: &str) -> Result<(Frame, usize)> {
        let mut name = label.to_string();
        while self.index_of(&name).is_some() {
            name.push('\'');
        }
        let mut labels = self.labels.to_vec();
        labels.push(name);
        let frame = Frame::new(labels)?;
        let index = frame.len() - 1;
        Ok((frame, index))
    }
}

impl PartialEq for Frame {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }
}

impl Eq for Frame {}

impl std::fmt::Debug for Frame {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.labels.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_keys() {
        let frame = Frame::new(["A", "B", "C"]).unwrap();
        let ab = frame.parse_subset("A|B").unwrap();
        assert_eq!(ab.bits(), 0b011);
        assert_eq!(frame.parse_subset("B|A").unwrap(), ab);
        assert_eq!(frame.parse_subset("EMPTY").unwrap(), Subset::EMPTY);
        assert_eq!(frame.format_subset(frame.theta()), "A|B|C");
        assert_eq!(frame.format_subset(Subset::EMPTY), "EMPTY");
        assert!(matches!(frame.parse_subset("D"), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn rejects_bad_frames() {
        assert_eq!(Frame::new(Vec::<String>::new()), Err(Error::EmptyFrame));
        assert_eq!(Frame::new(["A", "A"]), Err(Error::DuplicateLabel("A".into())));
        let many: Vec<String> = (0..65).map(|i| format!("h{i}")).collect();
        assert_eq!(Frame::new(many), Err(Error::FrameTooLarge(65)));
        let max: Vec<String> = (0..64).map(|i| format!("h{i}")).collect();
        assert_eq!(Frame::new(max).unwrap().theta().len(), 64);
    }

    #[test]
    fn extension_avoids_clashes() {
        let frame = Frame::new(["e", "f"]).unwrap();
        let (ext, idx) = frame.extended("e").unwrap();
        assert_eq!(idx, 2);
        assert_eq!(ext.label(2), "e'");
    }
}
