use std::collections::BTreeSet;
use std::io::Read;
use std::path::Path;

use crate::algebra::Frame;
use crate::error::{Error, Result};

/// Labeled feature vectors. Labels index into the frame of class names.
#[derive(Clone, Debug, PartialEq)]
pub struct TrainingSet {
    frame: Frame,
    feature_names: Vec<String>,
    samples: Vec<Vec<f64>>,
    labels: Vec<usize>,
}

impl TrainingSet {
    pub fn new(frame: Frame, feature_names: Vec<String>, samples: Vec<Vec<f64>>, labels: Vec<usize>) -> Result<Self> {
        if samples.len() != labels.len() {
            return Err(Error::InvalidArgument(format!(
                "{} samples but {} labels",
                samples.len(),
                labels.len()
            )));
        }
        let p = feature_names.len();
        for (row, sample) in samples.iter().enumerate() {
            if sample.len() != p {
                return Err(Error::InvalidArgument(format!(
                    "sample {row} has {} features, expected {p}",
                    sample.len()
                )));
            }
            if let Some(v) = sample.iter().find(|v| !v.is_finite()) {
                return Err(Error::InvalidArgument(format!("sample {row} has non-finite value {v}")));
            }
        }
        if let Some(&bad) = labels.iter().find(|&&l| l >= frame.len()) {
            return Err(Error::InvalidLabel {
                index: bad,
                count: frame.len(),
            });
        }
        Ok(TrainingSet {
            frame,
            feature_names,
            samples,
            labels,
        })
    }

    /// Reads a CSV with a header row, P numeric feature columns and a final
    /// label column. A leading column named `id` is skipped. Classes are
    /// ordered by label name.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let headers = rdr.headers()?.clone();
        let skip_id = headers.get(0).is_some_and(|h| h.eq_ignore_ascii_case("id"));
        let first = usize::from(skip_id);
        if headers.len() < first + 2 {
            return Err(Error::Parse(
                "dataset needs at least one feature column and a label column".into(),
            ));
        }
        let last = headers.len() - 1;
        let feature_names: Vec<String> = (first..last).map(|i| headers[i].to_string()).collect();

        let mut samples = Vec::new();
        let mut raw_labels = Vec::new();
        for (row, record) in rdr.records().enumerate() {
            let record = record?;
            let sample = (first..last)
                .map(|i| {
                    record[i]
                        .parse::<f64>()
                        .map_err(|e| Error::Parse(format!("row {}, column `{}`: {e}", row + 2, headers[i].trim())))
                })
                .collect::<Result<Vec<f64>>>()?;
            samples.push(sample);
            raw_labels.push(record[last].to_string());
        }
        if samples.is_empty() {
            return Err(Error::EmptyTraining);
        }
        let classes: BTreeSet<&str> = raw_labels.iter().map(String::as_str).collect();
        let frame = Frame::new(classes.iter().copied())?;
        let labels = raw_labels
            .iter()
            .map(|l| frame.index_of(l).expect("label is in frame"))
            .collect();
        TrainingSet::new(frame, feature_names, samples, labels)
    }

    pub fn from_csv_path(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_csv(file)
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn feature_count(&self) -> usize {
        self.feature_names.len()
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn sample(&self, i: usize) -> &[f64] {
        &self.samples[i]
    }

    pub fn label(&self, i: usize) -> usize {
        self.labels[i]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn samples(&self) -> impl Iterator<Item = (&[f64], usize)> {
        self.samples.iter().zip(&self.labels).map(|(s, l)| (s.as_slice(), *l))
    }

    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.frame.len()];
        for &l in &self.labels {
            counts[l] += 1;
        }
        counts
    }

    pub(crate) fn check_feature(&self, p: usize) -> Result<()> {
        if p >= self.feature_count() {
            return Err(Error::InvalidFeature {
                index: p,
                count: self.feature_count(),
            });
        }
        Ok(())
    }

    /// The samples at `indices`, in that order, on the same frame.
    pub fn select(&self, indices: &[usize]) -> TrainingSet {
        TrainingSet {
            frame: self.frame.clone(),
            feature_names: self.feature_names.clone(),
            samples: indices.iter().map(|&i| self.samples[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
        }
    }
}
