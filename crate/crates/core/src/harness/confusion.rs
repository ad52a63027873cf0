use std::io::Write;

use serde::Serialize;

use crate::error::Result;

/// Test outcomes by true class (rows) and decided class (columns). Samples
/// whose sources were in total conflict get no decision and are counted in
/// `rejected`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfusionMatrix {
    classes: Vec<String>,
    counts: Vec<Vec<usize>>,
    rejected: Vec<usize>,
}

impl ConfusionMatrix {
    pub fn new(classes: Vec<String>) -> Self {
        let n = classes.len();
        ConfusionMatrix {
            classes,
            counts: vec![vec![0; n]; n],
            rejected: vec![0; n],
        }
    }

    pub fn record(&mut self, truth: usize, decided: Option<usize>) {
        match decided {
            Some(d) => self.counts[truth][d] += 1,
            None => self.rejected[truth] += 1,
        }
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn count(&self, truth: usize, decided: usize) -> usize {
        self.counts[truth][decided]
    }

    pub fn rejected(&self, truth: usize) -> usize {
        self.rejected[truth]
    }

    /// Test samples of class `truth`, rejected ones included.
    pub fn row_total(&self, truth: usize) -> usize {
        self.counts[truth].iter().sum::<usize>() + self.rejected[truth]
    }

    pub fn total(&self) -> usize {
        (0..self.classes.len()).map(|i| self.row_total(i)).sum()
    }

    pub fn correct(&self) -> usize {
        (0..self.classes.len()).map(|i| self.counts[i][i]).sum()
    }

    /// Percentage of class-`truth` samples decided correctly; `None` when the
    /// class has no test samples.
    pub fn class_accuracy(&self, truth: usize) -> Option<f64> {
        let total = self.row_total(truth);
        (total > 0).then(|| 100.0 * self.counts[truth][truth] as f64 / total as f64)
    }

    /// Percentage of all test samples decided correctly.
    pub fn accuracy(&self) -> Option<f64> {
        let total = self.total();
        (total > 0).then(|| 100.0 * self.correct() as f64 / total as f64)
    }

    /// Header row and column hold the class labels; the last column counts
    /// rejected samples.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        let mut header = vec!["true\\decided".to_string()];
        header.extend(self.classes.iter().cloned());
        header.push("rejected".into());
        w.write_record(&header)?;
        for (i, class) in self.classes.iter().enumerate() {
            let mut row = vec![class.clone()];
            row.extend(self.counts[i].iter().map(usize::to_string));
            row.push(self.rejected[i].to_string());
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }
}
