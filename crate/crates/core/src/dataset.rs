use crate::error::{Error, Result};

/// Row-major feature matrix with dense integer class labels in `0..k`.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    features: Vec<f64>,
    labels: Vec<usize>,
    n: usize,
    d: usize,
    k: usize,
    class_names: Option<Vec<String>>,
}

impl LabeledDataset {
    /// Builds a dataset from per-row feature vectors.
    ///
    /// The class count is the length of `class_names` when given, otherwise
    /// one more than the largest label.
    pub fn new(
        rows: Vec<Vec<f64>>,
        labels: Vec<usize>,
        class_names: Option<Vec<String>>,
    ) -> Result<Self> {
        let d = rows.first().map(Vec::len).unwrap_or(0);
        let n = rows.len();
        let mut features = Vec::with_capacity(n * d);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != d {
                return Err(Error::InconsistentWidth {
                    row: i,
                    expected: d,
                    found: r.len(),
                });
            }
            features.extend(r);
        }
        Self::from_flat(features, d, labels, class_names)
    }

    /// Builds a dataset from a row-major buffer of `labels.len() * d` values.
    pub fn from_flat(
        features: Vec<f64>,
        d: usize,
        labels: Vec<usize>,
        class_names: Option<Vec<String>>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyClass {
                label: None,
                count: 0,
                required: 1,
            });
        }
        if d == 0 {
            return Err(Error::InvalidConfig("dataset has no feature columns".into()));
        }
        if features.len() != n * d {
            return Err(Error::DimensionMismatch {
                expected: n * d,
                found: features.len(),
            });
        }
        if features.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("features"));
        }
        let max_label = labels.iter().copied().max().unwrap_or(0);
        let k = match &class_names {
            Some(names) => {
                if max_label >= names.len() {
                    return Err(Error::InvalidConfig(format!(
                        "label {max_label} out of range for {} class names",
                        names.len()
                    )));
                }
                names.len()
            }
            None => max_label + 1,
        };
        Ok(Self {
            features,
            labels,
            n,
            d,
            k,
            class_names,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of classes.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.features[i * self.d..(i + 1) * self.d]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.features.chunks_exact(self.d)
    }

    pub fn label(&self, i: usize) -> usize {
        self.labels[i]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn class_names(&self) -> Option<&[String]> {
        self.class_names.as_deref()
    }

    /// Display name of a class: its given name, or the label itself.
    pub fn class_name(&self, label: usize) -> String {
        match &self.class_names {
            Some(names) => names[label].clone(),
            None => label.to_string(),
        }
    }

    /// Names for every class in label order.
    pub fn all_class_names(&self) -> Vec<String> {
        (0..self.k).map(|c| self.class_name(c)).collect()
    }

    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.k];
        for &l in &self.labels {
            counts[l] += 1;
        }
        counts
    }

    /// Indices of the rows carrying `label`, in dataset order.
    pub fn class_indices(&self, label: usize) -> Vec<usize> {
        (0..self.n).filter(|&i| self.labels[i] == label).collect()
    }

    /// Feature rows belonging to `label`.
    pub fn class_rows(&self, label: usize) -> Vec<&[f64]> {
        self.rows()
            .zip(&self.labels)
            .filter(|(_, &l)| l == label)
            .map(|(r, _)| r)
            .collect()
    }

    /// New dataset holding the given rows (in the given order). Class count and
    /// names are preserved even if some class is absent from the subset.
    pub fn subset(&self, indices: &[usize]) -> Self {
        let mut features = Vec::with_capacity(indices.len() * self.d);
        let mut labels = Vec::with_capacity(indices.len());
        for &i in indices {
            features.extend_from_slice(self.row(i));
            labels.push(self.labels[i]);
        }
        Self {
            n: labels.len(),
            d: self.d,
            k: self.k,
            features,
            labels,
            class_names: self.class_names.clone(),
        }
    }

    /// Applies `f` to every feature row in place.
    pub(crate) fn map_rows(&mut self, mut f: impl FnMut(&mut [f64])) {
        for r in self.features.chunks_exact_mut(self.d) {
            f(r);
        }
    }
}
