//! One-vs-one reduction for more than two classes with votes weighted by
//! `1 - p_e` of each pairwise classifier.

use rayon::prelude::*;

use crate::dataset::LabeledDataset;
use crate::discriminant::{Decision, LinearDiscriminant};
use crate::error::{Error, Result};
use crate::method::BinaryTrainer;

#[derive(Debug, Clone, PartialEq)]
pub struct PairClassifier {
    /// Class predicted on the `w . x >= w0` side.
    pub class_a: usize,
    pub class_b: usize,
    pub disc: LinearDiscriminant,
    pub p_e: f64,
    /// Gaussian-model Bayes error, reported in metrics.
    pub bayes_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OvoModel {
    pub k: usize,
    pub class_names: Vec<String>,
    /// Pairs `(a, b)` with `a < b`, in lexicographic order.
    pub pairs: Vec<PairClassifier>,
}

/// Index pairs `(a, b)`, `a < b`, in lexicographic order.
pub fn class_pairs(k: usize) -> Vec<(usize, usize)> {
    (0..k)
        .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
        .collect()
}

/// Fits one classifier per unordered class pair. Pairs are trained in
/// parallel; the result does not depend on scheduling.
pub fn train_ovo<T: BinaryTrainer + ?Sized>(data: &LabeledDataset, trainer: &T) -> Result<OvoModel> {
    let k = data.k();
    if k < 2 {
        return Err(Error::InvalidConfig(format!(
            "need at least two classes, found {k}"
        )));
    }
    for (label, &count) in data.class_counts().iter().enumerate() {
        if count < 2 {
            return Err(Error::EmptyClass {
                label: Some(label),
                count,
                required: 2,
            });
        }
    }
    let pairs = class_pairs(k)
        .into_par_iter()
        .map(|(a, b)| {
            let fit = trainer.fit_pair(data, a, b)?;
            Ok(PairClassifier {
                class_a: a,
                class_b: b,
                disc: fit.disc,
                p_e: fit.p_e.clamp(0.0, 1.0),
                bayes_error: fit.bayes_error,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OvoModel {
        k,
        class_names: data.all_class_names(),
        pairs,
    })
}

impl OvoModel {
    pub fn dim(&self) -> usize {
        self.pairs.first().map_or(0, |p| p.disc.dim())
    }

    /// Weighted vote totals per class.
    pub fn scores(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut scores = vec![0.0; self.k];
        for p in &self.pairs {
            let winner = match p.disc.classify(x)? {
                Decision::First => p.class_a,
                Decision::Second => p.class_b,
            };
            scores[winner] += 1.0 - p.p_e;
        }
        Ok(scores)
    }

    /// Mean Bayes error over the pairwise classifiers.
    pub fn mean_bayes_error(&self) -> f64 {
        self.pairs.iter().map(|p| p.bayes_error).sum::<f64>() / self.pairs.len() as f64
    }
}

/// Class with the largest weighted vote; exact ties go to the lower index.
pub fn predict_ovo(model: &OvoModel, x: &[f64]) -> Result<usize> {
    let scores = model.scores(x)?;
    let mut best = 0;
    for (c, &s) in scores.iter().enumerate().skip(1) {
        if s > scores[best] {
            best = c;
        }
    }
    Ok(best)
}

/// Predictions for every row of `data`.
pub fn predict_all(model: &OvoModel, data: &LabeledDataset) -> Result<Vec<usize>> {
    data.rows().map(|x| predict_ovo(model, x)).collect()
}
