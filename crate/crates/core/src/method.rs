//! A uniform interface over the binary training procedures.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::baselines::{train_chld, train_lda, train_rhld1, train_rhld2, SweepConfig};
use crate::dataset::LabeledDataset;
use crate::discriminant::{
    compute_class_stats, discriminant_bayes_error, training_error_count, LinearDiscriminant,
};
use crate::error::{Error, Result};
use crate::gld::{train_gld, GldConfig};
use crate::lns::{local_neighbourhood_search, LnsConfig};

/// Output of a binary trainer on one class pair.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryFit {
    pub disc: LinearDiscriminant,
    /// Error estimate used as the voting confidence `1 - p_e`.
    pub p_e: f64,
    /// Gaussian-model Bayes error of `disc` under the pair's sample moments.
    pub bayes_error: f64,
}

/// Anything that can fit a discriminant separating `class_a` (the `w . x >= w0`
/// side) from `class_b` using only the rows with those labels.
pub trait BinaryTrainer: Sync {
    fn fit_pair(&self, data: &LabeledDataset, class_a: usize, class_b: usize)
        -> Result<BinaryFit>;
}

/// The built-in trainers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Lda,
    Chld(SweepConfig),
    Rhld1(SweepConfig),
    Rhld2(SweepConfig),
    Gld(GldConfig),
    /// GLD followed by the local search on training misclassifications. The
    /// vote weight uses the training error rate of the refined rule.
    GldLns(GldConfig, LnsConfig),
}

impl Method {
    pub const NAMES: [&'static str; 6] = ["lda", "chld", "rhld1", "rhld2", "gld", "gld-lns"];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Lda => "lda",
            Method::Chld(_) => "chld",
            Method::Rhld1(_) => "rhld1",
            Method::Rhld2(_) => "rhld2",
            Method::Gld(_) => "gld",
            Method::GldLns(..) => "gld-lns",
        }
    }

    /// Copy of the method with every random seed replaced by `seed`.
    pub fn with_seed(&self, seed: u64) -> Self {
        let mut m = self.clone();
        match &mut m {
            Method::Chld(c) | Method::Rhld1(c) | Method::Rhld2(c) => c.seed = seed,
            Method::GldLns(_, l) => l.seed = seed,
            Method::Lda | Method::Gld(_) => {}
        }
        m
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    /// Parses a method name into the method with default settings.
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "lda" => Method::Lda,
            "chld" | "c-hld" => Method::Chld(SweepConfig::default()),
            "rhld1" | "r-hld-1" => Method::Rhld1(SweepConfig::default()),
            "rhld2" | "r-hld-2" => Method::Rhld2(SweepConfig::default()),
            "gld" => Method::Gld(GldConfig::default()),
            "gld-lns" | "gldlns" => Method::GldLns(GldConfig::default(), LnsConfig::default()),
            other => {
                return Err(Error::InvalidConfig(format!(
                    "unknown method {other:?}, expected one of {}",
                    Method::NAMES.join(", ")
                )))
            }
        })
    }
}

impl BinaryTrainer for Method {
    fn fit_pair(
        &self,
        data: &LabeledDataset,
        class_a: usize,
        class_b: usize,
    ) -> Result<BinaryFit> {
        let (s1, s2, priors) = compute_class_stats(data, class_a, class_b)?;
        let (disc, p_e) = match self {
            Method::Lda => {
                let f = train_lda(&s1, &s2, &priors)?;
                (f.disc, f.p_e)
            }
            Method::Chld(cfg) => {
                let f = train_chld(&s1, &s2, &priors, cfg)?;
                (f.disc, f.p_e)
            }
            Method::Rhld1(cfg) => {
                let f = train_rhld1(&s1, &s2, &priors, cfg)?;
                (f.disc, f.p_e)
            }
            Method::Rhld2(cfg) => {
                let f = train_rhld2(&s1, &s2, &priors, cfg)?;
                (f.disc, f.p_e)
            }
            Method::Gld(cfg) => {
                let f = train_gld(&s1, &s2, &priors, cfg)?;
                (f.disc, f.p_e)
            }
            Method::GldLns(gcfg, lcfg) => {
                let f = train_gld(&s1, &s2, &priors, gcfg)?;
                let r = local_neighbourhood_search(&f.disc, data, class_a, class_b, lcfg)?;
                let total = s1.count + s2.count;
                let bayes = discriminant_bayes_error(&r.disc, &s1, &s2, &priors)?;
                return Ok(BinaryFit {
                    disc: r.disc,
                    p_e: r.error_count as f64 / total as f64,
                    bayes_error: bayes,
                });
            }
        };
        Ok(BinaryFit {
            disc,
            p_e,
            bayes_error: p_e,
        })
    }
}

/// Training error rate of `disc` on the rows labelled `class_a` or `class_b`.
pub fn training_error_rate(
    disc: &LinearDiscriminant,
    data: &LabeledDataset,
    class_a: usize,
    class_b: usize,
) -> Result<f64> {
    let total = data
        .labels()
        .iter()
        .filter(|&&l| l == class_a || l == class_b)
        .count();
    if total == 0 {
        return Err(Error::EmptyClass {
            label: Some(class_a),
            count: 0,
            required: 1,
        });
    }
    Ok(training_error_count(disc, data, class_a, class_b)? as f64 / total as f64)
}
