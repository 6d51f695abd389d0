//! Versioned JSON persistence for trained one-vs-one models.
//!
//! Floats are written in shortest round-trip form and parsed back exactly, so
//! a reloaded model makes the same decisions bit for bit.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::discriminant::LinearDiscriminant;
use crate::error::{Error, Result};
use crate::method::Method;
use crate::multiclass::{class_pairs, OvoModel, PairClassifier};
use crate::numkit::Vector;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairRecord {
    pub class_a: usize,
    pub class_b: usize,
    pub w: Vec<f64>,
    pub w0: f64,
    pub p_e: f64,
    pub bayes_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingMetadata {
    /// SHA-256 of the training file, hex encoded.
    pub dataset_sha256: Option<String>,
    pub config: Method,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub format_version: u32,
    pub method: String,
    pub k: usize,
    pub class_names: Vec<String>,
    pub pairs: Vec<PairRecord>,
    pub metadata: TrainingMetadata,
}

/// Hex SHA-256 digest of `bytes`.
pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl ModelFile {
    pub fn new(model: &OvoModel, method: &Method, dataset_sha256: Option<String>, seed: u64) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            method: method.name().to_owned(),
            k: model.k,
            class_names: model.class_names.clone(),
            pairs: model
                .pairs
                .iter()
                .map(|p| PairRecord {
                    class_a: p.class_a,
                    class_b: p.class_b,
                    w: p.disc.w.iter().copied().collect(),
                    w0: p.disc.w0,
                    p_e: p.p_e,
                    bayes_error: p.bayes_error,
                })
                .collect(),
            metadata: TrainingMetadata {
                dataset_sha256,
                config: method.clone(),
                seed,
            },
        }
    }

    /// Checks the structural invariants and rebuilds the in-memory model.
    pub fn to_model(&self) -> Result<OvoModel> {
        let bad = |m: String| Err(Error::InvalidModel(m));
        if self.k < 2 || self.class_names.len() != self.k {
            return bad(format!(
                "{} classes with {} names",
                self.k,
                self.class_names.len()
            ));
        }
        let expected = class_pairs(self.k);
        if self.pairs.len() != expected.len() {
            return bad(format!(
                "{} pairs stored, {} expected",
                self.pairs.len(),
                expected.len()
            ));
        }
        let d = self.pairs[0].w.len();
        if d == 0 {
            return bad("empty weight vector".into());
        }
        let mut pairs = Vec::with_capacity(expected.len());
        for (p, &(a, b)) in self.pairs.iter().zip(&expected) {
            if (p.class_a, p.class_b) != (a, b) {
                return bad(format!("pair ({}, {}) out of order", p.class_a, p.class_b));
            }
            if p.w.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: p.w.len(),
                });
            }
            if !(0.0..=1.0).contains(&p.p_e) {
                return bad(format!("p_e {} outside [0, 1]", p.p_e));
            }
            let disc = LinearDiscriminant::new(Vector::from_column_slice(&p.w), p.w0);
            if !disc.is_finite() {
                return Err(Error::NonFinite("model weights"));
            }
            pairs.push(PairClassifier {
                class_a: a,
                class_b: b,
                disc,
                p_e: p.p_e,
                bayes_error: p.bayes_error,
            });
        }
        Ok(OvoModel {
            k: self.k,
            class_names: self.class_names.clone(),
            pairs,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Parses a model, checking the format version before the schema.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        let found = value
            .get("format_version")
            .and_then(serde_json::Value::as_u64)
            .ok_or_else(|| Error::InvalidModel("missing format_version".into()))?;
        if found != u64::from(FORMAT_VERSION) {
            return Err(Error::VersionMismatch {
                found: u32::try_from(found).unwrap_or(u32::MAX),
                expected: FORMAT_VERSION,
            });
        }
        Ok(serde_json::from_value(value)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut text = self.to_json()?;
        text.push('\n');
        fs::write(path, text)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }
}
