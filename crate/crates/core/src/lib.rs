//! Linear classifiers that minimise the Gaussian-model Bayes error for two
//! classes with unequal covariances, plus the classical and heteroscedastic
//! LDA baselines, a local search refinement for non-Gaussian data, one-vs-one
//! multiclass reduction and a cross-validation benchmark harness.

pub mod baselines;
pub mod benchmark;
pub mod cli;
pub mod data;
pub mod dataset;
pub mod discriminant;
pub mod error;
pub mod gld;
pub mod lns;
pub mod method;
pub mod model;
pub mod multiclass;
pub mod numkit;

pub use dataset::LabeledDataset;
pub use discriminant::{ClassStats, Decision, LinearDiscriminant, Priors, ProjectedStats};
pub use error::{Error, Result};
pub use method::{BinaryFit, BinaryTrainer, Method};
pub use multiclass::{predict_ovo, train_ovo, OvoModel};
