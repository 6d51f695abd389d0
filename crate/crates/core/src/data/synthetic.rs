//! Two-class Gaussian benchmark sets with diagonal covariances.
//!
//! D1 (d = 8) and D2 (d = 4) share a construction: class 2 has mean `m2` and
//! covariance `diag(v2)`, class 1 has mean `m2 - shift` and identity
//! covariance, and class 2 has twice as many samples as class 1.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::dataset::LabeledDataset;
use crate::discriminant::{ClassStats, Priors};
use crate::numkit::{Matrix, Vector};

const D1_MEAN2: [f64; 8] = [3.86, 3.10, 0.84, 0.84, 1.64, 1.08, 0.26, 0.01];
const D1_VAR2: [f64; 8] = [8.41, 12.06, 0.12, 0.22, 1.49, 1.77, 0.35, 2.73];
const D1_SHIFT: f64 = 0.3;
const D1_COUNTS: (usize, usize) = (1000, 2000);

const D2_MEAN2: [f64; 4] = [-1.5, -0.75, 0.75, 1.5];
const D2_VAR2: [f64; 4] = [0.25, 0.75, 1.25, 1.75];
const D2_SHIFT: f64 = 0.75;
const D2_COUNTS: (usize, usize) = (2000, 4000);

/// One Gaussian class with diagonal covariance.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianSpec {
    pub mean: Vec<f64>,
    pub var: Vec<f64>,
    pub count: usize,
}

impl GaussianSpec {
    fn sample_into(&self, rng: &mut ChaCha8Rng, out: &mut Vec<f64>) {
        for _ in 0..self.count {
            for (m, v) in self.mean.iter().zip(&self.var) {
                let z: f64 = StandardNormal.sample(rng);
                out.push(m + v.sqrt() * z);
            }
        }
    }
}

fn pair(mean2: &[f64], var2: &[f64], shift: f64, counts: (usize, usize)) -> [GaussianSpec; 2] {
    [
        GaussianSpec {
            mean: mean2.iter().map(|m| m - shift).collect(),
            var: vec![1.0; mean2.len()],
            count: counts.0,
        },
        GaussianSpec {
            mean: mean2.to_vec(),
            var: var2.to_vec(),
            count: counts.1,
        },
    ]
}

/// Samples every class in order, labelling class `i` with `i`.
fn sample(classes: &[GaussianSpec], seed: u64) -> LabeledDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = classes[0].mean.len();
    let mut features = Vec::new();
    let mut labels = Vec::new();
    for (label, c) in classes.iter().enumerate() {
        c.sample_into(&mut rng, &mut features);
        labels.extend(std::iter::repeat_n(label, c.count));
    }
    LabeledDataset::from_flat(features, d, labels, None).expect("generator output is valid")
}

fn population(classes: &[GaussianSpec; 2]) -> (ClassStats, ClassStats, Priors) {
    let priors = Priors::from_counts(classes[0].count, classes[1].count).expect("positive counts");
    let stats = |c: &GaussianSpec, prior: f64| {
        ClassStats::new(
            Vector::from_column_slice(&c.mean),
            Matrix::from_diagonal(&Vector::from_column_slice(&c.var)),
            c.count,
            prior,
        )
        .expect("population parameters are valid")
    };
    (
        stats(&classes[0], priors.pi1),
        stats(&classes[1], priors.pi2),
        priors,
    )
}

/// 1000 class-0 and 2000 class-1 samples in 8 dimensions.
pub fn generate_d1(seed: u64) -> LabeledDataset {
    sample(&pair(&D1_MEAN2, &D1_VAR2, D1_SHIFT, D1_COUNTS), seed)
}

/// 2000 class-0 and 4000 class-1 samples in 4 dimensions.
pub fn generate_d2(seed: u64) -> LabeledDataset {
    sample(&pair(&D2_MEAN2, &D2_VAR2, D2_SHIFT, D2_COUNTS), seed)
}

/// Exact generating moments of D1 with priors from the class counts.
pub fn d1_population() -> (ClassStats, ClassStats, Priors) {
    population(&pair(&D1_MEAN2, &D1_VAR2, D1_SHIFT, D1_COUNTS))
}

pub fn d2_population() -> (ClassStats, ClassStats, Priors) {
    population(&pair(&D2_MEAN2, &D2_VAR2, D2_SHIFT, D2_COUNTS))
}
