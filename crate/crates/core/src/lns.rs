//! Coordinate perturbation search that refines a linear discriminant against
//! the empirical training error.
//!
//! Each sweep perturbs every entry of the stacked vector `[w0, w_1, ..., w_d]`
//! by `+delta` and `-delta` (a fixed fraction of the entry's magnitude) and
//! moves to the candidate with the fewest training misclassifications. The best
//! classifier seen over all sweeps is returned.

use serde::{Deserialize, Serialize};

use crate::dataset::LabeledDataset;
use crate::discriminant::{training_error_count, LinearDiscriminant};
use crate::error::{Error, Result};

/// How the per-sweep winner is adopted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MoveRule {
    /// Always move to the best candidate of the sweep, even if it is no better
    /// than the current solution. Allows sideways and uphill steps.
    #[default]
    BestCandidate,
    /// Move only when the best candidate strictly beats the current solution.
    /// The search ends at the first sweep without such a candidate.
    StrictDescent,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LnsConfig {
    /// Maximum number of sweeps.
    pub max_iters: usize,
    /// Sweeps without a new best error count before giving up.
    pub early_stop: usize,
    /// Perturbation size as a fraction of the entry's magnitude.
    pub perturb_fraction: f64,
    /// Absolute step for entries that are exactly zero. `None` uses
    /// `1e-3` times the largest magnitude in the current vector.
    pub zero_component_step: Option<f64>,
    /// Not used by the search itself; kept so that configurations round-trip.
    pub seed: u64,
    pub move_rule: MoveRule,
}

impl Default for LnsConfig {
    fn default() -> Self {
        Self {
            max_iters: 1000,
            early_stop: 100,
            perturb_fraction: 0.1,
            zero_component_step: None,
            seed: 0,
            move_rule: MoveRule::BestCandidate,
        }
    }
}

impl LnsConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iters == 0 || self.early_stop == 0 {
            return Err(Error::InvalidConfig(
                "max_iters and early_stop must be positive".into(),
            ));
        }
        if self.early_stop > self.max_iters {
            return Err(Error::InvalidConfig(format!(
                "early_stop {} exceeds max_iters {}",
                self.early_stop, self.max_iters
            )));
        }
        if !(self.perturb_fraction > 0.0 && self.perturb_fraction < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "perturb_fraction {} must lie in (0, 1)",
                self.perturb_fraction
            )));
        }
        if let Some(step) = self.zero_component_step {
            if !(step > 0.0 && step.is_finite()) {
                return Err(Error::InvalidConfig(format!(
                    "zero_component_step {step} must be positive"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LnsResult {
    pub disc: LinearDiscriminant,
    pub error_count: usize,
    /// Best-found error count after each sweep.
    pub history: Vec<usize>,
}

/// Training rows of the two classes, flattened, with the expected side.
struct Problem {
    rows: Vec<f64>,
    first: Vec<bool>,
    d: usize,
}

impl Problem {
    fn new(data: &LabeledDataset, class_a: usize, class_b: usize) -> Self {
        let mut rows = Vec::new();
        let mut first = Vec::new();
        for (x, &l) in data.rows().zip(data.labels()) {
            if l == class_a || l == class_b {
                rows.extend_from_slice(x);
                first.push(l == class_a);
            }
        }
        Self {
            rows,
            first,
            d: data.d(),
        }
    }

    fn scores(&self, w: &[f64]) -> Vec<f64> {
        self.rows
            .chunks_exact(self.d)
            .map(|x| x.iter().zip(w).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Errors of the candidate that moves entry `i` of the stacked vector by
    /// `step`, evaluated from the current projections.
    fn perturbed_errors(&self, scores: &[f64], w0: f64, i: usize, step: f64) -> usize {
        let mut errors = 0;
        for (j, (&s, &first)) in scores.iter().zip(&self.first).enumerate() {
            let (s, t) = if i == 0 {
                (s, w0 + step)
            } else {
                (s + step * self.rows[j * self.d + i - 1], w0)
            };
            if (s >= t) != first {
                errors += 1;
            }
        }
        errors
    }
}

fn step_sizes(v: &[f64], cfg: &LnsConfig) -> Vec<f64> {
    let zero_step = cfg
        .zero_component_step
        .unwrap_or_else(|| 1e-3 * v.iter().fold(0.0_f64, |m, x| m.max(x.abs())));
    v.iter()
        .map(|x| {
            if *x == 0.0 {
                zero_step
            } else {
                cfg.perturb_fraction * x.abs()
            }
        })
        .collect()
}

/// Runs the search from `init` on the rows of `data` labelled `class_a`
/// (expected on the `w . x >= w0` side) or `class_b`. Other rows are ignored.
///
/// Candidates are ranked by their error count; ties go to the lowest entry
/// index with `+delta` before `-delta`.
pub fn local_neighbourhood_search(
    init: &LinearDiscriminant,
    data: &LabeledDataset,
    class_a: usize,
    class_b: usize,
    cfg: &LnsConfig,
) -> Result<LnsResult> {
    cfg.validate()?;
    if data.d() != init.dim() {
        return Err(Error::DimensionMismatch {
            expected: init.dim(),
            found: data.d(),
        });
    }
    if !init.is_finite() {
        return Err(Error::NonFinite("initial discriminant"));
    }
    let problem = Problem::new(data, class_a, class_b);

    let mut current = init.stacked();
    let mut current_errors = training_error_count(init, data, class_a, class_b)?;
    let mut best = current.clone();
    let mut best_errors = current_errors;
    let mut history = Vec::new();
    let mut stale = 0;

    for _ in 0..cfg.max_iters {
        if best_errors == 0 {
            break;
        }
        let scores = problem.scores(&current[1..]);
        let steps = step_sizes(&current, cfg);
        let mut winner: Option<(usize, f64, usize)> = None;
        for (i, &delta) in steps.iter().enumerate() {
            if delta == 0.0 {
                continue;
            }
            for step in [delta, -delta] {
                let e = problem.perturbed_errors(&scores, current[0], i, step);
                if winner.is_none_or(|(_, _, we)| e < we) {
                    winner = Some((i, step, e));
                }
            }
        }
        let Some((i, step, approx)) = winner else {
            break;
        };
        if cfg.move_rule == MoveRule::StrictDescent && approx >= current_errors {
            history.push(best_errors);
            break;
        }
        current[i] += step;
        // The ranking above used incrementally updated projections; the count
        // that is kept comes from a fresh evaluation of the adopted vector.
        current_errors =
            training_error_count(&LinearDiscriminant::from_stacked(&current), data, class_a, class_b)?;
        if current_errors < best_errors {
            best_errors = current_errors;
            best.clone_from(&current);
            stale = 0;
        } else {
            stale += 1;
        }
        history.push(best_errors);
        if stale >= cfg.early_stop {
            break;
        }
    }

    Ok(LnsResult {
        disc: LinearDiscriminant::from_stacked(&best),
        error_count: best_errors,
        history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::Vector;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn four_points() -> LabeledDataset {
        // Label 0 is expected on the w . x >= w0 side.
        LabeledDataset::new(
            vec![vec![0.0], vec![1.0], vec![2.0], vec![3.0]],
            vec![1, 1, 0, 0],
            None,
        )
        .unwrap()
    }

    #[test]
    fn four_point_example_reaches_zero() {
        let data = four_points();
        let init = LinearDiscriminant::new(Vector::from_vec(vec![1.0]), 1.0);
        assert_eq!(training_error_count(&init, &data, 0, 1).unwrap(), 1);
        let r = local_neighbourhood_search(&init, &data, 0, 1, &LnsConfig::default()).unwrap();
        assert_eq!(r.error_count, 0);
        assert_eq!(training_error_count(&r.disc, &data, 0, 1).unwrap(), 0);
        // The first candidate, w0 + 0.1, already separates the points.
        assert_eq!(r.disc.w0, 1.1);
        assert_eq!(r.disc.w[0], 1.0);
    }

    #[test]
    fn perfect_init_is_returned_unchanged() {
        let data = four_points();
        let init = LinearDiscriminant::new(Vector::from_vec(vec![2.0]), 3.0);
        let r = local_neighbourhood_search(&init, &data, 0, 1, &LnsConfig::default()).unwrap();
        assert_eq!(r.error_count, 0);
        assert_eq!(r.disc, init);
    }

    fn noisy(seed: u64, n: usize, d: usize) -> LabeledDataset {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for i in 0..n {
            let l = i % 2;
            let shift = if l == 0 { 0.6 } else { -0.6 };
            rows.push(
                (0..d)
                    .map(|_| rng.random_range(-1.0..1.0) + shift)
                    .collect(),
            );
            labels.push(l);
        }
        LabeledDataset::new(rows, labels, None).unwrap()
    }

    #[test]
    fn never_worse_than_init_and_history_monotone() {
        for seed in 0..10 {
            let data = noisy(seed, 60, 3);
            let init = LinearDiscriminant::new(Vector::from_vec(vec![0.3, -0.5, 1.0]), 0.4);
            let start = training_error_count(&init, &data, 0, 1).unwrap();
            let cfg = LnsConfig {
                max_iters: 200,
                early_stop: 20,
                ..LnsConfig::default()
            };
            let r = local_neighbourhood_search(&init, &data, 0, 1, &cfg).unwrap();
            assert!(r.error_count <= start);
            assert_eq!(
                training_error_count(&r.disc, &data, 0, 1).unwrap(),
                r.error_count
            );
            assert!(r.history.windows(2).all(|w| w[1] <= w[0]));
            assert!(r.history.len() <= cfg.max_iters);
        }
    }

    #[test]
    fn strict_descent_is_idempotent() {
        let cfg = LnsConfig {
            move_rule: MoveRule::StrictDescent,
            ..LnsConfig::default()
        };
        let data = noisy(3, 80, 2);
        let init = LinearDiscriminant::new(Vector::from_vec(vec![1.0, 0.2]), -0.1);
        let once = local_neighbourhood_search(&init, &data, 0, 1, &cfg).unwrap();
        let twice = local_neighbourhood_search(&once.disc, &data, 0, 1, &cfg).unwrap();
        assert_eq!(twice.disc, once.disc);
        assert_eq!(twice.error_count, once.error_count);
    }

    #[test]
    fn scale_gives_same_error_count() {
        let data = noisy(9, 50, 2);
        let init = LinearDiscriminant::new(Vector::from_vec(vec![0.5, 0.25]), 0.125);
        let cfg = LnsConfig {
            max_iters: 100,
            early_stop: 10,
            ..LnsConfig::default()
        };
        let base = local_neighbourhood_search(&init, &data, 0, 1, &cfg).unwrap();
        // Powers of two keep the scaled arithmetic exact.
        for c in [0.25, 4.0, 1024.0] {
            let r = local_neighbourhood_search(&init.scaled(c), &data, 0, 1, &cfg).unwrap();
            assert_eq!(r.error_count, base.error_count);
        }
    }

    #[test]
    fn zero_entries_move() {
        let data = LabeledDataset::new(
            vec![vec![0.0, -1.0], vec![0.0, 1.0]],
            vec![0, 1],
            None,
        )
        .unwrap();
        // w = [1, 0], w0 = 0 puts both points on the first side.
        let init = LinearDiscriminant::new(Vector::from_vec(vec![1.0, 0.0]), 0.0);
        let r = local_neighbourhood_search(&init, &data, 0, 1, &LnsConfig::default()).unwrap();
        assert_eq!(r.error_count, 0);
    }

    #[test]
    fn config_and_dimension_errors() {
        let data = four_points();
        let init = LinearDiscriminant::new(Vector::from_vec(vec![1.0, 1.0]), 0.0);
        assert!(matches!(
            local_neighbourhood_search(&init, &data, 0, 1, &LnsConfig::default()),
            Err(Error::DimensionMismatch { .. })
        ));
        let init = LinearDiscriminant::new(Vector::from_vec(vec![1.0]), 0.0);
        let bad = LnsConfig {
            early_stop: 2000,
            ..LnsConfig::default()
        };
        assert!(local_neighbourhood_search(&init, &data, 0, 1, &bad).is_err());
        let bad = LnsConfig {
            perturb_fraction: 1.5,
            ..LnsConfig::default()
        };
        assert!(bad.validate().is_err());
    }
}
