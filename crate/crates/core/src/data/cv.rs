use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};

/// Repeated k-fold cross-validation protocol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CvPlan {
    pub folds: usize,
    pub trials: usize,
    pub seed: u64,
    /// Keep class proportions equal across folds.
    pub stratified: bool,
    /// Standardise features with the training fold's mean and deviation.
    pub standardize: bool,
}

impl Default for CvPlan {
    fn default() -> Self {
        Self {
            folds: 10,
            trials: 20,
            seed: 0,
            stratified: true,
            standardize: false,
        }
    }
}

impl CvPlan {
    pub fn validate(&self) -> Result<()> {
        if self.folds < 2 {
            return Err(Error::InvalidConfig(format!(
                "need at least 2 folds, got {}",
                self.folds
            )));
        }
        if self.trials == 0 {
            return Err(Error::InvalidConfig("need at least one trial".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fold {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

/// Splits for every trial: `result[trial][fold]`.
///
/// Each trial shuffles with seed `plan.seed + trial`. With stratification the
/// shuffled members of each class are dealt round-robin over the folds, with
/// the dealer continuing across classes so fold sizes stay within one of each
/// other.
pub fn kfold_split(data: &LabeledDataset, plan: &CvPlan) -> Result<Vec<Vec<Fold>>> {
    plan.validate()?;
    let k = plan.folds;
    if data.n() < k {
        return Err(Error::InvalidConfig(format!(
            "{} samples cannot fill {k} folds",
            data.n()
        )));
    }
    let groups: Vec<Vec<usize>> = if plan.stratified {
        let counts = data.class_counts();
        for (label, &count) in counts.iter().enumerate() {
            if count > 0 && count < k {
                return Err(Error::InfeasibleStratification {
                    label,
                    count,
                    folds: k,
                });
            }
        }
        (0..data.k()).map(|c| data.class_indices(c)).collect()
    } else {
        vec![(0..data.n()).collect()]
    };

    let mut trials = Vec::with_capacity(plan.trials);
    for t in 0..plan.trials {
        let mut rng = ChaCha8Rng::seed_from_u64(plan.seed.wrapping_add(t as u64));
        let mut assignment = vec![0usize; data.n()];
        let mut dealer = 0;
        for g in &groups {
            let mut g = g.clone();
            g.shuffle(&mut rng);
            for i in g {
                assignment[i] = dealer % k;
                dealer += 1;
            }
        }
        let folds = (0..k)
            .map(|f| {
                let (test, train): (Vec<usize>, Vec<usize>) =
                    (0..data.n()).partition(|&i| assignment[i] == f);
                Fold { train, test }
            })
            .collect();
        trials.push(folds);
    }
    Ok(trials)
}

/// Rescales both sets with the per-feature mean and population deviation of
/// `train`. Constant features are only centred.
pub fn standardize(train: &mut LabeledDataset, test: &mut LabeledDataset) {
    let d = train.d();
    let n = train.n() as f64;
    let mut mean = vec![0.0; d];
    for x in train.rows() {
        for (m, v) in mean.iter_mut().zip(x) {
            *m += v / n;
        }
    }
    let mut sd = vec![0.0; d];
    for x in train.rows() {
        for ((s, v), m) in sd.iter_mut().zip(x).zip(&mean) {
            *s += (v - m) * (v - m) / n;
        }
    }
    for s in &mut sd {
        *s = if *s > 0.0 { s.sqrt() } else { 1.0 };
    }
    let apply = |x: &mut [f64]| {
        for ((v, m), s) in x.iter_mut().zip(&mean).zip(&sd) {
            *v = (*v - m) / s;
        }
    };
    train.map_rows(apply);
    test.map_rows(apply);
}

/// Fraction of positions where `predicted` equals `truth`.
pub fn accuracy(predicted: &[usize], truth: &[usize]) -> f64 {
    assert_eq!(predicted.len(), truth.len(), "prediction count mismatch");
    if truth.is_empty() {
        return 0.0;
    }
    let correct = predicted.iter().zip(truth).filter(|(p, t)| p == t).count();
    correct as f64 / truth.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mix(n0: usize, n1: usize) -> LabeledDataset {
        let n = n0 + n1;
        let rows = (0..n).map(|i| vec![i as f64]).collect();
        let labels = (0..n).map(|i| usize::from(i >= n0)).collect();
        LabeledDataset::new(rows, labels, None).unwrap()
    }

    #[test]
    fn singleton_folds() {
        let plan = CvPlan {
            folds: 10,
            trials: 1,
            stratified: false,
            ..CvPlan::default()
        };
        let splits = kfold_split(&mix(5, 5), &plan).unwrap();
        assert_eq!(splits[0].len(), 10);
        for f in &splits[0] {
            assert_eq!(f.test.len(), 1);
            assert_eq!(f.train.len(), 9);
        }
    }

    #[test]
    fn partition_property() {
        let data = mix(23, 41);
        for stratified in [true, false] {
            let plan = CvPlan {
                folds: 7,
                trials: 3,
                seed: 5,
                stratified,
                ..CvPlan::default()
            };
            for trial in kfold_split(&data, &plan).unwrap() {
                let mut seen = vec![0; data.n()];
                for f in &trial {
                    assert_eq!(f.train.len() + f.test.len(), data.n());
                    for &i in &f.test {
                        seen[i] += 1;
                        assert!(!f.train.contains(&i));
                    }
                }
                assert!(seen.iter().all(|&c| c == 1));
                let sizes: Vec<_> = trial.iter().map(|f| f.test.len()).collect();
                let (lo, hi) = (sizes.iter().min().unwrap(), sizes.iter().max().unwrap());
                assert!(hi - lo <= 1);
            }
        }
    }

    #[test]
    fn stratified_ratio() {
        let data = mix(30, 70);
        let splits = kfold_split(&data, &CvPlan::default()).unwrap();
        for trial in &splits {
            for f in trial {
                let c0 = f.test.iter().filter(|&&i| data.label(i) == 0).count();
                let c1 = f.test.len() - c0;
                assert!((c0 as i64 - 3).abs() <= 1 && (c1 as i64 - 7).abs() <= 1);
            }
        }
    }

    #[test]
    fn seeded_and_trial_dependent() {
        let data = mix(20, 20);
        let plan = CvPlan {
            folds: 4,
            trials: 2,
            seed: 9,
            ..CvPlan::default()
        };
        let a = kfold_split(&data, &plan).unwrap();
        assert_eq!(a, kfold_split(&data, &plan).unwrap());
        assert_ne!(a[0], a[1]);
    }

    #[test]
    fn infeasible() {
        let plan = CvPlan::default();
        assert!(matches!(
            kfold_split(&mix(5, 50), &plan),
            Err(Error::InfeasibleStratification { label: 0, count: 5, folds: 10 })
        ));
        assert!(kfold_split(&mix(2, 2), &CvPlan { stratified: false, ..plan.clone() }).is_err());
        assert!(CvPlan { folds: 1, ..plan }.validate().is_err());
    }

    #[test]
    fn standardize_uses_train_moments() {
        let mut train =
            LabeledDataset::new(vec![vec![1.0, 5.0], vec![3.0, 5.0]], vec![0, 1], None).unwrap();
        let mut test = LabeledDataset::new(vec![vec![4.0, 6.0]], vec![0], None).unwrap();
        standardize(&mut train, &mut test);
        assert_eq!(train.row(0), &[-1.0, 0.0]);
        assert_eq!(train.row(1), &[1.0, 0.0]);
        assert_eq!(test.row(0), &[2.0, 1.0]);
    }

    #[test]
    fn accuracy_counts() {
        assert_eq!(accuracy(&[0, 1, 1, 0, 2, 2], &[0, 1, 0, 0, 2, 1]), 4.0 / 6.0);
    }
}
