//! Repeated cross-validation of several methods on one dataset.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;

use crate::data::{accuracy, kfold_split, standardize, CvPlan};
use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::method::Method;
use crate::multiclass::{predict_all, train_ovo};

/// Environment variable that caps the number of worker threads.
pub const THREADS_ENV: &str = "HETLDA_THREADS";

pub const CSV_HEADER: &str =
    "method,bayes_error_mean,bayes_error_std,accuracy_mean,accuracy_std,train_time_mean";

/// Outcome of training one method on one fold.
#[derive(Debug, Clone, PartialEq)]
pub struct FoldRecord {
    pub method: String,
    pub trial: usize,
    pub fold: usize,
    /// Mean Gaussian-model Bayes error over the pairwise discriminants,
    /// computed from the training split.
    pub bayes_error: f64,
    /// Accuracy on the test split.
    pub accuracy: f64,
    /// Training wall-clock time in seconds.
    pub train_time: f64,
    /// Set when training or prediction failed; the metrics are then NaN.
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MethodSummary {
    pub method: String,
    pub bayes_error_mean: f64,
    pub bayes_error_std: f64,
    pub accuracy_mean: f64,
    pub accuracy_std: f64,
    pub train_time_mean: f64,
    pub cells: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkReport {
    pub plan: CvPlan,
    pub summaries: Vec<MethodSummary>,
    pub records: Vec<FoldRecord>,
}

/// Mean and sample standard deviation. NaN for an empty slice.
fn mean_std(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

fn summarise(method: &str, records: &[&FoldRecord]) -> MethodSummary {
    let ok: Vec<_> = records.iter().filter(|r| r.failure.is_none()).collect();
    let pick = |f: fn(&FoldRecord) -> f64| ok.iter().map(|r| f(r)).collect::<Vec<_>>();
    let (bayes_error_mean, bayes_error_std) = mean_std(&pick(|r| r.bayes_error));
    let (accuracy_mean, accuracy_std) = mean_std(&pick(|r| r.accuracy));
    let (train_time_mean, _) = mean_std(&pick(|r| r.train_time));
    MethodSummary {
        method: method.to_owned(),
        bayes_error_mean,
        bayes_error_std,
        accuracy_mean,
        accuracy_std,
        train_time_mean,
        cells: records.len(),
        failures: records.len() - ok.len(),
    }
}

fn run_cell(
    data: &LabeledDataset,
    method: &Method,
    train_idx: &[usize],
    test_idx: &[usize],
    standardise: bool,
) -> Result<(f64, f64, f64)> {
    let mut train = data.subset(train_idx);
    let mut test = data.subset(test_idx);
    if standardise {
        standardize(&mut train, &mut test);
    }
    let start = Instant::now();
    let model = train_ovo(&train, method)?;
    let elapsed = start.elapsed().as_secs_f64();
    let pred = predict_all(&model, &test)?;
    Ok((model.mean_bayes_error(), accuracy(&pred, test.labels()), elapsed))
}

/// Worker count from `HETLDA_THREADS`, if set to a positive integer.
pub fn configured_threads() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&n: &usize| n > 0)
}

/// Trains and evaluates every method on every fold of every trial.
///
/// Cells run in parallel. A failing cell is recorded and excluded from the
/// averages instead of aborting the run. The seed of each randomised method is
/// derived from the plan seed, the trial and the fold, so reports are
/// reproducible apart from timings.
pub fn run_benchmark(
    data: &LabeledDataset,
    methods: &[Method],
    plan: &CvPlan,
) -> Result<BenchmarkReport> {
    if methods.is_empty() {
        return Err(Error::InvalidConfig("no methods to benchmark".into()));
    }
    let splits = kfold_split(data, plan)?;
    let jobs: Vec<(usize, usize, usize)> = (0..methods.len())
        .flat_map(|m| (0..plan.trials).flat_map(move |t| (0..plan.folds).map(move |f| (m, t, f))))
        .collect();

    let work = || {
        jobs.par_iter()
            .map(|&(m, t, f)| {
                let cell_seed = plan
                    .seed
                    .wrapping_mul(1_000_003)
                    .wrapping_add((t * plan.folds + f) as u64);
                let method = methods[m].with_seed(cell_seed);
                let fold = &splits[t][f];
                let outcome = run_cell(data, &method, &fold.train, &fold.test, plan.standardize);
                let (bayes_error, acc, time, failure) = match outcome {
                    Ok((b, a, s)) => (b, a, s, None),
                    Err(e) => (f64::NAN, f64::NAN, f64::NAN, Some(e.to_string())),
                };
                FoldRecord {
                    method: methods[m].name().to_owned(),
                    trial: t,
                    fold: f,
                    bayes_error,
                    accuracy: acc,
                    train_time: time,
                    failure,
                }
            })
            .collect::<Vec<_>>()
    };
    let records = match configured_threads() {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    };

    let per_method = plan.trials * plan.folds;
    let summaries = methods
        .iter()
        .zip(records.chunks(per_method))
        .map(|(m, chunk)| summarise(m.name(), &chunk.iter().collect::<Vec<_>>()))
        .collect();
    Ok(BenchmarkReport {
        plan: plan.clone(),
        summaries,
        records,
    })
}

impl BenchmarkReport {
    /// Copy with every timing field zeroed, for reproducibility comparisons.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        for rec in &mut r.records {
            rec.train_time = 0.0;
        }
        for s in &mut r.summaries {
            s.train_time_mean = 0.0;
        }
        r
    }

    pub fn summary(&self, method: &str) -> Option<&MethodSummary> {
        self.summaries.iter().find(|s| s.method == method)
    }

    pub fn records_for<'a>(&'a self, method: &'a str) -> impl Iterator<Item = &'a FoldRecord> + 'a {
        self.records.iter().filter(move |r| r.method == method)
    }

    /// Aligned table with accuracies in percent.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{}-fold cross-validation, {} trial(s), seed {}; Bayes error from training folds",
            self.plan.folds, self.plan.trials, self.plan.seed
        );
        let _ = writeln!(
            out,
            "{:<8} {:>21} {:>17} {:>12} {:>9}",
            "method", "bayes error", "accuracy (%)", "train (s)", "failures"
        );
        for s in &self.summaries {
            let _ = writeln!(
                out,
                "{:<8} {:>10.4} ± {:<8.4} {:>7.2} ± {:<6.2} {:>12.6} {:>9}",
                s.method,
                s.bayes_error_mean,
                s.bayes_error_std,
                100.0 * s.accuracy_mean,
                100.0 * s.accuracy_std,
                s.train_time_mean,
                format!("{}/{}", s.failures, s.cells),
            );
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for s in &self.summaries {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                s.method,
                s.bayes_error_mean,
                s.bayes_error_std,
                s.accuracy_mean,
                s.accuracy_std,
                s.train_time_mean
            );
        }
        out
    }
}
