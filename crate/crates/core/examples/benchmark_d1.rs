//! Cross-validated comparison of every method on a D1 sample.
//!
//! A short plan by default; pass `full` for 10 folds and 20 trials.

use hetlda::benchmark::run_benchmark;
use hetlda::data::{generate_d1, CvPlan};
use hetlda::Method;

fn main() -> hetlda::Result<()> {
    let full = std::env::args().any(|a| a == "full");
    let plan = CvPlan {
        trials: if full { 20 } else { 2 },
        ..CvPlan::default()
    };
    let methods = Method::NAMES
        .iter()
        .map(|m| m.parse())
        .collect::<hetlda::Result<Vec<Method>>>()?;
    let report = run_benchmark(&generate_d1(0), &methods, &plan)?;
    print!("{}", report.to_text());
    Ok(())
}
