//! Dataset input and output, the synthetic Gaussian generators and
//! cross-validation splits.

mod cv;
mod synthetic;
mod table;

pub use cv::{accuracy, kfold_split, standardize, CvPlan, Fold};
pub use synthetic::{d1_population, d2_population, generate_d1, generate_d2, GaussianSpec};
pub(crate) use table::canonical_label;
pub use table::{load_csv, load_table, parse_csv, read_table, write_csv, CsvTable};
