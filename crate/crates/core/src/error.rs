use thiserror::Error;

/// Errors produced by the trainers, the data layer and the command-line front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error(
        "too few samples{} ({count}); at least {required} are required",
        label.map(|l| format!(" in class {l}")).unwrap_or_default()
    )]
    EmptyClass {
        label: Option<usize>,
        count: usize,
        required: usize,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("projected variance is not positive (var1 = {var1}, var2 = {var2})")]
    DegenerateProjection { var1: f64, var2: f64 },

    #[error("no real optimal threshold: radicand {radicand} is negative")]
    ComplexRoot { radicand: f64 },

    #[error("class means coincide; the discriminant direction is zero")]
    ZeroDirection,

    #[error("weight update produced the zero vector")]
    SingularUpdate,

    #[error("blend parameter is indeterminate (sigma1*z2 == sigma2*z1)")]
    Indeterminate,

    #[error("parse error at row {row}, column {col}: {msg}")]
    Parse { row: usize, col: usize, msg: String },

    #[error("row {row} has {found} columns, expected {expected}")]
    InconsistentWidth {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("cannot stratify: class {label} has {count} samples for {folds} folds")]
    InfeasibleStratification {
        label: usize,
        count: usize,
        folds: usize,
    },

    #[error("model file version {found} is not supported (expected {expected})")]
    VersionMismatch { found: u32, expected: u32 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
