//! Command-line front end. The binary is a thin wrapper around [`run`].

use std::ffi::OsString;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::baselines::SweepConfig;
use crate::benchmark::run_benchmark;
use crate::data::{self, CvPlan};
use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::gld::GldConfig;
use crate::lns::{LnsConfig, MoveRule};
use crate::method::Method;
use crate::model::{sha256_hex, ModelFile};
use crate::multiclass::{predict_ovo, train_ovo};

#[derive(Debug, Parser)]
#[command(name = "hetlda", version, about = "Bayes-error-minimising linear discriminants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write one of the synthetic Gaussian datasets as CSV.
    Generate {
        #[arg(value_enum)]
        dataset: Synthetic,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Train a model on a CSV file and save it as JSON.
    Train {
        #[arg(value_parser = parse_method)]
        method: Method,
        data: PathBuf,
        /// Zero-based index of the label column.
        #[arg(long)]
        label_col: usize,
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "model.json")]
        out: PathBuf,
        /// Random draws for the R-HLD methods.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[command(flatten)]
        tuning: TuningArgs,
    },
    /// Apply a saved model to a CSV file.
    Predict {
        model: PathBuf,
        data: PathBuf,
        /// Label column, used to report accuracy. Defaults to the last column
        /// when the file has one more column than the model has features.
        #[arg(long)]
        label_col: Option<usize>,
        #[command(flatten)]
        input: InputArgs,
        /// Prediction file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-validate several methods on a CSV file or a synthetic dataset.
    Benchmark {
        /// `d1`, `d2` or a CSV path.
        data: String,
        #[arg(long, value_delimiter = ',', default_value = "lda,gld", value_parser = parse_method)]
        methods: Vec<Method>,
        #[arg(long, default_value_t = 10)]
        folds: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Label column of a CSV input; the last column by default.
        #[arg(long)]
        label_col: Option<usize>,
        #[command(flatten)]
        input: InputArgs,
        /// Folds ignore class proportions.
        #[arg(long)]
        no_stratify: bool,
        /// Standardise features with training-fold statistics.
        #[arg(long)]
        standardize: bool,
        /// Random draws for the R-HLD methods.
        #[arg(long, default_value_t = 1000)]
        rhld_trials: usize,
        #[command(flatten)]
        tuning: TuningArgs,
        /// Report file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Synthetic {
    D1,
    D2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// The first line is a header. Detected automatically when omitted.
    #[arg(long)]
    header: bool,
}

/// Method settings shared by `train` and `benchmark`.
#[derive(Debug, Args)]
struct TuningArgs {
    /// GLD iteration cap.
    #[arg(long, default_value_t = 20)]
    max_iters: usize,
    /// GLD gradient-norm tolerance.
    #[arg(long, default_value_t = 1e-6)]
    grad_tol: f64,
    /// C-HLD grid step.
    #[arg(long, default_value_t = 0.001)]
    step: f64,
    #[arg(long, default_value_t = -2.0, allow_hyphen_values = true)]
    s_min: f64,
    #[arg(long, default_value_t = 3.0, allow_hyphen_values = true)]
    s_max: f64,
    /// Local search sweep cap.
    #[arg(long, default_value_t = 1000)]
    lns_iters: usize,
    /// Sweeps without improvement before the local search stops.
    #[arg(long, default_value_t = 100)]
    lns_early_stop: usize,
    #[arg(long, default_value_t = 0.1)]
    perturb_fraction: f64,
    /// Local search only accepts strictly improving moves.
    #[arg(long)]
    lns_strict: bool,
    /// Seed for the randomised methods.
    #[arg(long = "method-seed", default_value_t = 0)]
    method_seed: u64,
}

fn parse_method(s: &str) -> std::result::Result<Method, String> {
    s.parse::<Method>().map_err(|e| e.to_string())
}

impl TuningArgs {
    fn apply(&self, method: &Method, trials: usize, seed: u64) -> Method {
        let gld = GldConfig {
            max_iters: self.max_iters,
            grad_tol: self.grad_tol,
            ..GldConfig::default()
        };
        let sweep = SweepConfig {
            step: self.step,
            trials,
            s_range: (self.s_min, self.s_max),
            seed,
        };
        let lns = LnsConfig {
            max_iters: self.lns_iters,
            early_stop: self.lns_early_stop,
            perturb_fraction: self.perturb_fraction,
            seed,
            move_rule: if self.lns_strict {
                MoveRule::StrictDescent
            } else {
                MoveRule::BestCandidate
            },
            ..LnsConfig::default()
        };
        match method {
            Method::Lda => Method::Lda,
            Method::Chld(_) => Method::Chld(sweep),
            Method::Rhld1(_) => Method::Rhld1(sweep),
            Method::Rhld2(_) => Method::Rhld2(sweep),
            Method::Gld(_) => Method::Gld(gld),
            Method::GldLns(..) => Method::GldLns(gld, lns),
        }
    }
}

/// True when some cell of the first line, other than `label_col`, is not a
/// number.
fn looks_like_header(path: &Path, label_col: Option<usize>) -> Result<bool> {
    let mut first = String::new();
    BufReader::new(fs::File::open(path)?).read_line(&mut first)?;
    Ok(first
        .trim_end()
        .split(',')
        .enumerate()
        .any(|(i, cell)| Some(i) != label_col && cell.trim().parse::<f64>().is_err()))
}

fn has_header(input: &InputArgs, path: &Path, label_col: Option<usize>) -> Result<bool> {
    if input.header {
        Ok(true)
    } else {
        looks_like_header(path, label_col)
    }
}

/// Number of columns on the first line.
fn column_count(path: &Path) -> Result<usize> {
    let mut first = String::new();
    BufReader::new(fs::File::open(path)?).read_line(&mut first)?;
    Ok(first.trim_end().split(',').count())
}

fn write_or_print(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_generate(
    dataset: Synthetic,
    seed: u64,
    out: Option<&Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<()> {
    let data = match dataset {
        Synthetic::D1 => data::generate_d1(seed),
        Synthetic::D2 => data::generate_d2(seed),
    };
    let mut buf = Vec::new();
    data::write_csv(&data, &mut buf, false)?;
    write_or_print(out, std::str::from_utf8(&buf).expect("csv is utf-8"), stdout)?;
    let log: &mut dyn Write = if out.is_some() { stdout } else { stderr };
    writeln!(
        log,
        "n = {}, d = {}, class counts = {:?}",
        data.n(),
        data.d(),
        data.class_counts()
    )?;
    Ok(())
}

fn cmd_train(
    method: &Method,
    path: &Path,
    label_col: usize,
    input: &InputArgs,
    out: &Path,
    seed: u64,
    stdout: &mut dyn Write,
) -> Result<()> {
    let bytes = fs::read(path)?;
    let header = has_header(input, path, Some(label_col))?;
    let data = data::read_table(bytes.as_slice(), header, Some(label_col))?.into_dataset()?;
    let start = Instant::now();
    let model = train_ovo(&data, method)?;
    let elapsed = start.elapsed().as_secs_f64();
    let file = ModelFile::new(&model, method, Some(sha256_hex(&bytes)), seed);
    file.save(out)?;
    writeln!(
        stdout,
        "trained {} on {} rows, {} features, {} classes in {:.3} s",
        method,
        data.n(),
        data.d(),
        data.k(),
        elapsed
    )?;
    for p in &model.pairs {
        writeln!(
            stdout,
            "  {} vs {}: p_e = {:.6}",
            model.class_names[p.class_a], model.class_names[p.class_b], p.p_e
        )?;
    }
    writeln!(stdout, "model written to {}", out.display())?;
    Ok(())
}

fn cmd_predict(
    model_path: &Path,
    path: &Path,
    label_col: Option<usize>,
    input: &InputArgs,
    out: Option<&Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<()> {
    let model = ModelFile::load(model_path)?.to_model()?;
    let d = model.dim();
    let label_col = match label_col {
        Some(c) => Some(c),
        None => {
            let cols = column_count(path)?;
            if cols == d + 1 {
                Some(d)
            } else {
                None
            }
        }
    };
    let header = has_header(input, path, label_col)?;
    let table = data::load_table(path, header, label_col)?;
    let found = table.rows[0].len();
    if found != d {
        return Err(Error::DimensionMismatch { expected: d, found });
    }
    let mut text = String::new();
    let mut predicted = Vec::with_capacity(table.rows.len());
    for x in &table.rows {
        let c = predict_ovo(&model, x)?;
        text.push_str(&model.class_names[c]);
        text.push('\n');
        predicted.push(&model.class_names[c]);
    }
    write_or_print(out, &text, stdout)?;
    let log: &mut dyn Write = if out.is_some() { stdout } else { stderr };
    writeln!(log, "{} predictions", predicted.len())?;
    if let Some(labels) = &table.labels {
        let correct = labels
            .iter()
            .zip(&predicted)
            .filter(|(l, p)| data::canonical_label(l) == ***p)
            .count();
        writeln!(
            log,
            "accuracy = {:.6} ({correct}/{})",
            correct as f64 / labels.len() as f64,
            labels.len()
        )?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_benchmark(
    source: &str,
    methods: &[Method],
    plan: &CvPlan,
    label_col: Option<usize>,
    input: &InputArgs,
    format: Format,
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> Result<()> {
    let data: LabeledDataset = match source.to_ascii_lowercase().as_str() {
        "d1" => data::generate_d1(plan.seed),
        "d2" => data::generate_d2(plan.seed),
        _ => {
            let path = Path::new(source);
            let col = match label_col {
                Some(c) => c,
                None => column_count(path)?.saturating_sub(1),
            };
            let header = has_header(input, path, Some(col))?;
            data::load_csv(path, header, col)?
        }
    };
    let report = run_benchmark(&data, methods, plan)?;
    let text = match format {
        Format::Text => report.to_text(),
        Format::Csv => report.to_csv(),
    };
    write_or_print(out, &text, stdout)
}

fn dispatch(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Generate { dataset, seed, out } => {
            cmd_generate(dataset, seed, out.as_deref(), stdout, stderr)
        }
        Command::Train {
            method,
            data,
            label_col,
            input,
            out,
            trials,
            tuning,
        } => {
            let method = tuning.apply(&method, trials, tuning.method_seed);
            cmd_train(&method, &data, label_col, &input, &out, tuning.method_seed, stdout)
        }
        Command::Predict {
            model,
            data,
            label_col,
            input,
            out,
        } => cmd_predict(&model, &data, label_col, &input, out.as_deref(), stdout, stderr),
        Command::Benchmark {
            data,
            methods,
            folds,
            trials,
            seed,
            format,
            label_col,
            input,
            no_stratify,
            standardize,
            rhld_trials,
            tuning,
            out,
        } => {
            let methods: Vec<Method> = methods
                .iter()
                .map(|m| tuning.apply(m, rhld_trials, tuning.method_seed))
                .collect();
            let plan = CvPlan {
                folds,
                trials,
                seed,
                stratified: !no_stratify,
                standardize,
            };
            cmd_benchmark(&data, &methods, &plan, label_col, &input, format, out.as_deref(), stdout)
        }
    }
}

/// Runs the command line `args` (including the program name) and returns the
/// process exit code: 0 on success, 1 on a runtime error, 2 on a usage error.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

/// Runs with the process arguments and standard streams.
pub fn run() -> i32 {
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    run_with(std::env::args_os(), &mut out, &mut err)
}
