//! Shared two-class model: class statistics, the linear discriminant, its
//! projected statistics, the Gaussian Bayes error and that error's gradient.
//!
//! Throughout, "class 1" / `s1` is the class assigned when `w . x >= w0` and
//! "class 2" / `s2` is the other one.

use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::numkit::{self, q_function, std_normal_pdf, Matrix, Vector};

/// Mean, covariance, sample count and prior of one class.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassStats {
    pub mean: Vector,
    pub cov: Matrix,
    pub count: usize,
    pub prior: f64,
}

impl ClassStats {
    pub fn new(mean: Vector, cov: Matrix, count: usize, prior: f64) -> Result<Self> {
        let d = mean.len();
        if cov.nrows() != d || cov.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: cov.nrows(),
            });
        }
        if count == 0 {
            return Err(Error::EmptyClass {
                label: None,
                count,
                required: 1,
            });
        }
        if !(prior > 0.0 && prior < 1.0) {
            return Err(Error::InvalidConfig(format!("prior {prior} outside (0, 1)")));
        }
        Ok(Self {
            mean,
            cov,
            count,
            prior,
        })
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }
}

/// Class priors of a two-class problem and their ratio `tau = pi2 / pi1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Priors {
    pub pi1: f64,
    pub pi2: f64,
    pub tau: f64,
}

impl Priors {
    pub fn new(pi1: f64) -> Result<Self> {
        if !(pi1 > 0.0 && pi1 < 1.0) {
            return Err(Error::InvalidConfig(format!("prior {pi1} outside (0, 1)")));
        }
        let pi2 = 1.0 - pi1;
        Ok(Self {
            pi1,
            pi2,
            tau: pi2 / pi1,
        })
    }

    /// Priors from relative class frequencies.
    pub fn from_counts(n1: usize, n2: usize) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return Err(Error::EmptyClass {
                label: None,
                count: n1.min(n2),
                required: 1,
            });
        }
        let total = (n1 + n2) as f64;
        let pi1 = n1 as f64 / total;
        let pi2 = n2 as f64 / total;
        Ok(Self {
            pi1,
            pi2,
            tau: n2 as f64 / n1 as f64,
        })
    }
}

/// Decision rule `class 1 if w . x >= w0, else class 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearDiscriminant {
    pub w: Vector,
    pub w0: f64,
}

/// Outcome of a binary decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    /// `w . x >= w0`.
    First,
    /// `w . x < w0`.
    Second,
}

impl LinearDiscriminant {
    pub fn new(w: Vector, w0: f64) -> Self {
        Self { w, w0 }
    }

    pub fn dim(&self) -> usize {
        self.w.len()
    }

    /// Projection `w . x`.
    pub fn score(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.w.len() {
            return Err(Error::DimensionMismatch {
                expected: self.w.len(),
                found: x.len(),
            });
        }
        Ok(self.w.iter().zip(x).map(|(a, b)| a * b).sum())
    }

    pub fn classify(&self, x: &[f64]) -> Result<Decision> {
        Ok(if self.score(x)? >= self.w0 {
            Decision::First
        } else {
            Decision::Second
        })
    }

    /// Both `w` and `w0` multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            w: &self.w * c,
            w0: self.w0 * c,
        }
    }

    /// Stacked form `[w0, w_1, ..., w_d]`.
    pub fn stacked(&self) -> Vec<f64> {
        std::iter::once(self.w0).chain(self.w.iter().copied()).collect()
    }

    pub fn from_stacked(v: &[f64]) -> Self {
        Self {
            w0: v[0],
            w: Vector::from_column_slice(&v[1..]),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.w0.is_finite() && self.w.iter().all(|v| v.is_finite())
    }
}

/// Free-function form of [`LinearDiscriminant::classify`].
pub fn classify(disc: &LinearDiscriminant, x: &[f64]) -> Result<Decision> {
    disc.classify(x)
}

/// Class statistics projected onto a discriminant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectedStats {
    pub mu1: f64,
    pub mu2: f64,
    pub var1: f64,
    pub var2: f64,
    pub z1: f64,
    pub z2: f64,
}

impl ProjectedStats {
    /// Builds projected statistics from scalar moments and a threshold.
    pub fn new(mu1: f64, mu2: f64, var1: f64, var2: f64, w0: f64) -> Result<Self> {
        if !(var1 > 1e-300 && var2 > 1e-300) || !var1.is_finite() || !var2.is_finite() {
            return Err(Error::DegenerateProjection { var1, var2 });
        }
        let mut p = Self {
            mu1,
            mu2,
            var1,
            var2,
            z1: 0.0,
            z2: 0.0,
        };
        p.set_threshold(w0);
        Ok(p)
    }

    /// Recomputes `z1`, `z2` for a new threshold.
    pub fn set_threshold(&mut self, w0: f64) {
        self.z1 = (w0 - self.mu1) / self.sd1();
        self.z2 = (w0 - self.mu2) / self.sd2();
    }

    pub fn with_threshold(mut self, w0: f64) -> Self {
        self.set_threshold(w0);
        self
    }

    pub fn sd1(&self) -> f64 {
        self.var1.sqrt()
    }

    pub fn sd2(&self) -> f64 {
        self.var2.sqrt()
    }
}

/// Per-class statistics and priors for the pair `(class_a, class_b)`, with
/// `class_a` playing the role of class 1.
pub fn compute_class_stats(
    data: &LabeledDataset,
    class_a: usize,
    class_b: usize,
) -> Result<(ClassStats, ClassStats, Priors)> {
    let rows_a = data.class_rows(class_a);
    let rows_b = data.class_rows(class_b);
    for (label, rows) in [(class_a, &rows_a), (class_b, &rows_b)] {
        if rows.len() < 2 {
            return Err(Error::EmptyClass {
                label: Some(label),
                count: rows.len(),
                required: 2,
            });
        }
    }
    let priors = Priors::from_counts(rows_a.len(), rows_b.len())?;
    let stats = |rows: &[&[f64]], prior: f64| -> Result<ClassStats> {
        let mean = numkit::mean_vector(rows)?;
        let cov = numkit::covariance_matrix(rows, &mean)?;
        Ok(ClassStats {
            mean,
            cov,
            count: rows.len(),
            prior,
        })
    };
    Ok((
        stats(&rows_a, priors.pi1)?,
        stats(&rows_b, priors.pi2)?,
        priors,
    ))
}

/// Projects both classes onto `disc`: `mu_k = w . m_k`, `var_k = w^T S_k w`.
pub fn project_stats(
    disc: &LinearDiscriminant,
    s1: &ClassStats,
    s2: &ClassStats,
) -> Result<ProjectedStats> {
    let d = disc.dim();
    for s in [s1, s2] {
        if s.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: s.dim(),
            });
        }
    }
    let w = &disc.w;
    let var1 = w.dot(&(&s1.cov * w));
    let var2 = w.dot(&(&s2.cov * w));
    ProjectedStats::new(w.dot(&s1.mean), w.dot(&s2.mean), var1, var2, disc.w0)
}

/// Gaussian-model probability of misclassification,
/// `pi1 * (1 - Q(z1)) + pi2 * Q(z2)`.
pub fn bayes_error(proj: &ProjectedStats, priors: &Priors) -> f64 {
    // 1 - Q(z) == Q(-z), without the cancellation.
    priors.pi1 * q_function(-proj.z1) + priors.pi2 * q_function(proj.z2)
}

/// Bayes error of `disc` under the Gaussian class model.
pub fn discriminant_bayes_error(
    disc: &LinearDiscriminant,
    s1: &ClassStats,
    s2: &ClassStats,
    priors: &Priors,
) -> Result<f64> {
    Ok(bayes_error(&project_stats(disc, s1, s2)?, priors))
}

/// Analytic gradient of the Bayes error with respect to `w` and `w0`.
pub fn gradient_bayes_error(
    disc: &LinearDiscriminant,
    s1: &ClassStats,
    s2: &ClassStats,
    priors: &Priors,
) -> Result<(Vector, f64)> {
    let p = project_stats(disc, s1, s2)?;
    let (sd1, sd2) = (p.sd1(), p.sd2());
    let g1 = priors.pi1 * std_normal_pdf(p.z1);
    let g2 = priors.pi2 * std_normal_pdf(p.z2);
    let w = &disc.w;
    // dz_k/dw = -(sd_k m_k + z_k S_k w) / var_k
    let dz1 = (&s1.mean * sd1 + (&s1.cov * w) * p.z1) / p.var1;
    let dz2 = (&s2.mean * sd2 + (&s2.cov * w) * p.z2) / p.var2;
    let grad_w = dz2 * g2 - dz1 * g1;
    let grad_w0 = g1 / sd1 - g2 / sd2;
    Ok((grad_w, grad_w0))
}

/// Euclidean norm of the stacked gradient `[dp/dw0, dp/dw]`.
pub fn gradient_norm(grad: &(Vector, f64)) -> f64 {
    (grad.0.norm_squared() + grad.1 * grad.1).sqrt()
}

/// Samples with label `class_a` or `class_b` that `disc` puts on the wrong side.
/// Rows of other classes are ignored.
pub fn training_error_count(
    disc: &LinearDiscriminant,
    data: &LabeledDataset,
    class_a: usize,
    class_b: usize,
) -> Result<usize> {
    if data.d() != disc.dim() {
        return Err(Error::DimensionMismatch {
            expected: disc.dim(),
            found: data.d(),
        });
    }
    let mut errors = 0;
    for (x, &l) in data.rows().zip(data.labels()) {
        let expected = if l == class_a {
            Decision::First
        } else if l == class_b {
            Decision::Second
        } else {
            continue;
        };
        if disc.classify(x)? != expected {
            errors += 1;
        }
    }
    Ok(errors)
}
