//! Gaussian Linear Discriminant: a fixed-point iteration that drives the
//! Gaussian-model Bayes error of a linear rule to a stationary point.
//!
//! Each pass solves for the threshold that minimises the error along the
//! current `w` in closed form, then re-solves for `w` from the first-order
//! conditions with the resulting standardised thresholds held fixed:
//!
//! ```text
//! w0 = (mu2 var1 - mu1 var2 + sd1 sd2 sqrt(rad)) / (var1 - var2)
//! rad = (mu1 - mu2)^2 + 2 (var1 - var2) ln(tau sd1 / sd2)
//! w  = (z2/sd2 S2 - z1/sd1 S1)^-1 (m1 - m2)
//! ```
//!
//! The iterate with the smallest Bayes error is returned.

use serde::{Deserialize, Serialize};

use crate::discriminant::{
    bayes_error, gradient_bayes_error, gradient_norm, project_stats, ClassStats,
    LinearDiscriminant, Priors, ProjectedStats,
};
use crate::error::{Error, Result};
use crate::numkit::{solve_symmetric, Vector};

/// Relative gap below which the two projected variances are treated as equal.
pub const DEFAULT_VARIANCE_EQUALITY_TOL: f64 = 1e-12;

/// Slack on the second-order condition `z2/sd2 >= z1/sd1`.
pub const SECOND_ORDER_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GldConfig {
    /// Iteration cap.
    pub max_iters: usize,
    /// Stop once the gradient norm is at or below this value.
    pub grad_tol: f64,
    /// Stop once successive Bayes errors differ by at most this for
    /// `patience` consecutive iterations. Disabled when `None`.
    pub objective_tol: Option<f64>,
    /// Stop once successive `|w|` differ by at most this for `patience`
    /// consecutive iterations. Disabled when `None`.
    pub weight_tol: Option<f64>,
    pub patience: usize,
    pub variance_equality_tol: f64,
}

impl Default for GldConfig {
    fn default() -> Self {
        Self {
            max_iters: 20,
            grad_tol: 1e-6,
            objective_tol: None,
            weight_tol: None,
            patience: 3,
            variance_equality_tol: DEFAULT_VARIANCE_EQUALITY_TOL,
        }
    }
}

impl GldConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v > 0.0 && v.is_finite();
        if self.max_iters == 0 || self.patience == 0 {
            return Err(Error::InvalidConfig(
                "max_iters and patience must be at least 1".into(),
            ));
        }
        if !positive(self.grad_tol) || !positive(self.variance_equality_tol) {
            return Err(Error::InvalidConfig("tolerances must be positive".into()));
        }
        if self.objective_tol.is_some_and(|t| !positive(t))
            || self.weight_tol.is_some_and(|t| !positive(t))
        {
            return Err(Error::InvalidConfig("tolerances must be positive".into()));
        }
        Ok(())
    }
}

/// Why the iteration stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    Gradient,
    Objective,
    Weight,
    IterationCap,
    /// No real optimal threshold for the current `w`.
    ComplexRoot,
    /// A projected variance collapsed to zero.
    DegenerateProjection,
    /// The weight update produced an unusable vector.
    SingularUpdate,
    /// The very first threshold solve failed; the returned rule uses the
    /// pooled-variance threshold along the Fisher direction.
    Fallback,
}

impl StopReason {
    /// True for the clean termination criteria.
    pub fn is_regular(self) -> bool {
        matches!(
            self,
            Self::Gradient | Self::Objective | Self::Weight | Self::IterationCap
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GldIterate {
    pub w: Vector,
    pub w0: f64,
    pub p_e: f64,
    pub grad_norm: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GldTrace {
    pub iterates: Vec<GldIterate>,
    pub converged_by: StopReason,
    pub best_index: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GldFit {
    pub disc: LinearDiscriminant,
    pub p_e: f64,
    pub trace: GldTrace,
}

fn radicand(mu1: f64, mu2: f64, var1: f64, var2: f64, tau: f64) -> f64 {
    let dmu = mu1 - mu2;
    dmu * dmu + 2.0 * (var1 - var2) * (tau * (var1 / var2).sqrt()).ln()
}

/// Both stationary thresholds `(w0_plus, w0_minus)` of the projected Bayes
/// error when `var1 != var2`.
///
/// The roots of `(var1 - var2) w0^2 - 2 b w0 + c = 0` are evaluated in the
/// cancellation-free form: `(b + s) / a` or `c / (b - s)` depending on the
/// sign of `b`.
pub fn threshold_roots(mu1: f64, mu2: f64, var1: f64, var2: f64, tau: f64) -> Result<(f64, f64)> {
    check_threshold_inputs(var1, var2, tau)?;
    let a = var1 - var2;
    if a == 0.0 {
        return Err(Error::InvalidConfig(
            "threshold roots need unequal variances".into(),
        ));
    }
    let rad = radicand(mu1, mu2, var1, var2, tau);
    if !(rad >= 0.0) {
        return Err(Error::ComplexRoot { radicand: rad });
    }
    let (sd1, sd2) = (var1.sqrt(), var2.sqrt());
    let log_term = (tau * sd1 / sd2).ln();
    let b = mu2 * var1 - mu1 * var2;
    let c = var1 * mu2 * mu2 - var2 * mu1 * mu1 - 2.0 * log_term * var1 * var2;
    let s = sd1 * sd2 * rad.sqrt();
    let plus = if b >= 0.0 { (b + s) / a } else { c / (b - s) };
    let minus = if b >= 0.0 {
        if b + s == 0.0 {
            (b - s) / a
        } else {
            c / (b + s)
        }
    } else {
        (b - s) / a
    };
    Ok((plus, minus))
}

fn check_threshold_inputs(var1: f64, var2: f64, tau: f64) -> Result<()> {
    if !(var1 > 0.0 && var2 > 0.0) || !var1.is_finite() || !var2.is_finite() {
        return Err(Error::DegenerateProjection { var1, var2 });
    }
    if !(tau > 0.0) || !tau.is_finite() {
        return Err(Error::InvalidConfig(format!("prior ratio {tau} must be positive")));
    }
    Ok(())
}

/// Threshold minimising the projected Bayes error for fixed projected moments.
///
/// Uses the `+sqrt` stationary root, the only one satisfying the second-order
/// condition. When the variances agree to within `variance_equality_tol`
/// (relative), the equal-variance solution
/// `(mu1 + mu2)/2 + var ln(tau) / (mu1 - mu2)` is returned instead.
pub fn solve_threshold(
    mu1: f64,
    mu2: f64,
    var1: f64,
    var2: f64,
    tau: f64,
    variance_equality_tol: f64,
) -> Result<f64> {
    check_threshold_inputs(var1, var2, tau)?;
    if (var1 - var2).abs() <= variance_equality_tol * var1.max(var2) {
        let mid = 0.5 * (mu1 + mu2);
        if mu1 == mu2 {
            return Ok(mid);
        }
        let var = 0.5 * (var1 + var2);
        return Ok(mid + var * tau.ln() / (mu1 - mu2));
    }
    threshold_roots(mu1, mu2, var1, var2, tau).map(|(plus, _)| plus)
}

/// Second-order condition for a minimum in `w0`: `z2/sd2 >= z1/sd1`.
pub fn second_order_holds(proj: &ProjectedStats) -> bool {
    proj.z2 / proj.sd2() >= proj.z1 / proj.sd1() - SECOND_ORDER_SLACK
}

/// Fisher direction `(n1 S1 + n2 S2)^-1 (m1 - m2)`.
pub fn fisher_init(s1: &ClassStats, s2: &ClassStats) -> Result<Vector> {
    let diff = &s1.mean - &s2.mean;
    if diff.iter().all(|v| *v == 0.0) {
        return Err(Error::ZeroDirection);
    }
    let scatter = &s1.cov * s1.count as f64 + &s2.cov * s2.count as f64;
    let w = solve_symmetric(&scatter, &diff)?;
    if w.iter().all(|v| *v == 0.0) {
        return Err(Error::ZeroDirection);
    }
    Ok(w)
}

/// Weight update `(z2/sd2 S2 - z1/sd1 S1)^-1 (m1 - m2)`.
pub fn update_weights(s1: &ClassStats, s2: &ClassStats, proj: &ProjectedStats) -> Result<Vector> {
    let blend = &s2.cov * (proj.z2 / proj.sd2()) - &s1.cov * (proj.z1 / proj.sd1());
    let w = solve_symmetric(&blend, &(&s1.mean - &s2.mean))?;
    if w.iter().all(|v| *v == 0.0) {
        return Err(Error::SingularUpdate);
    }
    Ok(w)
}

/// Blend parameter `s = -sd2 z1 / (sd1 z2 - sd2 z1)` expressing the current
/// solution in the one-parameter family `[s S2 + (1 - s) S1]^-1 (m1 - m2)`.
/// Unbounded in general.
pub fn recover_s(proj: &ProjectedStats) -> Result<f64> {
    let (sd1, sd2) = (proj.sd1(), proj.sd2());
    let denom = sd1 * proj.z2 - sd2 * proj.z1;
    if denom == 0.0 {
        return Err(Error::Indeterminate);
    }
    Ok(-sd2 * proj.z1 / denom)
}

fn pooled_threshold(proj: &ProjectedStats, priors: &Priors) -> f64 {
    let mid = 0.5 * (proj.mu1 + proj.mu2);
    if proj.mu1 == proj.mu2 {
        return mid;
    }
    let var = priors.pi1 * proj.var1 + priors.pi2 * proj.var2;
    mid + var * priors.tau.ln() / (proj.mu1 - proj.mu2)
}

/// Runs the GLD iteration from the Fisher direction and returns the iterate
/// with the smallest Bayes error.
pub fn train_gld(
    s1: &ClassStats,
    s2: &ClassStats,
    priors: &Priors,
    cfg: &GldConfig,
) -> Result<GldFit> {
    cfg.validate()?;
    let mut w = fisher_init(s1, s2)?;
    let mut iterates: Vec<GldIterate> = Vec::with_capacity(cfg.max_iters);
    let mut stop = StopReason::IterationCap;
    let mut objective_streak = 0;
    let mut weight_streak = 0;

    for k in 0..cfg.max_iters {
        let proj = match project_stats(&LinearDiscriminant::new(w.clone(), 0.0), s1, s2) {
            Ok(p) => p,
            Err(Error::DegenerateProjection { .. }) if !iterates.is_empty() => {
                stop = StopReason::DegenerateProjection;
                break;
            }
            Err(e) => return Err(e),
        };
        let w0 = match solve_threshold(
            proj.mu1,
            proj.mu2,
            proj.var1,
            proj.var2,
            priors.tau,
            cfg.variance_equality_tol,
        ) {
            Ok(w0) if w0.is_finite() => w0,
            Ok(_) | Err(Error::ComplexRoot { .. }) => {
                stop = StopReason::ComplexRoot;
                break;
            }
            Err(e) => return Err(e),
        };
        let proj = proj.with_threshold(w0);
        let p_e = bayes_error(&proj, priors);
        let disc = LinearDiscriminant::new(w.clone(), w0);
        let grad_norm = gradient_norm(&gradient_bayes_error(&disc, s1, s2, priors)?);

        if let Some(prev) = iterates.last() {
            match cfg.objective_tol {
                Some(tol) if (p_e - prev.p_e).abs() <= tol => objective_streak += 1,
                _ => objective_streak = 0,
            }
            match cfg.weight_tol {
                Some(tol) if (w.norm() - prev.w.norm()).abs() <= tol => weight_streak += 1,
                _ => weight_streak = 0,
            }
        }
        iterates.push(GldIterate {
            w: w.clone(),
            w0,
            p_e,
            grad_norm,
        });

        if grad_norm <= cfg.grad_tol {
            stop = StopReason::Gradient;
            break;
        }
        if objective_streak >= cfg.patience {
            stop = StopReason::Objective;
            break;
        }
        if weight_streak >= cfg.patience {
            stop = StopReason::Weight;
            break;
        }
        if k + 1 == cfg.max_iters {
            stop = StopReason::IterationCap;
            break;
        }
        w = match update_weights(s1, s2, &proj) {
            Ok(next) if next.iter().all(|v| v.is_finite()) => next,
            Ok(_) | Err(Error::SingularUpdate) | Err(Error::NonFinite(_)) => {
                stop = StopReason::SingularUpdate;
                break;
            }
            Err(e) => return Err(e),
        };
    }

    if iterates.is_empty() {
        // The threshold solve failed on the Fisher direction itself.
        let proj = project_stats(&LinearDiscriminant::new(w.clone(), 0.0), s1, s2)?;
        let w0 = pooled_threshold(&proj, priors);
        let proj = proj.with_threshold(w0);
        let disc = LinearDiscriminant::new(w.clone(), w0);
        let grad_norm = gradient_norm(&gradient_bayes_error(&disc, s1, s2, priors)?);
        iterates.push(GldIterate {
            w,
            w0,
            p_e: bayes_error(&proj, priors),
            grad_norm,
        });
        stop = StopReason::Fallback;
    }

    let best_index = iterates
        .iter()
        .enumerate()
        .fold(0, |best, (i, it)| if it.p_e < iterates[best].p_e { i } else { best });
    let best = &iterates[best_index];
    Ok(GldFit {
        disc: LinearDiscriminant::new(best.w.clone(), best.w0),
        p_e: best.p_e,
        trace: GldTrace {
            converged_by: stop,
            best_index,
            iterates,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discriminant::{bayes_error, Priors};
    use crate::numkit::Matrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const TOL: f64 = DEFAULT_VARIANCE_EQUALITY_TOL;

    fn v(x: &[f64]) -> Vector {
        Vector::from_column_slice(x)
    }

    // Independent oracle: bisection on the stationarity equation
    // ((w0-mu2)/sd2)^2 - ((w0-mu1)/sd1)^2 - 2 ln(tau sd1/sd2) = 0, then keep the
    // bracketed root where the second derivative of the Bayes error is >= 0.
    fn oracle_threshold(mu1: f64, mu2: f64, var1: f64, var2: f64, tau: f64) -> f64 {
        let (sd1, sd2) = (var1.sqrt(), var2.sqrt());
        let f = |t: f64| {
            ((t - mu2) / sd2).powi(2) - ((t - mu1) / sd1).powi(2) - 2.0 * (tau * sd1 / sd2).ln()
        };
        let h = |t: f64| {
            let (z1, z2) = ((t - mu1) / sd1, (t - mu2) / sd2);
            -z1 / var1 * (-z1 * z1 / 2.0).exp() + tau * z2 / var2 * (-z2 * z2 / 2.0).exp()
        };
        let (lo, hi, steps) = (-50.0, 50.0, 100_000);
        let step = (hi - lo) / steps as f64;
        let mut roots = vec![];
        for i in 0..steps {
            let (mut a, mut b) = (lo + i as f64 * step, lo + (i + 1) as f64 * step);
            if f(a).signum() == f(b).signum() {
                continue;
            }
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                if f(a).signum() == f(m).signum() {
                    a = m;
                } else {
                    b = m;
                }
            }
            roots.push(0.5 * (a + b));
        }
        let minima: Vec<f64> = roots.into_iter().filter(|&r| h(r) >= 0.0).collect();
        assert_eq!(minima.len(), 1, "oracle found {minima:?}");
        minima[0]
    }

    #[test]
    fn threshold_examples() {
        let w0 = solve_threshold(4.0, 0.0, 4.0, 1.0, 1.0, TOL).unwrap();
        assert!((w0 - oracle_threshold(4.0, 0.0, 4.0, 1.0, 1.0)).abs() < 1e-9);
        assert!((w0 - 1.659_91).abs() < 1e-5);

        let w0 = solve_threshold(0.0, 4.0, 1.0, 4.0, 1.0, TOL).unwrap();
        assert!((w0 - oracle_threshold(0.0, 4.0, 1.0, 4.0, 1.0)).abs() < 1e-9);
        assert!((w0 - -4.326_58).abs() < 1e-5);

        assert_eq!(solve_threshold(1.0, -1.0, 1.0, 1.0, 1.0, TOL).unwrap(), 0.0);
        assert_eq!(solve_threshold(2.0, 2.0, 1.0, 1.0, 3.0, TOL).unwrap(), 2.0);
    }

    #[test]
    fn threshold_complex_root() {
        // var1 < var2 while the log term is strongly positive.
        let r = solve_threshold(0.1, 0.0, 1.0, 4.0, 20.0, TOL);
        assert!(matches!(r, Err(Error::ComplexRoot { .. })));
    }

    #[test]
    fn threshold_homoscedastic_continuity() {
        let (mu1, mu2, var, tau) = (1.3, -0.4, 2.0, 1.7);
        let limit = solve_threshold(mu1, mu2, var, var, tau, TOL).unwrap();
        let expected = 0.5 * (mu1 + mu2) + var * tau.ln() / (mu1 - mu2);
        assert!((limit - expected).abs() < 1e-12);
        let (plus, _) = threshold_roots(mu1, mu2, var, var * (1.0 + 1e-8), tau).unwrap();
        assert!((plus - limit).abs() < 1e-6);
        let near = solve_threshold(mu1, mu2, var, var * (1.0 + 1e-8), tau, TOL).unwrap();
        assert!((near - limit).abs() < 1e-6);
    }

    #[test]
    fn threshold_is_local_minimum() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut checked = 0;
        while checked < 300 {
            let mu1 = rng.random_range(-3.0..3.0);
            let mu2 = rng.random_range(-3.0..3.0);
            let var1 = rng.random_range(0.2..4.0);
            let var2 = rng.random_range(0.2..4.0);
            let pi1 = rng.random_range(0.15..0.85);
            let priors = Priors::new(pi1).unwrap();
            let Ok(w0) = solve_threshold(mu1, mu2, var1, var2, priors.tau, TOL) else {
                continue;
            };
            let proj = ProjectedStats::new(mu1, mu2, var1, var2, w0).unwrap();
            let best = bayes_error(&proj, &priors);
            let scale = (mu1 - mu2).abs() + var1.sqrt() + var2.sqrt();
            for delta in [1e-3, 1e-2] {
                for sign in [-1.0, 1.0] {
                    let other = bayes_error(&proj.with_threshold(w0 + sign * delta * scale), &priors);
                    assert!(best <= other + 1e-15, "{best} > {other}");
                }
            }
            checked += 1;
        }
    }

    #[test]
    fn root_selection_theorem() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 1000 {
            let mu1 = rng.random_range(-5.0..5.0);
            let mu2 = rng.random_range(-5.0..5.0);
            let var1 = rng.random_range(0.1..5.0);
            let var2 = rng.random_range(0.1..5.0);
            let tau = rng.random_range(0.2..5.0);
            let Ok((plus, minus)) = threshold_roots(mu1, mu2, var1, var2, tau) else {
                continue;
            };
            if radicand(mu1, mu2, var1, var2, tau) < 1e-6 {
                continue;
            }
            let p = ProjectedStats::new(mu1, mu2, var1, var2, plus).unwrap();
            let m = ProjectedStats::new(mu1, mu2, var1, var2, minus).unwrap();
            assert!(second_order_holds(&p));
            assert!(!second_order_holds(&m));
            checked += 1;
        }
    }

    #[test]
    fn second_order_examples() {
        let (plus, minus) = threshold_roots(4.0, 0.0, 4.0, 1.0, 1.0).unwrap();
        assert!(second_order_holds(
            &ProjectedStats::new(4.0, 0.0, 4.0, 1.0, plus).unwrap()
        ));
        assert!(!second_order_holds(
            &ProjectedStats::new(4.0, 0.0, 4.0, 1.0, minus).unwrap()
        ));
        // z1 = -1, z2 = 1 with unit variances.
        assert!(second_order_holds(
            &ProjectedStats::new(1.0, -1.0, 1.0, 1.0, 0.0).unwrap()
        ));
    }

    fn cs(mean: &[f64], cov: Matrix, count: usize) -> ClassStats {
        ClassStats::new(v(mean), cov, count, 0.5).unwrap()
    }

    #[test]
    fn fisher_examples() {
        let s1 = cs(&[2.0, 0.0], Matrix::identity(2, 2), 1);
        let s2 = cs(&[0.0, 0.0], Matrix::identity(2, 2), 1);
        let w = fisher_init(&s1, &s2).unwrap();
        assert!((w - v(&[1.0, 0.0])).norm() < 1e-14);

        let s1 = cs(&[4.0, 2.0], Matrix::identity(2, 2), 1);
        let s2 = cs(&[0.0, 0.0], Matrix::from_diagonal(&v(&[3.0, 1.0])), 1);
        let w = fisher_init(&s1, &s2).unwrap();
        assert!((w - v(&[1.0, 1.0])).norm() < 1e-14);

        let s2 = cs(&[4.0, 2.0], Matrix::identity(2, 2), 1);
        assert!(matches!(fisher_init(&s1, &s2), Err(Error::ZeroDirection)));
    }

    #[test]
    fn update_examples() {
        let s1 = cs(&[3.0], Matrix::from_element(1, 1, 1.0), 2);
        let s2 = cs(&[0.0], Matrix::from_element(1, 1, 4.0), 2);
        let mut proj = ProjectedStats::new(0.0, 0.0, 1.0, 4.0, 0.0).unwrap();
        proj.z1 = -1.0;
        proj.z2 = 0.5;
        let w = update_weights(&s1, &s2, &proj).unwrap();
        assert!((w[0] - 1.5).abs() < 1e-14);
    }

    #[test]
    fn update_homoscedastic_is_fisher_direction() {
        let cov = Matrix::from_row_slice(2, 2, &[2.0, 0.3, 0.3, 1.0]);
        let s1 = cs(&[1.0, 2.0], cov.clone(), 4);
        let s2 = cs(&[-1.0, 0.5], cov.clone(), 4);
        let proj = ProjectedStats::new(0.0, 0.0, 1.0, 1.0, 0.0)
            .unwrap()
            .with_threshold(0.0);
        let mut proj = proj;
        proj.z1 = -0.8;
        proj.z2 = 0.6;
        let w = update_weights(&s1, &s2, &proj).unwrap();
        let fisher = solve_symmetric(&cov, &(&s1.mean - &s2.mean)).unwrap();
        let cos = w.dot(&fisher) / (w.norm() * fisher.norm());
        assert!((cos - 1.0).abs() < 1e-12);
    }

    #[test]
    fn update_residual() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let d = rng.random_range(1..6);
            let mk = |rng: &mut ChaCha8Rng| {
                let g = Matrix::from_fn(d, d, |_, _| rng.random_range(-1.0..1.0));
                &g * g.transpose() + Matrix::identity(d, d) * 0.3
            };
            let s1 = ClassStats::new(
                Vector::from_fn(d, |_, _| rng.random_range(-2.0..2.0)),
                mk(&mut rng),
                3,
                0.5,
            )
            .unwrap();
            let s2 = ClassStats::new(
                Vector::from_fn(d, |_, _| rng.random_range(-2.0..2.0)),
                mk(&mut rng),
                3,
                0.5,
            )
            .unwrap();
            let mut proj = ProjectedStats::new(0.0, 0.0, 1.0, 1.0, 0.0).unwrap();
            proj.var1 = rng.random_range(0.5..2.0);
            proj.var2 = rng.random_range(0.5..2.0);
            proj.z1 = rng.random_range(-2.0..-0.1);
            proj.z2 = rng.random_range(0.1..2.0);
            let w = update_weights(&s1, &s2, &proj).unwrap();
            let m = &s2.cov * (proj.z2 / proj.sd2()) - &s1.cov * (proj.z1 / proj.sd1());
            let rhs = &s1.mean - &s2.mean;
            assert!((m * &w - &rhs).norm() <= 1e-8 * rhs.norm().max(1.0));
        }
    }

    #[test]
    fn recover_s_examples() {
        let mk = |z1: f64, z2: f64| {
            let mut p = ProjectedStats::new(0.0, 0.0, 1.0, 1.0, 0.0).unwrap();
            p.z1 = z1;
            p.z2 = z2;
            p
        };
        assert_eq!(recover_s(&mk(-1.0, 1.0)).unwrap(), 0.5);
        assert_eq!(recover_s(&mk(0.0, 1.0)).unwrap(), 0.0);
        assert_eq!(recover_s(&mk(1.0, 2.0)).unwrap(), -1.0);
        assert!(matches!(recover_s(&mk(1.0, 1.0)), Err(Error::Indeterminate)));
    }

    #[test]
    fn homoscedastic_training_hits_fisher_midpoint() {
        let cov = Matrix::from_row_slice(3, 3, &[2.0, 0.3, 0.1, 0.3, 1.0, 0.2, 0.1, 0.2, 1.5]);
        let s1 = cs(&[1.0, 2.0, 0.0], cov.clone(), 50);
        let s2 = cs(&[-1.0, 0.5, 1.0], cov.clone(), 50);
        let priors = Priors::new(0.5).unwrap();
        let fit = train_gld(&s1, &s2, &priors, &GldConfig::default()).unwrap();
        let fisher = solve_symmetric(&cov, &(&s1.mean - &s2.mean)).unwrap();
        let w = &fit.disc.w;
        let cos = w.dot(&fisher) / (w.norm() * fisher.norm());
        assert!((cos - 1.0).abs() < 1e-8);
        let mid = 0.5 * (w.dot(&s1.mean) + w.dot(&s2.mean));
        assert!((fit.disc.w0 - mid).abs() <= 1e-8 * mid.abs().max(w.norm()));
    }

    #[test]
    fn trace_bookkeeping() {
        let s1 = ClassStats::new(
            v(&[0.0, 0.0]),
            Matrix::identity(2, 2),
            100,
            1.0 / 3.0,
        )
        .unwrap();
        let s2 = ClassStats::new(
            v(&[1.0, 0.5]),
            Matrix::from_diagonal(&v(&[4.0, 0.25])),
            200,
            2.0 / 3.0,
        )
        .unwrap();
        let priors = Priors::from_counts(100, 200).unwrap();
        let cfg = GldConfig::default();
        let fit = train_gld(&s1, &s2, &priors, &cfg).unwrap();
        let t = &fit.trace;
        assert!(t.iterates.len() <= cfg.max_iters + 1);
        let min = t.iterates.iter().map(|i| i.p_e).fold(f64::INFINITY, f64::min);
        assert_eq!(t.iterates[t.best_index].p_e, min);
        assert_eq!(fit.p_e, min);
        assert!(fit.p_e <= t.iterates[0].p_e);
    }

    #[test]
    fn objective_tolerance_fires() {
        let s1 = ClassStats::new(v(&[0.0]), Matrix::from_element(1, 1, 1.0), 10, 0.5).unwrap();
        let s2 = ClassStats::new(v(&[2.0]), Matrix::from_element(1, 1, 3.0), 10, 0.5).unwrap();
        let priors = Priors::new(0.5).unwrap();
        let cfg = GldConfig {
            grad_tol: 1e-300,
            objective_tol: Some(1e-3),
            patience: 2,
            ..GldConfig::default()
        };
        let fit = train_gld(&s1, &s2, &priors, &cfg).unwrap();
        // In one dimension every iterate is the same rule up to scale.
        assert_eq!(fit.trace.converged_by, StopReason::Objective);
        assert_eq!(fit.trace.iterates.len(), 3);
    }

    #[test]
    fn invalid_config() {
        let s = ClassStats::new(v(&[0.0]), Matrix::from_element(1, 1, 1.0), 10, 0.5).unwrap();
        let cfg = GldConfig {
            max_iters: 0,
            ..GldConfig::default()
        };
        assert!(matches!(
            train_gld(&s, &s, &Priors::new(0.5).unwrap(), &cfg),
            Err(Error::InvalidConfig(_))
        ));
    }
}
