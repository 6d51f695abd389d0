//! Reference trainers: classical LDA and three heteroscedastic procedures that
//! search over covariance blends.
//!
//! * C-HLD sweeps `s` over `[0, 1]` with `w = [s S1 + (1 - s) S2]^-1 (m1 - m2)`
//!   and the weighted-mean threshold.
//! * R-HLD-1 draws `s` at random with `w = [s S2 + (1 - s) S1]^-1 (m1 - m2)`.
//!   Note the reflected blend compared to C-HLD.
//! * R-HLD-2 draws `(s1, s2)` at random with `w = [s1 S1 + s2 S2]^-1 (m1 - m2)`.

use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use rand_chacha::ChaCha8Rng;

use crate::discriminant::{
    bayes_error, project_stats, ClassStats, LinearDiscriminant, Priors, ProjectedStats,
};
use crate::error::{Error, Result};
use crate::numkit::{solve_symmetric, Matrix, Vector};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SweepConfig {
    /// Grid step for C-HLD.
    pub step: f64,
    /// Random draws for R-HLD-1 and R-HLD-2.
    pub trials: usize,
    /// Interval the random blend parameters are drawn from.
    pub s_range: (f64, f64),
    pub seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            step: 0.001,
            trials: 1000,
            s_range: (-2.0, 3.0),
            seed: 0,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.step > 0.0 && self.step <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "step {} must lie in (0, 1]",
                self.step
            )));
        }
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        let (a, b) = self.s_range;
        if !(a.is_finite() && b.is_finite() && a <= b) {
            return Err(Error::InvalidConfig(format!("bad s range [{a}, {b}]")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LdaFit {
    pub disc: LinearDiscriminant,
    pub p_e: f64,
}

/// Result of a one-parameter blend search.
#[derive(Debug, Clone, PartialEq)]
pub struct BlendFit {
    pub disc: LinearDiscriminant,
    pub p_e: f64,
    pub best_s: f64,
}

/// Result of the two-parameter blend search.
#[derive(Debug, Clone, PartialEq)]
pub struct PairBlendFit {
    pub disc: LinearDiscriminant,
    pub p_e: f64,
    pub best_s1: f64,
    pub best_s2: f64,
}

fn mean_difference(s1: &ClassStats, s2: &ClassStats) -> Result<Vector> {
    let diff = &s1.mean - &s2.mean;
    if diff.iter().all(|v| *v == 0.0) {
        return Err(Error::ZeroDirection);
    }
    Ok(diff)
}

/// Classical LDA with the pooled covariance `(n1 S1 + n2 S2) / (n1 + n2)`:
/// `w = S^-1 (m1 - m2)`, `w0 = ln tau + (m1 + m2)^T w / 2`.
pub fn train_lda(s1: &ClassStats, s2: &ClassStats, priors: &Priors) -> Result<LdaFit> {
    let diff = mean_difference(s1, s2)?;
    let (n1, n2) = (s1.count as f64, s2.count as f64);
    let pooled = (&s1.cov * n1 + &s2.cov * n2) / (n1 + n2);
    let w = solve_symmetric(&pooled, &diff)?;
    if w.iter().all(|v| *v == 0.0) {
        return Err(Error::ZeroDirection);
    }
    // m1^T S^-1 m1 - m2^T S^-1 m2 == (m1 + m2)^T S^-1 (m1 - m2) for symmetric S.
    let w0 = priors.tau.ln() + 0.5 * (&s1.mean + &s2.mean).dot(&w);
    let disc = LinearDiscriminant::new(w, w0);
    let p_e = bayes_error(&project_stats(&disc, s1, s2)?, priors);
    Ok(LdaFit { disc, p_e })
}

struct Candidate {
    disc: LinearDiscriminant,
    p_e: f64,
}

/// `w` for the blend matrix and its projection with a zero threshold.
fn blend_direction(
    blend: &Matrix,
    diff: &Vector,
    s1: &ClassStats,
    s2: &ClassStats,
) -> Option<(Vector, ProjectedStats)> {
    let w = solve_symmetric(blend, diff).ok()?;
    if w.iter().all(|v| *v == 0.0) {
        return None;
    }
    let proj = project_stats(&LinearDiscriminant::new(w.clone(), 0.0), s1, s2).ok()?;
    Some((w, proj))
}

fn evaluate(w: Vector, proj: ProjectedStats, w0: f64, priors: &Priors) -> Option<Candidate> {
    if !w0.is_finite() {
        return None;
    }
    let p_e = bayes_error(&proj.with_threshold(w0), priors);
    Some(Candidate {
        disc: LinearDiscriminant::new(w, w0),
        p_e,
    })
}

/// Weighted-mean threshold of C-HLD,
/// `(s mu2 var1 + (1 - s) mu1 var2) / (s var1 + (1 - s) var2)`.
fn weighted_threshold(s: f64, proj: &ProjectedStats) -> f64 {
    (s * proj.mu2 * proj.var1 + (1.0 - s) * proj.mu1 * proj.var2)
        / (s * proj.var1 + (1.0 - s) * proj.var2)
}

fn chld_candidate(
    s: f64,
    diff: &Vector,
    s1: &ClassStats,
    s2: &ClassStats,
    priors: &Priors,
) -> Option<Candidate> {
    let blend = &s1.cov * s + &s2.cov * (1.0 - s);
    let (w, proj) = blend_direction(&blend, diff, s1, s2)?;
    let w0 = weighted_threshold(s, &proj);
    evaluate(w, proj, w0, priors)
}

fn rhld1_candidate(
    s: f64,
    diff: &Vector,
    s1: &ClassStats,
    s2: &ClassStats,
    priors: &Priors,
) -> Option<Candidate> {
    let blend = &s2.cov * s + &s1.cov * (1.0 - s);
    let (w, proj) = blend_direction(&blend, diff, s1, s2)?;
    // Same weighted-mean threshold with the roles of s and 1 - s swapped.
    let w0 = weighted_threshold(1.0 - s, &proj);
    evaluate(w, proj, w0, priors)
}

fn rhld2_candidate(
    a: f64,
    b: f64,
    diff: &Vector,
    s1: &ClassStats,
    s2: &ClassStats,
    priors: &Priors,
) -> Option<Candidate> {
    let blend = &s1.cov * a + &s2.cov * b;
    let (w, proj) = blend_direction(&blend, diff, s1, s2)?;
    let from1 = proj.mu1 - a * proj.var1;
    let from2 = proj.mu2 + b * proj.var2;
    [from1, from2, 0.5 * (from1 + from2)]
        .into_iter()
        .filter_map(|w0| evaluate(w.clone(), proj, w0, priors))
        .fold(None, |best: Option<Candidate>, c| match best {
            Some(b) if b.p_e <= c.p_e => Some(b),
            _ => Some(c),
        })
}

/// The grid `0, step, 2 step, ..., 1`.
pub fn chld_grid(step: f64) -> Vec<f64> {
    let n = (1.0 / step + 1e-9).floor() as usize;
    let mut grid: Vec<f64> = (0..=n).map(|i| i as f64 * step).collect();
    if let Some(last) = grid.last_mut() {
        if (*last - 1.0).abs() < 1e-9 {
            *last = 1.0;
        } else {
            grid.push(1.0);
        }
    }
    grid
}

fn draws(cfg: &SweepConfig, count: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (a, b) = cfg.s_range;
    (0..count).map(|_| rng.random_range(a..=b)).collect()
}

fn no_candidate() -> Error {
    Error::InvalidConfig("no blend parameter produced a usable discriminant".into())
}

/// C-HLD: exhaustive sweep of `s` over `[0, 1]`. Ties go to the smaller `s`.
pub fn train_chld(
    s1: &ClassStats,
    s2: &ClassStats,
    priors: &Priors,
    cfg: &SweepConfig,
) -> Result<BlendFit> {
    cfg.validate()?;
    let diff = mean_difference(s1, s2)?;
    let mut best: Option<(Candidate, f64)> = None;
    for s in chld_grid(cfg.step) {
        if let Some(c) = chld_candidate(s, &diff, s1, s2, priors) {
            if best.as_ref().is_none_or(|(b, _)| c.p_e < b.p_e) {
                best = Some((c, s));
            }
        }
    }
    let (c, best_s) = best.ok_or_else(no_candidate)?;
    Ok(BlendFit {
        disc: c.disc,
        p_e: c.p_e,
        best_s,
    })
}

/// R-HLD-1: `cfg.trials` uniform draws of `s` from `cfg.s_range`.
pub fn train_rhld1(
    s1: &ClassStats,
    s2: &ClassStats,
    priors: &Priors,
    cfg: &SweepConfig,
) -> Result<BlendFit> {
    cfg.validate()?;
    let diff = mean_difference(s1, s2)?;
    let mut best: Option<(Candidate, f64)> = None;
    for s in draws(cfg, cfg.trials) {
        if let Some(c) = rhld1_candidate(s, &diff, s1, s2, priors) {
            if best.as_ref().is_none_or(|(b, _)| c.p_e < b.p_e) {
                best = Some((c, s));
            }
        }
    }
    let (c, best_s) = best.ok_or_else(no_candidate)?;
    Ok(BlendFit {
        disc: c.disc,
        p_e: c.p_e,
        best_s,
    })
}

/// R-HLD-2: `cfg.trials` uniform draws of `(s1, s2)` from `cfg.s_range`
/// squared. The two threshold expressions `mu1 - s1 var1` and
/// `mu2 + s2 var2` only agree at the optimum, so both and their midpoint are
/// tried and the best kept.
pub fn train_rhld2(
    s1: &ClassStats,
    s2: &ClassStats,
    priors: &Priors,
    cfg: &SweepConfig,
) -> Result<PairBlendFit> {
    cfg.validate()?;
    let diff = mean_difference(s1, s2)?;
    let flat = draws(cfg, 2 * cfg.trials);
    let mut best: Option<(Candidate, f64, f64)> = None;
    for pair in flat.chunks_exact(2) {
        let (a, b) = (pair[0], pair[1]);
        if let Some(c) = rhld2_candidate(a, b, &diff, s1, s2, priors) {
            if best.as_ref().is_none_or(|(bc, _, _)| c.p_e < bc.p_e) {
                best = Some((c, a, b));
            }
        }
    }
    let (c, best_s1, best_s2) = best.ok_or_else(no_candidate)?;
    Ok(PairBlendFit {
        disc: c.disc,
        p_e: c.p_e,
        best_s1,
        best_s2,
    })
}
