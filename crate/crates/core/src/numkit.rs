//! Small dense linear-algebra and special-function helpers.
//!
//! Covariances use population normalisation (divide by `n`). Linear solves go
//! through an SVD so that singular or numerically rank-deficient systems fall
//! back to the Moore-Penrose minimum-norm solution instead of failing.

use nalgebra::{DMatrix, DVector, SVD};

use crate::error::{Error, Result};

pub type Vector = DVector<f64>;
pub type Matrix = DMatrix<f64>;

/// Relative singular-value cutoff, scaled by the matrix dimension.
pub const RANK_TOLERANCE: f64 = 1e-12;

const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Component-wise arithmetic mean of `samples`.
pub fn mean_vector<S: AsRef<[f64]>>(samples: &[S]) -> Result<Vector> {
    let first = samples.first().ok_or(Error::EmptyClass {
        label: None,
        count: 0,
        required: 1,
    })?;
    let d = first.as_ref().len();
    let mut acc = vec![0.0; d];
    for s in samples {
        let s = s.as_ref();
        if s.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: s.len(),
            });
        }
        for (a, x) in acc.iter_mut().zip(s) {
            *a += x;
        }
    }
    let n = samples.len() as f64;
    Ok(Vector::from_iterator(d, acc.into_iter().map(|a| a / n)))
}

/// Population covariance `(1/n) sum (x - mean)(x - mean)^T`.
///
/// Only the upper triangle is accumulated and then mirrored, so the result is
/// exactly symmetric.
pub fn covariance_matrix<S: AsRef<[f64]>>(samples: &[S], mean: &Vector) -> Result<Matrix> {
    if samples.is_empty() {
        return Err(Error::EmptyClass {
            label: None,
            count: 0,
            required: 1,
        });
    }
    let d = mean.len();
    let mut cov = Matrix::zeros(d, d);
    let mut centred = vec![0.0; d];
    for s in samples {
        let s = s.as_ref();
        if s.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: s.len(),
            });
        }
        for (c, (x, m)) in centred.iter_mut().zip(s.iter().zip(mean.iter())) {
            *c = x - m;
        }
        for i in 0..d {
            let ci = centred[i];
            for j in i..d {
                cov[(i, j)] += ci * centred[j];
            }
        }
    }
    let n = samples.len() as f64;
    for i in 0..d {
        for j in i..d {
            let v = cov[(i, j)] / n;
            cov[(i, j)] = v;
            cov[(j, i)] = v;
        }
    }
    Ok(cov)
}

/// Solves `a * x = b`, returning the minimum-norm least-squares solution when
/// `a` is singular or numerically rank deficient.
///
/// Singular values below `sigma_max * d * RANK_TOLERANCE` are treated as zero.
pub fn solve_symmetric(a: &Matrix, b: &Vector) -> Result<Vector> {
    let d = a.nrows();
    if a.ncols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: a.ncols(),
        });
    }
    if b.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: b.len(),
        });
    }
    if a.iter().chain(b.iter()).any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("linear system"));
    }
    if d == 0 {
        return Ok(Vector::zeros(0));
    }
    let svd = SVD::try_new(a.clone(), true, true, f64::EPSILON, 0)
        .ok_or(Error::NonFinite("singular value decomposition"))?;
    let smax = svd.singular_values.max();
    let cutoff = smax * d as f64 * RANK_TOLERANCE;
    let (u, v_t) = match (&svd.u, &svd.v_t) {
        (Some(u), Some(v_t)) => (u, v_t),
        _ => unreachable!("SVD requested with both factors"),
    };
    // x = V diag(1/s) U^T b over the retained singular values.
    let utb = u.transpose() * b;
    let mut scaled = Vector::zeros(d);
    for (i, &s) in svd.singular_values.iter().enumerate() {
        if s > cutoff {
            scaled[i] = utb[i] / s;
        }
    }
    Ok(v_t.transpose() * scaled)
}

/// Upper tail of the standard normal distribution, `Q(z) = P(Z >= z)`.
pub fn q_function(z: f64) -> f64 {
    0.5 * libm::erfc(z * std::f64::consts::FRAC_1_SQRT_2)
}

/// Standard normal density.
pub fn std_normal_pdf(z: f64) -> f64 {
    FRAC_1_SQRT_2PI * (-0.5 * z * z).exp()
}
