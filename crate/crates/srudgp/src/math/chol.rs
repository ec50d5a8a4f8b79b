//! Jittered Cholesky factorization and triangular solves.

use ndarray::{Array2, ArrayView2};

use crate::error::{Error, Result};

/// Jitter values tried in order when factorizing a Gram matrix.
pub const DEFAULT_JITTER_SCHEDULE: [f64; 3] = [1e-6, 1e-5, 1e-4];

/// Result of a successful factorization: `l * l^T = input + jitter * I`.
#[derive(Clone, Debug)]
pub struct CholFactor {
    /// Lower-triangular factor with strictly positive diagonal.
    pub l: Array2<f64>,
    /// Diagonal jitter actually applied.
    pub jitter: f64,
}

fn try_cholesky(m: ArrayView2<'_, f64>, jitter: f64) -> Option<Array2<f64>> {
    let n = m.nrows();
    let mut l = Array2::<f64>::zeros((n, n));
    for j in 0..n {
        let mut d = m[(j, j)] + jitter;
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        if !(d > 0.0) || !d.is_finite() {
            return None;
        }
        let dj = d.sqrt();
        l[(j, j)] = dj;
        for i in (j + 1)..n {
            let mut s = m[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / dj;
        }
    }
    Some(l)
}

/// Factor a symmetric matrix, walking the jitter schedule until the
/// factorization succeeds. Records the jitter that was applied.
pub fn cholesky_jittered(m: ArrayView2<'_, f64>, schedule: &[f64]) -> Result<CholFactor> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "cholesky: matrix is {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    if schedule.is_empty() {
        return Err(Error::Contract("cholesky: empty jitter schedule".into()));
    }
    let mut max_abs: f64 = 0.0;
    let mut max_asym: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..i {
            max_asym = max_asym.max((m[(i, j)] - m[(j, i)]).abs());
        }
        for j in 0..m.ncols() {
            max_abs = max_abs.max(m[(i, j)].abs());
        }
    }
    if max_asym > 1e-8 * (1.0 + max_abs) {
        return Err(Error::Contract(format!(
            "cholesky: input not symmetric (max asymmetry {max_asym:e})"
        )));
    }
    for &jitter in schedule {
        if let Some(l) = try_cholesky(m, jitter) {
            return Ok(CholFactor { l, jitter });
        }
    }
    let max_jitter = schedule.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Err(Error::Singular { max_jitter })
}

/// Solve `L x = b` by forward substitution, column by column.
pub fn solve_lower(l: ArrayView2<'_, f64>, b: ArrayView2<'_, f64>) -> Array2<f64> {
    let n = l.nrows();
    debug_assert_eq!(n, b.nrows());
    let mut x = b.to_owned();
    for c in 0..x.ncols() {
        for i in 0..n {
            let mut s = x[(i, c)];
            for k in 0..i {
                s -= l[(i, k)] * x[(k, c)];
            }
            x[(i, c)] = s / l[(i, i)];
        }
    }
    x
}

/// Solve `L^T x = b` by back substitution, column by column.
pub fn solve_lower_t(l: ArrayView2<'_, f64>, b: ArrayView2<'_, f64>) -> Array2<f64> {
    let n = l.nrows();
    debug_assert_eq!(n, b.nrows());
    let mut x = b.to_owned();
    for c in 0..x.ncols() {
        for i in (0..n).rev() {
            let mut s = x[(i, c)];
            for k in (i + 1)..n {
                s -= l[(k, i)] * x[(k, c)];
            }
            x[(i, c)] = s / l[(i, i)];
        }
    }
    x
}

/// Solve `(L L^T) x = b` given a Cholesky factor.
pub fn solve_posdef(l: ArrayView2<'_, f64>, b: ArrayView2<'_, f64>) -> Array2<f64> {
    solve_lower_t(l, solve_lower(l, b).view())
}
