//! Positive-definite kernels and Gram matrix evaluation.

use ndarray::{Array1, Array2, ArrayView1, ArrayView2};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Kernel families supported by the GP layers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelKind {
    /// Order-1 arc-cosine kernel with cosine normalization:
    /// k(x, y) = scale * J(theta) / pi, where theta is the angle between
    /// x and y and J(theta) = sin(theta) + (pi - theta) cos(theta).
    /// Depends on input directions only, and k(x, x) = scale for x != 0.
    ArcCos1,
    /// k(x, y) = scale * <x, y>.
    Linear,
    /// k(x, y) = scale * exp(-|x - y|^2 / (2 lengthscale^2)).
    Rbf,
}

/// A kernel with its hyperparameters.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Kernel {
    pub kind: KernelKind,
    /// Output variance, strictly positive.
    pub scale: f64,
    /// Lengthscale, used by `Rbf` only.
    pub lengthscale: Option<f64>,
}

impl Kernel {
    pub fn arccos1(scale: f64) -> Self {
        Kernel { kind: KernelKind::ArcCos1, scale, lengthscale: None }
    }

    pub fn linear(scale: f64) -> Self {
        Kernel { kind: KernelKind::Linear, scale, lengthscale: None }
    }

    pub fn rbf(scale: f64, lengthscale: f64) -> Self {
        Kernel { kind: KernelKind::Rbf, scale, lengthscale: Some(lengthscale) }
    }

    pub fn lengthscale(&self) -> f64 {
        self.lengthscale.unwrap_or(1.0)
    }

    fn validate(&self) -> Result<()> {
        if !(self.scale > 0.0) || !self.scale.is_finite() {
            return Err(Error::Domain(format!("kernel scale must be positive, got {}", self.scale)));
        }
        if self.kind == KernelKind::Rbf {
            let l = self.lengthscale();
            if !(l > 0.0) || !l.is_finite() {
                return Err(Error::Domain(format!("rbf lengthscale must be positive, got {l}")));
            }
        }
        Ok(())
    }
}

/// The normalized order-1 arc-cosine angular factor J(theta) / pi as a
/// function of u = cos(theta). Well defined and smooth on [-1, 1]; inputs
/// outside that range (roundoff) are clamped.
///
/// Its derivative in u is (pi - theta) / pi, which stays bounded even as
/// u -> 1 where acos itself has infinite slope.
pub fn arccos1_j(u: f64) -> f64 {
    let u = u.clamp(-1.0, 1.0);
    let theta = u.acos();
    (theta.sin() + (PI - theta) * u) / PI
}

/// Derivative of [`arccos1_j`] with respect to u.
pub fn arccos1_j_du(u: f64) -> f64 {
    if u >= 1.0 {
        return 1.0;
    }
    if u <= -1.0 {
        return 0.0;
    }
    let theta = u.acos();
    (PI - theta) / PI
}

fn norm(x: ArrayView1<'_, f64>) -> f64 {
    x.dot(&x).sqrt()
}

/// Evaluate k(x, y) for a single pair of points.
pub fn kernel_eval(kernel: &Kernel, x: ArrayView1<'_, f64>, y: ArrayView1<'_, f64>) -> Result<f64> {
    kernel.validate()?;
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch(format!(
            "kernel_eval: x has dim {}, y has dim {}",
            x.len(),
            y.len()
        )));
    }
    match kernel.kind {
        KernelKind::Linear => Ok(kernel.scale * x.dot(&y)),
        KernelKind::Rbf => {
            let mut sq = 0.0;
            for (a, b) in x.iter().zip(y.iter()) {
                let d = a - b;
                sq += d * d;
            }
            let l = kernel.lengthscale();
            Ok(kernel.scale * (-sq / (2.0 * l * l)).exp())
        }
        KernelKind::ArcCos1 => {
            let nx = norm(x);
            let ny = norm(y);
            if nx == 0.0 || ny == 0.0 {
                return Err(Error::Domain(
                    "arccos1 kernel is undefined at the zero vector".into(),
                ));
            }
            let u = x.dot(&y) / (nx * ny);
            Ok(kernel.scale * arccos1_j(u))
        }
    }
}

/// Row-normalize a matrix, failing on any zero row.
fn unit_rows(x: ArrayView2<'_, f64>, what: &str) -> Result<Array2<f64>> {
    let mut out = x.to_owned();
    for (i, mut row) in out.rows_mut().into_iter().enumerate() {
        let n = norm(row.view());
        if n == 0.0 {
            return Err(Error::Domain(format!(
                "arccos1 kernel is undefined at the zero vector (row {i} of {what})"
            )));
        }
        row.mapv_inplace(|v| v / n);
    }
    Ok(out)
}

/// Gram matrix: entry (i, j) = k(A_i, B_j).
pub fn gram(kernel: &Kernel, a: ArrayView2<'_, f64>, b: ArrayView2<'_, f64>) -> Result<Array2<f64>> {
    kernel.validate()?;
    if a.ncols() != b.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "gram: A has {} columns, B has {}",
            a.ncols(),
            b.ncols()
        )));
    }
    match kernel.kind {
        KernelKind::Linear => Ok(a.dot(&b.t()).mapv(|v| kernel.scale * v)),
        KernelKind::Rbf => {
            let l2 = kernel.lengthscale() * kernel.lengthscale();
            let an: Array1<f64> = a.rows().into_iter().map(|r| r.dot(&r)).collect();
            let bn: Array1<f64> = b.rows().into_iter().map(|r| r.dot(&r)).collect();
            let mut g = a.dot(&b.t());
            for i in 0..g.nrows() {
                for j in 0..g.ncols() {
                    let sq = (an[i] + bn[j] - 2.0 * g[(i, j)]).max(0.0);
                    g[(i, j)] = kernel.scale * (-sq / (2.0 * l2)).exp();
                }
            }
            Ok(g)
        }
        KernelKind::ArcCos1 => {
            let au = unit_rows(a, "A")?;
            let bu = unit_rows(b, "B")?;
            let mut g = au.dot(&bu.t());
            g.mapv_inplace(|u| kernel.scale * arccos1_j(u));
            Ok(g)
        }
    }
}

/// Diagonal of gram(k, X, X) without forming the full matrix.
pub fn kernel_diag(kernel: &Kernel, x: ArrayView2<'_, f64>) -> Result<Array1<f64>> {
    kernel.validate()?;
    match kernel.kind {
        KernelKind::Linear => Ok(x.rows().into_iter().map(|r| kernel.scale * r.dot(&r)).collect()),
        KernelKind::Rbf => Ok(Array1::from_elem(x.nrows(), kernel.scale)),
        KernelKind::ArcCos1 => {
            for (i, r) in x.rows().into_iter().enumerate() {
                if norm(r) == 0.0 {
                    return Err(Error::Domain(format!(
                        "arccos1 kernel is undefined at the zero vector (row {i})"
                    )));
                }
            }
            Ok(Array1::from_elem(x.nrows(), kernel.scale))
        }
    }
}
