//! Random-feature expansion of the arc-cosine kernel.
//!
//! Rectified projections onto random directions give an unbiased finite-rank
//! estimate of the unnormalized order-1 arc-cosine kernel:
//! E_w[relu(w.x) relu(w.y)] = |x||y| J(theta) / (2 pi) with w standard
//! normal, so phi(x) = sqrt(2 / M) relu(W x) satisfies
//! E[phi(x).phi(y)] = |x||y| J(theta) / pi.

use ndarray::{Array2, ArrayView2};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::math::kernel::KernelKind;

/// A frozen random projection defining a finite feature map.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RandomFeatureMap {
    /// Projection matrix, M_feat x D_in, entries drawn standard normal.
    #[serde(with = "crate::params::array2_serde")]
    pub w: Array2<f64>,
    /// Kernel family the map approximates.
    pub kind: KernelKind,
}

impl RandomFeatureMap {
    /// Draw a fresh map. Only the arc-cosine family has a rectified-feature
    /// construction; other kinds are rejected here.
    pub fn new<R: Rng>(kind: KernelKind, d_in: usize, m_feat: usize, rng: &mut R) -> Result<Self> {
        if kind != KernelKind::ArcCos1 {
            return Err(Error::Config(format!(
                "random feature maps are only defined for the arccos1 kernel, got {kind:?}"
            )));
        }
        if d_in == 0 || m_feat == 0 {
            return Err(Error::Config("feature map dimensions must be positive".into()));
        }
        let w = Array2::from_shape_fn((m_feat, d_in), |_| rng.sample::<f64, _>(StandardNormal));
        Ok(RandomFeatureMap { w, kind })
    }

    pub fn m_feat(&self) -> usize {
        self.w.nrows()
    }

    pub fn d_in(&self) -> usize {
        self.w.ncols()
    }
}

/// Feature matrix, row t = sqrt(2 / M_feat) relu(W x_t), so that
/// Phi Phi^T estimates the unnormalized arc-cosine Gram matrix.
pub fn random_features(map: &RandomFeatureMap, x: ArrayView2<'_, f64>) -> Result<Array2<f64>> {
    if x.ncols() != map.d_in() {
        return Err(Error::DimensionMismatch(format!(
            "random_features: input has {} columns, map expects {}",
            x.ncols(),
            map.d_in()
        )));
    }
    let c = (2.0 / map.m_feat() as f64).sqrt();
    let mut phi = x.dot(&map.w.t());
    phi.mapv_inplace(|v| c * v.max(0.0));
    Ok(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::{gram, Kernel};
    use ndarray::{arr2, Array1};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_row_maps_to_zero_features() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let map = RandomFeatureMap::new(KernelKind::ArcCos1, 3, 16, &mut rng).unwrap();
        let x = arr2(&[[0.0, 0.0, 0.0]]);
        let phi = random_features(&map, x.view()).unwrap();
        assert!(phi.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn features_are_positively_homogeneous() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let map = RandomFeatureMap::new(KernelKind::ArcCos1, 3, 32, &mut rng).unwrap();
        let x = arr2(&[[0.5, -1.0, 2.0]]);
        let x2 = &x * 2.0;
        let p1 = random_features(&map, x.view()).unwrap();
        let p2 = random_features(&map, x2.view()).unwrap();
        for (a, b) in p1.iter().zip(p2.iter()) {
            assert_eq!(*b, 2.0 * *a);
        }
    }

    #[test]
    fn non_arccos_map_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(RandomFeatureMap::new(KernelKind::Rbf, 3, 8, &mut rng).is_err());
    }

    #[test]
    fn self_inner_product_converges_to_squared_norm() {
        // Monte Carlo oracle: for unit-norm x, E[phi(x).phi(x)] = |x|^2 = 1.
        // Mean over 50 resampled maps at M_feat = 4096 lands within 0.05.
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let x = {
            let mut v = Array1::from_vec(vec![0.3, -0.7, 0.2, 0.55]);
            let n = v.dot(&v).sqrt();
            v.mapv_inplace(|a| a / n);
            v.insert_axis(ndarray::Axis(0))
        };
        let mut acc = 0.0;
        let maps = 50;
        for _ in 0..maps {
            let map = RandomFeatureMap::new(KernelKind::ArcCos1, 4, 4096, &mut rng).unwrap();
            let phi = random_features(&map, x.view()).unwrap();
            acc += phi.row(0).dot(&phi.row(0));
        }
        let mean = acc / maps as f64;
        assert!((mean - 1.0).abs() < 0.05, "mean self-product {mean}");
    }

    #[test]
    fn feature_gram_tracks_unnormalized_kernel_on_unit_points() {
        // On unit-norm inputs the unnormalized and normalized arc-cosine
        // kernels coincide, so compare against the scale-1 normalized Gram.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let d = 4;
        let n = 32;
        let x = {
            let mut m =
                Array2::from_shape_fn((n, d), |_| rng.sample::<f64, _>(StandardNormal));
            for mut row in m.rows_mut() {
                let norm = row.dot(&row).sqrt();
                row.mapv_inplace(|v| v / norm);
            }
            m
        };
        let exact = gram(&Kernel::arccos1(1.0), x.view(), x.view()).unwrap();
        let maps = 20;
        let mut acc = 0.0;
        for _ in 0..maps {
            let map = RandomFeatureMap::new(KernelKind::ArcCos1, d, 4096, &mut rng).unwrap();
            let phi = random_features(&map, x.view()).unwrap();
            let approx = phi.dot(&phi.t());
            let mut max_abs = 0.0f64;
            for i in 0..n {
                for j in 0..n {
                    max_abs = max_abs.max((approx[(i, j)] - exact[(i, j)]).abs());
                }
            }
            acc += max_abs;
        }
        let mean_max_err = acc / maps as f64;
        assert!(mean_max_err < 0.05, "mean max-abs Gram error {mean_max_err}");
    }
}
