//! Numerical substrate: kernels, Gram matrices, stabilized Cholesky
//! factorization, and random-feature expansion.
//!
//! Everything here is a pure function of its inputs and safe to call from
//! multiple threads.

mod chol;
mod features;
mod kernel;

pub use chol::{
    cholesky_jittered, solve_lower, solve_lower_t, solve_posdef, CholFactor,
    DEFAULT_JITTER_SCHEDULE,
};
pub use features::{random_features, RandomFeatureMap};
pub use kernel::{arccos1_j, gram, kernel_diag, kernel_eval, Kernel, KernelKind};
