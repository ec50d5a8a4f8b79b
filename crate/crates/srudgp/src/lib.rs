//! Deep Gaussian process sequence modeling with simple-recurrent-unit layers.
//!
//! The library implements sparse variational GP layers composed into deep
//! stacks, including a recurrent cell whose four transforms are GP
//! regressions evaluated in one batch over the whole sequence. Training
//! maximizes an evidence lower bound with utterance-level Monte Carlo
//! sampling, exact reverse-mode gradients, and Adam.
//!
//! Module map:
//! - [`math`]: kernels, Gram matrices, jittered Cholesky, random features.
//! - [`autodiff`]: the reverse-mode tape all gradients flow through.
//! - [`svgp`]: sparse variational GP layer (posterior, KL, sampling).
//! - [`recurrent`]: SRU cell, SRU-DGP cell, and layer stacks.
//! - [`train`]: ELBO objectives, gradients, Adam, the fit loop, checkpoints.
//! - [`harness`]: synthetic tasks, dataset I/O, metrics, verification oracles.

pub mod autodiff;
pub mod error;
pub mod harness;
pub mod math;
pub mod params;
pub mod recurrent;
pub mod svgp;
pub mod train;

pub use error::{Error, Result};
