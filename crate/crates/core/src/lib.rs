//! Generalized inverses of the Markovian kernel `I − P` for finite irreducible
//! Markov chains, and the chain properties they encode: stationary
//! distributions, mean first passage times, recurrence-time second moments,
//! Kemeny's constant and stationary-distribution perturbations.
//!
//! ```
//! use markov_ginv::{chain::StochasticChain, ginverse, passage};
//!
//! let chain = StochasticChain::from_rows(&[[0.5, 0.5], [0.25, 0.75]]).unwrap();
//! let z = ginverse::fundamental_matrix(&chain).unwrap();
//! let m = passage::mfpt_from_ginverse(&chain, z.g()).unwrap();
//! assert!((m.m()[(0, 1)] - 2.0).abs() < 1e-12);
//! ```

// `!(x <= tol)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod chain;
pub mod cli;
pub mod error;
pub mod ginverse;
pub mod matrix;
pub mod moments;
pub mod oracle;
pub mod passage;
pub mod perturbation;
pub mod random;
pub mod routes;

pub use error::{Error, Result};
pub use matrix::{Matrix, Tolerance, Vector};
