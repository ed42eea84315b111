//! Exact computations on matroids: invariants, chains, realizations and
//! polynomial certificates.

pub mod chains;
pub mod config;
pub mod error;
pub mod fixtures;
pub mod gca;
pub mod linalg;
pub mod matroid;
pub mod realize;

pub use error::{Error, Result};
pub use matroid::{ElementSet, Matroid, Realization};
