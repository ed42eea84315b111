//! Matroids given by circuits, with a memoized rank oracle.

mod core;
pub mod io;
mod set;
mod vectors;

pub use self::core::{max_ground, Matroid, DEFAULT_MAX_GROUND, MAX_GROUND_ENV};
pub use io::{matroid_from_json, MatroidSpec, Presentation, PresentationKind};
pub use set::{ElementSet, Iter, MAX_LABEL};
pub use vectors::{matroid_of_vectors, rank_of_set, Realization, VectorMap};
