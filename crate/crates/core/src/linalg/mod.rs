//! Exact rational linear algebra.

pub mod matrix;
pub mod rational;
pub mod sample;
pub mod subspace;

pub use matrix::{minor_of_columns, rank_of_vectors, RationalMatrix};
pub use rational::{format_rational, int, parse_rational, primitive, ratio, vector, Rational};
pub use sample::{
    random_integer_vector, random_vector_avoiding, random_vector_in_avoiding, seeded_rng,
    SampleParams, SeededRng, DEFAULT_BOUND, DEFAULT_RETRIES,
};
pub use subspace::RationalSubspace;

/// Exact rank of a matrix.
pub fn rank(m: &RationalMatrix) -> usize {
    m.rank()
}

/// Right-kernel basis of a matrix.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    m.kernel_basis()
}

pub fn intersect(a: &RationalSubspace, b: &RationalSubspace) -> crate::Result<RationalSubspace> {
    a.intersect(b)
}

pub fn sum(a: &RationalSubspace, b: &RationalSubspace) -> crate::Result<RationalSubspace> {
    a.sum(b)
}
