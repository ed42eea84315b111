use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::rational::{int, Rational};
use super::subspace::RationalSubspace;
use crate::error::{Error, Result};

pub const DEFAULT_BOUND: u64 = 1000;
pub const DEFAULT_RETRIES: usize = 64;

/// The seeded generator used throughout the crate.
pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Parameters shared by every randomized construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleParams {
    pub bound: u64,
    pub retries: usize,
}

impl Default for SampleParams {
    fn default() -> Self {
        Self {
            bound: DEFAULT_BOUND,
            retries: DEFAULT_RETRIES,
        }
    }
}

pub fn random_integer(rng: &mut SeededRng, bound: u64) -> Rational {
    let b = bound.min(i64::MAX as u64) as i64;
    int(rng.gen_range(-b..=b))
}

pub fn random_integer_vector(rng: &mut SeededRng, len: usize, bound: u64) -> Vec<Rational> {
    (0..len).map(|_| random_integer(rng, bound)).collect()
}

/// Uniform integer vector in `[-bound, bound]^d` lying in none of `forbidden`.
pub fn random_vector_avoiding(
    ambient_dim: usize,
    forbidden: &[RationalSubspace],
    rng: &mut SeededRng,
    bound: u64,
    retries: usize,
) -> Result<Vec<Rational>> {
    let whole = RationalSubspace::full(ambient_dim);
    random_vector_in_avoiding(&whole, forbidden, rng, bound, retries)
}

/// Random integer combination of the basis of `space` lying in none of
/// `forbidden`. Every forbidden subspace must meet `space` properly.
pub fn random_vector_in_avoiding(
    space: &RationalSubspace,
    forbidden: &[RationalSubspace],
    rng: &mut SeededRng,
    bound: u64,
    retries: usize,
) -> Result<Vec<Rational>> {
    for f in forbidden {
        if f.ambient_dim() != space.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: space.ambient_dim(),
                found: f.ambient_dim(),
            });
        }
        if f.contains_subspace(space) {
            return Err(Error::Precondition(format!(
                "forbidden subspace of dimension {} contains the sampling space",
                f.dim()
            )));
        }
    }
    for _ in 0..retries.max(1) {
        let coef = random_integer_vector(rng, space.dim(), bound);
        let mut v = vec![int(0); space.ambient_dim()];
        for (c, b) in coef.iter().zip(space.basis()) {
            for (x, y) in v.iter_mut().zip(b) {
                *x += c * y;
            }
        }
        if forbidden.iter().all(|f| !f.contains(&v))
            && (space.is_zero() || v.iter().any(|x| *x != int(0)))
        {
            return Ok(v);
        }
    }
    Err(Error::GenericityFailure { retries, bound })
}
