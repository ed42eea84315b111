use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::matrix::{rank_of_vectors, RationalMatrix};
use super::rational::{primitive, Rational};
use crate::error::{Error, Result};

/// A linear subspace of ℚ^d stored by a canonical basis: the nonzero rows of
/// its reduced row echelon form, scaled to primitive integer vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalSubspace {
    ambient_dim: usize,
    #[serde(with = "basis_serde")]
    basis: Vec<Vec<Rational>>,
}

mod basis_serde {
    use super::Rational;
    use crate::linalg::rational::{format_vector, parse_vector};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(b: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(b.iter().map(|v| format_vector(v)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        let raw = Vec::<Vec<String>>::deserialize(d)?;
        raw.iter()
            .map(|v| parse_vector(v).map_err(serde::de::Error::custom))
            .collect()
    }
}

impl RationalSubspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::span(
            ambient_dim,
            &RationalMatrix::identity(ambient_dim).row_vectors(),
        )
        .expect("identity rows have the ambient length")
    }

    /// Span of arbitrary (possibly dependent) vectors of length `ambient_dim`.
    pub fn span<R: AsRef<[Rational]>>(ambient_dim: usize, vectors: &[R]) -> Result<Self> {
        for v in vectors {
            if v.as_ref().len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: v.as_ref().len(),
                });
            }
        }
        if vectors.is_empty() {
            return Ok(Self::zero(ambient_dim));
        }
        let m = RationalMatrix::from_rows(vectors)?;
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| primitive(r.row(i))).collect();
        Ok(Self { ambient_dim, basis })
    }

    /// Solution space of `x ↦ m·x = 0`.
    pub fn kernel_of(m: &RationalMatrix) -> Self {
        Self::span(m.cols(), &m.kernel_basis()).expect("kernel vectors have the column length")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient_dim
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        let mut rows: Vec<&[Rational]> = self.basis.iter().map(Vec::as_slice).collect();
        rows.push(v);
        rank_of_vectors(&rows) == self.dim()
    }

    pub fn contains_subspace(&self, other: &RationalSubspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    fn check_ambient(&self, other: &RationalSubspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }

    /// A ∩ B, from the kernel of the block matrix [A | −B] acting on coefficient pairs.
    pub fn intersect(&self, other: &RationalSubspace) -> Result<RationalSubspace> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ambient_dim));
        }
        let (ka, kb) = (self.dim(), other.dim());
        let d = self.ambient_dim;
        let mut m = RationalMatrix::zeros(d, ka + kb);
        for (j, v) in self.basis.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        for (j, v) in other.basis.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                m.set(i, ka + j, -x.clone());
            }
        }
        let vectors: Vec<Vec<Rational>> = m
            .kernel_basis()
            .into_iter()
            .map(|coef| {
                let mut x = vec![Rational::zero(); d];
                for (c, v) in coef[..ka].iter().zip(&self.basis) {
                    for i in 0..d {
                        x[i] += c * &v[i];
                    }
                }
                x
            })
            .collect();
        Self::span(d, &vectors)
    }

    pub fn sum(&self, other: &RationalSubspace) -> Result<RationalSubspace> {
        self.check_ambient(other)?;
        let all: Vec<&[Rational]> = self
            .basis
            .iter()
            .chain(&other.basis)
            .map(Vec::as_slice)
            .collect();
        Self::span(self.ambient_dim, &all)
    }

    /// Intersection of a nonempty family; the full space for an empty one.
    pub fn intersect_all<'a, I>(ambient_dim: usize, spaces: I) -> Result<RationalSubspace>
    where
        I: IntoIterator<Item = &'a RationalSubspace>,
    {
        spaces
            .into_iter()
            .try_fold(Self::full(ambient_dim), |acc, s| acc.intersect(s))
    }
}

impl RationalMatrix {
    pub fn row_vectors(&self) -> Vec<Vec<Rational>> {
        (0..self.rows()).map(|r| self.row(r).to_vec()).collect()
    }
}
