use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::core::Matroid;
use super::set::ElementSet;
use crate::error::{Error, Result};
use crate::linalg::rank_of_vectors;
use crate::linalg::rational::{is_zero_vector, serde_vec, Rational};

/// An assignment of vectors to labels.
pub type VectorMap = BTreeMap<usize, Vec<Rational>>;

/// Vectors for the ground elements of a matroid, all of length `dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realization {
    pub dim: usize,
    #[serde(with = "vector_map_serde")]
    pub vectors: VectorMap,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub verified: bool,
}

mod vector_map_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Wrapped(#[serde(with = "serde_vec")] Vec<Rational>);

    pub fn serialize<S: Serializer>(m: &VectorMap, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(m.iter().map(|(k, v)| (k.to_string(), Wrapped(v.clone()))))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<VectorMap, D::Error> {
        let raw = BTreeMap::<String, Wrapped>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, v)| {
                let e = k.trim().parse::<usize>().map_err(|_| {
                    serde::de::Error::custom(format!("element key {k:?} is not an integer"))
                })?;
                Ok((e, v.0))
            })
            .collect()
    }
}

impl Realization {
    pub fn new(dim: usize, vectors: VectorMap) -> Self {
        Self {
            dim,
            vectors,
            verified: false,
        }
    }

    pub fn vector(&self, e: usize) -> Result<&[Rational]> {
        self.vectors
            .get(&e)
            .map(Vec::as_slice)
            .ok_or(Error::MissingElement(e))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let r: Realization = serde_json::from_str(text)?;
        for v in r.vectors.values() {
            if v.len() != r.dim {
                return Err(Error::DimensionMismatch {
                    expected: r.dim,
                    found: v.len(),
                });
            }
        }
        Ok(r)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("realization serializes")
    }

    /// Applies `x ↦ A·x` to every vector.
    pub fn transformed(&self, a: &crate::linalg::RationalMatrix) -> Result<Realization> {
        let vectors = self
            .vectors
            .iter()
            .map(|(&e, v)| Ok((e, a.mul_vec(v)?)))
            .collect::<Result<VectorMap>>()?;
        Ok(Realization::new(a.rows(), vectors))
    }
}

/// Rank of the vectors indexed by `s`.
pub fn rank_of_set(vectors: &VectorMap, s: ElementSet) -> usize {
    let vs: Vec<&[Rational]> = s.iter().map(|e| vectors[&e].as_slice()).collect();
    rank_of_vectors(&vs)
}

/// The matroid of a vector collection: its circuits are the minimal dependent
/// subsets, found by exact rank tests on subsets of size at most `dim + 1`.
pub fn matroid_of_vectors(dim: usize, vectors: &VectorMap) -> Result<Matroid> {
    let mut ground = ElementSet::EMPTY;
    for (&e, v) in vectors {
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
        if is_zero_vector(v) {
            return Err(Error::Loop { element: e });
        }
        if e == 0 || e > super::set::MAX_LABEL {
            return Err(Error::IndexOutOfRange {
                element: e,
                ground: super::set::MAX_LABEL,
            });
        }
        ground.insert(e);
    }
    let mut circuits: Vec<ElementSet> = Vec::new();
    for k in 2..=(dim + 1).min(ground.len()) {
        for s in ground.subsets_of_size(k) {
            if circuits.iter().any(|c| c.is_subset(s)) {
                continue;
            }
            if rank_of_set(vectors, s) < k {
                circuits.push(s);
            }
        }
    }
    circuits.sort();
    let all: Vec<&[Rational]> = vectors.values().map(Vec::as_slice).collect();
    let rank = rank_of_vectors(&all);
    Matroid::from_circuit_sets(ground, rank, circuits)
}
