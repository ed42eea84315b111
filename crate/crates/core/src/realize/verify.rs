use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::rational::is_zero_vector;
use crate::matroid::{
    matroid_of_vectors, rank_of_set, ElementSet, Matroid, Realization, VectorMap,
};

/// Vectors for exactly the ground set of `m`, all of one length.
pub(crate) fn vectors_for(m: &Matroid, vectors: &VectorMap) -> Result<(usize, VectorMap)> {
    let mut out = VectorMap::new();
    let mut len = None;
    for p in m.ground() {
        let v = vectors.get(&p).ok_or(Error::MissingElement(p))?;
        match len {
            None => len = Some(v.len()),
            Some(l) if l != v.len() => {
                return Err(Error::DimensionMismatch {
                    expected: l,
                    found: v.len(),
                })
            }
            _ => {}
        }
        out.insert(p, v.clone());
    }
    Ok((len.unwrap_or(0), out))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VarietyCheck {
    pub inside: bool,
    /// First circuit whose vectors are independent.
    pub witness: Option<ElementSet>,
}

/// Whether every circuit of `m` is dependent among the given vectors.
pub fn in_circuit_variety(m: &Matroid, vectors: &VectorMap) -> Result<VarietyCheck> {
    let (_, vs) = vectors_for(m, vectors)?;
    let witness = m
        .circuits()
        .iter()
        .copied()
        .find(|&c| rank_of_set(&vs, c) == c.len());
    Ok(VarietyCheck {
        inside: witness.is_none(),
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealizationCheck {
    pub realizes: bool,
    pub discrepancy: Option<String>,
}

impl RealizationCheck {
    fn fail(reason: String) -> Self {
        Self {
            realizes: false,
            discrepancy: Some(reason),
        }
    }
}

/// Whether the matroid of the vectors equals `m` exactly.
pub fn is_realization(m: &Matroid, r: &Realization) -> Result<RealizationCheck> {
    if r.dim != m.rank() {
        return Err(Error::DimensionMismatch {
            expected: m.rank(),
            found: r.dim,
        });
    }
    let (len, vs) = vectors_for(m, &r.vectors)?;
    if len != r.dim && !vs.is_empty() {
        return Err(Error::DimensionMismatch {
            expected: r.dim,
            found: len,
        });
    }
    if let Some((p, _)) = vs.iter().find(|(_, v)| is_zero_vector(v)) {
        return Ok(RealizationCheck::fail(format!(
            "element {p} has the zero vector"
        )));
    }
    let found = matroid_of_vectors(r.dim, &vs)?;
    if found.rank() != m.rank() {
        return Ok(RealizationCheck::fail(format!(
            "vectors have rank {} instead of {}",
            found.rank(),
            m.rank()
        )));
    }
    if let Some(c) = m.circuits().iter().find(|c| !found.circuits().contains(c)) {
        return Ok(RealizationCheck::fail(format!(
            "circuit {c} is not a circuit of the vectors"
        )));
    }
    if let Some(c) = found.circuits().iter().find(|c| !m.circuits().contains(c)) {
        return Ok(RealizationCheck::fail(format!(
            "vectors have the extra circuit {c}"
        )));
    }
    Ok(RealizationCheck {
        realizes: true,
        discrepancy: None,
    })
}

/// Marks a realization as verified after checking it.
pub fn verify(m: &Matroid, mut r: Realization) -> Result<Realization> {
    let check = is_realization(m, &r)?;
    if !check.realizes {
        return Err(Error::NotRealization(check.discrepancy.unwrap_or_default()));
    }
    r.verified = true;
    Ok(r)
}
