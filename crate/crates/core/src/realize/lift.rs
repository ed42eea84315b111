use std::collections::BTreeMap;

use serde::Serialize;

use super::liftability::evaluated_matrix;
use super::verify::{in_circuit_variety, vectors_for};
use crate::error::{Error, Result};
use crate::linalg::{
    int, random_integer_vector, rank_of_vectors, Rational, RationalSubspace, SampleParams,
    SeededRng,
};
use crate::matroid::{Matroid, Realization, VectorMap};

/// Number of random kernel combinations tried before giving up.
pub const LIFT_ATTEMPTS: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lift {
    #[serde(serialize_with = "serialize_coefficients")]
    pub coefficients: BTreeMap<usize, Rational>,
    pub lifted: Realization,
    pub kernel_dim: usize,
}

fn serialize_coefficients<S: serde::Serializer>(
    c: &BTreeMap<usize, Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(
        c.iter()
            .map(|(k, v)| (k.to_string(), crate::linalg::format_rational(v))),
    )
}

/// `δ_p = γ_p + z_p·q`.
pub fn lift_vectors(
    vectors: &VectorMap,
    z: &BTreeMap<usize, Rational>,
    q: &[Rational],
) -> VectorMap {
    vectors
        .iter()
        .map(|(&p, v)| {
            let zp = z.get(&p).cloned().unwrap_or_else(|| int(0));
            (p, v.iter().zip(q).map(|(a, b)| a + &zp * b).collect())
        })
        .collect()
}

/// Searches random kernel elements of the evaluated liftability matrix for
/// a lift of a rank `n − 1` collection that spans the whole space.
pub fn sample_lift(
    m: &Matroid,
    vectors: &VectorMap,
    q: &[Rational],
    rng: &mut SeededRng,
    params: SampleParams,
) -> Result<Option<Lift>> {
    if !m.is_paving() {
        return Err(Error::NotPaving);
    }
    let n = m.rank();
    let (_, vs) = vectors_for(m, vectors)?;
    let cols: Vec<&Vec<Rational>> = vs.values().collect();
    let r = rank_of_vectors(&cols);
    if r + 1 != n {
        return Err(Error::Precondition(format!(
            "collection has rank {r}, expected {}",
            n - 1
        )));
    }
    if q.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: q.len(),
        });
    }
    if RationalSubspace::span(n, &cols)?.contains(q) {
        return Err(Error::Precondition(
            "lifting point lies in the hyperplane of the collection".into(),
        ));
    }
    let kernel = evaluated_matrix(m, &vs, q)?.kernel_basis();
    let points: Vec<usize> = vs.keys().copied().collect();
    for _ in 0..LIFT_ATTEMPTS {
        let coef = random_integer_vector(rng, kernel.len(), params.bound);
        let mut z = vec![int(0); points.len()];
        for (c, b) in coef.iter().zip(&kernel) {
            for (x, y) in z.iter_mut().zip(b) {
                *x += c * y;
            }
        }
        let z: BTreeMap<usize, Rational> = points.iter().copied().zip(z).collect();
        let lifted = lift_vectors(&vs, &z, q);
        let lifted_cols: Vec<&Vec<Rational>> = lifted.values().collect();
        if rank_of_vectors(&lifted_cols) != n {
            continue;
        }
        if let Some(c) = in_circuit_variety(m, &lifted)?.witness {
            return Err(Error::Inconsistent(format!(
                "kernel lift leaves the circuit variety at {c}"
            )));
        }
        return Ok(Some(Lift {
            coefficients: z,
            lifted: Realization::new(n, lifted),
            kernel_dim: kernel.len(),
        }));
    }
    Ok(None)
}
