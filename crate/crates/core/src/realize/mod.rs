//! Realizations: verification, constructive realizers, liftability and
//! minor certificates.

pub mod lift;
pub mod liftability;
pub mod nilpotent;
pub mod stable;
pub mod verify;

pub use lift::{lift_vectors, sample_lift, Lift, LIFT_ATTEMPTS};
pub use liftability::{
    evaluated_matrix, liftability_matrix, liftability_matrix_in, lifting_dimension_at,
    minor_rank_certificate, BoundKind, LiftabilityEntry, LiftabilityMatrix, LiftabilityRow,
    MinorCertificate, SignedBracketToken,
};
pub use nilpotent::{peel_order, realize_nilpotent};
pub use stable::{
    check_stable_preconditions, realize_stable_special, stable_check, PointStability,
    StableRealization, StableReport,
};
pub use verify::{in_circuit_variety, is_realization, verify, RealizationCheck, VarietyCheck};

use std::collections::BTreeSet;

use crate::chains::is_nilpotent;
use crate::error::{Error, Result};
use crate::linalg::{
    random_integer_vector, random_vector_avoiding, Rational, RationalSubspace, SampleParams,
    SeededRng,
};
use crate::matroid::{rank_of_set, ElementSet, Matroid, Realization, VectorMap};

/// A verified realization from whichever constructive realizer applies.
pub fn realize(m: &Matroid, rng: &mut SeededRng, params: SampleParams) -> Result<Realization> {
    if is_nilpotent(m) {
        return realize_nilpotent(m, rng, params);
    }
    match check_stable_preconditions(m) {
        Ok(_) => Ok(realize_stable_special(m, rng, params)?.realization),
        Err(Error::NotSolvable) => Err(Error::Precondition(
            "matroid is neither nilpotent nor solvable; no realizer applies".into(),
        )),
        Err(e) => Err(e),
    }
}

/// Spans that a generic lifting point must avoid: every span of at most
/// `ambient − 1` independent vectors of the collection.
pub fn lifting_point_avoidance(vectors: &VectorMap, ambient: usize) -> Vec<RationalSubspace> {
    let ground: ElementSet = vectors.keys().copied().collect();
    let total = rank_of_set(vectors, ground);
    let k = total.min(ambient.saturating_sub(1));
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for s in ground.subsets_of_size(k) {
        if rank_of_set(vectors, s) != k {
            continue;
        }
        let vs: Vec<&[Rational]> = s.iter().map(|p| vectors[&p].as_slice()).collect();
        let span = RationalSubspace::span(ambient, &vs).expect("vectors share the ambient length");
        if seen.insert(span.basis().to_vec()) {
            out.push(span);
        }
    }
    if out.is_empty() {
        out.push(RationalSubspace::zero(ambient));
    }
    out
}

/// A lifting point outside every span in [`lifting_point_avoidance`].
pub fn sample_lifting_point(
    vectors: &VectorMap,
    ambient: usize,
    rng: &mut SeededRng,
    params: SampleParams,
) -> Result<Vec<Rational>> {
    let forbidden = lifting_point_avoidance(vectors, ambient);
    random_vector_avoiding(ambient, &forbidden, rng, params.bound, params.retries)
}

/// Random vectors for the ground set of `m` inside a random hyperplane of
/// ℚ^rank(M), spanning that hyperplane. Returns the vectors and the hyperplane.
pub fn random_hyperplane_collection(
    m: &Matroid,
    rng: &mut SeededRng,
    params: SampleParams,
) -> Result<(VectorMap, RationalSubspace)> {
    let n = m.rank();
    for _ in 0..params.retries.max(1) {
        let basis: Vec<Vec<Rational>> = (0..n.saturating_sub(1))
            .map(|_| random_integer_vector(rng, n, params.bound))
            .collect();
        let h = RationalSubspace::span(n, &basis)?;
        if h.dim() + 1 != n {
            continue;
        }
        let zero = [RationalSubspace::zero(n)];
        let mut vectors = VectorMap::new();
        for p in m.ground() {
            let v = crate::linalg::random_vector_in_avoiding(
                &h,
                &zero,
                rng,
                params.bound,
                params.retries,
            )?;
            vectors.insert(p, crate::linalg::primitive(&v));
        }
        if rank_of_set(&vectors, m.ground()) + 1 == n {
            return Ok((vectors, h));
        }
    }
    Err(Error::GenericityFailure {
        retries: params.retries,
        bound: params.bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::load;
    use crate::linalg::seeded_rng;

    #[test]
    fn realize_dispatches() {
        let p = SampleParams::default();
        assert!(
            realize(&load("je9"), &mut seeded_rng(1), p)
                .unwrap()
                .verified
        );
        assert!(
            realize(&load("kvt7"), &mut seeded_rng(1), p)
                .unwrap()
                .verified
        );
        assert!(
            realize(&load("quad6"), &mut seeded_rng(1), p)
                .unwrap()
                .verified
        );
        assert!(realize(&load("fano7"), &mut seeded_rng(1), p).is_err());
    }

    #[test]
    fn lifting_point_is_generic() {
        let m = load("nr11");
        let r = realize(&m, &mut seeded_rng(2), SampleParams::default()).unwrap();
        let q = sample_lifting_point(&r.vectors, 4, &mut seeded_rng(2), SampleParams::default())
            .unwrap();
        for s in lifting_point_avoidance(&r.vectors, 4) {
            assert!(!s.contains(&q));
        }
    }
}
