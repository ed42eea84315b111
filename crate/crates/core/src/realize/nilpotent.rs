use std::collections::BTreeSet;

use super::stable::span_of;
use super::verify::verify;
use crate::chains::is_nilpotent;
use crate::config::ConfigReport;
use crate::error::{Error, Result};
use crate::linalg::{
    primitive, random_vector_in_avoiding, RationalSubspace, SampleParams, SeededRng,
};
use crate::matroid::{ElementSet, Matroid, Realization, VectorMap};

/// Order in which points are re-added: the reverse of repeatedly removing
/// the lowest point of degree at most one.
pub fn peel_order(m: &Matroid) -> Result<Vec<usize>> {
    let mut current = m.ground();
    let mut removed = Vec::with_capacity(current.len());
    while !current.is_empty() {
        let sub = m.restrict(current)?;
        let s = ConfigReport::new(&sub).s_points;
        let p = current.difference(s).first().ok_or(Error::NotNilpotent)?;
        removed.push(p);
        current.remove(p);
    }
    removed.reverse();
    Ok(removed)
}

/// Subspace `p` must lie in and the spans it must avoid, given vectors on `placed`.
fn constraints(
    m: &Matroid,
    vectors: &VectorMap,
    placed: ElementSet,
    p: usize,
) -> Result<(RationalSubspace, Vec<RationalSubspace>)> {
    let n = m.rank();
    let with_p = placed.with(p);
    let sub = m.restrict(with_p)?;
    let rank_with = sub.rank();
    let space = if rank_with > m.rank_unchecked(placed) {
        RationalSubspace::full(n)
    } else {
        let report = ConfigReport::new(&sub);
        match report.lines_through(p) {
            [] => span_of(vectors, placed, n),
            [id] => span_of(vectors, report.classes[*id].points.without(p), n),
            _ => return Err(Error::NotNilpotent),
        }
    };
    let mut seen = BTreeSet::new();
    let mut forbidden = Vec::new();
    for k in 0..rank_with {
        for i in placed.subsets_of_size(k) {
            if !m.is_independent(i) {
                continue;
            }
            let cl = m.closure_unchecked(i);
            if cl.contains(p) || !seen.insert(cl.intersection(placed)) {
                continue;
            }
            forbidden.push(span_of(vectors, i, n));
        }
    }
    Ok((space, forbidden))
}

fn build(
    m: &Matroid,
    order: &[usize],
    rng: &mut SeededRng,
    params: SampleParams,
) -> Result<VectorMap> {
    let mut vectors = VectorMap::new();
    let mut placed = ElementSet::EMPTY;
    for &p in order {
        let (space, forbidden) = constraints(m, &vectors, placed, p)?;
        let v = random_vector_in_avoiding(&space, &forbidden, rng, params.bound, params.retries)?;
        vectors.insert(p, primitive(&v));
        placed.insert(p);
    }
    Ok(vectors)
}

/// Realizes a nilpotent matroid in dimension `rank(M)` by peeling points of
/// degree at most one and re-adding them generically.
pub fn realize_nilpotent(
    m: &Matroid,
    rng: &mut SeededRng,
    params: SampleParams,
) -> Result<Realization> {
    if !is_nilpotent(m) {
        return Err(Error::NotNilpotent);
    }
    let order = peel_order(m)?;
    for _ in 0..params.retries.max(1) {
        match build(m, &order, rng, params) {
            Ok(vectors) => {
                if let Ok(r) = verify(m, Realization::new(m.rank(), vectors)) {
                    return Ok(r);
                }
            }
            Err(Error::GenericityFailure { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Err(Error::GenericityFailure {
        retries: params.retries,
        bound: params.bound,
    })
}
