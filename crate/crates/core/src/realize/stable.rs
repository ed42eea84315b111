use std::collections::BTreeMap;

use serde::Serialize;

use super::verify::{is_realization, verify};
use crate::chains::{is_special, solvable_chain};
use crate::config::ConfigReport;
use crate::error::{Error, Result};
use crate::linalg::{
    primitive, random_integer_vector, random_vector_in_avoiding, RationalSubspace, SampleParams,
    SeededRng,
};
use crate::matroid::{ElementSet, Matroid, Realization, VectorMap};

/// Expected and actual dimension of `∩_{l ∈ L_p} γ_l` at the chain level
/// where `p` leaves the solvable chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointStability {
    pub level: usize,
    pub expected: i64,
    pub actual: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StableReport {
    pub realization: Realization,
    pub per_point: BTreeMap<usize, PointStability>,
    /// Quasi-stability of the restriction to each solvable-chain member.
    pub quasi_stable_levels: Vec<bool>,
    pub stable: bool,
}

pub(crate) fn span_of(vectors: &VectorMap, points: ElementSet, dim: usize) -> RationalSubspace {
    let vs: Vec<&[crate::linalg::Rational]> =
        points.iter().map(|p| vectors[&p].as_slice()).collect();
    RationalSubspace::span(dim, &vs).expect("vectors share the ambient length")
}

/// Checks stability of a realization at every point of every level of the
/// solvable chain. Points on no class pass.
pub fn stable_check(m: &Matroid, r: &Realization) -> Result<StableReport> {
    let ch = solvable_chain(m);
    if !ch.terminated_empty {
        return Err(Error::NotSolvable);
    }
    let check = is_realization(m, r)?;
    if !check.realizes {
        return Err(Error::NotRealization(check.discrepancy.unwrap_or_default()));
    }
    let dim = r.dim;
    let mut per_point = BTreeMap::new();
    let mut levels = Vec::new();
    for (level, pair) in ch.chain.windows(2).enumerate() {
        let (cur, next) = (pair[0], pair[1]);
        let sub = m.restrict(cur)?;
        let report = ConfigReport::new(&sub);
        let spans: Vec<RationalSubspace> = report
            .classes
            .iter()
            .map(|c| span_of(&r.vectors, c.points, dim))
            .collect();
        let mut level_ok = true;
        for p in cur.difference(next) {
            let through = report.lines_through(p);
            let expected = report.expected_dims[&p];
            let actual = if through.is_empty() {
                sub.rank()
            } else {
                RationalSubspace::intersect_all(dim, through.iter().map(|&i| &spans[i]))?.dim()
            };
            let ok = through.is_empty() || actual as i64 == expected;
            level_ok &= ok;
            per_point.insert(
                p,
                PointStability {
                    level,
                    expected,
                    actual,
                    ok,
                },
            );
        }
        levels.push(level_ok);
    }
    Ok(StableReport {
        realization: r.clone(),
        per_point,
        stable: levels.iter().all(|&b| b),
        quasi_stable_levels: levels,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StableRealization {
    pub realization: Realization,
    pub report: StableReport,
}

fn random_subspace(dim: usize, k: usize, rng: &mut SeededRng, bound: u64) -> RationalSubspace {
    loop {
        let vs: Vec<_> = (0..k)
            .map(|_| random_integer_vector(rng, dim, bound))
            .collect();
        let s = RationalSubspace::span(dim, &vs).expect("equal lengths");
        if s.dim() == k {
            return s;
        }
    }
}

/// Checks the hypotheses of the stable realizer: solvable, `P_M = ∅` and special.
pub fn check_stable_preconditions(m: &Matroid) -> Result<ConfigReport> {
    if !solvable_chain(m).terminated_empty {
        return Err(Error::NotSolvable);
    }
    let report = ConfigReport::new(m);
    if !report.p_points.is_empty() {
        return Err(Error::NonEmptyP(report.p_points.to_vec()));
    }
    let special = is_special(m)?;
    if let Some(v) = special.violation {
        let classes: Vec<String> = v.classes.iter().map(ToString::to_string).collect();
        return Err(Error::NotSpecial(format!(
            "at level {} point {}: classes {} meet in {} of rank {} > {}",
            v.level,
            v.point,
            classes.join(", "),
            v.intersection,
            v.intersection_rank,
            v.expected
        )));
    }
    Ok(report)
}

/// Samples one subspace per class with intersections of the expected
/// dimension, places each point generically in its intersection and verifies.
pub fn realize_stable_special(
    m: &Matroid,
    rng: &mut SeededRng,
    params: SampleParams,
) -> Result<StableRealization> {
    let report = check_stable_preconditions(m)?;
    let n = m.rank();
    let zero = [RationalSubspace::zero(n)];
    for _ in 0..params.retries.max(1) {
        let hs: Vec<RationalSubspace> = report
            .classes
            .iter()
            .map(|c| random_subspace(n, c.class_rank, rng, params.bound))
            .collect();
        let mut targets = BTreeMap::new();
        let mut generic = true;
        for p in m.ground() {
            let through = report.lines_through(p);
            let space = RationalSubspace::intersect_all(n, through.iter().map(|&i| &hs[i]))?;
            if space.dim() as i64 != report.expected_dims[&p] {
                generic = false;
                break;
            }
            targets.insert(p, space);
        }
        if !generic {
            continue;
        }
        let mut vectors = VectorMap::new();
        for (p, space) in &targets {
            match random_vector_in_avoiding(space, &zero, rng, params.bound, params.retries) {
                Ok(v) => vectors.insert(*p, primitive(&v)),
                Err(Error::GenericityFailure { .. }) => break,
                Err(e) => return Err(e),
            };
        }
        if vectors.len() != targets.len() {
            continue;
        }
        let Ok(r) = verify(m, Realization::new(n, vectors)) else {
            continue;
        };
        let stable = stable_check(m, &r)?;
        if stable.stable {
            return Ok(StableRealization {
                realization: r,
                report: stable,
            });
        }
    }
    Err(Error::GenericityFailure {
        retries: params.retries,
        bound: params.bound,
    })
}
