use std::collections::BTreeMap;

use num_traits::Zero;
use rand::seq::index::sample;
use serde::Serialize;

use super::verify::{in_circuit_variety, is_realization, vectors_for};
use crate::chains::lifting_dimension_invariant;
use crate::error::{Error, Result};
use crate::linalg::{minor_of_columns, Rational, RationalMatrix, SeededRng};
use crate::matroid::{ElementSet, Matroid, Realization, VectorMap};

/// Symbolic entry `sign · [points…, q]_K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignedBracketToken {
    pub sign: i8,
    pub points: Vec<usize>,
    pub includes_q: bool,
    /// 1-based coordinate rows.
    pub row_subset: Vec<usize>,
}

impl SignedBracketToken {
    /// Exact value with the named columns taken from `vectors` and `q`.
    pub fn evaluate(&self, vectors: &VectorMap, q: &[Rational]) -> Result<Rational> {
        let mut cols: Vec<&[Rational]> = self
            .points
            .iter()
            .map(|p| {
                vectors
                    .get(p)
                    .map(Vec::as_slice)
                    .ok_or(Error::MissingElement(*p))
            })
            .collect::<Result<_>>()?;
        if self.includes_q {
            cols.push(q);
        }
        let rows: Vec<usize> = self.row_subset.iter().map(|k| k - 1).collect();
        let v = minor_of_columns(&cols, &rows);
        Ok(if self.sign < 0 { -v } else { v })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftabilityRow {
    pub circuit: ElementSet,
    pub row_subset: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftabilityEntry {
    pub row: usize,
    pub col: usize,
    pub token: SignedBracketToken,
}

/// Rows are pairs (circuit of size `k ≤ n`, `K ⊆ [n]` with `|K| = k`);
/// columns are the ground elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftabilityMatrix {
    pub ambient: usize,
    pub rows: Vec<LiftabilityRow>,
    pub cols: Vec<usize>,
    pub entries: Vec<LiftabilityEntry>,
}

impl LiftabilityMatrix {
    pub fn entry(&self, row: usize, col_element: usize) -> Option<&SignedBracketToken> {
        let col = self.cols.iter().position(|&c| c == col_element)?;
        self.entries
            .iter()
            .find(|e| e.row == row && e.col == col)
            .map(|e| &e.token)
    }

    /// Numeric matrix at the given vectors and lifting point.
    pub fn evaluate(&self, vectors: &VectorMap, q: &[Rational]) -> Result<RationalMatrix> {
        if q.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: q.len(),
            });
        }
        for &c in &self.cols {
            let v = vectors.get(&c).ok_or(Error::MissingElement(c))?;
            if v.len() != self.ambient {
                return Err(Error::DimensionMismatch {
                    expected: self.ambient,
                    found: v.len(),
                });
            }
        }
        let mut out = RationalMatrix::zeros(self.rows.len(), self.cols.len());
        for e in &self.entries {
            out.set(e.row, e.col, e.token.evaluate(vectors, q)?);
        }
        Ok(out)
    }
}

/// The liftability matrix for vectors in dimension `rank(M)`.
pub fn liftability_matrix(m: &Matroid) -> LiftabilityMatrix {
    liftability_matrix_in(m, m.rank())
}

/// The liftability matrix for vectors in dimension `ambient`, built from the
/// circuits of size at most `ambient`.
pub fn liftability_matrix_in(m: &Matroid, ambient: usize) -> LiftabilityMatrix {
    let cols = m.ground().to_vec();
    let col_of: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    let coords = ElementSet::range(ambient);
    for &c in m.circuits().iter().filter(|c| c.len() <= ambient) {
        let points = c.to_vec();
        for k in coords.subsets_of_size(points.len()) {
            let row = rows.len();
            let row_subset = k.to_vec();
            for (i, &ci) in points.iter().enumerate() {
                entries.push(LiftabilityEntry {
                    row,
                    col: col_of[&ci],
                    token: SignedBracketToken {
                        sign: if i % 2 == 0 { 1 } else { -1 },
                        points: points.iter().copied().filter(|&x| x != ci).collect(),
                        includes_q: true,
                        row_subset: row_subset.clone(),
                    },
                });
            }
            rows.push(LiftabilityRow {
                circuit: c,
                row_subset,
            });
        }
    }
    LiftabilityMatrix {
        ambient,
        rows,
        cols,
        entries,
    }
}

/// Checks the shared hypotheses and returns the evaluated matrix.
pub fn evaluated_matrix(
    m: &Matroid,
    vectors: &VectorMap,
    q: &[Rational],
) -> Result<RationalMatrix> {
    let ambient = q.len();
    let (len, vs) = vectors_for(m, vectors)?;
    if len != ambient && !vs.is_empty() {
        return Err(Error::DimensionMismatch {
            expected: ambient,
            found: len,
        });
    }
    if ambient < m.rank() {
        return Err(Error::Precondition(format!(
            "ambient dimension {ambient} is below the rank {}",
            m.rank()
        )));
    }
    let check = in_circuit_variety(m, &vs)?;
    if let Some(c) = check.witness {
        return Err(Error::NotInCircuitVariety(c.to_vec()));
    }
    liftability_matrix_in(m, ambient).evaluate(&vs, q)
}

/// Dimension of the space of liftings of `vectors` from `q` that stay in
/// the circuit variety: the kernel dimension of the evaluated matrix.
pub fn lifting_dimension_at(m: &Matroid, vectors: &VectorMap, q: &[Rational]) -> Result<usize> {
    let mat = evaluated_matrix(m, vectors, q)?;
    Ok(mat.cols() - mat.rank())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    /// `rank ≤ |M| − dim(M)` for weak-nilpotent matroids.
    Thm25,
    /// `rank ≤ |M| − rank(M)`.
    Prop68,
}

impl std::str::FromStr for BoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "thm25" => Ok(BoundKind::Thm25),
            "prop68" => Ok(BoundKind::Prop68),
            other => Err(Error::Schema(format!("unknown bound kind {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorCertificate {
    pub bound_kind: BoundKind,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub bound: usize,
    /// Size of the minors that must vanish.
    pub minor_size: usize,
    /// No square submatrix of that size exists.
    pub vacuous: bool,
    pub sampled_minors: usize,
    pub nonzero_minors: usize,
    pub holds: bool,
}

/// Evaluates the matrix at a verified realization and checks the rank bound,
/// optionally also computing `samples` random minors of the threshold size.
pub fn minor_rank_certificate(
    m: &Matroid,
    r: &Realization,
    q: &[Rational],
    kind: BoundKind,
    samples: Option<(usize, &mut SeededRng)>,
) -> Result<MinorCertificate> {
    let check = is_realization(m, r)?;
    if !check.realizes {
        return Err(Error::NotRealization(check.discrepancy.unwrap_or_default()));
    }
    if q.len() != m.rank() {
        return Err(Error::DimensionMismatch {
            expected: m.rank(),
            found: q.len(),
        });
    }
    let size = m.ground_size();
    let bound = match kind {
        BoundKind::Thm25 => size - lifting_dimension_invariant(m)?.dim_value,
        BoundKind::Prop68 => size - m.rank(),
    };
    let mat = evaluated_matrix(m, &r.vectors, q)?;
    let rank = mat.rank();
    let minor_size = bound + 1;
    let vacuous = minor_size > mat.rows().min(mat.cols());
    let mut sampled = 0;
    let mut nonzero = 0;
    if let (Some((count, rng)), false) = (samples, vacuous) {
        for _ in 0..count {
            let mut rs = sample(rng, mat.rows(), minor_size).into_vec();
            let mut cs = sample(rng, mat.cols(), minor_size).into_vec();
            rs.sort_unstable();
            cs.sort_unstable();
            sampled += 1;
            if !mat.submatrix(&rs, &cs).determinant()?.is_zero() {
                nonzero += 1;
            }
        }
    }
    Ok(MinorCertificate {
        bound_kind: kind,
        rows: mat.rows(),
        cols: mat.cols(),
        rank,
        bound,
        minor_size,
        vacuous,
        sampled_minors: sampled,
        nonzero_minors: nonzero,
        holds: rank <= bound && nonzero == 0,
    })
}
