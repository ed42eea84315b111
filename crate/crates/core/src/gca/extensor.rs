use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Rational, RationalMatrix, RationalSubspace};
use crate::matroid::ElementSet;

/// An element of the `k`-th exterior power of ℚ^d in Plücker coordinates.
/// Keys are `k`-subsets of the coordinate labels `{1, …, d}`; absent keys are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extensor {
    dim: usize,
    step: usize,
    coords: BTreeMap<ElementSet, Rational>,
}

/// Sign of the permutation sorting the concatenation `first ++ second` of two
/// disjoint sorted lists.
fn merge_sign(first: ElementSet, second: ElementSet) -> i32 {
    let inversions: usize = first
        .iter()
        .map(|a| second.iter().filter(|&b| b < a).count())
        .sum();
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl Extensor {
    pub fn zero(dim: usize, step: usize) -> Self {
        Self {
            dim,
            step,
            coords: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &BTreeMap<ElementSet, Rational> {
        &self.coords
    }

    pub fn coordinate(&self, key: ElementSet) -> Rational {
        self.coords
            .get(&key)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, key: ElementSet, value: Rational) {
        if value.is_zero() {
            return;
        }
        let entry = self.coords.entry(key).or_insert_with(Rational::zero);
        *entry += value;
        if entry.is_zero() {
            self.coords.remove(&key);
        }
    }

    /// Wedge product of `vectors`, each of length `dim`.
    pub fn join<R: AsRef<[Rational]>>(vectors: &[R], dim: usize) -> Result<Self> {
        for v in vectors {
            if v.as_ref().len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.as_ref().len(),
                });
            }
        }
        let k = vectors.len();
        if k > dim {
            return Ok(Self::zero(dim, k));
        }
        let mut out = Self::zero(dim, k);
        for key in ElementSet::range(dim).subsets_of_size(k) {
            let rows: Vec<usize> = key.iter().map(|i| i - 1).collect();
            let value = crate::linalg::minor_of_columns(vectors, &rows);
            out.add_term(key, value);
        }
        Ok(out)
    }

    /// The vector of a step-1 extensor.
    pub fn to_vector(&self) -> Option<Vec<Rational>> {
        (self.step == 1).then(|| {
            (1..=self.dim)
                .map(|i| self.coordinate(ElementSet::singleton(i)))
                .collect()
        })
    }

    /// The scalar of a step-0 extensor.
    pub fn to_scalar(&self) -> Option<Rational> {
        (self.step == 0).then(|| self.coordinate(ElementSet::EMPTY))
    }

    /// Exterior product `self ∧ other`.
    pub fn wedge(&self, other: &Extensor) -> Result<Extensor> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.dim, self.step + other.step);
        for (&a, x) in &self.coords {
            for (&b, y) in &other.coords {
                if !a.intersection(b).is_empty() {
                    continue;
                }
                let s = merge_sign(a, b);
                let v = x * y;
                out.add_term(a.union(b), if s > 0 { v } else { -v });
            }
        }
        Ok(out)
    }

    /// Shuffle-formula meet. Zero when `k + j < d`.
    pub fn meet(&self, other: &Extensor) -> Result<Extensor> {
        self.check_dim(other)?;
        let d = self.dim;
        if self.step + other.step < d {
            return Ok(Self::zero(d, 0));
        }
        let full = ElementSet::range(d);
        let mut out = Self::zero(d, self.step + other.step - d);
        for (&s, x) in &self.coords {
            for (&r, y) in &other.coords {
                let rc = full.difference(r);
                if !rc.is_subset(s) {
                    continue;
                }
                let rest = s.intersection(r);
                // sgn of the shuffle (rc, rest) of s, times the bracket [e_rc e_r].
                let sign = merge_sign(rc, rest) * merge_sign(rc, r);
                let v = x * y;
                out.add_term(rest, if sign > 0 { v } else { -v });
            }
        }
        Ok(out)
    }

    /// The subspace `{x : x ∧ self = 0}`; for a nonzero decomposable extensor
    /// this is the span of its factors.
    pub fn span(&self) -> RationalSubspace {
        let d = self.dim;
        if self.is_zero() {
            return RationalSubspace::full(d);
        }
        let targets = ElementSet::range(d).subsets_of_size(self.step + 1);
        let mut m = RationalMatrix::zeros(targets.len(), d);
        for (row, t) in targets.iter().enumerate() {
            for i in t.iter() {
                let s = t.without(i);
                let c = self.coordinate(s);
                if c.is_zero() {
                    continue;
                }
                let sign = merge_sign(ElementSet::singleton(i), s);
                m.set(row, i - 1, if sign > 0 { c } else { -c });
            }
        }
        RationalSubspace::kernel_of(&m)
    }

    fn check_dim(&self, other: &Extensor) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    /// Extensor of a subspace: the join of its canonical basis.
    pub fn of_subspace(s: &RationalSubspace) -> Self {
        Self::join(s.basis(), s.ambient_dim()).expect("basis vectors have the ambient length")
    }

    pub fn scalar(dim: usize, value: Rational) -> Self {
        let mut e = Self::zero(dim, 0);
        e.add_term(ElementSet::EMPTY, value);
        e
    }

    pub fn one(dim: usize) -> Self {
        Self::scalar(dim, Rational::one())
    }
}

/// Checks whether `dim(∩ V_i) = Σ dim V_i − n(k − 1)`, by iterated meets and
/// by exact intersection. The two computations must agree.
pub fn expected_dimension_holds(subspaces: &[RationalSubspace]) -> Result<bool> {
    let Some(first) = subspaces.first() else {
        return Err(Error::Precondition("no subspaces given".into()));
    };
    let n = first.ambient_dim();
    let expected =
        crate::config::expected_dim_formula(n, subspaces.iter().map(RationalSubspace::dim));
    if expected < 0 {
        return Err(Error::Precondition(format!(
            "expected dimension {expected} is negative"
        )));
    }
    let mut meet = Extensor::of_subspace(first);
    let mut inter = first.clone();
    for s in &subspaces[1..] {
        meet = meet.meet(&Extensor::of_subspace(s))?;
        inter = inter.intersect(s)?;
    }
    let by_meet = !meet.is_zero();
    let by_intersection = inter.dim() as i64 == expected;
    if by_meet != by_intersection {
        return Err(Error::Inconsistent(format!(
            "meet is {} but the intersection has dimension {} (expected {expected})",
            if by_meet { "nonzero" } else { "zero" },
            inter.dim()
        )));
    }
    Ok(by_meet)
}
