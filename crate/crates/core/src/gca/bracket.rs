use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::rational::serde_scalar;
use crate::linalg::{Rational, RationalMatrix};
use crate::matroid::Realization;

/// Three point symbols, sorted ascending in canonical form.
pub type Bracket = [usize; 3];

/// Sorts a bracket, returning the sign of the sorting permutation, or `None`
/// when a symbol repeats (the bracket vanishes).
pub fn canonical_bracket(b: Bracket) -> Option<(Bracket, i32)> {
    let mut s = b;
    let mut sign = 1;
    for i in 0..3 {
        for j in 0..2 - i {
            if s[j] > s[j + 1] {
                s.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    (s[0] != s[1] && s[1] != s[2]).then_some((s, sign))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketMonomial {
    #[serde(rename = "coef", with = "serde_scalar")]
    pub coefficient: Rational,
    pub brackets: Vec<Bracket>,
}

/// A formal sum of bracket monomials, kept in canonical form: brackets sorted
/// within and across each monomial, like terms merged, no zero terms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BracketPolynomial {
    terms: BTreeMap<Vec<Bracket>, Rational>,
}

impl BracketPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn bracket(b: Bracket) -> Self {
        let mut p = Self::zero();
        p.add_monomial(Rational::one(), vec![b]);
        p
    }

    pub fn from_monomials(terms: impl IntoIterator<Item = (Rational, Vec<Bracket>)>) -> Self {
        let mut p = Self::zero();
        for (c, bs) in terms {
            p.add_monomial(c, bs);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c · Π brackets` after canonicalizing.
    pub fn add_monomial(&mut self, c: Rational, brackets: Vec<Bracket>) {
        if c.is_zero() {
            return;
        }
        let mut sign = 1;
        let mut canon = Vec::with_capacity(brackets.len());
        for b in brackets {
            match canonical_bracket(b) {
                Some((s, sg)) => {
                    sign *= sg;
                    canon.push(s);
                }
                None => return,
            }
        }
        canon.sort();
        let c = if sign > 0 { c } else { -c };
        let entry = self
            .terms
            .entry(canon.clone())
            .or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&canon);
        }
    }

    pub fn terms(&self) -> Vec<BracketMonomial> {
        self.terms
            .iter()
            .map(|(b, c)| BracketMonomial {
                coefficient: c.clone(),
                brackets: b.clone(),
            })
            .collect()
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(b, c)| (b.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_monomial(c.clone(), b.clone());
        }
        out
    }

    /// Symbols occurring anywhere in the polynomial.
    pub fn symbols(&self) -> std::collections::BTreeSet<usize> {
        self.terms.keys().flatten().flatten().copied().collect()
    }

    pub fn contains_symbol(&self, x: usize) -> bool {
        self.terms
            .keys()
            .any(|bs| bs.iter().any(|b| b.contains(&x)))
    }

    /// Equal up to multiplication by −1.
    pub fn equal_up_to_sign(&self, other: &Self) -> bool {
        self == other || *self == other.neg()
    }

    /// Replaces every occurrence of `x` by `[p1p2p3]p4 − [p1p2p4]p3`,
    /// expanding multilinearly. Returns the result and whether `x` occurred.
    pub fn substitute_point(&self, x: usize, q: [usize; 4]) -> (Self, bool) {
        if !self.contains_symbol(x) {
            return (self.clone(), false);
        }
        let [p1, p2, p3, p4] = q;
        let mut out = Self::zero();
        for (brackets, c) in &self.terms {
            // Partial expansions: (coefficient, brackets so far).
            let mut partial: Vec<(Rational, Vec<Bracket>)> = vec![(c.clone(), Vec::new())];
            for &b in brackets {
                let Some(i) = b.iter().position(|&s| s == x) else {
                    for (_, bs) in &mut partial {
                        bs.push(b);
                    }
                    continue;
                };
                // [.., x, ..] = (−1)^i [x, a, b] with a, b in their original order.
                let rest: Vec<usize> = b.iter().copied().filter(|&s| s != x).collect();
                let (a, bb) = (rest[0], rest[1]);
                let sign = if i % 2 == 0 {
                    Rational::one()
                } else {
                    -Rational::one()
                };
                let mut next = Vec::with_capacity(partial.len() * 2);
                for (pc, bs) in partial {
                    let base = &pc * &sign;
                    let mut t1 = bs.clone();
                    t1.push([p1, p2, p3]);
                    t1.push([p4, a, bb]);
                    next.push((base.clone(), t1));
                    let mut t2 = bs;
                    t2.push([p1, p2, p4]);
                    t2.push([p3, a, bb]);
                    next.push((-base, t2));
                }
                partial = next;
            }
            for (pc, bs) in partial {
                out.add_monomial(pc, bs);
            }
        }
        (out, true)
    }

    /// Exact value with each bracket evaluated as a 3×3 determinant.
    pub fn evaluate(&self, r: &Realization) -> Result<Rational> {
        if r.dim != 3 {
            return Err(Error::DimensionMismatch {
                expected: 3,
                found: r.dim,
            });
        }
        let mut cache: BTreeMap<Bracket, Rational> = BTreeMap::new();
        let mut total = Rational::zero();
        for (brackets, c) in &self.terms {
            let mut term = c.clone();
            for b in brackets {
                let v = match cache.get(b) {
                    Some(v) => v.clone(),
                    None => {
                        let rows = b
                            .iter()
                            .map(|&s| r.vector(s).map(<[Rational]>::to_vec))
                            .collect::<Result<Vec<_>>>()?;
                        let v = RationalMatrix::from_rows(&rows)?.determinant()?;
                        cache.insert(*b, v.clone());
                        v
                    }
                };
                term *= v;
            }
            total += term;
        }
        Ok(total)
    }
}

impl fmt::Display for BracketPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (bs, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !mag.is_one() {
                write!(f, "{}", crate::linalg::format_rational(&mag))?;
            }
            for b in bs {
                write!(f, "[{} {} {}]", b[0], b[1], b[2])?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    terms: Vec<BracketMonomial>,
}

impl Serialize for BracketPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            terms: self.terms(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BracketPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PolyJson::deserialize(d)?;
        Ok(Self::from_monomials(
            raw.terms.into_iter().map(|m| (m.coefficient, m.brackets)),
        ))
    }
}

/// Evaluates a bracket polynomial on a realization.
pub fn evaluate_bracket_poly(p: &BracketPolynomial, r: &Realization) -> Result<Rational> {
    p.evaluate(r)
}
