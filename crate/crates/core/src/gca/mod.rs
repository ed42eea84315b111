//! Grassmann–Cayley algebra and bracket polynomials.

pub mod bracket;
pub mod extensor;
pub mod gm;

pub use bracket::{
    canonical_bracket, evaluate_bracket_poly, Bracket, BracketMonomial, BracketPolynomial,
};
pub use extensor::{expected_dimension_holds, Extensor};
pub use gm::{generate_gm, substitute_point, GmEntry, GmResult, StopCriterion, DEFAULT_GM_DEPTH};

/// Wedge product of vectors of length `d`.
pub fn join<R: AsRef<[crate::linalg::Rational]>>(
    vectors: &[R],
    d: usize,
) -> crate::Result<Extensor> {
    Extensor::join(vectors, d)
}

pub fn meet(v: &Extensor, w: &Extensor) -> crate::Result<Extensor> {
    v.meet(w)
}
