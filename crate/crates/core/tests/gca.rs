use std::collections::HashSet;

use matrovar::chains::is_forest;
use matrovar::fixtures::{load, names};
use matrovar::gca::{
    expected_dimension_holds, generate_gm, join, meet, substitute_point, BracketPolynomial,
    Extensor,
};
use matrovar::linalg::{
    int, random_integer_vector, seeded_rng, vector, Rational, RationalMatrix, RationalSubspace,
    SampleParams,
};
use matrovar::realize::realize_nilpotent;
use matrovar::Realization;
use num_traits::Zero;
use proptest::prelude::*;

fn det(columns: &[Vec<Rational>]) -> Rational {
    RationalMatrix::from_columns(columns[0].len(), columns)
        .unwrap()
        .determinant()
        .unwrap()
}

#[test]
fn join_examples() {
    let e = join(&[vector(&[1, 0, 0]), vector(&[0, 1, 0])], 3).unwrap();
    assert_eq!(e.coords().len(), 1);
    let v = vector(&[2, 3, 5]);
    assert!(join(&[v.clone(), v], 3).unwrap().is_zero());
    let mut rng = seeded_rng(31);
    for _ in 0..10 {
        let vs: Vec<_> = (0..4)
            .map(|_| random_integer_vector(&mut rng, 4, 9))
            .collect();
        let top = join(&vs, 4).unwrap();
        assert_eq!(top.coordinate(matrovar::ElementSet::range(4)), det(&vs));
    }
    assert!(join(&[vector(&[1, 0])], 3).is_err());
}

#[test]
fn meet_of_plane_with_itself_is_zero() {
    let p = join(&[vector(&[1, 2, 0]), vector(&[0, 1, 1])], 3).unwrap();
    assert!(meet(&p, &p).unwrap().is_zero());
}

/// `(v3 ∧ v4) ∨ (v1 ∧ v2)`, joined with `v5 ∧ v6`, equals `[312][456] − [412][356]`.
#[test]
fn concurrency_expansion() {
    let mut rng = seeded_rng(32);
    for _ in 0..10 {
        let v: Vec<Vec<Rational>> = (0..7)
            .map(|_| random_integer_vector(&mut rng, 3, 20))
            .collect();
        let x = meet(
            &join(&[&v[3], &v[4]], 3).unwrap(),
            &join(&[&v[1], &v[2]], 3).unwrap(),
        )
        .unwrap();
        let x = x.to_vector().unwrap();
        let value = det(&[x, v[5].clone(), v[6].clone()]);
        let b = |i: usize, j: usize, k: usize| det(&[v[i].clone(), v[j].clone(), v[k].clone()]);
        assert_eq!(value, b(3, 1, 2) * b(4, 5, 6) - b(4, 1, 2) * b(3, 5, 6));
    }
}

#[test]
fn expected_dimension_examples() {
    let plane = |a: &[i64], b: &[i64]| RationalSubspace::span(3, &[vector(a), vector(b)]).unwrap();
    let p = plane(&[1, 0, 0], &[0, 1, 0]);
    assert!(expected_dimension_holds(std::slice::from_ref(&p)).unwrap());
    let mut rng = seeded_rng(33);
    for _ in 0..10 {
        let q = RationalSubspace::span(
            3,
            &[
                random_integer_vector(&mut rng, 3, 50),
                random_integer_vector(&mut rng, 3, 50),
            ],
        )
        .unwrap();
        if q.dim() == 2 && q != p {
            assert!(expected_dimension_holds(&[p.clone(), q.clone()]).unwrap());
            assert_eq!(p.intersect(&q).unwrap().dim(), 1);
        }
    }
    assert!(!expected_dimension_holds(&[p.clone(), p]).unwrap());
}

#[test]
fn substitution_examples() {
    let m = load("three_lines7");
    let p = BracketPolynomial::bracket([1, 2, 7]);
    let (q, changed) = substitute_point(&m, &p, 7, [3, 4, 5, 6]).unwrap();
    assert!(changed);
    let target = BracketPolynomial::from_monomials([
        (int(1), vec![[3, 4, 5], [1, 2, 6]]),
        (int(-1), vec![[3, 4, 6], [1, 2, 5]]),
    ]);
    assert_eq!(q, target);
    let other = BracketPolynomial::bracket([1, 3, 5]);
    assert_eq!(
        other.substitute_point(7, [3, 4, 5, 6]),
        (other.clone(), false)
    );
    for seed in 0..5 {
        let r = realize_nilpotent(&m, &mut seeded_rng(seed), SampleParams::default()).unwrap();
        let (twice, _) = q.substitute_point(7, [1, 2, 3, 4]);
        assert!(twice.evaluate(&r).unwrap().is_zero());
        assert!(q.evaluate(&r).unwrap().is_zero());
    }
}

#[test]
fn evaluation_examples() {
    let r = Realization::new(
        3,
        [
            (1, vector(&[1, 0, 0])),
            (2, vector(&[0, 1, 0])),
            (3, vector(&[0, 0, 1])),
        ]
        .into(),
    );
    assert!(BracketPolynomial::zero().evaluate(&r).unwrap().is_zero());
    assert_eq!(
        BracketPolynomial::bracket([1, 2, 3]).evaluate(&r).unwrap(),
        int(1)
    );
    assert!(BracketPolynomial::bracket([1, 2, 4]).evaluate(&r).is_err());
}

fn forest_configurations() -> Vec<matrovar::Matroid> {
    names()
        .map(load)
        .filter(|m| is_forest(m).is_ok_and(|f| f.forest))
        .collect()
}

#[test]
fn gm_vanishes_on_forest_realizations() {
    let forests = forest_configurations();
    assert!(forests.iter().any(|m| m.name() == Some("three_lines7")));
    for m in &forests {
        let gm = generate_gm(m, 2).unwrap();
        for seed in 0..10 {
            let r = realize_nilpotent(m, &mut seeded_rng(seed), SampleParams::default()).unwrap();
            for p in gm.polynomials() {
                assert!(p.evaluate(&r).unwrap().is_zero(), "{p} on {:?}", m.name());
            }
        }
    }
}

#[test]
fn gm_is_duplicate_free_and_closed() {
    let m = load("three_lines7");
    let gm = generate_gm(&m, 2).unwrap();
    let distinct: HashSet<&BracketPolynomial> = gm.polynomials().collect();
    assert_eq!(distinct.len(), gm.entries.len());
    for e in &gm.entries {
        assert!(e.depth <= gm.depth_reached);
        if let Some(o) = &e.origin {
            let parent = &gm.entries[o.parent].polynomial;
            assert_eq!(
                parent.substitute_point(o.point, o.substitution).0,
                e.polynomial
            );
            assert_eq!(gm.entries[o.parent].depth + 1, e.depth);
        }
    }
    let x0 = generate_gm(&load("line5p1"), 3).unwrap();
    assert!(x0.stabilized && x0.depth_reached == 0);
}

fn random_subspace(
    rng: &mut matrovar::linalg::SeededRng,
    d: usize,
    k: usize,
    bound: u64,
) -> (Extensor, RationalSubspace) {
    let vs: Vec<_> = (0..k)
        .map(|_| random_integer_vector(rng, d, bound))
        .collect();
    (
        join(&vs, d).unwrap(),
        RationalSubspace::span(d, &vs).unwrap(),
    )
}

#[test]
fn meet_detects_spanning_pairs() {
    for d in 3..=5 {
        let mut rng = seeded_rng(100 + d as u64);
        for i in 0..100 {
            let k = 1 + i % d;
            let j = d - k + (i / d) % k.max(1);
            let j = j.clamp(1, d);
            // A small bound makes degenerate pairs common.
            let (v, a) = random_subspace(&mut rng, d, k, 2);
            let (w, b) = random_subspace(&mut rng, d, j, 2);
            let m = meet(&v, &w).unwrap();
            let spanning = a.dim() == k && b.dim() == j && a.sum(&b).unwrap().is_full();
            assert_eq!(!m.is_zero(), spanning, "d={d} k={k} j={j}");
            if spanning {
                assert_eq!(m.span(), a.intersect(&b).unwrap());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn meet_of_complementary_steps_is_bracket(seed in any::<u64>(), d in 2usize..=5, k in 1usize..5) {
        let k = k.min(d - 1);
        let mut rng = seeded_rng(seed);
        let vs: Vec<_> = (0..d).map(|_| random_integer_vector(&mut rng, d, 9)).collect();
        let v = join(&vs[..k], d).unwrap();
        let w = join(&vs[k..], d).unwrap();
        let s = meet(&v, &w).unwrap();
        prop_assert_eq!(s.step(), 0);
        prop_assert_eq!(s.to_scalar().unwrap(), det(&vs));
    }

    #[test]
    fn substitution_preserves_vanishing(seed in 0u64..1000, first in 0usize..12, second in 0usize..12) {
        let m = load("three_lines7");
        let r = realize_nilpotent(&m, &mut seeded_rng(seed), SampleParams::default()).unwrap();
        let choices = matrovar::gca::gm::substitution_choices(
            &m.circuits().iter().copied().filter(|c| c.len() == 3).collect::<Vec<_>>(),
            7,
        );
        let p = BracketPolynomial::bracket([3, 4, 7]);
        prop_assert!(p.evaluate(&r).unwrap().is_zero());
        let (p1, _) = p.substitute_point(7, choices[first % choices.len()]);
        prop_assert!(p1.evaluate(&r).unwrap().is_zero());
        let (p2, _) = p1.substitute_point(7, choices[second % choices.len()]);
        prop_assert!(p2.evaluate(&r).unwrap().is_zero());
    }
}
