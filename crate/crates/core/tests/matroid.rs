use matrovar::fixtures::{load, names, random_paving};
use matrovar::linalg::{seeded_rng, vector};
use matrovar::matroid::{matroid_from_json, matroid_of_vectors, MatroidSpec, VectorMap};
use matrovar::{set, ElementSet, Error, Matroid};
use proptest::prelude::*;

/// Rank by brute force from the circuit list: largest subset containing no circuit.
fn brute_rank(m: &Matroid, s: ElementSet) -> usize {
    s.all_subsets()
        .filter(|t| !m.circuits().iter().any(|c| c.is_subset(*t)))
        .map(ElementSet::len)
        .max()
        .unwrap_or(0)
}

fn subset_of(ground: ElementSet, bits: u64) -> ElementSet {
    ElementSet::from_bits(ground.bits() & (bits << 1))
}

#[test]
fn construction_examples() {
    let m = Matroid::from_circuits(3, 2, &[vec![1, 2, 3]]).unwrap();
    assert_eq!(m.rank(), 2);
    assert!(matches!(
        Matroid::from_circuits(3, 2, &[vec![1, 2], vec![1, 2, 3]]),
        Err(Error::NestedCircuits { .. })
    ));
    assert!(matches!(
        Matroid::from_circuits(3, 2, &[vec![1]]),
        Err(Error::Loop { element: 1 })
    ));
    assert!(matches!(
        Matroid::from_circuits(3, 3, &[vec![1, 2, 3]]),
        Err(Error::RankMismatch { .. })
    ));
}

#[test]
fn circuit_and_hyperplane_constructors_agree() {
    let lines = [set![1, 2, 7], set![3, 4, 7], set![5, 6, 7]];
    let mut circuits: Vec<Vec<usize>> = lines.iter().map(|l| l.to_vec()).collect();
    for s in ElementSet::range(7).subsets_of_size(4) {
        if !lines.iter().any(|l| l.is_subset(s)) {
            circuits.push(s.to_vec());
        }
    }
    let a = Matroid::from_circuits(7, 3, &circuits).unwrap();
    let b = Matroid::paving_from_hyperplanes(7, 3, &[vec![1, 2, 7], vec![3, 4, 7], vec![5, 6, 7]])
        .unwrap();
    assert_eq!(a.circuits(), b.circuits());
}

#[test]
fn paving_examples() {
    let nr = load("nr11");
    assert_eq!((nr.ground_size(), nr.rank()), (11, 4));
    assert!(nr.is_paving());
    assert!(matches!(
        Matroid::paving_from_hyperplanes(6, 4, &[vec![1, 2, 3, 4], vec![1, 2, 3, 5]]),
        Err(Error::NotPavingIntersection { .. })
    ));
    assert!(matches!(
        Matroid::paving_from_hyperplanes(6, 4, &[vec![1, 2, 3]]),
        Err(Error::HyperplaneTooSmall { .. })
    ));
}

#[test]
fn rank_and_closure_examples() {
    let m = load("three_lines7");
    assert_eq!(m.rank_of(ElementSet::EMPTY).unwrap(), 0);
    assert_eq!(m.rank_of(m.ground()).unwrap(), 3);
    assert_eq!(m.rank_of(set![1, 2, 7]).unwrap(), 2);
    assert_eq!(m.closure(ElementSet::EMPTY).unwrap(), ElementSet::EMPTY);
    assert_eq!(m.closure(set![1, 2]).unwrap(), set![1, 2, 7]);
    assert_eq!(m.closure(set![1, 3, 5]).unwrap(), m.ground());
    assert!(matches!(
        m.rank_of(set![8]),
        Err(Error::IndexOutOfRange { .. })
    ));
}

#[test]
fn restriction_examples() {
    let nr = load("nr11");
    let m1 = nr.restrict(ElementSet::range(6)).unwrap();
    assert_eq!(m1.rank(), 4);
    let fours: Vec<ElementSet> = m1
        .circuits()
        .iter()
        .copied()
        .filter(|c| c.len() == 4)
        .collect();
    assert_eq!(fours, vec![set![1, 2, 3, 4], set![1, 2, 5, 6]]);
    assert_eq!(nr.restrict(nr.ground()).unwrap().circuits(), nr.circuits());
    assert!(nr.restrict(set![1, 2, 3]).unwrap().circuits().is_empty());
}

#[test]
fn vectors_to_matroid_examples() {
    let basis: VectorMap = [
        (1, vector(&[1, 0, 0])),
        (2, vector(&[0, 1, 0])),
        (3, vector(&[0, 0, 1])),
    ]
    .into();
    assert!(matroid_of_vectors(3, &basis).unwrap().circuits().is_empty());
    let three: VectorMap = [
        (1, vector(&[1, 0])),
        (2, vector(&[0, 1])),
        (3, vector(&[1, 1])),
    ]
    .into();
    assert_eq!(
        matroid_of_vectors(2, &three).unwrap().circuits(),
        &[set![1, 2, 3]]
    );
    let zero: VectorMap = [(1, vector(&[0, 0]))].into();
    assert!(matches!(
        matroid_of_vectors(2, &zero),
        Err(Error::Loop { element: 1 })
    ));
}

#[test]
fn json_round_trip_and_errors() {
    for name in names() {
        let m = load(name);
        let spec = MatroidSpec::from_matroid(&m).unwrap();
        let back = matroid_from_json(&spec.to_json()).unwrap();
        assert_eq!(back.circuits(), m.circuits(), "{name}");
    }
    assert!(matroid_from_json("{").is_err());
    let nested =
        r#"{"ground_set":3,"rank":2,"presentation":{"kind":"circuits","sets":[[1,2],[1,2,3]]}}"#;
    assert!(matroid_from_json(nested).unwrap_err().is_input_error());
}

#[test]
fn ground_cap_is_enforced() {
    let big: Vec<Vec<usize>> = vec![];
    assert!(matches!(
        Matroid::paving_from_hyperplanes(40, 3, &big),
        Err(Error::GroundTooLarge { .. })
    ));
}

#[test]
fn paving_circuit_sizes() {
    let mut rng = seeded_rng(21);
    for _ in 0..30 {
        let m = random_paving(&mut rng, 9, 4, 8).unwrap();
        let n = m.rank();
        assert!(m
            .circuits()
            .iter()
            .all(|c| c.len() == n || c.len() == n + 1));
        for c in m.circuits().iter().filter(|c| c.len() == n) {
            assert_eq!(m.rank_of(*c).unwrap(), n - 1);
        }
    }
    let nr = load("nr11");
    for h in [set![1, 2, 3, 4], set![1, 2, 5, 6], set![2, 6, 10, 11]] {
        for s in h.subsets_of_size(4) {
            assert!(nr.circuits().contains(&s));
        }
    }
}

fn fixture_name() -> impl Strategy<Value = &'static str> {
    prop::sample::select(names().collect::<Vec<_>>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_is_monotone_and_submodular(name in fixture_name(), a in any::<u64>(), b in any::<u64>()) {
        let m = load(name);
        let (s, t) = (subset_of(m.ground(), a), subset_of(m.ground(), b));
        let r = |x| m.rank_of(x).unwrap();
        prop_assert!(r(s) <= s.len());
        prop_assert!(r(s.intersection(t)) <= r(s));
        prop_assert!(r(s) <= r(s.union(t)));
        prop_assert!(r(s.union(t)) + r(s.intersection(t)) <= r(s) + r(t));
    }

    #[test]
    fn rank_matches_brute_force(name in fixture_name(), a in any::<u64>()) {
        let m = load(name);
        let s = subset_of(m.ground(), a);
        prop_assert_eq!(m.rank_of(s).unwrap(), brute_rank(&m, s));
    }

    #[test]
    fn restriction_preserves_rank(name in fixture_name(), a in any::<u64>(), b in any::<u64>()) {
        let m = load(name);
        let s = subset_of(m.ground(), a);
        let t = s.intersection(subset_of(m.ground(), b));
        let sub = m.restrict(s).unwrap();
        prop_assert_eq!(sub.rank_of(t).unwrap(), m.rank_of(t).unwrap());
        prop_assert_eq!(sub.rank(), m.rank_of(s).unwrap());
    }

    #[test]
    fn closure_is_a_closure(name in fixture_name(), a in any::<u64>()) {
        let m = load(name);
        let s = subset_of(m.ground(), a);
        let cl = m.closure(s).unwrap();
        prop_assert!(s.is_subset(cl));
        prop_assert_eq!(m.closure(cl).unwrap(), cl);
        prop_assert_eq!(m.rank_of(cl).unwrap(), m.rank_of(s).unwrap());
    }
}
