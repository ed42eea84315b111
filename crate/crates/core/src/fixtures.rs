//! Named example matroids.

use rand::Rng;

use crate::error::Result;
use crate::linalg::SeededRng;
use crate::matroid::{ElementSet, Matroid, MatroidSpec, Presentation, PresentationKind};

pub struct Fixture {
    pub name: &'static str,
    pub ground_set: usize,
    pub rank: usize,
    pub kind: PresentationKind,
    pub sets: &'static [&'static [usize]],
    pub notes: &'static str,
}

use PresentationKind::{Circuits, Hyperplanes};

pub const FIXTURES: &[Fixture] = &[
    Fixture {
        name: "three_lines7",
        ground_set: 7,
        rank: 3,
        kind: Hyperplanes,
        sets: &[&[1, 2, 7], &[3, 4, 7], &[5, 6, 7]],
        notes: "Three concurrent lines through point 7. Solvable with chain length 2; a forest.",
    },
    Fixture {
        name: "quad6",
        ground_set: 6,
        rank: 3,
        kind: Hyperplanes,
        sets: &[&[1, 2, 3], &[3, 4, 5], &[1, 5, 6], &[2, 4, 6]],
        notes: "Complete quadrilateral: four lines meeting pairwise in six points. Solvable with chain length 1.",
    },
    Fixture {
        name: "fano7",
        ground_set: 7,
        rank: 3,
        kind: Hyperplanes,
        sets: &[&[1, 3, 6], &[2, 3, 5], &[1, 2, 4], &[4, 5, 6], &[2, 6, 7], &[1, 5, 7], &[3, 4, 7]],
        notes: "Fano plane. Every point has degree 3; neither solvable nor nilpotent.",
    },
    Fixture {
        name: "je9",
        ground_set: 9,
        rank: 3,
        kind: Hyperplanes,
        sets: &[&[1, 2, 7], &[3, 4, 8], &[5, 6, 9], &[1, 3, 5], &[2, 4, 6]],
        notes: "Nine points on five lines. S = {1,...,6}; nilpotent with the chain emptying at the second step; not a forest.",
    },
    Fixture {
        name: "nr11",
        ground_set: 11,
        rank: 4,
        kind: Hyperplanes,
        sets: &[
            &[1, 2, 3, 4],
            &[1, 2, 5, 6],
            &[1, 3, 5, 7],
            &[1, 4, 5, 8],
            &[2, 3, 5, 9],
            &[2, 6, 10, 11],
        ],
        notes: "Rank-4 paving matroid on 11 points with six dependent planes. Nilpotent chain {1..6}, {1,2}, empty; lifting dimension 5.",
    },
    Fixture {
        name: "kvt7",
        ground_set: 7,
        rank: 4,
        kind: Hyperplanes,
        sets: &[&[1, 2, 3, 4], &[1, 2, 5, 6], &[3, 4, 5, 6], &[1, 3, 5, 7], &[2, 4, 6, 7]],
        notes: "Rank-4 paving matroid on 7 points. Special with empty P, so it has a stable realization.",
    },
    Fixture {
        name: "sn10",
        ground_set: 10,
        rank: 4,
        kind: Hyperplanes,
        sets: &[&[1, 2, 3, 4], &[1, 2, 5, 6], &[1, 3, 7, 8], &[3, 5, 9, 10]],
        notes: "Rank-4 paving matroid on 10 points. Strong-nilpotent; deleting all four planes leaves no dependent hyperplane.",
    },
    Fixture {
        name: "u_3_5",
        ground_set: 5,
        rank: 3,
        kind: Circuits,
        sets: &[&[1, 2, 3, 4], &[1, 2, 3, 5], &[1, 2, 4, 5], &[1, 3, 4, 5], &[2, 3, 4, 5]],
        notes: "Uniform matroid of rank 3 on 5 points.",
    },
    Fixture {
        name: "u_4_6",
        ground_set: 6,
        rank: 4,
        kind: Hyperplanes,
        sets: &[],
        notes: "Uniform matroid of rank 4 on 6 points.",
    },
    Fixture {
        name: "line5p1",
        ground_set: 6,
        rank: 3,
        kind: Hyperplanes,
        sets: &[&[1, 2, 3, 4, 5]],
        notes: "Five collinear points and one point off the line. Its liftability matrix is taller than its rank, so minors of the bound size exist.",
    },
    Fixture {
        name: "nonspecial8",
        ground_set: 8,
        rank: 4,
        kind: Hyperplanes,
        sets: &[&[1, 2, 3, 4], &[1, 2, 5, 6], &[1, 2, 7, 8]],
        notes: "Three planes through the common line {1,2}. Solvable but not special.",
    },
];

impl Fixture {
    pub fn spec(&self) -> MatroidSpec {
        MatroidSpec {
            name: Some(self.name.to_string()),
            ground_set: self.ground_set,
            rank: self.rank,
            presentation: Presentation {
                kind: self.kind,
                sets: self.sets.iter().map(|s| s.to_vec()).collect(),
            },
            notes: Some(self.notes.to_string()),
        }
    }

    pub fn matroid(&self) -> Result<Matroid> {
        self.spec().build()
    }
}

pub fn find(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}

/// Builds a named fixture; panics on unknown names.
pub fn load(name: &str) -> Matroid {
    find(name)
        .unwrap_or_else(|| panic!("unknown fixture {name}"))
        .matroid()
        .expect("fixtures are valid")
}

pub fn names() -> impl Iterator<Item = &'static str> {
    FIXTURES.iter().map(|f| f.name)
}

/// Random `rank`-paving matroid on `ground` points: candidate hyperplanes of
/// size `rank` or `rank + 1` are kept while every pairwise intersection has at
/// most `rank − 2` points.
pub fn random_paving(
    rng: &mut SeededRng,
    ground: usize,
    rank: usize,
    attempts: usize,
) -> Result<Matroid> {
    let mut kept: Vec<ElementSet> = Vec::new();
    for _ in 0..attempts {
        let size = rng.gen_range(rank..=(rank + 1).min(ground - 1));
        let mut h = ElementSet::EMPTY;
        while h.len() < size {
            h.insert(rng.gen_range(1..=ground));
        }
        if kept
            .iter()
            .all(|&k| k != h && k.intersection(h).len() + 2 <= rank)
        {
            kept.push(h);
        }
    }
    let sets: Vec<Vec<usize>> = kept.iter().map(|h| h.to_vec()).collect();
    Matroid::paving_from_hyperplanes(ground, rank, &sets)
}
