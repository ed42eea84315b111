use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use super::set::{ElementSet, MAX_LABEL};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_GROUND: usize = 20;
pub const MAX_GROUND_ENV: &str = "MATROVAR_MAX_GROUND";

/// Ground-set cap: `MATROVAR_MAX_GROUND` if set to a valid value, else 20.
pub fn max_ground() -> usize {
    std::env::var(MAX_GROUND_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .map_or(DEFAULT_MAX_GROUND, |v| v.clamp(1, MAX_LABEL))
}

/// A loopless matroid given by its circuits.
///
/// The ground set is an arbitrary set of labels; matroids built from input
/// use `{1, …, n}`, and restrictions keep the labels of the parent.
pub struct Matroid {
    ground: ElementSet,
    rank: usize,
    circuits: Vec<ElementSet>,
    name: Option<String>,
    rank_cache: RwLock<HashMap<ElementSet, usize>>,
}

impl Clone for Matroid {
    fn clone(&self) -> Self {
        Self {
            ground: self.ground,
            rank: self.rank,
            circuits: self.circuits.clone(),
            name: self.name.clone(),
            rank_cache: RwLock::new(HashMap::new()),
        }
    }
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.rank == other.rank && self.circuits == other.circuits
    }
}

impl Eq for Matroid {}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("name", &self.name)
            .field("ground", &self.ground)
            .field("rank", &self.rank)
            .field("circuits", &self.circuits)
            .finish()
    }
}

fn greedy_rank(circuits: &[ElementSet], s: ElementSet) -> usize {
    let mut indep = ElementSet::EMPTY;
    for e in s {
        let cand = indep.with(e);
        if !circuits.iter().any(|c| c.contains(e) && c.is_subset(cand)) {
            indep = cand;
        }
    }
    indep.len()
}

impl Matroid {
    /// Validated matroid on `{1, …, ground_size}`.
    pub fn from_circuits(ground_size: usize, rank: usize, circuits: &[Vec<usize>]) -> Result<Self> {
        check_ground_size(ground_size)?;
        let sets = circuits
            .iter()
            .map(|c| ElementSet::try_from_slice(c, ground_size))
            .collect::<Result<Vec<_>>>()?;
        Self::from_circuit_sets(ElementSet::range(ground_size), rank, sets)
    }

    /// Validated matroid on an arbitrary ground set.
    pub fn from_circuit_sets(
        ground: ElementSet,
        rank: usize,
        mut circuits: Vec<ElementSet>,
    ) -> Result<Self> {
        check_ground_size(ground.len())?;
        if let Some(c) = circuits.iter().find(|c| !c.is_subset(ground)) {
            let bad = c.difference(ground).first().unwrap_or(0);
            return Err(Error::IndexOutOfRange {
                element: bad,
                ground: ground.last().unwrap_or(0),
            });
        }
        circuits.sort();
        circuits.dedup();
        if let Some(c) = circuits.iter().find(|c| c.len() <= 1) {
            return match c.first() {
                Some(e) => Err(Error::Loop { element: e }),
                None => Err(Error::AxiomViolation(
                    "the empty set is listed as a circuit".into(),
                )),
            };
        }
        for (i, a) in circuits.iter().enumerate() {
            for b in &circuits[i + 1..] {
                let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
                if small.is_subset(*large) {
                    return Err(Error::NestedCircuits {
                        smaller: small.to_vec(),
                        larger: large.to_vec(),
                    });
                }
            }
        }
        let computed = greedy_rank(&circuits, ground);
        if computed != rank {
            return Err(Error::RankMismatch {
                declared: rank,
                computed,
            });
        }
        if let Some(c) = circuits.iter().find(|c| c.len() > rank + 1) {
            return Err(Error::AxiomViolation(format!(
                "circuit {c} has more than rank+1 = {} elements",
                rank + 1
            )));
        }
        Ok(Self::new_unchecked(ground, rank, circuits))
    }

    pub(crate) fn new_unchecked(
        ground: ElementSet,
        rank: usize,
        circuits: Vec<ElementSet>,
    ) -> Self {
        Self {
            ground,
            rank,
            circuits,
            name: None,
            rank_cache: RwLock::new(HashMap::new()),
        }
    }

    /// n-paving matroid on `{1, …, ground_size}` with the given dependent hyperplanes.
    pub fn paving_from_hyperplanes(
        ground_size: usize,
        n: usize,
        hyperplanes: &[Vec<usize>],
    ) -> Result<Self> {
        check_ground_size(ground_size)?;
        if ground_size < n + 1 {
            return Err(Error::GroundTooSmall {
                ground: ground_size,
                rank: n,
            });
        }
        let mut hs = hyperplanes
            .iter()
            .map(|h| ElementSet::try_from_slice(h, ground_size))
            .collect::<Result<Vec<_>>>()?;
        hs.sort();
        hs.dedup();
        for h in &hs {
            if h.len() < n {
                return Err(Error::HyperplaneTooSmall {
                    hyperplane: h.to_vec(),
                    size: h.len(),
                    min: n,
                });
            }
        }
        let max_shared = n.saturating_sub(2);
        for (i, a) in hs.iter().enumerate() {
            for b in &hs[i + 1..] {
                let shared = a.intersection(*b).len();
                if shared > max_shared || n < 2 {
                    return Err(Error::NotPavingIntersection {
                        first: a.to_vec(),
                        second: b.to_vec(),
                        shared,
                        max: max_shared,
                    });
                }
            }
        }
        let ground = ElementSet::range(ground_size);
        let mut circuits: Vec<ElementSet> = hs.iter().flat_map(|h| h.subsets_of_size(n)).collect();
        for s in ground.subsets_of_size(n + 1) {
            if hs.iter().all(|h| s.intersection(*h).len() < n) {
                circuits.push(s);
            }
        }
        Self::from_circuit_sets(ground, n, circuits)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn ground(&self) -> ElementSet {
        self.ground
    }

    pub fn ground_size(&self) -> usize {
        self.ground.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn circuits(&self) -> &[ElementSet] {
        &self.circuits
    }

    fn check_subset(&self, s: ElementSet) -> Result<()> {
        match s.difference(self.ground).first() {
            None => Ok(()),
            Some(e) => Err(Error::IndexOutOfRange {
                element: e,
                ground: self.ground.last().unwrap_or(0),
            }),
        }
    }

    pub fn check_element(&self, e: usize) -> Result<()> {
        if e == 0 || e > MAX_LABEL || !self.ground.contains(e) {
            return Err(Error::IndexOutOfRange {
                element: e,
                ground: self.ground.last().unwrap_or(0),
            });
        }
        Ok(())
    }

    /// Rank of `s`, which must lie in the ground set.
    pub fn rank_of(&self, s: ElementSet) -> Result<usize> {
        self.check_subset(s)?;
        Ok(self.rank_unchecked(s))
    }

    /// Rank of `s ∩ ground`.
    pub fn rank_unchecked(&self, s: ElementSet) -> usize {
        let s = s.intersection(self.ground);
        if let Some(&r) = self.rank_cache.read().expect("rank cache poisoned").get(&s) {
            return r;
        }
        let r = greedy_rank(&self.circuits, s);
        self.rank_cache
            .write()
            .expect("rank cache poisoned")
            .insert(s, r);
        r
    }

    pub fn closure(&self, s: ElementSet) -> Result<ElementSet> {
        self.check_subset(s)?;
        Ok(self.closure_unchecked(s))
    }

    pub fn closure_unchecked(&self, s: ElementSet) -> ElementSet {
        let r = self.rank_unchecked(s);
        self.ground
            .iter()
            .filter(|&x| s.contains(x) || self.rank_unchecked(s.with(x)) == r)
            .collect()
    }

    pub fn is_independent(&self, s: ElementSet) -> bool {
        self.rank_unchecked(s) == s.len()
    }

    /// Restriction to `s`; labels are preserved.
    pub fn restrict(&self, s: ElementSet) -> Result<Matroid> {
        self.check_subset(s)?;
        let circuits: Vec<ElementSet> = self
            .circuits
            .iter()
            .copied()
            .filter(|c| c.is_subset(s))
            .collect();
        let rank = self.rank_unchecked(s);
        let mut m = Matroid::new_unchecked(s, rank, circuits);
        m.name = self.name.clone();
        Ok(m)
    }

    /// Isomorphic copy on `{1, …, |ground|}` together with the label map
    /// (`map[i]` is the original label of new element `i + 1`).
    pub fn relabeled(&self) -> (Matroid, Vec<usize>) {
        let map = self.ground.to_vec();
        let pos: HashMap<usize, usize> = map.iter().enumerate().map(|(i, &e)| (e, i + 1)).collect();
        let circuits = self
            .circuits
            .iter()
            .map(|c| c.iter().map(|e| pos[&e]).collect())
            .collect::<Vec<ElementSet>>();
        let mut circuits = circuits;
        circuits.sort();
        let mut m = Matroid::new_unchecked(ElementSet::range(map.len()), self.rank, circuits);
        m.name = self.name.clone();
        (m, map)
    }

    /// Circuits of size at most `rank(M)`.
    pub fn small_circuits(&self) -> impl Iterator<Item = ElementSet> + '_ {
        self.circuits
            .iter()
            .copied()
            .filter(move |c| c.len() <= self.rank)
    }

    /// Whether every circuit has size `rank` or `rank + 1`.
    pub fn is_paving(&self) -> bool {
        self.circuits.iter().all(|c| c.len() >= self.rank)
    }

    /// Checks the strong circuit-elimination axiom. Exponential; intended
    /// for small inputs and tests.
    pub fn check_circuit_elimination(&self) -> Result<()> {
        let mut seen = std::collections::HashSet::new();
        for (i, &a) in self.circuits.iter().enumerate() {
            for &b in &self.circuits[i + 1..] {
                for e in a.intersection(b) {
                    let u = a.union(b).without(e);
                    if seen.insert(u) && !self.circuits.iter().any(|c| c.is_subset(u)) {
                        return Err(Error::AxiomViolation(format!(
                            "no circuit inside ({a} ∪ {b}) \\ {{{e}}}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

fn check_ground_size(size: usize) -> Result<()> {
    let cap = max_ground();
    if size > cap {
        return Err(Error::GroundTooLarge { size, cap });
    }
    Ok(())
}
