//! Subspace classes, incidences, degrees and the point sets derived from them.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matroid::{ElementSet, Matroid};

/// Circuits of size at most the rank that share a closure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubspaceClass {
    pub id: usize,
    /// Union of the member circuits.
    pub points: ElementSet,
    pub class_rank: usize,
    pub representative_circuit: ElementSet,
    pub closure: ElementSet,
}

/// Partitions the circuits of size at most `rank(M)` by closure. Classes are
/// ordered by their point sets and numbered from 0.
pub fn subspace_classes(m: &Matroid) -> Vec<SubspaceClass> {
    let mut groups: BTreeMap<ElementSet, Vec<ElementSet>> = BTreeMap::new();
    for c in m.small_circuits() {
        groups.entry(m.closure_unchecked(c)).or_default().push(c);
    }
    let mut classes: Vec<SubspaceClass> = groups
        .into_iter()
        .map(|(closure, members)| {
            let points = members
                .iter()
                .fold(ElementSet::EMPTY, |acc, c| acc.union(*c));
            let representative_circuit = *members.iter().min().expect("nonempty group");
            SubspaceClass {
                id: 0,
                points,
                class_rank: representative_circuit.len() - 1,
                representative_circuit,
                closure,
            }
        })
        .collect();
    classes.sort_by(|a, b| a.points.cmp(&b.points).then(a.closure.cmp(&b.closure)));
    for (i, c) in classes.iter_mut().enumerate() {
        c.id = i;
    }
    classes
}

/// `a_L = Σ_{l∈L} rank(l) − n(|L| − 1)` for ranks `ranks` in rank-`n` space.
pub fn expected_dim_formula(n: usize, ranks: impl IntoIterator<Item = usize>) -> i64 {
    let (sum, count) = ranks
        .into_iter()
        .fold((0i64, 0i64), |(s, c), r| (s + r as i64, c + 1));
    sum - n as i64 * (count - 1)
}

/// All incidence data of a matroid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigReport {
    pub ground: ElementSet,
    pub rank: usize,
    pub classes: Vec<SubspaceClass>,
    /// `L_p`: ids of the classes containing each point.
    pub incidence: BTreeMap<usize, Vec<usize>>,
    pub degrees: BTreeMap<usize, usize>,
    /// `S_M`: points of degree greater than one.
    pub s_points: ElementSet,
    /// `P_M`: points with `a_p ≤ 0`.
    pub p_points: ElementSet,
    /// `a_p` for every point.
    pub expected_dims: BTreeMap<usize, i64>,
    /// `M(0)`: points on no class.
    pub free_points: ElementSet,
    /// Classes whose point set is smaller than their closure.
    pub closure_differs: Vec<usize>,
}

impl ConfigReport {
    pub fn new(m: &Matroid) -> Self {
        let classes = subspace_classes(m);
        let n = m.rank();
        let mut incidence = BTreeMap::new();
        let mut degrees = BTreeMap::new();
        let mut expected_dims = BTreeMap::new();
        let mut s_points = ElementSet::EMPTY;
        let mut p_points = ElementSet::EMPTY;
        let mut free_points = ElementSet::EMPTY;
        for p in m.ground() {
            let ids: Vec<usize> = classes
                .iter()
                .filter(|c| c.points.contains(p))
                .map(|c| c.id)
                .collect();
            let a = expected_dim_formula(n, ids.iter().map(|&i| classes[i].class_rank));
            match ids.len() {
                0 => free_points.insert(p),
                1 => {}
                _ => s_points.insert(p),
            }
            if a <= 0 {
                p_points.insert(p);
            }
            degrees.insert(p, ids.len());
            expected_dims.insert(p, a);
            incidence.insert(p, ids);
        }
        let closure_differs = classes
            .iter()
            .filter(|c| c.points != c.closure)
            .map(|c| c.id)
            .collect();
        Self {
            ground: m.ground(),
            rank: n,
            classes,
            incidence,
            degrees,
            s_points,
            p_points,
            expected_dims,
            free_points,
            closure_differs,
        }
    }

    pub fn lines_through(&self, p: usize) -> &[usize] {
        self.incidence.get(&p).map_or(&[], Vec::as_slice)
    }

    pub fn degree(&self, p: usize) -> usize {
        self.degrees.get(&p).copied().unwrap_or(0)
    }

    pub fn class(&self, id: usize) -> Result<&SubspaceClass> {
        self.classes
            .get(id)
            .ok_or_else(|| Error::Precondition(format!("unknown class id {id}")))
    }

    /// `S_l = S_M ∩ l`.
    pub fn s_of_class(&self, id: usize) -> ElementSet {
        self.classes[id].points.intersection(self.s_points)
    }

    /// `P_l = P_M ∩ l`.
    pub fn p_of_class(&self, id: usize) -> ElementSet {
        self.classes[id].points.intersection(self.p_points)
    }

    /// `a_L` for a set of class ids.
    pub fn expected_dim_of_set(&self, ids: &[usize]) -> Result<i64> {
        let ranks = ids
            .iter()
            .map(|&i| self.class(i).map(|c| c.class_rank))
            .collect::<Result<Vec<_>>>()?;
        Ok(expected_dim_formula(self.rank, ranks))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

pub fn config_report(m: &Matroid) -> ConfigReport {
    ConfigReport::new(m)
}

/// `a_p`; `n` for points on no class.
pub fn expected_dim(m: &Matroid, p: usize) -> Result<i64> {
    m.check_element(p)?;
    let r = ConfigReport::new(m);
    Ok(r.expected_dims[&p])
}

pub fn expected_dim_of_set(m: &Matroid, ids: &[usize]) -> Result<i64> {
    ConfigReport::new(m).expected_dim_of_set(ids)
}
