//! Nilpotent and solvable chains and the classifications built on them.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::config::{expected_dim_formula, ConfigReport};
use crate::error::{Error, Result};
use crate::matroid::{ElementSet, Matroid};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainKind {
    Nilpotent,
    Solvable,
}

impl std::str::FromStr for ChainKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nilpotent" => Ok(ChainKind::Nilpotent),
            "solvable" => Ok(ChainKind::Solvable),
            other => Err(Error::Schema(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainResult {
    pub kind: ChainKind,
    /// `M_0 ⊋ M_1 ⊋ …`, ending at ∅ or at the first repeated member.
    pub chain: Vec<ElementSet>,
    pub terminated_empty: bool,
    /// Index of the empty member, or of the stable member when the chain stalls.
    pub length: usize,
    pub stabilized_at: Option<ElementSet>,
}

fn next_member(m: &Matroid, current: ElementSet, kind: ChainKind) -> ElementSet {
    let sub = m
        .restrict(current)
        .expect("chain members lie in the ground set");
    let report = ConfigReport::new(&sub);
    match kind {
        ChainKind::Nilpotent => report.s_points,
        ChainKind::Solvable => report.p_points,
    }
}

pub fn chain(m: &Matroid, kind: ChainKind) -> ChainResult {
    let mut members = vec![m.ground()];
    let mut stabilized_at = None;
    for _ in 0..=m.ground_size() {
        let cur = *members.last().expect("nonempty chain");
        if cur.is_empty() {
            break;
        }
        let next = next_member(m, cur, kind);
        if next == cur {
            stabilized_at = Some(cur);
            break;
        }
        members.push(next);
    }
    let terminated_empty = members.last().is_some_and(|s| s.is_empty());
    ChainResult {
        kind,
        length: members.len() - 1,
        chain: members,
        terminated_empty,
        stabilized_at,
    }
}

pub fn nilpotent_chain(m: &Matroid) -> ChainResult {
    chain(m, ChainKind::Nilpotent)
}

pub fn solvable_chain(m: &Matroid) -> ChainResult {
    chain(m, ChainKind::Solvable)
}

pub fn is_nilpotent(m: &Matroid) -> bool {
    nilpotent_chain(m).terminated_empty
}

pub fn is_solvable(m: &Matroid) -> bool {
    solvable_chain(m).terminated_empty
}

/// Some member of the nilpotent chain has rank below `rank(M)`.
pub fn is_weak_nilpotent(m: &Matroid) -> bool {
    nilpotent_chain(m)
        .chain
        .iter()
        .any(|&s| m.rank_unchecked(s) < m.rank())
}

fn check_point_line(m: &Matroid) -> Result<()> {
    if m.rank() != 3 {
        return Err(Error::NotPointLine(format!("rank {}", m.rank())));
    }
    if let Some(c) = m.circuits().iter().find(|c| c.len() < 3) {
        return Err(Error::NotPointLine(format!("parallel elements {c}")));
    }
    Ok(())
}

/// Closed walk `points[0], lines[0], points[1], …, lines[k-1], points[0]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cycle {
    pub points: Vec<usize>,
    pub lines: Vec<ElementSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForestResult {
    pub forest: bool,
    pub cycle: Option<Cycle>,
}

/// Depth-first search for a cycle in the point–line incidence graph.
pub fn is_forest(m: &Matroid) -> Result<ForestResult> {
    check_point_line(m)?;
    let lines: Vec<ElementSet> = ConfigReport::new(m)
        .classes
        .iter()
        .map(|c| c.points)
        .collect();
    let cycle = find_incidence_cycle(m.ground(), &lines);
    Ok(ForestResult {
        forest: cycle.is_none(),
        cycle,
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Node {
    Point(usize),
    Line(usize),
}

fn find_incidence_cycle(points: ElementSet, lines: &[ElementSet]) -> Option<Cycle> {
    let neighbours = |n: Node| -> Vec<Node> {
        match n {
            Node::Point(p) => (0..lines.len())
                .filter(|&i| lines[i].contains(p))
                .map(Node::Line)
                .collect(),
            Node::Line(i) => lines[i].iter().map(Node::Point).collect(),
        }
    };
    let mut visited_points = ElementSet::EMPTY;
    let mut visited_lines = vec![false; lines.len()];
    for start in points {
        if visited_points.contains(start) {
            continue;
        }
        // Iterative DFS keeping the current path.
        let mut path: Vec<Node> = vec![Node::Point(start)];
        let mut pending: Vec<Vec<Node>> = vec![neighbours(Node::Point(start))];
        pending[0].reverse();
        visited_points.insert(start);
        while let Some(frontier) = pending.last_mut() {
            let Some(next) = frontier.pop() else {
                pending.pop();
                path.pop();
                continue;
            };
            let parent = if path.len() >= 2 {
                Some(path[path.len() - 2])
            } else {
                None
            };
            if parent == Some(next) {
                continue;
            }
            let seen = match next {
                Node::Point(p) => visited_points.contains(p),
                Node::Line(i) => visited_lines[i],
            };
            if seen {
                let pos = path.iter().position(|&n| n == next)?;
                return Some(cycle_from_path(&path[pos..], lines));
            }
            match next {
                Node::Point(p) => visited_points.insert(p),
                Node::Line(i) => visited_lines[i] = true,
            }
            path.push(next);
            let mut ns = neighbours(next);
            ns.reverse();
            pending.push(ns);
        }
    }
    None
}

fn cycle_from_path(path: &[Node], lines: &[ElementSet]) -> Cycle {
    // Rotate so the walk starts at a point.
    let start = path
        .iter()
        .position(|n| matches!(n, Node::Point(_)))
        .unwrap_or(0);
    let mut points = Vec::new();
    let mut ls = Vec::new();
    for n in path[start..].iter().chain(&path[..start]) {
        match *n {
            Node::Point(p) => points.push(p),
            Node::Line(i) => ls.push(lines[i]),
        }
    }
    Cycle { points, lines: ls }
}

/// Forest test by peeling: repeatedly remove a line meeting the other
/// remaining lines in at most one point.
pub fn is_forest_by_peeling(m: &Matroid) -> Result<bool> {
    check_point_line(m)?;
    let mut lines: Vec<ElementSet> = ConfigReport::new(m)
        .classes
        .iter()
        .map(|c| c.points)
        .collect();
    while !lines.is_empty() {
        let leaf = (0..lines.len()).find(|&i| {
            let others = lines
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(ElementSet::EMPTY, |acc, (_, l)| acc.union(*l));
            lines[i].intersection(others).len() <= 1
        });
        match leaf {
            Some(i) => {
                lines.remove(i);
            }
            None => return Ok(false),
        }
    }
    Ok(true)
}

/// Checks that a closed walk is a cycle of the incidence structure.
pub fn is_valid_cycle(lines: &[ElementSet], cycle: &Cycle) -> bool {
    let k = cycle.points.len();
    if k < 2 || cycle.lines.len() != k {
        return false;
    }
    let distinct: HashSet<usize> = cycle.points.iter().copied().collect();
    if distinct.len() != k {
        return false;
    }
    (0..k).all(|j| {
        let l = cycle.lines[j];
        lines.contains(&l)
            && l.contains(cycle.points[j])
            && l.contains(cycle.points[(j + 1) % k])
            && cycle.lines[(j + 1) % k] != l
    })
}

/// Dependent hyperplanes of an n-paving matroid restricted to `current`.
fn hyperplanes_in(hyperplanes: &[ElementSet], current: ElementSet, n: usize) -> Vec<ElementSet> {
    hyperplanes
        .iter()
        .map(|h| h.intersection(current))
        .filter(|h| h.len() >= n)
        .collect()
}

fn degree_in(lines: &[ElementSet], p: usize) -> usize {
    lines.iter().filter(|l| l.contains(p)).count()
}

fn check_paving(m: &Matroid) -> Result<Vec<ElementSet>> {
    if !m.is_paving() {
        return Err(Error::NotPaving);
    }
    Ok(ConfigReport::new(m)
        .classes
        .iter()
        .map(|c| c.points)
        .collect())
}

/// The points of `l` of degree > 1 (`S_l`) or of degree ≥ n (`P_l`).
fn kept_points(lines: &[ElementSet], l: ElementSet, n: usize, kind: ChainKind) -> ElementSet {
    let min_degree = match kind {
        ChainKind::Nilpotent => 2,
        ChainKind::Solvable => n.max(1),
    };
    l.iter()
        .filter(|&p| degree_in(lines, p) >= min_degree)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeletionSequence {
    pub mode: ChainKind,
    pub hyperplanes: Vec<ElementSet>,
    /// Point set left after all deletions.
    pub remaining: ElementSet,
}

/// Greedy deletion of dependent hyperplanes, lowest first. In nilpotent mode
/// a hyperplane `l` is deletable when `|l ∩ S| ≤ n − 1` and deletion keeps
/// `S_l`; in solvable mode the same holds with `P` in place of `S`.
pub fn deletion_sequence(m: &Matroid, mode: ChainKind) -> Result<Option<DeletionSequence>> {
    let all = check_paving(m)?;
    let n = m.rank();
    let mut current = m.ground();
    let mut seq = Vec::new();
    loop {
        let lines = hyperplanes_in(&all, current, n);
        if lines.is_empty() {
            return Ok(Some(DeletionSequence {
                mode,
                hyperplanes: seq,
                remaining: current,
            }));
        }
        let choice = lines
            .iter()
            .map(|&l| (l, kept_points(&lines, l, n, mode)))
            .find(|(_, kept)| kept.len() < n);
        let Some((l, kept)) = choice else {
            return Ok(None);
        };
        seq.push(l);
        current = current.difference(l).union(kept);
    }
}

/// Applies a deletion sequence, checking each step; returns the final point set.
pub fn apply_deletions(m: &Matroid, mode: ChainKind, seq: &[ElementSet]) -> Result<ElementSet> {
    let all = check_paving(m)?;
    let n = m.rank();
    let mut current = m.ground();
    for &l in seq {
        let lines = hyperplanes_in(&all, current, n);
        if !lines.contains(&l) {
            return Err(Error::Precondition(format!(
                "{l} is not a dependent hyperplane at this step"
            )));
        }
        let kept = kept_points(&lines, l, n, mode);
        if kept.len() >= n {
            return Err(Error::Precondition(format!(
                "{l} keeps {} points",
                kept.len()
            )));
        }
        current = current.difference(l).union(kept);
    }
    Ok(current)
}

/// For every `0 ≤ k ≤ n − 2`, `l` has at most `k` points of degree `≥ n − k`.
pub fn satisfies_degree_condition(lines: &[ElementSet], l: ElementSet, n: usize) -> bool {
    let degrees: Vec<usize> = l.iter().map(|p| degree_in(lines, p)).collect();
    (0..=n.saturating_sub(2)).all(|k| degrees.iter().filter(|&&d| d >= n - k).count() <= k)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrongNilpotentResult {
    pub strong_nilpotent: bool,
    pub sequence: Option<Vec<ElementSet>>,
}

/// Backtracking search for a strong-nilpotent deletion sequence. Degrees are
/// counted in the current submatroid.
pub fn is_strong_nilpotent(m: &Matroid) -> Result<StrongNilpotentResult> {
    let all = check_paving(m)?;
    let n = m.rank();
    let mut failed: HashSet<ElementSet> = HashSet::new();
    let mut seq = Vec::new();
    let found = strong_search(&all, m.ground(), n, &mut seq, &mut failed);
    Ok(StrongNilpotentResult {
        strong_nilpotent: found,
        sequence: found.then_some(seq),
    })
}

fn strong_search(
    all: &[ElementSet],
    current: ElementSet,
    n: usize,
    seq: &mut Vec<ElementSet>,
    failed: &mut HashSet<ElementSet>,
) -> bool {
    let lines = hyperplanes_in(all, current, n);
    if lines.is_empty() {
        return true;
    }
    if failed.contains(&current) {
        return false;
    }
    for &l in &lines {
        if !satisfies_degree_condition(&lines, l, n) {
            continue;
        }
        let kept = kept_points(&lines, l, n, ChainKind::Nilpotent);
        seq.push(l);
        if strong_search(all, current.difference(l).union(kept), n, seq, failed) {
            return true;
        }
        seq.pop();
    }
    failed.insert(current);
    false
}

/// Checks a proposed strong-nilpotent sequence step by step.
pub fn check_strong_sequence(m: &Matroid, seq: &[ElementSet]) -> Result<bool> {
    let all = check_paving(m)?;
    let n = m.rank();
    let mut current = m.ground();
    for &l in seq {
        let lines = hyperplanes_in(&all, current, n);
        if !lines.contains(&l) || !satisfies_degree_condition(&lines, l, n) {
            return Ok(false);
        }
        current = current
            .difference(l)
            .union(kept_points(&lines, l, n, ChainKind::Nilpotent));
    }
    Ok(hyperplanes_in(&all, current, n).is_empty())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialViolation {
    pub level: usize,
    pub point: usize,
    pub classes: Vec<ElementSet>,
    pub intersection: ElementSet,
    pub intersection_rank: usize,
    pub expected: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialResult {
    pub special: bool,
    pub violation: Option<SpecialViolation>,
}

/// For every solvable-chain level `M^j`, every `q ∈ M^j \ M^{j+1}` and every
/// nonempty `L ⊆ L_q` in `M^j`: `rank(∩ L) ≤ a_L` with `a_L` taken in `M^j`.
pub fn is_special(m: &Matroid) -> Result<SpecialResult> {
    let ch = solvable_chain(m);
    if !ch.terminated_empty {
        return Err(Error::NotSolvable);
    }
    for (level, pair) in ch.chain.windows(2).enumerate() {
        let (cur, next) = (pair[0], pair[1]);
        let sub = m.restrict(cur)?;
        let report = ConfigReport::new(&sub);
        for q in cur.difference(next) {
            let through = report.lines_through(q);
            for mask in 1u64..(1 << through.len()) {
                let chosen: Vec<&crate::config::SubspaceClass> = (0..through.len())
                    .filter(|b| mask & (1 << b) != 0)
                    .map(|b| &report.classes[through[b]])
                    .collect();
                let inter = chosen.iter().fold(cur, |acc, c| acc.intersection(c.points));
                let r = m.rank_unchecked(inter);
                let a = expected_dim_formula(sub.rank(), chosen.iter().map(|c| c.class_rank));
                if (r as i64) > a {
                    return Ok(SpecialResult {
                        special: false,
                        violation: Some(SpecialViolation {
                            level,
                            point: q,
                            classes: chosen.iter().map(|c| c.points).collect(),
                            intersection: inter,
                            intersection_rank: r,
                            expected: a,
                        }),
                    });
                }
            }
        }
    }
    Ok(SpecialResult {
        special: true,
        violation: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimCertificate {
    /// `M_0, …, M_k` with `M_k` the first member of rank below `rank(M)`.
    pub chain_prefix: Vec<ElementSet>,
    pub constants: Vec<usize>,
    pub terminal_rank: usize,
    pub dim_value: usize,
}

/// `c = Σ_l (rank(l) − rank(S_l)) + |M(0)|` for one chain member.
pub fn lifting_constant(m: &Matroid, member: ElementSet) -> Result<usize> {
    let sub = m.restrict(member)?;
    let report = ConfigReport::new(&sub);
    let from_classes: usize = report
        .classes
        .iter()
        .map(|c| c.class_rank - m.rank_unchecked(report.s_of_class(c.id)))
        .sum();
    Ok(from_classes + report.free_points.len())
}

pub fn lifting_dimension_invariant(m: &Matroid) -> Result<DimCertificate> {
    let ch = nilpotent_chain(m);
    let k = ch
        .chain
        .iter()
        .position(|&s| m.rank_unchecked(s) < m.rank())
        .ok_or(Error::NotWeakNilpotent)?;
    let constants = ch.chain[..k]
        .iter()
        .map(|&s| lifting_constant(m, s))
        .collect::<Result<Vec<_>>>()?;
    let terminal_rank = m.rank_unchecked(ch.chain[k]);
    Ok(DimCertificate {
        chain_prefix: ch.chain[..=k].to_vec(),
        dim_value: constants.iter().sum::<usize>() + terminal_rank,
        constants,
        terminal_rank,
    })
}

/// Everything `classify` reports about a matroid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub paving: bool,
    pub nilpotent: bool,
    pub solvable: bool,
    pub weak_nilpotent: bool,
    pub forest: Option<bool>,
    pub strong_nilpotent: Option<bool>,
    pub special: Option<bool>,
    pub nilpotent_length: Option<usize>,
    pub solvable_length: Option<usize>,
}

pub fn classify(m: &Matroid) -> Classification {
    let nil = nilpotent_chain(m);
    let sol = solvable_chain(m);
    let paving = m.is_paving();
    let point_line = m.rank() == 3 && m.circuits().iter().all(|c| c.len() >= 3);
    Classification {
        paving,
        nilpotent: nil.terminated_empty,
        solvable: sol.terminated_empty,
        weak_nilpotent: is_weak_nilpotent(m),
        forest: point_line.then(|| is_forest(m).is_ok_and(|f| f.forest)),
        strong_nilpotent: paving
            .then(|| is_strong_nilpotent(m).ok().map(|s| s.strong_nilpotent))
            .flatten(),
        special: is_special(m).ok().map(|s| s.special),
        nilpotent_length: nil.terminated_empty.then_some(nil.length),
        solvable_length: sol.terminated_empty.then_some(sol.length),
    }
}

/// Degrees keyed by point, used by reports.
pub fn degrees(m: &Matroid) -> BTreeMap<usize, usize> {
    ConfigReport::new(m).degrees
}
