use std::collections::HashSet;

use serde::Serialize;

use super::bracket::BracketPolynomial;
use crate::config::ConfigReport;
use crate::error::{Error, Result};
use crate::matroid::{ElementSet, Matroid};

pub const DEFAULT_GM_DEPTH: usize = 3;

/// How a generated polynomial was obtained from an earlier one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Origin {
    pub parent: usize,
    pub point: usize,
    pub substitution: [usize; 4],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GmEntry {
    pub polynomial: BracketPolynomial,
    pub depth: usize,
    pub origin: Option<Origin>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopCriterion {
    SyntacticStabilization,
    DepthCap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GmResult {
    pub entries: Vec<GmEntry>,
    pub depth_reached: usize,
    pub stabilized: bool,
    pub criterion: StopCriterion,
}

impl GmResult {
    pub fn polynomials(&self) -> impl Iterator<Item = &BracketPolynomial> {
        self.entries.iter().map(|e| &e.polynomial)
    }
}

fn point_line_lines(m: &Matroid) -> Result<Vec<ElementSet>> {
    if m.rank() != 3 {
        return Err(Error::NotPointLine(format!("rank {}", m.rank())));
    }
    if let Some(c) = m.circuits().iter().find(|c| c.len() < 3) {
        return Err(Error::NotPointLine(format!("parallel elements {c}")));
    }
    Ok(ConfigReport::new(m)
        .classes
        .iter()
        .map(|c| c.points)
        .collect())
}

/// All valid `(p1, p2, p3, p4)` for substituting `x`: an ordered pair of
/// distinct lines through `x`, with `p1 < p2` on the first and `p3 < p4` on
/// the second, none equal to `x`.
pub fn substitution_choices(lines: &[ElementSet], x: usize) -> Vec<[usize; 4]> {
    let through: Vec<ElementSet> = lines.iter().copied().filter(|l| l.contains(x)).collect();
    let mut out = Vec::new();
    for (i, &l1) in through.iter().enumerate() {
        for (j, &l2) in through.iter().enumerate() {
            if i == j {
                continue;
            }
            for a in l1.without(x).subsets_of_size(2) {
                for b in l2.without(x).subsets_of_size(2) {
                    let (a, b) = (a.to_vec(), b.to_vec());
                    out.push([a[0], a[1], b[0], b[1]]);
                }
            }
        }
    }
    out
}

/// Checks a substitution against the configuration.
pub fn validate_substitution(m: &Matroid, x: usize, q: [usize; 4]) -> Result<()> {
    let lines = point_line_lines(m)?;
    let [p1, p2, p3, p4] = q;
    let distinct: HashSet<usize> = [x, p1, p2, p3, p4].into_iter().collect();
    if distinct.len() != 5 {
        return Err(Error::Incidence(format!(
            "points {x}, {q:?} are not distinct"
        )));
    }
    let line_of = |a: usize, b: usize| {
        lines
            .iter()
            .copied()
            .find(|l| l.contains(a) && l.contains(b) && l.contains(x))
    };
    match (line_of(p1, p2), line_of(p3, p4)) {
        (Some(l1), Some(l2)) if l1 != l2 => Ok(()),
        (Some(_), Some(_)) => Err(Error::Incidence("both pairs lie on the same line".into())),
        _ => Err(Error::Incidence(format!(
            "{{{p1},{p2},{x}}} and {{{p3},{p4},{x}}} must each be collinear"
        ))),
    }
}

/// Substitution checked against the configuration of `m`.
pub fn substitute_point(
    m: &Matroid,
    p: &BracketPolynomial,
    x: usize,
    q: [usize; 4],
) -> Result<(BracketPolynomial, bool)> {
    validate_substitution(m, x, q)?;
    Ok(p.substitute_point(x, q))
}

/// Builds `X_0` (one bracket per 3-circuit) and closes it under single-point
/// substitutions up to `max_depth` passes, deduplicating canonical forms.
pub fn generate_gm(m: &Matroid, max_depth: usize) -> Result<GmResult> {
    let lines = point_line_lines(m)?;
    let report = ConfigReport::new(m);
    let multi: Vec<usize> = m
        .ground()
        .iter()
        .filter(|&p| report.degree(p) >= 2)
        .collect();
    let choices: Vec<(usize, Vec<[usize; 4]>)> = multi
        .iter()
        .map(|&x| (x, substitution_choices(&lines, x)))
        .collect();

    let mut entries: Vec<GmEntry> = Vec::new();
    let mut seen: HashSet<BracketPolynomial> = HashSet::new();
    for c in m.circuits().iter().filter(|c| c.len() == 3) {
        let v = c.to_vec();
        let p = BracketPolynomial::bracket([v[0], v[1], v[2]]);
        if seen.insert(p.clone()) {
            entries.push(GmEntry {
                polynomial: p,
                depth: 0,
                origin: None,
            });
        }
    }
    let mut frontier = 0..entries.len();
    let mut depth = 0;
    let mut stabilized = false;
    while depth < max_depth {
        let mut added = Vec::new();
        for parent in frontier.clone() {
            let poly = entries[parent].polynomial.clone();
            for (x, qs) in &choices {
                if !poly.contains_symbol(*x) {
                    continue;
                }
                for &q in qs {
                    let (next, _) = poly.substitute_point(*x, q);
                    if next.is_zero() || !seen.insert(next.clone()) {
                        continue;
                    }
                    added.push(GmEntry {
                        polynomial: next,
                        depth: depth + 1,
                        origin: Some(Origin {
                            parent,
                            point: *x,
                            substitution: q,
                        }),
                    });
                }
            }
        }
        if added.is_empty() {
            stabilized = true;
            break;
        }
        depth += 1;
        let start = entries.len();
        entries.extend(added);
        frontier = start..entries.len();
    }
    if !stabilized && depth == max_depth {
        // Stable if one more pass would add nothing.
        stabilized = frontier.clone().all(|parent| {
            let poly = &entries[parent].polynomial;
            choices.iter().all(|(x, qs)| {
                !poly.contains_symbol(*x)
                    || qs.iter().all(|&q| {
                        let (n, _) = poly.substitute_point(*x, q);
                        n.is_zero() || seen.contains(&n)
                    })
            })
        });
    }
    Ok(GmResult {
        entries,
        depth_reached: depth,
        stabilized,
        criterion: if stabilized {
            StopCriterion::SyntacticStabilization
        } else {
            StopCriterion::DepthCap
        },
    })
}
