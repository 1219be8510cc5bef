//! Triangles of lines and the cyclic localization they force.

use serde::Serialize;

use super::AnalysisError;
use crate::bol::BaseOfLines;
use crate::lattice::Lattice;
use crate::pls::{Pls, PlsCycle};

fn meet_point(a: &[usize], b: &[usize]) -> Option<usize> {
    a.iter().copied().find(|p| b.contains(p))
}

/// Triples of lines `l1 < l2 < l3` meeting pairwise in three distinct points.
pub fn triangles(pls: &Pls) -> Vec<[usize; 3]> {
    let lines = pls.lines();
    let n = lines.len();
    let mut out = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            let Some(s) = meet_point(&lines[x], &lines[y]) else {
                continue;
            };
            for z in y + 1..n {
                let (Some(p1), Some(p2)) =
                    (meet_point(&lines[x], &lines[z]), meet_point(&lines[y], &lines[z]))
                else {
                    continue;
                };
                if s != p1 && s != p2 && p1 != p2 {
                    out.push([x, y, z]);
                }
            }
        }
    }
    out
}

/// A triangle `l1, l2, l3` with corners `s = l1∩l2`, `p1 = l1∩l3`,
/// `p2 = l2∩l3`, and a fourth line meeting all three away from the corners
/// in `q = l4∩l1`, `r = l4∩l2`, `p3 = l4∩l3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TriangleConfig {
    pub lines: [usize; 4],
    pub s: usize,
    pub p1: usize,
    pub p2: usize,
    pub q: usize,
    pub r: usize,
    pub p3: usize,
}

pub fn triangle_configurations(pls: &Pls) -> Vec<TriangleConfig> {
    let lines = pls.lines();
    let mut out = Vec::new();
    for [x, y, z] in triangles(pls) {
        let s = meet_point(&lines[x], &lines[y]).unwrap();
        let p1 = meet_point(&lines[x], &lines[z]).unwrap();
        let p2 = meet_point(&lines[y], &lines[z]).unwrap();
        let corners = [s, p1, p2];
        for (w, l4) in lines.iter().enumerate() {
            if [x, y, z].contains(&w) {
                continue;
            }
            let hits: Vec<Option<usize>> = [x, y, z]
                .iter()
                .map(|&k| meet_point(l4, &lines[k]).filter(|p| !corners.contains(p)))
                .collect();
            if let [Some(q), Some(r), Some(p3)] = hits[..] {
                out.push(TriangleConfig {
                    lines: [x, y, z, w],
                    s,
                    p1,
                    p2,
                    q,
                    r,
                    p3,
                });
            }
        }
    }
    out
}

/// The covering `a ≺ b` built from a configuration, whose localization
/// contains a cycle through `s, p1, p2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleWitness {
    pub config: TriangleConfig,
    pub u: usize,
    pub a: usize,
    pub b: usize,
    pub localization: Pls,
    pub cycle: PlsCycle,
}

/// `u = q + r`, `a = u + s_*`, `b = u + s`. Fails with `ClaimViolated` if
/// `s ≤ u`, `a ⊀ b`, one of `s, p1, p2` lies outside `J(a, b)`, or the
/// localization is acyclic.
pub fn cyclic_localization_witness(
    l: &Lattice,
    bol: &BaseOfLines,
    config: &TriangleConfig,
) -> Result<TriangleWitness, AnalysisError> {
    let violated = |m: String| Err(AnalysisError::ClaimViolated(m));
    let TriangleConfig { s, p1, p2, q, r, .. } = *config;
    let u = l.join(q, r);
    if l.leq(s, u) {
        return violated(format!("s = {} lies below q + r", l.name(s)));
    }
    let s_star = l
        .lower_star(s)
        .ok_or(AnalysisError::ClaimViolated(format!("{} is not join-irreducible", l.name(s))))?;
    let a = l.join(u, s_star);
    let b = l.join(u, s);
    if !l.is_cover(a, b) {
        return violated(format!("{} does not cover {}", l.name(b), l.name(a)));
    }
    for p in [s, p1, p2] {
        if !l.leq(p, b) || l.leq(p, a) {
            return violated(format!("{} is not in J(a, b)", l.name(p)));
        }
    }
    let localization = bol.localize(l, a, b)?;
    let Some(cycle) = localization.find_cycle() else {
        return violated(format!(
            "localization to ({}, {}) is acyclic",
            l.name(a),
            l.name(b)
        ));
    };
    Ok(TriangleWitness {
        config: *config,
        u,
        a,
        b,
        localization,
        cycle,
    })
}
