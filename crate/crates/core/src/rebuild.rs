//! Rebuilding a lattice from its closed order ideals, the natural
//! implicational base, and Horn closure.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bol::{canonical_bol, BolError};
use crate::lattice::{is_isomorphic, Lattice, LatticeError, DEFAULT_ISO_CAP};
use crate::wildcard::{bits_to_string, enumerate, Bits, WildcardError, DEFAULT_EXPAND_CAP};

#[derive(Debug, Error)]
pub enum RebuildError {
    #[error("the family is not a closure system: {0}")]
    NotAClosureSystem(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Bol(#[from] BolError),
    #[error(transparent)]
    Wildcard(#[from] WildcardError),
}

/// The lattice of `members` (subsets of `0..width`) ordered by inclusion.
/// Elements are sorted by size, then lexicographically; each is named by its
/// point names in braces.
pub fn closed_ideals_lattice(
    members: &[Bits],
    point_names: &[String],
) -> Result<(Lattice, Vec<Bits>), RebuildError> {
    let width = point_names.len();
    let mut members: Vec<Bits> = members.to_vec();
    for m in &mut members {
        m.grow(width);
    }
    members.sort_by(|x, y| {
        x.count_ones(..)
            .cmp(&y.count_ones(..))
            .then_with(|| bits_to_string(x, width).cmp(&bits_to_string(y, width)).reverse())
    });
    members.dedup();
    let set: HashSet<&Bits> = members.iter().collect();
    if !members.iter().any(|m| m.count_ones(..) == 0) {
        return Err(RebuildError::NotAClosureSystem("the empty set is missing".into()));
    }
    for (i, x) in members.iter().enumerate() {
        for y in &members[i + 1..] {
            let mut z = x.clone();
            z.intersect_with(y);
            if !set.contains(&z) {
                return Err(RebuildError::NotAClosureSystem(format!(
                    "{} ∩ {} is not a member",
                    bits_to_string(x, width),
                    bits_to_string(y, width)
                )));
            }
        }
    }
    let names = members
        .iter()
        .map(|m| {
            let inner: Vec<&str> = m.ones().map(|p| point_names[p].as_str()).collect();
            format!("{{{}}}", inner.join(","))
        })
        .collect();
    let lattice = Lattice::from_order(names, |i, j| members[i].is_subset(&members[j]))?;
    Ok((lattice, members))
}

/// Outcome of [`roundtrip_check`].
#[derive(Debug)]
pub struct RoundTrip {
    pub rebuilt: Lattice,
    pub isomorphic: bool,
    /// `a ↦ J(a)` hits every closed ideal exactly once.
    pub ideal_map_bijective: bool,
}

impl RoundTrip {
    pub fn ok(&self) -> bool {
        self.isomorphic && self.ideal_map_bijective
    }
}

/// Canonical base of lines, enumeration of the closed ideals, and rebuild;
/// compares the result with `l`.
pub fn roundtrip_check(l: &Lattice) -> Result<RoundTrip, RebuildError> {
    let bol = canonical_bol(l)?;
    let poset = bol.point_poset(l);
    let lines = bol.lines_as_positions();
    let rows = enumerate(&poset, &lines)?;
    let members = rows.expand(DEFAULT_EXPAND_CAP)?;
    let (rebuilt, sorted) = closed_ideals_lattice(&members, poset.names())?;
    let isomorphic = is_isomorphic(l, &rebuilt, DEFAULT_ISO_CAP.max(l.len()))?;

    let points = bol.points();
    let images: HashSet<Bits> = (0..l.len())
        .map(|a| {
            let mut b = Bits::with_capacity(points.len());
            for (i, &p) in points.iter().enumerate() {
                b.set(i, l.leq(p, a));
            }
            b
        })
        .collect();
    let targets: HashSet<Bits> = sorted.into_iter().collect();
    let ideal_map_bijective = images.len() == l.len() && images == targets;
    Ok(RoundTrip {
        rebuilt,
        isomorphic,
        ideal_map_bijective,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Implication {
    #[serde(rename = "if")]
    pub premise: Vec<usize>,
    #[serde(rename = "then")]
    pub conclusion: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ImplicationSet {
    pub implications: Vec<Implication>,
}

impl ImplicationSet {
    /// Implications with empty conclusions are dropped; premises and
    /// conclusions are sorted and deduplicated.
    pub fn new(pairs: impl IntoIterator<Item = (Vec<usize>, Vec<usize>)>) -> Self {
        let implications = pairs
            .into_iter()
            .filter(|(_, c)| !c.is_empty())
            .map(|(mut p, mut c)| {
                p.sort_unstable();
                p.dedup();
                c.sort_unstable();
                c.dedup();
                Implication {
                    premise: p,
                    conclusion: c,
                }
            })
            .collect();
        ImplicationSet { implications }
    }

    pub fn len(&self) -> usize {
        self.implications.len()
    }

    pub fn is_empty(&self) -> bool {
        self.implications.is_empty()
    }

    /// `s(Σ)`: total size of all premises and conclusions.
    pub fn size(&self) -> usize {
        self.implications
            .iter()
            .map(|i| i.premise.len() + i.conclusion.len())
            .sum()
    }

    /// Least superset of `x` closed under every implication.
    pub fn closure(&self, x: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut closed = x.clone();
        // Counter-based forward chaining: each implication fires once all of
        // its premise is present.
        let mut missing: Vec<usize> = self
            .implications
            .iter()
            .map(|i| i.premise.iter().filter(|p| !closed.contains(p)).count())
            .collect();
        let mut watchers: HashMap<usize, Vec<usize>> = HashMap::new();
        for (k, i) in self.implications.iter().enumerate() {
            for &p in &i.premise {
                watchers.entry(p).or_default().push(k);
            }
        }
        let mut queue: Vec<usize> = (0..missing.len()).filter(|&k| missing[k] == 0).collect();
        while let Some(k) = queue.pop() {
            for &c in &self.implications[k].conclusion {
                if closed.insert(c) {
                    for &w in watchers.get(&c).map(Vec::as_slice).unwrap_or(&[]) {
                        missing[w] -= 1;
                        if missing[w] == 0 {
                            queue.push(w);
                        }
                    }
                }
            }
        }
        closed
    }

    pub fn is_closed(&self, x: &BTreeSet<usize>) -> bool {
        self.implications.iter().all(|i| {
            !i.premise.iter().all(|p| x.contains(p)) || i.conclusion.iter().all(|c| x.contains(c))
        })
    }
}

/// `Σ_nat`: `{p} → J(p)` for every non-atom join-irreducible `p` (with
/// `J(p)` the join-irreducibles below or equal to `p`), and `{p, q} → ℓ` for
/// every pair of distinct points on a line. Points are element indices.
pub fn sigma_nat(l: &Lattice, lines: &[Vec<usize>]) -> ImplicationSet {
    let mut pairs = Vec::new();
    for j in l.join_irreducibles() {
        if j.lower_star != l.bottom() {
            pairs.push((vec![j.elem], l.ji_below(j.elem)));
        }
    }
    for line in lines {
        for (i, &p) in line.iter().enumerate() {
            for &q in &line[i + 1..] {
                pairs.push((vec![p, q], line.clone()));
            }
        }
    }
    ImplicationSet::new(pairs)
}
