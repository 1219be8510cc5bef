//! Finite abelian groups and their subgroup lattices; distributive lattices
//! generated by a family of sets.

use std::collections::{BTreeSet, HashMap, HashSet};

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::bol::lines_from_joins;
use crate::lattice::{Lattice, LatticeError};
use crate::poset::Poset;
use crate::wildcard::{enumerate, WildcardError, DEFAULT_EXPAND_CAP};

/// Default bound on the group order.
pub const DEFAULT_GROUP_CAP: usize = 4096;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("invariant factor {0} must be at least 2")]
    BadFactor(u64),
    #[error("group order {order} exceeds the cap {cap}")]
    CapExceeded { order: u128, cap: usize },
    #[error("element {0:?} does not match the group")]
    BadElement(Vec<u64>),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Wildcard(#[from] WildcardError),
}

/// `Z_{n1} × … × Z_{nk}`; elements are mixed-radix indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    factors: Vec<u64>,
    order: usize,
}

/// A subgroup as the set of its element indices.
pub type Subgroup = FixedBitSet;

impl Group {
    pub fn new(factors: &[u64], cap: usize) -> Result<Self, AlgebraError> {
        if let Some(&f) = factors.iter().find(|&&f| f < 2) {
            return Err(AlgebraError::BadFactor(f));
        }
        let order: u128 = factors.iter().map(|&f| f as u128).product();
        if order > cap as u128 {
            return Err(AlgebraError::CapExceeded { order, cap });
        }
        Ok(Group {
            factors: factors.to_vec(),
            order: order as usize,
        })
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn tuple(&self, x: usize) -> Vec<u64> {
        let mut rest = x as u64;
        let mut t = vec![0; self.factors.len()];
        for (i, &f) in self.factors.iter().enumerate().rev() {
            t[i] = rest % f;
            rest /= f;
        }
        t
    }

    pub fn index(&self, t: &[u64]) -> Result<usize, AlgebraError> {
        if t.len() != self.factors.len() {
            return Err(AlgebraError::BadElement(t.to_vec()));
        }
        Ok(t.iter()
            .zip(&self.factors)
            .fold(0u64, |acc, (&v, &f)| acc * f + v % f) as usize)
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        let (tx, ty) = (self.tuple(x), self.tuple(y));
        let sum: Vec<u64> = tx
            .iter()
            .zip(&ty)
            .zip(&self.factors)
            .map(|((a, b), f)| (a + b) % f)
            .collect();
        self.index(&sum).expect("same shape")
    }

    pub fn format_element(&self, x: usize) -> String {
        let t: Vec<String> = self.tuple(x).iter().map(u64::to_string).collect();
        format!("({})", t.join(","))
    }

    pub fn trivial(&self) -> Subgroup {
        let mut s = FixedBitSet::with_capacity(self.order);
        s.insert(0);
        s
    }

    /// `⟨x⟩ = {k·x}`.
    pub fn cyclic_subgroup(&self, x: usize) -> Subgroup {
        let mut s = self.trivial();
        let mut cur = x;
        while cur != 0 {
            s.insert(cur);
            cur = self.add(cur, x);
        }
        s
    }

    /// `H + K = {h + k}`.
    pub fn join_subgroups(&self, h: &Subgroup, k: &Subgroup) -> Subgroup {
        let mut s = FixedBitSet::with_capacity(self.order);
        for a in h.ones() {
            for b in k.ones() {
                s.insert(self.add(a, b));
            }
        }
        s
    }

    pub fn element_order(&self, x: usize) -> usize {
        self.cyclic_subgroup(x).count_ones(..)
    }

    /// Nontrivial cyclic subgroups of prime-power order, sorted by order
    /// and then by their smallest generator.
    pub fn join_irreducible_subgroups(&self) -> Vec<(Subgroup, usize)> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for x in 1..self.order {
            if !is_prime_power(self.element_order(x)) {
                continue;
            }
            let s = self.cyclic_subgroup(x);
            if seen.insert(s.clone()) {
                out.push((s, x));
            }
        }
        out.sort_by_key(|(s, gen)| (s.count_ones(..), *gen));
        out
    }

    /// All subgroups, as joins of join-irreducible subgroups, and their
    /// inclusion lattice. Subgroups are sorted by order, then by elements.
    pub fn subgroup_lattice(&self) -> Result<(Lattice, Vec<Subgroup>), AlgebraError> {
        let jis: Vec<Subgroup> = self
            .join_irreducible_subgroups()
            .into_iter()
            .map(|(s, _)| s)
            .collect();
        let mut all: HashSet<Subgroup> = HashSet::new();
        all.insert(self.trivial());
        let mut frontier: Vec<Subgroup> = vec![self.trivial()];
        while let Some(h) = frontier.pop() {
            for j in &jis {
                let k = self.join_subgroups(&h, j);
                if all.insert(k.clone()) {
                    frontier.push(k);
                }
            }
        }
        let mut subs: Vec<Subgroup> = all.into_iter().collect();
        subs.sort_by_key(|s| (s.count_ones(..), s.ones().collect::<Vec<_>>()));
        let names = subs
            .iter()
            .enumerate()
            .map(|(i, s)| format!("H{}[{}]", i, s.count_ones(..)))
            .collect();
        let l = Lattice::from_order(names, |i, j| subs[i].is_subset(&subs[j]))?;
        Ok((l, subs))
    }

    /// The inclusion poset of the join-irreducible subgroups and one line per
    /// `M_n`-element, found through the subgroup join.
    pub fn enumeration_input(&self) -> EnumerationInput {
        let jis = self.join_irreducible_subgroups();
        let names: Vec<String> = jis
            .iter()
            .map(|(_, g)| format!("<{}>", self.format_element(*g)))
            .collect();
        let subs: Vec<Subgroup> = jis.into_iter().map(|(s, _)| s).collect();
        let poset = Poset::from_order(subs.len(), |i, j| subs[i].is_subset(&subs[j]))
            .with_names(names);
        let lines = lines_from_joins(subs.len(), |i, j| self.join_subgroups(&subs[i], &subs[j]))
            .into_iter()
            .map(|(l, _)| l)
            .collect();
        EnumerationInput {
            poset,
            lines,
            subgroups: subs,
        }
    }
}

/// Data handed to the wildcard enumeration.
#[derive(Debug, Clone)]
pub struct EnumerationInput {
    pub poset: Poset,
    pub lines: Vec<Vec<usize>>,
    pub subgroups: Vec<Subgroup>,
}

fn is_prime_power(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let p = (2..=n).find(|d| n % d == 0).expect("n ≥ 2 has a divisor");
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    m == 1
}

/// Parses invariant factors such as `"4,4"` or `"2 2 2"`.
pub fn parse_factors(s: &str) -> Result<Vec<u64>, String> {
    s.split(|c: char| c == ',' || c == 'x' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u64>().map_err(|e| format!("bad factor {t:?}: {e}")))
        .collect()
}

/// Subsets `X_1, …, X_t` of a universe `W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSystem {
    pub universe: Vec<String>,
    pub set_names: Vec<String>,
    pub sets: Vec<FixedBitSet>,
}

/// Join-irreducibles of the generated lattice, plus universe elements that
/// lie in no set and were skipped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributiveJi {
    pub sets: Vec<FixedBitSet>,
    pub skipped: Vec<usize>,
}

impl SetSystem {
    pub fn new(universe: Vec<String>, sets: Vec<FixedBitSet>) -> Self {
        let set_names = (1..=sets.len()).map(|i| format!("X{i}")).collect();
        SetSystem {
            universe,
            set_names,
            sets,
        }
    }

    pub fn width(&self) -> usize {
        self.universe.len()
    }

    pub fn format_set(&self, s: &FixedBitSet) -> String {
        let inner: Vec<&str> = s.ones().map(|v| self.universe[v].as_str()).collect();
        format!("{{{}}}", inner.join(","))
    }

    /// `A_v = ∩{X_i : v ∈ X_i}` for every `v` lying in some set, without
    /// duplicates, sorted by size and then lexicographically. The generated
    /// lattice is taken together with the empty set as its bottom.
    pub fn distributive_ji(&self) -> DistributiveJi {
        let mut skipped = Vec::new();
        let mut seen = BTreeSet::new();
        let mut sets = Vec::new();
        for v in 0..self.width() {
            let containing: Vec<&FixedBitSet> = self.sets.iter().filter(|x| x.contains(v)).collect();
            if containing.is_empty() {
                skipped.push(v);
                continue;
            }
            let mut a = containing[0].clone();
            for x in &containing[1..] {
                a.intersect_with(x);
            }
            if seen.insert(a.ones().collect::<Vec<_>>()) {
                sets.push(a);
            }
        }
        sets.sort_by_key(|s| (s.count_ones(..), s.ones().collect::<Vec<_>>()));
        DistributiveJi { sets, skipped }
    }

    /// The generated lattice as the down-sets of its join-irreducibles,
    /// enumerated with no lines. Each down-set `I` stands for `∪ I`.
    /// Returns the lattice and the member sets.
    pub fn distributive_lattice(&self) -> Result<(Lattice, Vec<FixedBitSet>), AlgebraError> {
        let ji = self.distributive_ji();
        let names: Vec<String> = ji.sets.iter().map(|s| self.format_set(s)).collect();
        let poset =
            Poset::from_order(ji.sets.len(), |i, j| ji.sets[i].is_subset(&ji.sets[j])).with_names(names);
        let ideals = enumerate(&poset, &[])?.expand(DEFAULT_EXPAND_CAP)?;
        let mut members: Vec<FixedBitSet> = ideals
            .iter()
            .map(|ideal| {
                let mut u = FixedBitSet::with_capacity(self.width());
                for i in ideal.ones() {
                    u.union_with(&ji.sets[i]);
                }
                u
            })
            .collect();
        members.sort_by_key(|s| (s.count_ones(..), s.ones().collect::<Vec<_>>()));
        let names = members.iter().map(|s| self.format_set(s)).collect();
        let l = Lattice::from_order(names, |i, j| members[i].is_subset(&members[j]))?;
        Ok((l, members))
    }

    /// Closure of the sets and the empty set under union and intersection,
    /// sorted like [`Self::distributive_lattice`]. Exhaustive.
    pub fn closure_oracle(&self) -> Vec<FixedBitSet> {
        let mut all: HashSet<FixedBitSet> = self.sets.iter().cloned().collect();
        all.insert(FixedBitSet::with_capacity(self.width()));
        loop {
            let cur: Vec<FixedBitSet> = all.iter().cloned().collect();
            let mut grew = false;
            for (i, x) in cur.iter().enumerate() {
                for y in &cur[i + 1..] {
                    let mut u = x.clone();
                    u.union_with(y);
                    let mut m = x.clone();
                    m.intersect_with(y);
                    grew |= all.insert(u);
                    grew |= all.insert(m);
                }
            }
            if !grew {
                break;
            }
        }
        let mut out: Vec<FixedBitSet> = all.into_iter().collect();
        out.sort_by_key(|s| (s.count_ones(..), s.ones().collect::<Vec<_>>()));
        out
    }
}

/// Lattice on a family of sets ordered by inclusion.
pub fn inclusion_lattice(family: &[FixedBitSet], names: Vec<String>) -> Result<Lattice, LatticeError> {
    Lattice::from_order(names, |i, j| family[i].is_subset(&family[j]))
}

/// Index of every subgroup in `subs`.
pub fn subgroup_index(subs: &[Subgroup]) -> HashMap<Subgroup, usize> {
    subs.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()
}
