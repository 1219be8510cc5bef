//! Finite posets given by a cover relation.

use fixedbitset::FixedBitSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("element index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("relation contains a cycle through element {0}")]
    Cycle(usize),
    #[error("relation contains a loop at element {0}")]
    Loop(usize),
}

/// A finite poset on `0..n`, stored as its cover relation plus up-sets and
/// down-sets (both reflexive).
#[derive(Debug, Clone)]
pub struct Poset {
    names: Vec<String>,
    covers: Vec<(usize, usize)>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
}

impl Poset {
    /// Builds a poset from any acyclic relation `lower < upper`; the stored
    /// covers are its transitive reduction.
    pub fn from_relation(n: usize, pairs: &[(usize, usize)]) -> Result<Self, PosetError> {
        let names = (0..n).map(|i| format!("p{}", i + 1)).collect();
        Self::from_relation_named(names, pairs)
    }

    pub fn from_relation_named(
        names: Vec<String>,
        pairs: &[(usize, usize)],
    ) -> Result<Self, PosetError> {
        let n = names.len();
        let mut succ = vec![Vec::new(); n];
        for &(lo, hi) in pairs {
            for index in [lo, hi] {
                if index >= n {
                    return Err(PosetError::IndexOutOfRange { index, size: n });
                }
            }
            if lo == hi {
                return Err(PosetError::Loop(lo));
            }
            succ[lo].push(hi);
        }
        let order = topo_order(n, &succ)?;
        let up = upsets(n, &succ, &order);
        let mut covers = Vec::new();
        for (x, s) in succ.iter().enumerate() {
            let mut cands: Vec<usize> = s.clone();
            cands.sort_unstable();
            cands.dedup();
            for &y in &cands {
                let implied = cands.iter().any(|&z| z != y && up[z].contains(y));
                if !implied {
                    covers.push((x, y));
                }
            }
        }
        covers.sort_unstable();
        Ok(Self::assemble(names, covers, up))
    }

    /// Builds the poset on `0..n` whose order is `leq(i, j)`; the predicate
    /// must be a partial order.
    pub fn from_order(n: usize, leq: impl Fn(usize, usize) -> bool) -> Self {
        let mut up: Vec<FixedBitSet> = (0..n).map(|_| FixedBitSet::with_capacity(n)).collect();
        for (i, row) in up.iter_mut().enumerate() {
            for j in 0..n {
                if i == j || leq(i, j) {
                    row.insert(j);
                }
            }
        }
        let covers = covers_from_upsets(&up);
        let names = (0..n).map(|i| format!("p{}", i + 1)).collect();
        Self::assemble(names, covers, up)
    }

    fn assemble(names: Vec<String>, covers: Vec<(usize, usize)>, up: Vec<FixedBitSet>) -> Self {
        let n = names.len();
        let mut down: Vec<FixedBitSet> = (0..n).map(|_| FixedBitSet::with_capacity(n)).collect();
        for (x, set) in up.iter().enumerate() {
            for y in set.ones() {
                down[y].insert(x);
            }
        }
        Poset {
            names,
            covers,
            up,
            down,
        }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.names.len());
        self.names = names;
        self
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    /// Reflexive up-set of `x`.
    pub fn up(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    /// Reflexive down-set of `x`.
    pub fn down(&self, x: usize) -> &FixedBitSet {
        &self.down[x]
    }

    /// True iff `set` is downward closed.
    pub fn is_down_set(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|x| self.down[x].is_subset(set))
    }

    /// Restriction to the given elements, re-indexed in the given order.
    pub fn induced(&self, elems: &[usize]) -> Poset {
        let sub = Poset::from_order(elems.len(), |i, j| self.leq(elems[i], elems[j]));
        let names = elems.iter().map(|&e| self.names[e].clone()).collect();
        sub.with_names(names)
    }
}

fn topo_order(n: usize, succ: &[Vec<usize>]) -> Result<Vec<usize>, PosetError> {
    let mut indeg = vec![0usize; n];
    for s in succ {
        for &y in s {
            indeg[y] += 1;
        }
    }
    let mut queue: Vec<usize> = (0..n).filter(|&x| indeg[x] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(x) = queue.pop() {
        order.push(x);
        for &y in &succ[x] {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                queue.push(y);
            }
        }
    }
    if order.len() < n {
        let stuck = (0..n).find(|&x| indeg[x] > 0).unwrap_or(0);
        return Err(PosetError::Cycle(stuck));
    }
    Ok(order)
}

fn upsets(n: usize, succ: &[Vec<usize>], order: &[usize]) -> Vec<FixedBitSet> {
    let mut up: Vec<FixedBitSet> = (0..n).map(|_| FixedBitSet::with_capacity(n)).collect();
    for &x in order.iter().rev() {
        let mut set = FixedBitSet::with_capacity(n);
        set.insert(x);
        for &y in &succ[x] {
            set.union_with(&up[y]);
        }
        up[x] = set;
    }
    up
}

/// Cover pairs of the order whose reflexive up-sets are `up`.
pub(crate) fn covers_from_upsets(up: &[FixedBitSet]) -> Vec<(usize, usize)> {
    let mut covers = Vec::new();
    for (x, ux) in up.iter().enumerate() {
        for y in ux.ones() {
            if y == x {
                continue;
            }
            let between = ux
                .ones()
                .any(|z| z != x && z != y && up[z].contains(y));
            if !between {
                covers.push((x, y));
            }
        }
    }
    covers.sort_unstable();
    covers
}

pub(crate) fn topological_upsets(
    n: usize,
    covers: &[(usize, usize)],
) -> Result<(Vec<usize>, Vec<FixedBitSet>), PosetError> {
    let mut succ = vec![Vec::new(); n];
    for &(lo, hi) in covers {
        succ[lo].push(hi);
    }
    let order = topo_order(n, &succ)?;
    let up = upsets(n, &succ, &order);
    Ok((order, up))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_transitive_pairs() {
        let p = Poset::from_relation(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
        assert!(p.leq(0, 2));
        assert!(!p.leq(2, 0));
    }

    #[test]
    fn rejects_cycles() {
        assert!(matches!(
            Poset::from_relation(2, &[(0, 1), (1, 0)]),
            Err(PosetError::Cycle(_))
        ));
    }

    #[test]
    fn down_sets() {
        let p = Poset::from_relation(3, &[(0, 2), (1, 2)]).unwrap();
        let mut s = FixedBitSet::with_capacity(3);
        s.insert(2);
        assert!(!p.is_down_set(&s));
        s.insert(0);
        s.insert(1);
        assert!(p.is_down_set(&s));
    }
}
