//! Finite lattices given by their Hasse diagram.
//!
//! Elements are dense indices `0..n`. Bottom and top are discovered during
//! [`Lattice::build`], together with the join and meet tables and the rank
//! function (longest chain from the bottom).

use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::poset::{self, PosetError};

/// Default element cap for [`is_isomorphic`].
pub const DEFAULT_ISO_CAP: usize = 200;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("a lattice needs at least one element")]
    Empty,
    #[error("cover index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("cover relation has a cycle through element {0}")]
    CycleInCovers(usize),
    #[error("cover ({lower}, {upper}) is implied by a longer chain")]
    NotTransitivelyReduced { lower: usize, upper: usize },
    #[error("not a lattice: elements {x} and {y} have no unique {what}")]
    NotALattice { x: usize, y: usize, what: &'static str },
    #[error("lattice is not modular")]
    NotModular,
    #[error("isomorphism check limited to {cap} elements, got {size}")]
    SizeCapExceeded { size: usize, cap: usize },
}

/// A covering pair `lower ≺ upper`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeQuotient {
    pub lower: usize,
    pub upper: usize,
}

/// A join-irreducible element together with its unique lower cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct JoinIrreducible {
    pub elem: usize,
    pub lower_star: usize,
}

#[derive(Debug, Clone)]
pub struct Lattice {
    names: Vec<String>,
    covers: Vec<(usize, usize)>,
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
    up: Vec<FixedBitSet>,
    join: Vec<u32>,
    meet: Vec<u32>,
    rank: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl Lattice {
    /// Validates `covers` as the Hasse diagram of a lattice on `0..n`.
    pub fn build(n: usize, covers: &[(usize, usize)]) -> Result<Self, LatticeError> {
        let names = (0..n).map(|i| i.to_string()).collect();
        Self::build_named(names, covers)
    }

    pub fn build_named(names: Vec<String>, covers: &[(usize, usize)]) -> Result<Self, LatticeError> {
        let n = names.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        for &(lo, hi) in covers {
            for index in [lo, hi] {
                if index >= n {
                    return Err(LatticeError::IndexOutOfRange { index, size: n });
                }
            }
            if lo == hi {
                return Err(LatticeError::CycleInCovers(lo));
            }
        }
        let mut covers: Vec<(usize, usize)> = covers.to_vec();
        covers.sort_unstable();
        covers.dedup();

        let (order, up) = poset::topological_upsets(n, &covers).map_err(|e| match e {
            PosetError::Cycle(x) | PosetError::Loop(x) => LatticeError::CycleInCovers(x),
            PosetError::IndexOutOfRange { index, size } => {
                LatticeError::IndexOutOfRange { index, size }
            }
        })?;

        let mut lower = vec![Vec::new(); n];
        let mut upper = vec![Vec::new(); n];
        for &(lo, hi) in &covers {
            lower[hi].push(lo);
            upper[lo].push(hi);
        }
        for &(lo, hi) in &covers {
            if upper[lo].iter().any(|&z| z != hi && up[z].contains(hi)) {
                return Err(LatticeError::NotTransitivelyReduced { lower: lo, upper: hi });
            }
        }

        let mut rank = vec![0usize; n];
        for &x in &order {
            for &y in &upper[x] {
                rank[y] = rank[y].max(rank[x] + 1);
            }
        }

        let mut down: Vec<FixedBitSet> = (0..n).map(|_| FixedBitSet::with_capacity(n)).collect();
        for (x, set) in up.iter().enumerate() {
            for y in set.ones() {
                down[y].insert(x);
            }
        }

        let mut join = vec![0u32; n * n];
        let mut meet = vec![0u32; n * n];
        for x in 0..n {
            for y in x..n {
                let j = least_in(&up[x], &up[y], &up, &rank, false)
                    .ok_or(LatticeError::NotALattice { x, y, what: "join" })?;
                let m = least_in(&down[x], &down[y], &down, &rank, true)
                    .ok_or(LatticeError::NotALattice { x, y, what: "meet" })?;
                join[x * n + y] = j as u32;
                join[y * n + x] = j as u32;
                meet[x * n + y] = m as u32;
                meet[y * n + x] = m as u32;
            }
        }
        let bottom = (0..n).fold(0, |acc, x| meet[acc * n + x] as usize);
        let top = (0..n).fold(0, |acc, x| join[acc * n + x] as usize);

        Ok(Lattice {
            names,
            covers,
            lower,
            upper,
            up,
            join,
            meet,
            rank,
            bottom,
            top,
        })
    }

    /// Lattice on `0..n` ordered by the partial order `leq`.
    pub fn from_order(
        names: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<Self, LatticeError> {
        let n = names.len();
        let mut up: Vec<FixedBitSet> = (0..n).map(|_| FixedBitSet::with_capacity(n)).collect();
        for (i, row) in up.iter_mut().enumerate() {
            row.insert(i);
            for j in 0..n {
                if leq(i, j) {
                    row.insert(j);
                }
            }
        }
        let covers = poset::covers_from_upsets(&up);
        Self::build_named(names, &covers)
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

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn prime_quotients(&self) -> impl Iterator<Item = PrimeQuotient> + '_ {
        self.covers
            .iter()
            .map(|&(lower, upper)| PrimeQuotient { lower, upper })
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower[x]
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper[x]
    }

    pub fn is_cover(&self, lower: usize, upper: usize) -> bool {
        self.upper[lower].contains(&upper)
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y] as usize
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y] as usize
    }

    pub fn join_all(&self, elems: impl IntoIterator<Item = usize>) -> usize {
        elems.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, elems: impl IntoIterator<Item = usize>) -> usize {
        elems.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Longest chain length from the bottom to `x`.
    pub fn rank(&self, x: usize) -> usize {
        self.rank[x]
    }

    /// Length of the lattice, `rank(top)`.
    pub fn height(&self) -> usize {
        self.rank[self.top]
    }

    /// Checks the modular law `x ≤ z ⇒ x + y·z = (x + y)·z` on all triples.
    pub fn is_modular(&self) -> bool {
        let n = self.len();
        for x in 0..n {
            for z in self.up[x].ones() {
                if z == x {
                    continue;
                }
                for y in 0..n {
                    if self.join(x, self.meet(y, z)) != self.meet(self.join(x, y), z) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn require_modular(&self) -> Result<(), LatticeError> {
        if self.is_modular() {
            Ok(())
        } else {
            Err(LatticeError::NotModular)
        }
    }

    pub fn is_join_irreducible(&self, x: usize) -> bool {
        self.lower[x].len() == 1
    }

    /// All join-irreducibles in increasing index order.
    pub fn join_irreducibles(&self) -> Vec<JoinIrreducible> {
        (0..self.len())
            .filter(|&x| self.lower[x].len() == 1)
            .map(|x| JoinIrreducible {
                elem: x,
                lower_star: self.lower[x][0],
            })
            .collect()
    }

    /// The unique lower cover of a join-irreducible.
    pub fn lower_star(&self, p: usize) -> Option<usize> {
        match self.lower[p].as_slice() {
            [one] => Some(*one),
            _ => None,
        }
    }

    /// `J(a) = {p ∈ J(L) : p ≤ a}`.
    pub fn ji_below(&self, a: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&p| self.is_join_irreducible(p) && self.leq(p, a))
            .collect()
    }

    /// `J(a, b) = {p ∈ J(L) : p ≤ b, p ≰ a}`.
    pub fn ji_between(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&p| self.is_join_irreducible(p) && self.leq(p, b) && !self.leq(p, a))
            .collect()
    }

    /// Whether the interval `[a, b]` transposes up to `[c, d]`, i.e.
    /// `d = b + c` and `a = b·c`.
    pub fn transposes_up(&self, (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
        d == self.join(b, c) && a == self.meet(b, c)
    }

    /// Equivalence classes of prime quotients under one-step transpositions
    /// (up or down). Classes are sorted; so is the list of classes.
    pub fn projectivity_classes(&self) -> Vec<Vec<PrimeQuotient>> {
        let quotients: Vec<PrimeQuotient> = self.prime_quotients().collect();
        let mut index = std::collections::HashMap::new();
        for (i, q) in quotients.iter().enumerate() {
            index.insert((q.lower, q.upper), i);
        }
        let mut uf = UnionFind::new(quotients.len());
        for (i, q) in quotients.iter().enumerate() {
            for c in 0..self.len() {
                if self.meet(q.upper, c) != q.lower {
                    continue;
                }
                let d = self.join(q.upper, c);
                if let Some(&k) = index.get(&(c, d)) {
                    uf.union(i, k);
                }
            }
        }
        let mut classes: Vec<Vec<PrimeQuotient>> = uf
            .groups()
            .into_iter()
            .map(|g| g.into_iter().map(|i| quotients[i]).collect())
            .collect();
        for c in &mut classes {
            c.sort();
        }
        classes.sort();
        classes
    }

    /// Class id for every prime quotient, keyed by `(lower, upper)`.
    pub fn projectivity_class_map(&self) -> std::collections::HashMap<(usize, usize), usize> {
        let mut map = std::collections::HashMap::new();
        for (id, class) in self.projectivity_classes().iter().enumerate() {
            for q in class {
                map.insert((q.lower, q.upper), id);
            }
        }
        map
    }

}

/// Unique element of `a ∩ b` that lies below (or above, for meets) every other
/// element of the intersection.
fn least_in(
    a: &FixedBitSet,
    b: &FixedBitSet,
    cones: &[FixedBitSet],
    rank: &[usize],
    maximal: bool,
) -> Option<usize> {
    let mut common = a.clone();
    common.intersect_with(b);
    let pick = if maximal {
        common.ones().max_by_key(|&z| rank[z])
    } else {
        common.ones().min_by_key(|&z| rank[z])
    }?;
    if cones[pick] == common {
        Some(pick)
    } else {
        None
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Returns false if `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }

    pub(crate) fn groups(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for x in 0..n {
            let r = self.find(x);
            by_root.entry(r).or_default().push(x);
        }
        by_root.into_values().collect()
    }
}

/// Order-isomorphism test by backtracking over rank- and degree-compatible
/// assignments. Both lattices must have at most `cap` elements.
pub fn is_isomorphic(l1: &Lattice, l2: &Lattice, cap: usize) -> Result<bool, LatticeError> {
    for l in [l1, l2] {
        if l.len() > cap {
            return Err(LatticeError::SizeCapExceeded { size: l.len(), cap });
        }
    }
    if l1.len() != l2.len() || l1.covers.len() != l2.covers.len() {
        return Ok(false);
    }
    let sig = |l: &Lattice, x: usize| (l.rank[x], l.lower[x].len(), l.upper[x].len());
    let mut hist1: Vec<_> = (0..l1.len()).map(|x| sig(l1, x)).collect();
    let mut hist2: Vec<_> = (0..l2.len()).map(|x| sig(l2, x)).collect();
    hist1.sort_unstable();
    hist2.sort_unstable();
    if hist1 != hist2 {
        return Ok(false);
    }

    // Breadth-first from the bottom: every element after the bottom has an
    // already placed lower cover, which narrows its candidates.
    let mut order = Vec::with_capacity(l1.len());
    let mut seen = HashSet::new();
    order.push(l1.bottom);
    seen.insert(l1.bottom);
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for &y in &l1.upper[x] {
            if seen.insert(y) {
                order.push(y);
            }
        }
    }

    let mut fwd = vec![usize::MAX; l1.len()];
    let mut bwd = vec![usize::MAX; l2.len()];
    Ok(extend(l1, l2, &order, 0, &mut fwd, &mut bwd, &sig))
}

fn extend(
    l1: &Lattice,
    l2: &Lattice,
    order: &[usize],
    depth: usize,
    fwd: &mut [usize],
    bwd: &mut [usize],
    sig: &impl Fn(&Lattice, usize) -> (usize, usize, usize),
) -> bool {
    if depth == order.len() {
        return true;
    }
    let x = order[depth];
    let candidates: Vec<usize> = match l1.lower[x].iter().find(|&&w| fwd[w] != usize::MAX) {
        Some(&w) => l2.upper[fwd[w]].clone(),
        None => vec![l2.bottom],
    };
    for y in candidates {
        if bwd[y] != usize::MAX || sig(l1, x) != sig(l2, y) {
            continue;
        }
        if !consistent(l1, l2, x, y, fwd, bwd) {
            continue;
        }
        fwd[x] = y;
        bwd[y] = x;
        if extend(l1, l2, order, depth + 1, fwd, bwd, sig) {
            return true;
        }
        fwd[x] = usize::MAX;
        bwd[y] = usize::MAX;
    }
    false
}

fn consistent(l1: &Lattice, l2: &Lattice, x: usize, y: usize, fwd: &[usize], bwd: &[usize]) -> bool {
    let placed = |v: &[usize], map: &[usize]| v.iter().filter(|&&w| map[w] != usize::MAX).count();
    for &w in &l1.lower[x] {
        if fwd[w] != usize::MAX && !l2.lower[y].contains(&fwd[w]) {
            return false;
        }
    }
    for &w in &l1.upper[x] {
        if fwd[w] != usize::MAX && !l2.upper[y].contains(&fwd[w]) {
            return false;
        }
    }
    placed(&l1.lower[x], fwd) == placed(&l2.lower[y], bwd)
        && placed(&l1.upper[x], fwd) == placed(&l2.upper[y], bwd)
}
