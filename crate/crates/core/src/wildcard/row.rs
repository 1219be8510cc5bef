//! Wildcard rows: a compact description of a set of bitstrings.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use num_traits::One;

use super::WildcardError;

/// A bitstring over the row's positions.
pub type Bits = FixedBitSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cell {
    Zero,
    One,
    Free,
    Group(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupKind {
    Imp,
    D,
    Eps,
    G,
    Ell,
}

impl GroupKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GroupKind::Imp => "imp",
            GroupKind::D => "d",
            GroupKind::Eps => "eps",
            GroupKind::G => "g",
            GroupKind::Ell => "ell",
        }
    }
}

/// A wildcard group over some positions.
///
/// * `Imp { a, b }`: if some `a`-position is 1 then every `b`-position is 1.
/// * `D`: all equal.
/// * `Eps`: at most one 1.
/// * `G`: exactly one 1.
/// * `Ell`: at most one 1, or all 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Group {
    Imp { a: Vec<usize>, b: Vec<usize> },
    D(Vec<usize>),
    Eps(Vec<usize>),
    G(Vec<usize>),
    Ell(Vec<usize>),
}

impl Group {
    pub fn kind(&self) -> GroupKind {
        match self {
            Group::Imp { .. } => GroupKind::Imp,
            Group::D(_) => GroupKind::D,
            Group::Eps(_) => GroupKind::Eps,
            Group::G(_) => GroupKind::G,
            Group::Ell(_) => GroupKind::Ell,
        }
    }

    pub fn members(&self) -> Vec<usize> {
        match self {
            Group::Imp { a, b } => a.iter().chain(b).copied().collect(),
            Group::D(m) | Group::Eps(m) | Group::G(m) | Group::Ell(m) => m.clone(),
        }
    }

    fn min_size_ok(&self) -> bool {
        match self {
            Group::Imp { a, b } => !a.is_empty() && !b.is_empty(),
            Group::D(m) | Group::Eps(m) | Group::Ell(m) => m.len() >= 2,
            Group::G(m) => !m.is_empty(),
        }
    }

    /// Number of admissible patterns on the members.
    pub fn count(&self) -> BigUint {
        let pow2 = |k: usize| BigUint::one() << k;
        match self {
            Group::Imp { a, b } => pow2(b.len()) + pow2(a.len()) - 1u32,
            Group::D(_) => BigUint::from(2u32),
            Group::Eps(m) => BigUint::from(m.len() + 1),
            Group::G(m) => BigUint::from(m.len()),
            Group::Ell(m) => BigUint::from(m.len() + 2),
        }
    }

    pub fn accepts(&self, bits: &Bits) -> bool {
        let ones = |m: &[usize]| m.iter().filter(|&&p| bits.contains(p)).count();
        match self {
            Group::Imp { a, b } => ones(a) == 0 || ones(b) == b.len(),
            Group::D(m) => {
                let k = ones(m);
                k == 0 || k == m.len()
            }
            Group::Eps(m) => ones(m) <= 1,
            Group::G(m) => ones(m) == 1,
            Group::Ell(m) => {
                let k = ones(m);
                k <= 1 || k == m.len()
            }
        }
    }

    /// Admissible patterns as lists of member positions set to 1.
    fn patterns(&self) -> Vec<Vec<usize>> {
        let subsets = |m: &[usize]| -> Vec<Vec<usize>> {
            (0u64..1 << m.len())
                .map(|mask| {
                    m.iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &p)| p)
                        .collect()
                })
                .collect()
        };
        let singles = |m: &[usize]| m.iter().map(|&p| vec![p]).collect::<Vec<_>>();
        match self {
            Group::Imp { a, b } => {
                let mut out = subsets(b);
                for s in subsets(a).into_iter().skip(1) {
                    out.push(s.into_iter().chain(b.iter().copied()).collect());
                }
                out
            }
            Group::D(m) => vec![Vec::new(), m.clone()],
            Group::Eps(m) => std::iter::once(Vec::new()).chain(singles(m)).collect(),
            Group::G(m) => singles(m),
            Group::Ell(m) => std::iter::once(Vec::new())
                .chain(singles(m))
                .chain(std::iter::once(m.clone()))
                .collect(),
        }
    }
}

/// Outcome of rewriting a group under partial information.
#[derive(Debug, Default)]
pub(crate) struct Effects {
    pub fixed: Vec<(usize, bool)>,
    pub free: Vec<usize>,
    pub groups: Vec<Group>,
}

impl Effects {
    fn fix_all(&mut self, ps: impl IntoIterator<Item = usize>, v: bool) {
        self.fixed.extend(ps.into_iter().map(|p| (p, v)));
    }

    /// Adds `g`, replacing degenerate groups by fixed or free cells.
    /// Returns false if `g` admits no pattern.
    pub(crate) fn add(&mut self, g: Group) -> bool {
        match g {
            Group::Imp { a, b } => {
                if a.is_empty() || b.is_empty() {
                    self.free.extend(a.into_iter().chain(b));
                } else {
                    self.groups.push(Group::Imp { a, b });
                }
            }
            Group::D(m) | Group::Eps(m) if m.len() <= 1 => self.free.extend(m),
            Group::Ell(m) if m.len() <= 2 => self.free.extend(m),
            Group::G(m) if m.is_empty() => return false,
            Group::G(m) if m.len() == 1 => self.fixed.push((m[0], true)),
            g => self.groups.push(g),
        }
        true
    }
}

/// Rewrites `g` given values for some of its members.
pub(crate) fn restrict_group(g: &Group, assign: &BTreeMap<usize, bool>) -> Option<Effects> {
    let mut fx = Effects::default();
    let val = |p: &usize| assign.get(p).copied();
    let split = |m: &[usize]| -> (usize, usize, Vec<usize>) {
        let ones = m.iter().filter(|p| val(p) == Some(true)).count();
        let zeros = m.iter().filter(|p| val(p) == Some(false)).count();
        let rest = m.iter().copied().filter(|p| val(p).is_none()).collect();
        (ones, zeros, rest)
    };
    let assigned = |m: &[usize]| -> Vec<(usize, bool)> {
        m.iter().filter_map(|p| val(p).map(|v| (*p, v))).collect()
    };
    match g {
        Group::Imp { a, b } => {
            let a_one = a.iter().any(|p| val(p) == Some(true));
            let b_zero = b.iter().any(|p| val(p) == Some(false));
            if a_one && b_zero {
                return None;
            }
            if a_one {
                fx.fix_all(b.iter().copied(), true);
                fx.fixed.extend(assigned(a));
                fx.free.extend(a.iter().copied().filter(|p| val(p).is_none()));
            } else if b_zero {
                fx.fix_all(a.iter().copied(), false);
                fx.fixed.extend(assigned(b));
                fx.free.extend(b.iter().copied().filter(|p| val(p).is_none()));
            } else {
                fx.fixed.extend(assigned(a));
                fx.fixed.extend(assigned(b));
                let a2 = a.iter().copied().filter(|p| val(p).is_none()).collect();
                let b2 = b.iter().copied().filter(|p| val(p).is_none()).collect();
                fx.add(Group::Imp { a: a2, b: b2 });
            }
        }
        Group::D(m) => {
            let (ones, zeros, _) = split(m);
            if ones > 0 && zeros > 0 {
                return None;
            }
            fx.fix_all(m.iter().copied(), ones > 0);
        }
        Group::Eps(m) | Group::G(m) => {
            let (ones, _, rest) = split(m);
            if ones >= 2 {
                return None;
            }
            fx.fixed.extend(assigned(m));
            if ones == 1 {
                fx.fix_all(rest, false);
            } else if matches!(g, Group::G(_)) {
                if !fx.add(Group::G(rest)) {
                    return None;
                }
            } else {
                fx.add(Group::Eps(rest));
            }
        }
        Group::Ell(m) => {
            let (ones, zeros, rest) = split(m);
            fx.fixed.extend(assigned(m));
            match (ones, zeros) {
                (o, z) if o >= 2 && z > 0 => return None,
                (o, _) if o >= 2 => fx.fix_all(rest, true),
                (1, z) if z > 0 => fx.fix_all(rest, false),
                (1, _) => {
                    fx.add(Group::D(rest));
                }
                (_, z) if z > 0 => {
                    fx.add(Group::Eps(rest));
                }
                _ => {
                    fx.add(Group::Ell(rest));
                }
            }
        }
    }
    Some(fx)
}

/// Rewrites `g` so that exactly one of `q ⊆ members(g)` is 1.
pub(crate) fn exactly_one_group(g: &Group, q: &[usize]) -> Option<Effects> {
    let mut fx = Effects::default();
    let in_q = |p: &usize| q.contains(p);
    match g {
        Group::D(m) => {
            if q.len() != 1 {
                return None;
            }
            fx.fix_all(m.iter().copied(), true);
        }
        Group::Eps(m) | Group::G(m) => {
            fx.fix_all(m.iter().copied().filter(|p| !in_q(p)), false);
            if !fx.add(Group::G(q.to_vec())) {
                return None;
            }
        }
        Group::Ell(m) => {
            let rest: Vec<usize> = m.iter().copied().filter(|p| !in_q(p)).collect();
            if q.len() >= 2 {
                fx.fix_all(rest, false);
                fx.add(Group::G(q.to_vec()));
            } else {
                fx.fix_all(q.iter().copied(), true);
                fx.add(Group::D(rest));
            }
        }
        Group::Imp { a, b } => {
            let qa: Vec<usize> = a.iter().copied().filter(in_q).collect();
            let qb: Vec<usize> = b.iter().copied().filter(in_q).collect();
            let a_out: Vec<usize> = a.iter().copied().filter(|p| !in_q(p)).collect();
            let b_out: Vec<usize> = b.iter().copied().filter(|p| !in_q(p)).collect();
            match qb.len() {
                0 => {
                    if !fx.add(Group::G(qa)) {
                        return None;
                    }
                    fx.free.extend(a_out);
                    fx.fix_all(b.iter().copied(), true);
                }
                1 => {
                    fx.fixed.push((qb[0], true));
                    fx.fix_all(qa, false);
                    fx.add(Group::Imp { a: a_out, b: b_out });
                }
                _ => {
                    fx.fix_all(a.iter().copied(), false);
                    fx.add(Group::G(qb));
                    fx.free.extend(b_out);
                }
            }
        }
    }
    Some(fx)
}

/// A row: fixed cells, free cells and wildcard groups over `0..width`,
/// plus the constraints (line indices) still to be imposed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Row {
    cells: Vec<Cell>,
    groups: Vec<Group>,
    pub pending: Vec<usize>,
}

impl Row {
    /// The all-free row.
    pub fn free(width: usize) -> Row {
        Row {
            cells: vec![Cell::Free; width],
            groups: Vec::new(),
            pending: Vec::new(),
        }
    }

    /// Builds a row from per-position base cells (`Zero`, `One` or `Free`)
    /// and groups; grouped positions must be `Free` in `base`.
    pub fn new(base: Vec<Cell>, groups: Vec<Group>) -> Result<Row, WildcardError> {
        let mut cells = base;
        for (gid, g) in groups.iter().enumerate() {
            if !g.min_size_ok() {
                return Err(WildcardError::InvalidRow(format!(
                    "group {gid} ({}) is below its minimum size",
                    g.kind().as_str()
                )));
            }
            for p in g.members() {
                match cells.get(p) {
                    None => {
                        return Err(WildcardError::InvalidRow(format!(
                            "group {gid} uses position {p} outside width {}",
                            cells.len()
                        )))
                    }
                    Some(Cell::Free) => cells[p] = Cell::Group(gid as u32),
                    Some(_) => {
                        return Err(WildcardError::InvalidRow(format!(
                            "position {p} is both fixed or grouped and in group {gid}"
                        )))
                    }
                }
            }
        }
        Ok(Row {
            cells,
            groups,
            pending: Vec::new(),
        })
    }

    pub fn with_pending(mut self, pending: Vec<usize>) -> Row {
        self.pending = pending;
        self
    }

    pub fn width(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn groups(&self) -> &[Group] {
        &self.groups
    }

    pub fn group_of(&self, p: usize) -> Option<usize> {
        match self.cells[p] {
            Cell::Group(g) => Some(g as usize),
            _ => None,
        }
    }

    /// Number of bitstrings denoted by the row.
    pub fn count(&self) -> BigUint {
        let free = self.cells.iter().filter(|c| **c == Cell::Free).count();
        self.groups
            .iter()
            .fold(BigUint::one() << free, |acc, g| acc * g.count())
    }

    pub fn contains(&self, bits: &Bits) -> bool {
        let fixed_ok = self.cells.iter().enumerate().all(|(p, c)| match c {
            Cell::Zero => !bits.contains(p),
            Cell::One => bits.contains(p),
            _ => true,
        });
        fixed_ok && self.groups.iter().all(|g| g.accepts(bits))
    }

    /// All denoted bitstrings, refusing if there are more than `cap`.
    pub fn expand(&self, cap: usize) -> Result<Vec<Bits>, WildcardError> {
        let count = self.count();
        if count > BigUint::from(cap) {
            return Err(WildcardError::ExpansionCapExceeded { cap });
        }
        let width = self.width();
        let mut base = FixedBitSet::with_capacity(width);
        let mut free = Vec::new();
        for (p, c) in self.cells.iter().enumerate() {
            match c {
                Cell::One => base.insert(p),
                Cell::Free => free.push(p),
                _ => {}
            }
        }
        let mut acc = vec![base];
        for p in free {
            let with: Vec<Bits> = acc
                .iter()
                .map(|b| {
                    let mut b = b.clone();
                    b.insert(p);
                    b
                })
                .collect();
            acc.extend(with);
        }
        for g in &self.groups {
            let pats = g.patterns();
            let mut next = Vec::with_capacity(acc.len() * pats.len());
            for b in &acc {
                for pat in &pats {
                    let mut b = b.clone();
                    for &p in pat {
                        b.insert(p);
                    }
                    next.push(b);
                }
            }
            acc = next;
        }
        Ok(acc)
    }

    pub(crate) fn to_draft(&self) -> Draft {
        Draft {
            base: self
                .cells
                .iter()
                .map(|c| match c {
                    Cell::Group(_) => Cell::Free,
                    c => *c,
                })
                .collect(),
            groups: self.groups.clone(),
        }
    }

    /// The subset of the row where the given positions take the given
    /// values; `None` if empty.
    pub fn restrict(&self, assign: &[(usize, bool)]) -> Option<Row> {
        let mut d = self.to_draft();
        if !d.restrict(assign) {
            return None;
        }
        Some(d.finish(self.pending.clone()))
    }

    /// Positions whose value is the same in every denoted bitstring.
    pub(crate) fn forced(&self) -> Vec<(usize, bool)> {
        let mut out = Vec::new();
        for (p, c) in self.cells.iter().enumerate() {
            match c {
                Cell::Zero => out.push((p, false)),
                Cell::One => out.push((p, true)),
                _ => {}
            }
        }
        out
    }
}

/// A row under construction: base cells (never `Group`) plus groups whose
/// members are `Free` in `base`.
#[derive(Debug, Clone)]
pub(crate) struct Draft {
    pub base: Vec<Cell>,
    pub groups: Vec<Group>,
}

impl Draft {
    fn group_index(&self) -> Vec<Option<usize>> {
        let mut idx = vec![None; self.base.len()];
        for (gid, g) in self.groups.iter().enumerate() {
            for p in g.members() {
                idx[p] = Some(gid);
            }
        }
        idx
    }

    fn set(&mut self, p: usize, v: bool) -> bool {
        let want = if v { Cell::One } else { Cell::Zero };
        match self.base[p] {
            Cell::Free => {
                self.base[p] = want;
                true
            }
            c => c == want,
        }
    }

    /// Replaces group `gid` by the given effects.
    fn apply(&mut self, gid: usize, fx: Effects) -> bool {
        self.groups.remove(gid);
        for (i, g) in fx.groups.into_iter().enumerate() {
            self.groups.insert(gid + i, g);
        }
        for p in fx.free {
            self.base[p] = Cell::Free;
        }
        fx.fixed.into_iter().all(|(p, v)| self.set(p, v))
    }

    pub fn restrict(&mut self, assign: &[(usize, bool)]) -> bool {
        let idx = self.group_index();
        let mut per_group: BTreeMap<usize, BTreeMap<usize, bool>> = BTreeMap::new();
        for &(p, v) in assign {
            match idx[p] {
                Some(g) => {
                    let slot = per_group.entry(g).or_default();
                    if *slot.entry(p).or_insert(v) != v {
                        return false;
                    }
                }
                None => {
                    if !self.set(p, v) {
                        return false;
                    }
                }
            }
        }
        // Highest index first so earlier indices stay valid.
        for (gid, a) in per_group.into_iter().rev() {
            match restrict_group(&self.groups[gid], &a) {
                Some(fx) => {
                    if !self.apply(gid, fx) {
                        return false;
                    }
                }
                None => return false,
            }
        }
        true
    }

    pub fn exactly_one(&mut self, gid: usize, q: &[usize]) -> bool {
        match exactly_one_group(&self.groups[gid], q) {
            Some(fx) => self.apply(gid, fx),
            None => false,
        }
    }

    /// Adds a group over currently free positions.
    pub fn add_group(&mut self, g: Group) -> bool {
        let mut fx = Effects::default();
        if !fx.add(g) {
            return false;
        }
        self.groups.extend(fx.groups);
        fx.fixed.into_iter().all(|(p, v)| self.set(p, v))
    }

    pub fn finish(self, pending: Vec<usize>) -> Row {
        let mut row = Row::new(self.base, self.groups).expect("draft keeps row invariants");
        row.pending = pending;
        row
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> Bits {
        let mut b = FixedBitSet::with_capacity(s.len());
        for (i, c) in s.chars().enumerate() {
            if c == '1' {
                b.insert(i);
            }
        }
        b
    }

    #[test]
    fn group_counts() {
        let imp = Group::Imp {
            a: vec![0, 1],
            b: vec![2, 3, 4],
        };
        assert_eq!(imp.count(), BigUint::from(8u32 + 4 - 1));
        assert_eq!(Group::Ell(vec![0, 1, 2]).count(), BigUint::from(5u32));
        for g in [
            imp,
            Group::D(vec![0, 1]),
            Group::Eps(vec![0, 1, 2]),
            Group::G(vec![0, 1, 2]),
            Group::Ell(vec![0, 1, 2, 3]),
        ] {
            assert_eq!(BigUint::from(g.patterns().len()), g.count());
        }
    }

    #[test]
    fn eps_row_expansion() {
        let base = vec![
            Cell::Zero,
            Cell::One,
            Cell::Zero,
            Cell::Zero,
            Cell::Free,
            Cell::Free,
            Cell::Zero,
        ];
        let r = Row::new(base, vec![Group::Eps(vec![4, 5])]).unwrap();
        let mut got: Vec<String> = r
            .expand(100)
            .unwrap()
            .iter()
            .map(|b| (0..7).map(|i| if b.contains(i) { '1' } else { '0' }).collect())
            .collect();
        got.sort();
        assert_eq!(got, vec!["0100000", "0100010", "0100100"]);
    }

    #[test]
    fn d_row_membership() {
        let base = vec![
            Cell::One,
            Cell::One,
            Cell::One,
            Cell::Free,
            Cell::One,
            Cell::One,
            Cell::Free,
        ];
        let r = Row::new(base, vec![Group::D(vec![3, 6])]).unwrap();
        assert!(r.contains(&bits("1111111")));
        assert!(r.contains(&bits("1110110")));
        assert!(!r.contains(&bits("1111110")));
        assert_eq!(r.count(), BigUint::from(2u32));
    }

    #[test]
    fn invalid_rows() {
        assert!(Row::new(vec![Cell::Free; 2], vec![Group::D(vec![0])]).is_err());
        assert!(Row::new(vec![Cell::One, Cell::Free], vec![Group::D(vec![0, 1])]).is_err());
        assert!(Row::new(
            vec![Cell::Free; 3],
            vec![Group::D(vec![0, 1]), Group::Eps(vec![1, 2])]
        )
        .is_err());
    }

    #[test]
    fn restrict_imp() {
        let r = Row::new(
            vec![Cell::Free; 3],
            vec![Group::Imp {
                a: vec![0],
                b: vec![1, 2],
            }],
        )
        .unwrap();
        let s = r.restrict(&[(1, false)]).unwrap();
        assert_eq!(s.cells(), &[Cell::Zero, Cell::Zero, Cell::Free]);
        let t = r.restrict(&[(0, true)]).unwrap();
        assert_eq!(t.cells(), &[Cell::One, Cell::One, Cell::One]);
        assert!(r.restrict(&[(0, true), (2, false)]).is_none());
    }

    #[test]
    fn restrict_ell_variants() {
        let r = Row::new(vec![Cell::Free; 4], vec![Group::Ell(vec![0, 1, 2, 3])]).unwrap();
        let one = r.restrict(&[(0, true)]).unwrap();
        assert_eq!(one.groups(), &[Group::D(vec![1, 2, 3])]);
        let zero = r.restrict(&[(0, false)]).unwrap();
        assert_eq!(zero.groups(), &[Group::Eps(vec![1, 2, 3])]);
        assert!(r.restrict(&[(0, true), (1, true), (2, false)]).is_none());
    }
}
