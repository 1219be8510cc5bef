//! Imposing a line constraint (at most one 1, or all 1) on a row.

use fixedbitset::FixedBitSet;

use super::row::{Cell, Draft, Group, Row};

/// Attainable numbers of ones on `q` (a subset of the group's members).
fn group_counts(g: &Group, q: &[usize]) -> FixedBitSet {
    let k = q.len();
    let mut s = FixedBitSet::with_capacity(k + 1);
    match g {
        Group::D(_) => {
            s.insert(0);
            s.insert(k);
        }
        Group::Eps(_) => s.insert_range(0..2.min(k + 1)),
        Group::G(m) => {
            if m.len() == k {
                s.insert(1);
            } else {
                s.insert_range(0..2.min(k + 1));
            }
        }
        Group::Ell(_) => {
            s.insert_range(0..2.min(k + 1));
            s.insert(k);
        }
        Group::Imp { a, .. } => {
            let qa = a.iter().filter(|p| q.contains(p)).count();
            let qb = k - qa;
            s.insert_range(0..qb + 1);
            let lowest = if qa == a.len() { 1 } else { 0 };
            for extra in lowest..=qa {
                s.insert(qb + extra);
            }
        }
    }
    s
}

/// True if every bitstring of the row already satisfies the line.
pub fn satisfies_line(row: &Row, positions: &[usize]) -> bool {
    let lam = positions.len();
    let mut sums = FixedBitSet::with_capacity(lam + 1);
    sums.insert(0);
    let mut per_group: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for &p in positions {
        let block = match row.cells()[p] {
            Cell::Zero => continue,
            Cell::One => {
                let mut s = FixedBitSet::with_capacity(2);
                s.insert(1);
                s
            }
            Cell::Free => {
                let mut s = FixedBitSet::with_capacity(2);
                s.insert_range(..);
                s
            }
            Cell::Group(g) => {
                per_group.entry(g as usize).or_default().push(p);
                continue;
            }
        };
        sums = sumset(&sums, &block, lam);
    }
    for (g, q) in per_group {
        sums = sumset(&sums, &group_counts(&row.groups()[g], &q), lam);
    }
    sums.ones().all(|k| k <= 1 || k == lam)
}

fn sumset(x: &FixedBitSet, y: &FixedBitSet, lam: usize) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(lam + 1);
    for i in x.ones() {
        for j in y.ones() {
            if i + j <= lam {
                out.insert(i + j);
            }
        }
    }
    out
}

/// Replaces `row` by pairwise disjoint rows whose union is the part of `row`
/// where `positions` hold at most one 1 or only 1s.
///
/// Line positions split into `N` (fixed or grouped) and `F` (free). The
/// cases are: no 1 on `N`, exactly one 1 on `N` (one row per group that
/// could host it), and `N` all 1 when `|N| ≥ 2`. This gives at most
/// `|positions| + 2` rows. Empty rows are dropped. The returned rows keep
/// the input's `pending` list.
pub fn impose_line(row: &Row, positions: &[usize]) -> Vec<Row> {
    let mut positions = positions.to_vec();
    positions.sort_unstable();
    positions.dedup();
    if satisfies_line(row, &positions) {
        return vec![row.clone()];
    }
    let (free, fixed_or_grouped): (Vec<usize>, Vec<usize>) = positions
        .iter()
        .partition(|&&p| row.cells()[p] == Cell::Free);
    let n = &fixed_or_grouped;
    let zeros = |ps: &[usize]| ps.iter().map(|&p| (p, false)).collect::<Vec<_>>();
    let base = row.to_draft();
    let mut out = Vec::new();
    let mut emit = |d: Option<Draft>| {
        if let Some(d) = d {
            out.push(d.finish(row.pending.clone()));
        }
    };

    // No 1 on N.
    emit({
        let mut d = base.clone();
        let g = if n.is_empty() {
            Group::Ell(free.clone())
        } else {
            Group::Eps(free.clone())
        };
        (d.restrict(&zeros(n)) && d.add_group(g)).then_some(d)
    });

    // Exactly one 1 on N.
    if n.len() == 1 {
        let mut d = base.clone();
        emit((d.restrict(&[(n[0], true)]) && d.add_group(Group::D(free.clone()))).then_some(d));
    } else {
        let ones: Vec<usize> = n.iter().copied().filter(|&p| row.cells()[p] == Cell::One).collect();
        match ones.len() {
            0 => {
                let mut hosts: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
                for &p in n {
                    if let Some(g) = row.group_of(p) {
                        hosts.entry(g).or_default().push(p);
                    }
                }
                for (&g, q) in &hosts {
                    let mut d = base.clone();
                    let others: Vec<(usize, bool)> = n
                        .iter()
                        .chain(&free)
                        .filter(|p| !q.contains(p))
                        .map(|&p| (p, false))
                        .collect();
                    emit((d.exactly_one(g, q) && d.restrict(&others)).then_some(d));
                }
            }
            1 => {
                let mut d = base.clone();
                let others: Vec<(usize, bool)> = n
                    .iter()
                    .chain(&free)
                    .filter(|&&p| p != ones[0])
                    .map(|&p| (p, false))
                    .collect();
                emit(d.restrict(&others).then_some(d));
            }
            _ => {}
        }
    }

    // Everything 1.
    if n.len() >= 2 {
        let mut d = base;
        let all: Vec<(usize, bool)> = positions.iter().map(|&p| (p, true)).collect();
        emit(d.restrict(&all).then_some(d));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn all_free_line_becomes_ell() {
        let r = Row::free(5);
        let out = impose_line(&r, &[0, 2, 4]);
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].groups(), &[Group::Ell(vec![0, 2, 4])]);
        assert_eq!(out[0].count(), BigUint::from(5u32 * 4));
    }

    #[test]
    fn two_point_line_is_always_satisfied() {
        let r = Row::free(3);
        assert_eq!(impose_line(&r, &[0, 1]), vec![r]);
    }

    #[test]
    fn fixed_zero_on_line() {
        let r = Row::new(vec![Cell::Zero, Cell::Free, Cell::Free], vec![]).unwrap();
        let out = impose_line(&r, &[0, 1, 2]);
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].groups(), &[Group::Eps(vec![1, 2])]);
    }
}
