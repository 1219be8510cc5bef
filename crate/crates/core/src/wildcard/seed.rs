//! Order-ideal seeding: the down-sets of a poset as disjoint wildcard rows.

use super::row::{Cell, Group, Row};
use crate::poset::Poset;

/// Rows whose disjoint union is the set of indicator vectors of the
/// down-sets of `poset`.
///
/// Branches on a pivot (most comparabilities among undetermined points,
/// lowest index on ties), first including it with its down-set, then
/// excluding it with its up-set. A branch stops once the cover constraints
/// between undetermined points form a matching; each such cover becomes an
/// implication pair `upper ⇒ lower`.
pub fn seed_order_ideals(poset: &Poset) -> Vec<Row> {
    let mut out = Vec::new();
    let mut state = vec![None; poset.len()];
    branch(poset, &mut state, &mut out);
    out
}

fn branch(poset: &Poset, state: &mut Vec<Option<bool>>, out: &mut Vec<Row>) {
    let open: Vec<(usize, usize)> = poset
        .covers()
        .iter()
        .copied()
        .filter(|&(lo, hi)| state[lo].is_none() && state[hi].is_none())
        .collect();
    let mut degree = vec![0usize; state.len()];
    for &(lo, hi) in &open {
        degree[lo] += 1;
        degree[hi] += 1;
    }
    if degree.iter().all(|&d| d <= 1) {
        out.push(leaf(state, &open));
        return;
    }
    let undetermined = |s: &fixedbitset::FixedBitSet, state: &[Option<bool>]| {
        s.ones().filter(|&x| state[x].is_none()).count()
    };
    let mut pivot = None;
    let mut best = 0;
    for x in 0..state.len() {
        if state[x].is_some() {
            continue;
        }
        let score = undetermined(poset.up(x), state) + undetermined(poset.down(x), state);
        if pivot.is_none() || score > best {
            pivot = Some(x);
            best = score;
        }
    }
    let pivot = pivot.expect("an open cover has undetermined endpoints");
    for value in [true, false] {
        let saved = state.clone();
        let cone = if value { poset.down(pivot) } else { poset.up(pivot) };
        for x in cone.ones() {
            state[x] = Some(value);
        }
        branch(poset, state, out);
        *state = saved;
    }
}

fn leaf(state: &[Option<bool>], open: &[(usize, usize)]) -> Row {
    let base = state
        .iter()
        .map(|s| match s {
            Some(true) => Cell::One,
            Some(false) => Cell::Zero,
            None => Cell::Free,
        })
        .collect();
    let groups = open
        .iter()
        .map(|&(lo, hi)| Group::Imp {
            a: vec![hi],
            b: vec![lo],
        })
        .collect();
    Row::new(base, groups).expect("matching covers give disjoint pairs")
}
