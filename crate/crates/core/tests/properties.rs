mod common;

use std::collections::{BTreeSet, HashSet};

use modlat::bol::{all_bols_capped, canonical_bol};
use modlat::rebuild::ImplicationSet;
use modlat::wildcard::{enumerate, impose_line, Bits, RowSet, DEFAULT_EXPAND_CAP};
use modlat::Pls;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn impose_line_denotation(seed in any::<u64>(), width in 1usize..9, lam in 1usize..9) {
        let mut r = rng(seed);
        let row = common::random_row(&mut r, width);
        let line: Vec<usize> = (0..lam.min(width)).map(|i| (i * 7 + seed as usize) % width).collect::<BTreeSet<_>>().into_iter().collect();
        let out = impose_line(&row, &line);
        prop_assert!(out.len() <= line.len() + 2);
        let rs = RowSet::new(width, out).unwrap();
        prop_assert!(rs.validate(1 << 12).is_ok());
        let got = common::set_of(rs.expand(1 << 12).unwrap());
        let want = common::set_of(
            row.expand(1 << 12).unwrap().into_iter().filter(|b| common::satisfies(b, &line)).collect(),
        );
        prop_assert_eq!(got, want);
    }

    #[test]
    fn row_count_matches_expansion(seed in any::<u64>(), width in 1usize..11) {
        let row = common::random_row(&mut rng(seed), width);
        let members = row.expand(1 << 12).unwrap();
        prop_assert_eq!(row.count(), members.len().into());
        let distinct: HashSet<Bits> = members.iter().cloned().collect();
        prop_assert_eq!(distinct.len(), members.len());
        prop_assert!(members.iter().all(|b| row.contains(b)));
    }

    #[test]
    fn enumerate_matches_brute_force(seed in any::<u64>()) {
        let (poset, lines) = common::random_instance(&mut rng(seed), 10);
        let rows = enumerate(&poset, &lines).unwrap();
        prop_assert!(rows.validate(1 << 12).is_ok());
        let got = common::set_of(rows.expand(DEFAULT_EXPAND_CAP).unwrap());
        let want = common::set_of(modlat::wildcard::brute_force_closed_ideals(&poset, &lines));
        prop_assert_eq!(got, want);
    }

    #[test]
    fn enumeration_ignores_line_order(seed in any::<u64>()) {
        let (poset, mut lines) = common::random_instance(&mut rng(seed), 10);
        let a = common::set_of(enumerate(&poset, &lines).unwrap().expand(DEFAULT_EXPAND_CAP).unwrap());
        lines.reverse();
        let b = common::set_of(enumerate(&poset, &lines).unwrap().expand(DEFAULT_EXPAND_CAP).unwrap());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn parallel_enumeration_is_identical(seed in any::<u64>()) {
        let (poset, lines) = common::random_instance(&mut rng(seed), 10);
        prop_assert_eq!(
            enumerate(&poset, &lines).unwrap(),
            modlat::wildcard::enumerate_with(&poset, &lines, true).unwrap()
        );
    }

    #[test]
    fn horn_closure_is_a_closure_operator(
        imps in prop::collection::vec(
            (prop::collection::btree_set(0usize..8, 0..3), prop::collection::btree_set(0usize..8, 1..3)),
            0..8,
        ),
        x in prop::collection::btree_set(0usize..8, 0..5),
        y in prop::collection::btree_set(0usize..8, 0..5),
    ) {
        let s = ImplicationSet::new(imps.into_iter().map(|(a, b)| (a.into_iter().collect(), b.into_iter().collect())));
        let cx = s.closure(&x);
        prop_assert!(cx.is_superset(&x));
        prop_assert_eq!(s.closure(&cx), cx.clone());
        prop_assert!(s.is_closed(&cx));
        let xy: BTreeSet<usize> = x.union(&y).copied().collect();
        prop_assert!(s.closure(&xy).is_superset(&cx));
        // Naive fixpoint agrees.
        let mut naive = x.clone();
        loop {
            let before = naive.len();
            for i in &s.implications {
                if i.premise.iter().all(|p| naive.contains(p)) {
                    naive.extend(i.conclusion.iter().copied());
                }
            }
            if naive.len() == before {
                break;
            }
        }
        prop_assert_eq!(naive, cx);
    }

    #[test]
    fn rstar_zero_iff_acyclic(seed in any::<u64>()) {
        let p = common::random_pls(&mut rng(seed), 8);
        prop_assert_eq!(p.rstar() == 0, p.is_acyclic());
        prop_assert_eq!(p.find_cycle().is_none(), p.is_acyclic());
        if let Some(c) = p.find_cycle() {
            prop_assert!(p.is_cycle(&c));
        }
        let fixed = p.apply_splittings(&p.acyclifier()).unwrap();
        prop_assert!(fixed.is_acyclic());
        prop_assert_eq!(fixed.num_components(), p.num_components());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn rstar_is_minimal_splitting_count(seed in any::<u64>()) {
        let p = common::random_pls(&mut rng(seed), 5);
        prop_assert_eq!(common::min_splittings(&p), p.rstar());
    }

    #[test]
    fn random_distributive_lattices_have_no_lines(seed in any::<u64>()) {
        let poset = modlat::corpus::random_poset(&mut rng(seed), 6);
        let l = modlat::corpus::down_set_lattice(&poset);
        let b = canonical_bol(&l).unwrap();
        prop_assert!(b.lines().is_empty());
        prop_assert_eq!(b.pls.num_components(), l.height());
        prop_assert_eq!(b.points().len(), poset.len());
    }
}

#[test]
fn all_bases_of_a_group_lattice_are_bases() {
    let l = modlat::corpus::subgroup_lattice_of(&[2, 4]);
    let (bols, truncated) = all_bols_capped(&l, 100).unwrap();
    assert!(!truncated);
    assert_eq!(bols.len(), 2);
    for b in &bols {
        for (k, line) in b.lines().iter().enumerate() {
            for (i, &p) in line.iter().enumerate() {
                for &q in &line[i + 1..] {
                    assert_eq!(l.join(p, q), b.tops[k]);
                }
            }
        }
    }
}

#[test]
fn pls_rejects_two_point_intersections() {
    assert!(Pls::new(vec![0, 1, 2, 3], vec![vec![0, 1, 2], vec![0, 1, 3]]).is_err());
}
