//! One test per acceptance criterion. Each prints a single
//! `criterion N: PASS|FAIL ...` line before asserting.

mod common;

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use modlat::algebra::{Group, SetSystem};
use modlat::analysis::{cyclic_localization_witness, triangle_configurations};
use modlat::bol::{canonical_bol, BaseOfLines};
use modlat::corpus::{corpus, subgroup_lattice_of, verify_corpus, VerifyOptions, CORPUS_GROUPS};
use modlat::rebuild::{closed_ideals_lattice, roundtrip_check, ImplicationSet};
use modlat::wildcard::{
    brute_force_closed_ideals, enumerate, impose_line, seed_order_ideals,
    DEFAULT_EXPAND_CAP,
};
use modlat::{fixtures, io, is_isomorphic, Lattice};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(n: usize, ok: bool, detail: impl AsRef<str>) {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("criterion {n}: {tag} {}", detail.as_ref());
    assert!(ok, "criterion {n} failed: {}", detail.as_ref());
}

fn within(t: Instant, limit: Duration) -> bool {
    t.elapsed() < limit
}

#[test]
fn criterion_01_worked_example_counts() {
    let t = Instant::now();
    let poset = fixtures::fig81_poset();
    let seeds = seed_order_ideals(&poset);
    let seed_total: BigUint = seeds.iter().map(|r| r.count()).sum();
    let seed_counts: Vec<BigUint> = seeds.iter().map(|r| r.count()).collect();
    let rows = enumerate(&poset, &fixtures::fig81_lines()).unwrap();
    let mut sizes: Vec<u64> = rows.rows.iter().map(|r| u64::try_from(r.count()).unwrap()).collect();
    sizes.sort_unstable();
    let ok = seed_total == 45u32.into()
        && seed_counts == vec![BigUint::from(36u32), BigUint::from(9u32)]
        && rows.count() == 13u32.into()
        && sizes == vec![1, 2, 2, 2, 3, 3]
        && within(t, Duration::from_secs(1));
    report(
        1,
        ok,
        format!("seeds {seed_counts:?} total {seed_total}, closed ideals {} in rows {sizes:?}", rows.count()),
    );
}

#[test]
fn criterion_02_reconstruction() {
    let t = Instant::now();
    let poset = fixtures::fig81_poset();
    let lines = fixtures::fig81_lines();
    let members = enumerate(&poset, &lines).unwrap().expand(DEFAULT_EXPAND_CAP).unwrap();
    let (l, sorted) = closed_ideals_lattice(&members, poset.names()).unwrap();

    // Each join-irreducible is the principal ideal of one point.
    let jis = l.join_irreducibles();
    let point_of: Vec<Option<usize>> = jis
        .iter()
        .map(|j| (0..poset.len()).find(|&p| sorted[j.elem].ones().collect::<Vec<_>>() == poset.down(p).ones().collect::<Vec<_>>()))
        .collect();
    let all_principal = point_of.iter().all(Option::is_some);
    let mut order_ok = all_principal;
    if all_principal {
        for (x, jx) in jis.iter().enumerate() {
            for (y, jy) in jis.iter().enumerate() {
                let (px, py) = (point_of[x].unwrap(), point_of[y].unwrap());
                order_ok &= l.leq(jx.elem, jy.elem) == poset.leq(px, py);
            }
        }
    }
    let bol = canonical_bol(&l).unwrap();
    // The original lines, carried over to the rebuilt lattice, form one of
    // its bases of lines.
    let elem_of = |p: usize| jis[point_of.iter().position(|&q| q == Some(p)).unwrap()].elem;
    let carried: Vec<Vec<usize>> = lines
        .iter()
        .map(|line| line.iter().map(|&p| elem_of(p)).collect())
        .collect();
    let lines_ok = all_principal && BaseOfLines::from_lines(&l, carried).is_ok();
    let rt = roundtrip_check(&l).unwrap();
    let ok = l.len() == 13
        && jis.len() == 7
        && order_ok
        && bol.tops.len() == 3
        && lines_ok
        && rt.ok()
        && within(t, Duration::from_secs(1));
    report(
        2,
        ok,
        format!(
            "|L|={}, |J|={}, order matches={order_ok}, line-tops={}, original lines form a base={lines_ok}, round trip={}",
            l.len(),
            jis.len(),
            bol.tops.len(),
            rt.ok()
        ),
    );
}

#[test]
fn criterion_03_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut instances = 0;
    let mut mismatches = 0;
    for _ in 0..150 {
        let (poset, lines) = common::random_instance(&mut rng, 14);
        let got = common::set_of(enumerate(&poset, &lines).unwrap().expand(DEFAULT_EXPAND_CAP).unwrap());
        let want = common::set_of(brute_force_closed_ideals(&poset, &lines));
        instances += 1;
        if got != want {
            mismatches += 1;
        }
    }
    report(
        3,
        mismatches == 0 && instances >= 100,
        format!("{instances} random instances with |E| <= 14, {mismatches} mismatches"),
    );
}

/// Subgroups by brute force: subsets containing 0 and closed under addition.
fn subgroup_count_oracle(g: &Group) -> usize {
    let mut found: HashSet<Vec<usize>> = HashSet::new();
    // Every subgroup is generated by at most as many elements as there are
    // factors, so closing all small generator sets reaches them all.
    let n = g.order();
    let close = |gens: &[usize]| -> Vec<usize> {
        let mut set: BTreeSet<usize> = [0].into_iter().collect();
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &s in gens {
                let y = g.add(x, s);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set.into_iter().collect()
    };
    let k = g.factors().len();
    let mut stack: Vec<Vec<usize>> = vec![vec![]];
    while let Some(gens) = stack.pop() {
        found.insert(close(&gens));
        if gens.len() < k {
            let start = gens.last().map_or(1, |&x| x + 1);
            for x in start..n {
                let mut next = gens.clone();
                next.push(x);
                stack.push(next);
            }
        }
    }
    found.len()
}

#[test]
fn criterion_04_subgroup_pipeline() {
    let t = Instant::now();
    let mut details = Vec::new();
    let mut ok = true;
    for f in CORPUS_GROUPS {
        let g = Group::new(f, 4096).unwrap();
        let input = g.enumeration_input();
        let count = enumerate(&input.poset, &input.lines).unwrap().count();
        let lattice = g.subgroup_lattice().unwrap().0.len();
        let oracle = subgroup_count_oracle(&g);
        ok &= count == BigUint::from(oracle) && lattice == oracle;
        details.push(format!("{f:?}: {count}/{lattice}/{oracle}"));
    }
    ok &= subgroup_lattice_of(&[2, 2, 2]).len() == 16 && subgroup_lattice_of(&[4, 4]).len() == 15;
    ok &= within(t, Duration::from_secs(10));
    report(4, ok, format!("enumerated/lattice/oracle {}", details.join(", ")));
}

#[test]
fn criterion_05_coatom_localizations() {
    let l = subgroup_lattice_of(&[2, 2, 2]);
    let b = canonical_bol(&l).unwrap();
    let top = l.top();
    let mut ok = l.lower_covers(top).len() == 7;
    let mut seen = Vec::new();
    for &a in l.lower_covers(top) {
        let lines_in = b
            .tops
            .iter()
            .filter(|&&t| l.leq(t, top) && !l.leq(t, a))
            .count();
        let loc = b.localize(&l, a, top).unwrap();
        ok &= lines_in == 6 && loc.num_points() == 4 && loc.num_components() == 1;
        seen.push((lines_in, loc.num_points(), loc.num_components()));
    }
    report(5, ok, format!("per coatom (|lines|, j(a,1), components): {seen:?}"));
}

#[test]
fn criterion_06_theorem_suite() {
    let t = Instant::now();
    let entries = corpus(2024);
    let results = verify_corpus(&entries, &VerifyOptions::default());
    let mut failures = Vec::new();
    for r in &results {
        match r {
            Ok(r) => failures.extend(r.failures().map(|v| format!("{}: {v}", r.name))),
            Err(e) => failures.push(e.to_string()),
        }
    }
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = modlat::cli::run_with(["modlat", "verify"], &mut out, &mut err);
    let ok = failures.is_empty() && code == 0 && within(t, Duration::from_secs(60));
    report(
        6,
        ok,
        format!(
            "{} lattices, {} failures, verify exit {code}, {:?}; {failures:?}",
            entries.len(),
            failures.len(),
            t.elapsed()
        ),
    );
}

#[test]
fn criterion_07_triangle_witnesses() {
    let l = subgroup_lattice_of(&[2, 2, 2]);
    let b = canonical_bol(&l).unwrap();
    let configs = triangle_configurations(&b.pls);
    let mut errors = Vec::new();
    for c in &configs {
        match cyclic_localization_witness(&l, &b, c) {
            Ok(w) => {
                if l.leq(c.s, w.u) || !w.localization.is_cycle(&w.cycle) {
                    errors.push(format!("{c:?}: bad witness"));
                }
            }
            Err(e) => errors.push(e.to_string()),
        }
    }
    report(
        7,
        !configs.is_empty() && errors.is_empty(),
        format!("{} configurations, {} failed: {errors:?}", configs.len(), errors.len()),
    );
}

#[test]
fn criterion_08_rstar() {
    let t = Instant::now();
    let fano = fixtures::fano_pls();
    let brute = common::min_splittings(&fano);
    let mut ok = fano.rstar() == 8 && brute == 8;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut bad = 0;
    for _ in 0..200 {
        let p = common::random_pls(&mut rng, 8);
        let fixed = p.apply_splittings(&p.acyclifier()).unwrap();
        let good = (p.rstar() == 0) == p.is_acyclic()
            && fixed.is_acyclic()
            && fixed.num_components() == p.num_components()
            && p.acyclifier().len() == p.rstar();
        if !good {
            bad += 1;
        }
    }
    ok &= bad == 0 && within(t, Duration::from_secs(30));
    report(
        8,
        ok,
        format!("Fano r*={} brute force={brute}; 200 random spaces, {bad} bad; {:?}", fano.rstar(), t.elapsed()),
    );
}

#[test]
fn criterion_09_line_splitting_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut bad = Vec::new();
    let mut max_ratio = (0, 0);
    for trial in 0..500 {
        let width = rng.gen_range(2..=10);
        let row = common::random_row(&mut rng, width);
        let lam = rng.gen_range(1..=width);
        let mut pos: Vec<usize> = (0..width).collect();
        rand::seq::SliceRandom::shuffle(&mut pos[..], &mut rng);
        pos.truncate(lam);
        let out = impose_line(&row, &pos);
        if out.len() > max_ratio.0 {
            max_ratio = (out.len(), lam);
        }
        let want: HashSet<Vec<usize>> = common::set_of(
            row.expand(1 << 12)
                .unwrap()
                .into_iter()
                .filter(|b| common::satisfies(b, &pos))
                .collect(),
        );
        let mut union = HashSet::new();
        let mut total = 0;
        for r in &out {
            let members = r.expand(1 << 12).unwrap();
            total += members.len();
            union.extend(common::set_of(members));
        }
        let disjoint = total == union.len();
        if out.len() > lam + 2 || !disjoint || union != want {
            bad.push(trial);
        }
    }
    report(
        9,
        bad.is_empty(),
        format!("500 rows, largest split {} rows for a line of {}; bad trials {bad:?}", max_ratio.0, max_ratio.1),
    );
}

fn oracle_join_irreducibles(s: &SetSystem) -> Vec<Vec<usize>> {
    let family = s.closure_oracle();
    let mut out: Vec<Vec<usize>> = family
        .iter()
        .filter(|x| {
            if x.count_ones(..) == 0 {
                return false;
            }
            // join-irreducible: the union of the members strictly below is
            // strictly smaller
            let mut below = fixedbitset::FixedBitSet::with_capacity(s.width());
            for y in &family {
                if y.is_subset(x) && y != *x {
                    below.union_with(y);
                }
            }
            below != **x
        })
        .map(|x| x.ones().collect())
        .collect();
    out.sort_by_key(|v| (v.len(), v.clone()));
    out
}

#[test]
fn criterion_10_distributive_and_sigma_opt() {
    let s = io::parse_set_matrix(fixtures::EX8A_TABLE).unwrap();
    let ji: Vec<Vec<usize>> = s.distributive_ji().sets.iter().map(|x| x.ones().collect()).collect();
    let oracle_ji = oracle_join_irreducibles(&s);
    let (l, members) = s.distributive_lattice().unwrap();
    let family = s.closure_oracle();
    let names = family.iter().map(|x| s.format_set(x)).collect();
    let oracle = Lattice::from_order(names, |i, j| family[i].is_subset(&family[j])).unwrap();
    let iso = is_isomorphic(&l, &oracle, 200).unwrap() && members == family;
    let sigma = ImplicationSet::new(fixtures::sigma_opt_l1().into_iter().map(|(a, b)| {
        (
            a.into_iter().map(|x| x as usize).collect(),
            b.into_iter().map(|x| x as usize).collect(),
        )
    }));
    let ok = ji == oracle_ji && iso && sigma.size() == 47;
    report(
        10,
        ok,
        format!(
            "join-irreducibles match oracle={}, isomorphic={iso} ({} elements), s(Sigma_opt)={} (expected 47)",
            ji == oracle_ji,
            l.len(),
            sigma.size()
        ),
    );
}
