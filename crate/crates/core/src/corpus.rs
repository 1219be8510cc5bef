//! The verification corpus and the full verdict suite run over it.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Group, DEFAULT_GROUP_CAP};
use crate::analysis::{self, AnalysisError, ParamsOptions, ParamsReport, Verdict};
use crate::bol::{all_bols_capped, canonical_bol};
use crate::fixtures;
use crate::lattice::Lattice;
use crate::poset::Poset;
use crate::rebuild::{roundtrip_check, sigma_nat};
use crate::wildcard::{brute_force_closed_ideals, enumerate, Bits, DEFAULT_EXPAND_CAP};

/// Groups of the subgroup part of the corpus, by invariant factors.
pub const CORPUS_GROUPS: &[&[u64]] = &[&[2, 2, 2], &[4, 4], &[2, 4], &[8], &[3, 3], &[2, 2, 4]];

/// Larger groups added to the corpus for cycle coverage.
pub const EXTRA_GROUPS: &[&[u64]] = &[&[3, 3, 3], &[2, 2, 2, 2], &[2, 4, 4]];

pub struct CorpusEntry {
    pub name: String,
    pub lattice: Lattice,
}

fn entry(name: impl Into<String>, lattice: Lattice) -> CorpusEntry {
    CorpusEntry {
        name: name.into(),
        lattice,
    }
}

pub fn group_name(factors: &[u64]) -> String {
    factors
        .iter()
        .map(|f| format!("Z{f}"))
        .collect::<Vec<_>>()
        .join("x")
}

pub fn subgroup_lattice_of(factors: &[u64]) -> Lattice {
    Group::new(factors, DEFAULT_GROUP_CAP)
        .and_then(|g| g.subgroup_lattice())
        .expect("corpus group")
        .0
}

/// A random poset on `1..=max_points` points: `i < j` is a cover candidate
/// with probability 0.3 for `i < j` in index order.
pub fn random_poset(rng: &mut impl Rng, max_points: usize) -> Poset {
    let n = rng.gen_range(1..=max_points);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.3) {
                pairs.push((i, j));
            }
        }
    }
    Poset::from_relation(n, &pairs).expect("index order is acyclic")
}

/// Lattice of down-sets of `p`.
pub fn down_set_lattice(p: &Poset) -> Lattice {
    let n = p.len();
    let sets: Vec<Bits> = (0..1usize << n)
        .map(|m| {
            let mut b = Bits::with_capacity(n);
            for i in 0..n {
                b.set(i, m >> i & 1 == 1);
            }
            b
        })
        .filter(|b| p.is_down_set(b))
        .collect();
    let names = sets
        .iter()
        .map(|s| format!("{{{}}}", s.ones().map(|i| i.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    Lattice::from_order(names, |i, j| sets[i].is_subset(&sets[j])).expect("down-sets form a lattice")
}

/// The default corpus: corpus groups, `M_3`, `M_4`, Boolean `2^3`, chains,
/// the 13-element example lattice, and 20 random distributive lattices.
pub fn corpus(seed: u64) -> Vec<CorpusEntry> {
    let mut out: Vec<CorpusEntry> = CORPUS_GROUPS
        .iter()
        .map(|f| entry(group_name(f), subgroup_lattice_of(f)))
        .collect();
    out.extend(
        EXTRA_GROUPS
            .iter()
            .map(|f| entry(group_name(f), subgroup_lattice_of(f))),
    );
    out.push(entry("M3", fixtures::m3()));
    out.push(entry("M4", fixtures::mn(4)));
    out.push(entry("2^3", fixtures::boolean(3)));
    for k in 1..=4 {
        out.push(entry(format!("chain{k}"), fixtures::chain(k)));
    }
    out.push(entry("fig82a", fixtures::fig82a()));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..20 {
        let p = random_poset(&mut rng, 8);
        out.push(entry(format!("dist{k}"), down_set_lattice(&p)));
    }
    out
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub bol_cap: usize,
    pub cycle_maxlen: usize,
    pub cycle_limit: usize,
    /// Largest point count for the brute-force enumeration cross-checks.
    pub brute_force_width: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            bol_cap: 200,
            cycle_maxlen: 8,
            cycle_limit: 2000,
            brute_force_width: 14,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeReport {
    pub name: String,
    pub size: usize,
    pub params: ParamsReport,
    pub verdicts: Vec<Verdict>,
    /// Observed `r*` value → number of sampled bases.
    pub rstar_values: BTreeMap<usize, usize>,
    pub mn_cycles: usize,
    pub clean_cycles: usize,
    pub millis: u128,
}

impl LatticeReport {
    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.params.verdicts.iter().chain(&self.verdicts).filter(|v| v.failed())
    }
}

fn members_as_sets(members: &[Bits]) -> BTreeSet<Vec<usize>> {
    members.iter().map(|b| b.ones().collect()).collect()
}

fn enumeration_verdicts(l: &Lattice, opts: &VerifyOptions) -> Vec<Verdict> {
    let mut v = Vec::new();
    match roundtrip_check(l) {
        Ok(rt) => v.push(Verdict::new(
            "rebuild: round trip",
            rt.ok(),
            format!(
                "isomorphic={}, ideal map bijective={}",
                rt.isomorphic, rt.ideal_map_bijective
            ),
        )),
        Err(e) => v.push(Verdict::new("rebuild: round trip", false, e.to_string())),
    }
    let Ok(bol) = canonical_bol(l) else {
        return v;
    };
    let poset = bol.point_poset(l);
    let lines = bol.lines_as_positions();
    let rows = match enumerate(&poset, &lines) {
        Ok(r) => r,
        Err(e) => {
            v.push(Verdict::new("enumerate", false, e.to_string()));
            return v;
        }
    };
    let count = rows.count();
    v.push(Verdict::new(
        "enumerate: count = |L|",
        count == l.len().into(),
        format!("{count} vs {}", l.len()),
    ));
    if poset.len() <= opts.brute_force_width {
        let brute = brute_force_closed_ideals(&poset, &lines);
        let got = rows.expand(DEFAULT_EXPAND_CAP).map(|m| members_as_sets(&m));
        v.push(Verdict::new(
            "enumerate = brute force",
            got.as_ref().ok() == Some(&members_as_sets(&brute)),
            format!("{} closed ideals", brute.len()),
        ));
        let pts = bol.points();
        let sigma = sigma_nat(l, bol.lines());
        let closed: BTreeSet<Vec<usize>> = (0..1usize << pts.len())
            .filter_map(|m| {
                let x: BTreeSet<usize> =
                    (0..pts.len()).filter(|i| m >> i & 1 == 1).map(|i| pts[i]).collect();
                sigma.is_closed(&x).then(|| {
                    (0..pts.len()).filter(|i| m >> i & 1 == 1).collect()
                })
            })
            .collect();
        v.push(Verdict::new(
            "natural implications: closed sets = closed ideals",
            closed == members_as_sets(&brute),
            format!("{} implications, size {}", sigma.len(), sigma.size()),
        ));
    }
    v
}

/// Runs every check on one lattice.
pub fn verify_lattice(
    name: &str,
    l: &Lattice,
    opts: &VerifyOptions,
) -> Result<LatticeReport, AnalysisError> {
    let start = Instant::now();
    l.require_modular()?;
    let params = analysis::params_with(
        l,
        ParamsOptions {
            bol_cap: opts.bol_cap,
            local_acyclicity: true,
        },
    )?;
    let (sample, truncated) = all_bols_capped(l, opts.bol_cap)?;
    let canonical = canonical_bol(l)?;
    let mut verdicts = Vec::new();

    verdicts.extend(analysis::check_line_invariants(l, &canonical));
    verdicts.push(analysis::check_perspective_pairs(l));
    verdicts.push(analysis::check_exchange_property(l));
    let mut comp_bad = 0;
    let mut conn_bad = 0;
    let mut tri_bad = 0;
    for b in &sample {
        comp_bad += analysis::check_components_vs_projectivity(l, b).failed() as usize;
        conn_bad += analysis::check_localizations_connected(l, b)?.failed() as usize;
        tri_bad += analysis::check_triangle_tops(l, b).failed() as usize;
    }
    let suffix = if truncated { " (sample truncated)" } else { "" };
    verdicts.push(Verdict::new(
        "components = projectivity classes, all bases",
        comp_bad == 0,
        format!("{comp_bad} of {} bases disagree{suffix}", sample.len()),
    ));
    verdicts.push(Verdict::new(
        "localizations connected, all bases",
        conn_bad == 0,
        format!("{conn_bad} of {} bases fail{suffix}", sample.len()),
    ));
    verdicts.push(Verdict::new(
        "3-line cycles have incomparable tops, all bases",
        tri_bad == 0,
        format!("{tri_bad} of {} bases fail{suffix}", sample.len()),
    ));
    verdicts.push(analysis::check_coatom_counts(l, &canonical)?);

    let configs = analysis::triangle_configurations(&canonical.pls);
    let witness_errors: Vec<String> = configs
        .iter()
        .filter_map(|c| analysis::cyclic_localization_witness(l, &canonical, c).err())
        .map(|e| e.to_string())
        .collect();
    if configs.is_empty() {
        verdicts.push(Verdict::not_applicable("triangle witnesses", "no triangle configuration"));
    } else {
        verdicts.push(Verdict::new(
            "triangle witnesses",
            witness_errors.is_empty(),
            format!("{} configurations, errors: {witness_errors:?}", configs.len()),
        ));
    }

    let cycles = analysis::mn_cycles(l, opts.cycle_maxlen, opts.cycle_limit);
    let three_bad = cycles
        .iter()
        .filter(|c| c.tops.len() == 3)
        .filter(|c| {
            let t = &c.tops;
            !(l.comparable(t[0], t[1]) && l.comparable(t[1], t[2]) && l.comparable(t[0], t[2]))
        })
        .count();
    verdicts.push(Verdict::new(
        "3-element M_n-cycles are mutually comparable",
        three_bad == 0,
        format!("{} M_n-cycles, {three_bad} bad", cycles.len()),
    ));
    let mut clean = 0;
    for c in &cycles {
        if analysis::is_clean_cycle(l, &c.tops)? {
            clean += 1;
        }
    }
    if clean == 0 {
        verdicts.push(Verdict::not_applicable(
            "clean cycle implies cyclic base",
            "no clean M_n-cycle (untriggered)",
        ));
    } else {
        verdicts.push(Verdict::new(
            "clean cycle implies cyclic base",
            !params.acyclic,
            format!("{clean} clean cycles, acyclic={}", params.acyclic),
        ));
    }

    verdicts.extend(enumeration_verdicts(l, opts));

    Ok(LatticeReport {
        name: name.to_string(),
        size: l.len(),
        rstar_values: analysis::rstar_profile(&sample),
        params,
        verdicts,
        mn_cycles: cycles.len(),
        clean_cycles: clean,
        millis: start.elapsed().as_millis(),
    })
}

/// Runs [`verify_lattice`] on every entry, in parallel, in corpus order.
pub fn verify_corpus(
    entries: &[CorpusEntry],
    opts: &VerifyOptions,
) -> Vec<Result<LatticeReport, AnalysisError>> {
    use rayon::prelude::*;
    entries
        .par_iter()
        .map(|e| verify_lattice(&e.name, &e.lattice, opts))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_deterministic_and_modular() {
        let a = corpus(7);
        let b = corpus(7);
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.lattice.covers(), y.lattice.covers());
            assert!(x.lattice.is_modular(), "{}", x.name);
        }
    }

    #[test]
    fn z2_cubed_verifies() {
        let l = subgroup_lattice_of(&[2, 2, 2]);
        let r = verify_lattice("Z2x2x2", &l, &VerifyOptions::default()).unwrap();
        let bad: Vec<_> = r.failures().collect();
        assert!(bad.is_empty(), "{bad:#?}");
        assert_eq!((r.params.j, r.params.i, r.params.mu), (7, 7, 21));
    }
}
