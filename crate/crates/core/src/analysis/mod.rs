//! Numeric profile of a modular lattice and verdicts for the structural
//! theorems relating it to its bases of lines.

mod cycles;
mod triangle;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::bol::{all_bols_capped, canonical_bol, line_intervals, BaseOfLines, BolError};
use crate::lattice::{Lattice, LatticeError};
use crate::pls::Pls;

pub use cycles::{ccomparable, is_clean_cycle, mn_cycles, ssmaller, Direction, MnCycle};
pub use triangle::{
    cyclic_localization_witness, triangle_configurations, triangles, TriangleConfig,
    TriangleWitness,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Bol(#[from] BolError),
    #[error("element {0} is not an M_n-element")]
    NotAnMnElement(usize),
    #[error("claim violated: {0}")]
    ClaimViolated(String),
    #[error("more than {0} bases of lines")]
    CapExceeded(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

/// One checked statement with the numbers behind it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub check: String,
    pub status: Status,
    pub detail: String,
}

impl Verdict {
    pub fn new(check: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Verdict {
            check: check.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    pub fn not_applicable(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Verdict {
            check: check.into(),
            status: Status::NotApplicable,
            detail: detail.into(),
        }
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::NotApplicable => "n/a ",
        };
        write!(f, "[{tag}] {}: {}", self.check, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParamsReport {
    pub j: usize,
    pub delta: usize,
    pub s: usize,
    /// Projectivity classes of the quotients `(p_*, p)`; equals `s`.
    pub s_projectivity: usize,
    pub i: usize,
    pub o: usize,
    pub mu: usize,
    pub rstar_canonical: usize,
    pub acyclic: bool,
    pub locally_acyclic: Option<bool>,
    /// The base-of-lines sample behind `locally_acyclic` was cut off.
    pub bols_truncated: bool,
    pub bols_sampled: usize,
    pub verdicts: Vec<Verdict>,
}

/// Options for the base-of-lines sampling used by [`params_with`].
#[derive(Debug, Clone, Copy)]
pub struct ParamsOptions {
    pub bol_cap: usize,
    pub local_acyclicity: bool,
}

impl Default for ParamsOptions {
    fn default() -> Self {
        ParamsOptions {
            bol_cap: crate::bol::DEFAULT_BOL_CAP,
            local_acyclicity: true,
        }
    }
}

pub fn params(l: &Lattice) -> Result<ParamsReport, AnalysisError> {
    params_with(l, ParamsOptions::default())
}

/// Number of projectivity classes met by the quotients `(p_*, p)`.
pub fn ji_projectivity_classes(l: &Lattice) -> usize {
    let map = l.projectivity_class_map();
    let mut ids: Vec<usize> = l
        .join_irreducibles()
        .iter()
        .map(|j| map[&(j.lower_star, j.elem)])
        .collect();
    ids.sort_unstable();
    ids.dedup();
    ids.len()
}

pub fn params_with(l: &Lattice, opts: ParamsOptions) -> Result<ParamsReport, AnalysisError> {
    let intervals = line_intervals(l)?;
    let bol = canonical_bol(l)?;
    let i = intervals.len();
    let o = intervals.iter().map(|iv| iv.n() - 1).max().unwrap_or(1);
    let mu = intervals.iter().map(|iv| iv.n()).sum();
    let (locally_acyclic, bols_truncated, bols_sampled, sample) = if opts.local_acyclicity {
        let (bols, truncated) = all_bols_capped(l, opts.bol_cap)?;
        let la = bols
            .iter()
            .all(|b| localizations_acyclic(l, b).unwrap_or(false));
        (Some(la), truncated, bols.len(), bols)
    } else {
        (None, false, 0, Vec::new())
    };
    let mut report = ParamsReport {
        j: bol.points().len(),
        delta: l.height(),
        s: bol.pls.num_components(),
        s_projectivity: ji_projectivity_classes(l),
        i,
        o,
        mu,
        rstar_canonical: bol.pls.rstar(),
        acyclic: bol.pls.is_acyclic(),
        locally_acyclic,
        bols_truncated,
        bols_sampled,
        verdicts: Vec::new(),
    };
    let mut verdicts = vec![Verdict::new(
        "s: components = projectivity classes",
        report.s == report.s_projectivity,
        format!("{} components, {} classes", report.s, report.s_projectivity),
    )];
    verdicts.extend(check_thm92(&report, &sample));
    verdicts.extend(check_thm94(&report, &bol));
    for b in sample.iter().skip(1) {
        verdicts.push(check_bound11(&report, b));
    }
    report.verdicts = verdicts;
    Ok(report)
}

fn localizations_acyclic(l: &Lattice, b: &BaseOfLines) -> Result<bool, AnalysisError> {
    for &(lo, hi) in l.covers() {
        if !b.localize(l, lo, hi)?.is_acyclic() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether every localization of the selected bases is acyclic. With
/// `cap = None` only the canonical base is used; otherwise all bases, and
/// more than `cap` of them is an error unless a cyclic localization turns
/// up first.
pub fn is_locally_acyclic(l: &Lattice, cap: Option<usize>) -> Result<bool, AnalysisError> {
    match cap {
        None => localizations_acyclic(l, &canonical_bol(l)?),
        Some(cap) => {
            for b in crate::bol::all_bols(l, cap)? {
                match b {
                    Ok(b) => {
                        if !localizations_acyclic(l, &b)? {
                            return Ok(false);
                        }
                    }
                    Err(BolError::CapExceeded(c)) => return Err(AnalysisError::CapExceeded(c)),
                    Err(e) => return Err(e.into()),
                }
            }
            Ok(true)
        }
    }
}

/// `j ≤ μ − i + s`, with equality exactly for acyclic lattices; every
/// sampled base agrees on acyclicity.
pub fn check_thm92(p: &ParamsReport, sample: &[BaseOfLines]) -> Vec<Verdict> {
    let rhs = p.mu as i64 - p.i as i64 + p.s as i64;
    let j = p.j as i64;
    let mut v = vec![
        Verdict::new("9.2(a) j <= mu - i + s", j <= rhs, format!("{j} <= {rhs}")),
        Verdict::new(
            "9.2(b) acyclic <=> j = mu - i + s",
            p.acyclic == (j == rhs),
            format!("acyclic={}, j={j}, mu-i+s={rhs}", p.acyclic),
        ),
    ];
    if !sample.is_empty() {
        let agree = sample.iter().all(|b| b.pls.is_acyclic() == p.acyclic);
        v.push(Verdict::new(
            "9.2 all bases agree on acyclicity",
            agree,
            format!("{} bases sampled", sample.len()),
        ));
    }
    v
}

fn check_bound11(p: &ParamsReport, b: &BaseOfLines) -> Verdict {
    let (i, s, j, d) = (p.i as i64, p.s as i64, p.j as i64, p.delta as i64);
    let r = b.pls.rstar() as i64;
    let lower = 2 * i + s - j;
    if p.o <= 2 {
        let upper = 2 * i + 2 * s - 2 * d;
        Verdict::new(
            "(11) 2i+s-j <= r* <= 2i+2s-2delta",
            lower <= r && r <= upper,
            format!("{lower} <= {r} <= {upper}"),
        )
    } else {
        Verdict::new(
            "(11) 2i+s-j <= r* (upper bound needs o <= 2)",
            lower <= r,
            format!("{lower} <= {r}, o={}", p.o),
        )
    }
}

/// The clauses of the inequality theorem relating `i, j, δ, s, o` and `r*`.
pub fn check_thm94(p: &ParamsReport, b: &BaseOfLines) -> Vec<Verdict> {
    let (i, s, j, d) = (p.i as i64, p.s as i64, p.j as i64, p.delta as i64);
    let r = b.pls.rstar() as i64;
    let small_o = p.o <= 2;
    let mut v = vec![Verdict::new(
        "9.4(a) i >= delta - s, j >= 2delta - s",
        i >= d - s && j >= 2 * d - s,
        format!("i={i}, j={j}, delta={d}, s={s}"),
    )];
    if small_o {
        v.push(Verdict::new(
            "9.4(b) j >= 2i + s - r* >= 2delta - s",
            j >= 2 * i + s - r && 2 * i + s - r >= 2 * d - s,
            format!("{j} >= {} >= {}", 2 * i + s - r, 2 * d - s),
        ));
    } else {
        v.push(Verdict::not_applicable("9.4(b)", format!("o = {}", p.o)));
    }
    match p.locally_acyclic {
        Some(true) => {
            let mut ok = i == d - s + r && j >= i + d;
            let mut detail = format!("i={i}, delta-s+r*={}, j={j} >= i+delta={}", d - s + r, i + d);
            if small_o {
                ok &= j == i + d;
                detail.push_str(" (o <= 2: equality)");
            }
            if p.bols_truncated {
                detail.push_str(" [base sample truncated]");
            }
            v.push(Verdict::new("9.4(c) locally acyclic", ok, detail));
        }
        Some(false) => v.push(Verdict::not_applicable("9.4(c)", "not locally acyclic")),
        None => v.push(Verdict::not_applicable("9.4(c)", "local acyclicity not computed")),
    }
    if p.acyclic {
        let mut ok = i == d - s;
        let mut detail = format!("i={i}, delta-s={}", d - s);
        if small_o {
            ok &= j == 2 * d - s;
            detail.push_str(&format!(", j={j}, 2delta-s={}", 2 * d - s));
        }
        v.push(Verdict::new("9.4(d) acyclic", ok, detail));
    } else {
        v.push(Verdict::not_applicable("9.4(d)", "cyclic"));
    }
    v.push(check_bound11(p, b));
    v
}

/// Every line has pairwise joins equal to its top, pairwise `p_* + q_*`
/// equal to its bottom, and as many points as its interval has atoms; the
/// points of a line are pairwise perspective below the line-top.
pub fn check_line_invariants(l: &Lattice, b: &BaseOfLines) -> Vec<Verdict> {
    let mut bad_joins = 0;
    let mut bad_stars = 0;
    let mut bad_sizes = 0;
    let mut bad_persp = 0;
    for (k, line) in b.lines().iter().enumerate() {
        let (top, bottom) = (b.tops[k], b.bottoms[k]);
        if line.len() != b.intervals[k].n() {
            bad_sizes += 1;
        }
        for (x, &p) in line.iter().enumerate() {
            for &q in &line[x + 1..] {
                if l.join(p, q) != top {
                    bad_joins += 1;
                }
                let (ps, qs) = (l.lower_star(p).unwrap(), l.lower_star(q).unwrap());
                if l.join(ps, qs) != bottom {
                    bad_stars += 1;
                }
                let common = l.prime_quotients().any(|c| {
                    l.leq(bottom, c.lower)
                        && l.leq(c.upper, top)
                        && l.transposes_up((ps, p), (c.lower, c.upper))
                        && l.transposes_up((qs, q), (c.lower, c.upper))
                });
                if !common {
                    bad_persp += 1;
                }
            }
        }
    }
    vec![
        Verdict::new(
            "lines: pairwise joins are the line-top",
            bad_joins == 0,
            format!("{bad_joins} bad pairs"),
        ),
        Verdict::new(
            "lines: p_* + q_* is the line bottom",
            bad_stars == 0,
            format!("{bad_stars} bad pairs"),
        ),
        Verdict::new(
            "lines: |line| = n of its interval",
            bad_sizes == 0,
            format!("{bad_sizes} bad lines"),
        ),
        Verdict::new(
            "lines: points pairwise perspective",
            bad_persp == 0,
            format!("{bad_persp} pairs without a common upper transpose"),
        ),
    ]
}

/// Distinct join-irreducibles with a common upper transpose span a
/// line-interval `[p_* + q_*, p + q]` having `x0 + p`, `x0 + q` as atoms.
pub fn check_perspective_pairs(l: &Lattice) -> Verdict {
    let intervals: HashMap<usize, crate::bol::LineInterval> = crate::bol::line_intervals_unchecked(l)
        .into_iter()
        .map(|iv| (iv.top, iv))
        .collect();
    let jis = l.join_irreducibles();
    let quotients: Vec<_> = l.prime_quotients().collect();
    let mut checked = 0;
    let mut bad = Vec::new();
    for (x, p) in jis.iter().enumerate() {
        for q in &jis[x + 1..] {
            let perspective = quotients.iter().any(|c| {
                l.transposes_up((p.lower_star, p.elem), (c.lower, c.upper))
                    && l.transposes_up((q.lower_star, q.elem), (c.lower, c.upper))
            });
            if !perspective {
                continue;
            }
            checked += 1;
            let x0 = l.join(p.lower_star, q.lower_star);
            let top = l.join(p.elem, q.elem);
            let ok = intervals.get(&top).is_some_and(|iv| {
                iv.bottom == x0
                    && iv.atoms.contains(&l.join(x0, p.elem))
                    && iv.atoms.contains(&l.join(x0, q.elem))
            });
            if !ok {
                bad.push((p.elem, q.elem));
            }
        }
    }
    Verdict::new(
        "perspective pairs span line-intervals",
        bad.is_empty(),
        format!("{checked} perspective pairs, bad: {bad:?}"),
    )
}

/// For every `a` and incomparable `q, r ∈ J` with `r ∈ J(a, a + q)` some
/// `p ∈ J(a)` has `p + q = r + q`.
pub fn check_exchange_property(l: &Lattice) -> Verdict {
    let jis: Vec<usize> = l.join_irreducibles().iter().map(|j| j.elem).collect();
    let mut checked = 0;
    let mut bad = Vec::new();
    for a in 0..l.len() {
        let below: Vec<usize> = jis.iter().copied().filter(|&p| l.leq(p, a)).collect();
        for &q in &jis {
            let aq = l.join(a, q);
            for &r in &jis {
                if l.comparable(q, r) || !l.leq(r, aq) || l.leq(r, a) {
                    continue;
                }
                checked += 1;
                let target = l.join(r, q);
                if !below.iter().any(|&p| l.join(p, q) == target) {
                    bad.push((a, q, r));
                }
            }
        }
    }
    Verdict::new(
        "exchange: r in J(a, a+q) has p in J(a) with p+q = r+q",
        bad.is_empty(),
        format!("{checked} triples, bad: {:?}", &bad[..bad.len().min(5)]),
    )
}

/// Components of the base correspond to projectivity classes of the
/// quotients `(p_*, p)`.
pub fn check_components_vs_projectivity(l: &Lattice, b: &BaseOfLines) -> Verdict {
    let map = l.projectivity_class_map();
    let class_of =
        |p: usize| map[&(l.lower_star(p).expect("join-irreducible"), p)];
    let comps = b.pls.components();
    let mut comp_of = HashMap::new();
    for (c, comp) in comps.iter().enumerate() {
        for &p in comp {
            comp_of.insert(p, c);
        }
    }
    let pts = b.points();
    let mut bad = 0;
    for (x, &p) in pts.iter().enumerate() {
        for &q in &pts[x + 1..] {
            if (comp_of[&p] == comp_of[&q]) != (class_of(p) == class_of(q)) {
                bad += 1;
            }
        }
    }
    Verdict::new(
        "components = projectivity classes of (p_*, p)",
        bad == 0,
        format!("{} components, {bad} disagreeing pairs", comps.len()),
    )
}

/// Every localization of `b` is connected.
pub fn check_localizations_connected(l: &Lattice, b: &BaseOfLines) -> Result<Verdict, AnalysisError> {
    let mut bad = Vec::new();
    for &(lo, hi) in l.covers() {
        let loc = b.localize(l, lo, hi)?;
        if loc.num_points() > 0 && loc.num_components() != 1 {
            bad.push((lo, hi));
        }
    }
    Ok(Verdict::new(
        "localizations are connected",
        bad.is_empty(),
        format!("{} coverings, disconnected: {bad:?}", l.covers().len()),
    ))
}

/// For a connected base and coatoms `a`: `|Λ(a,1)| ≥ s_a` and
/// `j(a,1) ≥ s_a + 1`, where `s_a` counts the components of `B(a)`.
pub fn check_coatom_counts(l: &Lattice, b: &BaseOfLines) -> Result<Verdict, AnalysisError> {
    if b.pls.num_components() != 1 {
        return Ok(Verdict::not_applicable(
            "coatom localization counts",
            "base is not connected",
        ));
    }
    let top = l.top();
    let mut bad = Vec::new();
    let mut rows = Vec::new();
    for &a in l.lower_covers(top) {
        let s_a = b.induced(l, a).pls.num_components();
        let loc = b.localize(l, a, top)?;
        rows.push((a, loc.num_lines(), loc.num_points(), s_a));
        if loc.num_lines() < s_a || loc.num_points() < s_a + 1 {
            bad.push(a);
        }
    }
    Ok(Verdict::new(
        "coatom localization counts",
        bad.is_empty(),
        format!("(a, |lines|, j(a,1), s_a): {rows:?}"),
    ))
}

/// Line-tops of any three lines forming a cycle are not mutually
/// comparable.
pub fn check_triangle_tops(l: &Lattice, b: &BaseOfLines) -> Verdict {
    let tri = triangles(&b.pls);
    let bad: Vec<_> = tri
        .iter()
        .filter(|t| {
            let [x, y, z] = t.map(|k| b.tops[k]);
            l.comparable(x, y) && l.comparable(y, z) && l.comparable(x, z)
        })
        .collect();
    Verdict::new(
        "3-line cycles have incomparable tops",
        bad.is_empty(),
        format!("{} triangles", tri.len()),
    )
}

/// Observed `r*` over a sample of bases, for the open question whether it
/// depends on the base. Informational only.
pub fn rstar_profile(sample: &[BaseOfLines]) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for b in sample {
        *m.entry(b.pls.rstar()).or_insert(0) += 1;
    }
    m
}

/// Splits a base into the sub-spaces of its components.
pub fn component_spaces(p: &Pls) -> Vec<Pls> {
    p.components()
        .into_iter()
        .map(|comp| {
            let lines = p
                .lines()
                .iter()
                .filter(|l| comp.contains(&l[0]))
                .cloned()
                .collect();
            Pls::new(comp, lines).expect("sub-space")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn boolean_params() {
        let p = params(&fixtures::boolean(3)).unwrap();
        assert_eq!((p.j, p.delta, p.s, p.i, p.o, p.mu), (3, 3, 3, 0, 1, 0));
        assert!(p.acyclic);
        assert!(p.verdicts.iter().all(|v| !v.failed()), "{:?}", p.verdicts);
    }

    #[test]
    fn m3_params() {
        let p = params(&fixtures::m3()).unwrap();
        assert_eq!((p.j, p.delta, p.s, p.i, p.o, p.mu), (3, 2, 1, 1, 2, 3));
        assert!(p.acyclic);
        assert_eq!(p.locally_acyclic, Some(true));
        assert!(p.verdicts.iter().all(|v| !v.failed()), "{:?}", p.verdicts);
    }

    #[test]
    fn chain_is_locally_acyclic() {
        assert!(is_locally_acyclic(&fixtures::chain(4), None).unwrap());
        assert!(is_locally_acyclic(&fixtures::chain(4), Some(10)).unwrap());
    }

    #[test]
    fn property_checks_on_m3() {
        let l = fixtures::m3();
        let b = canonical_bol(&l).unwrap();
        assert!(check_line_invariants(&l, &b).iter().all(|v| !v.failed()));
        assert!(!check_perspective_pairs(&l).failed());
        assert!(!check_exchange_property(&l).failed());
        assert!(!check_components_vs_projectivity(&l, &b).failed());
        assert!(!check_localizations_connected(&l, &b).unwrap().failed());
        assert!(!check_coatom_counts(&l, &b).unwrap().failed());
    }
}
