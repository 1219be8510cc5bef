//! The `modlat` command line.

use std::ffi::OsString;
use std::io::Write;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::algebra::{parse_factors, Group, DEFAULT_GROUP_CAP};
use crate::analysis::{self, ParamsOptions, ParamsReport};
use crate::bol::{all_bols_capped, canonical_bol, BaseOfLines, DEFAULT_BOL_CAP};
use crate::corpus::{corpus, verify_corpus, verify_lattice, LatticeReport, VerifyOptions};
use crate::io;
use crate::lattice::Lattice;
use crate::poset::Poset;
use crate::pls::Pls;
use crate::rebuild::{closed_ideals_lattice, roundtrip_check, sigma_nat};
use crate::wildcard::{
    bits_to_string, enumerate_with, format_rowset, rowset_from_json, rowset_to_json,
    DEFAULT_EXPAND_CAP,
};

#[derive(Parser, Debug)]
#[command(name = "modlat", version, about = "Bases of lines and closed-ideal enumeration for finite modular lattices")]
struct Cli {
    /// Worker threads for parallel steps (0 = all cores).
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
struct LatticeSource {
    /// Lattice JSON file.
    #[arg(long)]
    lattice: Option<String>,
    /// Invariant factors of a finite abelian group, e.g. "4,4".
    #[arg(long)]
    group: Option<String>,
    /// 0/1 set matrix; the lattice is the one generated by the sets.
    #[arg(long)]
    sets: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate the closed order ideals as wildcard rows.
    Enumerate {
        /// Poset JSON of the points.
        #[arg(long)]
        poset: Option<String>,
        /// Lines JSON (lists of point names or indices).
        #[arg(long)]
        lines: Option<String>,
        #[command(flatten)]
        source: LatticeSource,
        /// Print only the total count.
        #[arg(long)]
        count: bool,
        /// Print every member bitstring.
        #[arg(long)]
        expand: bool,
        /// Emit JSON.
        #[arg(long)]
        json: bool,
    },
    /// Build the lattice of closed ideals, or check a lattice round trip.
    Rebuild {
        /// Poset JSON of the points.
        #[arg(long)]
        poset: Option<String>,
        /// Lines JSON (lists of point names or indices).
        #[arg(long)]
        lines: Option<String>,
        /// Row-set JSON from `enumerate --json` (needs --poset).
        #[arg(long)]
        rows: Option<String>,
        #[command(flatten)]
        source: LatticeSource,
        /// Emit Graphviz DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Parameters and theorem verdicts of a lattice.
    Analyze {
        #[command(flatten)]
        source: LatticeSource,
        /// Sample all bases of lines for local acyclicity.
        #[arg(long)]
        all_bols: bool,
        /// Maximum number of bases of lines to enumerate.
        #[arg(long, default_value_t = DEFAULT_BOL_CAP)]
        cap: usize,
        /// Emit JSON.
        #[arg(long)]
        json: bool,
    },
    /// Run the verdict suite on the corpus or on one lattice.
    Verify {
        #[command(flatten)]
        source: LatticeSource,
        /// Seed for the random part of the corpus.
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        /// Maximum number of bases of lines to enumerate.
        #[arg(long, default_value_t = 200)]
        cap: usize,
        /// Emit JSON.
        #[arg(long)]
        json: bool,
    },
    /// Line-intervals and lines of a lattice.
    Bol {
        #[command(flatten)]
        source: LatticeSource,
        /// Use every base of lines, up to --cap.
        #[arg(long)]
        all_bols: bool,
        /// Maximum number of bases of lines to enumerate.
        #[arg(long, default_value_t = DEFAULT_BOL_CAP)]
        cap: usize,
        /// Print the natural implicational base instead.
        #[arg(long)]
        sigma: bool,
        /// Emit JSON.
        #[arg(long)]
        json: bool,
    },
    /// Localization of a base of lines to a covering a < b.
    Localize {
        #[command(flatten)]
        source: LatticeSource,
        /// Base-of-lines JSON; the canonical base by default.
        #[arg(long)]
        bol: Option<String>,
        /// Lower element (name or index).
        #[arg(long)]
        a: String,
        /// Upper element (name or index).
        #[arg(long)]
        b: String,
        /// Emit JSON.
        #[arg(long)]
        json: bool,
    },
    /// Subgroup lattice of a finite abelian group.
    SubgroupLattice {
        #[arg(long)]
        group: String,
        /// Print parameters and verdicts.
        #[arg(long)]
        analyze: bool,
        /// Emit Graphviz DOT.
        #[arg(long)]
        dot: bool,
        /// Print only the number of subgroups.
        #[arg(long)]
        count: bool,
    },
    /// Distributive lattice generated by a family of sets.
    Distributive {
        #[arg(long)]
        sets: String,
        /// Emit Graphviz DOT.
        #[arg(long)]
        dot: bool,
        /// Emit JSON.
        #[arg(long)]
        json: bool,
    },
    /// Cyclomatic number and acyclifier of a point-line space.
    Rstar {
        /// PLS JSON file.
        #[arg(long)]
        pls: Option<String>,
        #[command(flatten)]
        source: LatticeSource,
        /// Report r* over all bases of lines of the lattice.
        #[arg(long)]
        all_bols: bool,
        /// Maximum number of bases of lines to enumerate.
        #[arg(long, default_value_t = DEFAULT_BOL_CAP)]
        cap: usize,
        /// Emit JSON.
        #[arg(long)]
        json: bool,
    },
    /// Triangle configurations and their cyclic localizations.
    WitnessTriangle {
        #[command(flatten)]
        source: LatticeSource,
        /// Emit JSON.
        #[arg(long)]
        json: bool,
    },
}

/// Parses `args` (including the program name) and runs one subcommand.
/// Returns 0 on success, 1 on a failed verification, 2 on usage or input
/// errors.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let mut buf = Vec::new();
    let result = dispatch(&cli, &mut buf);
    let code = match result {
        Ok(ok) => {
            if ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            return 2;
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &buf) {
                let _ = writeln!(err, "error: {path}: {e}");
                return 2;
            }
        }
        None => {
            let _ = out.write_all(&buf);
        }
    }
    code
}

fn dispatch(cli: &Cli, out: &mut Vec<u8>) -> Result<bool> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .context("thread pool")?;
    pool.install(|| match &cli.command {
        Command::Enumerate {
            poset,
            lines,
            source,
            count,
            expand,
            json,
        } => cmd_enumerate(out, poset, lines, source, *count, *expand, *json, cli.jobs != 1),
        Command::Rebuild {
            poset,
            lines,
            rows,
            source,
            dot,
        } => cmd_rebuild(out, poset, lines, rows, source, *dot),
        Command::Analyze {
            source,
            all_bols,
            cap,
            json,
        } => cmd_analyze(out, source, *all_bols, *cap, *json),
        Command::Verify {
            source,
            seed,
            cap,
            json,
        } => cmd_verify(out, source, *seed, *cap, *json),
        Command::Bol {
            source,
            all_bols,
            cap,
            sigma,
            json,
        } => cmd_bol(out, source, *all_bols, *cap, *sigma, *json),
        Command::Localize {
            source,
            bol,
            a,
            b,
            json,
        } => cmd_localize(out, source, bol, a, b, *json),
        Command::SubgroupLattice {
            group,
            analyze,
            dot,
            count,
        } => cmd_subgroup(out, group, *analyze, *dot, *count),
        Command::Distributive { sets, dot, json } => cmd_distributive(out, sets, *dot, *json),
        Command::Rstar {
            pls,
            source,
            all_bols,
            cap,
            json,
        } => cmd_rstar(out, pls, source, *all_bols, *cap, *json),
        Command::WitnessTriangle { source, json } => cmd_witness(out, source, *json),
    })
}

fn emit_json(out: &mut Vec<u8>, v: &Value) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    out.push(b'\n');
    Ok(())
}

fn load_lattice(src: &LatticeSource) -> Result<Option<Lattice>> {
    let given = [&src.lattice, &src.group, &src.sets]
        .iter()
        .filter(|x| x.is_some())
        .count();
    if given > 1 {
        bail!("give only one of --lattice, --group, --sets");
    }
    if let Some(path) = &src.lattice {
        return Ok(Some(io::lattice_from_json(&io::read_json(path)?)?));
    }
    if let Some(g) = &src.group {
        let factors = parse_factors(g).map_err(|e| anyhow!(e))?;
        return Ok(Some(Group::new(&factors, DEFAULT_GROUP_CAP)?.subgroup_lattice()?.0));
    }
    if let Some(path) = &src.sets {
        let s = io::parse_set_matrix(&io::read_file(path)?)?;
        return Ok(Some(s.distributive_lattice()?.0));
    }
    Ok(None)
}

fn require_lattice(src: &LatticeSource) -> Result<Lattice> {
    load_lattice(src)?.ok_or_else(|| anyhow!("one of --lattice, --group, --sets is required"))
}

/// Poset and lines either from files or from the canonical base of a lattice.
fn load_enumeration_input(
    poset: &Option<String>,
    lines: &Option<String>,
    source: &LatticeSource,
) -> Result<(Poset, Vec<Vec<usize>>)> {
    if let Some(l) = load_lattice(source)? {
        if poset.is_some() || lines.is_some() {
            bail!("--poset/--lines cannot be combined with a lattice source");
        }
        if let Some(g) = &source.group {
            let factors = parse_factors(g).map_err(|e| anyhow!(e))?;
            let input = Group::new(&factors, DEFAULT_GROUP_CAP)?.enumeration_input();
            return Ok((input.poset, input.lines));
        }
        let b = canonical_bol(&l)?;
        return Ok((b.point_poset(&l), b.lines_as_positions()));
    }
    let path = poset
        .as_ref()
        .ok_or_else(|| anyhow!("--poset (or a lattice source) is required"))?;
    let p = io::poset_from_json(&io::read_json(path)?)?;
    let lines = match lines {
        Some(path) => io::lines_from_json(&io::read_json(path)?, p.names())?,
        None => Vec::new(),
    };
    Ok((p, lines))
}

#[allow(clippy::too_many_arguments)]
fn cmd_enumerate(
    out: &mut Vec<u8>,
    poset: &Option<String>,
    lines: &Option<String>,
    source: &LatticeSource,
    count: bool,
    expand: bool,
    json: bool,
    parallel: bool,
) -> Result<bool> {
    let (p, lines) = load_enumeration_input(poset, lines, source)?;
    let rows = enumerate_with(&p, &lines, parallel)?;
    if count {
        writeln!(out, "{}", rows.count())?;
    } else if expand {
        for m in rows.expand(DEFAULT_EXPAND_CAP)? {
            writeln!(out, "{}", bits_to_string(&m, p.len()))?;
        }
    } else if json {
        emit_json(out, &rowset_to_json(&rows))?;
    } else {
        writeln!(out, "points: {}", p.names().join(" "))?;
        write!(out, "{}", format_rowset(&rows))?;
        writeln!(out, "total: {}", rows.count())?;
    }
    Ok(true)
}

fn cmd_rebuild(
    out: &mut Vec<u8>,
    poset: &Option<String>,
    lines: &Option<String>,
    rows: &Option<String>,
    source: &LatticeSource,
    dot: bool,
) -> Result<bool> {
    if let Some(l) = load_lattice(source)? {
        let rt = roundtrip_check(&l)?;
        writeln!(
            out,
            "elements: {}\nrebuilt: {}\nisomorphic: {}\nideal map bijective: {}",
            l.len(),
            rt.rebuilt.len(),
            rt.isomorphic,
            rt.ideal_map_bijective
        )?;
        return Ok(rt.ok());
    }
    let (p, lines) = load_enumeration_input(poset, lines, source)?;
    let rowset = match rows {
        Some(path) => {
            let rs = rowset_from_json(&io::read_json(path)?)?;
            if rs.width != p.len() {
                bail!("row width {} does not match {} points", rs.width, p.len());
            }
            rs
        }
        None => enumerate_with(&p, &lines, false)?,
    };
    let members = rowset.expand(DEFAULT_EXPAND_CAP)?;
    let (l, _) = closed_ideals_lattice(&members, p.names())?;
    if dot {
        write!(out, "{}", io::lattice_to_dot(&l))?;
    } else {
        emit_json(out, &io::lattice_to_json(&l))?;
    }
    Ok(true)
}

fn params_table(p: &ParamsReport) -> String {
    let mut s = String::new();
    let la = match p.locally_acyclic {
        Some(v) => v.to_string(),
        None => "-".into(),
    };
    s.push_str(&format!(
        "j = {}\ndelta = {}\ns = {}\ni = {}\no = {}\nmu = {}\nr* = {}\nacyclic = {}\nlocally acyclic = {}{}\n",
        p.j,
        p.delta,
        p.s,
        p.i,
        p.o,
        p.mu,
        p.rstar_canonical,
        p.acyclic,
        la,
        if p.bols_truncated { " (base sample truncated)" } else { "" }
    ));
    for v in &p.verdicts {
        s.push_str(&format!("{v}\n"));
    }
    s
}

fn cmd_analyze(
    out: &mut Vec<u8>,
    source: &LatticeSource,
    all_bols: bool,
    cap: usize,
    json: bool,
) -> Result<bool> {
    let l = require_lattice(source)?;
    let p = analysis::params_with(
        &l,
        ParamsOptions {
            bol_cap: if all_bols { cap } else { 1 },
            local_acyclicity: true,
        },
    )?;
    if json {
        emit_json(out, &serde_json::to_value(&p)?)?;
    } else {
        write!(out, "{}", params_table(&p))?;
    }
    Ok(p.verdicts.iter().all(|v| !v.failed()))
}

fn report_text(r: &LatticeReport) -> String {
    let fails: Vec<String> = r.failures().map(|v| format!("    {v}")).collect();
    let status = if fails.is_empty() { "ok" } else { "FAIL" };
    let mut s = format!(
        "{status:4} {:<14} |L|={:<3} j={:<2} i={:<2} s={:<2} o={} acyclic={} r*={:?} mn-cycles={} clean={}\n",
        r.name,
        r.size,
        r.params.j,
        r.params.i,
        r.params.s,
        r.params.o,
        r.params.acyclic,
        r.rstar_values,
        r.mn_cycles,
        r.clean_cycles
    );
    for f in fails {
        s.push_str(&f);
        s.push('\n');
    }
    s
}

fn cmd_verify(
    out: &mut Vec<u8>,
    source: &LatticeSource,
    seed: u64,
    cap: usize,
    json: bool,
) -> Result<bool> {
    let opts = VerifyOptions {
        bol_cap: cap,
        ..VerifyOptions::default()
    };
    let results = match load_lattice(source)? {
        Some(l) => vec![verify_lattice("input", &l, &opts)],
        None => verify_corpus(&corpus(seed), &opts),
    };
    let mut ok = true;
    let mut reports = Vec::new();
    for r in results {
        match r {
            Ok(r) => {
                ok &= r.failures().next().is_none();
                reports.push(r);
            }
            Err(e) => {
                ok = false;
                writeln!(out, "ERROR {e}")?;
            }
        }
    }
    if json {
        emit_json(out, &serde_json::to_value(&reports)?)?;
    } else {
        for r in &reports {
            write!(out, "{}", report_text(r))?;
        }
        writeln!(out, "{} lattices, {}", reports.len(), if ok { "all checks pass" } else { "FAILURES" })?;
    }
    Ok(ok)
}

fn bol_text(l: &Lattice, b: &BaseOfLines) -> String {
    let mut s = String::new();
    for (k, line) in b.lines().iter().enumerate() {
        let pts: Vec<&str> = line.iter().map(|&p| l.name(p)).collect();
        s.push_str(&format!(
            "l{}: {{{}}}  top {}  bottom {}\n",
            k + 1,
            pts.join(", "),
            l.name(b.tops[k]),
            l.name(b.bottoms[k])
        ));
    }
    s
}

fn cmd_bol(
    out: &mut Vec<u8>,
    source: &LatticeSource,
    all_bols: bool,
    cap: usize,
    sigma: bool,
    json: bool,
) -> Result<bool> {
    let l = require_lattice(source)?;
    if sigma {
        let b = canonical_bol(&l)?;
        let s = sigma_nat(&l, b.lines());
        let named: Vec<Value> = s
            .implications
            .iter()
            .map(|i| {
                let names = |v: &[usize]| v.iter().map(|&p| l.name(p).to_string()).collect::<Vec<_>>();
                json!({"if": names(&i.premise), "then": names(&i.conclusion)})
            })
            .collect();
        if json {
            emit_json(out, &json!({"implications": io::implications_to_json(&s), "size": s.size()}))?;
        } else {
            for n in &named {
                writeln!(out, "{} -> {}", n["if"], n["then"])?;
            }
            writeln!(out, "implications: {}\ns(Sigma) = {}", s.len(), s.size())?;
        }
        return Ok(true);
    }
    let (bols, truncated) = if all_bols {
        all_bols_capped(&l, cap)?
    } else {
        (vec![canonical_bol(&l)?], false)
    };
    if json {
        let v: Vec<Value> = bols.iter().map(io::bol_to_json).collect();
        if all_bols {
            emit_json(out, &json!({"bols": v, "truncated": truncated}))?;
        } else {
            emit_json(out, &v[0])?;
        }
    } else {
        for (k, b) in bols.iter().enumerate() {
            if all_bols {
                writeln!(out, "base {}:", k + 1)?;
            }
            write!(out, "{}", bol_text(&l, b))?;
        }
        if all_bols {
            writeln!(out, "{} bases{}", bols.len(), if truncated { " (truncated)" } else { "" })?;
        }
    }
    Ok(true)
}

fn element(l: &Lattice, s: &str) -> Result<usize> {
    if let Some(i) = l.index_of(s) {
        return Ok(i);
    }
    match s.parse::<usize>() {
        Ok(i) if i < l.len() => Ok(i),
        _ => bail!("no element {s:?}"),
    }
}

fn pls_text(p: &Pls, name: impl Fn(usize) -> String) -> String {
    let names = |v: &[usize]| v.iter().map(|&x| name(x)).collect::<Vec<_>>().join(", ");
    let mut s = format!("points: {}\n", names(p.points()));
    for (k, l) in p.lines().iter().enumerate() {
        s.push_str(&format!("line {}: {{{}}}\n", k + 1, names(l)));
    }
    let mut comps = p.components();
    for c in &mut comps {
        c.sort_unstable();
    }
    comps.sort();
    for c in &comps {
        s.push_str(&format!("component: {{{}}}\n", names(c)));
    }
    match p.find_cycle() {
        Some(c) => {
            let lines: Vec<String> = c.lines.iter().map(|k| format!("line {}", k + 1)).collect();
            s.push_str(&format!("cycle: {} via {}\n", lines.join(" - "), names(&c.junctions)));
        }
        None => s.push_str("acyclic\n"),
    }
    s.push_str(&format!("r* = {}\n", p.rstar()));
    s
}

fn cmd_localize(
    out: &mut Vec<u8>,
    source: &LatticeSource,
    bol: &Option<String>,
    a: &str,
    b: &str,
    json: bool,
) -> Result<bool> {
    let l = require_lattice(source)?;
    let base = match bol {
        Some(path) => io::bol_from_json(&l, &io::read_json(path)?)?,
        None => canonical_bol(&l)?,
    };
    let (a, b) = (element(&l, a)?, element(&l, b)?);
    let loc = base.localize(&l, a, b)?;
    if json {
        emit_json(out, &io::pls_to_json(&loc))?;
    } else {
        write!(out, "{}", pls_text(&loc, |x| l.name(x).to_string()))?;
    }
    Ok(true)
}

fn cmd_subgroup(out: &mut Vec<u8>, group: &str, analyze: bool, dot: bool, count: bool) -> Result<bool> {
    let factors = parse_factors(group).map_err(|e| anyhow!(e))?;
    let g = Group::new(&factors, DEFAULT_GROUP_CAP)?;
    let (l, _) = g.subgroup_lattice()?;
    if count {
        writeln!(out, "{}", l.len())?;
    } else if analyze {
        let p = analysis::params(&l)?;
        writeln!(out, "subgroups = {}", l.len())?;
        write!(out, "{}", params_table(&p))?;
        return Ok(p.verdicts.iter().all(|v| !v.failed()));
    } else if dot {
        write!(out, "{}", io::lattice_to_dot(&l))?;
    } else {
        emit_json(out, &io::lattice_to_json(&l))?;
    }
    Ok(true)
}

fn cmd_distributive(out: &mut Vec<u8>, sets: &str, dot: bool, json: bool) -> Result<bool> {
    let s = io::parse_set_matrix(&io::read_file(sets)?)?;
    let (l, _) = s.distributive_lattice()?;
    if dot {
        write!(out, "{}", io::lattice_to_dot(&l))?;
    } else if json {
        emit_json(out, &io::lattice_to_json(&l))?;
    } else {
        let ji = s.distributive_ji();
        writeln!(out, "join-irreducibles ({}):", ji.sets.len())?;
        for x in &ji.sets {
            writeln!(out, "  {}", s.format_set(x))?;
        }
        if !ji.skipped.is_empty() {
            let names: Vec<&str> = ji.skipped.iter().map(|&v| s.universe[v].as_str()).collect();
            writeln!(out, "in no set: {}", names.join(" "))?;
        }
        writeln!(out, "elements: {}", l.len())?;
    }
    Ok(true)
}

fn cmd_rstar(
    out: &mut Vec<u8>,
    pls: &Option<String>,
    source: &LatticeSource,
    all_bols: bool,
    cap: usize,
    json: bool,
) -> Result<bool> {
    if let Some(path) = pls {
        let p = io::pls_from_json(&io::read_json(path)?)?;
        let acyclifier = p.acyclifier();
        if json {
            emit_json(
                out,
                &json!({
                    "rstar": p.rstar(),
                    "components": p.num_components(),
                    "acyclic": p.is_acyclic(),
                    "acyclifier": acyclifier,
                }),
            )?;
        } else {
            write!(out, "{}", pls_text(&p, |x| x.to_string()))?;
            for s in &acyclifier {
                writeln!(out, "split point {} off line {}", s.point, s.line + 1)?;
            }
        }
        return Ok(true);
    }
    let l = require_lattice(source)?;
    let (bols, truncated) = if all_bols {
        all_bols_capped(&l, cap)?
    } else {
        (vec![canonical_bol(&l)?], false)
    };
    let profile = analysis::rstar_profile(&bols);
    if json {
        emit_json(out, &json!({"rstar": profile, "bases": bols.len(), "truncated": truncated}))?;
    } else {
        for (r, n) in &profile {
            writeln!(out, "r* = {r}: {n} bases")?;
        }
        if truncated {
            writeln!(out, "(sample truncated at {cap})")?;
        }
    }
    Ok(true)
}

fn cmd_witness(out: &mut Vec<u8>, source: &LatticeSource, json: bool) -> Result<bool> {
    let l = require_lattice(source)?;
    let b = canonical_bol(&l)?;
    let configs = analysis::triangle_configurations(&b.pls);
    let mut ok = true;
    let mut rows = Vec::new();
    for c in &configs {
        match analysis::cyclic_localization_witness(&l, &b, c) {
            Ok(w) => {
                if json {
                    rows.push(json!({
                        "config": c,
                        "a": l.name(w.a),
                        "b": l.name(w.b),
                        "cycle_lines": w.cycle.lines.len(),
                    }));
                } else {
                    writeln!(
                        out,
                        "lines {:?}: s={} q={} r={} -> ({}, {}) cyclic, {} lines in cycle",
                        c.lines.map(|k| k + 1),
                        l.name(c.s),
                        l.name(c.q),
                        l.name(c.r),
                        l.name(w.a),
                        l.name(w.b),
                        w.cycle.lines.len()
                    )?;
                }
            }
            Err(e) => {
                ok = false;
                if json {
                    rows.push(json!({"config": c, "error": e.to_string()}));
                } else {
                    writeln!(out, "lines {:?}: {e}", c.lines.map(|k| k + 1))?;
                }
            }
        }
    }
    if json {
        emit_json(out, &json!({"configurations": rows}))?;
    } else {
        writeln!(out, "{} triangle configurations", configs.len())?;
    }
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("modlat").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_error_exit_code() {
        assert_eq!(run_capture(&["no-such-command"]).0, 2);
        assert_eq!(run_capture(&["analyze"]).0, 2);
        assert_eq!(run_capture(&["analyze", "--lattice", "/nonexistent.json"]).0, 2);
    }

    #[test]
    fn subgroup_count() {
        let (code, out, _) = run_capture(&["subgroup-lattice", "--group", "2,2,2", "--count"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "16");
    }
}
