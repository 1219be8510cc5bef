//! JSON, text and DOT formats for lattices, posets, lines, bases of lines,
//! point-line spaces, implications and set systems.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::SetSystem;
use crate::bol::{BaseOfLines, BolError};
use crate::lattice::{Lattice, LatticeError};
use crate::pls::{Pls, PlsError};
use crate::poset::{Poset, PosetError};
use crate::rebuild::{Implication, ImplicationSet};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    File {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Pls(#[from] PlsError),
    #[error(transparent)]
    Bol(#[from] BolError),
}

fn format_err(msg: impl Into<String>) -> IoError {
    IoError::Format(msg.into())
}

pub fn read_file(path: &str) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::File {
        path: path.to_string(),
        source,
    })
}

pub fn read_json(path: &str) -> Result<Value, IoError> {
    Ok(serde_json::from_str(&read_file(path)?)?)
}

/// `{"names": [...], "covers": [[lo, hi], ...]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
struct OrderJson {
    names: Vec<String>,
    covers: Vec<(usize, usize)>,
}

pub fn lattice_to_json(l: &Lattice) -> Value {
    json!({ "names": l.names(), "covers": l.covers() })
}

pub fn lattice_from_json(v: &Value) -> Result<Lattice, IoError> {
    let o: OrderJson = serde_json::from_value(v.clone())?;
    Ok(Lattice::build_named(o.names, &o.covers)?)
}

/// Same layout as lattices; `covers` may be any generating set of `lo < hi`
/// pairs.
pub fn poset_to_json(p: &Poset) -> Value {
    json!({ "names": p.names(), "covers": p.covers() })
}

pub fn poset_from_json(v: &Value) -> Result<Poset, IoError> {
    let o: OrderJson = serde_json::from_value(v.clone())?;
    Ok(Poset::from_relation_named(o.names, &o.covers)?)
}

/// A list of lines whose members are indices or names from `names`.
pub fn lines_from_json(v: &Value, names: &[String]) -> Result<Vec<Vec<usize>>, IoError> {
    let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let arr = v.as_array().ok_or_else(|| format_err("lines must be a JSON array"))?;
    arr.iter()
        .map(|line| {
            line.as_array()
                .ok_or_else(|| format_err("each line must be an array"))?
                .iter()
                .map(|m| match m {
                    Value::Number(n) => n
                        .as_u64()
                        .map(|i| i as usize)
                        .filter(|&i| i < names.len())
                        .ok_or_else(|| format_err(format!("bad point index {n}"))),
                    Value::String(s) => index
                        .get(s.as_str())
                        .copied()
                        .ok_or_else(|| format_err(format!("unknown point {s:?}"))),
                    other => Err(format_err(format!("bad line member {other}"))),
                })
                .collect()
        })
        .collect()
}

pub fn lines_to_json(lines: &[Vec<usize>], names: &[String]) -> Value {
    json!(lines
        .iter()
        .map(|l| l.iter().map(|&p| names[p].clone()).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

pub fn pls_to_json(p: &Pls) -> Value {
    serde_json::to_value(p).expect("serializable")
}

pub fn pls_from_json(v: &Value) -> Result<Pls, IoError> {
    #[derive(Deserialize)]
    struct Raw {
        points: Vec<usize>,
        lines: Vec<Vec<usize>>,
    }
    let r: Raw = serde_json::from_value(v.clone())?;
    Ok(Pls::new(r.points, r.lines)?)
}

/// `{"points", "lines", "tops", "bottoms"}` with element indices of `l`.
pub fn bol_to_json(b: &BaseOfLines) -> Value {
    json!({
        "points": b.points(),
        "lines": b.lines(),
        "tops": b.tops,
        "bottoms": b.bottoms,
    })
}

/// Reads the lines of a base; points, tops and bottoms are recomputed and
/// must agree with the file when present.
pub fn bol_from_json(l: &Lattice, v: &Value) -> Result<BaseOfLines, IoError> {
    let lines = lines_from_json(
        v.get("lines").ok_or_else(|| format_err("missing \"lines\""))?,
        l.names(),
    )?;
    let b = BaseOfLines::from_lines(l, lines)?;
    let check = |key: &str, want: &[usize]| -> Result<(), IoError> {
        if let Some(got) = v.get(key) {
            let got: Vec<usize> = serde_json::from_value(got.clone())?;
            if got != want {
                return Err(format_err(format!("\"{key}\" does not match the lattice")));
            }
        }
        Ok(())
    };
    check("points", b.points())?;
    check("tops", &b.tops)?;
    check("bottoms", &b.bottoms)?;
    Ok(b)
}

pub fn implications_to_json(s: &ImplicationSet) -> Value {
    serde_json::to_value(&s.implications).expect("serializable")
}

pub fn implications_from_json(v: &Value) -> Result<ImplicationSet, IoError> {
    let imps: Vec<Implication> = serde_json::from_value(v.clone())?;
    Ok(ImplicationSet::new(
        imps.into_iter().map(|i| (i.premise, i.conclusion)),
    ))
}

/// A 0/1 matrix with a header of universe names and one row per set,
/// optionally prefixed by `name =`.
pub fn parse_set_matrix(text: &str) -> Result<SetSystem, IoError> {
    let mut rows = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let universe: Vec<String> = rows
        .next()
        .ok_or_else(|| format_err("empty set matrix"))?
        .split_whitespace()
        .map(String::from)
        .collect();
    let mut names = Vec::new();
    let mut sets = Vec::new();
    for (k, row) in rows.enumerate() {
        let (name, bits) = match row.split_once('=') {
            Some((n, b)) => (n.trim().to_string(), b),
            None => (format!("X{}", k + 1), row),
        };
        let cells: Vec<&str> = bits.split_whitespace().collect();
        if cells.len() != universe.len() {
            return Err(format_err(format!(
                "row {name} has {} entries, expected {}",
                cells.len(),
                universe.len()
            )));
        }
        let mut set = FixedBitSet::with_capacity(universe.len());
        for (i, c) in cells.iter().enumerate() {
            match *c {
                "1" => set.insert(i),
                "0" => {}
                other => return Err(format_err(format!("row {name}: bad entry {other:?}"))),
            }
        }
        names.push(name);
        sets.push(set);
    }
    let mut s = SetSystem::new(universe, sets);
    s.set_names = names;
    Ok(s)
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Hasse diagram, one node per element, edges from lower to upper cover.
pub fn lattice_to_dot(l: &Lattice) -> String {
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for (i, n) in l.names().iter().enumerate() {
        out.push_str(&format!("  n{i} [label=\"{}\"];\n", dot_escape(n)));
    }
    for &(lo, hi) in l.covers() {
        out.push_str(&format!("  n{lo} -> n{hi} [arrowhead=none];\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bol::canonical_bol;
    use crate::fixtures;

    #[test]
    fn lattice_json_round_trip() {
        let l = fixtures::fig82a();
        let back = lattice_from_json(&lattice_to_json(&l)).unwrap();
        assert_eq!(back.names(), l.names());
        assert_eq!(back.covers(), l.covers());
    }

    #[test]
    fn poset_and_lines() {
        let p = fixtures::fig81_poset();
        let back = poset_from_json(&poset_to_json(&p)).unwrap();
        assert_eq!(back.covers(), p.covers());
        let lines = lines_to_json(&fixtures::fig81_lines(), p.names());
        assert_eq!(lines_from_json(&lines, p.names()).unwrap(), fixtures::fig81_lines());
        assert_eq!(lines_from_json(&json!([[0, "p2", 2]]), p.names()).unwrap(), vec![vec![0, 1, 2]]);
        assert!(lines_from_json(&json!([["p9"]]), p.names()).is_err());
    }

    #[test]
    fn bol_json_round_trip() {
        let l = fixtures::fig82a();
        let b = canonical_bol(&l).unwrap();
        assert_eq!(bol_from_json(&l, &bol_to_json(&b)).unwrap(), b);
        let mut v = bol_to_json(&b);
        v["tops"] = json!([0]);
        assert!(bol_from_json(&l, &v).is_err());
    }

    #[test]
    fn pls_and_implications() {
        let f = fixtures::fano_pls();
        assert_eq!(pls_from_json(&pls_to_json(&f)).unwrap(), f);
        let s = ImplicationSet::new(vec![(vec![1, 2], vec![3])]);
        let v = implications_to_json(&s);
        assert_eq!(v, json!([{"if": [1, 2], "then": [3]}]));
        assert_eq!(implications_from_json(&v).unwrap(), s);
    }

    #[test]
    fn set_matrix() {
        let s = parse_set_matrix(fixtures::EX8A_TABLE).unwrap();
        assert_eq!(s.universe.len(), 9);
        assert_eq!(s.sets.len(), 8);
        assert_eq!(s.set_names[7], "X8");
        assert_eq!(s.format_set(&s.sets[4]), "{a,b,e}");
        assert!(parse_set_matrix("a b\n1 0 1\n").is_err());
    }

    #[test]
    fn dot_edges_point_up() {
        let d = lattice_to_dot(&fixtures::m3());
        assert!(d.contains("n0 -> n1"));
        assert!(d.contains("n1 -> n4"));
        assert!(!d.contains("n4 -> n1"));
    }
}
