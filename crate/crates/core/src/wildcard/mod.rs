//! Compressed enumeration of Λ-closed order ideals with wildcard rows.

mod impose;
mod row;
mod seed;
mod text;

use std::collections::HashMap;

use num_bigint::BigUint;
use rayon::prelude::*;
use thiserror::Error;

pub use impose::{impose_line, satisfies_line};
pub use row::{Bits, Cell, Group, GroupKind, Row};
pub use seed::seed_order_ideals;
pub use text::{format_row, format_rowset, rowset_from_json, rowset_to_json};

use crate::poset::Poset;

/// Default limit on the number of bitstrings materialized by expansion.
pub const DEFAULT_EXPAND_CAP: usize = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WildcardError {
    #[error("invalid row: {0}")]
    InvalidRow(String),
    #[error("expansion would exceed {cap} bitstrings")]
    ExpansionCapExceeded { cap: usize },
    #[error("rows {first} and {second} overlap, e.g. in {witness}")]
    OverlapFound {
        first: usize,
        second: usize,
        witness: String,
    },
    #[error("rows have different widths ({0} and {1})")]
    WidthMismatch(usize, usize),
    #[error("line {line} uses position {position} outside width {width}")]
    LineOutOfRange {
        line: usize,
        position: usize,
        width: usize,
    },
}

/// Rows over a common width, meant to be pairwise disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowSet {
    pub width: usize,
    pub rows: Vec<Row>,
}

/// Result of [`RowSet::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowSetReport {
    pub rows: usize,
    pub total: BigUint,
    /// True if disjointness was checked by expanding every row.
    pub by_expansion: bool,
}

pub fn bits_to_string(bits: &Bits, width: usize) -> String {
    (0..width).map(|i| if bits.contains(i) { '1' } else { '0' }).collect()
}

impl RowSet {
    pub fn new(width: usize, rows: Vec<Row>) -> Result<Self, WildcardError> {
        if let Some(r) = rows.iter().find(|r| r.width() != width) {
            return Err(WildcardError::WidthMismatch(width, r.width()));
        }
        Ok(RowSet { width, rows })
    }

    pub fn count(&self) -> BigUint {
        self.rows.iter().map(Row::count).sum()
    }

    pub fn contains(&self, bits: &Bits) -> bool {
        self.rows.iter().any(|r| r.contains(bits))
    }

    pub fn expand(&self, cap: usize) -> Result<Vec<Bits>, WildcardError> {
        if self.count() > BigUint::from(cap) {
            return Err(WildcardError::ExpansionCapExceeded { cap });
        }
        let mut out = Vec::new();
        for r in &self.rows {
            out.extend(r.expand(cap)?);
        }
        Ok(out)
    }

    /// Checks pairwise disjointness and reports the total. Expands when the
    /// total is at most `cap`, otherwise searches each pair of rows for a
    /// common bitstring.
    pub fn validate(&self, cap: usize) -> Result<RowSetReport, WildcardError> {
        let total = self.count();
        let by_expansion = total <= BigUint::from(cap);
        if by_expansion {
            let mut owner: HashMap<Bits, usize> = HashMap::new();
            for (i, r) in self.rows.iter().enumerate() {
                for b in r.expand(cap)? {
                    if let Some(&first) = owner.get(&b) {
                        return Err(WildcardError::OverlapFound {
                            first,
                            second: i,
                            witness: bits_to_string(&b, self.width),
                        });
                    }
                    owner.insert(b, i);
                }
            }
        } else {
            for i in 0..self.rows.len() {
                for j in i + 1..self.rows.len() {
                    if let Some(b) = common_member(&self.rows[i], &self.rows[j]) {
                        return Err(WildcardError::OverlapFound {
                            first: i,
                            second: j,
                            witness: bits_to_string(&b, self.width),
                        });
                    }
                }
            }
        }
        Ok(RowSetReport {
            rows: self.rows.len(),
            total,
            by_expansion,
        })
    }
}

/// Some bitstring denoted by both rows.
pub fn common_member(r1: &Row, r2: &Row) -> Option<Bits> {
    let (mut r1, mut r2) = (r1.clone(), r2.clone());
    loop {
        let f1 = r1.forced();
        let f2 = r2.forced();
        let before = (f1.len(), f2.len());
        r2 = r2.restrict(&f1)?;
        r1 = r1.restrict(&f2)?;
        if (r1.forced().len(), r2.forced().len()) == before {
            break;
        }
    }
    let open = r1.cells().iter().position(|c| !matches!(c, Cell::Zero | Cell::One));
    match open {
        None => {
            let mut bits = Bits::with_capacity(r1.width());
            for (p, v) in r1.forced() {
                bits.set(p, v);
            }
            Some(bits)
        }
        Some(p) => [true, false].into_iter().find_map(|v| {
            let a = r1.restrict(&[(p, v)])?;
            let b = r2.restrict(&[(p, v)])?;
            common_member(&a, &b)
        }),
    }
}

fn check_lines(width: usize, lines: &[Vec<usize>]) -> Result<(), WildcardError> {
    for (line, l) in lines.iter().enumerate() {
        if let Some(&position) = l.iter().find(|&&p| p >= width) {
            return Err(WildcardError::LineOutOfRange {
                line,
                position,
                width,
            });
        }
    }
    Ok(())
}

/// Processes one seed row with a last-in-first-out stack until every line
/// has been imposed.
fn drain(seed: Row, lines: &[Vec<usize>]) -> Vec<Row> {
    let mut finals = Vec::new();
    let mut stack = vec![seed];
    while let Some(row) = stack.pop() {
        let Some((&next, rest)) = row.pending.split_first() else {
            finals.push(row);
            continue;
        };
        let rest = rest.to_vec();
        let outs = impose_line(&row, &lines[next]);
        for mut r in outs.into_iter().rev() {
            r.pending = rest.clone();
            stack.push(r);
        }
    }
    finals
}

/// All down-sets `S` of `poset` such that every line meeting `S` in at least
/// two positions lies inside `S`. Lines are lists of positions.
pub fn enumerate(poset: &Poset, lines: &[Vec<usize>]) -> Result<RowSet, WildcardError> {
    enumerate_with(poset, lines, false)
}

/// As [`enumerate`]; with `parallel`, seed rows are processed concurrently.
/// The output is the same either way.
pub fn enumerate_with(
    poset: &Poset,
    lines: &[Vec<usize>],
    parallel: bool,
) -> Result<RowSet, WildcardError> {
    check_lines(poset.len(), lines)?;
    let pending: Vec<usize> = (0..lines.len()).collect();
    let seeds: Vec<Row> = seed_order_ideals(poset)
        .into_iter()
        .map(|r| r.with_pending(pending.clone()))
        .collect();
    let rows: Vec<Row> = if parallel {
        seeds
            .into_par_iter()
            .map(|s| drain(s, lines))
            .collect::<Vec<_>>()
            .concat()
    } else {
        seeds.into_iter().flat_map(|s| drain(s, lines)).collect()
    };
    RowSet::new(poset.len(), rows)
}

/// The same set by exhaustive filtering of all subsets; small ground sets
/// only.
pub fn brute_force_closed_ideals(poset: &Poset, lines: &[Vec<usize>]) -> Vec<Bits> {
    let n = poset.len();
    assert!(n < 31, "brute force limited to 30 points");
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        let mut s = Bits::with_capacity(n);
        for i in 0..n {
            if mask >> i & 1 == 1 {
                s.insert(i);
            }
        }
        if !poset.is_down_set(&s) {
            continue;
        }
        let closed = lines.iter().all(|l| {
            let k = l.iter().filter(|&&p| s.contains(p)).count();
            k <= 1 || k == l.len()
        });
        if closed {
            out.push(s);
        }
    }
    out
}
