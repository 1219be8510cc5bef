//! Cycles of `M_n`-elements under the strict-smaller relation, and the
//! cleanness test.

use std::collections::HashMap;

use serde::Serialize;

use super::AnalysisError;
use crate::bol::{line_intervals_unchecked, LineInterval};
use crate::lattice::Lattice;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `tops[i] <* tops[i + 1]`
    Up,
    /// `tops[i] >* tops[i + 1]`
    Down,
}

/// A cyclic sequence of `M_n`-elements; `directions[i]` relates `tops[i]`
/// to `tops[(i + 1) % k]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MnCycle {
    pub tops: Vec<usize>,
    pub directions: Vec<Direction>,
}

fn interval_map(l: &Lattice) -> HashMap<usize, LineInterval> {
    line_intervals_unchecked(l)
        .into_iter()
        .map(|iv| (iv.top, iv))
        .collect()
}

fn lookup(m: &HashMap<usize, LineInterval>, x: usize) -> Result<&LineInterval, AnalysisError> {
    m.get(&x).ok_or(AnalysisError::NotAnMnElement(x))
}

/// `x <* y`: `x < y` and `x ≰ y0`, both `M_n`-elements.
pub fn ssmaller(l: &Lattice, x: usize, y: usize) -> Result<bool, AnalysisError> {
    let m = interval_map(l);
    lookup(&m, x)?;
    let y0 = lookup(&m, y)?.bottom;
    Ok(l.lt(x, y) && !l.leq(x, y0))
}

fn ss(l: &Lattice, m: &HashMap<usize, LineInterval>, x: usize, y: usize) -> bool {
    l.lt(x, y) && !l.leq(x, m[&y].bottom)
}

/// `x <* y` or `y <* x`.
pub fn ccomparable(l: &Lattice, x: usize, y: usize) -> Result<bool, AnalysisError> {
    Ok(ssmaller(l, x, y)? || ssmaller(l, y, x)?)
}

/// Simple cycles of length `3..=maxlen` in the ccomparability graph of the
/// `M_n`-elements, one per rotation/reflection class, at most `limit`.
pub fn mn_cycles(l: &Lattice, maxlen: usize, limit: usize) -> Vec<MnCycle> {
    let m = interval_map(l);
    let mut tops: Vec<usize> = m.keys().copied().collect();
    tops.sort_unstable();
    let k = tops.len();
    let adj: Vec<Vec<usize>> = (0..k)
        .map(|i| {
            (0..k)
                .filter(|&j| {
                    j != i && (ss(l, &m, tops[i], tops[j]) || ss(l, &m, tops[j], tops[i]))
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for start in 0..k {
        let mut path = vec![start];
        let mut on = vec![false; k];
        on[start] = true;
        extend(&adj, start, &mut path, &mut on, maxlen, limit, &mut out);
        if out.len() >= limit {
            break;
        }
    }
    out.into_iter()
        .map(|p| {
            let t: Vec<usize> = p.iter().map(|&i| tops[i]).collect();
            let directions = (0..t.len())
                .map(|i| {
                    if ss(l, &m, t[i], t[(i + 1) % t.len()]) {
                        Direction::Up
                    } else {
                        Direction::Down
                    }
                })
                .collect();
            MnCycle {
                tops: t,
                directions,
            }
        })
        .collect()
}

fn extend(
    adj: &[Vec<usize>],
    start: usize,
    path: &mut Vec<usize>,
    on: &mut [bool],
    maxlen: usize,
    limit: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if out.len() >= limit {
        return;
    }
    let last = *path.last().unwrap();
    if path.len() >= 3 && path[1] < last && adj[last].contains(&start) {
        out.push(path.clone());
        if out.len() >= limit {
            return;
        }
    }
    if path.len() == maxlen {
        return;
    }
    for &next in &adj[last] {
        if next > start && !on[next] {
            on[next] = true;
            path.push(next);
            extend(adj, start, path, on, maxlen, limit, out);
            path.pop();
            on[next] = false;
        }
    }
}

/// A cycle is clean when it has no repeats and no consecutive triple
/// `v, u, z` is mutually comparable or shares a transposed atom of `u`:
/// for `v <* u >* z` no atom `(u0, u_j)` is an upper transpose of both some
/// `(v_i, v)` and some `(z_k, z)`; for `v >* u <* z` no `(u_j, u)` transposes
/// up to both some `(v0, v_i)` and some `(z0, z_k)`.
pub fn is_clean_cycle(l: &Lattice, cycle: &[usize]) -> Result<bool, AnalysisError> {
    let m = interval_map(l);
    for &x in cycle {
        lookup(&m, x)?;
    }
    let k = cycle.len();
    if k < 3 {
        return Ok(false);
    }
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != k {
        return Ok(false);
    }
    for i in 0..k {
        let (v, u, z) = (cycle[(i + k - 1) % k], cycle[i], cycle[(i + 1) % k]);
        let (vu, uv) = (ss(l, &m, v, u), ss(l, &m, u, v));
        let (zu, uz) = (ss(l, &m, z, u), ss(l, &m, u, z));
        if !(vu || uv) || !(zu || uz) {
            return Ok(false);
        }
        if l.comparable(v, z) {
            return Ok(false);
        }
        let (iu, iv, iz) = (&m[&u], &m[&v], &m[&z]);
        if vu && zu {
            let shared = iu.atoms.iter().any(|&uj| {
                let q = (iu.bottom, uj);
                iv.atoms.iter().any(|&vi| l.transposes_up((vi, v), q))
                    && iz.atoms.iter().any(|&zk| l.transposes_up((zk, z), q))
            });
            if shared {
                return Ok(false);
            }
        } else if uv && uz {
            let shared = iu.atoms.iter().any(|&uj| {
                let q = (uj, u);
                iv.atoms.iter().any(|&vi| l.transposes_up(q, (iv.bottom, vi)))
                    && iz.atoms.iter().any(|&zk| l.transposes_up(q, (iz.bottom, zk)))
            });
            if shared {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
