#![allow(dead_code)]

use std::collections::HashSet;

use modlat::pls::Splitting;
use modlat::wildcard::{Bits, Cell, Group, Row};
use modlat::{Pls, Poset};
use rand::seq::SliceRandom;
use rand::Rng;

/// Random poset on `1..=max_n` points and up to four lines of 2 to 5 points.
pub fn random_instance(rng: &mut impl Rng, max_n: usize) -> (Poset, Vec<Vec<usize>>) {
    let n = rng.gen_range(1..=max_n);
    let p = rng.gen_range(0.05..0.4);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                pairs.push((i, j));
            }
        }
    }
    let poset = Poset::from_relation(n, &pairs).unwrap();
    let mut lines = Vec::new();
    if n >= 2 {
        for _ in 0..rng.gen_range(0..=4) {
            let k = rng.gen_range(2..=n.min(5));
            let mut pts: Vec<usize> = (0..n).collect();
            pts.shuffle(rng);
            pts.truncate(k);
            pts.sort_unstable();
            lines.push(pts);
        }
    }
    (poset, lines)
}

/// Random partial linear space with at most `max_lines` lines.
pub fn random_pls(rng: &mut impl Rng, max_lines: usize) -> Pls {
    let n = rng.gen_range(2..=9);
    let mut lines: Vec<Vec<usize>> = Vec::new();
    for _ in 0..rng.gen_range(0..=max_lines) * 3 {
        if lines.len() == max_lines {
            break;
        }
        let k = rng.gen_range(2..=n.min(4));
        let mut pts: Vec<usize> = (0..n).collect();
        pts.shuffle(rng);
        pts.truncate(k);
        pts.sort_unstable();
        let ok = lines
            .iter()
            .all(|l| l.iter().filter(|p| pts.contains(p)).count() <= 1);
        if ok {
            lines.push(pts);
        }
    }
    Pls::new((0..n).collect(), lines).unwrap()
}

/// Fewest splittings that make `p` acyclic, by trying all subsets of
/// incidences in order of size.
pub fn min_splittings(p: &Pls) -> usize {
    let inc: Vec<Splitting> = p
        .lines()
        .iter()
        .enumerate()
        .flat_map(|(line, l)| l.iter().map(move |&point| Splitting { line, point }))
        .collect();
    (0..=inc.len())
        .find(|&k| any_acyclic(p, &inc, k, 0, &mut Vec::new()))
        .expect("splitting every incidence is acyclic")
}

fn any_acyclic(p: &Pls, inc: &[Splitting], k: usize, from: usize, chosen: &mut Vec<Splitting>) -> bool {
    if chosen.len() == k {
        return p.apply_splittings(chosen).unwrap().is_acyclic();
    }
    for i in from..inc.len() {
        chosen.push(inc[i]);
        let hit = any_acyclic(p, inc, k, i + 1, chosen);
        chosen.pop();
        if hit {
            return true;
        }
    }
    false
}

/// A random row whose groups occupy disjoint free positions.
pub fn random_row(rng: &mut impl Rng, width: usize) -> Row {
    let mut free: Vec<usize> = (0..width).collect();
    free.shuffle(rng);
    let mut groups = Vec::new();
    let mut used = HashSet::new();
    while rng.gen_bool(0.6) {
        let avail: Vec<usize> = free.iter().copied().filter(|p| !used.contains(p)).collect();
        if avail.len() < 2 {
            break;
        }
        let k = rng.gen_range(2..=avail.len().min(5));
        let mut m: Vec<usize> = avail[..k].to_vec();
        m.sort_unstable();
        let g = match rng.gen_range(0..5) {
            0 => {
                let cut = rng.gen_range(1..k);
                Group::Imp {
                    a: m[..cut].to_vec(),
                    b: m[cut..].to_vec(),
                }
            }
            1 => Group::D(m.clone()),
            2 => Group::Eps(m.clone()),
            3 => Group::G(m.clone()),
            _ => Group::Ell(m.clone()),
        };
        used.extend(m);
        groups.push(g);
    }
    let base = (0..width)
        .map(|p| {
            if used.contains(&p) {
                Cell::Free
            } else {
                match rng.gen_range(0..4) {
                    0 => Cell::Zero,
                    1 => Cell::One,
                    _ => Cell::Free,
                }
            }
        })
        .collect();
    Row::new(base, groups).unwrap()
}

pub fn satisfies(bits: &Bits, line: &[usize]) -> bool {
    let k = line.iter().filter(|&&p| bits.contains(p)).count();
    k <= 1 || k == line.len()
}

pub fn set_of(members: Vec<Bits>) -> HashSet<Vec<usize>> {
    members.into_iter().map(|b| b.ones().collect()).collect()
}
