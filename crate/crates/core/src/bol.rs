//! Line-intervals, lines and bases of lines of a modular lattice, together
//! with induced bases `B(a)` and localizations `B(a, b)`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::hash::Hash;

use thiserror::Error;

use crate::lattice::{Lattice, LatticeError};
use crate::pls::{Pls, PlsError};
use crate::poset::Poset;

/// Default number of bases produced by [`all_bols`] before truncation.
pub const DEFAULT_BOL_CAP: usize = 1000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BolError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Pls(#[from] PlsError),
    #[error("atom {atom} of the interval below {top} has no join-irreducible choice")]
    EmptyChoice { top: usize, atom: usize },
    #[error("chooser picked {picked}, which is not in J(x0, {atom})")]
    BadChoice { atom: usize, picked: usize },
    #[error("{a} is not covered by {b}")]
    NotACovering { a: usize, b: usize },
    #[error("more than {0} bases of lines")]
    CapExceeded(usize),
    #[error("line {0:?} does not match a line-interval")]
    NotALine(Vec<usize>),
    #[error("no line given for the interval below {0}")]
    MissingLine(usize),
}

/// A length-two interval `[bottom, top] ≅ M_n` containing all lower covers of
/// `top`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineInterval {
    pub bottom: usize,
    pub top: usize,
    pub atoms: Vec<usize>,
}

impl LineInterval {
    pub fn n(&self) -> usize {
        self.atoms.len()
    }
}

/// One line per line-interval, over the join-irreducibles of a lattice.
/// Points and line members are element indices of that lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseOfLines {
    pub pls: Pls,
    pub tops: Vec<usize>,
    pub bottoms: Vec<usize>,
    pub intervals: Vec<LineInterval>,
}

/// All line-intervals, ordered by top element.
pub fn line_intervals(l: &Lattice) -> Result<Vec<LineInterval>, BolError> {
    l.require_modular()?;
    Ok(line_intervals_unchecked(l))
}

pub(crate) fn line_intervals_unchecked(l: &Lattice) -> Vec<LineInterval> {
    let mut out = Vec::new();
    for x in 0..l.len() {
        let atoms = l.lower_covers(x);
        if atoms.len() < 3 {
            continue;
        }
        let x0 = l.meet_all(atoms.iter().copied());
        if l.rank(x) != l.rank(x0) + 2 {
            continue;
        }
        let strictly_between = (0..l.len()).filter(|&z| l.lt(x0, z) && l.lt(z, x));
        if strictly_between.clone().count() != atoms.len() {
            continue;
        }
        let mut atoms = atoms.to_vec();
        atoms.sort_unstable();
        out.push(LineInterval {
            bottom: x0,
            top: x,
            atoms,
        });
    }
    out
}

/// Candidate join-irreducibles for each atom: `J(x0, x_i)`.
pub fn atom_choices(l: &Lattice, interval: &LineInterval) -> Result<Vec<Vec<usize>>, BolError> {
    interval
        .atoms
        .iter()
        .map(|&xi| {
            let c = l.ji_between(interval.bottom, xi);
            if c.is_empty() {
                Err(BolError::EmptyChoice {
                    top: interval.top,
                    atom: xi,
                })
            } else {
                Ok(c)
            }
        })
        .collect()
}

/// The line obtained by choosing, for every atom `x_i`, one element of
/// `J(x0, x_i)`. `chooser` receives the atom and its candidates.
pub fn extract_line(
    l: &Lattice,
    interval: &LineInterval,
    chooser: impl Fn(usize, &[usize]) -> usize,
) -> Result<Vec<usize>, BolError> {
    let choices = atom_choices(l, interval)?;
    let mut line = Vec::with_capacity(choices.len());
    for (&xi, cands) in interval.atoms.iter().zip(&choices) {
        let p = chooser(xi, cands);
        if !cands.contains(&p) {
            return Err(BolError::BadChoice { atom: xi, picked: p });
        }
        debug_assert_eq!(l.join(interval.bottom, p), xi);
        line.push(p);
    }
    line.sort_unstable();
    Ok(line)
}

fn smallest(_: usize, cands: &[usize]) -> usize {
    cands[0]
}

impl BaseOfLines {
    pub(crate) fn assemble(
        l: &Lattice,
        intervals: Vec<LineInterval>,
        lines: Vec<Vec<usize>>,
    ) -> Result<Self, BolError> {
        let points = l.join_irreducibles().iter().map(|j| j.elem).collect();
        let pls = Pls::new(points, lines)?;
        Ok(BaseOfLines {
            pls,
            tops: intervals.iter().map(|iv| iv.top).collect(),
            bottoms: intervals.iter().map(|iv| iv.bottom).collect(),
            intervals,
        })
    }

    /// A base from explicitly chosen lines, one per line-interval, in any
    /// order. Every line must hold one point of `J(x0, x_i)` per atom.
    pub fn from_lines(l: &Lattice, lines: Vec<Vec<usize>>) -> Result<Self, BolError> {
        let intervals = line_intervals(l)?;
        let mut slot: Vec<Option<Vec<usize>>> = vec![None; intervals.len()];
        let by_top: HashMap<usize, usize> =
            intervals.iter().enumerate().map(|(k, iv)| (iv.top, k)).collect();
        for mut line in lines {
            line.sort_unstable();
            let top = l.join_all(line.iter().copied());
            let k = match by_top.get(&top) {
                Some(&k) if slot[k].is_none() => k,
                _ => return Err(BolError::NotALine(line)),
            };
            let iv = &intervals[k];
            let mut hit: Vec<usize> = line
                .iter()
                .map(|&p| l.join(iv.bottom, p))
                .filter(|x| iv.atoms.contains(x))
                .collect();
            hit.sort_unstable();
            hit.dedup();
            let in_range = line
                .iter()
                .all(|&p| l.is_join_irreducible(p) && !l.leq(p, iv.bottom));
            if !in_range || hit.len() != iv.n() || line.len() != iv.n() {
                return Err(BolError::NotALine(line));
            }
            slot[k] = Some(line);
        }
        let lines = slot
            .into_iter()
            .zip(&intervals)
            .map(|(s, iv)| s.ok_or(BolError::MissingLine(iv.top)))
            .collect::<Result<Vec<_>, _>>()?;
        BaseOfLines::assemble(l, intervals, lines)
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        self.pls.lines()
    }

    pub fn points(&self) -> &[usize] {
        self.pls.points()
    }

    /// The order of `L` restricted to the points, named after the elements.
    pub fn point_poset(&self, l: &Lattice) -> Poset {
        let pts = self.points();
        Poset::from_order(pts.len(), |i, j| l.leq(pts[i], pts[j]))
            .with_names(pts.iter().map(|&p| l.name(p).to_string()).collect())
    }

    /// Lines as positions into [`Self::points`].
    pub fn lines_as_positions(&self) -> Vec<Vec<usize>> {
        let pos: HashMap<usize, usize> =
            self.points().iter().enumerate().map(|(i, &p)| (p, i)).collect();
        self.lines()
            .iter()
            .map(|ln| ln.iter().map(|p| pos[p]).collect())
            .collect()
    }

    /// `B(a) = (J(a), {ℓ : ℓ̄ ≤ a})`.
    pub fn induced(&self, l: &Lattice, a: usize) -> BaseOfLines {
        let points: Vec<usize> = self.points().iter().copied().filter(|&p| l.leq(p, a)).collect();
        let keep: Vec<usize> = (0..self.tops.len()).filter(|&i| l.leq(self.tops[i], a)).collect();
        let lines = keep.iter().map(|&i| self.lines()[i].clone()).collect();
        BaseOfLines {
            pls: Pls::new(points, lines).expect("sub-family of a partial linear space"),
            tops: keep.iter().map(|&i| self.tops[i]).collect(),
            bottoms: keep.iter().map(|&i| self.bottoms[i]).collect(),
            intervals: keep.iter().map(|&i| self.intervals[i].clone()).collect(),
        }
    }

    /// The localization to the covering `a ≺ b`: points `J(a, b)`, lines
    /// `ℓ ∩ J(a, b)` for `ℓ̄ ≤ b`, `ℓ̄ ≰ a`, without duplicates.
    pub fn localize(&self, l: &Lattice, a: usize, b: usize) -> Result<Pls, BolError> {
        if !l.is_cover(a, b) {
            return Err(BolError::NotACovering { a, b });
        }
        let points = l.ji_between(a, b);
        let inside: HashSet<usize> = points.iter().copied().collect();
        let mut lines: Vec<Vec<usize>> = Vec::new();
        let mut seen = BTreeSet::new();
        for (line, &top) in self.lines().iter().zip(&self.tops) {
            if !l.leq(top, b) || l.leq(top, a) {
                continue;
            }
            let restricted: Vec<usize> =
                line.iter().copied().filter(|p| inside.contains(p)).collect();
            debug_assert_eq!(restricted.len() + 1, line.len());
            if restricted.len() >= 2 && seen.insert(restricted.clone()) {
                lines.push(restricted);
            }
        }
        Ok(Pls::new(points, lines)?)
    }
}

/// The base of lines built with the smallest candidate for every atom.
pub fn canonical_bol(l: &Lattice) -> Result<BaseOfLines, BolError> {
    let intervals = line_intervals(l)?;
    let lines = intervals
        .iter()
        .map(|iv| extract_line(l, iv, smallest))
        .collect::<Result<Vec<_>, _>>()?;
    BaseOfLines::assemble(l, intervals, lines)
}

/// Iterator over all bases of lines. After `cap` bases it yields a single
/// `Err(CapExceeded)` if more exist, then stops.
pub struct AllBols<'a> {
    lattice: &'a Lattice,
    intervals: Vec<LineInterval>,
    // choices[interval][atom] = candidate list
    choices: Vec<Vec<Vec<usize>>>,
    counter: Vec<usize>,
    radices: Vec<usize>,
    exhausted: bool,
    produced: usize,
    cap: usize,
    seen: HashSet<Vec<Vec<usize>>>,
}

pub fn all_bols(l: &Lattice, cap: usize) -> Result<AllBols<'_>, BolError> {
    let intervals = line_intervals(l)?;
    let choices = intervals
        .iter()
        .map(|iv| atom_choices(l, iv))
        .collect::<Result<Vec<_>, _>>()?;
    let radices: Vec<usize> = choices.iter().flatten().map(Vec::len).collect();
    Ok(AllBols {
        lattice: l,
        counter: vec![0; radices.len()],
        radices,
        intervals,
        choices,
        exhausted: false,
        produced: 0,
        cap,
        seen: HashSet::new(),
    })
}

impl AllBols<'_> {
    fn current_lines(&self) -> Vec<Vec<usize>> {
        let mut k = 0;
        self.choices
            .iter()
            .map(|per_atom| {
                let mut line: Vec<usize> = per_atom
                    .iter()
                    .map(|c| {
                        let p = c[self.counter[k]];
                        k += 1;
                        p
                    })
                    .collect();
                line.sort_unstable();
                line
            })
            .collect()
    }

    fn advance(&mut self) {
        for (digit, &radix) in self.counter.iter_mut().zip(&self.radices) {
            *digit += 1;
            if *digit < radix {
                return;
            }
            *digit = 0;
        }
        self.exhausted = true;
    }
}

impl Iterator for AllBols<'_> {
    type Item = Result<BaseOfLines, BolError>;

    fn next(&mut self) -> Option<Self::Item> {
        while !self.exhausted {
            let lines = self.current_lines();
            if self.seen.contains(&lines) {
                self.advance();
                continue;
            }
            if self.produced == self.cap {
                self.exhausted = true;
                return Some(Err(BolError::CapExceeded(self.cap)));
            }
            self.seen.insert(lines.clone());
            self.advance();
            self.produced += 1;
            return Some(BaseOfLines::assemble(self.lattice, self.intervals.clone(), lines));
        }
        None
    }
}

/// Collects at most `cap` bases; the flag reports truncation.
pub fn all_bols_capped(l: &Lattice, cap: usize) -> Result<(Vec<BaseOfLines>, bool), BolError> {
    let mut out = Vec::new();
    for b in all_bols(l, cap)? {
        match b {
            Ok(b) => out.push(b),
            Err(BolError::CapExceeded(_)) => return Ok((out, true)),
            Err(e) => return Err(e),
        }
    }
    Ok((out, false))
}

/// Lines of a modular lattice known only through its join-irreducibles and
/// a join oracle on them. Returns each line (as point indices `0..n`) with
/// its top, one line per `M_n`-element, ordered by first appearance.
pub fn lines_from_joins<T, F>(n: usize, join: F) -> Vec<(Vec<usize>, T)>
where
    T: Eq + Hash + Clone,
    F: Fn(usize, usize) -> T,
{
    let mut table = vec![Vec::with_capacity(n); n];
    for (i, row) in table.iter_mut().enumerate() {
        for j in 0..n {
            row.push(join(i, j));
        }
    }
    let mut done: HashSet<T> = HashSet::new();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let x = &table[i][j];
            // Comparable points join to one of themselves.
            if x == &table[i][i] || x == &table[j][j] || done.contains(x) {
                continue;
            }
            let mut line = vec![i, j];
            for k in (0..n).filter(|&k| k != i && k != j) {
                if line.iter().all(|&m| table[m][k] == *x) {
                    line.push(k);
                }
            }
            if line.len() >= 3 {
                line.sort_unstable();
                done.insert(x.clone());
                out.push((line, x.clone()));
            }
        }
    }
    out
}
