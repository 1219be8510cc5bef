//! Partial linear spaces: points plus lines, any two lines sharing at most
//! one point.
//!
//! Cycles are cycles of the bipartite point–line incidence graph. Under
//! partial linearity every such cycle runs through at least three lines,
//! which is the junction-sequence form exposed as [`PlsCycle`].

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::UnionFind;

pub type PointId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlsError {
    #[error("lines {first} and {second} share points {p} and {q}")]
    TwoPointIntersection {
        first: usize,
        second: usize,
        p: PointId,
        q: PointId,
    },
    #[error("line {line} has {size} point(s); lines need at least 2")]
    LineTooSmall { line: usize, size: usize },
    #[error("line {line} mentions unknown point {point}")]
    UnknownPoint { line: usize, point: PointId },
    #[error("line {line} lists point {point} twice")]
    RepeatedPoint { line: usize, point: PointId },
    #[error("point {point} is not on line {line}")]
    PointNotOnLine { line: usize, point: PointId },
    #[error("no line with index {0}")]
    NoSuchLine(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pls {
    points: Vec<PointId>,
    lines: Vec<Vec<PointId>>,
}

/// A cycle of lines `lines[0], …, lines[k-1]` where `junctions[i]` lies on
/// `lines[i]` and `lines[(i + 1) % k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlsCycle {
    pub lines: Vec<usize>,
    pub junctions: Vec<PointId>,
}

/// Detaching `point` from line number `line` onto a fresh point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Splitting {
    pub line: usize,
    pub point: PointId,
}

impl Pls {
    /// Validates a point set and a line family. Points are deduplicated;
    /// line order is kept, points inside a line are sorted.
    pub fn new(points: Vec<PointId>, lines: Vec<Vec<PointId>>) -> Result<Self, PlsError> {
        let point_set: BTreeSet<PointId> = points.into_iter().collect();
        let mut sorted_lines = Vec::with_capacity(lines.len());
        for (li, line) in lines.into_iter().enumerate() {
            let mut l = line;
            l.sort_unstable();
            if let Some(w) = l.windows(2).find(|w| w[0] == w[1]) {
                return Err(PlsError::RepeatedPoint { line: li, point: w[0] });
            }
            if l.len() < 2 {
                return Err(PlsError::LineTooSmall { line: li, size: l.len() });
            }
            if let Some(&p) = l.iter().find(|p| !point_set.contains(p)) {
                return Err(PlsError::UnknownPoint { line: li, point: p });
            }
            sorted_lines.push(l);
        }
        // Any two lines meet in at most one point: no pair of points may be
        // covered twice.
        let mut seen: HashMap<(PointId, PointId), usize> = HashMap::new();
        for (li, l) in sorted_lines.iter().enumerate() {
            for (i, &p) in l.iter().enumerate() {
                for &q in &l[i + 1..] {
                    if let Some(&first) = seen.get(&(p, q)) {
                        return Err(PlsError::TwoPointIntersection {
                            first,
                            second: li,
                            p,
                            q,
                        });
                    }
                    seen.insert((p, q), li);
                }
            }
        }
        Ok(Pls {
            points: point_set.into_iter().collect(),
            lines: sorted_lines,
        })
    }

    pub fn points(&self) -> &[PointId] {
        &self.points
    }

    pub fn lines(&self) -> &[Vec<PointId>] {
        &self.lines
    }

    pub fn line(&self, i: usize) -> &[PointId] {
        &self.lines[i]
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    /// Number of point–line incidences.
    pub fn incidences(&self) -> usize {
        self.lines.iter().map(Vec::len).sum()
    }

    fn point_index(&self) -> HashMap<PointId, usize> {
        self.points.iter().enumerate().map(|(i, &p)| (p, i)).collect()
    }

    /// Connected components of the collinearity graph; isolated points are
    /// singletons. Each component is sorted, components are sorted by their
    /// smallest point.
    pub fn components(&self) -> Vec<Vec<PointId>> {
        let idx = self.point_index();
        let mut uf = UnionFind::new(self.points.len());
        for l in &self.lines {
            for w in l.windows(2) {
                uf.union(idx[&w[0]], idx[&w[1]]);
            }
        }
        uf.groups()
            .into_iter()
            .map(|g| g.into_iter().map(|i| self.points[i]).collect())
            .collect()
    }

    pub fn num_components(&self) -> usize {
        self.components().len()
    }

    /// Some cycle of lines if the incidence graph is not a forest.
    pub fn find_cycle(&self) -> Option<PlsCycle> {
        // Incidence graph nodes: points 0..P, lines P..P+L.
        let np = self.points.len();
        let idx = self.point_index();
        let total = np + self.lines.len();
        let mut adj = vec![Vec::new(); total];
        for (li, l) in self.lines.iter().enumerate() {
            for p in l {
                adj[idx[p]].push(np + li);
                adj[np + li].push(idx[p]);
            }
        }
        let mut parent = vec![usize::MAX; total];
        let mut visited = vec![false; total];
        for root in 0..total {
            if visited[root] {
                continue;
            }
            visited[root] = true;
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if w == parent[v] {
                        continue;
                    }
                    if visited[w] {
                        return Some(self.cycle_from_edge(v, w, &parent, np));
                    }
                    visited[w] = true;
                    parent[w] = v;
                    stack.push(w);
                }
            }
        }
        None
    }

    /// Turns the non-tree edge `v — w` of a search forest into a cycle.
    fn cycle_from_edge(&self, v: usize, w: usize, parent: &[usize], np: usize) -> PlsCycle {
        let path_to_root = |mut x: usize| {
            let mut path = vec![x];
            while parent[x] != usize::MAX {
                x = parent[x];
                path.push(x);
            }
            path
        };
        let pv = path_to_root(v);
        let pw = path_to_root(w);
        let on_pw: std::collections::HashSet<usize> = pw.iter().copied().collect();
        let lca_pos_v = pv.iter().position(|x| on_pw.contains(x)).expect("same tree");
        let lca = pv[lca_pos_v];
        let lca_pos_w = pw.iter().position(|&x| x == lca).expect("lca on path");
        // v → … → lca → … → w, then back to v via the non-tree edge.
        let mut nodes: Vec<usize> = pv[..=lca_pos_v].to_vec();
        nodes.extend(pw[..lca_pos_w].iter().rev());
        // Rotate so that the sequence starts with a line node.
        let start = nodes.iter().position(|&x| x >= np).expect("cycle has lines");
        nodes.rotate_left(start);
        let mut lines = Vec::new();
        let mut junctions = Vec::new();
        for (i, &x) in nodes.iter().enumerate() {
            if x >= np {
                lines.push(x - np);
                junctions.push(self.points[nodes[(i + 1) % nodes.len()]]);
            }
        }
        PlsCycle { lines, junctions }
    }

    pub fn is_acyclic(&self) -> bool {
        self.find_cycle().is_none()
    }

    /// Checks that `cycle` is a genuine cycle of this space.
    pub fn is_cycle(&self, cycle: &PlsCycle) -> bool {
        let k = cycle.lines.len();
        if k < 3 || cycle.junctions.len() != k {
            return false;
        }
        let distinct_lines: BTreeSet<_> = cycle.lines.iter().collect();
        let distinct_points: BTreeSet<_> = cycle.junctions.iter().collect();
        if distinct_lines.len() != k || distinct_points.len() != k {
            return false;
        }
        (0..k).all(|i| {
            let (a, b) = (cycle.lines[i], cycle.lines[(i + 1) % k]);
            a < self.lines.len()
                && b < self.lines.len()
                && self.lines[a].contains(&cycle.junctions[i])
                && self.lines[b].contains(&cycle.junctions[i])
        })
    }

    fn fresh_point(&self) -> PointId {
        self.points.last().map_or(0, |&p| p + 1)
    }

    /// Detaches `point` from `line` and attaches a fresh point instead.
    pub fn split_point(&self, line: usize, point: PointId) -> Result<Pls, PlsError> {
        let l = self.lines.get(line).ok_or(PlsError::NoSuchLine(line))?;
        if !l.contains(&point) {
            return Err(PlsError::PointNotOnLine { line, point });
        }
        let fresh = self.fresh_point();
        let mut next = self.clone();
        let target = &mut next.lines[line];
        target.retain(|&p| p != point);
        target.push(fresh);
        target.sort_unstable();
        next.points.push(fresh);
        Ok(next)
    }

    /// Cyclomatic number `E − V + c` of the incidence graph: the least
    /// number of point-splittings that make the space acyclic without
    /// changing its number of components.
    pub fn rstar(&self) -> usize {
        let e = self.incidences();
        let v = self.points.len() + self.lines.len();
        let c = self.num_components();
        e + c - v
    }

    /// A minimum-size sequence of splittings that yields an acyclic space
    /// with the same components.
    ///
    /// Takes a spanning forest of the incidence graph; the incidences outside
    /// it are exactly the splittings. Each of them closes a cycle with the
    /// forest, which stays intact, so the component count never changes.
    pub fn acyclifier(&self) -> Vec<Splitting> {
        let np = self.points.len();
        let idx = self.point_index();
        let mut uf = UnionFind::new(np + self.lines.len());
        let mut out = Vec::new();
        for (li, l) in self.lines.iter().enumerate() {
            for p in l {
                if !uf.union(idx[p], np + li) {
                    out.push(Splitting { line: li, point: *p });
                }
            }
        }
        out
    }

    /// Applies splittings in order.
    pub fn apply_splittings(&self, splittings: &[Splitting]) -> Result<Pls, PlsError> {
        splittings
            .iter()
            .try_fold(self.clone(), |acc, s| acc.split_point(s.line, s.point))
    }

    /// Lines through each point.
    pub fn lines_through(&self) -> BTreeMap<PointId, Vec<usize>> {
        let mut map: BTreeMap<PointId, Vec<usize>> =
            self.points.iter().map(|&p| (p, Vec::new())).collect();
        for (li, l) in self.lines.iter().enumerate() {
            for p in l {
                map.entry(*p).or_default().push(li);
            }
        }
        map
    }

    /// The two spaces are isomorphic via some point bijection that maps
    /// lines onto lines. Exhaustive; small inputs only.
    pub fn is_isomorphic(&self, other: &Pls) -> bool {
        if self.num_points() != other.num_points() || self.num_lines() != other.num_lines() {
            return false;
        }
        let mut sizes_a: Vec<_> = self.lines.iter().map(Vec::len).collect();
        let mut sizes_b: Vec<_> = other.lines.iter().map(Vec::len).collect();
        sizes_a.sort_unstable();
        sizes_b.sort_unstable();
        if sizes_a != sizes_b {
            return false;
        }
        let target: BTreeSet<Vec<PointId>> = other.lines.iter().cloned().collect();
        let mut map = vec![usize::MAX; self.points.len()];
        let mut used = vec![false; other.points.len()];
        self.iso_extend(other, &target, 0, &mut map, &mut used)
    }

    fn iso_extend(
        &self,
        other: &Pls,
        target: &BTreeSet<Vec<PointId>>,
        depth: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let idx = self.point_index();
        if depth == self.points.len() {
            return self.lines.iter().all(|l| {
                let mut img: Vec<PointId> =
                    l.iter().map(|p| other.points[map[idx[p]]]).collect();
                img.sort_unstable();
                target.contains(&img)
            });
        }
        for cand in 0..other.points.len() {
            if used[cand] {
                continue;
            }
            map[depth] = cand;
            used[cand] = true;
            let ok = self.lines.iter().all(|l| {
                if l.iter().any(|p| map[idx[p]] == usize::MAX || idx[p] > depth) {
                    return true;
                }
                let mut img: Vec<PointId> =
                    l.iter().map(|p| other.points[map[idx[p]]]).collect();
                img.sort_unstable();
                target.contains(&img)
            });
            if ok && self.iso_extend(other, target, depth + 1, map, used) {
                return true;
            }
            map[depth] = usize::MAX;
            used[cand] = false;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn validation() {
        assert!(matches!(
            Pls::new(vec![1, 2, 3, 4], vec![vec![1, 2, 3], vec![1, 2, 4]]),
            Err(PlsError::TwoPointIntersection { .. })
        ));
        assert!(matches!(
            Pls::new(vec![1, 2], vec![vec![1]]),
            Err(PlsError::LineTooSmall { .. })
        ));
        assert!(matches!(
            Pls::new(vec![1, 2], vec![vec![1, 9]]),
            Err(PlsError::UnknownPoint { .. })
        ));
        let empty = Pls::new(vec![1, 2, 3, 4, 5], vec![]).unwrap();
        assert_eq!(empty.num_components(), 5);
        assert_eq!(empty.rstar(), 0);
    }

    #[test]
    fn fano() {
        let f = fixtures::fano_pls();
        assert_eq!(f.num_components(), 1);
        let c = f.find_cycle().expect("Fano has cycles");
        assert!(f.is_cycle(&c));
        assert_eq!(f.rstar(), 8);
    }

    #[test]
    fn forest_has_no_cycle() {
        let p = Pls::new((1..=5).collect(), vec![vec![1, 2, 3], vec![3, 4, 5]]).unwrap();
        assert!(p.find_cycle().is_none());
        assert_eq!(p.rstar(), 0);
        assert!(p.acyclifier().is_empty());
    }

    #[test]
    fn fig81_space_is_a_tree() {
        let p = Pls::new((1..=7).collect(), vec![vec![1, 2, 3], vec![1, 5, 6], vec![4, 6, 7]])
            .unwrap();
        assert_eq!(p.num_components(), 1);
        assert!(p.find_cycle().is_none());
    }

    #[test]
    fn split_point_counts() {
        let f = fixtures::fano_pls();
        let s = f.split_point(0, 1).unwrap();
        assert_eq!(s.num_points(), 8);
        assert_eq!(s.num_lines(), 7);
        assert_eq!(s.incidences(), f.incidences());
        assert_eq!(s.rstar(), 7);
        assert_eq!(
            f.split_point(0, 4).unwrap_err(),
            PlsError::PointNotOnLine { line: 0, point: 4 }
        );
        let twice = s.split_point(0, 2).unwrap();
        assert_eq!(twice.num_points(), 9);
    }

    #[test]
    fn acyclifier_on_fano() {
        let f = fixtures::fano_pls();
        let a = f.acyclifier();
        assert_eq!(a.len(), 8);
        let done = f.apply_splittings(&a).unwrap();
        assert!(done.find_cycle().is_none());
        assert_eq!(done.num_components(), 1);
    }

    #[test]
    fn isomorphism_of_spaces() {
        let f = fixtures::fano_pls();
        let relabelled = Pls::new(
            (11..=17).collect(),
            f.lines()
                .iter()
                .map(|l| l.iter().map(|p| 18 - p).collect())
                .collect(),
        )
        .unwrap();
        assert!(f.is_isomorphic(&relabelled));
        let path = Pls::new((1..=7).collect(), vec![vec![1, 2, 3], vec![3, 4, 5]]).unwrap();
        assert!(!f.is_isomorphic(&path));
    }
}
