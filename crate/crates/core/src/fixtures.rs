//! Small named lattices, posets and point-line spaces used by tests, the
//! `verify` corpus and the CLI.

use crate::lattice::Lattice;
use crate::pls::Pls;
use crate::poset::Poset;

/// `M_n`: bottom `0`, atoms `1..=n`, top `n + 1`.
pub fn mn(n: usize) -> Lattice {
    let top = n + 1;
    let mut covers = Vec::new();
    for a in 1..=n {
        covers.push((0, a));
        covers.push((a, top));
    }
    Lattice::build(n + 2, &covers).expect("M_n is a lattice")
}

pub fn m3() -> Lattice {
    mn(3)
}

/// The pentagon `0 < a < b < 1`, `0 < c < 1`.
pub fn n5() -> Lattice {
    Lattice::build(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).expect("N5 is a lattice")
}

/// Chain with `k` elements.
pub fn chain(k: usize) -> Lattice {
    let covers: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
    Lattice::build(k, &covers).expect("chain is a lattice")
}

/// Boolean lattice `2^k` on the subsets of `0..k` (element = bitmask).
pub fn boolean(k: usize) -> Lattice {
    let n = 1usize << k;
    let mut covers = Vec::new();
    for s in 0..n {
        for b in 0..k {
            if s & (1 << b) == 0 {
                covers.push((s, s | (1 << b)));
            }
        }
    }
    Lattice::build(n, &covers).expect("Boolean lattice")
}

/// The 7-point poset of the worked enumeration example: `p1 < p4`,
/// `p2 < p5`, `p2 < p6`, `p3 < p7`.
pub fn fig81_poset() -> Poset {
    let names = (1..=7).map(|i| format!("p{i}")).collect();
    Poset::from_relation_named(names, &[(0, 3), (1, 4), (1, 5), (2, 6)]).expect("valid poset")
}

/// Lines `{p1,p2,p3}`, `{p1,p5,p6}`, `{p4,p6,p7}` over [`fig81_poset`],
/// as 0-based positions.
pub fn fig81_lines() -> Vec<Vec<usize>> {
    vec![vec![0, 1, 2], vec![0, 4, 5], vec![3, 5, 6]]
}

/// The 13-element lattice of closed order ideals of [`fig81_poset`] under
/// [`fig81_lines`], elements named by their ideals.
pub fn fig82a() -> Lattice {
    let poset = fig81_poset();
    let members = crate::wildcard::brute_force_closed_ideals(&poset, &fig81_lines());
    crate::rebuild::closed_ideals_lattice(&members, poset.names())
        .expect("closed ideals form a closure system")
        .0
}

/// Fano plane on points `1..=7`.
pub fn fano_pls() -> Pls {
    Pls::new(
        (1..=7).collect(),
        vec![
            vec![1, 2, 3],
            vec![1, 4, 5],
            vec![1, 6, 7],
            vec![2, 4, 6],
            vec![2, 5, 7],
            vec![3, 4, 7],
            vec![3, 5, 6],
        ],
    )
    .expect("Fano plane is a partial linear space")
}

/// The 17 implications of the optimal base quoted for the lattice `L1`
/// (join-irreducibles named by their labels in that lattice).
pub fn sigma_opt_l1() -> Vec<(Vec<u32>, Vec<u32>)> {
    vec![
        (vec![4], vec![2]),
        (vec![6], vec![3]),
        (vec![7], vec![3]),
        (vec![10], vec![7]),
        (vec![12], vec![2, 6, 7]),
        (vec![14], vec![10]),
        (vec![15], vec![10]),
        (vec![16], vec![10]),
        (vec![4, 10], vec![12]),
        (vec![4, 12], vec![10]),
        (vec![10, 12], vec![4]),
        (vec![2, 14], vec![15]),
        (vec![2, 15], vec![14]),
        (vec![2, 16], vec![14]),
        (vec![14, 15], vec![16]),
        (vec![14, 16], vec![15]),
        (vec![15, 16], vec![2]),
    ]
}

/// The 8-set system over `W = {a,…,h,k}` from the distributive-generation
/// exercise, rows `X1..X8`.
pub const EX8A_TABLE: &str = "\
     a b c d e f g h k
X1 = 1 1 1 1 1 1 0 0 1
X2 = 1 1 1 1 1 1 0 1 0
X3 = 1 1 0 1 1 1 0 0 0
X4 = 0 1 1 1 0 1 1 0 0
X5 = 1 1 0 0 1 0 0 0 0
X6 = 0 1 0 1 0 1 0 0 0
X7 = 1 1 0 1 1 1 1 1 0
X8 = 0 0 0 1 0 1 1 0 1
";
