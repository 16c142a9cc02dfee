//! Built-in group constructors.
//!
//! Permutation groups list permutations of `0..k` in lexicographic order
//! and multiply by composition, `(p q)(i) = p(q(i))`. Dihedral elements
//! `r^a s^b` sit at index `a + n b`. Quaternion units `1, i, j, k` are
//! `0..4` and their negatives `4..8`.

use super::{validate_group, GroupTable};

pub fn cyclic(n: usize) -> GroupTable {
    let t = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    validate_group(t).expect("cyclic table").with_name(format!("Z{n}"))
}

/// Dihedral group of order `2n`.
pub fn dihedral(n: usize) -> GroupTable {
    let idx = |a: usize, b: usize| a % n + n * (b % 2);
    let t = (0..2 * n)
        .map(|x| {
            let (a, b) = (x % n, x / n);
            (0..2 * n)
                .map(|y| {
                    let (c, d) = (y % n, y / n);
                    let rot = if b == 0 { a + c } else { a + n - c };
                    idx(rot, b + d)
                })
                .collect()
        })
        .collect();
    validate_group(t).expect("dihedral table").with_name(format!("D{n}"))
}

pub fn dihedral_r(_n: usize) -> usize {
    1
}

pub fn dihedral_s(n: usize) -> usize {
    n
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for x in 0..k {
            if !prefix.contains(&x) {
                prefix.push(x);
                go(prefix, k, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), k, &mut out);
    out
}

fn parity(p: &[usize]) -> bool {
    let inversions = (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
    inversions % 2 == 0
}

fn permutation_group(perms: Vec<Vec<usize>>, name: String) -> GroupTable {
    let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("closed");
    let t = perms.iter().map(|p| perms.iter().map(|q| index(&q.iter().map(|&i| p[i]).collect())).collect()).collect();
    validate_group(t).expect("permutation table").with_name(name)
}

/// `S_k` for `k <= 4`.
pub fn symmetric(k: usize) -> GroupTable {
    assert!((1..=4).contains(&k), "S_k supported for k <= 4");
    permutation_group(permutations(k), format!("S{k}"))
}

pub fn alternating4() -> GroupTable {
    let perms = permutations(4).into_iter().filter(|p| parity(p)).collect();
    permutation_group(perms, "A4".into())
}

/// Index of permutation `p` in [`symmetric`]`(p.len())`.
pub fn perm_index(p: &[usize]) -> usize {
    permutations(p.len()).iter().position(|q| q == p).expect("a permutation")
}

/// The transposition written `(12)` in one-based cycle notation.
pub fn s3_transposition_12() -> usize {
    perm_index(&[1, 0, 2])
}

pub fn s3_transposition_13() -> usize {
    perm_index(&[2, 1, 0])
}

pub fn s3_three_cycle() -> usize {
    perm_index(&[1, 2, 0])
}

pub fn quaternion() -> GroupTable {
    // unit products without sign: i j = k etc.
    const UNIT: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    let t = (0..8)
        .map(|x: usize| {
            (0..8)
                .map(|y: usize| {
                    let (u, neg) = UNIT[x % 4][y % 4];
                    let sign = neg ^ (x >= 4) ^ (y >= 4);
                    u + if sign { 4 } else { 0 }
                })
                .collect()
        })
        .collect();
    validate_group(t).expect("quaternion table").with_name("Q8")
}

/// `A x B` with `(a, b)` at index `a + |A| b`.
pub fn direct_product(a: &GroupTable, b: &GroupTable) -> GroupTable {
    let (na, nb) = (a.order(), b.order());
    let t = (0..na * nb).map(|x| (0..na * nb).map(|y| a.mul(x % na, y % na) + na * b.mul(x / na, y / na)).collect()).collect();
    validate_group(t).expect("product table").with_name(format!("{}x{}", a.label(), b.label()))
}

/// `Z_2^k`.
pub fn elementary_abelian2(k: usize) -> GroupTable {
    let n = 1usize << k;
    let t = (0..n).map(|a| (0..n).map(|b| a ^ b).collect()).collect();
    let name = vec!["Z2"; k].join("x");
    validate_group(t).expect("xor table").with_name(name)
}
