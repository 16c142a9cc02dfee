//! Instance factories: Schreier products, the catalog sweep, and seeded
//! random instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::catalog::{alternating4, cyclic, dihedral, direct_product, elementary_abelian2, quaternion, symmetric};
use crate::group::{subgroups, validate_group, ElemSet, GroupTable, DEFAULT_ORDER_BOUND};
use crate::measures::Meas;
use crate::rtg::{make_rtg, RtGroup};
use crate::scalar::{zero, Cq};
use crate::topology::AlexandrovTopology;

/// `A` with a group `B` of automorphisms, given as permutations of `A`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SchreierSpec {
    pub base: GroupTable,
    pub acting: Vec<Vec<usize>>,
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

/// `A ⋊ B` with `(u, ε)(v, δ) = (u ε(v), ε∘δ)`; `(u, ε_b)` has index
/// `u + |A| b`.
pub fn schreier_product(spec: &SchreierSpec) -> Result<GroupTable> {
    let a = &spec.base;
    let n = a.order();
    for (index, p) in spec.acting.iter().enumerate() {
        if p.len() != n || p.iter().any(|&x| x >= n) {
            return Err(Error::NotAutomorphism { index, a: 0, b: 0 });
        }
        let mut seen = vec![false; n];
        for &x in p {
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::NotAutomorphism { index, a: x, b: x });
            }
        }
        for x in 0..n {
            for y in 0..n {
                if p[a.mul(x, y)] != a.mul(p[x], p[y]) {
                    return Err(Error::NotAutomorphism { index, a: x, b: y });
                }
            }
        }
    }
    let b = &spec.acting;
    let find = |p: &[usize]| b.iter().position(|q| q == p);
    let comp: Vec<Vec<usize>> = b
        .iter()
        .map(|p| b.iter().map(|q| find(&compose(p, q)).ok_or(Error::NotClosed)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    for p in b {
        let mut inv = vec![0; n];
        for (i, &x) in p.iter().enumerate() {
            inv[x] = i;
        }
        find(&inv).ok_or(Error::NotClosed)?;
    }
    let m = b.len();
    let table = (0..n * m)
        .map(|x| {
            let (u, e) = (x % n, x / n);
            (0..n * m)
                .map(|y| {
                    let (v, d) = (y % n, y / n);
                    a.mul(u, b[e][v]) + n * comp[e][d]
                })
                .collect()
        })
        .collect();
    let g = validate_group(table)?;
    Ok(g.with_name(format!("{}x|{}", a.label(), m)))
}

/// `Z_n` with the automorphisms `v -> u v mod n` for the listed `u`.
pub fn cyclic_multipliers(n: usize, units: &[usize]) -> SchreierSpec {
    SchreierSpec { base: cyclic(n), acting: units.iter().map(|&u| (0..n).map(|v| v * u % n).collect()).collect() }
}

/// `Z_12 ⋊ {1, 5}`, order 24.
pub fn z12_mult5() -> GroupTable {
    schreier_product(&cyclic_multipliers(12, &[1, 5]))
        .expect("multiplication by 5 is an involutive automorphism of Z_12")
        .with_name("Z12x|5")
}

/// Closed form of `f_δ·μ_γ (v, ε)` on `Z_n ⋊ {1, φ}` with `φ(v) = u v`:
/// `Σ_t f(t + γ(v)) μ(t)` when `ε = δ∘γ`, and `0` otherwise. `true`
/// stands for `φ`.
#[allow(clippy::too_many_arguments)]
pub fn schreier_action_formula(
    n: usize,
    u: usize,
    f: &[Cq],
    delta: bool,
    mu: &[Cq],
    gamma: bool,
    v: usize,
    eps: bool,
) -> Result<Cq> {
    if n == 0 || u * u % n != 1 % n {
        return Err(Error::NotInvolution { u: u as u64, n: n as u64 });
    }
    if eps != (delta ^ gamma) {
        return Ok(zero());
    }
    let gv = if gamma { u * v % n } else { v };
    Ok((0..n).fold(zero(), |acc, t| acc + f[(t + gv) % n].clone() * mu[t].clone()))
}

/// `f` on the sheet `A × {δ}` of the Schreier group, zero elsewhere.
pub fn sheet_function(n: usize, f: &[Cq], delta: bool) -> Vec<Cq> {
    let mut out = vec![zero(); 2 * n];
    for (t, x) in f.iter().enumerate() {
        out[t + n * delta as usize] = x.clone();
    }
    out
}

pub fn sheet_measure(n: usize, mu: &[Cq], gamma: bool) -> Meas {
    Meas::new(sheet_function(n, mu, gamma))
}

/// The fixed catalog, ordered by group order.
pub fn standard_catalog() -> Vec<GroupTable> {
    let mut out: Vec<GroupTable> = (2..=12).map(cyclic).collect();
    out.extend([
        elementary_abelian2(2),
        elementary_abelian2(3),
        symmetric(3),
        dihedral(4),
        quaternion(),
        direct_product(&cyclic(2), &cyclic(4)),
        dihedral(5),
        dihedral(6),
        alternating4(),
        direct_product(&cyclic(2), &cyclic(6)),
        symmetric(4),
        z12_mult5(),
    ]);
    out.sort_by_key(GroupTable::order);
    out
}

/// `(G, H)` for every catalog group of order at most `max_order` and every
/// subgroup `H`, in catalog then subgroup order.
pub fn enumerate_instances(max_order: usize) -> Result<Vec<RtGroup>> {
    if max_order > DEFAULT_ORDER_BOUND {
        return Err(Error::OrderTooLarge { order: max_order, bound: DEFAULT_ORDER_BOUND });
    }
    let mut out = Vec::new();
    for g in standard_catalog().into_iter().filter(|g| g.order() <= max_order) {
        out.extend(instances_of(&g)?);
    }
    Ok(out)
}

pub fn instances_of(g: &GroupTable) -> Result<Vec<RtGroup>> {
    subgroups(g)?.into_iter().map(|h| make_rtg(g.clone(), h)).collect()
}

/// Uniform draw from [`enumerate_instances`], deterministic in `seed`.
pub fn random_instance(seed: u64, max_order: usize) -> Result<RtGroup> {
    let all = enumerate_instances(max_order)?;
    if all.is_empty() {
        return Err(Error::Malformed(format!("no catalog instance of order <= {max_order}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let i = rng.gen_range(0..all.len());
    Ok(all.into_iter().nth(i).expect("index in range"))
}

/// Cones of all right-invariant topologies on `g`, found by testing every
/// `S ∋ e` as `U_e` with `U_x = S x`. Independent of subgroup enumeration.
pub fn right_invariant_cones_bruteforce(g: &GroupTable) -> Vec<ElemSet> {
    let n = g.order();
    assert!(n <= 16, "brute force limited to order 16");
    let e = g.identity();
    (0u64..1 << n)
        .map(ElemSet::from_bits)
        .filter(|s| s.contains(e))
        .filter(|&s| {
            let rows = (0..n).map(|x| crate::topology::point_set(n, s.iter().map(|h| g.mul(h, x)))).collect();
            AlexandrovTopology::from_minnbhd(rows).is_ok()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::find_isomorphism;
    use crate::scalar::int;

    #[test]
    fn trivial_action_gives_base() {
        let g = schreier_product(&cyclic_multipliers(5, &[1])).unwrap();
        assert!(find_isomorphism(&g, &cyclic(5)).is_some());
    }

    #[test]
    fn z12_by_5_has_order_24() {
        let g = z12_mult5();
        assert_eq!(g.order(), 24);
        assert!(!g.is_abelian());
    }

    #[test]
    fn z3_by_inversion_is_s3() {
        let g = schreier_product(&cyclic_multipliers(3, &[1, 2])).unwrap();
        assert!(find_isomorphism(&g, &symmetric(3)).is_some());
    }

    #[test]
    fn schreier_rejects_bad_specs() {
        // multiplication by 2 is not injective on Z_4
        let spec = cyclic_multipliers(4, &[1, 2]);
        assert!(matches!(schreier_product(&spec), Err(Error::NotAutomorphism { index: 1, .. })));
        // {1, 5, 7} is not closed: 5 * 7 = 11
        let spec = cyclic_multipliers(12, &[1, 5, 7]);
        assert_eq!(schreier_product(&spec).unwrap_err(), Error::NotClosed);
    }

    #[test]
    fn formula_trivial_and_zero_branch() {
        let f = vec![int(1); 12];
        let mu = vec![crate::scalar::ratio(1, 12); 12];
        assert_eq!(schreier_action_formula(12, 5, &f, false, &mu, false, 0, false).unwrap(), int(1));
        assert_eq!(schreier_action_formula(12, 5, &f, true, &mu, false, 3, false).unwrap(), zero());
        assert!(matches!(schreier_action_formula(12, 3, &f, false, &mu, false, 0, false), Err(Error::NotInvolution { .. })));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_instances(2).unwrap().len(), 2);
        assert_eq!(enumerate_instances(6).unwrap().len(), 24);
        assert_eq!(instances_of(&symmetric(3)).unwrap().len(), 6);
        assert!(enumerate_instances(25).is_err());
    }

    #[test]
    fn full_catalog_size() {
        let all = enumerate_instances(24).unwrap();
        assert!(all.len() >= 150, "{}", all.len());
    }

    #[test]
    fn bruteforce_cones_are_subgroups() {
        for g in [symmetric(3), dihedral(4), quaternion(), cyclic(8)] {
            let mut brute = right_invariant_cones_bruteforce(&g);
            let mut subs: Vec<ElemSet> = subgroups(&g).unwrap().into_iter().map(|h| h.set()).collect();
            brute.sort_by_key(|s| s.bits());
            subs.sort_by_key(|s| s.bits());
            assert_eq!(brute, subs, "{}", g.label());
        }
    }

    #[test]
    fn random_is_deterministic() {
        assert_eq!(random_instance(7, 12).unwrap(), random_instance(7, 12).unwrap());
    }
}
