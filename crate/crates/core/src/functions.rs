//! Function spaces on a finite instance as exact subspaces of `Q(i)^G`.
//!
//! A complex function is continuous iff it is constant on the cells of the
//! topology (`f(x) = f(y)` whenever `y ∈ U_x`). `C_0`, `C_c` and `C_b` all
//! coincide with `C` here.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{GroupTable, Subgrp};
use crate::linalg::{solve_within, Subspace};
use crate::rtg::RtGroup;
use crate::scalar::{one, Cq};
use crate::topology::AlexandrovTopology;

pub type FnVec = Vec<Cq>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Which {
    Tau,
    Sigma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FnTag {
    Tau,
    Sigma,
    Lc,
    D,
    ApWap,
    Generated,
}

#[derive(Debug, Clone)]
pub struct FnSubspace {
    pub tag: FnTag,
    /// Holds vacuously on finite models.
    pub degenerate: bool,
    space: Subspace,
}

impl FnSubspace {
    pub fn new(tag: FnTag, space: Subspace) -> Self {
        Self { tag, degenerate: false, space }
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> &[FnVec] {
        self.space.basis()
    }

    pub fn contains(&self, f: &[Cq]) -> bool {
        self.space.contains(f)
    }

    pub fn same_as(&self, other: &FnSubspace) -> bool {
        self.space.same_as(&other.space)
    }

    pub fn is_subspace_of(&self, other: &FnSubspace) -> bool {
        self.space.is_subspace_of(&other.space)
    }
}

pub fn constant(n: usize, c: Cq) -> FnVec {
    vec![c; n]
}

pub fn indicator(n: usize, points: impl IntoIterator<Item = usize>) -> FnVec {
    let mut f = vec![Cq::zero(); n];
    for p in points {
        f[p] = one();
    }
    f
}

/// A pair `(x, y)` with `y ∈ U_x` and `f(x) ≠ f(y)`.
pub fn discontinuity(f: &[Cq], t: &AlexandrovTopology) -> Option<(usize, usize)> {
    (0..t.points()).find_map(|x| t.minimal(x).ones().find(|&y| f[x] != f[y]).map(|y| (x, y)))
}

pub fn is_continuous_fn(f: &[Cq], t: &AlexandrovTopology) -> bool {
    discontinuity(f, t).is_none()
}

pub fn check_continuous(f: &[Cq], t: &AlexandrovTopology) -> Result<()> {
    match discontinuity(f, t) {
        Some((x, y)) => Err(Error::FNotContinuous { x, y }),
        None => Ok(()),
    }
}

/// Indicators of the cells of `t`, in order of first appearance.
pub fn cell_indicators(t: &AlexandrovTopology) -> Vec<FnVec> {
    let (label, count) = t.cells();
    (0..count).map(|c| indicator(t.points(), (0..t.points()).filter(|&x| label[x] == c))).collect()
}

pub fn continuous_functions_on(t: &AlexandrovTopology) -> Subspace {
    Subspace::span(t.points(), cell_indicators(t))
}

pub fn continuous_functions(rtg: &RtGroup, which: Which) -> FnSubspace {
    match which {
        Which::Tau => FnSubspace::new(FnTag::Tau, continuous_functions_on(rtg.tau())),
        Which::Sigma => FnSubspace::new(FnTag::Sigma, continuous_functions_on(rtg.sigma())),
    }
}

/// `(L_g f)(x) = f(gx)`, `(R_g f)(x) = f(xg)`.
pub fn translate(g: &GroupTable, f: &[Cq], a: usize, side: Side) -> FnVec {
    (0..g.order())
        .map(|x| match side {
            Side::Left => f[g.mul(a, x)].clone(),
            Side::Right => f[g.mul(x, a)].clone(),
        })
        .collect()
}

fn equality_row(n: usize, u: usize, v: usize) -> Vec<Cq> {
    let mut r = vec![Cq::zero(); n];
    r[u] = one();
    r[v] = -one();
    r
}

/// Solves `f(u) = f(v)` for all listed pairs inside `C(G, τ)`.
fn tau_functions_with(rtg: &RtGroup, pairs: BTreeSet<(usize, usize)>) -> Subspace {
    let n = rtg.order();
    let rows: Vec<Vec<Cq>> = pairs.into_iter().filter(|(u, v)| u != v).map(|(u, v)| equality_row(n, u, v)).collect();
    solve_within(&cell_indicators(rtg.tau()), &rows, n)
}

fn ordered(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// `LC(G) = {f ∈ C(G) : L_g f ∈ C(G) for all g}`.
pub fn lc_space(rtg: &RtGroup) -> FnSubspace {
    let g = rtg.group();
    let t = rtg.tau();
    let mut pairs = BTreeSet::new();
    for a in 0..g.order() {
        for x in 0..g.order() {
            for y in t.minimal(x).ones() {
                pairs.insert(ordered(g.mul(a, x), g.mul(a, y)));
            }
        }
    }
    FnSubspace::new(FnTag::Lc, tau_functions_with(rtg, pairs))
}

/// `D(G)`: `f ∈ C(G)` with `x -> f(y x^-1)` continuous for every `y`.
pub fn d_space(rtg: &RtGroup) -> FnSubspace {
    let g = rtg.group();
    let t = rtg.tau();
    let mut pairs = BTreeSet::new();
    for y in 0..g.order() {
        for x in 0..g.order() {
            for x2 in t.minimal(x).ones() {
                pairs.insert(ordered(g.mul(y, g.inv(x)), g.mul(y, g.inv(x2))));
            }
        }
    }
    FnSubspace::new(FnTag::D, tau_functions_with(rtg, pairs))
}

/// `AP(G) = WAP(G) = C(G)`: orbits of finitely many translates are compact.
pub fn ap_wap(rtg: &RtGroup) -> FnSubspace {
    let mut s = FnSubspace::new(FnTag::ApWap, continuous_functions_on(rtg.tau()));
    s.degenerate = true;
    s
}

/// First `(basis index, g)` whose left or right translate leaves `a`.
pub fn translation_witness(g: &GroupTable, a: &FnSubspace) -> Option<(usize, usize)> {
    let gens = g.generators();
    a.basis().iter().enumerate().find_map(|(i, f)| {
        gens.iter()
            .copied()
            .find(|&x| !a.contains(&translate(g, f, x, Side::Left)) || !a.contains(&translate(g, f, x, Side::Right)))
            .map(|x| (i, x))
    })
}

/// `Fix(A) = {g : L_g f = f for all f ∈ A}`.
pub fn fix(rtg: &RtGroup, a: &FnSubspace) -> Result<Subgrp> {
    let g = rtg.group();
    if let Some((basis, x)) = translation_witness(g, a) {
        return Err(Error::NotTranslationInvariant { basis, g: x });
    }
    let set = (0..g.order()).filter(|&x| a.basis().iter().all(|f| translate(g, f, x, Side::Left) == *f)).collect();
    Subgrp::new(g, set)
}

/// `{f ∈ C(G) : L_y f = f for all y ∈ K}`.
pub fn left_invariant_under(rtg: &RtGroup, k: Subgrp) -> FnSubspace {
    let g = rtg.group();
    let mut pairs = BTreeSet::new();
    for y in k.set().iter() {
        for x in 0..g.order() {
            pairs.insert(ordered(g.mul(y, x), x));
        }
    }
    FnSubspace::new(FnTag::Generated, tau_functions_with(rtg, pairs))
}

/// Span of all two-sided translates of `f`.
pub fn translation_hull(g: &GroupTable, f: &[Cq]) -> FnSubspace {
    let gens = g.generators();
    let mut space = Subspace::zero(g.order());
    let mut queue = vec![f.to_vec()];
    space.push(f.to_vec());
    while let Some(v) = queue.pop() {
        for &a in &gens {
            for side in [Side::Left, Side::Right] {
                let w = translate(g, &v, a, side);
                if space.push(w.clone()) {
                    queue.push(w);
                }
            }
        }
    }
    FnSubspace::new(FnTag::Generated, space)
}

/// Smallest two-sided translation-invariant unital algebra containing `f`.
pub fn generated_algebra(g: &GroupTable, f: &[Cq]) -> FnSubspace {
    let n = g.order();
    let mut space = translation_hull(g, f).space;
    space.push(vec![one(); n]);
    let mut spanning = space.basis().to_vec();
    let mut done = 0;
    while done < spanning.len() && space.dim() < n {
        for i in 0..=done {
            let uv: FnVec = spanning[i].iter().zip(&spanning[done]).map(|(a, b)| a.clone() * b.clone()).collect();
            if space.push(uv.clone()) {
                spanning.push(uv);
            }
        }
        done += 1;
    }
    FnSubspace::new(FnTag::Generated, space)
}

/// For every `x` and every `c ∉ U_x` (the largest closed set missing `x` is
/// `G∖U_x`), some basis function distinguishes `x` from `c`. A generic
/// combination of such functions then misses `f(C)` at `x`.
pub fn separates_points_from_closed(a: &FnSubspace, t: &AlexandrovTopology) -> bool {
    separation_failure(a, t).is_none()
}

pub fn separation_failure(a: &FnSubspace, t: &AlexandrovTopology) -> Option<(usize, usize)> {
    (0..t.points()).find_map(|x| {
        (0..t.points()).filter(|&c| !t.minimal(x).contains(c)).find(|&c| a.basis().iter().all(|f| f[x] == f[c])).map(|c| (x, c))
    })
}

/// `g -> R_{g^-1} f` is constant on τ-cells.
pub fn right_translate_map_continuous(rtg: &RtGroup, f: &[Cq]) -> bool {
    let g = rtg.group();
    let t = rtg.tau();
    (0..g.order()).all(|x| {
        let fx = translate(g, f, g.inv(x), Side::Right);
        t.minimal(x).ones().all(|y| translate(g, f, g.inv(y), Side::Right) == fx)
    })
}

pub fn is_constant(f: &[Cq]) -> bool {
    f.windows(2).all(|w| w[0] == w[1])
}

pub fn is_unit_constant(f: &[Cq]) -> bool {
    f.iter().all(One::is_one)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog::*;
    use crate::rtg::make_rtg;
    use crate::scalar::int;

    #[test]
    fn hull_matches_all_translates() {
        for g in [symmetric(3), quaternion(), dihedral(5)] {
            let n = g.order();
            let f: FnVec = (0..n).map(|x| int((x * x % 7) as i64)).collect();
            let all = Subspace::span(
                n,
                (0..n).flat_map(|a| {
                    (0..n).map(|b| translate(&g, &translate(&g, &f, a, Side::Left), b, Side::Right)).collect::<Vec<_>>()
                }),
            );
            assert!(translation_hull(&g, &f).space.same_as(&all), "{}", g.label());
        }
    }

    #[test]
    fn algebra_of_subgroup_indicator() {
        // functions constant on cosets of the normal subgroup A3
        let g = symmetric(3);
        let a = generated_algebra(&g, &indicator(6, [0, 3, 4]));
        assert_eq!(a.dim(), 2);
        let b = generated_algebra(&g, &indicator(6, [0, s3_transposition_12()]));
        assert_eq!(b.dim(), 6);
    }

    fn s3_h() -> RtGroup {
        let g = symmetric(3);
        let h = Subgrp::from_elements(&g, &[0, s3_transposition_12()]).unwrap();
        make_rtg(g, h).unwrap()
    }

    fn d4_s() -> RtGroup {
        let g = dihedral(4);
        let h = Subgrp::from_elements(&g, &[0, dihedral_s(4)]).unwrap();
        make_rtg(g, h).unwrap()
    }

    fn discrete(g: GroupTable) -> RtGroup {
        let t = g.trivial();
        make_rtg(g, t).unwrap()
    }

    #[test]
    fn continuous_function_dimensions() {
        assert_eq!(continuous_functions(&discrete(cyclic(5)), Which::Tau).dim(), 5);
        let r = s3_h();
        assert_eq!(continuous_functions(&r, Which::Tau).dim(), 3);
        assert_eq!(continuous_functions(&r, Which::Sigma).dim(), 1);
    }

    #[test]
    fn translations() {
        let r = s3_h();
        let g = r.group();
        let f = indicator(6, r.cone().set().iter());
        assert_eq!(translate(g, &f, 0, Side::Left), f);
        assert_eq!(translate(g, &f, 0, Side::Right), f);
        for a in 0..6 {
            assert!(is_continuous_fn(&translate(g, &f, a, Side::Right), r.tau()));
        }
        assert!(!is_continuous_fn(&translate(g, &f, s3_transposition_13(), Side::Left), r.tau()));
    }

    #[test]
    fn lc_examples() {
        let q = quaternion();
        let top = make_rtg(q.clone(), Subgrp::from_elements(&q, &[0, 4]).unwrap()).unwrap();
        assert!(lc_space(&top).same_as(&continuous_functions(&top, Which::Tau)));
        let r = s3_h();
        assert_eq!(lc_space(&r).dim(), 1);
        let d = d4_s();
        assert_eq!(lc_space(&d).dim(), 2);
        assert!(lc_space(&d).same_as(&continuous_functions(&d, Which::Sigma)));
    }

    #[test]
    fn d_space_examples() {
        let r = s3_h();
        let d = d_space(&r);
        // constant on both left and right cosets of H: {H, G∖H}
        assert_eq!(d.dim(), 2);
        assert!(d.contains(&constant(6, one())));
        let z = discrete(cyclic(4));
        assert_eq!(d_space(&z).dim(), 4);
    }

    #[test]
    fn ap_wap_is_c() {
        let r = s3_h();
        let a = ap_wap(&r);
        assert!(a.degenerate && a.dim() == 3);
        assert_eq!(ap_wap(&discrete(cyclic(4))).dim(), 4);
    }

    #[test]
    fn fix_examples() {
        let r = s3_h();
        let consts = FnSubspace::new(FnTag::Generated, Subspace::span(6, [constant(6, one())]));
        assert_eq!(fix(&r, &consts).unwrap(), r.group().whole());
        assert_eq!(fix(&r, &continuous_functions(&r, Which::Sigma)).unwrap(), r.n_of_g());
        let z = discrete(cyclic(4));
        assert_eq!(fix(&z, &continuous_functions(&z, Which::Tau)).unwrap(), z.group().trivial());
        assert!(matches!(fix(&r, &continuous_functions(&r, Which::Tau)), Err(Error::NotTranslationInvariant { .. })));
    }

    #[test]
    fn separation_examples() {
        let z = discrete(cyclic(4));
        assert!(separates_points_from_closed(&continuous_functions(&z, Which::Tau), z.tau()));
        let consts = FnSubspace::new(FnTag::Generated, Subspace::span(4, [constant(4, one())]));
        assert!(!separates_points_from_closed(&consts, z.tau()));
        let r = s3_h();
        assert!(!separates_points_from_closed(&lc_space(&r), r.tau()));
    }
}
