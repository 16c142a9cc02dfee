//! Measures on a finite instance, the action `f·μ`, convolution, and the
//! measure algebras `M_C`, `M_σ`, `M_W`, `𝓛_C`, `𝓛_G`.
//!
//! Borel sets are unions of τ-cells, so a measure is observed only through
//! its cell totals (its canonical form). Subspaces are solved over
//! canonical coordinates; their basis measures are spread uniformly inside
//! each cell.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions::{cell_indicators, check_continuous, is_continuous_fn, FnVec};
use crate::group::{ElemSet, GroupTable, Subgrp};
use crate::linalg::{nullspace, Subspace};
use crate::rtg::RtGroup;
use crate::scalar::{int, one, to_f64_pair, Cq, Quad};
use crate::topology::AlexandrovTopology;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Meas {
    weights: Vec<Cq>,
}

/// Cell structure of a topology: label per point, sizes, and one
/// representative per cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cells {
    pub label: Vec<usize>,
    pub size: Vec<usize>,
    pub reps: Vec<usize>,
}

impl Cells {
    pub fn of(t: &AlexandrovTopology) -> Self {
        let (label, count) = t.cells();
        let mut size = vec![0; count];
        let mut reps = vec![usize::MAX; count];
        for (x, &c) in label.iter().enumerate() {
            size[c] += 1;
            if reps[c] == usize::MAX {
                reps[c] = x;
            }
        }
        Cells { label, size, reps }
    }

    pub fn count(&self) -> usize {
        self.size.len()
    }

    pub fn points(&self) -> usize {
        self.label.len()
    }

    /// Label of the cell `C a` for cell `c` (right translates of cells are cells).
    pub fn right_shift(&self, g: &GroupTable, c: usize, a: usize) -> usize {
        self.label[g.mul(self.reps[c], a)]
    }
}

impl Meas {
    pub fn new(weights: Vec<Cq>) -> Self {
        Self { weights }
    }

    pub fn zero(n: usize) -> Self {
        Self { weights: vec![Cq::zero(); n] }
    }

    pub fn delta(n: usize, x: usize) -> Self {
        let mut m = Self::zero(n);
        m.weights[x] = one();
        m
    }

    /// Uniform probability measure on `s`.
    pub fn uniform_on(n: usize, s: ElemSet) -> Self {
        let w = one() / int(s.len() as i64);
        let mut m = Self::zero(n);
        for x in s.iter() {
            m.weights[x] = w.clone();
        }
        m
    }

    pub fn uniform(n: usize) -> Self {
        Self::uniform_on(n, ElemSet::full(n))
    }

    /// `f dλ` for the uniform Haar probability `λ`.
    pub fn with_density(f: &[Cq]) -> Self {
        let n = int(f.len() as i64);
        Self { weights: f.iter().map(|v| v.clone() / n.clone()).collect() }
    }

    pub fn weights(&self) -> &[Cq] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn total_mass(&self) -> Cq {
        self.weights.iter().fold(Cq::zero(), |a, w| a + w.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.weights.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Cq) -> Meas {
        Meas { weights: self.weights.iter().map(|w| w.clone() * c.clone()).collect() }
    }

    pub fn add(&self, other: &Meas) -> Meas {
        Meas { weights: self.weights.iter().zip(&other.weights).map(|(a, b)| a.clone() + b.clone()).collect() }
    }

    /// `μ_a(E) = μ(Ea)`.
    pub fn right_translate(&self, g: &GroupTable, a: usize) -> Meas {
        Meas { weights: (0..g.order()).map(|y| self.weights[g.mul(y, a)].clone()).collect() }
    }

    /// `(_a μ)(E) = μ(aE)`.
    pub fn left_translate(&self, g: &GroupTable, a: usize) -> Meas {
        Meas { weights: (0..g.order()).map(|y| self.weights[g.mul(a, y)].clone()).collect() }
    }

    /// Cell totals, in cell-label order.
    pub fn canonical(&self, cells: &Cells) -> Vec<Cq> {
        let mut out = vec![Cq::zero(); cells.count()];
        for (x, w) in self.weights.iter().enumerate() {
            if !w.is_zero() {
                out[cells.label[x]] = out[cells.label[x]].clone() + w.clone();
            }
        }
        out
    }

    pub fn radon_eq(&self, other: &Meas, cells: &Cells) -> bool {
        self.canonical(cells) == other.canonical(cells)
    }

    /// `Σ |μ(C)|` over cells, in floating point.
    pub fn total_variation(&self, cells: &Cells) -> f64 {
        self.canonical(cells)
            .iter()
            .map(|z| {
                let (re, im) = to_f64_pair(z);
                re.hypot(im)
            })
            .sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MeasJson::from(self)).expect("measure JSON serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: MeasJson = serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
        Ok(j.into())
    }
}

/// `{"weights": [[re_num, re_den, im_num, im_den], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeasJson {
    pub weights: Vec<Quad>,
}

impl From<&Meas> for MeasJson {
    fn from(m: &Meas) -> Self {
        MeasJson { weights: m.weights.iter().cloned().map(Quad).collect() }
    }
}

impl From<MeasJson> for Meas {
    fn from(j: MeasJson) -> Self {
        Meas { weights: j.weights.into_iter().map(|q| q.0).collect() }
    }
}

/// Spreads cell totals uniformly over each cell.
pub fn spread(cells: &Cells, canonical: &[Cq]) -> Meas {
    Meas { weights: cells.label.iter().map(|&c| canonical[c].clone() / int(cells.size[c] as i64)).collect() }
}

/// `(f·μ)(y) = Σ_x f(xy) μ(x)` without the continuity check.
pub fn act_unchecked(g: &GroupTable, f: &[Cq], mu: &Meas) -> FnVec {
    (0..g.order())
        .map(|y| {
            mu.weights
                .iter()
                .enumerate()
                .filter(|(_, w)| !w.is_zero())
                .fold(Cq::zero(), |acc, (x, w)| acc + f[g.mul(x, y)].clone() * w.clone())
        })
        .collect()
}

pub fn act(rtg: &RtGroup, f: &[Cq], mu: &Meas) -> Result<FnVec> {
    check_continuous(f, rtg.tau())?;
    Ok(act_unchecked(rtg.group(), f, mu))
}

/// Image of `μ ⊗ ν` under multiplication.
pub fn pushforward(g: &GroupTable, mu: &Meas, nu: &Meas) -> Meas {
    let mut out = Meas::zero(g.order());
    for (x, a) in mu.weights.iter().enumerate().filter(|(_, w)| !w.is_zero()) {
        for (y, b) in nu.weights.iter().enumerate().filter(|(_, w)| !w.is_zero()) {
            let z = g.mul(x, y);
            out.weights[z] = out.weights[z].clone() + a.clone() * b.clone();
        }
    }
    out
}

/// `f·μ` is τ-continuous for every cell indicator `f`, evaluated directly.
pub fn in_mc(rtg: &RtGroup, mu: &Meas) -> bool {
    cell_indicators(rtg.tau()).iter().all(|f| is_continuous_fn(&act_unchecked(rtg.group(), f, mu), rtg.tau()))
}

/// As [`in_mc`] with σ-continuity of `f·μ`.
pub fn in_msigma(rtg: &RtGroup, mu: &Meas) -> bool {
    cell_indicators(rtg.tau()).iter().all(|f| is_continuous_fn(&act_unchecked(rtg.group(), f, mu), rtg.sigma()))
}

/// `μ □ ν: f ↦ Σ_y (f·μ)(y) ν(y)`, defined for `μ ∈ M_C`.
pub fn convolve(rtg: &RtGroup, mu: &Meas, nu: &Meas) -> Result<Meas> {
    if !in_mc(rtg, mu) {
        return Err(Error::MuNotInMC);
    }
    Ok(pushforward(rtg.group(), mu, nu))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MeasTag {
    #[serde(rename = "M_C")]
    MC,
    #[serde(rename = "M_sigma")]
    MSigma,
    #[serde(rename = "M_W")]
    MW,
    #[serde(rename = "L_C")]
    LC,
    #[serde(rename = "L_G")]
    LG,
    #[serde(rename = "M")]
    All,
}

/// Subspace of measures modulo Radon equality, in canonical coordinates.
#[derive(Debug, Clone)]
pub struct MeasSubspace {
    pub tag: MeasTag,
    pub degenerate: bool,
    cells: Cells,
    space: Subspace,
}

impl MeasSubspace {
    fn new(tag: MeasTag, cells: Cells, space: Subspace) -> Self {
        Self { tag, degenerate: false, cells, space }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn cells(&self) -> &Cells {
        &self.cells
    }

    pub fn canonical_space(&self) -> &Subspace {
        &self.space
    }

    pub fn contains(&self, mu: &Meas) -> bool {
        self.space.contains(&mu.canonical(&self.cells))
    }

    pub fn basis(&self) -> Vec<Meas> {
        self.space.basis().iter().map(|c| spread(&self.cells, c)).collect()
    }

    pub fn same_as(&self, other: &MeasSubspace) -> bool {
        self.space.same_as(&other.space)
    }

    pub fn is_subspace_of(&self, other: &MeasSubspace) -> bool {
        self.space.is_subspace_of(&other.space)
    }

    /// Cell count: the dimension of `M(G)`.
    pub fn ambient(&self) -> usize {
        self.cells.count()
    }
}

fn unit_row(k: usize, plus: usize, minus: usize) -> Vec<i64> {
    let mut r = vec![0; k];
    r[plus] += 1;
    r[minus] -= 1;
    r
}

fn solve(k: usize, rows: BTreeSet<Vec<i64>>) -> Subspace {
    let rows = rows.into_iter().filter(|r| r.iter().any(|&v| v != 0)).map(|r| r.into_iter().map(int).collect()).collect();
    Subspace::span(k, nullspace(rows, k))
}

/// Rows expressing "`f·μ` is constant on each cell of `target`" for every
/// cell indicator `f` of τ, in canonical coordinates.
fn action_rows(rtg: &RtGroup, cells: &Cells, target: &AlexandrovTopology) -> BTreeSet<Vec<i64>> {
    let g = rtg.group();
    let k = cells.count();
    let mut rows = BTreeSet::new();
    for d in 0..k {
        for y in 0..g.order() {
            for y2 in target.minimal(y).ones().filter(|&y2| y2 != y) {
                let row: Vec<i64> = (0..k)
                    .map(|c| {
                        let a = (cells.label[g.mul(cells.reps[c], y)] == d) as i64;
                        let b = (cells.label[g.mul(cells.reps[c], y2)] == d) as i64;
                        a - b
                    })
                    .collect();
                rows.insert(row);
            }
        }
    }
    rows
}

pub fn all_measures(rtg: &RtGroup) -> MeasSubspace {
    let cells = Cells::of(rtg.tau());
    let k = cells.count();
    let id = (0..k).map(|i| {
        let mut v = vec![Cq::zero(); k];
        v[i] = one();
        v
    });
    MeasSubspace::new(MeasTag::All, cells, Subspace::span(k, id))
}

/// `M_C = {μ : f·μ ∈ C(G) for all f ∈ C(G)}`.
pub fn mc_subspace(rtg: &RtGroup) -> MeasSubspace {
    let cells = Cells::of(rtg.tau());
    let rows = action_rows(rtg, &cells, rtg.tau());
    let space = solve(cells.count(), rows);
    MeasSubspace::new(MeasTag::MC, cells, space)
}

/// `M_σ = {μ : f·μ ∈ C(G, σ) for all f ∈ C(G)}`.
pub fn msigma_subspace(rtg: &RtGroup) -> MeasSubspace {
    let cells = Cells::of(rtg.tau());
    let rows = action_rows(rtg, &cells, rtg.sigma());
    let space = solve(cells.count(), rows);
    MeasSubspace::new(MeasTag::MSigma, cells, space)
}

/// `M_W = M_C`: right orbits are finite, hence weakly compact.
pub fn mw_subspace(rtg: &RtGroup) -> MeasSubspace {
    let mut m = mc_subspace(rtg);
    m.tag = MeasTag::MW;
    m.degenerate = true;
    m
}

/// Rows for "`a ↦ μ(C s(a))` is constant on τ-cells" with `s` the identity
/// or inversion.
fn translate_rows(rtg: &RtGroup, cells: &Cells, invert: bool) -> BTreeSet<Vec<i64>> {
    let g = rtg.group();
    let t = rtg.tau();
    let k = cells.count();
    let s = |a: usize| if invert { g.inv(a) } else { a };
    let mut rows = BTreeSet::new();
    for c in 0..k {
        for a in 0..g.order() {
            for a2 in t.minimal(a).ones().filter(|&a2| a2 != a) {
                rows.insert(unit_row(k, cells.right_shift(g, c, s(a)), cells.right_shift(g, c, s(a2))));
            }
        }
    }
    rows
}

/// `𝓛_C = {μ ∈ M_C : a ↦ μ_a is norm continuous}`, `μ_a(E) = μ(Ea)`.
pub fn lc_measures(rtg: &RtGroup) -> MeasSubspace {
    let cells = Cells::of(rtg.tau());
    let mut rows = action_rows(rtg, &cells, rtg.tau());
    rows.extend(translate_rows(rtg, &cells, false));
    let space = solve(cells.count(), rows);
    MeasSubspace::new(MeasTag::LC, cells, space)
}

/// `𝓛_G = {f dλ : a ↦ R_{a^-1}(f dλ) is norm continuous}`.
pub fn lg_measures(rtg: &RtGroup) -> MeasSubspace {
    let cells = Cells::of(rtg.tau());
    let rows = translate_rows(rtg, &cells, true);
    let space = solve(cells.count(), rows);
    MeasSubspace::new(MeasTag::LG, cells, space)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HaarSolution {
    pub measure: Meas,
    /// Dimension of the space of right-invariant measures.
    pub uniqueness_dim: usize,
}

/// Solves `μ(Cg) = μ(C)` over cells `C` and elements `g`, normalised to
/// `μ(G) = 1`.
pub fn haar_solver(rtg: &RtGroup) -> Result<HaarSolution> {
    let g = rtg.group();
    let cells = Cells::of(rtg.tau());
    let k = cells.count();
    let mut rows = BTreeSet::new();
    for c in 0..k {
        for a in 0..g.order() {
            let d = cells.right_shift(g, c, a);
            if d != c {
                rows.insert(unit_row(k, d, c));
            }
        }
    }
    let space = solve(k, rows);
    let v = space.basis().iter().find(|v| !v.iter().fold(Cq::zero(), |a, x| a + x.clone()).is_zero()).ok_or(Error::NoSolution)?;
    let mass = v.iter().fold(Cq::zero(), |a, x| a + x.clone());
    let canonical: Vec<Cq> = v.iter().map(|x| x.clone() / mass.clone()).collect();
    Ok(HaarSolution { measure: spread(&cells, &canonical), uniqueness_dim: space.dim() })
}

/// Right invariance `μ(Cg) = μ(C)` on canonical forms.
pub fn is_right_invariant(rtg: &RtGroup, mu: &Meas) -> bool {
    let cells = Cells::of(rtg.tau());
    let g = rtg.group();
    (0..g.order()).all(|a| mu.right_translate(g, a).radon_eq(mu, &cells))
}

/// `_a μ` is Radon-equal to `μ` for every `a` in `s`.
pub fn is_left_invariant_under(rtg: &RtGroup, mu: &Meas, s: Subgrp) -> bool {
    let cells = Cells::of(rtg.tau());
    s.set().iter().all(|a| mu.left_translate(rtg.group(), a).radon_eq(mu, &cells))
}

/// Uniform probability on the subgroup `h`.
pub fn lambda_h(rtg: &RtGroup, h: ElemSet) -> Result<Meas> {
    if !rtg.group().is_subgroup(h) {
        return Err(Error::NotASubgroup(h.to_vec()));
    }
    Ok(Meas::uniform_on(rtg.order(), h))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslateCheck {
    pub all_translates_in_mc: bool,
    pub in_msigma: bool,
}

pub fn check_translates_in_mc(rtg: &RtGroup, mu: &Meas) -> Result<TranslateCheck> {
    if !in_mc(rtg, mu) {
        return Err(Error::MuNotInMC);
    }
    let g = rtg.group();
    let all = (0..g.order()).all(|a| in_mc(rtg, &mu.right_translate(g, a)));
    Ok(TranslateCheck { all_translates_in_mc: all, in_msigma: in_msigma(rtg, mu) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{constant, indicator};
    use crate::group::catalog::*;
    use crate::rtg::make_rtg;
    use crate::scalar::ratio;

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
    fn act_examples() {
        let r = s3_h();
        let mu = Meas::new(vec![int(1), int(2), int(0), int(-1), ratio(1, 2), int(3)]);
        assert_eq!(act(&r, &constant(6, one()), &mu).unwrap(), constant(6, mu.total_mass()));
        let f = indicator(6, r.cone().set().iter());
        assert_eq!(act(&r, &f, &Meas::delta(6, 0)).unwrap(), f);
        assert_eq!(act(&r, &f, &Meas::uniform(6)).unwrap(), constant(6, ratio(1, 3)));
        assert!(matches!(act(&r, &indicator(6, [0]), &mu), Err(Error::FNotContinuous { .. })));
    }

    #[test]
    fn convolution_examples() {
        let r = s3_h();
        let g = r.group();
        let cells = Cells::of(r.tau());
        let nu = Meas::new((0..6).map(|i| int(i as i64 + 1)).collect());
        assert!(convolve(&r, &Meas::delta(6, 0), &nu).unwrap().radon_eq(&nu, &cells));
        let a = s3_transposition_12();
        let dd = convolve(&r, &Meas::delta(6, a), &Meas::delta(6, a)).unwrap();
        assert_eq!(dd, Meas::delta(6, g.mul(a, a)));
        let u = convolve(&r, &Meas::uniform(6), &nu).unwrap();
        assert!(u.radon_eq(&Meas::uniform(6).scale(&nu.total_mass()), &cells));
        assert_eq!(convolve(&r, &Meas::delta(6, s3_three_cycle()), &nu), Err(Error::MuNotInMC));
    }

    #[test]
    fn mc_examples() {
        let q = quaternion();
        let top = make_rtg(q.clone(), Subgrp::from_elements(&q, &[0, 4]).unwrap()).unwrap();
        assert!(mc_subspace(&top).same_as(&all_measures(&top)));
        let r = s3_h();
        let mc = mc_subspace(&r);
        assert!(mc.contains(&Meas::delta(6, 0)));
        assert!(mc.contains(&Meas::delta(6, s3_transposition_12())));
        assert!(mc.contains(&Meas::uniform(6)));
        for b in mc.basis() {
            assert!(in_mc(&r, &b));
        }
        assert!(mc.dim() < 3);
    }

    #[test]
    fn msigma_examples() {
        let r = s3_h();
        let ms = msigma_subspace(&r);
        assert_eq!(ms.dim(), 1);
        assert!(ms.contains(&Meas::uniform(6)));
        let z = discrete(cyclic(4));
        assert!(msigma_subspace(&z).same_as(&mc_subspace(&z)));
    }

    #[test]
    fn lc_measure_examples() {
        let z = discrete(cyclic(4));
        assert!(lc_measures(&z).same_as(&mc_subspace(&z)));
        let r = s3_h();
        let l = lc_measures(&r);
        assert!(l.contains(&Meas::uniform(6)));
        // translating δ_e by a 3-cycle moves its mass to another cell
        assert!(!l.contains(&Meas::delta(6, 0)));
        assert!(mw_subspace(&r).degenerate);
        assert!(l.is_subspace_of(&mw_subspace(&r)));
    }

    #[test]
    fn haar_examples() {
        let z = discrete(cyclic(5));
        let h = haar_solver(&z).unwrap();
        assert_eq!(h.measure, Meas::uniform(5));
        assert_eq!(h.uniqueness_dim, 1);
        let r = s3_h();
        let h = haar_solver(&r).unwrap();
        assert_eq!(h.measure.canonical(&Cells::of(r.tau())), vec![ratio(1, 3); 3]);
        assert_eq!(h.uniqueness_dim, 1);
        let d = d4_s();
        let h = haar_solver(&d).unwrap();
        assert_eq!(h.measure.canonical(&Cells::of(d.tau())), vec![ratio(1, 4); 4]);
        assert!(is_left_invariant_under(&d, &h.measure, d.topological_center()));
        assert!(is_right_invariant(&d, &h.measure));
    }

    #[test]
    fn lambda_h_examples() {
        let d = d4_s();
        assert_eq!(lambda_h(&d, ElemSet::singleton(0)).unwrap(), Meas::delta(8, 0));
        assert_eq!(lambda_h(&d, ElemSet::full(8)).unwrap(), Meas::uniform(8));
        let center: ElemSet = [0, 2].into_iter().collect();
        assert!(mc_subspace(&d).contains(&lambda_h(&d, center).unwrap()));
        assert!(lambda_h(&d, [0, 1].into_iter().collect()).is_err());
    }

    #[test]
    fn translate_check_examples() {
        let r = s3_h();
        let u = check_translates_in_mc(&r, &Meas::uniform(6)).unwrap();
        assert!(u.all_translates_in_mc && u.in_msigma);
        let d = check_translates_in_mc(&r, &Meas::delta(6, 0)).unwrap();
        assert!(!d.all_translates_in_mc && !d.in_msigma);
    }

    #[test]
    fn measure_json() {
        let m = Meas::new(vec![ratio(1, 2), Cq::new(ratio(0, 1).re, ratio(-1, 3).re)]);
        let j = m.to_json();
        assert_eq!(j, r#"{"weights":[[1,2,0,1],[0,1,-1,3]]}"#);
        assert_eq!(Meas::from_json(&j).unwrap(), m);
    }
}
