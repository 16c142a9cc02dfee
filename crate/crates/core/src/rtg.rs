//! Finite right topological groups.
//!
//! Every right-invariant topology on a finite group is the right-coset
//! partition `U_x = Hx` of its cone subgroup `H = U_e`.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{
    format_set, normal_closure, normalizer, quotient_group, subgroup_as_group, ElemSet, GroupJson, GroupTable, Subgrp,
};
use crate::topology::{
    final_topology, is_continuous, is_open_map, point_set, product_topology, AlexandrovTopology, PointSet, TopologyJson,
};

/// σ, σσ and `N(G)` of an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaData {
    pub sigma: AlexandrovTopology,
    pub sigma_sigma: AlexandrovTopology,
    pub n_of_g: Subgrp,
}

#[derive(Debug, Clone)]
pub struct RtGroup {
    group: GroupTable,
    tau: AlexandrovTopology,
    cone: Subgrp,
    sigma: OnceLock<SigmaData>,
}

/// Topology with `U_x = Hx`.
pub fn coset_topology(g: &GroupTable, h: Subgrp) -> AlexandrovTopology {
    let n = g.order();
    AlexandrovTopology::from_minnbhd_unchecked((0..n).map(|x| point_set(n, h.set().iter().map(|k| g.mul(k, x)))).collect())
}

pub fn to_points(n: usize, s: ElemSet) -> PointSet {
    point_set(n, s.iter())
}

pub fn to_elems(p: &PointSet) -> ElemSet {
    p.ones().collect()
}

/// `(x, y) -> x^-1 y` on the product index `x * n + y`.
pub fn division_map(g: &GroupTable) -> Vec<usize> {
    let n = g.order();
    (0..n * n).map(|p| g.mul(g.inv(p / n), p % n)).collect()
}

/// Final topology of `t × t` under `(x, y) -> x^-1 y`.
pub fn sigma_of(g: &GroupTable, t: &AlexandrovTopology) -> AlexandrovTopology {
    final_topology(&product_topology(t, t), &division_map(g), g.order()).expect("division map is surjective")
}

pub fn make_rtg(g: GroupTable, h: Subgrp) -> Result<RtGroup> {
    if !g.is_subgroup(h.set()) {
        return Err(Error::NotASubgroup(h.to_vec()));
    }
    let tau = coset_topology(&g, h);
    Ok(RtGroup { group: g, tau, cone: h, sigma: OnceLock::new() })
}

pub fn make_rtg_from_topology(g: GroupTable, t: AlexandrovTopology) -> Result<RtGroup> {
    let n = g.order();
    if t.points() != n {
        return Err(Error::SizeMismatch { expected: n, got: t.points() });
    }
    for a in 0..n {
        for x in 0..n {
            for y in 0..n {
                if t.related(x, y) != t.related(g.mul(x, a), g.mul(y, a)) {
                    return Err(Error::NotRightInvariant { x, y, g: a });
                }
            }
        }
    }
    let cone_set = to_elems(t.minimal(g.identity()));
    let cone = Subgrp::new(&g, cone_set)?;
    Ok(RtGroup { group: g, tau: t, cone, sigma: OnceLock::new() })
}

impl RtGroup {
    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn tau(&self) -> &AlexandrovTopology {
        &self.tau
    }

    pub fn cone(&self) -> Subgrp {
        self.cone
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn label(&self) -> String {
        format!("{}/{}", self.group.label(), format_set(self.cone.set()))
    }

    pub fn is_topological(&self) -> bool {
        self.group.is_normal(self.cone.set())
    }

    /// Multiplication `τ × τ → τ` and inversion are continuous, checked on
    /// the product space.
    pub fn is_topological_by_definition(&self) -> bool {
        let g = &self.group;
        let n = g.order();
        let prod = product_topology(&self.tau, &self.tau);
        let mul: Vec<usize> = (0..n * n).map(|i| g.mul(i / n, i % n)).collect();
        let inv: Vec<usize> = (0..n).map(|x| g.inv(x)).collect();
        is_continuous(&mul, &prod, &self.tau) && is_continuous(&inv, &self.tau, &self.tau)
    }

    pub fn is_discrete(&self) -> bool {
        self.cone.is_trivial()
    }

    /// Labels of the τ-cells (right cosets of the cone).
    pub fn tau_cells(&self) -> (Vec<usize>, usize) {
        self.tau.cells()
    }

    pub fn left_translation(&self, a: usize) -> Vec<usize> {
        (0..self.order()).map(|x| self.group.mul(a, x)).collect()
    }

    /// `Λ(G)`: elements whose left translation is τ-continuous.
    pub fn topological_center(&self) -> Subgrp {
        let set = (0..self.order()).filter(|&a| is_continuous(&self.left_translation(a), &self.tau, &self.tau)).collect();
        Subgrp::new(&self.group, set).expect("the topological center is a subgroup")
    }

    pub fn topological_center_oracle(&self) -> Subgrp {
        normalizer(&self.group, self.cone)
    }

    /// `Λ(G)` is τ-dense.
    pub fn is_admissible(&self) -> bool {
        let lambda = to_points(self.order(), self.topological_center().set());
        self.tau.closure(&lambda) == self.tau.full_set()
    }

    pub fn sigma_data(&self) -> &SigmaData {
        self.sigma.get_or_init(|| {
            let sigma = sigma_of(&self.group, &self.tau);
            let sigma_sigma = sigma_of(&self.group, &sigma);
            let e = to_points(self.order(), ElemSet::singleton(self.group.identity()));
            let n_set = to_elems(&sigma_sigma.closure(&e));
            let n_of_g = Subgrp::new(&self.group, n_set).expect("σσ-closure of e is a subgroup");
            SigmaData { sigma, sigma_sigma, n_of_g }
        })
    }

    pub fn sigma(&self) -> &AlexandrovTopology {
        &self.sigma_data().sigma
    }

    pub fn n_of_g(&self) -> Subgrp {
        self.sigma_data().n_of_g
    }

    /// Closed-form σ: right cosets of the normal closure of the cone.
    pub fn sigma_oracle(&self) -> AlexandrovTopology {
        coset_topology(&self.group, normal_closure(&self.group, self.cone.set()))
    }

    pub fn n_of_g_oracle(&self) -> Subgrp {
        normal_closure(&self.group, self.cone.set())
    }

    pub fn is_closed_in(&self, t: &AlexandrovTopology, s: ElemSet) -> bool {
        let p = to_points(self.order(), s);
        t.closure(&p) == p
    }

    pub fn is_sigma_closed(&self, s: ElemSet) -> bool {
        self.is_closed_in(self.sigma(), s)
    }

    pub fn is_sigma_sigma_closed(&self, s: ElemSet) -> bool {
        self.is_closed_in(&self.sigma_data().sigma_sigma, s)
    }

    pub fn n_of(&self, l: Subgrp, variant: NVariant) -> Subgrp {
        n_of_in(&self.group, self.sigma(), l, variant)
    }

    /// The intrinsic σ of `(L, τ|_L)` agrees with σ restricted to `L`.
    pub fn induced_sigma_matches_intrinsic(&self, l: Subgrp) -> bool {
        let (sub, embed) = subgroup_as_group(&self.group, l);
        let intrinsic = sigma_of(&sub, &self.tau.induced(&embed));
        intrinsic == self.sigma().induced(&embed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&InstanceJson::from(self)).expect("instance JSON serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: InstanceJson = serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
        j.try_into()
    }
}

impl PartialEq for RtGroup {
    fn eq(&self, other: &Self) -> bool {
        self.group.table() == other.group.table() && self.cone == other.cone
    }
}

/// Which neighbourhoods of `e` define `N(L)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NVariant {
    /// `σ`-closed `C ⊆ L` with `e` in the σ-interior of `C` taken in `G`.
    NbhdsInG,
    /// Closedness and interior taken in `L` with the induced σ.
    NbhdsInL,
}

/// Largest closed subset of `a`.
fn closed_core(t: &AlexandrovTopology, a: &PointSet) -> PointSet {
    let mut outside = t.full_set();
    outside.difference_with(a);
    let mut core = t.full_set();
    core.difference_with(&t.up_closure(&outside));
    core
}

/// `N(L)` = ∩ of σ-closed sets `C ⊆ L` having `e` as an interior point.
///
/// `x ∉ N(L)` iff `e` is interior to the largest closed subset of `L∖{x}`.
/// An empty family leaves `L`.
pub fn n_of_in(g: &GroupTable, sigma: &AlexandrovTopology, l: Subgrp, variant: NVariant) -> Subgrp {
    let e = g.identity();
    let set = match variant {
        NVariant::NbhdsInG => {
            let n = g.order();
            l.set()
                .iter()
                .filter(|&x| {
                    let without = to_points(n, l.set().minus(ElemSet::singleton(x)));
                    !sigma.interior(&closed_core(sigma, &without)).contains(e)
                })
                .collect()
        }
        NVariant::NbhdsInL => {
            let embed = l.to_vec();
            let sub = sigma.induced(&embed);
            let k = embed.len();
            let e_local = embed.iter().position(|&y| y == e).expect("subgroup contains e");
            (0..k)
                .filter(|&i| {
                    let without = point_set(k, (0..k).filter(|&j| j != i));
                    !sub.interior(&closed_core(&sub, &without)).contains(e_local)
                })
                .map(|i| embed[i])
                .collect()
        }
    };
    Subgrp::new(g, set).expect("N(L) is a subgroup")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientFlags {
    pub k_sigma_closed: bool,
    pub k_sigma_sigma_closed: bool,
    pub quotient_hausdorff: bool,
    pub quotient_topological: bool,
    pub sigma_commutes: bool,
}

#[derive(Debug, Clone)]
pub struct QuotientRtg {
    pub rtg: RtGroup,
    pub projection: Vec<usize>,
    /// Final topology of σ under the projection.
    pub sigma_quotient: AlexandrovTopology,
    pub flags: QuotientFlags,
}

/// `G/K` with the τ-quotient topology, plus the σ-quotient and flags.
pub fn quotient_rtg(rtg: &RtGroup, k: Subgrp) -> Result<QuotientRtg> {
    let q = quotient_group(&rtg.group, k)?;
    let m = q.group.order();
    let tq = final_topology(&rtg.tau, &q.projection, m)?;
    let sigma_quotient = final_topology(rtg.sigma(), &q.projection, m)?;
    let qr = make_rtg_from_topology(q.group, tq)?;
    let flags = QuotientFlags {
        k_sigma_closed: rtg.is_sigma_closed(k.set()),
        k_sigma_sigma_closed: rtg.is_sigma_sigma_closed(k.set()),
        quotient_hausdorff: qr.tau.separation().is_hausdorff,
        quotient_topological: qr.is_topological(),
        sigma_commutes: *qr.sigma() == sigma_quotient,
    };
    Ok(QuotientRtg { rtg: qr, projection: q.projection, sigma_quotient, flags })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamiokaReport {
    pub admissible: bool,
    /// `(x, y) -> x^-1 y` is open from `τ × τ` onto σ.
    pub division_open: bool,
    /// `{U^-1 U}` over τ-neighbourhoods `U` of `e` is a σ-base at `e`.
    pub base_at_e: bool,
}

impl NamiokaReport {
    pub fn diagnostic(&self) -> bool {
        !self.admissible
    }
}

/// The smallest `U^-1 U` is `U_e^-1 U_e`; every larger one contains it, so
/// the family is a base at `e` iff that set equals the σ-minimal
/// neighbourhood of `e`.
pub fn check_namioka_base(rtg: &RtGroup) -> NamiokaReport {
    let g = &rtg.group;
    let n = g.order();
    let prod = product_topology(&rtg.tau, &rtg.tau);
    let division_open = is_open_map(&division_map(g), &prod, rtg.sigma());
    let ue = rtg.cone.set();
    let uu = g.product_set(g.inverse_set(ue), ue);
    let base_at_e = to_points(n, uu) == *rtg.sigma().minimal(g.identity());
    NamiokaReport { admissible: rtg.is_admissible(), division_open, base_at_e }
}

/// `{"group": ..., "cone": [...]}` or `{"group": ..., "topology": ...}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceJson {
    pub group: GroupJson,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cone: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub topology: Option<TopologyJson>,
}

impl From<&RtGroup> for InstanceJson {
    fn from(r: &RtGroup) -> Self {
        InstanceJson { group: GroupJson::from(&r.group), cone: Some(r.cone.to_vec()), topology: None }
    }
}

impl TryFrom<InstanceJson> for RtGroup {
    type Error = Error;

    fn try_from(j: InstanceJson) -> Result<Self> {
        let g = GroupTable::try_from(j.group)?;
        match (j.cone, j.topology) {
            (Some(c), None) => {
                if let Some(&x) = c.iter().find(|&&x| x >= g.order()) {
                    return Err(Error::Malformed(format!("cone element {x} out of range")));
                }
                let h = Subgrp::from_elements(&g, &c)?;
                make_rtg(g, h)
            }
            (None, Some(t)) => make_rtg_from_topology(g, t.try_into()?),
            _ => Err(Error::Malformed("instance needs exactly one of \"cone\" or \"topology\"".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog::*;
    use crate::topology::is_continuous_bruteforce;

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

    // {e, r^2, s, r^2 s}
    const D4_KLEIN: [usize; 4] = [0, 2, 4, 6];

    #[test]
    fn discrete_z4() {
        let g = cyclic(4);
        let r = make_rtg(g.clone(), g.trivial()).unwrap();
        assert!(r.is_topological() && r.is_discrete());
        assert!(r.tau().separation().is_discrete);
        assert_eq!(*r.sigma(), AlexandrovTopology::discrete(4));
        assert_eq!(r.n_of_g(), g.trivial());
    }

    #[test]
    fn s3_cone_has_three_cells_and_fails_left_continuity() {
        let r = s3_h();
        assert_eq!(r.tau_cells().1, 3);
        assert!(!r.is_topological());
        let l13 = r.left_translation(s3_transposition_13());
        assert!(!is_continuous(&l13, r.tau(), r.tau()));
        assert!(!is_continuous_bruteforce(&l13, r.tau(), r.tau()));
    }

    #[test]
    fn q8_central_cone_is_topological() {
        let g = quaternion();
        let h = Subgrp::from_elements(&g, &[0, 4]).unwrap();
        assert!(make_rtg(g, h).unwrap().is_topological());
    }

    #[test]
    fn rejects_non_subgroup_cone() {
        let g = symmetric(3);
        assert!(Subgrp::from_elements(&g, &[0, 1, 2]).is_err());
    }

    #[test]
    fn from_topology_reads_cone() {
        let r = s3_h();
        let back = make_rtg_from_topology(r.group().clone(), r.tau().clone()).unwrap();
        assert_eq!(back.cone(), r.cone());
        let z2 = cyclic(2);
        let d = make_rtg_from_topology(z2.clone(), AlexandrovTopology::discrete(2)).unwrap();
        assert!(d.cone().is_trivial());
        assert!(matches!(make_rtg_from_topology(z2, AlexandrovTopology::sierpinski()), Err(Error::NotRightInvariant { .. })));
    }

    #[test]
    fn topological_centers() {
        let r = s3_h();
        assert_eq!(r.topological_center().to_vec(), vec![0, s3_transposition_12()]);
        assert_eq!(r.topological_center(), r.topological_center_oracle());
        let d = d4_s();
        assert_eq!(d.topological_center().to_vec(), D4_KLEIN.to_vec());
        assert!(!r.is_admissible() && !d.is_admissible());
    }

    #[test]
    fn sigma_examples() {
        let r = s3_h();
        assert_eq!(*r.sigma(), AlexandrovTopology::indiscrete(6));
        assert_eq!(r.n_of_g(), r.group().whole());
        let d = d4_s();
        assert_eq!(*d.sigma(), d.sigma_oracle());
        assert_eq!(d.n_of_g().to_vec(), D4_KLEIN.to_vec());
        assert_eq!(d.sigma_data().sigma_sigma, *d.sigma());
    }

    #[test]
    fn s3_division_quotient_is_indiscrete() {
        let r = s3_h();
        let prod = product_topology(r.tau(), r.tau());
        assert_eq!(prod.points(), 36);
        let f = division_map(r.group());
        assert_eq!(final_topology(&prod, &f, 6).unwrap(), AlexandrovTopology::indiscrete(6));
    }

    #[test]
    fn n_of_examples() {
        for r in [s3_h(), d4_s()] {
            let g = r.group().clone();
            for v in [NVariant::NbhdsInG, NVariant::NbhdsInL] {
                assert_eq!(r.n_of(g.trivial(), v), g.trivial());
                assert_eq!(r.n_of(g.whole(), v), r.n_of_g_oracle());
            }
        }
    }

    #[test]
    fn quotient_examples() {
        let d = d4_s();
        let klein = Subgrp::from_elements(d.group(), &D4_KLEIN).unwrap();
        let q = quotient_rtg(&d, klein).unwrap();
        assert_eq!(q.rtg.order(), 2);
        assert!(q.flags.quotient_hausdorff && q.flags.quotient_topological && q.flags.k_sigma_closed);

        let r = s3_h();
        let a3 = Subgrp::from_elements(r.group(), &[0, 3, 4]).unwrap();
        let q = quotient_rtg(&r, a3).unwrap();
        assert_eq!(*q.rtg.tau(), AlexandrovTopology::indiscrete(2));
        assert!(!q.flags.quotient_hausdorff && !q.flags.k_sigma_closed && q.flags.quotient_topological);
        assert!(q.flags.sigma_commutes);

        let q = quotient_rtg(&r, r.group().trivial()).unwrap();
        assert_eq!(*q.rtg.tau(), *r.tau());
        assert!(matches!(quotient_rtg(&r, r.cone()), Err(Error::NotNormal { .. })));
    }

    #[test]
    fn namioka_examples() {
        let g = cyclic(5);
        let r = make_rtg(g.clone(), g.trivial()).unwrap();
        let rep = check_namioka_base(&r);
        assert!(rep.admissible && rep.division_open && rep.base_at_e);
        let q = quaternion();
        let r = make_rtg(q.clone(), Subgrp::from_elements(&q, &[0, 4]).unwrap()).unwrap();
        let rep = check_namioka_base(&r);
        assert!(rep.division_open && rep.base_at_e);
        let rep = check_namioka_base(&s3_h());
        assert!(rep.diagnostic() && !rep.base_at_e);
    }

    #[test]
    fn instance_json() {
        let r = s3_h();
        let back = RtGroup::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        let with_top = format!(r#"{{"group":{},"topology":{}}}"#, r.group().to_json(), r.tau().to_json());
        assert_eq!(RtGroup::from_json(&with_top).unwrap(), r);
        assert!(RtGroup::from_json(r#"{"group":{"order":1,"mul":[[0]]}}"#).is_err());
    }
}
