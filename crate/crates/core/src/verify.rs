//! Property registry and catalog-wide verification runs.
//!
//! Every property runs once per instance and yields a [`Record`]. Ids are
//! stable; `thm-`, `prop-`, `lem-`, `cor-` prefixes name the statement a
//! property checks.

use std::cell::{OnceCell, RefCell};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::functions::{
    ap_wap, cell_indicators, continuous_functions, d_space, fix, generated_algebra, indicator, lc_space, left_invariant_under,
    right_translate_map_continuous, separation_failure, translate, FnSubspace, FnVec, Side, Which,
};
use crate::generators::{
    cyclic_multipliers, enumerate_instances, schreier_action_formula, schreier_product, sheet_function, sheet_measure,
};
use crate::group::catalog::cyclic;
use crate::group::{format_set, homomorphisms, normal_subgroups, subgroups, ElemSet, Subgrp};
use crate::haar::{
    construct_haar_cached, find_normal_systems, haar_from_orbit_average, verify_uniqueness, HaarCache, Mode, NormalSystem,
};
use crate::measures::{
    act_unchecked, all_measures, haar_solver, in_mc, in_msigma, is_left_invariant_under, is_right_invariant, lambda_h,
    lc_measures, lg_measures, mc_subspace, msigma_subspace, mw_subspace, pushforward, Cells, HaarSolution, Meas, MeasSubspace,
};
use crate::rtg::{check_namioka_base, quotient_rtg, InstanceJson, NVariant, RtGroup};
use crate::scalar::{int, is_nonneg_real, one, ratio, Cq};
use crate::topology::{final_topology, is_continuous, is_open_map, product_topology, AlexandrovTopology};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Sigma,
    Functions,
    Measures,
    Haar,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Sigma => "sigma",
            Suite::Functions => "functions",
            Suite::Measures => "measures",
            Suite::Haar => "haar",
        }
    }

    fn includes(self, s: Suite) -> bool {
        self == Suite::All || self == s
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Suite::All, Suite::Sigma, Suite::Functions, Suite::Measures, Suite::Haar]
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Malformed(format!("unknown suite `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    DegeneratePass,
    Diagnostic,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::DegeneratePass => "degenerate-pass",
            Status::Diagnostic => "diagnostic",
        }
    }
}

/// Deliberate corruption of computed data on the first instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    SigmaBit,
    HaarWeight,
}

impl FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sigma-bit" => Ok(Fault::SigmaBit),
            "haar-weight" => Ok(Fault::HaarWeight),
            _ => Err(Error::Malformed(format!("unknown fault `{s}`"))),
        }
    }
}

/// Enough to replay a failure: the instance itself plus what went wrong.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Witness {
    pub instance: String,
    pub property: String,
    pub replay: InstanceJson,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Record {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceReport {
    pub index: usize,
    pub instance: String,
    pub records: Vec<Record>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub instances: usize,
    pub records: usize,
    pub pass: usize,
    pub fail: usize,
    pub degenerate_pass: usize,
    pub diagnostic: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: Suite,
    pub max_order: usize,
    pub instances: Vec<InstanceReport>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(suite: Suite, max_order: usize, instances: Vec<InstanceReport>) -> Self {
        let mut s = Summary { instances: instances.len(), ..Summary::default() };
        for r in instances.iter().flat_map(|i| &i.records) {
            s.records += 1;
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::DegeneratePass => s.degenerate_pass += 1,
                Status::Diagnostic => s.diagnostic += 1,
            }
        }
        VerificationReport { suite, max_order, instances, summary: s }
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.instances.iter().flat_map(|i| &i.records).filter(|r| r.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

enum Outcome {
    Pass,
    Fail(String),
    Degenerate(String),
    Diagnostic(String),
}

fn check(ok: bool, detail: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(detail())
    }
}

/// First failure in a sequence of checks.
fn all_of(items: impl IntoIterator<Item = Outcome>) -> Outcome {
    for o in items {
        if let Outcome::Fail(_) = o {
            return o;
        }
    }
    Outcome::Pass
}

pub struct Property {
    pub id: &'static str,
    pub suite: Suite,
    run: fn(&Ctx) -> Outcome,
}

/// One instance with lazily computed shared data.
struct Ctx<'a> {
    rtg: &'a RtGroup,
    index: usize,
    fault: Option<Fault>,
    normals: OnceCell<Vec<Subgrp>>,
    subs: OnceCell<Vec<Subgrp>>,
    cells: OnceCell<Cells>,
    mc: OnceCell<MeasSubspace>,
    msigma: OnceCell<MeasSubspace>,
    lc: OnceCell<MeasSubspace>,
    lg: OnceCell<MeasSubspace>,
    c_tau: OnceCell<FnSubspace>,
    c_sigma: OnceCell<FnSubspace>,
    lc_fns: OnceCell<FnSubspace>,
    haar: OnceCell<std::result::Result<HaarSolution, Error>>,
    systems: OnceCell<Vec<NormalSystem>>,
    haar_cache: RefCell<HaarCache>,
}

impl<'a> Ctx<'a> {
    fn new(rtg: &'a RtGroup, index: usize, fault: Option<Fault>) -> Self {
        Ctx {
            rtg,
            index,
            fault,
            normals: OnceCell::new(),
            subs: OnceCell::new(),
            cells: OnceCell::new(),
            mc: OnceCell::new(),
            msigma: OnceCell::new(),
            lc: OnceCell::new(),
            lg: OnceCell::new(),
            c_tau: OnceCell::new(),
            c_sigma: OnceCell::new(),
            lc_fns: OnceCell::new(),
            haar: OnceCell::new(),
            systems: OnceCell::new(),
            haar_cache: RefCell::default(),
        }
    }

    fn n(&self) -> usize {
        self.rtg.order()
    }

    fn normals(&self) -> &[Subgrp] {
        self.normals.get_or_init(|| normal_subgroups(self.rtg.group()).expect("catalog orders are bounded"))
    }

    fn subs(&self) -> &[Subgrp] {
        self.subs.get_or_init(|| subgroups(self.rtg.group()).expect("catalog orders are bounded"))
    }

    fn cells(&self) -> &Cells {
        self.cells.get_or_init(|| Cells::of(self.rtg.tau()))
    }

    fn mc(&self) -> &MeasSubspace {
        self.mc.get_or_init(|| mc_subspace(self.rtg))
    }

    fn msigma(&self) -> &MeasSubspace {
        self.msigma.get_or_init(|| msigma_subspace(self.rtg))
    }

    fn lc(&self) -> &MeasSubspace {
        self.lc.get_or_init(|| lc_measures(self.rtg))
    }

    fn lg(&self) -> &MeasSubspace {
        self.lg.get_or_init(|| lg_measures(self.rtg))
    }

    fn c_tau(&self) -> &FnSubspace {
        self.c_tau.get_or_init(|| continuous_functions(self.rtg, Which::Tau))
    }

    fn c_sigma(&self) -> &FnSubspace {
        self.c_sigma.get_or_init(|| continuous_functions(self.rtg, Which::Sigma))
    }

    fn lc_fns(&self) -> &FnSubspace {
        self.lc_fns.get_or_init(|| lc_space(self.rtg))
    }

    fn haar(&self) -> &std::result::Result<HaarSolution, Error> {
        self.haar.get_or_init(|| {
            let mut h = haar_solver(self.rtg)?;
            if self.fault == Some(Fault::HaarWeight) {
                let mut w = h.measure.weights().to_vec();
                w[0] = w[0].clone() + ratio(1, 7);
                h.measure = Meas::new(w);
            }
            Ok(h)
        })
    }

    /// Certified strict systems followed by certified relaxed ones.
    fn systems(&self) -> &[NormalSystem] {
        self.systems.get_or_init(|| {
            let mut out = Vec::new();
            for mode in [Mode::Strict, Mode::Relaxed] {
                out.extend(find_normal_systems(self.rtg, mode, Execution::Sequential).expect("catalog orders are bounded"));
            }
            out
        })
    }

    fn is_tau_hausdorff(&self) -> bool {
        self.rtg.tau().separation().is_hausdorff
    }
}

fn set(s: Subgrp) -> String {
    format_set(s.set())
}

fn chain_label(sys: &NormalSystem) -> String {
    let parts: Vec<String> = sys.chain.iter().map(|&s| set(s)).collect();
    format!("{:?} [{}]", sys.mode, parts.join(" > "))
}

fn meas_label(m: &Meas) -> String {
    let parts: Vec<String> = m.weights().iter().map(crate::scalar::display).collect();
    format!("[{}]", parts.join(", "))
}

/// Left cosets `x S` labelled by first appearance.
fn left_coset_labels(rtg: &RtGroup, s: ElemSet) -> Vec<usize> {
    let g = rtg.group();
    let n = g.order();
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for x in 0..n {
        if label[x] == usize::MAX {
            for y in g.left_mul_set(x, s).iter() {
                label[y] = next;
            }
            next += 1;
        }
    }
    label
}

// ---------------------------------------------------------------- sigma

fn sigma_oracle(c: &Ctx) -> Outcome {
    let mut rows = c.rtg.sigma().rows().to_vec();
    if c.fault == Some(Fault::SigmaBit) && c.n() > 1 {
        rows[0].toggle(1);
    }
    let oracle = c.rtg.sigma_oracle();
    match (0..c.n()).find(|&x| rows[x] != *oracle.minimal(x)) {
        None => Outcome::Pass,
        Some(x) => Outcome::Fail(format!(
            "sigma neighbourhood of {x}: computed {:?}, normal-closure cosets give {:?}",
            rows[x].ones().collect::<Vec<_>>(),
            oracle.minimal(x).ones().collect::<Vec<_>>()
        )),
    }
}

fn n_of_g(c: &Ctx) -> Outcome {
    let whole = c.rtg.group().whole();
    let a = c.rtg.n_of(whole, NVariant::NbhdsInG);
    let b = c.rtg.n_of(whole, NVariant::NbhdsInL);
    let d = c.rtg.n_of_g();
    let o = c.rtg.n_of_g_oracle();
    check(a == d && b == d && d == o, || {
        format!("n_of {} / {}, sigma-sigma closure {}, normal closure {}", set(a), set(b), set(d), set(o))
    })
}

fn lambda_oracle(c: &Ctx) -> Outcome {
    let a = c.rtg.topological_center();
    let b = c.rtg.topological_center_oracle();
    check(a == b, || format!("continuous left translations {}, normalizer {}", set(a), set(b)))
}

fn sigma_coarser(c: &Ctx) -> Outcome {
    check(c.rtg.tau().is_finer_or_equal(c.rtg.sigma()), || "sigma has an open set that is not tau-open".into())
}

fn sigma_equals_tau(c: &Ctx) -> Outcome {
    let eq = c.rtg.sigma() == c.rtg.tau();
    let top = c.rtg.is_topological_by_definition();
    let normal = c.rtg.group().is_normal(c.rtg.cone().set());
    check(eq == top && top == normal, || format!("sigma = tau: {eq}, topological: {top}, cone normal: {normal}"))
}

fn sigma_continuity(c: &Ctx) -> Outcome {
    let g = c.rtg.group();
    let n = c.n();
    let s = c.rtg.sigma();
    let inv: Vec<usize> = (0..n).map(|x| g.inv(x)).collect();
    if !is_continuous(&inv, s, s) {
        return Outcome::Fail("inversion is not sigma-continuous".into());
    }
    for a in 0..n {
        let left: Vec<usize> = (0..n).map(|x| g.mul(a, x)).collect();
        let right: Vec<usize> = (0..n).map(|x| g.mul(x, a)).collect();
        if !is_continuous(&left, s, s) || !is_continuous(&right, s, s) {
            return Outcome::Fail(format!("translation by {a} is not sigma-continuous"));
        }
    }
    Outcome::Pass
}

fn sigma_t1(c: &Ctx) -> Outcome {
    let t1 = c.rtg.sigma().separation().is_t1;
    let h = c.is_tau_hausdorff();
    check(t1 == h, || format!("sigma T1: {t1}, tau Hausdorff: {h}"))
}

fn sigma_hausdorff(c: &Ctx) -> Outcome {
    let sh = c.rtg.sigma().separation().is_hausdorff;
    let top = c.rtg.is_topological_by_definition();
    if c.is_tau_hausdorff() {
        check(sh == top, || format!("sigma Hausdorff: {sh}, topological: {top}"))
    } else {
        Outcome::Diagnostic(format!("tau not Hausdorff; sigma Hausdorff: {sh}, topological: {top}"))
    }
}

fn division_map_open(c: &Ctx) -> Outcome {
    let r = check_namioka_base(c.rtg);
    if r.admissible {
        check(r.division_open && r.base_at_e, || {
            format!("division map open: {}, U^-1 U base at e: {}", r.division_open, r.base_at_e)
        })
    } else {
        Outcome::Diagnostic(format!("not admissible; division map open: {}, U^-1 U base at e: {}", r.division_open, r.base_at_e))
    }
}

fn quotient_hausdorff(c: &Ctx) -> Outcome {
    all_of(c.normals().iter().map(|&k| {
        let q = quotient_rtg(c.rtg, k).expect("normal subgroup");
        check(q.flags.quotient_hausdorff == q.flags.k_sigma_closed, || {
            format!(
                "K = {}: quotient Hausdorff {}, K sigma-closed {}",
                set(k),
                q.flags.quotient_hausdorff,
                q.flags.k_sigma_closed
            )
        })
    }))
}

fn quotient_sigma_sigma(c: &Ctx) -> Outcome {
    all_of(c.normals().iter().map(|&k| {
        let q = quotient_rtg(c.rtg, k).expect("normal subgroup");
        let ht = q.flags.quotient_hausdorff && q.rtg.is_topological_by_definition();
        check(ht == q.flags.k_sigma_sigma_closed, || {
            format!("K = {}: Hausdorff topological quotient {ht}, K sigma-sigma-closed {}", set(k), q.flags.k_sigma_sigma_closed)
        })
    }))
}

fn quotient_sigma_sigma_literal(c: &Ctx) -> Outcome {
    let bad: Vec<String> = c
        .normals()
        .iter()
        .filter_map(|&k| {
            let q = quotient_rtg(c.rtg, k).expect("normal subgroup");
            (q.rtg.is_topological_by_definition() != q.flags.k_sigma_sigma_closed).then(|| set(k))
        })
        .collect();
    if bad.is_empty() {
        Outcome::Diagnostic("topological quotient iff sigma-sigma-closed holds for every normal K".into())
    } else {
        Outcome::Diagnostic(format!("topological quotient iff sigma-sigma-closed fails for K in {}", bad.join(" ")))
    }
}

fn quotient_sigma_commutes(c: &Ctx) -> Outcome {
    all_of(c.normals().iter().map(|&k| {
        let q = quotient_rtg(c.rtg, k).expect("normal subgroup");
        let same = *q.rtg.tau() == q.sigma_quotient;
        let top = q.rtg.is_topological_by_definition();
        check(q.flags.sigma_commutes && same == top, || {
            format!(
                "K = {}: sigma of quotient = quotient of sigma {}, tau-quotient = sigma-quotient {same}, topological {top}",
                set(k),
                q.flags.sigma_commutes
            )
        })
    }))
}

fn hom_factorization(c: &Ctx) -> Outcome {
    let g = c.rtg.group();
    let t = c.rtg.tau();
    let n = c.n();
    let nn = c.rtg.n_of_g();
    for target in [cyclic(2), cyclic(3)] {
        for hom in homomorphisms(g, &target) {
            let continuous = (0..n).all(|x| t.minimal(x).ones().all(|y| hom[y] == hom[x]));
            if continuous {
                if let Some(x) = nn.set().iter().find(|&x| hom[x] != target.identity()) {
                    return Outcome::Fail(format!("continuous hom into {} moves {x} in N(G)", target.label()));
                }
            }
        }
    }
    Outcome::Pass
}

fn open_maps(c: &Ctx) -> Outcome {
    let g = c.rtg.group();
    let mut maps: Vec<(String, Vec<usize>, usize)> = Vec::new();
    for &k in c.normals() {
        let q = quotient_rtg(c.rtg, k).expect("normal subgroup");
        maps.push((format!("G -> G/{}", set(k)), q.projection.clone(), q.rtg.order()));
    }
    for target in [cyclic(2), cyclic(3)] {
        for hom in homomorphisms(g, &target) {
            if (0..target.order()).all(|y| hom.contains(&y)) {
                maps.push((format!("hom into {}", target.label()), hom, target.order()));
            }
        }
    }
    let mut checked = 0;
    for (name, f, m) in maps {
        let target = AlexandrovTopology::discrete(m);
        if is_continuous(&f, c.rtg.tau(), &target) {
            checked += 1;
            if !is_open_map(&f, c.rtg.tau(), &target) {
                return Outcome::Fail(format!("{name} is continuous but not open"));
            }
        }
    }
    Outcome::Degenerate(format!("{checked} continuous surjections onto discrete targets, all open"))
}

fn hausdorff_topological(c: &Ctx) -> Outcome {
    if c.is_tau_hausdorff() {
        check(c.rtg.is_topological_by_definition(), || "Hausdorff instance is not topological".into())
    } else {
        Outcome::Degenerate("tau not Hausdorff".into())
    }
}

/// The first expected property of `N(L)` that fails for the subgroup `L`, if any.
fn n_of_l_failure(c: &Ctx, l: Subgrp, nl: Subgrp) -> Option<String> {
    let g = c.rtg.group();
    let sigma = c.rtg.sigma();
    let embed = l.to_vec();
    // 1. N(L) normal in L and closed in (L, σ)
    if !embed.iter().all(|&y| g.conjugate_set(nl.set(), y) == nl.set()) {
        return Some("N(L) not normal in L".into());
    }
    let local: Vec<usize> = nl.set().iter().map(|x| embed.iter().position(|&y| y == x).expect("N(L) ⊆ L")).collect();
    let sub_sigma = sigma.induced(&embed);
    let p = crate::topology::point_set(embed.len(), local.iter().copied());
    if sub_sigma.closure(&p) != p {
        return Some("N(L) not closed in (L, sigma)".into());
    }
    // 2. L/N(L): τ-quotient = σ-quotient, topological
    let gl = left_coset_labels(c.rtg, nl.set());
    let mut lq_label: Vec<usize> = Vec::new();
    let mut lq_index = vec![usize::MAX; c.n()];
    for &y in &embed {
        if lq_index[gl[y]] == usize::MAX {
            lq_index[gl[y]] = lq_label.len();
            lq_label.push(gl[y]);
        }
    }
    let proj_l: Vec<usize> = embed.iter().map(|&y| lq_index[gl[y]]).collect();
    let m = lq_label.len();
    let lt = final_topology(&c.rtg.tau().induced(&embed), &proj_l, m).expect("surjective");
    let ls = final_topology(&sub_sigma, &proj_l, m).expect("surjective");
    if lt != ls {
        return Some("tau- and sigma-quotients of L/N(L) differ".into());
    }
    let rep: Vec<usize> = (0..m).map(|i| embed[proj_l.iter().position(|&q| q == i).expect("surjective")]).collect();
    let lmul: Vec<usize> =
        (0..m * m).map(|i| proj_l[embed.iter().position(|&z| z == g.mul(rep[i / m], rep[i % m])).expect("L closed")]).collect();
    let linv: Vec<usize> = (0..m).map(|i| proj_l[embed.iter().position(|&z| z == g.inv(rep[i])).expect("L closed")]).collect();
    if !is_continuous(&lmul, &product_topology(&lt, &lt), &lt) || !is_continuous(&linv, &lt, &lt) {
        return Some("L/N(L) is not a topological group".into());
    }
    // 3. G/N(L) × L/N(L) → G/N(L)
    let k = gl.iter().max().map_or(0, |x| x + 1);
    let gt = final_topology(c.rtg.tau(), &gl, k).expect("surjective");
    let grep: Vec<usize> = (0..k).map(|i| gl.iter().position(|&q| q == i).expect("surjective")).collect();
    let action: Vec<usize> = (0..k * m).map(|i| gl[g.mul(grep[i / m], rep[i % m])]).collect();
    if !is_continuous(&action, &product_topology(&gt, &lt), &gt) {
        return Some("action G/N(L) x L/N(L) is not jointly continuous".into());
    }
    None
}

fn n_of_l_whole(c: &Ctx) -> Outcome {
    let whole = c.rtg.group().whole();
    let nn = c.rtg.n_of(whole, NVariant::NbhdsInG);
    match n_of_l_failure(c, whole, nn) {
        None => {
            let q = quotient_rtg(c.rtg, nn).expect("N(G) is normal");
            check(q.rtg.is_topological_by_definition(), || "G/N(G) is not topological".into())
        }
        Some(why) => Outcome::Fail(format!("L = G: {why}")),
    }
}

fn n_of_l_subgroups(c: &Ctx) -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for &l in c.subs().iter().filter(|l| c.rtg.is_sigma_closed(l.set())) {
        for variant in [NVariant::NbhdsInG, NVariant::NbhdsInL] {
            count += 1;
            if let Some(why) = n_of_l_failure(c, l, c.rtg.n_of(l, variant)) {
                bad.push(format!("L = {} ({variant:?}): {why}", set(l)));
            }
        }
    }
    let hyp = c.is_tau_hausdorff() && c.rtg.is_admissible();
    match (hyp, bad.is_empty()) {
        (true, true) => Outcome::Pass,
        (true, false) => Outcome::Fail(bad.join("; ")),
        (false, true) => Outcome::Diagnostic(format!("tau not Hausdorff; conclusions hold for all {count} (L, variant) pairs")),
        (false, false) => Outcome::Diagnostic(format!("tau not Hausdorff; {} of {count} fail: {}", bad.len(), bad.join("; "))),
    }
}

fn n_of_l_variants(c: &Ctx) -> Outcome {
    let diff: Vec<String> = c
        .subs()
        .iter()
        .filter_map(|&l| {
            let a = c.rtg.n_of(l, NVariant::NbhdsInG);
            let b = c.rtg.n_of(l, NVariant::NbhdsInL);
            (a != b).then(|| format!("L = {}: {} vs {}", set(l), set(a), set(b)))
        })
        .collect();
    if diff.is_empty() {
        Outcome::Diagnostic(format!("variants agree on all {} subgroups", c.subs().len()))
    } else {
        Outcome::Diagnostic(format!("variants differ: {}", diff.join("; ")))
    }
}

fn induced_vs_intrinsic(c: &Ctx) -> Outcome {
    let diff: Vec<String> = c.subs().iter().filter(|&&l| !c.rtg.induced_sigma_matches_intrinsic(l)).map(|&l| set(l)).collect();
    if diff.is_empty() {
        Outcome::Diagnostic(format!("induced and intrinsic sigma agree on all {} subgroups", c.subs().len()))
    } else {
        Outcome::Diagnostic(format!("intrinsic sigma strictly finer on {}", diff.join(" ")))
    }
}

// ------------------------------------------------------------ functions

fn lc_contains_c_sigma(c: &Ctx) -> Outcome {
    check(c.c_sigma().is_subspace_of(c.lc_fns()), || "a sigma-continuous function is not in LC".into())
}

fn lc_separation(c: &Ctx) -> Outcome {
    let fail = separation_failure(c.lc_fns(), c.rtg.tau());
    let top = c.rtg.is_topological_by_definition();
    check(fail.is_none() == top, || match fail {
        Some((x, y)) => format!("LC cannot separate {x} from the closed set containing {y}, yet topological"),
        None => "LC separates points from closed sets, yet not topological".into(),
    })
}

fn lc_contains_wap(c: &Ctx) -> Outcome {
    if !c.rtg.is_admissible() {
        return Outcome::Degenerate("not admissible".into());
    }
    check(ap_wap(c.rtg).is_subspace_of(c.lc_fns()), || "WAP not contained in LC".into())
}

fn lc_equals_c_sigma(c: &Ctx) -> Outcome {
    check(c.lc_fns().same_as(c.c_sigma()), || format!("dim LC = {}, dim C(sigma) = {}", c.lc_fns().dim(), c.c_sigma().dim()))
}

fn fix_c_sigma(c: &Ctx) -> Outcome {
    match fix(c.rtg, c.c_sigma()) {
        Ok(f) => check(f == c.rtg.n_of_g(), || format!("Fix = {}, N(G) = {}", set(f), set(c.rtg.n_of_g()))),
        Err(e) => Outcome::Fail(e.to_string()),
    }
}

fn generated_algebras(c: &Ctx) -> Vec<(String, FnSubspace)> {
    let g = c.rtg.group();
    let n = c.n();
    let mut out = vec![("C(sigma)".to_string(), c.c_sigma().clone()), ("LC".to_string(), c.lc_fns().clone())];
    out.push(("<1_H>".into(), generated_algebra(g, &indicator(n, c.rtg.cone().set().iter()))));
    for &k in c.normals() {
        out.push((format!("<1_{}>", set(k)), generated_algebra(g, &indicator(n, k.set().iter()))));
    }
    // a generic continuous function: distinct value per τ-cell
    let (label, _) = c.rtg.tau_cells();
    let f: FnVec = label.iter().map(|&l| int(l as i64 + 1)).collect();
    out.push(("<generic>".into(), generated_algebra(g, &f)));
    out.into_iter().filter(|(_, a)| a.is_subspace_of(c.c_tau())).collect()
}

fn fix_generated_algebras(c: &Ctx) -> Outcome {
    let g = c.rtg.group();
    for (name, a) in generated_algebras(c) {
        let f = match fix(c.rtg, &a) {
            Ok(f) => f,
            Err(Error::NotTranslationInvariant { .. }) if name == "LC" => continue,
            Err(e) => return Outcome::Fail(format!("{name}: {e}")),
        };
        if !g.is_normal(f.set()) {
            return Outcome::Fail(format!("{name}: Fix = {} not normal", set(f)));
        }
        if !a.same_as(&left_invariant_under(c.rtg, f)) {
            return Outcome::Fail(format!("{name}: not recovered from Fix = {}", set(f)));
        }
        let q = quotient_rtg(c.rtg, f).expect("normal");
        if !(q.flags.quotient_hausdorff && q.rtg.is_topological_by_definition() && q.flags.k_sigma_closed) {
            return Outcome::Fail(format!("{name}: G/Fix not a Hausdorff topological group or Fix not sigma-closed"));
        }
    }
    Outcome::Pass
}

fn ap_wap_degenerate(c: &Ctx) -> Outcome {
    if ap_wap(c.rtg).same_as(c.c_tau()) {
        Outcome::Degenerate("AP = WAP = C(G): right orbits are finite".into())
    } else {
        Outcome::Fail("AP/WAP differs from C(G)".into())
    }
}

fn d_right_translates(c: &Ctx) -> Outcome {
    let d = d_space(c.rtg);
    check(d.basis().iter().all(|f| right_translate_map_continuous(c.rtg, f)), || {
        "a function in C(G) ∩ D(G) has a discontinuous right-translate map".into()
    })
}

// ------------------------------------------------------------- measures

fn definition_oracle(c: &Ctx, space: &MeasSubspace, pred: fn(&RtGroup, &Meas) -> bool, name: &str) -> Outcome {
    let n = c.n();
    if let Some(i) = space.basis().iter().position(|m| !pred(c.rtg, m)) {
        return Outcome::Fail(format!("basis measure {i} of {name} fails the definition"));
    }
    let cells = c.cells();
    for cell in 0..cells.count() {
        let d = Meas::delta(n, cells.reps[cell]);
        if pred(c.rtg, &d) != space.contains(&d) {
            return Outcome::Fail(format!("point mass at {} disagrees with {name}", cells.reps[cell]));
        }
    }
    Outcome::Pass
}

fn mc_definition(c: &Ctx) -> Outcome {
    definition_oracle(c, c.mc(), in_mc, "M_C")
}

fn msigma_definition(c: &Ctx) -> Outcome {
    definition_oracle(c, c.msigma(), in_msigma, "M_sigma")
}

fn random_combination(rng: &mut ChaCha8Rng, basis: &[Meas], n: usize) -> Meas {
    basis.iter().fold(Meas::zero(n), |acc, b| acc.add(&b.scale(&ratio(rng.gen_range(-3..=3), rng.gen_range(1..=4)))))
}

fn mc_associative(c: &Ctx) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(c.index as u64);
    let basis = c.mc().basis();
    let cells = c.cells();
    let g = c.rtg.group();
    for trial in 0..3 {
        let [a, b, d] = [0, 1, 2].map(|_| random_combination(&mut rng, &basis, c.n()));
        let (ab, bd) = (pushforward(g, &a, &b), pushforward(g, &b, &d));
        if !c.mc().contains(&ab) {
            return Outcome::Fail(format!("trial {trial}: a b = {} leaves M_C", meas_label(&ab)));
        }
        let left = pushforward(g, &ab, &d);
        let right = pushforward(g, &a, &bd);
        if !left.radon_eq(&right, cells) {
            return Outcome::Fail(format!("trial {trial}: (a b) c = {}, a (b c) = {}", meas_label(&left), meas_label(&right)));
        }
    }
    Outcome::Pass
}

fn mc_identity(c: &Ctx) -> Outcome {
    let e = Meas::delta(c.n(), c.rtg.group().identity());
    let cells = c.cells();
    all_of(c.mc().basis().iter().enumerate().map(|(i, m)| {
        let l = pushforward(c.rtg.group(), &e, m);
        let r = pushforward(c.rtg.group(), m, &e);
        check(l.radon_eq(m, cells) && r.radon_eq(m, cells), || format!("basis measure {i}"))
    }))
}

fn mc_center_deltas(c: &Ctx) -> Outcome {
    let lambda = c.rtg.topological_center();
    match lambda.set().iter().find(|&a| !c.mc().contains(&Meas::delta(c.n(), a))) {
        None => Outcome::Pass,
        Some(a) => Outcome::Fail(format!("delta_{a} not in M_C although {a} is in the topological center")),
    }
}

fn msigma_left_ideal(c: &Ctx) -> Outcome {
    for (i, mu) in c.mc().basis().iter().enumerate() {
        for (j, nu) in c.msigma().basis().iter().enumerate() {
            let p = pushforward(c.rtg.group(), mu, nu);
            if !c.msigma().contains(&p) {
                return Outcome::Fail(format!("M_C basis {i} * M_sigma basis {j} leaves M_sigma"));
            }
        }
    }
    Outcome::Pass
}

fn right_translation_closed(c: &Ctx, space: &MeasSubspace, name: &str) -> Outcome {
    let g = c.rtg.group();
    for (i, mu) in space.basis().iter().enumerate() {
        if let Some(a) = (0..c.n()).find(|&a| !space.contains(&mu.right_translate(g, a))) {
            return Outcome::Fail(format!("right translate of {name} basis {i} by {a} leaves {name}"));
        }
    }
    Outcome::Pass
}

fn msigma_right_translation(c: &Ctx) -> Outcome {
    right_translation_closed(c, c.msigma(), "M_sigma")
}

fn msigma_haar(c: &Ctx) -> Outcome {
    match c.haar() {
        Ok(h) => check(c.msigma().contains(&h.measure), || "Haar measure not in M_sigma".into()),
        Err(e) => Outcome::Fail(e.to_string()),
    }
}

fn lc_right_translation(c: &Ctx) -> Outcome {
    right_translation_closed(c, c.lc(), "L_C")
}

fn lc_left_ideal(c: &Ctx) -> Outcome {
    if !c.lc().is_subspace_of(c.mc()) {
        return Outcome::Fail("L_C not inside M_C".into());
    }
    for (i, mu) in c.mc().basis().iter().enumerate() {
        for (j, nu) in c.lc().basis().iter().enumerate() {
            let p = pushforward(c.rtg.group(), mu, nu);
            if !c.lc().contains(&p) {
                return Outcome::Fail(format!("M_C basis {i} * L_C basis {j} leaves L_C"));
            }
        }
    }
    Outcome::Pass
}

fn lc_in_mw(c: &Ctx) -> Outcome {
    let mw = mw_subspace(c.rtg);
    check(c.lc().is_subspace_of(&mw) && mw.is_subspace_of(c.mc()), || "L_C ⊆ M_W ⊆ M_C fails".into())
}

fn lc_sigma_densities(c: &Ctx) -> Outcome {
    let n = c.n();
    match c.c_sigma().basis().iter().position(|f| {
        let density: FnVec = f.iter().map(|x| x.clone() / int(n as i64)).collect();
        !c.lc().contains(&Meas::new(density))
    }) {
        None => Outcome::Pass,
        Some(i) => Outcome::Fail(format!("C(sigma) basis {i} times Haar is not in L_C")),
    }
}

fn lg_in_mc(c: &Ctx) -> Outcome {
    check(c.lg().is_subspace_of(c.mc()), || {
        format!(
            "dim L_G = {}, dim (L_G ∩ M_C) = {}",
            c.lg().dim(),
            c.lg().canonical_space().intersection(c.mc().canonical_space()).dim()
        )
    })
}

fn lg_right_ideal(c: &Ctx) -> Outcome {
    for (i, nu) in c.lg().basis().iter().enumerate() {
        for (j, mu) in c.mc().basis().iter().enumerate() {
            let p = pushforward(c.rtg.group(), nu, mu);
            if !c.lg().contains(&p) {
                return Outcome::Fail(format!("L_G basis {i} * M_C basis {j} leaves L_G"));
            }
        }
    }
    Outcome::Pass
}

fn lg_lc_relation(c: &Ctx) -> Outcome {
    let (a, b) = (c.lg(), c.lc());
    let rel = match (a.is_subspace_of(b), b.is_subspace_of(a)) {
        (true, true) => "L_G = L_C",
        (true, false) => "L_G ⊊ L_C",
        (false, true) => "L_C ⊊ L_G",
        (false, false) => "L_G, L_C incomparable",
    };
    Outcome::Diagnostic(format!("{rel} (dims {} and {})", a.dim(), b.dim()))
}

fn d_densities_in_lg(c: &Ctx) -> Outcome {
    let d = d_space(c.rtg);
    match d.basis().iter().position(|f| !c.lg().contains(&Meas::with_density(f))) {
        None => Outcome::Pass,
        Some(i) => Outcome::Fail(format!("D(G) basis {i} as a density is not in L_G")),
    }
}

fn d_densities_in_lc(c: &Ctx) -> Outcome {
    let d = d_space(c.rtg);
    let outside = d.basis().iter().filter(|f| !c.lc().contains(&Meas::with_density(f))).count();
    Outcome::Diagnostic(format!("{outside} of {} D(G) basis densities lie outside L_C", d.dim()))
}

fn mc_continuous_densities(c: &Ctx) -> Outcome {
    let inside = cell_indicators(c.rtg.tau()).iter().all(|f| c.mc().contains(&Meas::with_density(f)));
    let top = c.rtg.is_topological_by_definition();
    check(inside == top, || format!("C(G) dλ ⊆ M_C: {inside}, topological: {top}"))
}

fn mc_full(c: &Ctx) -> Outcome {
    let all = all_measures(c.rtg);
    let top = c.rtg.is_topological_by_definition();
    let mc = c.mc().same_as(&all);
    let lg = c.lg().same_as(&all);
    let lc = c.lc().same_as(&all);
    check(mc == top && lg == top && lc == top, || format!("M_C = M: {mc}, L_G = L1: {lg}, L_C = L1: {lc}, topological: {top}"))
}

fn mw_in_msigma(c: &Ctx) -> Outcome {
    if !c.rtg.is_admissible() {
        return Outcome::Degenerate("not admissible".into());
    }
    check(mw_subspace(c.rtg).is_subspace_of(c.msigma()), || "M_W not inside M_sigma".into())
}

fn mw_degenerate(c: &Ctx) -> Outcome {
    if mw_subspace(c.rtg).same_as(c.mc()) {
        Outcome::Degenerate("M_W = M_C: right orbits are finite".into())
    } else {
        Outcome::Fail("M_W differs from M_C".into())
    }
}

fn mc_translates(c: &Ctx) -> Outcome {
    let g = c.rtg.group();
    for (i, mu) in c.mc().basis().iter().enumerate() {
        let all = (0..c.n()).all(|a| c.mc().contains(&mu.right_translate(g, a)));
        if all && !c.msigma().contains(mu) {
            return Outcome::Fail(format!("M_C basis {i}: all right translates in M_C but not in M_sigma"));
        }
    }
    Outcome::Pass
}

fn subgroup_haar(c: &Ctx) -> Outcome {
    let g = c.rtg.group();
    let lambda = c.rtg.topological_center();
    for &k in c.normals().iter().filter(|k| k.is_subgroup_of(lambda)) {
        let (sub, embed) = crate::group::subgroup_as_group(g, k);
        let induced = crate::rtg::make_rtg_from_topology(sub, c.rtg.tau().induced(&embed));
        if !induced.is_ok_and(|r| r.is_topological_by_definition()) {
            continue;
        }
        let m = lambda_h(c.rtg, k.set()).expect("subgroup");
        if !c.mc().contains(&m) {
            return Outcome::Fail(format!("lambda_H not in M_C for H = {}", set(k)));
        }
        if c.rtg.is_sigma_sigma_closed(k.set()) && !c.msigma().contains(&m) {
            return Outcome::Fail(format!("lambda_H not in M_sigma for sigma-sigma-closed H = {}", set(k)));
        }
    }
    Outcome::Pass
}

/// Multiplier `u` if the instance's table is `Z_m ⋊ {1, u}` in the Schreier
/// layout.
fn schreier_multiplier(c: &Ctx) -> Option<(usize, usize)> {
    let n = c.n();
    if !n.is_multiple_of(2) || n < 4 {
        return None;
    }
    let m = n / 2;
    (2..m).filter(|&u| u * u % m == 1).find_map(|u| {
        let s = schreier_product(&cyclic_multipliers(m, &[1, u])).ok()?;
        (s.table() == c.rtg.group().table()).then_some((m, u))
    })
}

fn schreier_closed_form(c: &Ctx) -> Outcome {
    let Some((m, u)) = schreier_multiplier(c) else {
        return Outcome::Degenerate("not a cyclic Schreier group".into());
    };
    if !c.rtg.is_discrete() {
        return Outcome::Degenerate(format!("Z_{m} x| {{1,{u}}} with non-discrete topology"));
    }
    if !c.mc().same_as(&all_measures(c.rtg)) || !c.rtg.tau().is_partition() {
        return Outcome::Fail("M_C differs from M(G) on the discrete Schreier instance".into());
    }
    let unit = |i: usize| -> Vec<Cq> { (0..m).map(|t| if t == i { one() } else { Cq::zero() }).collect() };
    let n = c.n();
    for i in 0..m {
        for delta in [false, true] {
            let f = sheet_function(m, &unit(i), delta);
            for j in 0..m {
                for gamma in [false, true] {
                    let mu = sheet_measure(m, &unit(j), gamma);
                    let fm = act_unchecked(c.rtg.group(), &f, &mu);
                    for (y, got) in fm.iter().enumerate() {
                        let (v, eps) = (y % m, y >= m);
                        let want = schreier_action_formula(m, u, &unit(i), delta, &unit(j), gamma, v, eps).expect("involution");
                        if *got != want {
                            return Outcome::Fail(format!("f = e_{i}/{delta}, mu = e_{j}/{gamma}, at ({v},{eps})"));
                        }
                        // ⟨μ □ δ_y, f⟩ = (f·μ)(y)
                        let conv = pushforward(c.rtg.group(), &mu, &Meas::delta(n, y));
                        let pair = conv.weights().iter().zip(&f).fold(Cq::zero(), |a, (w, x)| a + w.clone() * x.clone());
                        if pair != want {
                            return Outcome::Fail(format!("convolution pairing differs at ({v},{eps})"));
                        }
                    }
                }
            }
        }
    }
    Outcome::Pass
}

// ----------------------------------------------------------------- haar

fn haar_unique(c: &Ctx) -> Outcome {
    match c.haar() {
        Ok(h) => check(h.uniqueness_dim == 1, || format!("solution space has dimension {}", h.uniqueness_dim)),
        Err(e) => Outcome::Fail(e.to_string()),
    }
}

fn haar_oracle(c: &Ctx) -> Outcome {
    match c.haar() {
        Ok(h) => {
            let cells = c.cells();
            let uniform = Meas::uniform(c.n());
            check(h.measure.canonical(cells) == uniform.canonical(cells), || {
                format!("solver {}, coset-uniform {}", meas_label(&h.measure), meas_label(&uniform))
            })
        }
        Err(e) => Outcome::Fail(e.to_string()),
    }
}

fn haar_probability(c: &Ctx) -> Outcome {
    match c.haar() {
        Ok(h) => check(
            is_right_invariant(c.rtg, &h.measure)
                && h.measure.total_mass() == one()
                && h.measure.weights().iter().all(is_nonneg_real),
            || format!("not a right-invariant probability: {}", meas_label(&h.measure)),
        ),
        Err(e) => Outcome::Fail(e.to_string()),
    }
}

fn haar_left_invariance(c: &Ctx) -> Outcome {
    match c.haar() {
        Ok(h) => check(is_left_invariant_under(c.rtg, &h.measure, c.rtg.topological_center()), || {
            "Haar measure not left-invariant under the topological center".into()
        }),
        Err(e) => Outcome::Fail(e.to_string()),
    }
}

fn haar_existence(c: &Ctx) -> Outcome {
    let exists = c.haar().is_ok();
    let ms = c.msigma().dim() > 0;
    let mw = mw_subspace(c.rtg).dim() > 0;
    let lc = c.lc().dim() > 0;
    check(exists == ms && ms == mw && mw == lc, || format!("Haar exists {exists}, M_sigma ≠ 0 {ms}, M_W ≠ 0 {mw}, L_C ≠ 0 {lc}"))
}

fn orbit_average(c: &Ctx) -> Outcome {
    let Ok(h) = c.haar() else { return Outcome::Fail("no Haar measure".into()) };
    let Some(mu) = c.msigma().basis().into_iter().find(|m| !m.total_mass().is_zero()) else {
        return Outcome::Fail("M_sigma has no measure of non-zero mass".into());
    };
    match haar_from_orbit_average(c.rtg, &mu) {
        Ok(avg) => check(avg.radon_eq(&h.measure, c.cells()), || format!("orbit average {}", meas_label(&avg))),
        Err(e) => Outcome::Fail(e.to_string()),
    }
}

fn haar_construction(c: &Ctx) -> Outcome {
    let Ok(h) = c.haar() else { return Outcome::Fail("no Haar measure".into()) };
    for sys in c.systems() {
        let state = match construct_haar_cached(c.rtg, sys, &mut c.haar_cache.borrow_mut()) {
            Ok(s) => s,
            Err(e) => return Outcome::Fail(format!("{}: {e}", chain_label(sys))),
        };
        if let Some(l) = state.levels.iter().find(|l| !l.checks.all()) {
            return Outcome::Fail(format!("{}: level {} checks {:?}", chain_label(sys), set(l.subgroup), l.checks));
        }
        if !state.measure.radon_eq(&h.measure, c.cells()) {
            return Outcome::Fail(format!("{}: constructed {}", chain_label(sys), meas_label(&state.measure)));
        }
        if !verify_uniqueness(c.rtg, &state.measure, &h.measure).unwrap_or(false) {
            return Outcome::Fail(format!("{}: not proportional to the solver's measure", chain_label(sys)));
        }
    }
    Outcome::Pass
}

fn averaging_operators(c: &Ctx) -> Outcome {
    let g = c.rtg.group();
    let n = c.n();
    let gens = g.generators();
    let mut seen = std::collections::BTreeSet::new();
    for sys in c.systems() {
        for w in sys.chain.windows(2) {
            let (l, m) = (w[0], w[1]);
            if !seen.insert((l.set().bits(), m.set().bits())) {
                continue;
            }
            let mut cache = c.haar_cache.borrow_mut();
            let phi = match cache.averaging(c.rtg, l, m) {
                Ok(p) => p.clone(),
                Err(e) => return Outcome::Fail(format!("L = {}, M = {}: {e}", set(l), set(m))),
            };
            let fail = |what: &str| Outcome::Fail(format!("L = {}, M = {}: {what}", set(l), set(m)));
            let on_m = cache.functions(c.rtg, m).expect("normal").to_vec();
            let on_l = cache.functions(c.rtg, l).expect("normal").to_vec();
            drop(cache);
            let target = crate::linalg::Subspace::span(n, on_l.clone());
            for f in &on_m {
                let pf = phi.apply(c.rtg, f);
                if !pf.iter().all(is_nonneg_real) {
                    return fail("positivity");
                }
                if !target.contains(&pf) {
                    return fail("image outside C(G/L)");
                }
                for &a in &gens {
                    if translate(g, &pf, a, Side::Right) != phi.apply(c.rtg, &translate(g, f, a, Side::Right)) {
                        return fail(&format!("R_g φ ≠ φ R_g at g = {a}"));
                    }
                }
            }
            if on_l.iter().any(|f| phi.apply(c.rtg, f) != *f) {
                return fail("not a retraction onto C(G/L)");
            }
        }
    }
    Outcome::Pass
}

fn strict_emptiness(c: &Ctx) -> Outcome {
    let strict = c.systems().iter().filter(|s| s.mode == Mode::Strict).count();
    let trivial = c.rtg.is_discrete();
    if (strict > 0) == trivial {
        Outcome::Degenerate(format!("{strict} strict systems; cone trivial: {trivial}"))
    } else {
        Outcome::Fail(format!("{strict} strict systems but cone trivial = {trivial}"))
    }
}

fn separate_vs_joint(c: &Ctx) -> Outcome {
    let rtg = c.rtg;
    let mut sep_only = Vec::new();
    let mut steps = 0;
    let normals = c.normals();
    for &l in normals {
        for &m in normals.iter().filter(|m| m.is_subgroup_of(l) && **m != l) {
            let cert = crate::haar::certify_step(rtg, l, m).expect("normal pair");
            steps += 1;
            if cert.separately_continuous && !cert.jointly_continuous {
                sep_only.push(format!("{} > {}", set(l), set(m)));
            }
        }
    }
    if sep_only.is_empty() {
        Outcome::Diagnostic(format!("separate continuity implies joint on all {steps} steps"))
    } else {
        Outcome::Diagnostic(format!("separately but not jointly continuous: {}", sep_only.join("; ")))
    }
}

const REGISTRY: &[Property] = &[
    Property { id: "sigma.oracle", suite: Suite::Sigma, run: sigma_oracle },
    Property { id: "sigma.n-of-g", suite: Suite::Sigma, run: n_of_g },
    Property { id: "sigma.lambda-oracle", suite: Suite::Sigma, run: lambda_oracle },
    Property { id: "sigma.coarser", suite: Suite::Sigma, run: sigma_coarser },
    Property { id: "sigma.equals-tau", suite: Suite::Sigma, run: sigma_equals_tau },
    Property { id: "sigma.continuity", suite: Suite::Sigma, run: sigma_continuity },
    Property { id: "sigma.t1", suite: Suite::Sigma, run: sigma_t1 },
    Property { id: "sigma.hausdorff", suite: Suite::Sigma, run: sigma_hausdorff },
    Property { id: "division-map.open", suite: Suite::Sigma, run: division_map_open },
    Property { id: "quotient.hausdorff", suite: Suite::Sigma, run: quotient_hausdorff },
    Property { id: "quotient.sigma-sigma", suite: Suite::Sigma, run: quotient_sigma_sigma },
    Property { id: "quotient.sigma-sigma-literal", suite: Suite::Sigma, run: quotient_sigma_sigma_literal },
    Property { id: "quotient.sigma-commutes", suite: Suite::Sigma, run: quotient_sigma_commutes },
    Property { id: "hom.factors-through-n", suite: Suite::Sigma, run: hom_factorization },
    Property { id: "quotient.open-maps", suite: Suite::Sigma, run: open_maps },
    Property { id: "hausdorff.topological", suite: Suite::Sigma, run: hausdorff_topological },
    Property { id: "n-of-l.whole", suite: Suite::Sigma, run: n_of_l_whole },
    Property { id: "n-of-l.subgroups", suite: Suite::Sigma, run: n_of_l_subgroups },
    Property { id: "n-of-l.variants", suite: Suite::Sigma, run: n_of_l_variants },
    Property { id: "sigma.induced-vs-intrinsic", suite: Suite::Sigma, run: induced_vs_intrinsic },
    Property { id: "lc.contains-c-sigma", suite: Suite::Functions, run: lc_contains_c_sigma },
    Property { id: "lc.separation", suite: Suite::Functions, run: lc_separation },
    Property { id: "lc.contains-wap", suite: Suite::Functions, run: lc_contains_wap },
    Property { id: "lc.equals-c-sigma", suite: Suite::Functions, run: lc_equals_c_sigma },
    Property { id: "fix.c-sigma", suite: Suite::Functions, run: fix_c_sigma },
    Property { id: "fix.generated-algebras", suite: Suite::Functions, run: fix_generated_algebras },
    Property { id: "ap-wap.degenerate", suite: Suite::Functions, run: ap_wap_degenerate },
    Property { id: "d.right-translates", suite: Suite::Functions, run: d_right_translates },
    Property { id: "mc.definition", suite: Suite::Measures, run: mc_definition },
    Property { id: "msigma.definition", suite: Suite::Measures, run: msigma_definition },
    Property { id: "mc.associative", suite: Suite::Measures, run: mc_associative },
    Property { id: "mc.identity", suite: Suite::Measures, run: mc_identity },
    Property { id: "mc.center-deltas", suite: Suite::Measures, run: mc_center_deltas },
    Property { id: "msigma.left-ideal", suite: Suite::Measures, run: msigma_left_ideal },
    Property { id: "msigma.right-translation", suite: Suite::Measures, run: msigma_right_translation },
    Property { id: "msigma.haar", suite: Suite::Measures, run: msigma_haar },
    Property { id: "lc.right-translation", suite: Suite::Measures, run: lc_right_translation },
    Property { id: "lc.left-ideal", suite: Suite::Measures, run: lc_left_ideal },
    Property { id: "lc.in-mw", suite: Suite::Measures, run: lc_in_mw },
    Property { id: "lc.sigma-densities", suite: Suite::Measures, run: lc_sigma_densities },
    Property { id: "lg.in-mc", suite: Suite::Measures, run: lg_in_mc },
    Property { id: "lg.right-ideal", suite: Suite::Measures, run: lg_right_ideal },
    Property { id: "lg-lc.relation", suite: Suite::Measures, run: lg_lc_relation },
    Property { id: "d-densities.in-lg", suite: Suite::Measures, run: d_densities_in_lg },
    Property { id: "d-densities.in-lc", suite: Suite::Measures, run: d_densities_in_lc },
    Property { id: "mc.continuous-densities", suite: Suite::Measures, run: mc_continuous_densities },
    Property { id: "mc.full", suite: Suite::Measures, run: mc_full },
    Property { id: "mw.in-msigma", suite: Suite::Measures, run: mw_in_msigma },
    Property { id: "mw.degenerate", suite: Suite::Measures, run: mw_degenerate },
    Property { id: "mc.translates", suite: Suite::Measures, run: mc_translates },
    Property { id: "mc.subgroup-haar", suite: Suite::Measures, run: subgroup_haar },
    Property { id: "schreier.closed-form", suite: Suite::Measures, run: schreier_closed_form },
    Property { id: "haar.unique", suite: Suite::Haar, run: haar_unique },
    Property { id: "haar.oracle", suite: Suite::Haar, run: haar_oracle },
    Property { id: "haar.probability", suite: Suite::Haar, run: haar_probability },
    Property { id: "haar.left-invariance", suite: Suite::Haar, run: haar_left_invariance },
    Property { id: "haar.existence", suite: Suite::Haar, run: haar_existence },
    Property { id: "haar.orbit-average", suite: Suite::Haar, run: orbit_average },
    Property { id: "haar.construction", suite: Suite::Haar, run: haar_construction },
    Property { id: "haar.averaging", suite: Suite::Haar, run: averaging_operators },
    Property { id: "haar.strict-emptiness", suite: Suite::Haar, run: strict_emptiness },
    Property { id: "haar.separate-vs-joint", suite: Suite::Haar, run: separate_vs_joint },
];

/// Properties of a suite in registry order.
pub fn properties(suite: Suite) -> Vec<&'static Property> {
    REGISTRY.iter().filter(|p| suite.includes(p.suite)).collect()
}

pub fn verify_instance(rtg: &RtGroup, index: usize, suite: Suite, fault: Option<Fault>) -> InstanceReport {
    let ctx = Ctx::new(rtg, index, fault);
    let label = rtg.label();
    let records = properties(suite)
        .into_iter()
        .map(|p| {
            let (status, detail, witness) = match (p.run)(&ctx) {
                Outcome::Pass => (Status::Pass, None, None),
                Outcome::Degenerate(d) => (Status::DegeneratePass, Some(d), None),
                Outcome::Diagnostic(d) => (Status::Diagnostic, Some(d), None),
                Outcome::Fail(d) => {
                    let w = Witness {
                        instance: label.clone(),
                        property: p.id.to_string(),
                        replay: InstanceJson::from(rtg),
                        detail: d.clone(),
                    };
                    (Status::Fail, Some(d), Some(w))
                }
            };
            Record { id: p.id.to_string(), status, detail, witness }
        })
        .collect();
    InstanceReport { index, instance: label, records }
}

/// Runs `suite` over [`enumerate_instances`]; `fault` hits instance 0 only.
pub fn verify_catalog(suite: Suite, max_order: usize, exec: Execution, fault: Option<Fault>) -> Result<VerificationReport> {
    let instances = enumerate_instances(max_order)?;
    let reports =
        exec.map_range(instances.len(), |i| verify_instance(&instances[i], i, suite, if i == 0 { fault } else { None }));
    Ok(VerificationReport::new(suite, max_order, reports))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog::*;
    use crate::rtg::make_rtg;

    /// `cargo test --release -p rtglab-core property_timings -- --ignored --nocapture`
    #[test]
    #[ignore]
    fn property_timings() {
        let instances = enumerate_instances(24).unwrap();
        let mut total = vec![std::time::Duration::ZERO; REGISTRY.len()];
        for (i, r) in instances.iter().enumerate() {
            let ctx = Ctx::new(r, i, None);
            for (k, p) in REGISTRY.iter().enumerate() {
                let t = std::time::Instant::now();
                let _ = (p.run)(&ctx);
                total[k] += t.elapsed();
            }
        }
        for (k, p) in REGISTRY.iter().enumerate() {
            println!("{:>10.3?} {}", total[k], p.id);
        }
    }

    #[test]
    fn registry_ids_are_unique() {
        let mut ids: Vec<&str> = REGISTRY.iter().map(|p| p.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), REGISTRY.len());
        let split: usize =
            [Suite::Sigma, Suite::Functions, Suite::Measures, Suite::Haar].into_iter().map(|s| properties(s).len()).sum();
        assert_eq!(split, properties(Suite::All).len());
    }

    #[test]
    fn s3_passes_everything() {
        let g = symmetric(3);
        let h = Subgrp::from_elements(&g, &[0, s3_transposition_12()]).unwrap();
        let r = verify_instance(&make_rtg(g, h).unwrap(), 0, Suite::All, None);
        let bad: Vec<_> = r.records.iter().filter(|x| x.status == Status::Fail).collect();
        assert!(bad.is_empty(), "{bad:#?}");
    }

    #[test]
    fn faults_are_caught() {
        let g = dihedral(4);
        let h = Subgrp::from_elements(&g, &[0, 4]).unwrap();
        let rtg = make_rtg(g, h).unwrap();
        let r = verify_instance(&rtg, 0, Suite::Sigma, Some(Fault::SigmaBit));
        let fails: Vec<&str> = r.records.iter().filter(|x| x.status == Status::Fail).map(|x| x.id.as_str()).collect();
        assert_eq!(fails, ["sigma.oracle"]);
        let r = verify_instance(&rtg, 0, Suite::Haar, Some(Fault::HaarWeight));
        assert!(r.records.iter().any(|x| x.id == "haar.oracle" && x.status == Status::Fail));
    }

    #[test]
    fn schreier_instance_is_recognised() {
        let rtg = make_rtg(
            crate::generators::z12_mult5(),
            Subgrp::new(&crate::generators::z12_mult5(), ElemSet::singleton(0)).unwrap(),
        )
        .unwrap();
        let r = verify_instance(&rtg, 0, Suite::Measures, None);
        let rec = r.records.iter().find(|x| x.id == "schreier.closed-form").unwrap();
        assert_eq!(rec.status, Status::Pass, "{rec:?}");
    }
}
