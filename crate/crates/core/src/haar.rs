//! Normal systems `G = L_0 ⊋ L_1 ⊋ … ⊋ L_k = {e}` and the Haar measure
//! built down such a chain by composing averaging operators.
//!
//! Each step quotient `L_ξ/L_{ξ+1}` carries the quotient of the topology
//! induced on `L_ξ`; `G/L_ξ` carries the τ-quotient. Strict systems need
//! σ-closed members, Hausdorff topological step quotients and a jointly
//! continuous step action; relaxed systems drop σ-closedness and the
//! Hausdorff requirement.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::functions::{cell_indicators, translate, FnVec, Side};
use crate::group::{normal_subgroups, subgroup_as_group, ElemSet, Subgrp};
use crate::measures::{haar_solver, in_msigma, is_right_invariant, spread, Cells, Meas};
use crate::rtg::{make_rtg_from_topology, quotient_rtg, QuotientRtg, RtGroup};
use crate::scalar::{int, is_nonneg_real, one, Cq};
use crate::topology::{is_continuous, product_topology, AlexandrovTopology};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Strict,
    Relaxed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepCertificate {
    pub upper: Subgrp,
    pub lower: Subgrp,
    /// Both `L_ξ` and `L_{ξ+1}` are σ-closed.
    pub sigma_closed: bool,
    pub quotient_hausdorff: bool,
    pub quotient_topological: bool,
    pub separately_continuous: bool,
    pub jointly_continuous: bool,
}

impl StepCertificate {
    pub fn accepts(&self, mode: Mode) -> bool {
        let relaxed = self.quotient_topological && self.jointly_continuous;
        match mode {
            Mode::Relaxed => relaxed,
            Mode::Strict => relaxed && self.sigma_closed && self.quotient_hausdorff,
        }
    }

    fn failure(&self, mode: Mode) -> Option<&'static str> {
        if !self.quotient_topological {
            Some("step quotient is not a topological group")
        } else if !self.jointly_continuous {
            Some("step action is not jointly continuous")
        } else if mode == Mode::Strict && !self.sigma_closed {
            Some("member is not σ-closed")
        } else if mode == Mode::Strict && !self.quotient_hausdorff {
            Some("step quotient is not Hausdorff")
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalSystem {
    pub chain: Vec<Subgrp>,
    pub mode: Mode,
    pub steps: Vec<StepCertificate>,
}

impl NormalSystem {
    pub fn is_certified(&self) -> bool {
        self.steps.iter().all(|s| s.accepts(self.mode))
    }
}

/// `L/M` with the quotient of the topology induced on `L`, plus the
/// embedding data needed to act on `G/M`.
struct StepQuotient {
    q: QuotientRtg,
    /// representative in `G` of each element of `L/M`
    reps: Vec<usize>,
}

fn step_quotient(rtg: &RtGroup, l: Subgrp, m: Subgrp) -> Result<StepQuotient> {
    let (lg, embed) = subgroup_as_group(rtg.group(), l);
    let local = |x: usize| embed.iter().position(|&y| y == x).expect("element of L");
    let rl = make_rtg_from_topology(lg, rtg.tau().induced(&embed))?;
    let m_local = Subgrp::new(rl.group(), m.set().iter().map(local).collect())?;
    let q = quotient_rtg(&rl, m_local)?;
    let mut reps = vec![usize::MAX; q.rtg.order()];
    for (i, &c) in q.projection.iter().enumerate() {
        if reps[c] == usize::MAX {
            reps[c] = embed[i];
        }
    }
    Ok(StepQuotient { q, reps })
}

fn first_reps(projection: &[usize], count: usize) -> Vec<usize> {
    let mut reps = vec![usize::MAX; count];
    for (x, &c) in projection.iter().enumerate() {
        if reps[c] == usize::MAX {
            reps[c] = x;
        }
    }
    reps
}

/// Certificate for the step `L ⊋ M`.
pub fn certify_step(rtg: &RtGroup, l: Subgrp, m: Subgrp) -> Result<StepCertificate> {
    let g = rtg.group();
    let step = step_quotient(rtg, l, m)?;
    let gm = quotient_rtg(rtg, m)?;
    let (na, nb) = (gm.rtg.order(), step.q.rtg.order());
    let greps = first_reps(&gm.projection, na);
    let act = |a: usize, b: usize| gm.projection[g.mul(greps[a], step.reps[b])];
    let ta = gm.rtg.tau();
    let tb = step.q.rtg.tau();
    let map: Vec<usize> = (0..na * nb).map(|p| act(p / nb, p % nb)).collect();
    let jointly_continuous = is_continuous(&map, &product_topology(ta, tb), ta);
    let separately_continuous = (0..na).all(|a| is_continuous(&(0..nb).map(|b| act(a, b)).collect::<Vec<_>>(), tb, ta))
        && (0..nb).all(|b| is_continuous(&(0..na).map(|a| act(a, b)).collect::<Vec<_>>(), ta, ta));
    Ok(StepCertificate {
        upper: l,
        lower: m,
        sigma_closed: rtg.is_sigma_closed(l.set()) && rtg.is_sigma_closed(m.set()),
        quotient_hausdorff: tb.separation().is_hausdorff,
        quotient_topological: step.q.rtg.is_topological(),
        separately_continuous,
        jointly_continuous,
    })
}

fn chains_from(top: Subgrp, normals: &[Subgrp], trivial: Subgrp, prefix: &mut Vec<Subgrp>, out: &mut Vec<Vec<Subgrp>>) {
    prefix.push(top);
    if top == trivial {
        out.push(prefix.clone());
    } else {
        for &next in normals.iter().filter(|&&k| k != top && k.is_subgroup_of(top)) {
            chains_from(next, normals, trivial, prefix, out);
        }
    }
    prefix.pop();
}

/// All strictly decreasing chains of normal subgroups from `G` to `{e}`.
pub fn normal_chains(rtg: &RtGroup) -> Result<Vec<Vec<Subgrp>>> {
    let g = rtg.group();
    let normals = normal_subgroups(g)?;
    let mut out = Vec::new();
    chains_from(g.whole(), &normals, g.trivial(), &mut Vec::new(), &mut out);
    Ok(out)
}

/// Every certified system for `mode`, in chain-enumeration order.
pub fn find_normal_systems(rtg: &RtGroup, mode: Mode, exec: Execution) -> Result<Vec<NormalSystem>> {
    let chains = normal_chains(rtg)?;
    let mut pairs: Vec<(Subgrp, Subgrp)> = chains.iter().flat_map(|c| c.windows(2).map(|w| (w[0], w[1]))).collect();
    pairs.sort_by_key(|(a, b)| (a.set().bits(), b.set().bits()));
    pairs.dedup();
    let certs = exec.map(&pairs, |&(l, m)| certify_step(rtg, l, m));
    let mut table = HashMap::new();
    for (p, c) in pairs.into_iter().zip(certs) {
        table.insert(p, c?);
    }
    Ok(chains
        .into_iter()
        .map(|chain| {
            let steps = chain.windows(2).map(|w| table[&(w[0], w[1])]).collect();
            NormalSystem { chain, mode, steps }
        })
        .filter(NormalSystem::is_certified)
        .collect())
}

/// `φ: C(G/M) → C(G/L)`, `φ(f)(s) = Σ_{[t] ∈ L/M} f(s t) ν([t])`. Functions
/// on quotients are represented by their pullbacks to `G`.
#[derive(Debug, Clone)]
pub struct AveragingOperator {
    pub l: Subgrp,
    pub m: Subgrp,
    reps: Vec<usize>,
    nu: Vec<Cq>,
}

impl AveragingOperator {
    pub fn apply(&self, rtg: &RtGroup, f: &[Cq]) -> FnVec {
        let g = rtg.group();
        (0..g.order())
            .map(|s| {
                self.reps
                    .iter()
                    .zip(&self.nu)
                    .map(|(&t, w)| (&f[g.mul(s, t)], w))
                    .filter(|(x, _)| !x.is_zero())
                    .fold(Cq::zero(), |acc, (x, w)| acc + x.clone() * w.clone())
            })
            .collect()
    }

    /// Haar weights of `L/M`, one per coset.
    pub fn nu(&self) -> &[Cq] {
        &self.nu
    }
}

pub fn averaging_operator(rtg: &RtGroup, l: Subgrp, m: Subgrp) -> Result<AveragingOperator> {
    let g = rtg.group();
    let fail = |which: &str, witness: Vec<usize>| Error::PreconditionFailed { which: which.into(), witness };
    if !m.is_subgroup_of(l) {
        return Err(fail("M ⊆ L", m.set().minus(l.set()).to_vec()));
    }
    for k in [l, m] {
        if let Some(w) = g.normality_witness(k.set()) {
            return Err(fail("normal in G", vec![w]));
        }
    }
    let step = step_quotient(rtg, l, m)?;
    if !step.q.rtg.is_topological() {
        return Err(fail("L/M topological", step.q.rtg.cone().to_vec()));
    }
    let haar = haar_solver(&step.q.rtg)?;
    Ok(AveragingOperator { l, m, reps: step.reps, nu: haar.measure.weights().to_vec() })
}

/// Pullbacks of the continuous functions on `G/K` (τ-quotient).
pub fn quotient_functions(rtg: &RtGroup, k: Subgrp) -> Result<Vec<FnVec>> {
    let q = quotient_rtg(rtg, k)?;
    Ok(cell_indicators(q.rtg.tau()).into_iter().map(|f| q.projection.iter().map(|&c| f[c].clone()).collect()).collect())
}

fn dot(f: &[Cq], w: &[Cq]) -> Cq {
    f.iter().zip(w).filter(|(x, y)| !x.is_zero() && !y.is_zero()).fold(Cq::zero(), |a, (x, y)| a + x.clone() * y.clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelChecks {
    pub positive: bool,
    pub right_invariant: bool,
    /// `ψ_{ξ+1}` restricted to `C(G/L_ξ)` equals `ψ_ξ`.
    pub consistent: bool,
    /// `ψ_ξ(1) = 1`, which with positivity bounds `|ψ_ξ(f)| ≤ ‖f‖`.
    pub normalised: bool,
}

impl LevelChecks {
    pub fn all(&self) -> bool {
        self.positive && self.right_invariant && self.consistent && self.normalised
    }
}

#[derive(Debug, Clone)]
pub struct Level {
    pub subgroup: Subgrp,
    /// `ψ_ξ(f) = Σ_x f(x) w(x)` for `L_ξ`-invariant `f`.
    pub psi: Vec<Cq>,
    /// Haar weights of the step quotient below this level, if any.
    pub nu: Option<Vec<Cq>>,
    pub checks: LevelChecks,
}

#[derive(Debug, Clone)]
pub struct HaarState {
    pub levels: Vec<Level>,
    pub measure: Meas,
}

/// Weight vector of `f ↦ Σ_q f(rep q) ν(q)` spread over cosets of `K`.
fn psi_weights(n: usize, projection: &[usize], value_on_coset: impl Fn(usize) -> Cq) -> Vec<Cq> {
    let count = projection.iter().max().map_or(0, |m| m + 1);
    let mut size = vec![0i64; count];
    for &c in projection {
        size[c] += 1;
    }
    let values: Vec<Cq> = (0..count).map(value_on_coset).collect();
    (0..n).map(|x| values[projection[x]].clone() / int(size[projection[x]])).collect()
}

/// Quotients, averaging operators and quotient Haar measures shared by
/// several systems of one instance.
#[derive(Default)]
pub struct HaarCache {
    quotients: HashMap<Subgrp, QuotientRtg>,
    functions: HashMap<Subgrp, Vec<FnVec>>,
    averaging: HashMap<(Subgrp, Subgrp), AveragingOperator>,
    haar: HashMap<Subgrp, Vec<Cq>>,
    invariance: HashMap<(Subgrp, Vec<Cq>), bool>,
}

impl HaarCache {
    pub fn quotient(&mut self, rtg: &RtGroup, k: Subgrp) -> Result<&QuotientRtg> {
        Ok(match self.quotients.entry(k) {
            Entry::Occupied(e) => e.into_mut(),
            Entry::Vacant(e) => e.insert(quotient_rtg(rtg, k)?),
        })
    }

    pub fn functions(&mut self, rtg: &RtGroup, k: Subgrp) -> Result<&[FnVec]> {
        Ok(match self.functions.entry(k) {
            Entry::Occupied(e) => e.into_mut(),
            Entry::Vacant(e) => e.insert(quotient_functions(rtg, k)?),
        })
    }

    pub fn averaging(&mut self, rtg: &RtGroup, l: Subgrp, m: Subgrp) -> Result<&AveragingOperator> {
        Ok(match self.averaging.entry((l, m)) {
            Entry::Occupied(e) => e.into_mut(),
            Entry::Vacant(e) => e.insert(averaging_operator(rtg, l, m)?),
        })
    }

    fn quotient_haar(&mut self, rtg: &RtGroup, k: Subgrp) -> Result<Vec<Cq>> {
        if !self.haar.contains_key(&k) {
            let h = haar_solver(&self.quotient(rtg, k)?.rtg)?;
            self.haar.insert(k, h.measure.weights().to_vec());
        }
        Ok(self.haar[&k].clone())
    }
}

/// Builds `ψ_1` from the Haar measure of `G/L_1` and `ψ_{ξ+1} = ψ_ξ ∘ φ_ξ`.
pub fn construct_haar(rtg: &RtGroup, system: &NormalSystem) -> Result<HaarState> {
    construct_haar_cached(rtg, system, &mut HaarCache::default())
}

pub fn construct_haar_cached(rtg: &RtGroup, system: &NormalSystem, cache: &mut HaarCache) -> Result<HaarState> {
    if let Some(reason) = system.steps.iter().find_map(|s| s.failure(system.mode)) {
        return Err(Error::SystemNotCertified(reason.into()));
    }
    let g = rtg.group();
    let n = g.order();
    let chain = &system.chain;
    if chain.len() < 2 || chain[0] != g.whole() || !chain.last().is_some_and(|l| l.is_trivial()) {
        return Err(Error::SystemNotCertified("chain must run from G to {e}".into()));
    }
    let mut levels: Vec<Level> = Vec::new();
    let mut psi: Vec<Cq> = vec![Cq::zero(); n];
    for (i, &l) in chain.iter().enumerate() {
        let projection = cache.quotient(rtg, l)?.projection.clone();
        let nu = if i == 0 {
            // ψ on constants
            psi = vec![one() / int(n as i64); n];
            None
        } else {
            let upper = chain[i - 1];
            let prev = psi.clone();
            psi = if i == 1 {
                let h = cache.quotient_haar(rtg, l)?;
                psi_weights(n, &projection, |c| h[c].clone())
            } else {
                let phi = cache.averaging(rtg, upper, l)?;
                psi_weights(n, &projection, |c| {
                    let ind: FnVec = projection.iter().map(|&d| if d == c { one() } else { Cq::zero() }).collect();
                    dot(&phi.apply(rtg, &ind), &prev)
                })
            };
            Some(cache.averaging(rtg, upper, l)?.nu().to_vec())
        };
        let coset_cells = Cells::of(&AlexandrovTopology::from_partition(&projection));
        let positive = (0..coset_cells.count()).all(|c| {
            let ind: FnVec = projection.iter().map(|&d| if d == c { one() } else { Cq::zero() }).collect();
            is_nonneg_real(&dot(&ind, &psi))
        });
        let right_invariant = match cache.invariance.get(&(l, psi.clone())) {
            Some(&b) => b,
            None => {
                let b = cache
                    .functions(rtg, l)?
                    .iter()
                    .all(|f| (0..n).all(|a| dot(&translate(g, f, a, Side::Right), &psi) == dot(f, &psi)));
                cache.invariance.insert((l, psi.clone()), b);
                b
            }
        };
        let consistent = match levels.last() {
            None => true,
            Some(prev) => cache.functions(rtg, prev.subgroup)?.iter().all(|f| dot(f, &psi) == dot(f, &prev.psi)),
        };
        let normalised = dot(&vec![one(); n], &psi) == one();
        levels.push(Level {
            subgroup: l,
            psi: psi.clone(),
            nu,
            checks: LevelChecks { positive, right_invariant, consistent, normalised },
        });
    }
    let cells = Cells::of(rtg.tau());
    let canonical: Vec<Cq> = cell_indicators(rtg.tau()).iter().map(|f| dot(f, &psi)).collect();
    Ok(HaarState { levels, measure: spread(&cells, &canonical) })
}

/// Canonical forms of two right-invariant measures are proportional.
pub fn verify_uniqueness(rtg: &RtGroup, mu1: &Meas, mu2: &Meas) -> Result<bool> {
    if !is_right_invariant(rtg, mu1) || !is_right_invariant(rtg, mu2) {
        return Err(Error::NotInvariant);
    }
    let cells = Cells::of(rtg.tau());
    let (a, b) = (mu1.canonical(&cells), mu2.canonical(&cells));
    // a_i b_j = a_j b_i for all i, j
    Ok((0..a.len()).all(|i| (0..a.len()).all(|j| a[i].clone() * b[j].clone() == a[j].clone() * b[i].clone())))
}

/// `(1/|G|) Σ_g μ_g`, normalised to mass one.
pub fn haar_from_orbit_average(rtg: &RtGroup, mu: &Meas) -> Result<Meas> {
    if !in_msigma(rtg, mu) {
        return Err(Error::MuNotInMSigma);
    }
    let mass = mu.total_mass();
    if mass.is_zero() {
        return Err(Error::ZeroTotalMass);
    }
    let g = rtg.group();
    let sum = (0..g.order()).fold(Meas::zero(g.order()), |acc, a| acc.add(&mu.right_translate(g, a)));
    Ok(sum.scale(&(one() / (int(g.order() as i64) * mass))))
}

/// Elements of a subgroup as a set, for reports.
pub fn chain_sets(system: &NormalSystem) -> Vec<ElemSet> {
    system.chain.iter().map(|s| s.set()).collect()
}
