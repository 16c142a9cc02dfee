//! JSON payloads of `analyze`, `haar` and `measures`.

use rtglab_core::exec::Execution;
use rtglab_core::functions::{ap_wap, continuous_functions, d_space, fix, lc_space, FnSubspace, Which};
use rtglab_core::group::{normal_subgroups, ElemSet};
use rtglab_core::haar::{construct_haar_cached, find_normal_systems, HaarCache, Mode, StepCertificate};
use rtglab_core::measures::{
    all_measures, haar_solver, lc_measures, lg_measures, mc_subspace, msigma_subspace, mw_subspace, Cells, Meas, MeasJson,
};
use rtglab_core::rtg::{quotient_rtg, QuotientFlags};
use rtglab_core::scalar::display;
use rtglab_core::{AlexandrovTopology, Result, RtGroup};
use serde::Serialize;

/// Blocks of the cell partition, each sorted, in order of first element.
fn blocks(t: &AlexandrovTopology) -> Vec<Vec<usize>> {
    let (label, count) = t.cells();
    let mut out = vec![Vec::new(); count];
    for (x, &c) in label.iter().enumerate() {
        out[c].push(x);
    }
    out
}

#[derive(Serialize)]
pub struct Partition {
    kind: &'static str,
    blocks: Vec<Vec<usize>>,
}

fn partition(t: &AlexandrovTopology) -> Partition {
    let blocks = blocks(t);
    let kind = if blocks.len() == t.points() {
        "discrete"
    } else if blocks.len() == 1 {
        "indiscrete"
    } else {
        "partition"
    };
    Partition { kind, blocks }
}

#[derive(Serialize)]
pub struct Tau {
    cone: ElemSet,
    cells: Vec<Vec<usize>>,
    hausdorff: bool,
    diagram: String,
}

#[derive(Serialize)]
pub struct QuotientEntry {
    k: ElemSet,
    #[serde(flatten)]
    flags: QuotientFlags,
}

#[derive(Serialize)]
pub struct FunctionDims {
    c_tau: usize,
    c_sigma: usize,
    lc: usize,
    d: usize,
    ap_wap: usize,
}

#[derive(Serialize)]
pub struct FixEntry {
    space: &'static str,
    fix: Option<ElemSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Serialize)]
pub struct FunctionDetails {
    bases: Vec<(&'static str, Vec<Vec<String>>)>,
    fix: Vec<FixEntry>,
}

#[derive(Serialize)]
pub struct MeasureDims {
    m_all: usize,
    m_c: usize,
    m_sigma: usize,
    m_w: usize,
    l_c: usize,
    l_g: usize,
}

#[derive(Serialize)]
pub struct HaarView {
    /// Cell totals, one per τ-cell in `cells` order.
    canonical: Vec<String>,
    cells: Vec<Vec<usize>>,
    measure: MeasJson,
}

fn haar_view(t: &AlexandrovTopology, m: &Meas) -> HaarView {
    HaarView { canonical: m.canonical(&Cells::of(t)).iter().map(display).collect(), cells: blocks(t), measure: MeasJson::from(m) }
}

#[derive(Serialize)]
pub struct Analysis {
    instance: String,
    order: usize,
    tau: Tau,
    lambda: ElemSet,
    admissible: bool,
    topological: bool,
    sigma: Partition,
    sigma_sigma: Partition,
    n_of_g: ElemSet,
    quotients: Vec<QuotientEntry>,
    function_dims: FunctionDims,
    #[serde(skip_serializing_if = "Option::is_none")]
    functions: Option<FunctionDetails>,
    measure_dims: MeasureDims,
    haar: HaarView,
}

fn describe(space: &FnSubspace) -> Vec<Vec<String>> {
    space.basis().iter().map(|f| f.iter().map(display).collect()).collect()
}

fn measure_dims(rtg: &RtGroup) -> MeasureDims {
    MeasureDims {
        m_all: all_measures(rtg).dim(),
        m_c: mc_subspace(rtg).dim(),
        m_sigma: msigma_subspace(rtg).dim(),
        m_w: mw_subspace(rtg).dim(),
        l_c: lc_measures(rtg).dim(),
        l_g: lg_measures(rtg).dim(),
    }
}

pub fn analyze(rtg: &RtGroup, details: bool) -> Result<Analysis> {
    let g = rtg.group();
    let quotients = normal_subgroups(g)?
        .into_iter()
        .map(|k| Ok(QuotientEntry { k: k.set(), flags: quotient_rtg(rtg, k)?.flags }))
        .collect::<Result<_>>()?;
    let c_tau = continuous_functions(rtg, Which::Tau);
    let c_sigma = continuous_functions(rtg, Which::Sigma);
    let lc = lc_space(rtg);
    let d = d_space(rtg);
    let function_dims =
        FunctionDims { c_tau: c_tau.dim(), c_sigma: c_sigma.dim(), lc: lc.dim(), d: d.dim(), ap_wap: ap_wap(rtg).dim() };
    let functions = details.then(|| {
        let named = [("c_tau", &c_tau), ("c_sigma", &c_sigma), ("lc", &lc), ("d", &d)];
        FunctionDetails {
            bases: named.iter().map(|(n, s)| (*n, describe(s))).collect(),
            fix: named
                .iter()
                .map(|(n, s)| match fix(rtg, s) {
                    Ok(k) => FixEntry { space: n, fix: Some(k.set()), error: None },
                    Err(e) => FixEntry { space: n, fix: None, error: Some(e.to_string()) },
                })
                .collect(),
        }
    });
    let sd = rtg.sigma_data();
    let haar = haar_solver(rtg)?;
    Ok(Analysis {
        instance: rtg.label(),
        order: g.order(),
        tau: Tau {
            cone: rtg.cone().set(),
            cells: blocks(rtg.tau()),
            hausdorff: rtg.tau().separation().is_hausdorff,
            diagram: rtg.tau().render(),
        },
        lambda: rtg.topological_center().set(),
        admissible: rtg.is_admissible(),
        topological: rtg.is_topological(),
        sigma: partition(&sd.sigma),
        sigma_sigma: partition(&sd.sigma_sigma),
        n_of_g: sd.n_of_g.set(),
        quotients,
        function_dims,
        functions,
        measure_dims: measure_dims(rtg),
        haar: haar_view(rtg.tau(), &haar.measure),
    })
}

#[derive(Serialize)]
pub struct Measures {
    instance: String,
    dims: MeasureDims,
    uniqueness_dim: usize,
    haar: HaarView,
}

pub fn measures(rtg: &RtGroup) -> Result<Measures> {
    let h = haar_solver(rtg)?;
    Ok(Measures {
        instance: rtg.label(),
        dims: measure_dims(rtg),
        uniqueness_dim: h.uniqueness_dim,
        haar: haar_view(rtg.tau(), &h.measure),
    })
}

#[derive(Serialize)]
pub struct SystemView {
    mode: Mode,
    chain: Vec<ElemSet>,
    steps: Vec<StepCertificate>,
    levels_ok: bool,
    agrees: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    measure: Option<HaarView>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Serialize)]
pub struct HaarReport {
    instance: String,
    solver: HaarView,
    systems: Vec<SystemView>,
    agree: bool,
}

/// Every certified system of the given modes; the flag is false when some
/// construction disagrees with the solver.
pub fn haar(rtg: &RtGroup, modes: &[Mode]) -> Result<(HaarReport, bool)> {
    let solver = haar_solver(rtg)?;
    let cells = Cells::of(rtg.tau());
    let mut cache = HaarCache::default();
    let mut systems = Vec::new();
    for &mode in modes {
        for sys in find_normal_systems(rtg, mode, Execution::Parallel)? {
            let chain = sys.chain.iter().map(|l| l.set()).collect();
            let view = match construct_haar_cached(rtg, &sys, &mut cache) {
                Ok(state) => SystemView {
                    mode,
                    chain,
                    steps: sys.steps.clone(),
                    levels_ok: state.levels.iter().all(|l| l.checks.all()),
                    agrees: state.measure.radon_eq(&solver.measure, &cells),
                    measure: Some(haar_view(rtg.tau(), &state.measure)),
                    error: None,
                },
                Err(e) => SystemView {
                    mode,
                    chain,
                    steps: sys.steps.clone(),
                    levels_ok: false,
                    agrees: false,
                    measure: None,
                    error: Some(e.to_string()),
                },
            };
            systems.push(view);
        }
    }
    let agree = systems.iter().all(|s| s.agrees && s.levels_ok);
    let report = HaarReport { instance: rtg.label(), solver: haar_view(rtg.tau(), &solver.measure), systems, agree };
    Ok((report, agree))
}

/// `{index:03}-{group}-h{cone}.json`, e.g. `014-S3-h0.2.json`.
pub fn file_name(index: usize, rtg: &RtGroup) -> String {
    let group: String = rtg.group().label().chars().filter(|c| c.is_ascii_alphanumeric()).collect();
    let cone: Vec<String> = rtg.cone().set().iter().map(|x| x.to_string()).collect();
    format!("{index:03}-{group}-h{}.json", cone.join("."))
}
