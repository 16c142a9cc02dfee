//! Finite (Alexandrov) topologies given by minimal open neighbourhoods.
//!
//! Convention: `R[x][y]` holds iff `y ∈ U_x`, where `U_x` is the smallest
//! open set containing `x`. A set `V` is open iff `U_x ⊆ V` for every
//! `x ∈ V`. On the Sierpiński space with `U_0 = {0}`, `U_1 = {0, 1}`,
//! the open sets are `∅, {0}, {0, 1}`.

use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type PointSet = FixedBitSet;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlexandrovTopology {
    minnbhd: Vec<PointSet>,
}

/// Separation flags of a finite space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    pub is_t0: bool,
    pub is_t1: bool,
    pub is_hausdorff: bool,
    pub is_discrete: bool,
    pub is_indiscrete: bool,
}

pub fn point_set(n: usize, points: impl IntoIterator<Item = usize>) -> PointSet {
    let mut s = FixedBitSet::with_capacity(n);
    for p in points {
        s.insert(p);
    }
    s
}

impl AlexandrovTopology {
    /// Validates reflexivity and transitivity of the neighbourhood relation.
    pub fn from_minnbhd(rows: Vec<PointSet>) -> Result<Self> {
        let n = rows.len();
        for (x, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Malformed(format!("row {x} has length {}", row.len())));
            }
            if !row.contains(x) {
                return Err(Error::Malformed(format!("U_{x} does not contain {x}")));
            }
            if let Some(y) = row.ones().find(|&y| !rows[y].is_subset(row)) {
                return Err(Error::Malformed(format!("not transitive: {y} ∈ U_{x} but U_{y} ⊄ U_{x}")));
            }
        }
        Ok(Self { minnbhd: rows })
    }

    pub fn from_matrix(m: &[Vec<bool>]) -> Result<Self> {
        let n = m.len();
        let rows = m
            .iter()
            .map(|r| {
                if r.len() != n {
                    return Err(Error::Malformed("matrix is not square".into()));
                }
                Ok(point_set(n, r.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_minnbhd(rows)
    }

    pub(crate) fn from_minnbhd_unchecked(rows: Vec<PointSet>) -> Self {
        Self { minnbhd: rows }
    }

    pub fn discrete(n: usize) -> Self {
        Self { minnbhd: (0..n).map(|x| point_set(n, [x])).collect() }
    }

    pub fn indiscrete(n: usize) -> Self {
        Self { minnbhd: (0..n).map(|_| point_set(n, 0..n)).collect() }
    }

    /// Partition topology; `block[x]` labels the open cell of `x`.
    pub fn from_partition(block: &[usize]) -> Self {
        let n = block.len();
        Self { minnbhd: (0..n).map(|x| point_set(n, (0..n).filter(|&y| block[y] == block[x]))).collect() }
    }

    /// `U_0 = {0}`, `U_1 = {0, 1}`.
    pub fn sierpinski() -> Self {
        Self { minnbhd: vec![point_set(2, [0]), point_set(2, [0, 1])] }
    }

    pub fn points(&self) -> usize {
        self.minnbhd.len()
    }

    pub fn minimal(&self, x: usize) -> &PointSet {
        &self.minnbhd[x]
    }

    pub fn rows(&self) -> &[PointSet] {
        &self.minnbhd
    }

    /// `y ∈ U_x`.
    pub fn related(&self, x: usize, y: usize) -> bool {
        self.minnbhd[x].contains(y)
    }

    pub fn empty_set(&self) -> PointSet {
        FixedBitSet::with_capacity(self.points())
    }

    pub fn full_set(&self) -> PointSet {
        point_set(self.points(), 0..self.points())
    }

    /// Smallest open set containing `a`.
    pub fn up_closure(&self, a: &PointSet) -> PointSet {
        let mut out = self.empty_set();
        for x in a.ones() {
            out.union_with(&self.minnbhd[x]);
        }
        out
    }

    pub fn is_open(&self, a: &PointSet) -> bool {
        a.ones().all(|x| self.minnbhd[x].is_subset(a))
    }

    pub fn is_closed(&self, a: &PointSet) -> bool {
        let mut c = self.full_set();
        c.difference_with(a);
        self.is_open(&c)
    }

    /// `cl(A) = {y : U_y ∩ A ≠ ∅}`.
    pub fn closure(&self, a: &PointSet) -> PointSet {
        point_set(self.points(), (0..self.points()).filter(|&y| !self.minnbhd[y].is_disjoint(a)))
    }

    /// `int(A) = {x : U_x ⊆ A}`.
    pub fn interior(&self, a: &PointSet) -> PointSet {
        point_set(self.points(), (0..self.points()).filter(|&x| self.minnbhd[x].is_subset(a)))
    }

    /// Every open set of `other` is open here.
    pub fn is_finer_or_equal(&self, other: &AlexandrovTopology) -> bool {
        self.points() == other.points() && self.minnbhd.iter().zip(&other.minnbhd).all(|(a, b)| a.is_subset(b))
    }

    /// Components of the equivalence generated by `y ∈ U_x`; continuous
    /// complex-valued functions are exactly those constant on each one.
    /// Returns `(label per point, number of cells)`, labels in order of
    /// first appearance.
    pub fn cells(&self) -> (Vec<usize>, usize) {
        let n = self.points();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            label[start] = count;
            while let Some(x) = stack.pop() {
                let nbrs = self.minnbhd[x].ones().chain((0..n).filter(|&y| self.minnbhd[y].contains(x))).collect::<Vec<_>>();
                for y in nbrs {
                    if label[y] == usize::MAX {
                        label[y] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// Whether the neighbourhood relation is symmetric (every `U_x` is a cell).
    pub fn is_partition(&self) -> bool {
        (0..self.points()).all(|x| self.minnbhd[x].ones().all(|y| self.minnbhd[y].contains(x)))
    }

    /// All open sets, for spaces of at most 20 points.
    pub fn open_sets(&self) -> Vec<PointSet> {
        let n = self.points();
        assert!(n <= 20, "open-set enumeration limited to 20 points");
        (0u32..1 << n).map(|bits| point_set(n, (0..n).filter(|&i| bits >> i & 1 == 1))).filter(|s| self.is_open(s)).collect()
    }

    /// Subspace topology on `subset`, re-indexed in ascending order.
    pub fn induced(&self, subset: &[usize]) -> AlexandrovTopology {
        let k = subset.len();
        let rows = subset.iter().map(|&x| point_set(k, (0..k).filter(|&j| self.minnbhd[x].contains(subset[j])))).collect();
        AlexandrovTopology { minnbhd: rows }
    }

    pub fn separation(&self) -> Separation {
        let n = self.points();
        let pairs = || (0..n).flat_map(move |x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)));
        let is_t0 = pairs().all(|(x, y)| !(self.related(x, y) && self.related(y, x)));
        let is_t1 = pairs().all(|(x, y)| !self.related(x, y));
        let is_hausdorff = pairs().all(|(x, y)| self.minnbhd[x].is_disjoint(&self.minnbhd[y]));
        let is_discrete = (0..n).all(|x| self.minnbhd[x].count_ones(..) == 1);
        let is_indiscrete = (0..n).all(|x| self.minnbhd[x].count_ones(..) == n);
        Separation { is_t0, is_t1, is_hausdorff, is_discrete, is_indiscrete }
    }

    /// Text diagram: one line per cell, then strict specialisations between cells.
    pub fn render(&self) -> String {
        let (label, count) = self.cells();
        let mut out = String::new();
        let n = self.points();
        for c in 0..count {
            let members: Vec<usize> = (0..n).filter(|&x| label[x] == c).collect();
            let rep = members[0];
            let above: Vec<usize> = self.minnbhd[rep].ones().filter(|&y| !self.related(y, rep)).collect();
            let _ = write!(out, "cell {c}: {members:?}");
            if !above.is_empty() {
                let _ = write!(out, "  U contains {above:?}");
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&TopologyJson::from(self)).expect("topology JSON serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: TopologyJson = serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
        j.try_into()
    }
}

/// `{"n": int, "minnbhd": [[bool, ...]]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TopologyJson {
    pub n: usize,
    pub minnbhd: Vec<Vec<bool>>,
}

impl From<&AlexandrovTopology> for TopologyJson {
    fn from(t: &AlexandrovTopology) -> Self {
        let n = t.points();
        TopologyJson { n, minnbhd: t.minnbhd.iter().map(|r| (0..n).map(|y| r.contains(y)).collect()).collect() }
    }
}

impl TryFrom<TopologyJson> for AlexandrovTopology {
    type Error = Error;

    fn try_from(j: TopologyJson) -> Result<Self> {
        if j.minnbhd.len() != j.n {
            return Err(Error::Malformed(format!("n = {} but {} rows", j.n, j.minnbhd.len())));
        }
        AlexandrovTopology::from_matrix(&j.minnbhd)
    }
}

impl Serialize for AlexandrovTopology {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TopologyJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlexandrovTopology {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        TopologyJson::deserialize(d)?.try_into().map_err(serde::de::Error::custom)
    }
}

/// Product topology; point `(x, a)` has index `x * |T2| + a` and minimal
/// neighbourhood `U_x × U_a`.
pub fn product_topology(t1: &AlexandrovTopology, t2: &AlexandrovTopology) -> AlexandrovTopology {
    let (n1, n2) = (t1.points(), t2.points());
    let rows = (0..n1 * n2)
        .map(|p| {
            let (x, a) = (p / n2, p % n2);
            let mut s = FixedBitSet::with_capacity(n1 * n2);
            for y in t1.minnbhd[x].ones() {
                for b in t2.minnbhd[a].ones() {
                    s.insert(y * n2 + b);
                }
            }
            s
        })
        .collect();
    AlexandrovTopology { minnbhd: rows }
}

/// Final (quotient) topology on `0..target_points` for the surjection `f`.
/// Each minimal open set is grown from its seed by saturation:
/// `V <- f(up(f^-1(V)))` until it stops changing.
pub fn final_topology(t: &AlexandrovTopology, f: &[usize], target_points: usize) -> Result<AlexandrovTopology> {
    if f.len() != t.points() {
        return Err(Error::SizeMismatch { expected: t.points(), got: f.len() });
    }
    let mut fibres: Vec<Vec<usize>> = vec![Vec::new(); target_points];
    for (x, &y) in f.iter().enumerate() {
        if y >= target_points {
            return Err(Error::Malformed(format!("map value {y} out of range")));
        }
        fibres[y].push(x);
    }
    if let Some(y) = fibres.iter().position(Vec::is_empty) {
        return Err(Error::NotSurjective(y));
    }
    let rows = (0..target_points)
        .map(|seed| {
            let mut v = point_set(target_points, [seed]);
            loop {
                let mut up = t.empty_set();
                for y in v.ones() {
                    for &x in &fibres[y] {
                        up.union_with(&t.minnbhd[x]);
                    }
                }
                let next = point_set(target_points, up.ones().map(|x| f[x]));
                if next == v {
                    break v;
                }
                v = next;
            }
        })
        .collect();
    Ok(AlexandrovTopology { minnbhd: rows })
}

/// Minimal-neighbourhood criterion: `f(U_x) ⊆ U_{f(x)}` for every `x`.
pub fn is_continuous(f: &[usize], tx: &AlexandrovTopology, ty: &AlexandrovTopology) -> bool {
    continuity_witness(f, tx, ty).is_none()
}

/// A pair `(x, x')` with `x' ∈ U_x` but `f(x') ∉ U_{f(x)}`.
pub fn continuity_witness(f: &[usize], tx: &AlexandrovTopology, ty: &AlexandrovTopology) -> Option<(usize, usize)> {
    (0..tx.points()).find_map(|x| tx.minnbhd[x].ones().find(|&x2| !ty.minnbhd[f[x]].contains(f[x2])).map(|x2| (x, x2)))
}

/// Open-preimage definition, by enumerating the opens of the target.
pub fn is_continuous_bruteforce(f: &[usize], tx: &AlexandrovTopology, ty: &AlexandrovTopology) -> bool {
    ty.open_sets().iter().all(|v| {
        let pre = point_set(tx.points(), (0..tx.points()).filter(|&x| v.contains(f[x])));
        tx.is_open(&pre)
    })
}

/// Images of minimal open sets are open.
pub fn is_open_map(f: &[usize], tx: &AlexandrovTopology, ty: &AlexandrovTopology) -> bool {
    (0..tx.points()).all(|x| ty.is_open(&point_set(ty.points(), tx.minnbhd[x].ones().map(|p| f[p]))))
}
