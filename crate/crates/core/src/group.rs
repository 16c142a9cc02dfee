//! Finite groups as multiplication tables: validation, subgroup lattice,
//! normal closures, normalizers and quotients.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub mod catalog;

/// Largest order accepted by [`subgroups`] unless a bound is passed explicitly.
pub const DEFAULT_ORDER_BOUND: usize = 24;
/// Element sets are `u64` bitmasks.
pub const MAX_ORDER: usize = 64;

/// A set of group elements, bit `i` standing for element `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ElemSet(u64);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub fn full(n: usize) -> Self {
        if n == 64 {
            ElemSet(u64::MAX)
        } else {
            ElemSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(x: usize) -> Self {
        ElemSet(1 << x)
    }

    pub fn from_bits(bits: u64) -> Self {
        ElemSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, x: usize) -> bool {
        x < 64 && self.0 >> x & 1 == 1
    }

    pub fn insert(&mut self, x: usize) {
        self.0 |= 1 << x;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: ElemSet) -> ElemSet {
        ElemSet(self.0 | o.0)
    }

    pub fn intersect(self, o: ElemSet) -> ElemSet {
        ElemSet(self.0 & o.0)
    }

    pub fn minus(self, o: ElemSet) -> ElemSet {
        ElemSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: ElemSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Elements in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElemSet::EMPTY;
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ElemSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ElemSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if let Some(&bad) = v.iter().find(|&&x| x >= MAX_ORDER) {
            return Err(serde::de::Error::custom(format!("element index {bad} out of range")));
        }
        Ok(v.into_iter().collect())
    }
}

/// A finite group given by its multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupTable {
    mul: Vec<Vec<usize>>,
    identity: usize,
    inv: Vec<usize>,
    name: Option<String>,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupTable").field("name", &self.name).field("order", &self.order()).finish()
    }
}

/// Checks the group axioms on `table` and derives identity and inverses.
pub fn validate_group(table: Vec<Vec<usize>>) -> Result<GroupTable> {
    let n = table.len();
    if n == 0 {
        return Err(not_a_group("empty table", vec![]));
    }
    if n > MAX_ORDER {
        return Err(Error::OrderTooLarge { order: n, bound: MAX_ORDER });
    }
    for (r, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(not_a_group("table is not square", vec![r]));
        }
        if let Some(c) = row.iter().position(|&v| v >= n) {
            return Err(not_a_group("entry out of range", vec![r, c]));
        }
    }
    // Latin square: rows then columns.
    for (r, row) in table.iter().enumerate() {
        let mut seen = vec![usize::MAX; n];
        for (c, &v) in row.iter().enumerate() {
            if seen[v] != usize::MAX {
                return Err(not_a_group("Latin square violated (row)", vec![r, seen[v], c]));
            }
            seen[v] = c;
        }
    }
    for c in 0..n {
        let mut seen = vec![usize::MAX; n];
        for (r, row) in table.iter().enumerate() {
            let v = row[c];
            if seen[v] != usize::MAX {
                return Err(not_a_group("Latin square violated (column)", vec![seen[v], r, c]));
            }
            seen[v] = r;
        }
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or_else(|| not_a_group("no two-sided identity", vec![]))?;
    for x in 0..n {
        for y in 0..n {
            let xy = table[x][y];
            for z in 0..n {
                if table[xy][z] != table[x][table[y][z]] {
                    return Err(not_a_group("associativity fails", vec![x, y, z]));
                }
            }
        }
    }
    let mut inv = vec![0; n];
    for x in 0..n {
        let y = (0..n).find(|&y| table[x][y] == identity).expect("Latin row");
        if table[y][x] != identity {
            return Err(not_a_group("left and right inverses differ", vec![x, y]));
        }
        inv[x] = y;
    }
    Ok(GroupTable { mul: table, identity, inv, name: None })
}

fn not_a_group(reason: &str, witness: Vec<usize>) -> Error {
    Error::NotAGroup { reason: reason.to_string(), witness }
}

impl GroupTable {
    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("G{}", self.order()))
    }

    pub fn elements(&self) -> ElemSet {
        ElemSet::full(self.order())
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `g S g^-1`.
    pub fn conjugate_set(&self, s: ElemSet, g: usize) -> ElemSet {
        s.iter().map(|x| self.conj(g, x)).collect()
    }

    /// `S g`.
    pub fn right_mul_set(&self, s: ElemSet, g: usize) -> ElemSet {
        s.iter().map(|x| self.mul(x, g)).collect()
    }

    /// `g S`.
    pub fn left_mul_set(&self, g: usize, s: ElemSet) -> ElemSet {
        s.iter().map(|x| self.mul(g, x)).collect()
    }

    /// `A B`.
    pub fn product_set(&self, a: ElemSet, b: ElemSet) -> ElemSet {
        let mut out = ElemSet::EMPTY;
        for x in a.iter() {
            for y in b.iter() {
                out.insert(self.mul(x, y));
            }
        }
        out
    }

    pub fn inverse_set(&self, s: ElemSet) -> ElemSet {
        s.iter().map(|x| self.inv(x)).collect()
    }

    /// Subgroup generated by `gens`.
    pub fn generate(&self, gens: ElemSet) -> Subgrp {
        let mut set = ElemSet::singleton(self.identity);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for s in gens.iter() {
                let y = self.mul(x, s);
                if !set.contains(y) {
                    set.insert(y);
                    queue.push_back(y);
                }
            }
        }
        Subgrp(set)
    }

    /// Greedy generating set: each element is the least one outside the
    /// subgroup generated so far.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = ElemSet::default();
        let mut out = Vec::new();
        while let Some(x) = self.elements().minus(self.generate(gens).set()).min() {
            gens.insert(x);
            out.push(x);
        }
        out
    }

    pub fn is_subgroup(&self, s: ElemSet) -> bool {
        s.contains(self.identity) && s.iter().all(|x| s.contains(self.inv(x)) && s.iter().all(|y| s.contains(self.mul(x, y))))
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Some element `g` with `g H g^-1 != H`, if any.
    pub fn normality_witness(&self, h: ElemSet) -> Option<usize> {
        (0..self.order()).find(|&g| self.conjugate_set(h, g) != h)
    }

    pub fn is_normal(&self, h: ElemSet) -> bool {
        self.normality_witness(h).is_none()
    }

    pub fn trivial(&self) -> Subgrp {
        Subgrp(ElemSet::singleton(self.identity))
    }

    pub fn whole(&self) -> Subgrp {
        Subgrp(self.elements())
    }

    /// Group JSON: `{"order": n, "mul": [[...]], "name": string?}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&GroupJson::from(self)).expect("group JSON serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: GroupJson = serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
        j.try_into()
    }
}

/// Serialized form of a [`GroupTable`].
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupJson {
    pub order: usize,
    pub mul: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl From<&GroupTable> for GroupJson {
    fn from(g: &GroupTable) -> Self {
        GroupJson { order: g.order(), mul: g.mul.clone(), name: g.name.clone() }
    }
}

impl TryFrom<GroupJson> for GroupTable {
    type Error = Error;

    fn try_from(j: GroupJson) -> Result<Self> {
        if j.order != j.mul.len() {
            return Err(Error::Malformed(format!("order {} but table has {} rows", j.order, j.mul.len())));
        }
        let mut g = validate_group(j.mul)?;
        g.name = j.name;
        Ok(g)
    }
}

impl Serialize for GroupTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GroupJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        GroupJson::deserialize(d)?.try_into().map_err(serde::de::Error::custom)
    }
}

/// A subgroup, stored as its element set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subgrp(ElemSet);

impl Subgrp {
    pub fn new(g: &GroupTable, set: ElemSet) -> Result<Self> {
        if set.is_subset(g.elements()) && g.is_subgroup(set) {
            Ok(Subgrp(set))
        } else {
            Err(Error::NotASubgroup(set.to_vec()))
        }
    }

    pub fn from_elements(g: &GroupTable, elems: &[usize]) -> Result<Self> {
        Self::new(g, elems.iter().copied().collect())
    }

    pub fn set(self) -> ElemSet {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.len()
    }

    pub fn is_empty(self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(self, x: usize) -> bool {
        self.0.contains(x)
    }

    pub fn is_trivial(self) -> bool {
        self.0.len() == 1
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.0.to_vec()
    }

    pub fn is_subgroup_of(self, other: Subgrp) -> bool {
        self.0.is_subset(other.0)
    }
}

/// All subgroups of `g`, sorted by size then lexicographically.
pub fn subgroups(g: &GroupTable) -> Result<Vec<Subgrp>> {
    subgroups_bounded(g, DEFAULT_ORDER_BOUND)
}

pub fn subgroups_bounded(g: &GroupTable, bound: usize) -> Result<Vec<Subgrp>> {
    if g.order() > bound {
        return Err(Error::OrderTooLarge { order: g.order(), bound });
    }
    let start = g.trivial();
    let mut seen: HashSet<ElemSet> = HashSet::from([start.0]);
    let mut queue = VecDeque::from([start]);
    let mut out = Vec::new();
    while let Some(h) = queue.pop_front() {
        for x in g.elements().minus(h.0).iter() {
            let k = g.generate(h.0.union(ElemSet::singleton(x)));
            if seen.insert(k.0) {
                queue.push_back(k);
            }
        }
        out.push(h);
    }
    out.sort_by_key(|h| (h.len(), h.to_vec()));
    Ok(out)
}

pub fn normal_subgroups(g: &GroupTable) -> Result<Vec<Subgrp>> {
    Ok(subgroups(g)?.into_iter().filter(|h| g.is_normal(h.set())).collect())
}

/// Smallest normal subgroup containing `s`.
pub fn normal_closure(g: &GroupTable, s: ElemSet) -> Subgrp {
    let conjugates: ElemSet = (0..g.order()).flat_map(|x| s.iter().map(move |y| (x, y))).map(|(x, y)| g.conj(x, y)).collect();
    g.generate(conjugates)
}

/// `{g : g H g^-1 = H}`.
pub fn normalizer(g: &GroupTable, h: Subgrp) -> Subgrp {
    Subgrp((0..g.order()).filter(|&x| g.conjugate_set(h.0, x) == h.0).collect())
}

/// `G/N` on left cosets `xN`, numbered by first appearance in element order.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: GroupTable,
    /// element index -> coset index
    pub projection: Vec<usize>,
    /// coset index -> smallest element of the coset
    pub representatives: Vec<usize>,
}

impl Quotient {
    /// Elements of `G` lying over the given quotient elements.
    pub fn preimage(&self, cosets: ElemSet) -> ElemSet {
        self.projection.iter().enumerate().filter(|(_, &c)| cosets.contains(c)).map(|(x, _)| x).collect()
    }

    pub fn image(&self, s: ElemSet) -> ElemSet {
        s.iter().map(|x| self.projection[x]).collect()
    }
}

pub fn quotient_group(g: &GroupTable, n: Subgrp) -> Result<Quotient> {
    if let Some(w) = g.normality_witness(n.0) {
        return Err(Error::NotNormal { witness: w });
    }
    let mut projection = vec![usize::MAX; g.order()];
    let mut representatives = Vec::new();
    for x in 0..g.order() {
        if projection[x] != usize::MAX {
            continue;
        }
        let idx = representatives.len();
        representatives.push(x);
        for y in g.left_mul_set(x, n.0).iter() {
            projection[y] = idx;
        }
    }
    let table = representatives.iter().map(|&a| representatives.iter().map(|&b| projection[g.mul(a, b)]).collect()).collect();
    let mut group = validate_group(table)?;
    group.name = Some(format!("{}/{}", g.label(), format_set(n.0)));
    Ok(Quotient { group, projection, representatives })
}

/// `L` as a group in its own right, with `embed[i]` the element of `G`
/// standing for element `i` of the returned table.
pub fn subgroup_as_group(g: &GroupTable, l: Subgrp) -> (GroupTable, Vec<usize>) {
    let embed = l.to_vec();
    let mut index = vec![usize::MAX; g.order()];
    for (i, &x) in embed.iter().enumerate() {
        index[x] = i;
    }
    let table = embed.iter().map(|&a| embed.iter().map(|&b| index[g.mul(a, b)]).collect()).collect();
    let sub = validate_group(table).expect("subgroup table satisfies the axioms");
    (sub.with_name(format!("{}|{}", g.label(), format_set(l.0))), embed)
}

/// Backtracking isomorphism test; returns an isomorphism `a -> b` if one exists.
pub fn find_isomorphism(a: &GroupTable, b: &GroupTable) -> Option<Vec<usize>> {
    if a.order() != b.order() || a.is_abelian() != b.is_abelian() {
        return None;
    }
    let gens = greedy_generators(a);
    let mut images = Vec::with_capacity(gens.len());
    assign_generators(a, b, &gens, &mut images)
}

fn greedy_generators(a: &GroupTable) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = a.trivial();
    for x in 0..a.order() {
        if !span.contains(x) {
            gens.push(x);
            span = a.generate(span.0.union(ElemSet::singleton(x)));
        }
    }
    gens
}

/// All homomorphisms `a -> b`, each as an image vector.
pub fn homomorphisms(a: &GroupTable, b: &GroupTable) -> Vec<Vec<usize>> {
    let gens = greedy_generators(a);
    let mut out = Vec::new();
    let mut images = Vec::with_capacity(gens.len());
    fn go(a: &GroupTable, b: &GroupTable, gens: &[usize], images: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if images.len() == gens.len() {
            if let Some(m) = extend_map(a, b, gens, images) {
                out.push(m);
            }
            return;
        }
        let ox = a.element_order(gens[images.len()]);
        for y in 0..b.order() {
            if ox.is_multiple_of(b.element_order(y)) {
                images.push(y);
                go(a, b, gens, images, out);
                images.pop();
            }
        }
    }
    go(a, b, &gens, &mut images, &mut out);
    out
}

fn assign_generators(a: &GroupTable, b: &GroupTable, gens: &[usize], images: &mut Vec<usize>) -> Option<Vec<usize>> {
    if images.len() == gens.len() {
        return extend_hom(a, b, gens, images);
    }
    let x = gens[images.len()];
    let ox = a.element_order(x);
    for y in 0..b.order() {
        if b.element_order(y) != ox {
            continue;
        }
        images.push(y);
        if let Some(m) = assign_generators(a, b, gens, images) {
            return Some(m);
        }
        images.pop();
    }
    None
}

fn extend_hom(a: &GroupTable, b: &GroupTable, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let map = extend_map(a, b, gens, images)?;
    let bijective = map.iter().copied().collect::<HashSet<_>>().len() == a.order();
    bijective.then_some(map)
}

/// Extends generator images along the Cayley graph; `None` unless the result
/// is a homomorphism.
fn extend_map(a: &GroupTable, b: &GroupTable, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; a.order()];
    map[a.identity()] = b.identity();
    let mut queue = VecDeque::from([a.identity()]);
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(images) {
            let xs = a.mul(x, s);
            let img = b.mul(map[x], t);
            if map[xs] == usize::MAX {
                map[xs] = img;
                queue.push_back(xs);
            } else if map[xs] != img {
                return None;
            }
        }
    }
    let hom = (0..a.order()).all(|x| (0..a.order()).all(|y| map[a.mul(x, y)] == b.mul(map[x], map[y])));
    hom.then_some(map)
}

pub fn format_set(s: ElemSet) -> String {
    let parts: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::catalog::*;
    use super::*;

    #[test]
    fn z2_validates() {
        let g = validate_group(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.identity(), 0);
    }

    #[test]
    fn generators_generate() {
        for g in [cyclic(12), symmetric(4), quaternion(), elementary_abelian2(3)] {
            let gens = g.generators();
            let set = gens.iter().fold(ElemSet::default(), |mut s, &x| {
                s.insert(x);
                s
            });
            assert_eq!(g.generate(set), g.whole(), "{}", g.label());
        }
        assert_eq!(cyclic(12).generators(), vec![1]);
        assert_eq!(elementary_abelian2(3).generators().len(), 3);
    }

    #[test]
    fn constant_row_is_rejected() {
        let err = validate_group(vec![vec![0, 1], vec![1, 1]]).unwrap_err();
        match err {
            Error::NotAGroup { reason, .. } => assert!(reason.contains("Latin square")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn out_of_range_entry_is_rejected() {
        assert!(matches!(validate_group(vec![vec![0, 2], vec![1, 0]]), Err(Error::NotAGroup { .. })));
    }

    #[test]
    fn non_associative_latin_square_is_rejected() {
        // A loop of order 5 that is not a group.
        let t = vec![vec![0, 1, 2, 3, 4], vec![1, 0, 3, 4, 2], vec![2, 4, 0, 1, 3], vec![3, 2, 4, 0, 1], vec![4, 3, 1, 2, 0]];
        let err = validate_group(t).unwrap_err();
        assert!(matches!(err, Error::NotAGroup { ref reason, .. } if reason.contains("associativity")));
    }

    #[test]
    fn s3_from_permutation_composition() {
        let g = symmetric(3);
        assert_eq!(g.order(), 6);
        // brute-force axiom check, independent of validate_group
        for x in 0..6 {
            for y in 0..6 {
                for z in 0..6 {
                    assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
                }
            }
            assert_eq!(g.mul(x, g.inv(x)), g.identity());
        }
        assert!(!g.is_abelian());
    }

    #[test]
    fn subgroup_counts() {
        let z2 = cyclic(2);
        let subs = subgroups(&z2).unwrap();
        assert_eq!(subs.iter().map(|h| h.to_vec()).collect::<Vec<_>>(), vec![vec![0], vec![0, 1]]);

        let z4 = cyclic(4);
        let subs = subgroups(&z4).unwrap();
        assert_eq!(subs.iter().map(|h| h.to_vec()).collect::<Vec<_>>(), vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]);

        let s3 = symmetric(3);
        let subs = subgroups(&s3).unwrap();
        let sizes: Vec<usize> = subs.iter().map(|h| h.len()).collect();
        assert_eq!(sizes, vec![1, 2, 2, 2, 3, 6]);
    }

    /// Brute force over all 2^n element subsets.
    fn brute_subgroups(g: &GroupTable) -> Vec<ElemSet> {
        let n = g.order();
        let mut out: Vec<ElemSet> = (0u64..1 << n).map(ElemSet::from_bits).filter(|&s| g.is_subgroup(s)).collect();
        out.sort_by_key(|s| (s.len(), s.to_vec()));
        out
    }

    #[test]
    fn subgroups_match_brute_force() {
        for g in [symmetric(3), dihedral(4), quaternion(), cyclic(12), alternating4(), elementary_abelian2(3)] {
            let fast: Vec<ElemSet> = subgroups(&g).unwrap().iter().map(|h| h.set()).collect();
            assert_eq!(fast, brute_subgroups(&g), "{}", g.label());
        }
    }

    #[test]
    fn subgroups_respects_bound() {
        let s4 = symmetric(4);
        assert!(matches!(subgroups_bounded(&s4, 12), Err(Error::OrderTooLarge { order: 24, bound: 12 })));
        assert_eq!(subgroups(&s4).unwrap().len(), 30);
    }

    #[test]
    fn normal_closure_examples() {
        let s3 = symmetric(3);
        let t = s3_transposition_12();
        assert_eq!(normal_closure(&s3, ElemSet::singleton(t)).set(), s3.elements());
        assert_eq!(normal_closure(&s3, ElemSet::singleton(0)).to_vec(), vec![0]);

        let d4 = dihedral(4);
        let (r, s) = (dihedral_r(4), dihedral_s(4));
        let r2 = d4.mul(r, r);
        let expected: ElemSet = [0, s, r2, d4.mul(r2, s)].into_iter().collect();
        assert_eq!(normal_closure(&d4, ElemSet::singleton(s)).set(), expected);
    }

    #[test]
    fn normalizer_examples() {
        let s3 = symmetric(3);
        let t = s3_transposition_12();
        let h = Subgrp::from_elements(&s3, &[0, t]).unwrap();
        assert_eq!(normalizer(&s3, h), h);

        let d4 = dihedral(4);
        let (r, s) = (dihedral_r(4), dihedral_s(4));
        let r2 = d4.mul(r, r);
        let h = Subgrp::from_elements(&d4, &[0, s]).unwrap();
        let expected: ElemSet = [0, s, r2, d4.mul(r2, s)].into_iter().collect();
        assert_eq!(normalizer(&d4, h).set(), expected);

        let q8 = quaternion();
        let c = Subgrp::from_elements(&q8, &[0, 4]).unwrap();
        assert_eq!(normalizer(&q8, c).set(), q8.elements());
    }

    #[test]
    fn quotient_examples() {
        let s3 = symmetric(3);
        let a3 = s3.generate(ElemSet::singleton(s3_three_cycle()));
        assert_eq!(a3.len(), 3);
        let q = quotient_group(&s3, a3).unwrap();
        assert_eq!(q.group.order(), 2);
        assert!(find_isomorphism(&q.group, &cyclic(2)).is_some());

        let q = quotient_group(&s3, s3.trivial()).unwrap();
        assert_eq!(q.projection, (0..6).collect::<Vec<_>>());

        let t = s3_transposition_12();
        let h = Subgrp::from_elements(&s3, &[0, t]).unwrap();
        match quotient_group(&s3, h) {
            Err(Error::NotNormal { witness }) => {
                assert!(!normalizer(&s3, h).contains(witness));
            }
            other => panic!("expected NotNormal, got {other:?}"),
        }
    }

    #[test]
    fn json_round_trip_is_byte_stable() {
        let g = dihedral(4);
        let s = g.to_json();
        let back = GroupTable::from_json(&s).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.to_json(), s);
        assert!(s.starts_with("{\"order\":8,\"mul\":[["));
    }

    #[test]
    fn json_order_mismatch_is_malformed() {
        assert!(matches!(GroupTable::from_json(r#"{"order":3,"mul":[[0,1],[1,0]]}"#), Err(Error::Malformed(_))));
    }

    #[test]
    fn isomorphism_detection() {
        assert!(find_isomorphism(&dihedral(3), &symmetric(3)).is_some());
        assert!(find_isomorphism(&quaternion(), &dihedral(4)).is_none());
        assert!(find_isomorphism(&cyclic(4), &elementary_abelian2(2)).is_none());
    }

    #[test]
    fn homomorphism_counts() {
        // |Hom(G, Z_m)| = |Hom(G_ab, Z_m)|
        assert_eq!(homomorphisms(&symmetric(3), &cyclic(2)).len(), 2);
        assert_eq!(homomorphisms(&symmetric(3), &cyclic(3)).len(), 1);
        assert_eq!(homomorphisms(&cyclic(6), &cyclic(3)).len(), 3);
        assert_eq!(homomorphisms(&elementary_abelian2(2), &cyclic(2)).len(), 4);
        assert_eq!(homomorphisms(&quaternion(), &cyclic(2)).len(), 4);
    }
}
