//! Exact Gaussian elimination over `Q(i)`: reduced row echelon form,
//! nullspaces, and subspaces with membership tests.

use num_traits::Zero;

use crate::scalar::{one, Cq};

/// Reduces `rows` in place to reduced row echelon form and returns the
/// pivot column of each nonzero row. Zero rows are dropped.
pub fn rref(rows: &mut Vec<Vec<Cq>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = one() / rows[r][col].clone();
        for v in rows[r][col..].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, pv) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                if !pv.is_zero() {
                    *v = v.clone() - factor.clone() * pv.clone();
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Cq>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Basis of `{x : A x = 0}` for the constraint rows `A`. One vector per
/// free column, with a `1` in that column.
pub fn nullspace(rows: Vec<Vec<Cq>>, ncols: usize) -> Vec<Vec<Cq>> {
    let mut m = rows;
    let pivots = rref(&mut m, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Cq::zero(); ncols];
            v[free] = one();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            v
        })
        .collect()
}

/// Basis of `{B c : R B c = 0}` for a basis `B` (given as vectors) and
/// constraint rows `R`, both over the ambient coordinates.
pub fn solve_within(basis: &[Vec<Cq>], constraints: &[Vec<Cq>], ambient: usize) -> Subspace {
    let k = basis.len();
    let rows: Vec<Vec<Cq>> = constraints
        .iter()
        .map(|r| {
            basis
                .iter()
                .map(|b| {
                    r.iter()
                        .zip(b)
                        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                        .fold(Cq::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
                })
                .collect()
        })
        .filter(|r: &Vec<Cq>| r.iter().any(|x| !x.is_zero()))
        .collect();
    Subspace::span(ambient, nullspace(rows, k).into_iter().map(|c| combine(&c, basis, ambient)))
}

/// `Σ c_i v_i`.
pub fn combine(coeffs: &[Cq], vectors: &[Vec<Cq>], ambient: usize) -> Vec<Cq> {
    let mut out = vec![Cq::zero(); ambient];
    for (c, v) in coeffs.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                *o = o.clone() + c.clone() * x.clone();
            }
        }
    }
    out
}

/// A linear subspace of `Q(i)^n`, kept both as a caller-facing basis and as
/// an echelon form for membership tests.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Cq>>,
    echelon: Vec<Vec<Cq>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Vec::new(), echelon: Vec::new(), pivots: Vec::new() }
    }

    /// The span of `vectors`; the stored basis is an independent subset of them.
    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = Vec<Cq>>) -> Self {
        let mut s = Self::zero(ambient);
        for v in vectors {
            s.push(v);
        }
        s
    }

    /// Adds `v` if it is outside the current span. Returns whether it was added.
    pub fn push(&mut self, v: Vec<Cq>) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let reduced = self.reduce(&v);
        if reduced.iter().all(Zero::is_zero) {
            return false;
        }
        self.basis.push(v);
        self.echelon.push(reduced);
        self.pivots = rref(&mut self.echelon, self.ambient);
        true
    }

    /// `v` minus its echelon projection; zero iff `v` lies in the span.
    fn reduce(&self, v: &[Cq]) -> Vec<Cq> {
        let mut out = v.to_vec();
        for (row, &p) in self.echelon.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o = o.clone() - f.clone() * r.clone();
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Cq]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<Cq>] {
        &self.basis
    }

    /// Reduced echelon basis; canonical for the subspace.
    pub fn echelon(&self) -> &[Vec<Cq>] {
        &self.echelon
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.is_subspace_of(other)
    }

    /// First basis vector of `self` outside `other`, as a witness.
    pub fn first_outside(&self, other: &Subspace) -> Option<&Vec<Cq>> {
        self.basis.iter().find(|v| !other.contains(v))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // x = sum a_i u_i = sum b_j w_j  <=>  [U | -W] (a, b) = 0
        let k = self.dim();
        let l = other.dim();
        let rows: Vec<Vec<Cq>> = (0..self.ambient)
            .map(|coord| {
                self.basis.iter().map(|u| u[coord].clone()).chain(other.basis.iter().map(|w| -w[coord].clone())).collect()
            })
            .collect();
        let coeffs = nullspace(rows, k + l);
        Subspace::span(self.ambient, coeffs.into_iter().map(|c| combine(&c[..k], &self.basis, self.ambient)))
    }
}
