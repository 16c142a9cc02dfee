//! `f64` shadow of the measure action, used only to cross-check the exact
//! paths in benches and tests.

use crate::group::GroupTable;

pub const TOLERANCE: f64 = 1e-9;

/// `(f·μ)(y) = Σ_x f(xy) μ(x)` in floating point.
pub fn act(g: &GroupTable, f: &[f64], mu: &[f64]) -> Vec<f64> {
    (0..g.order()).map(|y| (0..g.order()).map(|x| f[g.mul(x, y)] * mu[x]).sum()).collect()
}

pub fn convolve(g: &GroupTable, mu: &[f64], nu: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; g.order()];
    for (x, &a) in mu.iter().enumerate() {
        for (y, &b) in nu.iter().enumerate() {
            out[g.mul(x, y)] += a * b;
        }
    }
    out
}

pub fn approx_eq(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= TOLERANCE)
}
