//! Exact minimization of `F(c) = max_i (|c − a_i|² − w_i)`.
//!
//! Both hyperbolic solvers reduce to this problem: the join is the smallest
//! ball centered on the base hyperplane containing the set (`w_i = −h_i²`),
//! the meet is the highest point inside every left half ball (`w_i = h_i²`).
//!
//! `F` is strictly convex, so its minimizer is determined by a support set
//! of at most `k + 1` sites on which the terms are equal. Small problems
//! are solved by enumerating support sets; larger ones fall back to
//! Frank-Wolfe on the dual over the simplex.

use nalgebra::{DMatrix, DVector};

use crate::point::{dist_sq, dot};

/// Sites beyond which enumeration switches to the iterative fallback.
const MAX_SUBSETS: usize = 200_000;

pub fn objective(sites: &[&[f64]], weights: &[f64], c: &[f64]) -> f64 {
    sites
        .iter()
        .zip(weights)
        .map(|(a, w)| dist_sq(c, a) - w)
        .fold(f64::NEG_INFINITY, f64::max)
}

fn subset_count(n: usize, max_size: usize) -> usize {
    let mut total = 0usize;
    let mut binom = 1usize;
    for s in 1..=max_size.min(n) {
        binom = binom.saturating_mul(n + 1 - s) / s;
        total = total.saturating_add(binom);
    }
    total
}

/// Returns `(argmin, min)`.
pub fn power_minimax(sites: &[&[f64]], weights: &[f64]) -> (Vec<f64>, f64) {
    assert!(!sites.is_empty() && sites.len() == weights.len());
    let k = sites[0].len();
    if k == 0 {
        let v = weights.iter().map(|w| -w).fold(f64::NEG_INFINITY, f64::max);
        return (Vec::new(), v);
    }
    let n = sites.len();
    if subset_count(n, k + 1) > MAX_SUBSETS {
        return frank_wolfe(sites, weights);
    }

    let mut best_c = sites[0].to_vec();
    let mut best_v = objective(sites, weights, &best_c);
    let mut subset = Vec::with_capacity(k + 1);
    enumerate(n, k + 1, 0, &mut subset, &mut |s| {
        if let Some(c) = support_center(sites, weights, s) {
            let v = objective(sites, weights, &c);
            if v < best_v {
                best_v = v;
                best_c = c;
            }
        }
    });
    (best_c, best_v)
}

fn enumerate(n: usize, max: usize, start: usize, cur: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    for i in start..n {
        cur.push(i);
        visit(cur);
        if cur.len() < max {
            enumerate(n, max, i + 1, cur, visit);
        }
        cur.pop();
    }
}

/// Point of the affine hull of the support sites at which all their terms
/// are equal, or `None` when that system is singular.
fn support_center(sites: &[&[f64]], weights: &[f64], s: &[usize]) -> Option<Vec<f64>> {
    let m = s.len();
    if m == 1 {
        return Some(sites[s[0]].to_vec());
    }
    // c = Σ λ_j a_j, Σ λ_j = 1, and −2 (c, a_i) + |a_i|² − w_i = μ for i in s
    let mut a = DMatrix::zeros(m + 1, m + 1);
    let mut rhs = DVector::zeros(m + 1);
    for r in 0..m {
        let ar = sites[s[r]];
        for col in 0..m {
            a[(r, col)] = -2.0 * dot(ar, sites[s[col]]);
        }
        a[(r, m)] = -1.0;
        a[(m, r)] = 1.0;
        rhs[r] = -(dot(ar, ar) - weights[s[r]]);
    }
    rhs[m] = 1.0;
    let sol = a.lu().solve(&rhs)?;
    if !sol.iter().all(|v| v.is_finite()) {
        return None;
    }
    let k = sites[0].len();
    let mut c = vec![0.0; k];
    for (j, &idx) in s.iter().enumerate() {
        for (cc, ac) in c.iter_mut().zip(sites[idx]) {
            *cc += sol[j] * ac;
        }
    }
    Some(c)
}

/// Frank-Wolfe on the concave dual `max_λ Σ λ_i k_i − |Σ λ_i a_i|²`
/// (`k_i = |a_i|² − w_i`) with exact line search; the primal point is
/// `c = Σ λ_i a_i`.
fn frank_wolfe(sites: &[&[f64]], weights: &[f64]) -> (Vec<f64>, f64) {
    let n = sites.len();
    let kk: Vec<f64> = sites.iter().zip(weights).map(|(a, w)| dot(a, a) - w).collect();
    let mut c = sites[0].to_vec();
    let mut s = kk[0];
    let mut best_c = c.clone();
    let mut best_v = objective(sites, weights, &c);
    for _ in 0..50_000 {
        let (i, _) = (0..n)
            .map(|i| (i, kk[i] - 2.0 * dot(sites[i], &c)))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        let d: Vec<f64> = sites[i].iter().zip(&c).map(|(a, b)| a - b).collect();
        let dd = dot(&d, &d);
        let slope = (kk[i] - s) - 2.0 * dot(&c, &d);
        if slope <= 0.0 {
            break;
        }
        let gamma = if dd > 0.0 { (slope / (2.0 * dd)).min(1.0) } else { 1.0 };
        s += gamma * (kk[i] - s);
        for (cc, dc) in c.iter_mut().zip(&d) {
            *cc += gamma * dc;
        }
        let v = objective(sites, weights, &c);
        if v < best_v {
            best_v = v;
            best_c = c.clone();
        }
    }
    (best_c, best_v)
}
