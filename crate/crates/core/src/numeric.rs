//! Small numerical helpers shared by the family solvers.

use nalgebra::{DMatrix, DVector};

/// Golden-section minimization of a unimodal function on `[lo, hi]`.
///
/// Returns `(argmin, min)`. Stops once the bracket is narrower than `tol`
/// or after 200 iterations.
pub fn golden_min(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    // endpoints are candidates too: the minimum of a monotone piece sits there
    let mut best = if fc <= fd { (c, fc) } else { (d, fd) };
    for x in [lo, hi] {
        let fx = f(x);
        if fx < best.1 {
            best = (x, fx);
        }
    }
    best
}

/// Solves a small dense square system, falling back to an SVD
/// least-squares solution when the matrix is (nearly) singular.
/// Returns `None` if no finite solution is found.
pub fn solve(a: DMatrix<f64>, b: DVector<f64>) -> Option<DVector<f64>> {
    if let Some(x) = a.clone().lu().solve(&b) {
        if x.iter().all(|v| v.is_finite()) {
            return Some(x);
        }
    }
    let x = a.svd(true, true).solve(&b, 1e-12).ok()?;
    x.iter().all(|v| v.is_finite()).then_some(x)
}

/// Raises `value` one ulp at a time (up to `max_steps`) until `ok` holds.
pub fn nudge_up(mut value: f64, max_steps: usize, ok: impl Fn(f64) -> bool) -> Option<f64> {
    for _ in 0..=max_steps {
        if ok(value) {
            return Some(value);
        }
        value = value.next_up();
    }
    None
}

/// Lowers `value` one ulp at a time (up to `max_steps`) until `ok` holds.
pub fn nudge_down(mut value: f64, max_steps: usize, ok: impl Fn(f64) -> bool) -> Option<f64> {
    for _ in 0..=max_steps {
        if ok(value) {
            return Some(value);
        }
        value = value.next_down();
    }
    None
}
