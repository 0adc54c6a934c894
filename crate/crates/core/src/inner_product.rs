//! The inner-product sponge on `R^n`: `x ⪯ y  ⇔  (x, x) ≤ (x, y)`.
//!
//! Every nonempty set has a meet (the point of its convex hull closest to
//! the origin). Joins exist only for right-bounded sets and are the
//! minimum-norm point of an intersection of halfspaces.

use nalgebra::{DMatrix, DVector};

use crate::error::{Result, SpongeError};
use crate::numeric::solve;
use crate::point::{dot, Point, PointSet};

fn check_dims(x: &Point, y: &Point) -> Result<()> {
    if x.dim() != y.dim() {
        return Err(SpongeError::DimensionMismatch { expected: x.dim(), got: y.dim() });
    }
    Ok(())
}

/// `x ⪯ y` in the inner-product sponge. Evaluated exactly, without slack.
pub fn ip_leq(x: &Point, y: &Point) -> Result<bool> {
    check_dims(x, y)?;
    Ok(x.dot(x) <= x.dot(y))
}

/// Membership of `y` in the left cone of `x`: the closed ball centered at
/// `x/2` with radius `|x|/2`. Agrees with `ip_leq(y, x)`.
pub fn ip_left_cone_contains(x: &Point, y: &Point) -> Result<bool> {
    check_dims(x, y)?;
    // |y - x/2|^2 <= |x|^2/4 expands to (y,y) <= (y,x); the expanded form is
    // used so that the two predicates agree bit for bit.
    Ok(y.dot(y) <= y.dot(x))
}

/// Closed halfspaces `{y : (p, y) ≥ |p|²}` for the nonzero `p` of a set; the
/// right bounds of the set are exactly their intersection.
#[derive(Debug, Clone)]
pub struct HalfspaceSystem {
    pub normals: Vec<Point>,
    pub offsets: Vec<f64>,
}

impl HalfspaceSystem {
    /// Zero vectors impose no constraint and are dropped.
    pub fn from_points(p: &PointSet) -> Self {
        let normals: Vec<Point> = p.iter().filter(|q| q.norm_sq() > 0.0).cloned().collect();
        let offsets = normals.iter().map(|q| q.norm_sq()).collect();
        HalfspaceSystem { normals, offsets }
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn contains(&self, y: &Point) -> bool {
        self.normals.iter().zip(&self.offsets).all(|(n, b)| *b <= n.dot(y))
    }

    fn project(&self, i: usize, y: &[f64], out: &mut [f64]) {
        let n = self.normals[i].coords();
        let b = self.offsets[i];
        let v = dot(n, y);
        out.copy_from_slice(y);
        if v < b {
            let t = (b - v) / b;
            for (o, ni) in out.iter_mut().zip(n) {
                *o += t * ni;
            }
        }
    }

    /// Minimum-norm point of the intersection restricted to the constraints
    /// in `active` treated as equalities. Returns the point and the
    /// multipliers (the point is their combination of normals).
    fn equality_solution(&self, active: &[usize]) -> Option<(Vec<f64>, Vec<f64>)> {
        let k = active.len();
        let dim = self.normals[0].dim();
        let g = DMatrix::from_fn(k, k, |a, b| {
            self.normals[active[a]].dot(&self.normals[active[b]])
        });
        let rhs = DVector::from_iterator(k, active.iter().map(|&i| self.offsets[i]));
        let mu = solve(g, rhs)?;
        let mut y = vec![0.0; dim];
        for (a, &i) in active.iter().enumerate() {
            for (yc, nc) in y.iter_mut().zip(self.normals[i].coords()) {
                *yc += mu[a] * nc;
            }
        }
        Some((y, mu.iter().copied().collect()))
    }

    /// Accepts `y` as the exact minimum-norm point if it is feasible and the
    /// multipliers are nonnegative (KKT conditions).
    fn kkt_ok(&self, y: &[f64], mu: &[f64]) -> bool {
        let scale = self.offsets.iter().cloned().fold(0.0, f64::max);
        mu.iter().all(|m| *m >= -1e-10 * (1.0 + m.abs()))
            && self
                .normals
                .iter()
                .zip(&self.offsets)
                .all(|(n, b)| dot(n.coords(), y) >= b - 1e-9 * scale)
    }
}

/// Result of Wolfe's minimum-norm-point method: the point plus a convex
/// combination of input points reproducing it.
#[derive(Debug, Clone)]
pub struct MinNormPoint {
    pub point: Point,
    /// `(index into the input set, weight)`; weights are positive and sum to 1.
    pub support: Vec<(usize, f64)>,
    pub iterations: usize,
}

impl MinNormPoint {
    /// Recombines the support, the membership certificate for `conv(P)`.
    pub fn recombine(&self, p: &PointSet) -> Point {
        let mut v = vec![0.0; p.dim()];
        for &(i, w) in &self.support {
            for (vc, pc) in v.iter_mut().zip(p.points()[i].coords()) {
                *vc += w * pc;
            }
        }
        Point::new(v).expect("finite combination")
    }
}

/// Wolfe's minimum-norm-point algorithm over the convex hull of `p`.
///
/// Terminates when the Wolfe gap `|x|² − min_i (x, p_i)` drops below
/// `tol · max(1, max_i |p_i|²)`.
pub fn min_norm_point(p: &PointSet, tol: f64) -> Result<MinNormPoint> {
    if !(tol > 0.0) {
        return Err(SpongeError::InvalidParameter("tol must be positive".into()));
    }
    let pts = p.points();
    let dim = p.dim();
    let scale = pts.iter().map(|q| q.norm_sq()).fold(1.0, f64::max);
    let cap = (10 * pts.len() * dim).max(10);

    let start = (0..pts.len())
        .min_by(|&a, &b| pts[a].norm_sq().total_cmp(&pts[b].norm_sq()))
        .unwrap();
    let mut support: Vec<usize> = vec![start];
    let mut lambda: Vec<f64> = vec![1.0];
    let mut x = pts[start].coords().to_vec();

    let combine = |support: &[usize], lambda: &[f64]| -> Vec<f64> {
        let mut v = vec![0.0; dim];
        for (&i, &w) in support.iter().zip(lambda) {
            for (vc, pc) in v.iter_mut().zip(pts[i].coords()) {
                *vc += w * pc;
            }
        }
        v
    };

    let mut iterations = 0;
    loop {
        if iterations >= cap {
            return Err(SpongeError::NonConvergence(iterations));
        }
        iterations += 1;

        let xx = dot(&x, &x);
        let (j, xpj) = (0..pts.len())
            .map(|i| (i, dot(&x, pts[i].coords())))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if xx - xpj <= tol * scale || support.contains(&j) {
            break;
        }
        support.push(j);
        lambda.push(0.0);

        // minor cycle: move toward the affine minimizer of the support,
        // dropping points whose weight hits zero
        for _ in 0..=support.len() {
            let k = support.len();
            let mut a = DMatrix::zeros(k + 1, k + 1);
            for r in 0..k {
                for c in 0..k {
                    a[(r, c)] = pts[support[r]].dot(&pts[support[c]]);
                }
                a[(r, k)] = 1.0;
                a[(k, r)] = 1.0;
            }
            let mut rhs = DVector::zeros(k + 1);
            rhs[k] = 1.0;
            let alpha: Vec<f64> = match solve(a, rhs) {
                Some(sol) => sol.iter().take(k).copied().collect(),
                None => return Err(SpongeError::NonConvergence(iterations)),
            };
            if alpha.iter().all(|&w| w > 1e-14) {
                lambda = alpha;
                break;
            }
            let theta = lambda
                .iter()
                .zip(&alpha)
                .filter(|(_, &al)| al <= 1e-14)
                .map(|(&l, &al)| if l - al > 0.0 { l / (l - al) } else { 0.0 })
                .fold(1.0, f64::min);
            for (l, al) in lambda.iter_mut().zip(&alpha) {
                *l = theta * al + (1.0 - theta) * *l;
            }
            let mut keep_s = Vec::with_capacity(k);
            let mut keep_l = Vec::with_capacity(k);
            for (&s, &l) in support.iter().zip(&lambda) {
                if l > 1e-14 {
                    keep_s.push(s);
                    keep_l.push(l);
                }
            }
            if keep_s.is_empty() {
                // numerical collapse: keep the newest point
                keep_s.push(j);
                keep_l.push(1.0);
            }
            let total: f64 = keep_l.iter().sum();
            keep_l.iter_mut().for_each(|l| *l /= total);
            support = keep_s;
            lambda = keep_l;
        }
        x = combine(&support, &lambda);
    }

    let total: f64 = lambda.iter().sum();
    let support: Vec<(usize, f64)> =
        support.into_iter().zip(lambda.into_iter().map(|l| l / total)).collect();
    Ok(MinNormPoint { point: Point::new(x)?, support, iterations })
}

/// Meet of a nonempty set: the minimum-norm point of its convex hull
/// (the origin when no nonzero left bound exists).
pub fn ip_meet(p: &PointSet) -> Point {
    let mnp = match min_norm_point(p, 1e-15) {
        Ok(m) => m.point,
        Err(_) => return Point::zeros(p.dim()),
    };
    let scale = p.iter().map(|q| q.norm_sq()).fold(0.0, f64::max);
    if mnp.norm_sq() <= 1e-24 * scale.max(1e-300) {
        return Point::zeros(p.dim());
    }
    // shrink by a few ulps until the bound holds exactly
    let is_left_bound = |m: &Point| p.iter().all(|q| m.dot(m) <= m.dot(q));
    let mut s = 1.0;
    for k in 0..48 {
        let cand = mnp.scale(s);
        if is_left_bound(&cand) {
            return cand;
        }
        s = 1.0 - f64::EPSILON * (1u64 << k.min(40)) as f64;
    }
    mnp
}

/// Whether `p` has any right bound: by Farkas' lemma the halfspaces have a
/// common point iff the origin is outside the convex hull of the nonzero
/// points. Returns the hull's minimum-norm point when it is bounded.
fn right_bounded_direction(sys: &HalfspaceSystem, tol: f64) -> Result<Option<Point>> {
    let set = PointSet::new(sys.normals.clone())?;
    let mnp = min_norm_point(&set, 1e-15)?;
    let max_norm = sys.offsets.iter().cloned().fold(0.0, f64::max).sqrt();
    if mnp.point.norm() <= tol.max(1e-12) * max_norm {
        Ok(None)
    } else {
        Ok(Some(mnp.point))
    }
}

/// A right bound of `p` along the Farkas direction, or `None` if `p` is
/// not right-bounded.
pub fn ip_right_bound_witness(p: &PointSet) -> Result<Option<Point>> {
    let sys = HalfspaceSystem::from_points(p);
    if sys.is_empty() {
        return Ok(Some(Point::zeros(p.dim())));
    }
    let Some(u) = right_bounded_direction(&sys, 1e-9)? else { return Ok(None) };
    let lambda = sys
        .normals
        .iter()
        .zip(&sys.offsets)
        .map(|(n, b)| b / n.dot(&u))
        .fold(0.0, f64::max);
    let mut w = u.scale(lambda);
    let mut s = 1.0;
    while !sys.contains(&w) {
        s *= 1.0 + 1e-12;
        w = u.scale(lambda * s);
    }
    Ok(Some(w))
}

/// Join of `p`: the minimum-norm point of its right-bound set, found by
/// Dykstra's cyclic projections onto the halfspaces, then polished on the
/// detected active set. `None` when `p` is not right-bounded.
pub fn ip_join(p: &PointSet, tol: f64) -> Result<Option<Point>> {
    if !(tol > 0.0) {
        return Err(SpongeError::InvalidParameter("tol must be positive".into()));
    }
    let dim = p.dim();
    let sys = HalfspaceSystem::from_points(p);
    if sys.is_empty() {
        return Ok(Some(Point::zeros(dim)));
    }
    if right_bounded_direction(&sys, tol)?.is_none() {
        return Ok(None);
    }

    let m = sys.normals.len();
    let scale = sys.offsets.iter().cloned().fold(0.0, f64::max).sqrt();
    let mut x = vec![0.0; dim];
    let mut incr = vec![vec![0.0; dim]; m];
    let mut y = vec![0.0; dim];
    let mut next = vec![0.0; dim];
    const MAX_SWEEPS: usize = 50_000;
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let prev = x.clone();
        for i in 0..m {
            for ((yc, xc), qc) in y.iter_mut().zip(&x).zip(&incr[i]) {
                *yc = xc + qc;
            }
            sys.project(i, &y, &mut next);
            for ((qc, yc), nc) in incr[i].iter_mut().zip(&y).zip(&next) {
                *qc = yc - nc;
            }
            x.copy_from_slice(&next);
        }
        let step = crate::point::dist_sq(&x, &prev).sqrt();
        if step < tol * scale.max(1.0) * 1e-3 {
            converged = true;
            break;
        }
    }

    // polish on the active set read off the Dykstra iterate
    let active: Vec<usize> = (0..m)
        .filter(|&i| dot(sys.normals[i].coords(), &x) <= sys.offsets[i] * (1.0 + 1e-6))
        .collect();
    let mut best: Option<Vec<f64>> = None;
    if !active.is_empty() {
        if let Some((yp, mu)) = sys.equality_solution(&active) {
            if sys.kkt_ok(&yp, &mu) {
                best = Some(yp);
            }
        }
    }
    if best.is_none() {
        best = enumerate_active_sets(&sys, dim);
    }
    let sol = match best {
        Some(v) => v,
        None if converged => x,
        None => return Err(SpongeError::NonConvergence(MAX_SWEEPS)),
    };

    // scale up by a few ulps so every halfspace holds exactly
    let base = Point::new(sol)?;
    let mut s = 1.0;
    for k in 0..48 {
        let cand = base.scale(s);
        if sys.contains(&cand) {
            return Ok(Some(cand));
        }
        s = 1.0 + f64::EPSILON * (1u64 << k.min(40)) as f64;
    }
    Err(SpongeError::NonConvergence(MAX_SWEEPS))
}

/// Exhaustive KKT search over active sets of size ≤ dim; used when the
/// Dykstra iterate does not identify the active set cleanly.
fn enumerate_active_sets(sys: &HalfspaceSystem, dim: usize) -> Option<Vec<f64>> {
    let m = sys.normals.len();
    if m > 20 {
        return None;
    }
    let mut best: Option<(f64, Vec<f64>)> = None;
    for mask in 1u32..(1u32 << m) {
        if mask.count_ones() as usize > dim {
            continue;
        }
        let active: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
        if let Some((y, mu)) = sys.equality_solution(&active) {
            if sys.kkt_ok(&y, &mu) {
                let n = dot(&y, &y);
                if best.as_ref().map_or(true, |(bn, _)| n < *bn) {
                    best = Some((n, y));
                }
            }
        }
    }
    best.map(|(_, y)| y)
}
