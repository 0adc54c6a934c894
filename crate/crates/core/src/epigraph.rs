//! Epigraph sponges: `x ⪯_f y  ⇔  f(|y_⊥ − x_⊥|) ≤ y_h − x_h` for a
//! rotationally symmetric profile `f`.
//!
//! Profiles are restricted to the power family `f(d) = c·d^p`, which is
//! continuous and increasing, so the relation is topologically closed.
//! Accepted profiles: `p ≥ 1` in dimension 2 (superadditive) and `p ≥ 2`
//! in dimension ≥ 3 (square-superadditive).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use nalgebra::{DMatrix, DVector};

use crate::error::{Result, SpongeError};
use crate::numeric::{golden_min, nudge_up};
use crate::point::{dist_sq, Point, PointSet};
use crate::report::AxiomReport;

/// The radial function of an epigraph sponge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Profile {
    Power { c: f64, p: f64 },
}

/// Which characterization applies to a profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimClass {
    Dim2,
    Dim3Plus,
}

impl DimClass {
    pub fn of(dim: usize) -> Self {
        if dim <= 2 {
            DimClass::Dim2
        } else {
            DimClass::Dim3Plus
        }
    }
}

impl Profile {
    pub fn power(c: f64, p: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) || !(p.is_finite() && p > 0.0) {
            return Err(SpongeError::InvalidProfile(format!(
                "power profile needs c > 0 and p > 0, got c={c}, p={p}"
            )));
        }
        Ok(Profile::Power { c, p })
    }

    #[inline]
    pub fn eval(&self, d: f64) -> f64 {
        match *self {
            Profile::Power { c, p } => {
                if p == 1.0 {
                    c * d
                } else if p == 2.0 {
                    c * d * d
                } else {
                    c * d.powf(p)
                }
            }
        }
    }

    /// Analytic acceptance test for use with `dim`-dimensional points.
    pub fn check_accepted(&self, dim: usize) -> Result<()> {
        if dim < 2 {
            return Err(SpongeError::InvalidParameter(
                "epigraph sponges need dimension >= 2".into(),
            ));
        }
        match *self {
            Profile::Power { c, p } => {
                if !(c.is_finite() && c > 0.0) {
                    return Err(SpongeError::InvalidProfile(format!("c must be > 0, got {c}")));
                }
                let need = match DimClass::of(dim) {
                    DimClass::Dim2 => 1.0,
                    DimClass::Dim3Plus => 2.0,
                };
                if !(p >= need) {
                    let what = if need == 1.0 { "superadditive" } else { "square-superadditive" };
                    return Err(SpongeError::InvalidProfile(format!(
                        "c*d^{p} is not {what} (dimension {dim} requires p >= {need})"
                    )));
                }
                Ok(())
            }
        }
    }
}

/// Which coordinate is the distinguished unit axis `h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Frame {
    /// `None` means the last coordinate.
    pub h_index: Option<usize>,
}

impl Frame {
    fn index(&self, dim: usize) -> usize {
        self.h_index.unwrap_or(dim - 1)
    }
}

/// Splits `x` into `(x_h, x_perp)`.
pub fn decompose(x: &Point, frame: Frame) -> (f64, Vec<f64>) {
    let i = frame.index(x.dim());
    let mut perp = x.coords().to_vec();
    let h = perp.remove(i);
    (h, perp)
}

/// Inverse of [`decompose`].
pub fn recompose(h: f64, perp: &[f64], frame: Frame) -> Point {
    let dim = perp.len() + 1;
    let i = frame.index(dim);
    let mut v = perp.to_vec();
    v.insert(i, h);
    Point::new(v).expect("finite coordinates")
}

fn check_pair(x: &Point, y: &Point) -> Result<()> {
    if x.dim() != y.dim() {
        return Err(SpongeError::DimensionMismatch { expected: x.dim(), got: y.dim() });
    }
    if x.dim() < 2 {
        return Err(SpongeError::InvalidParameter("epigraph sponges need dimension >= 2".into()));
    }
    Ok(())
}

#[inline]
fn leq_raw(f: &Profile, x: &Point, y: &Point) -> bool {
    f.eval(dist_sq(x.perp(), y.perp()).sqrt()) <= y.h() - x.h()
}

pub fn epi_leq(f: &Profile, x: &Point, y: &Point) -> Result<bool> {
    check_pair(x, y)?;
    Ok(leq_raw(f, x, y))
}

/// Height of the lowest right bound of `p` above the perpendicular
/// position `c`: `max_p (p_h + f(|c − p_⊥|))`.
fn lower_envelope(f: &Profile, p: &PointSet, c: &[f64]) -> f64 {
    p.iter()
        .map(|q| q.h() + f.eval(dist_sq(c, q.perp()).sqrt()))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// The lowest right bound of `p` directly above `c`, adjusted by a few ulps
/// so that every point of `p` is exactly below it.
pub fn epi_raise(f: &Profile, p: &PointSet, c: &[f64]) -> Result<Point> {
    let h0 = lower_envelope(f, p, c);
    let h = nudge_up(h0, 64, |h| {
        let z = Point::compose(c, h);
        p.iter().all(|q| leq_raw(f, q, &z))
    })
    .ok_or(SpongeError::NonConvergence(64))?;
    Point::new(Point::compose(c, h).into_vec())
}

/// `(0, …, 0, t)` with `t = max_p (f(|p_⊥|) + p_h) + 1`.
pub fn epi_right_bound_witness(f: &Profile, p: &PointSet) -> Result<Point> {
    f.check_accepted(p.dim())?;
    let t = p.iter().map(|q| f.eval(Point::compose(q.perp(), 0.0).norm()) + q.h()).fold(f64::NEG_INFINITY, f64::max);
    Ok(Point::compose(&vec![0.0; p.dim() - 1], t + 1.0))
}

/// Join of a pair, computed in the plane through `x` and `y` parallel to `h`.
///
/// For an incomparable pair the base of the join lies on the segment
/// `[x_⊥, y_⊥]` at distance `t` from `x_⊥`, where the two cone surfaces
/// cross: `x_h + f(t) = y_h + f(a − t)`. The left side minus the right is
/// strictly increasing, so `t` is found by bisection to full precision;
/// `tol` is accepted for interface symmetry with the set solvers.
pub fn epi_join_pair(f: &Profile, x: &Point, y: &Point, _tol: f64) -> Result<Point> {
    check_pair(x, y)?;
    f.check_accepted(x.dim())?;
    if leq_raw(f, x, y) {
        return Ok(y.clone());
    }
    if leq_raw(f, y, x) {
        return Ok(x.clone());
    }
    let diff: Vec<f64> = y.perp().iter().zip(x.perp()).map(|(a, b)| a - b).collect();
    let a = diff.iter().map(|d| d * d).sum::<f64>().sqrt();
    let (xh, yh) = (x.h(), y.h());
    let gap = |t: f64| (xh + f.eval(t)) - (yh + f.eval(a - t));
    let (mut lo, mut hi) = (0.0, a);
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if gap(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let envelope = |t: f64| (xh + f.eval(t)).max(yh + f.eval(a - t));
    let t = if envelope(lo) <= envelope(hi) { lo } else { hi };
    let c: Vec<f64> = x.perp().iter().zip(&diff).map(|(xc, d)| xc + t / a * d).collect();
    epi_raise(f, &PointSet::pair(x.clone(), y.clone())?, &c)
}

/// Minimizes the convex function `g(c) = max_p (p_h + f(|c − p_⊥|))` over
/// the perpendicular space.
fn minimize_envelope(f: &Profile, p: &PointSet, tol: f64) -> Vec<f64> {
    let k = p.dim() - 1;
    let lo: Vec<f64> = (0..k).map(|i| p.iter().map(|q| q.perp()[i]).fold(f64::INFINITY, f64::min)).collect();
    let hi: Vec<f64> = (0..k).map(|i| p.iter().map(|q| q.perp()[i]).fold(f64::NEG_INFINITY, f64::max)).collect();
    let c = if k <= 3 {
        let mut c = lo.clone();
        nested_golden(f, p, &lo, &hi, &mut c, 0, tol);
        c
    } else {
        subgradient_min(f, p, &lo, &hi)
    };
    polish(f, p, c)
}

/// Gradient and Hessian of `x ↦ f(|x − q|)`.
fn radial_derivs(f: &Profile, x: &[f64], q: &[f64]) -> Option<(DVector<f64>, DMatrix<f64>)> {
    let Profile::Power { c, p } = *f;
    let k = x.len();
    let diff = DVector::from_iterator(k, x.iter().zip(q).map(|(a, b)| a - b));
    let r = diff.norm();
    if r < 1e-300 {
        return if p > 2.0 {
            Some((DVector::zeros(k), DMatrix::zeros(k, k)))
        } else if p == 2.0 {
            Some((DVector::zeros(k), DMatrix::identity(k, k) * (2.0 * c)))
        } else {
            None
        };
    }
    let d1 = c * p * r.powf(p - 1.0);
    let d2 = c * p * (p - 1.0) * r.powf(p - 2.0);
    let u = &diff / r;
    let uu = &u * u.transpose();
    let hess = &uu * d2 + (DMatrix::identity(k, k) - &uu) * (d1 / r);
    Some((u * d1, hess))
}

/// Newton on the KKT system of `min_x max_{q∈A} q_h + f(|x − q_⊥|)` for
/// small near-active sets `A`, keeping the best certified candidate.
fn polish(f: &Profile, p: &PointSet, c0: Vec<f64>) -> Vec<f64> {
    let k = c0.len();
    let v0 = lower_envelope(f, p, &c0);
    let scale = 1.0 + v0.abs();
    let mut vals: Vec<(usize, f64)> =
        p.iter().enumerate().map(|(i, q)| (i, q.h() + f.eval(dist_sq(&c0, q.perp()).sqrt()))).collect();
    vals.sort_by(|a, b| b.1.total_cmp(&a.1));
    let near: Vec<usize> =
        vals.iter().take_while(|(_, v)| *v >= v0 - 1e-6 * scale).map(|(i, _)| *i).take(k + 3).collect();
    let mut best = (c0.clone(), v0);
    let n = near.len();
    for mask in 1u32..(1u32 << n) {
        let m = mask.count_ones() as usize;
        if m > k + 1 {
            continue;
        }
        let active: Vec<usize> = (0..n).filter(|b| mask & (1 << b) != 0).map(|b| near[b]).collect();
        if let Some(c) = kkt_newton(f, p, &active, &c0) {
            let v = lower_envelope(f, p, &c);
            if v.is_finite() && v <= best.1 + 1e-14 * scale {
                best = (c, v);
            }
        }
    }
    best.0
}

fn kkt_newton(f: &Profile, p: &PointSet, active: &[usize], c0: &[f64]) -> Option<Vec<f64>> {
    let k = c0.len();
    let m = active.len();
    let pts: Vec<&Point> = active.iter().map(|&i| &p.points()[i]).collect();
    let g = |x: &[f64], q: &Point| q.h() + f.eval(dist_sq(x, q.perp()).sqrt());
    let mut x = DVector::from_column_slice(c0);
    let mut lam = DVector::from_element(m, 1.0 / m as f64);
    let mut v = pts.iter().map(|q| g(x.as_slice(), q)).fold(f64::NEG_INFINITY, f64::max);
    let n = k + m + 1;
    for _ in 0..60 {
        let mut jac = DMatrix::zeros(n, n);
        let mut rhs = DVector::zeros(n);
        let mut grad_sum = DVector::zeros(k);
        let mut hess_sum = DMatrix::zeros(k, k);
        for (i, q) in pts.iter().enumerate() {
            let (gr, hs) = radial_derivs(f, x.as_slice(), q.perp())?;
            rhs[i] = g(x.as_slice(), q) - v;
            for j in 0..k {
                jac[(i, j)] = gr[j];
                jac[(m + j, k + i)] = gr[j];
            }
            jac[(i, k + m)] = -1.0;
            jac[(k + m, k + i)] = 1.0;
            grad_sum += &gr * lam[i];
            hess_sum += hs * lam[i];
        }
        for a in 0..k {
            rhs[m + a] = grad_sum[a];
            for b in 0..k {
                jac[(m + a, b)] = hess_sum[(a, b)];
            }
        }
        rhs[k + m] = lam.sum() - 1.0;
        let step = crate::numeric::solve(jac, -rhs)?;
        for j in 0..k {
            x[j] += step[j];
        }
        for i in 0..m {
            lam[i] += step[k + i];
        }
        v += step[k + m];
        let size = step.rows(0, k).norm();
        if !size.is_finite() {
            return None;
        }
        if size <= 1e-15 * (1.0 + x.norm()) {
            break;
        }
    }
    if lam.iter().any(|&l| l < -1e-9) {
        return None;
    }
    Some(x.iter().copied().collect())
}

/// Coordinate-nested golden-section search; partial minima of a convex
/// function are convex, so each level is unimodal.
fn nested_golden(f: &Profile, p: &PointSet, lo: &[f64], hi: &[f64], c: &mut Vec<f64>, level: usize, tol: f64) -> f64 {
    let k = lo.len();
    let width = (hi[level] - lo[level]).max(0.0);
    let eps = tol.max(1e-14) * (1.0 + width);
    if width == 0.0 {
        c[level] = lo[level];
        return if level + 1 == k {
            lower_envelope(f, p, c)
        } else {
            nested_golden(f, p, lo, hi, c, level + 1, tol)
        };
    }
    let eval = |t: f64| -> f64 {
        let mut cc = c.clone();
        cc[level] = t;
        if level + 1 == k {
            lower_envelope(f, p, &cc)
        } else {
            nested_golden(f, p, lo, hi, &mut cc, level + 1, tol)
        }
    };
    let (t, _) = golden_min(eval, lo[level], hi[level], eps);
    c[level] = t;
    if level + 1 == k {
        lower_envelope(f, p, c)
    } else {
        nested_golden(f, p, lo, hi, c, level + 1, tol)
    }
}

/// Deterministic multistart subgradient descent with diminishing steps,
/// used when the perpendicular space has more than three dimensions.
fn subgradient_min(f: &Profile, p: &PointSet, lo: &[f64], hi: &[f64]) -> Vec<f64> {
    let k = lo.len();
    let radius = lo.iter().zip(hi).map(|(a, b)| (b - a) * (b - a)).sum::<f64>().sqrt().max(1e-12);
    let centroid: Vec<f64> = (0..k).map(|i| p.iter().map(|q| q.perp()[i]).sum::<f64>() / p.len() as f64).collect();
    let mut starts = vec![centroid];
    starts.extend(p.iter().map(|q| q.perp().to_vec()));
    let mut best = starts[0].clone();
    let mut best_val = lower_envelope(f, p, &best);
    for start in starts {
        let mut c = start;
        for it in 0..4000 {
            let (idx, _) = p
                .iter()
                .enumerate()
                .map(|(i, q)| (i, q.h() + f.eval(dist_sq(&c, q.perp()).sqrt())))
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap();
            let val = lower_envelope(f, p, &c);
            if val < best_val {
                best_val = val;
                best = c.clone();
            }
            let q = &p.points()[idx];
            let d: Vec<f64> = c.iter().zip(q.perp()).map(|(a, b)| a - b).collect();
            let n = d.iter().map(|v| v * v).sum::<f64>().sqrt();
            if n == 0.0 {
                break;
            }
            let step = 0.5 * radius / ((it + 1) as f64).sqrt();
            for (ci, di) in c.iter_mut().zip(&d) {
                *ci -= step * di / n;
            }
        }
    }
    best
}

/// Join of a finite set: the lowest point (along `h`) of its right-bound set.
pub fn epi_join(f: &Profile, p: &PointSet, tol: f64) -> Result<Point> {
    f.check_accepted(p.dim())?;
    match p.points() {
        [x] => return Ok(x.clone()),
        [x, y] => return epi_join_pair(f, x, y, tol),
        _ => {}
    }
    let c = minimize_envelope(f, p, tol);
    epi_raise(f, p, &c)
}

/// Meet via the group inversion: `meet(P) = −join(−P)`.
pub fn epi_meet(f: &Profile, p: &PointSet, tol: f64) -> Result<Point> {
    let neg = p.map(|q| -q);
    let j = epi_join(f, &neg, tol)?;
    let m = -&j;
    // the negation is exact, but rounding inside the join was done for −P;
    // re-check and lower by ulps if needed
    let h = crate::numeric::nudge_down(m.h(), 64, |h| {
        let z = m.with_h(h);
        p.iter().all(|q| leq_raw(f, &z, q))
    })
    .ok_or(SpongeError::NonConvergence(64))?;
    Ok(m.with_h(h))
}

/// Lowest right bound directly above a perpendicular position and the
/// matching highest left bound, exposed for the descent routine.
pub fn epi_lower_left_bound(f: &Profile, p: &PointSet, c: &[f64]) -> Result<Point> {
    let neg = p.map(|q| -q);
    let negc: Vec<f64> = c.iter().map(|v| -v).collect();
    Ok(-&epi_raise(f, &neg, &negc)?)
}

const REL_SLACK: f64 = 1e-12;

fn ge_with_slack(lhs: f64, rhs: f64) -> bool {
    lhs >= rhs - REL_SLACK * (lhs.abs().max(rhs.abs()).max(1e-300))
}

fn scalar_witness(vals: &[f64]) -> Vec<Point> {
    vals.iter().map(|v| Point::from_slice(&[*v])).collect()
}

/// Validates a profile for a given dimension.
///
/// Reports the analytic verdict for the power family and, on a
/// deterministic grid followed by `samples` seeded random draws, the
/// inequalities: `f(0) = 0`, positivity, strict increase, superadditivity,
/// square-superadditivity (dimension ≥ 3), and
/// `f(d) + f(e) ≤ max(f(d+e), f(|d−e|))`.
/// Inequalities are compared with a relative slack of 1e-12 so that exact
/// equalities (e.g. `p = 2`) do not fail through rounding.
pub fn validate_profile(f: &Profile, dim: usize, samples: usize) -> AxiomReport {
    let mut report = AxiomReport::new();
    if let Err(e) = f.check_accepted(dim) {
        report.violate("analytic", vec![], e.to_string());
    }

    if f.eval(0.0) != 0.0 {
        report.violate("f(0)=0", scalar_witness(&[0.0]), format!("f(0) = {}", f.eval(0.0)));
    }

    let grid = [1.0, 0.5, 2.0, 0.25, 3.0, 0.1, 1.5, 4.0];
    let mut pairs: Vec<(f64, f64)> = Vec::new();
    for &a in &grid {
        for &b in &grid {
            pairs.push((a, b));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    for _ in 0..samples {
        pairs.push((rng.gen_range(1e-6..10.0), rng.gen_range(1e-6..10.0)));
    }

    let mut flagged = std::collections::HashSet::new();
    let mut flag = |report: &mut AxiomReport, name: &'static str, w: &[f64], detail: String| {
        if flagged.insert(name) {
            report.violate(name, scalar_witness(w), detail);
        }
    };

    for &(d, e) in &pairs {
        let (fd, fe) = (f.eval(d), f.eval(e));
        if !(fd > 0.0) {
            flag(&mut report, "positivity", &[d], format!("f({d}) = {fd}"));
        }
        let (lo, hi) = if d < e { (d, e) } else { (e, d) };
        if lo < hi && !(f.eval(lo) < f.eval(hi)) {
            flag(&mut report, "increasing", &[lo, hi], format!("f({lo}) >= f({hi})"));
        }
        let sum = fd + fe;
        let add = f.eval(d + e);
        if !ge_with_slack(add, sum) {
            flag(&mut report, "superadditivity", &[d, e], format!("f({}) = {add} < f({d}) + f({e}) = {sum}", d + e));
        }
        if dim >= 3 {
            let r = (d * d + e * e).sqrt();
            let sq = f.eval(r);
            if !ge_with_slack(sq, sum) {
                flag(
                    &mut report,
                    "square-superadditivity",
                    &[d, e],
                    format!("f(sqrt({d}^2+{e}^2)) = {sq} < f({d}) + f({e}) = {sum}"),
                );
            }
        }
        let ms = add.max(f.eval((d - e).abs()));
        if !ge_with_slack(ms, sum) {
            flag(&mut report, "max-superadditivity", &[d, e], format!("f({d}) + f({e}) = {sum} > {ms}"));
        }
    }
    report.note(format!("{} grid pairs + {samples} random pairs in (0, 10)", grid.len() * grid.len()));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq() -> Profile {
        Profile::power(1.0, 2.0).unwrap()
    }

    fn pt(c: &[f64]) -> Point {
        Point::from_slice(c)
    }

    #[test]
    fn decompose_examples() {
        let (h, perp) = decompose(&pt(&[3.0, 4.0, 5.0]), Frame::default());
        assert_eq!((h, perp.as_slice()), (5.0, &[3.0, 4.0][..]));
        let (h, perp) = decompose(&pt(&[0.0, 0.0, 7.5]), Frame::default());
        assert_eq!((h, perp), (7.5, vec![0.0, 0.0]));
        let frame = Frame { h_index: Some(0) };
        let x = pt(&[1.0, 2.0, 3.0]);
        let (h, perp) = decompose(&x, frame);
        assert_eq!(h, 1.0);
        assert_eq!(recompose(h, &perp, frame), x);
    }

    #[test]
    fn relation_examples() {
        assert!(epi_leq(&sq(), &pt(&[0.0, 0.0]), &pt(&[1.0, 2.0])).unwrap());
        assert!(!epi_leq(&sq(), &pt(&[0.0, 0.0]), &pt(&[2.0, 1.0])).unwrap());
        assert!(epi_leq(&sq(), &pt(&[0.3, -1.0]), &pt(&[0.3, -1.0])).unwrap());
        assert!(epi_leq(&sq(), &pt(&[1.0]), &pt(&[1.0])).is_err());
    }

    #[test]
    fn witness_examples() {
        let w = epi_right_bound_witness(&sq(), &PointSet::from_rows(&[&[1.0, 0.0]])).unwrap();
        assert_eq!(w, pt(&[0.0, 2.0]));
        let w = epi_right_bound_witness(&sq(), &PointSet::from_rows(&[&[0.0, -3.5]])).unwrap();
        assert_eq!(w, pt(&[0.0, -2.5]));
        let w = epi_right_bound_witness(&sq(), &PointSet::from_rows(&[&[1.0, 0.0], &[2.0, -1.0]])).unwrap();
        assert_eq!(w, pt(&[0.0, 4.0]));
    }

    #[test]
    fn pair_join_examples() {
        let j = epi_join_pair(&sq(), &pt(&[-1.0, 0.0]), &pt(&[1.0, 0.0]), 1e-12).unwrap();
        assert!(j.approx_eq(&pt(&[0.0, 1.0]), 1e-9));
        let j = epi_join_pair(&sq(), &pt(&[0.0, 0.0]), &pt(&[0.5, 3.0]), 1e-12).unwrap();
        assert_eq!(j, pt(&[0.5, 3.0]));
        let j = epi_join_pair(&sq(), &pt(&[0.0, 0.0]), &pt(&[1.0, 0.0]), 1e-12).unwrap();
        assert!(j.approx_eq(&pt(&[0.5, 0.25]), 1e-9));
    }

    #[test]
    fn set_join_and_meet_examples() {
        let p = PointSet::from_rows(&[&[-1.0, 0.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]]);
        let j = epi_join(&sq(), &p, 1e-12).unwrap();
        assert!(j.approx_eq(&pt(&[0.0, 0.0, 1.0]), 1e-7), "{j:?}");
        let m = epi_meet(&sq(), &PointSet::from_rows(&[&[-1.0, 0.0], &[1.0, 0.0]]), 1e-12).unwrap();
        assert!(m.approx_eq(&pt(&[0.0, -1.0]), 1e-9));
        let m = epi_meet(&sq(), &PointSet::from_rows(&[&[0.0, 0.0], &[1.0, 0.0]]), 1e-12).unwrap();
        assert!(m.approx_eq(&pt(&[0.5, -0.25]), 1e-9));
        let x = pt(&[0.2, 0.7]);
        assert_eq!(epi_meet(&sq(), &PointSet::singleton(x.clone()), 1e-12).unwrap(), x);
    }

    #[test]
    fn rejected_profile_is_an_error() {
        let lin = Profile::power(1.0, 1.0).unwrap();
        let p = PointSet::from_rows(&[&[0.0, 0.0, 0.0], &[1.0, 0.0, 0.0]]);
        assert!(matches!(epi_join(&lin, &p, 1e-9), Err(SpongeError::InvalidProfile(_))));
        assert!(Profile::power(-1.0, 2.0).is_err());
    }

    #[test]
    fn validation_truth_table() {
        assert!(validate_profile(&sq(), 3, 1000).passed());
        let lin = Profile::power(1.0, 1.0).unwrap();
        assert!(validate_profile(&lin, 2, 1000).passed());
        let r = validate_profile(&lin, 3, 1000);
        assert!(!r.passed());
        let v = r.first_violation("square-superadditivity").unwrap();
        assert_eq!(v.witness, vec![pt(&[1.0]), pt(&[1.0])]);
        let sqrt = Profile::power(1.0, 0.5).unwrap();
        let r = validate_profile(&sqrt, 2, 100);
        assert!(r.violates("superadditivity"));
    }

    #[test]
    fn profile_json_schema() {
        let f: Profile = serde_json::from_str(r#"{"kind":"power","c":1.0,"p":2.0}"#).unwrap();
        assert_eq!(f, sq());
    }
}
