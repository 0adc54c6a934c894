//! The hyperbolic sponge on the Poincaré half-space `H⁺ = {x : x_h > 0}`:
//! `x ⪯ y  ⇔  |x − y_⊥| ≤ y_h`.
//!
//! Left cones are half balls resting on the base hyperplane. Every finite
//! set has a join; pairs have a meet iff `|x_⊥ − y_⊥| < x_h + y_h`.

use crate::error::{Result, SpongeError};
use crate::minimax::power_minimax;
use crate::numeric::{nudge_down, nudge_up};
use crate::point::{dist_sq, Point, PointSet};

/// Points with `x_h` at or below this are rejected as outside `H⁺`.
pub const MIN_HEIGHT: f64 = 1e-12;

/// Checks that `x` lies in the open upper half-space (with the numerical guard).
pub fn check_domain(x: &Point) -> Result<()> {
    if x.dim() < 2 {
        return Err(SpongeError::InvalidParameter("hyperbolic sponge needs dimension >= 2".into()));
    }
    if !(x.h() > MIN_HEIGHT) {
        return Err(SpongeError::OutsideDomain(x.coords().to_vec(), "x_h must be > 0".into()));
    }
    Ok(())
}

fn check_pair(x: &Point, y: &Point) -> Result<()> {
    if x.dim() != y.dim() {
        return Err(SpongeError::DimensionMismatch { expected: x.dim(), got: y.dim() });
    }
    check_domain(x)?;
    check_domain(y)
}

pub fn check_set(p: &PointSet) -> Result<()> {
    p.iter().try_for_each(check_domain)
}

/// Squared form of `|x − y_⊥| ≤ y_h`; reflexive bit for bit.
#[inline]
pub(crate) fn leq_raw(x: &Point, y: &Point) -> bool {
    dist_sq(x.perp(), y.perp()) + x.h() * x.h() <= y.h() * y.h()
}

pub fn hyp_leq(x: &Point, y: &Point) -> Result<bool> {
    check_pair(x, y)?;
    Ok(leq_raw(x, y))
}

/// Hyperbolic distance `arcosh(1 + |x − y|² / (2 x_h y_h))`.
pub fn d_hyp(x: &Point, y: &Point) -> Result<f64> {
    check_pair(x, y)?;
    let arg = 1.0 + dist_sq(x.coords(), y.coords()) / (2.0 * x.h() * y.h());
    Ok(arg.acosh())
}

/// Discriminator `ln(x_h)`.
pub fn h_height(x: &Point) -> Result<f64> {
    check_domain(x)?;
    Ok(x.h().ln())
}

/// Whether the pair has a left bound: `|x_⊥ − y_⊥| < x_h + y_h`.
pub fn hyp_pair_left_bounded(x: &Point, y: &Point) -> Result<bool> {
    check_pair(x, y)?;
    Ok(dist_sq(x.perp(), y.perp()).sqrt() < x.h() + y.h())
}

/// Upper bound on `d_hyp(x, y)` for `x ⪯ y` with `h_height(y) < h_height(x) + δ`.
pub fn hyp_discriminator_bound(delta: f64) -> Result<f64> {
    if !(delta > 0.0) {
        return Err(SpongeError::InvalidParameter("delta must be positive".into()));
    }
    Ok(delta.exp().acosh())
}

/// Lowers the height of `(c, h)` until it is a left bound of `p`: first to
/// the highest left bound above `c`, then by ulps.
fn settle_left(p: &[&Point], c: &[f64], h: f64) -> Result<Point> {
    let room = p.iter().map(|q| q.h() * q.h() - dist_sq(c, q.perp())).fold(f64::INFINITY, f64::min);
    if !(room > 0.0) {
        return Err(SpongeError::BoundaryAmbiguous(room));
    }
    let h = nudge_down(h.min(room.sqrt()), 64, |h| {
        let z = Point::compose(c, h);
        p.iter().all(|q| leq_raw(&z, q))
    })
    .ok_or(SpongeError::NonConvergence(64))?;
    if !(h > MIN_HEIGHT) {
        return Err(SpongeError::BoundaryAmbiguous(h));
    }
    Point::new(Point::compose(c, h).into_vec())
}

/// Closed-form meet of a left-bounded pair: the upper intersection of the
/// two boundary circles in the vertical plane through both points.
pub fn hyp_meet_pair(x: &Point, y: &Point) -> Result<Point> {
    check_pair(x, y)?;
    if leq_raw(x, y) {
        return Ok(x.clone());
    }
    if leq_raw(y, x) {
        return Ok(y.clone());
    }
    let a = dist_sq(x.perp(), y.perp()).sqrt();
    if !(a < x.h() + y.h()) {
        return Err(SpongeError::NoLeftBound);
    }
    let (xh, yh) = (x.h(), y.h());
    let b = (a * a + xh * xh - yh * yh) / (2.0 * a);
    let zh = (xh * xh - b * b).max(0.0).sqrt();
    let c: Vec<f64> = x.perp().iter().zip(y.perp()).map(|(xc, yc)| xc + b / a * (yc - xc)).collect();
    settle_left(&[x, y], &c, zh)
}

/// Meet of a finite set, or `None` if it has no left bound.
///
/// Maximizes `q(c) = min_p (p_h² − |c − p_⊥|²)`; the meet is
/// `(c*, sqrt(q(c*)))`. An optimum at or below zero means the left half balls
/// only touch on (or miss) the base hyperplane.
pub fn hyp_meet(p: &PointSet, _tol: f64) -> Result<Option<Point>> {
    check_set(p)?;
    if let [x] = p.points() {
        return Ok(Some(x.clone()));
    }
    let sites: Vec<&[f64]> = p.iter().map(|q| q.perp()).collect();
    let w: Vec<f64> = p.iter().map(|q| q.h() * q.h()).collect();
    let (c, v) = power_minimax(&sites, &w);
    let q = -v;
    if q <= 0.0 {
        return Ok(None);
    }
    let refs: Vec<&Point> = p.iter().collect();
    match settle_left(&refs, &c, q.sqrt()) {
        Ok(z) => Ok(Some(z)),
        Err(SpongeError::NonConvergence(_)) | Err(SpongeError::BoundaryAmbiguous(_)) => {
            Err(SpongeError::BoundaryAmbiguous(q))
        }
        Err(e) => Err(e),
    }
}

/// Lowest right bound above the base position `c`: `(c, max_p |p − c|)`.
pub fn hyp_raise(p: &PointSet, c: &[f64]) -> Result<Point> {
    let r2 = p.iter().map(|q| dist_sq(q.perp(), c) + q.h() * q.h()).fold(0.0, f64::max);
    let h = nudge_up(r2.sqrt(), 64, |h| {
        let z = Point::compose(c, h);
        p.iter().all(|q| leq_raw(q, &z))
    })
    .ok_or(SpongeError::NonConvergence(64))?;
    Point::new(Point::compose(c, h).into_vec())
}

/// Join of a finite set: the top of the smallest ball centered on the base
/// hyperplane that contains the set. Always exists.
pub fn hyp_join(p: &PointSet, _tol: f64) -> Result<Point> {
    check_set(p)?;
    if let [x] = p.points() {
        return Ok(x.clone());
    }
    let sites: Vec<&[f64]> = p.iter().map(|q| q.perp()).collect();
    let w: Vec<f64> = p.iter().map(|q| -(q.h() * q.h())).collect();
    let (c, _) = power_minimax(&sites, &w);
    hyp_raise(p, &c)
}

/// Highest left bound below `c`, or `None` when no point above `c` is one.
pub fn hyp_lower(p: &PointSet, c: &[f64]) -> Option<Point> {
    let q = p.iter().map(|x| x.h() * x.h() - dist_sq(x.perp(), c)).fold(f64::INFINITY, f64::min);
    if q <= 0.0 {
        return None;
    }
    let refs: Vec<&Point> = p.iter().collect();
    settle_left(&refs, c, q.sqrt()).ok()
}
