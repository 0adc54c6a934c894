//! Brute-force join/meet by grid scanning, used to cross-check the solvers.
//!
//! Grid points are integer multiples of the step (anchored at the origin)
//! inside an axis-aligned box. Among the grid points that are bounds of
//! `P`, the one with the best discriminator is returned. The scan is
//! coarse-to-fine: the box is scanned at a multiple `4^k` of the step, then
//! narrowed around the near-best bounds, down to the requested step.

use serde::{Deserialize, Serialize};

use crate::epigraph::epi_right_bound_witness;
use crate::error::{Result, SpongeError};
use crate::groups::{angle_leq_raw, canonical_angle};
use crate::hyperbolic::MIN_HEIGHT;
use crate::inner_product::ip_right_bound_witness;
use crate::point::{Point, PointSet};
use crate::spec::{split_set, Extremum, Family, Orientation, Side, SpongeSpec};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub step: f64,
}

impl GridSpec {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>, step: f64) -> Result<Self> {
        let g = GridSpec { lo, hi, step };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.lo.len() != self.hi.len() {
            return Err(SpongeError::DimensionMismatch { expected: self.lo.len(), got: self.hi.len() });
        }
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(SpongeError::InvalidParameter("grid step must be finite and > 0".into()));
        }
        if self.lo.iter().zip(&self.hi).any(|(l, h)| !(l.is_finite() && h.is_finite() && l <= h)) {
            return Err(SpongeError::InvalidParameter("grid box must be finite with lo <= hi".into()));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }
}

const COARSE_POINTS: f64 = 40.0;
const MAX_LEVEL_POINTS: usize = 8_000_000;

/// Axis-aligned box known to contain the join (resp. meet) of `P`, or
/// `None` when the family certifies that it does not exist.
pub fn certified_box(spec: &SpongeSpec, p: &PointSet, side: Extremum) -> Result<Option<(Vec<f64>, Vec<f64>)>> {
    spec.check_set(p)?;
    let n = p.dim();
    let bbox = |pts: &mut dyn Iterator<Item = &[f64]>| {
        let mut lo = vec![f64::INFINITY; n];
        let mut hi = vec![f64::NEG_INFINITY; n];
        for x in pts {
            for i in 0..x.len() {
                lo[i] = lo[i].min(x[i]);
                hi[i] = hi[i].max(x[i]);
            }
        }
        (lo, hi)
    };
    let perp_box = |h_lo: f64, h_hi: f64| {
        let (mut lo, mut hi) = bbox(&mut p.iter().map(|q| q.perp()));
        lo[n - 1] = h_lo;
        hi[n - 1] = h_hi;
        (lo, hi)
    };
    let max_h = p.iter().map(|q| q.h()).fold(f64::NEG_INFINITY, f64::max);
    let min_h = p.iter().map(|q| q.h()).fold(f64::INFINITY, f64::min);
    Ok(match (&spec.family, side) {
        (Family::InnerProduct, Extremum::Meet) => {
            let zero = vec![0.0; n];
            Some(bbox(&mut p.iter().map(|q| q.coords()).chain(std::iter::once(zero.as_slice()))))
        }
        (Family::InnerProduct, Extremum::Join) => ip_right_bound_witness(p)?.map(|w| {
            let r = w.norm() / 2.0;
            (w.coords().iter().map(|c| c / 2.0 - r).collect(), w.coords().iter().map(|c| c / 2.0 + r).collect())
        }),
        (Family::Epigraph { profile }, Extremum::Join) => {
            let t = epi_right_bound_witness(profile, p)?.h();
            Some(perp_box(max_h, t))
        }
        (Family::Epigraph { profile }, Extremum::Meet) => {
            let t = -epi_right_bound_witness(profile, &p.map(|q| -q))?.h();
            Some(perp_box(t, min_h))
        }
        (Family::Hyperbolic, Extremum::Join) => {
            let k = n - 1;
            let centroid: Vec<f64> = (0..k).map(|i| p.iter().map(|q| q[i]).sum::<f64>() / p.len() as f64).collect();
            let top = p.iter().map(|q| q.dist(&Point::compose(&centroid, 0.0))).fold(0.0, f64::max);
            Some(perp_box(max_h, top))
        }
        (Family::Hyperbolic, Extremum::Meet) => Some(perp_box(0.0, min_h)),
        (Family::Angle { period, .. }, _) => Some((vec![0.0], vec![*period])),
        (Family::Product { components }, _) => {
            let mut lo = Vec::with_capacity(n);
            let mut hi = Vec::with_capacity(n);
            for (c, q) in components.iter().zip(split_set(components, p)) {
                match certified_box(c, &q, side)? {
                    Some((l, h)) => {
                        lo.extend(l);
                        hi.extend(h);
                    }
                    None => return Ok(None),
                }
            }
            Some((lo, hi))
        }
    })
}

/// A grid over [`certified_box`] with the given step, padded so that grid
/// bounds exist next to an extremum lying on the box boundary.
pub fn certified_grid(spec: &SpongeSpec, p: &PointSet, side: Extremum, step: f64) -> Result<Option<GridSpec>> {
    let Some((lo, hi)) = certified_box(spec, p, side)? else {
        return Ok(None);
    };
    let extent = lo.iter().zip(&hi).map(|(l, h)| h - l).fold(0.0, f64::max);
    let pad = 4.0 * step + 0.02 * extent;
    let periodic = matches!(spec.family, Family::Angle { .. });
    let (lo, hi) = if periodic {
        (lo, hi)
    } else {
        (lo.iter().map(|v| v - pad).collect(), hi.iter().map(|v| v + pad).collect())
    };
    GridSpec::new(lo, hi, step).map(Some)
}

fn family_guarantees(spec: &SpongeSpec, side: Extremum) -> bool {
    match (&spec.family, side) {
        (Family::InnerProduct, Extremum::Meet) | (Family::Epigraph { .. }, _) | (Family::Hyperbolic, Extremum::Join) => true,
        (Family::Product { components }, _) => components.iter().all(|c| family_guarantees(c, side)),
        _ => false,
    }
}

/// Grid point that is a bound of `P` with the least (join) or greatest
/// (meet) discriminator; for angles, the grid bound above (below) every
/// other grid bound. Products are scanned block by block.
///
/// `Ok(None)` when no grid point is a bound and the family allows that;
/// `GridTooCoarse` when the family guarantees a bound but none was found.
pub fn brute_force_extremum(spec: &SpongeSpec, p: &PointSet, grid: &GridSpec, side: Extremum) -> Result<Option<Point>> {
    spec.check_set(p)?;
    grid.validate()?;
    if grid.dim() != p.dim() {
        return Err(SpongeError::DimensionMismatch { expected: p.dim(), got: grid.dim() });
    }
    if let [x] = p.points() {
        return Ok(Some(x.clone()));
    }
    let found = match &spec.family {
        Family::Product { components } => {
            let mut coords = Vec::with_capacity(p.dim());
            let mut at = 0;
            for (c, q) in components.iter().zip(split_set(components, p)) {
                let g = GridSpec { lo: grid.lo[at..at + c.dim].to_vec(), hi: grid.hi[at..at + c.dim].to_vec(), step: grid.step };
                at += c.dim;
                match brute_force_extremum(c, &q, &g, side)? {
                    Some(x) => coords.extend_from_slice(x.coords()),
                    None => return Ok(None),
                }
            }
            Some(Point::new(coords)?)
        }
        Family::Angle { kappa, period } => angle_scan(*kappa, *period, p, grid, side),
        _ => discriminator_scan(spec, p, grid, side)?,
    };
    match found {
        None if family_guarantees(spec, side) => Err(SpongeError::GridTooCoarse),
        other => Ok(other),
    }
}

/// [`brute_force_extremum`] over the family's certified box.
pub fn brute_force_certified(spec: &SpongeSpec, p: &PointSet, step: f64, side: Extremum) -> Result<Option<Point>> {
    match certified_grid(spec, p, side, step)? {
        Some(g) => brute_force_extremum(spec, p, &g, side),
        None => Ok(None),
    }
}

fn angle_scan(kappa: f64, period: f64, p: &PointSet, grid: &GridSpec, side: Extremum) -> Option<Point> {
    let (lo, hi) = (grid.lo[0].ceil_div(grid.step), grid.hi[0].floor_div(grid.step));
    let vals: Vec<f64> = (lo..=hi).map(|i| canonical_angle(i as f64 * grid.step, period)).collect();
    let leq = |a: f64, b: f64| angle_leq_raw(kappa, period, a, b);
    let is_bound = |y: f64| match side {
        Extremum::Meet => p.iter().all(|q| leq(y, q[0])),
        Extremum::Join => p.iter().all(|q| leq(q[0], y)),
    };
    let bounds: Vec<f64> = vals.into_iter().filter(|&y| is_bound(y)).collect();
    bounds
        .iter()
        .copied()
        .find(|&y| {
            bounds.iter().all(|&z| match side {
                Extremum::Meet => leq(z, y),
                Extremum::Join => leq(y, z),
            })
        })
        .map(|y| Point::from_slice(&[y]))
}

trait GridIndex {
    fn ceil_div(self, s: f64) -> i64;
    fn floor_div(self, s: f64) -> i64;
}

impl GridIndex for f64 {
    fn ceil_div(self, s: f64) -> i64 {
        (self / s - 1e-9).ceil() as i64
    }
    fn floor_div(self, s: f64) -> i64 {
        (self / s + 1e-9).floor() as i64
    }
}

fn discriminator_scan(spec: &SpongeSpec, p: &PointSet, grid: &GridSpec, side: Extremum) -> Result<Option<Point>> {
    let n = grid.dim();
    let hyperbolic = matches!(spec.family, Family::Hyperbolic);
    let bound_side = match side {
        Extremum::Join => Side::Right,
        Extremum::Meet => Side::Left,
    };
    // Lipschitz constant of every discriminator used here is 1 in the
    // scanned coordinates (x_h for the hyperbolic family).
    let score = |x: &Point| -> f64 {
        let d = if hyperbolic { x.h() } else { spec.discriminator(x).expect("discriminator") };
        match side {
            Extremum::Join => d,
            Extremum::Meet => -d,
        }
    };
    let extent = grid.lo.iter().zip(&grid.hi).map(|(l, h)| h - l).fold(0.0, f64::max);
    let mut level = 0u32;
    while grid.step * 4f64.powi(level as i32 + 1) <= extent / COARSE_POINTS {
        level += 1;
    }
    let (mut lo, mut hi) = (grid.lo.clone(), grid.hi.clone());
    let mut best: Option<(Point, f64)> = None;
    loop {
        let s = grid.step * 4f64.powi(level as i32);
        let ranges: Vec<(i64, i64)> = (0..n).map(|i| (lo[i].ceil_div(s), hi[i].floor_div(s))).collect();
        let total = ranges.iter().try_fold(1usize, |acc, (a, b)| acc.checked_mul((b - a + 1).max(0) as usize));
        if total.map_or(true, |t| t > MAX_LEVEL_POINTS) {
            return Err(SpongeError::InvalidParameter("grid too large to scan".into()));
        }
        let mut cands: Vec<(Point, f64)> = Vec::new();
        let mut idx: Vec<i64> = ranges.iter().map(|r| r.0).collect();
        if ranges.iter().all(|(a, b)| a <= b) {
            'scan: loop {
                let x = Point::from_slice(&idx.iter().map(|&i| i as f64 * s).collect::<Vec<_>>());
                if !(hyperbolic && x.h() <= MIN_HEIGHT) && spec.bounds_check(p, &x, bound_side)? {
                    let sc = score(&x);
                    cands.push((x, sc));
                }
                let mut i = 0;
                loop {
                    if i == n {
                        break 'scan;
                    }
                    idx[i] += 1;
                    if idx[i] <= ranges[i].1 {
                        break;
                    }
                    idx[i] = ranges[i].0;
                    i += 1;
                }
            }
        }
        if let Some(top) = cands.iter().min_by(|a, b| a.1.total_cmp(&b.1)) {
            best = Some(if level == 0 { break_ties(spec, p, side, &cands, top.1) } else { top.clone() });
            let slack = 2.0 * s * (n as f64).sqrt();
            let near: Vec<&(Point, f64)> = cands.iter().filter(|c| c.1 <= top.1 + slack).collect();
            for i in 0..n {
                let a = near.iter().map(|c| c.0[i]).fold(f64::INFINITY, f64::min);
                let b = near.iter().map(|c| c.0[i]).fold(f64::NEG_INFINITY, f64::max);
                lo[i] = (a - 2.0 * s).max(grid.lo[i]);
                hi[i] = (b + 2.0 * s).min(grid.hi[i]);
            }
        }
        if level == 0 {
            break;
        }
        level -= 1;
    }
    Ok(best.map(|b| b.0))
}

/// Height of the lowest right bound (join) or highest left bound (meet) of
/// `p` directly above `c`, negated for meets so smaller is better.
fn envelope(spec: &SpongeSpec, p: &PointSet, c: &[f64], side: Extremum) -> f64 {
    let d2 = |q: &Point| crate::point::dist_sq(c, q.perp());
    match (&spec.family, side) {
        (Family::Epigraph { profile }, Extremum::Join) => p.iter().map(|q| q.h() + profile.eval(d2(q).sqrt())).fold(f64::NEG_INFINITY, f64::max),
        (Family::Epigraph { profile }, Extremum::Meet) => -p.iter().map(|q| q.h() - profile.eval(d2(q).sqrt())).fold(f64::INFINITY, f64::min),
        (Family::Hyperbolic, Extremum::Join) => p.iter().map(|q| d2(q) + q.h() * q.h()).fold(0.0, f64::max),
        (Family::Hyperbolic, Extremum::Meet) => -p.iter().map(|q| q.h() * q.h() - d2(q)).fold(f64::INFINITY, f64::min),
        _ => 0.0,
    }
}

/// Among the candidates sharing the best score, the one whose base point
/// has the best envelope height.
fn break_ties(spec: &SpongeSpec, p: &PointSet, side: Extremum, cands: &[(Point, f64)], top: f64) -> (Point, f64) {
    let tol = 1e-12 * (1.0 + top.abs());
    cands
        .iter()
        .filter(|c| c.1 <= top + tol)
        .map(|c| (c, envelope(spec, p, c.0.perp(), side)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(c, _)| c.clone())
        .expect("at least the top candidate ties")
}
