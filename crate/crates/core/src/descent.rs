//! Approximate join by discriminator descent over the right-bound set.
//!
//! Starting from right bounds of `P`, repeatedly proposes a jittered base
//! position, lifts it to the lowest right bound above it, and tightens with
//! the pairwise meet of the proposal and the incumbent (a common right
//! bound of `P` again). The incumbent's discriminator never increases.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::epigraph::{epi_meet, epi_raise};
use crate::error::{Result, SpongeError};
use crate::hyperbolic::{hyp_meet_pair, hyp_raise};
use crate::point::{Point, PointSet};
use crate::spec::{Family, Orientation, Side, SpongeSpec, DEFAULT_TOL};

#[derive(Debug, Clone, PartialEq)]
pub struct Descent {
    pub point: Point,
    pub discriminator: f64,
    pub iterations: usize,
    /// Incumbent discriminator after each iteration.
    pub trace: Vec<f64>,
}

struct Ops<'a> {
    spec: &'a SpongeSpec,
    p: &'a PointSet,
}

impl Ops<'_> {
    fn raise(&self, c: &[f64]) -> Result<Point> {
        match &self.spec.family {
            Family::Epigraph { profile } => epi_raise(profile, self.p, c),
            Family::Hyperbolic => hyp_raise(self.p, c),
            _ => unreachable!(),
        }
    }

    fn meet(&self, a: &Point, b: &Point) -> Result<Point> {
        match &self.spec.family {
            Family::Epigraph { profile } => epi_meet(profile, &PointSet::new(vec![a.clone(), b.clone()])?, DEFAULT_TOL),
            Family::Hyperbolic => hyp_meet_pair(a, b),
            _ => unreachable!(),
        }
    }

    fn disc(&self, x: &Point) -> f64 {
        self.spec.discriminator(x).expect("family has a discriminator")
    }

    /// Best of: the lowest right bound above `x`, above the meet of `x`
    /// with `best`, and above the midpoint of their bases.
    fn improve(&self, best: &Point, x: &Point) -> Result<Point> {
        let lifted = self.raise(x.perp())?;
        let mut out = lifted.clone();
        if let Ok(m) = self.meet(best, &lifted) {
            if let Ok(z) = self.raise(m.perp()) {
                if self.disc(&z) < self.disc(&out) {
                    out = z;
                }
            }
        }
        let mid: Vec<f64> = best.perp().iter().zip(lifted.perp()).map(|(a, b)| 0.5 * (a + b)).collect();
        if let Ok(z) = self.raise(&mid) {
            if self.disc(&z) < self.disc(&out) {
                out = z;
            }
        }
        Ok(out)
    }
}

/// Searches the right-bound set of `P` for a point of least discriminator,
/// starting from `seeds` (each must be a right bound of `P`).
///
/// Supported for the epigraph and hyperbolic families.
pub fn descent_join(spec: &SpongeSpec, p: &PointSet, seeds: &PointSet, max_iter: usize, tol: f64, seed: u64) -> Result<Descent> {
    if !matches!(spec.family, Family::Epigraph { .. } | Family::Hyperbolic) {
        return Err(SpongeError::Unsupported("descent_join needs the epigraph or hyperbolic family".into()));
    }
    spec.check_set(p)?;
    if seeds.dim() != p.dim() {
        return Err(SpongeError::NoSeeds(format!("seeds have dimension {}, P has {}", seeds.dim(), p.dim())));
    }
    for s in seeds.iter() {
        if !spec.bounds_check(p, s, Side::Right).unwrap_or(false) {
            return Err(SpongeError::NoSeeds(format!("{s:?} is not a right bound of P")));
        }
    }
    let ops = Ops { spec, p };
    let mut pool: Vec<Point> = seeds.iter().cloned().collect();
    let pts = seeds.points();
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            if let Ok(m) = ops.meet(a, b) {
                if let Ok(z) = ops.raise(m.perp()) {
                    pool.push(z);
                }
            }
        }
        if let Ok(z) = ops.raise(a.perp()) {
            pool.push(z);
        }
    }
    let mut best = pool
        .into_iter()
        .min_by(|a, b| ops.disc(a).total_cmp(&ops.disc(b)))
        .expect("seeds are nonempty");
    let mut best_d = ops.disc(&best);

    let k = p.dim() - 1;
    let spread = (0..k)
        .map(|i| {
            let (lo, hi) = p.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), q| (lo.min(q[i]), hi.max(q[i])));
            hi - lo
        })
        .fold(0.0, f64::max);
    let mut step = spread.max(best.h().abs() * 0.5).max(1e-3);
    let floor = tol.max(1e-15) * 1e-3;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trace = Vec::with_capacity(max_iter);
    let mut iterations = 0;

    let mut momentum: Option<Vec<f64>> = None;
    while iterations < max_iter && step > floor {
        iterations += 1;
        let delta: Vec<f64> = match momentum.take() {
            Some(d) => d,
            None => (0..k).map(|_| step * rng.gen_range(-1.0..1.0)).collect(),
        };
        let c: Vec<f64> = best.perp().iter().zip(&delta).map(|(v, d)| v + d).collect();
        let probe = Point::compose(&c, best.h());
        match ops.improve(&best, &probe) {
            Ok(z) if ops.disc(&z) < best_d => {
                let moved: Vec<f64> = z.perp().iter().zip(best.perp()).map(|(a, b)| 2.0 * (a - b)).collect();
                best_d = ops.disc(&z);
                best = z;
                step *= 1.5;
                momentum = Some(moved);
            }
            _ => step *= 0.9,
        }
        trace.push(best_d);
    }
    Ok(Descent { point: best, discriminator: best_d, iterations, trace })
}

/// A canonical right bound of `P` plus `extra` copies of it with the base
/// position jittered (seeded) and the height raised back onto the lowest
/// right bound.
pub fn default_seeds(spec: &SpongeSpec, p: &PointSet, extra: usize, seed: u64) -> Result<PointSet> {
    spec.check_set(p)?;
    let base = match &spec.family {
        Family::Epigraph { profile } => crate::epigraph::epi_right_bound_witness(profile, p)?,
        Family::Hyperbolic => {
            let k = p.dim() - 1;
            let c: Vec<f64> = (0..k).map(|i| p.iter().map(|q| q[i]).sum::<f64>() / p.len() as f64).collect();
            hyp_raise(p, &c)?
        }
        _ => return Err(SpongeError::Unsupported("default seeds need the epigraph or hyperbolic family".into())),
    };
    let ops = Ops { spec, p };
    let scale = p.iter().map(|q| q.dist(&p.points()[0])).fold(0.0, f64::max).max(1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seeds = vec![base.clone()];
    for _ in 0..extra {
        let c: Vec<f64> = base.perp().iter().map(|v| v + scale * rng.gen_range(-1.0..1.0)).collect();
        seeds.push(ops.raise(&c)?);
    }
    PointSet::new(seeds)
}
