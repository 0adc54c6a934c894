//! Family descriptors and the generic orientation / sponge interface.

use serde::{Deserialize, Serialize};

use crate::epigraph::{epi_join, epi_leq, epi_meet, Profile};
use crate::error::{Result, SpongeError};
use crate::groups::{angle_join, angle_leq_raw, angle_meet, ConeSpec1D};
use crate::hyperbolic::{self, hyp_join, hyp_meet};
use crate::inner_product::{ip_join, ip_leq, ip_meet};
use crate::point::{Point, PointSet};

/// Default absolute tolerance handed to the numerical solvers.
pub const DEFAULT_TOL: f64 = 1e-12;

/// A reflexive, antisymmetric relation on points of a fixed dimension.
pub trait Orientation {
    fn dim(&self) -> usize;
    fn leq(&self, x: &Point, y: &Point) -> Result<bool>;

    /// `Right`: every `p ⪯ y`. `Left`: `y ⪯` every `p`.
    fn bounds_check(&self, p: &PointSet, y: &Point, side: Side) -> Result<bool> {
        for q in p.iter() {
            let ok = match side {
                Side::Right => self.leq(q, y)?,
                Side::Left => self.leq(y, q)?,
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// An orientation with join and meet solvers. `None` means the set has no
/// right (resp. left) bound.
pub trait Sponge: Orientation {
    fn join(&self, p: &PointSet, tol: f64) -> Result<Option<Point>>;
    fn meet(&self, p: &PointSet, tol: f64) -> Result<Option<Point>>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Extremum {
    Join,
    Meet,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    InnerProduct,
    Epigraph { profile: Profile },
    Hyperbolic,
    Angle { kappa: f64, period: f64 },
    Product { components: Vec<SpongeSpec> },
}

/// A sponge family together with the ambient dimension.
///
/// JSON: `{"family": "epigraph", "profile": {"kind": "power", "c": 1.0, "p": 2.0}, "dim": 3}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpongeSpec {
    #[serde(flatten)]
    pub family: Family,
    pub dim: usize,
}

impl SpongeSpec {
    pub fn new(family: Family, dim: usize) -> Result<Self> {
        let s = SpongeSpec { family, dim };
        s.validate()?;
        Ok(s)
    }

    pub fn inner_product(dim: usize) -> Result<Self> {
        Self::new(Family::InnerProduct, dim)
    }

    pub fn epigraph(profile: Profile, dim: usize) -> Result<Self> {
        Self::new(Family::Epigraph { profile }, dim)
    }

    pub fn hyperbolic(dim: usize) -> Result<Self> {
        Self::new(Family::Hyperbolic, dim)
    }

    pub fn angle(kappa: f64, period: f64) -> Result<Self> {
        Self::new(Family::Angle { kappa, period }, 1)
    }

    pub fn product(components: Vec<SpongeSpec>) -> Result<Self> {
        let dim = components.iter().map(|c| c.dim).sum();
        Self::new(Family::Product { components }, dim)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let spec: SpongeSpec = serde_json::from_str(s).map_err(|e| SpongeError::Parse(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let need = |ok: bool, msg: &str| if ok { Ok(()) } else { Err(SpongeError::InvalidParameter(msg.into())) };
        match &self.family {
            Family::InnerProduct => need(self.dim >= 1, "dim must be >= 1"),
            Family::Epigraph { profile } => {
                need(self.dim >= 2, "epigraph sponges need dim >= 2")?;
                profile.check_accepted(self.dim)
            }
            Family::Hyperbolic => need(self.dim >= 2, "hyperbolic sponges need dim >= 2"),
            Family::Angle { kappa, period } => {
                need(self.dim == 1, "angle sponges have dim 1")?;
                ConeSpec1D::angle(*kappa, *period).map(|_| ())
            }
            Family::Product { components } => {
                need(!components.is_empty(), "product needs at least one component")?;
                components.iter().try_for_each(SpongeSpec::validate)?;
                let total: usize = components.iter().map(|c| c.dim).sum();
                need(total == self.dim, "product dim must equal the sum of component dims")
            }
        }
    }

    /// Checks dimension, finiteness and the family domain.
    pub fn check_point(&self, x: &Point) -> Result<()> {
        if x.dim() != self.dim {
            return Err(SpongeError::DimensionMismatch { expected: self.dim, got: x.dim() });
        }
        match &self.family {
            Family::Hyperbolic => hyperbolic::check_domain(x),
            Family::Product { components } => {
                for (c, b) in components.iter().zip(split_point(components, x)) {
                    c.check_point(&b)?;
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn check_set(&self, p: &PointSet) -> Result<()> {
        p.iter().try_for_each(|x| self.check_point(x))
    }

    /// Discriminator used to rank bounds: norm for the inner-product
    /// sponge, `x_h` for epigraphs, `ln x_h` for the hyperbolic sponge.
    pub fn discriminator(&self, x: &Point) -> Option<f64> {
        match &self.family {
            Family::InnerProduct => Some(x.norm()),
            Family::Epigraph { .. } => Some(x.h()),
            Family::Hyperbolic => Some(x.h().ln()),
            _ => None,
        }
    }

    pub fn product_components(&self) -> Option<&[SpongeSpec]> {
        match &self.family {
            Family::Product { components } => Some(components),
            _ => None,
        }
    }
}

impl Orientation for SpongeSpec {
    fn dim(&self) -> usize {
        self.dim
    }

    fn leq(&self, x: &Point, y: &Point) -> Result<bool> {
        self.check_point(x)?;
        self.check_point(y)?;
        match &self.family {
            Family::InnerProduct => ip_leq(x, y),
            Family::Epigraph { profile } => epi_leq(profile, x, y),
            Family::Hyperbolic => hyperbolic::hyp_leq(x, y),
            Family::Angle { kappa, period } => Ok(angle_leq_raw(*kappa, *period, x[0], y[0])),
            Family::Product { components } => {
                let xs = split_point(components, x);
                let ys = split_point(components, y);
                for ((c, a), b) in components.iter().zip(&xs).zip(&ys) {
                    if !c.leq(a, b)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }
}

impl Sponge for SpongeSpec {
    fn join(&self, p: &PointSet, tol: f64) -> Result<Option<Point>> {
        self.extremum(p, tol, Extremum::Join)
    }

    fn meet(&self, p: &PointSet, tol: f64) -> Result<Option<Point>> {
        self.extremum(p, tol, Extremum::Meet)
    }
}

impl SpongeSpec {
    pub fn extremum(&self, p: &PointSet, tol: f64, side: Extremum) -> Result<Option<Point>> {
        self.check_set(p)?;
        if !(tol > 0.0) {
            return Err(SpongeError::InvalidParameter("tolerance must be > 0".into()));
        }
        let distinct = dedup(p);
        let p = &distinct;
        if let [x] = p.points() {
            return Ok(Some(x.clone()));
        }
        match (&self.family, side) {
            (Family::InnerProduct, Extremum::Join) => ip_join(p, tol),
            (Family::InnerProduct, Extremum::Meet) => Ok(Some(ip_meet(p))),
            (Family::Epigraph { profile }, Extremum::Join) => epi_join(profile, p, tol).map(Some),
            (Family::Epigraph { profile }, Extremum::Meet) => epi_meet(profile, p, tol).map(Some),
            (Family::Hyperbolic, Extremum::Join) => hyp_join(p, tol).map(Some),
            (Family::Hyperbolic, Extremum::Meet) => hyp_meet(p, tol),
            (Family::Angle { kappa, period }, _) => {
                let spec = ConeSpec1D { kappa: *kappa, period: Some(*period) };
                let vals: Vec<f64> = p.iter().map(|x| x[0]).collect();
                let r = match side {
                    Extremum::Join => angle_join(&spec, &vals)?,
                    Extremum::Meet => angle_meet(&spec, &vals)?,
                };
                Ok(r.map(|v| Point::from_slice(&[v])))
            }
            (Family::Product { components }, _) => match product_extremum(components, p, tol, side) {
                Ok(x) => Ok(Some(x)),
                Err(SpongeError::ComponentUnbounded { .. }) => Ok(None),
                Err(e) => Err(e),
            },
        }
    }
}

/// `P` without exact duplicates, first occurrences kept in order.
fn dedup(p: &PointSet) -> PointSet {
    let mut out: Vec<Point> = Vec::with_capacity(p.len());
    for x in p.iter() {
        if !out.contains(x) {
            out.push(x.clone());
        }
    }
    PointSet::new(out).expect("nonempty")
}

/// `x ⪯ y` in the given family.
pub fn leq(spec: &SpongeSpec, x: &Point, y: &Point) -> Result<bool> {
    spec.leq(x, y)
}

/// Whether `y` is a right (resp. left) bound of `P`.
pub fn bounds_check(spec: &SpongeSpec, p: &PointSet, y: &Point, side: Side) -> Result<bool> {
    spec.check_set(p)?;
    spec.check_point(y)?;
    spec.bounds_check(p, y, side)
}

pub(crate) fn split_point(components: &[SpongeSpec], x: &Point) -> Vec<Point> {
    let mut out = Vec::with_capacity(components.len());
    let mut at = 0;
    for c in components {
        out.push(Point::from_slice(&x.coords()[at..at + c.dim]));
        at += c.dim;
    }
    out
}

pub(crate) fn split_set(components: &[SpongeSpec], p: &PointSet) -> Vec<PointSet> {
    let blocks: Vec<Vec<Point>> = p.iter().map(|x| split_point(components, x)).collect();
    (0..components.len())
        .map(|b| PointSet::new(blocks.iter().map(|row| row[b].clone()).collect()).expect("nonempty blocks"))
        .collect()
}

fn product_extremum(components: &[SpongeSpec], p: &PointSet, tol: f64, side: Extremum) -> Result<Point> {
    let mut coords = Vec::with_capacity(p.dim());
    for (block, (c, q)) in components.iter().zip(split_set(components, p)).enumerate() {
        match c.extremum(&q, tol, side)? {
            Some(x) => coords.extend_from_slice(x.coords()),
            None => return Err(SpongeError::ComponentUnbounded { block }),
        }
    }
    Point::new(coords)
}

fn check_product_dim(specs: &[SpongeSpec], p: &PointSet) -> Result<()> {
    let total: usize = specs.iter().map(|c| c.dim).sum();
    if total != p.dim() {
        return Err(SpongeError::DimensionMismatch { expected: total, got: p.dim() });
    }
    specs.iter().try_for_each(SpongeSpec::validate)
}

/// Blockwise join over the coordinate blocks given by `specs`.
pub fn product_join(specs: &[SpongeSpec], p: &PointSet) -> Result<Point> {
    check_product_dim(specs, p)?;
    product_extremum(specs, p, DEFAULT_TOL, Extremum::Join)
}

/// Blockwise meet over the coordinate blocks given by `specs`.
pub fn product_meet(specs: &[SpongeSpec], p: &PointSet) -> Result<Point> {
    check_product_dim(specs, p)?;
    product_extremum(specs, p, DEFAULT_TOL, Extremum::Meet)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn pt(c: &[f64]) -> Point {
        Point::from_slice(c)
    }

    #[test]
    fn leq_examples() {
        let ip = SpongeSpec::inner_product(2).unwrap();
        assert!(leq(&ip, &pt(&[1.0, 0.0]), &pt(&[2.0, 1.0])).unwrap());
        assert!(!leq(&ip, &pt(&[2.0, 0.0]), &pt(&[1.0, 3.0])).unwrap());
        assert!(leq(&ip, &pt(&[-0.3, 7.0]), &pt(&[-0.3, 7.0])).unwrap());
        assert!(matches!(leq(&ip, &pt(&[1.0]), &pt(&[1.0, 0.0])), Err(SpongeError::DimensionMismatch { .. })));
        let hy = SpongeSpec::hyperbolic(2).unwrap();
        assert!(matches!(leq(&hy, &pt(&[0.0, -1.0]), &pt(&[0.0, 1.0])), Err(SpongeError::OutsideDomain(..))));
    }

    #[test]
    fn bounds_examples() {
        let ip = SpongeSpec::inner_product(2).unwrap();
        let p = PointSet::from_rows(&[&[2.0, 0.0], &[2.0, 1.0], &[1.0, 3.0]]);
        assert!(bounds_check(&ip, &p, &pt(&[1.0, 0.0]), Side::Left).unwrap());
        let x = pt(&[0.4, 0.2]);
        let single = PointSet::singleton(x.clone());
        assert!(bounds_check(&ip, &single, &x, Side::Left).unwrap());
        assert!(bounds_check(&ip, &single, &x, Side::Right).unwrap());
        let p = PointSet::from_rows(&[&[2.0, 0.0], &[1.0, 3.0]]);
        assert!(!bounds_check(&ip, &p, &pt(&[2.0, 0.0]), Side::Left).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let s = SpongeSpec::from_json(r#"{"family":"epigraph","profile":{"kind":"power","c":1.0,"p":2.0},"dim":3}"#).unwrap();
        assert_eq!(s, SpongeSpec::epigraph(Profile::power(1.0, 2.0).unwrap(), 3).unwrap());
        let back = SpongeSpec::from_json(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(back, s);
        let a = SpongeSpec::from_json(r#"{"family":"angle","kappa":0.5,"period":1.0,"dim":1}"#).unwrap();
        let prod = SpongeSpec::product(vec![a.clone(), a]).unwrap();
        let txt = serde_json::to_string(&prod).unwrap();
        assert_eq!(SpongeSpec::from_json(&txt).unwrap(), prod);
        assert!(SpongeSpec::from_json(r#"{"family":"angle","kappa":0.7,"period":1.0,"dim":1}"#).is_err());
        assert!(SpongeSpec::from_json(r#"{"family":"hyperbolic","dim":1}"#).is_err());
        assert!(SpongeSpec::from_json(r#"{"family":"epigraph","profile":{"kind":"power","c":1.0,"p":1.0},"dim":3}"#).is_err());
    }

    #[test]
    fn product_examples() {
        let a = SpongeSpec::angle(0.5, 1.0).unwrap();
        let specs = vec![a.clone(), a];
        let p = PointSet::from_rows(&[&[0.1, 0.2], &[0.3, 0.1]]);
        assert!(product_join(&specs, &p).unwrap().approx_eq(&pt(&[0.3, 0.2]), 1e-15));
        assert!(product_meet(&specs, &p).unwrap().approx_eq(&pt(&[0.1, 0.1]), 1e-15));
        let x = PointSet::from_rows(&[&[0.7, 0.9]]);
        assert_eq!(product_join(&specs, &x).unwrap(), pt(&[0.7, 0.9]));

        let c = SpongeSpec::angle(PI, 2.0 * PI).unwrap();
        let specs = vec![SpongeSpec::angle(0.5, 1.0).unwrap(), c];
        let p = PointSet::from_rows(&[&[0.1, 0.0], &[0.2, 2.5], &[0.1, 4.5]]);
        assert_eq!(product_join(&specs, &p), Err(SpongeError::ComponentUnbounded { block: 1 }));
        let prod = SpongeSpec::product(specs).unwrap();
        assert_eq!(prod.join(&p, DEFAULT_TOL).unwrap(), None);
    }

    #[test]
    fn dispatch_matches_family_solvers() {
        let hy = SpongeSpec::hyperbolic(2).unwrap();
        let p = PointSet::from_rows(&[&[0.0, 1.0], &[1.0, 1.0]]);
        let m = hy.meet(&p, DEFAULT_TOL).unwrap().unwrap();
        assert!(m.approx_eq(&pt(&[0.5, 0.75f64.sqrt()]), 1e-12));
        let ip = SpongeSpec::inner_product(2).unwrap();
        let p = PointSet::from_rows(&[&[1.0, 0.0], &[0.0, 1.0]]);
        assert!(ip.join(&p, DEFAULT_TOL).unwrap().unwrap().approx_eq(&pt(&[1.0, 1.0]), 1e-9));
    }
}
