//! Sampled checks of the orientation and sponge laws.

use crate::error::{Result, SpongeError};
use crate::point::{Point, PointSet};
use crate::report::AxiomReport;
use crate::spec::{Orientation, Sponge, DEFAULT_TOL};

/// Relative tolerance used when comparing solver outputs.
pub const AXIOM_TOL: f64 = 1e-7;

fn close(a: &Point, b: &Point) -> bool {
    let scale = 1.0 + a.coords().iter().chain(b.coords()).fold(0.0f64, |m, v| m.max(v.abs()));
    a.max_abs_diff(b) <= AXIOM_TOL * scale
}

fn pair(a: &Point, b: &Point) -> PointSet {
    PointSet::new(vec![a.clone(), b.clone()]).expect("same dimension")
}

/// Reflexivity of every sample and antisymmetry of every pair.
pub fn check_orientation<O: Orientation + ?Sized>(o: &O, sample: &PointSet) -> AxiomReport {
    let mut rep = AxiomReport::new();
    let pts = sample.points();
    for x in pts {
        match o.leq(x, x) {
            Ok(true) => {}
            Ok(false) => rep.violate("reflexivity", vec![x.clone()], "x ⪯ x fails"),
            Err(e) => rep.violate("domain", vec![x.clone()], e.to_string()),
        }
    }
    for (i, x) in pts.iter().enumerate() {
        for y in &pts[i + 1..] {
            if x == y {
                continue;
            }
            if let (Ok(true), Ok(true)) = (o.leq(x, y), o.leq(y, x)) {
                rep.violate("antisymmetry", vec![x.clone(), y.clone()], "x ⪯ y and y ⪯ x with x ≠ y");
            }
        }
    }
    rep
}

/// `M({x} ∪ J(P)) = {x}` for every `x ∈ P`, and the dual law
/// `J({x} ∪ M(P)) = {x}` whenever `P` has a meet.
///
/// Errors with `JoinUnavailable` when `P` has no right bound.
pub fn check_absorption<S: Sponge + ?Sized>(s: &S, p: &PointSet) -> Result<AxiomReport> {
    let mut rep = AxiomReport::new();
    let j = s.join(p, DEFAULT_TOL)?.ok_or(SpongeError::JoinUnavailable)?;
    for x in p.iter() {
        match s.meet(&pair(x, &j), DEFAULT_TOL)? {
            Some(m) if close(&m, x) => {}
            Some(m) => rep.violate("absorption", vec![x.clone(), j.clone(), m], "M({x, J(P)}) differs from x"),
            None => rep.violate("absorption", vec![x.clone(), j.clone()], "{x, J(P)} has no meet"),
        }
    }
    match s.meet(p, DEFAULT_TOL)? {
        Some(m) => {
            for x in p.iter() {
                match s.join(&pair(x, &m), DEFAULT_TOL)? {
                    Some(k) if close(&k, x) => {}
                    Some(k) => rep.violate("dual absorption", vec![x.clone(), m.clone(), k], "J({x, M(P)}) differs from x"),
                    None => rep.violate("dual absorption", vec![x.clone(), m.clone()], "{x, M(P)} has no join"),
                }
            }
        }
        None => rep.note("P has no meet; dual absorption skipped"),
    }
    Ok(rep)
}

/// If `M({x, y}) = {y}` for all `x ∈ P`, then `M(P)` exists and
/// `M({M(P), y}) = {y}`. Passes vacuously (with a note) otherwise.
/// The dual law is checked the same way with joins.
pub fn check_part_preservation<S: Sponge + ?Sized>(s: &S, p: &PointSet, y: &Point) -> AxiomReport {
    let mut rep = AxiomReport::new();
    if let Err(e) = part_law(s, p, y, false, &mut rep) {
        rep.violate("part preservation", vec![y.clone()], e.to_string());
    }
    if let Err(e) = part_law(s, p, y, true, &mut rep) {
        rep.violate("dual part preservation", vec![y.clone()], e.to_string());
    }
    rep
}

fn part_law<S: Sponge + ?Sized>(s: &S, p: &PointSet, y: &Point, dual: bool, rep: &mut AxiomReport) -> Result<()> {
    let (name, op): (&str, fn(&S, &PointSet, f64) -> Result<Option<Point>>) = if dual {
        ("dual part preservation", |s, q, t| s.join(q, t))
    } else {
        ("part preservation", |s, q, t| s.meet(q, t))
    };
    for x in p.iter() {
        match op(s, &pair(x, y), DEFAULT_TOL)? {
            Some(m) if close(&m, y) => {}
            _ => {
                rep.note(format!("{name}: hypothesis fails, vacuous"));
                return Ok(());
            }
        }
    }
    let Some(m) = op(s, p, DEFAULT_TOL)? else {
        rep.violate(name, vec![y.clone()], "hypothesis holds but P has no extremum");
        return Ok(());
    };
    match op(s, &pair(&m, y), DEFAULT_TOL)? {
        Some(z) if close(&z, y) => {}
        Some(z) => rep.violate(name, vec![m, y.clone(), z], "extremum of {M(P), y} differs from y"),
        None => rep.violate(name, vec![m, y.clone()], "{M(P), y} has no extremum"),
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::epigraph::Profile;
    use crate::spec::SpongeSpec;
    use std::f64::consts::PI;

    /// Closed arc cone `[0, κ]` on a circle of circumference `L`.
    struct ClosedArc {
        kappa: f64,
        period: f64,
    }

    impl Orientation for ClosedArc {
        fn dim(&self) -> usize {
            1
        }
        fn leq(&self, x: &Point, y: &Point) -> Result<bool> {
            Ok((y[0] - x[0]).rem_euclid(self.period) <= self.kappa)
        }
    }

    fn pt(c: &[f64]) -> Point {
        Point::from_slice(c)
    }

    #[test]
    fn orientation_examples() {
        let ip = SpongeSpec::inner_product(2).unwrap();
        let four = PointSet::from_rows(&[&[1.0, 0.0], &[2.0, 0.0], &[2.0, 1.0], &[1.0, 3.0]]);
        assert!(check_orientation(&ip, &four).passed());
        let ang = SpongeSpec::angle(PI, 2.0 * PI).unwrap();
        assert!(check_orientation(&ang, &PointSet::from_rows(&[&[0.0], &[3.0]])).passed());
        let broken = ClosedArc { kappa: 2.0, period: 4.0 };
        let sample = PointSet::new((0..8).map(|k| pt(&[k as f64 * 0.5])).collect()).unwrap();
        let r = check_orientation(&broken, &sample);
        let v = r.first_violation("antisymmetry").unwrap();
        assert_eq!((v.witness[1][0] - v.witness[0][0]).abs(), 2.0);
    }

    #[test]
    fn absorption_examples() {
        let ip = SpongeSpec::inner_product(2).unwrap();
        let r = check_absorption(&ip, &PointSet::from_rows(&[&[1.0, 0.0], &[0.0, 1.0]])).unwrap();
        assert!(r.passed(), "{r}");
        let x = PointSet::from_rows(&[&[0.3, -2.0]]);
        assert!(check_absorption(&ip, &x).unwrap().passed());
        let epi = SpongeSpec::epigraph(Profile::power(1.0, 2.0).unwrap(), 2).unwrap();
        let r = check_absorption(&epi, &PointSet::from_rows(&[&[-1.0, 0.0], &[1.0, 0.0]])).unwrap();
        assert!(r.passed(), "{r}");
        let unb = PointSet::from_rows(&[&[1.0, 0.0], &[-1.0, 0.0]]);
        assert_eq!(check_absorption(&ip, &unb).unwrap_err(), SpongeError::JoinUnavailable);
    }

    #[test]
    fn part_preservation_examples() {
        let ip = SpongeSpec::inner_product(2).unwrap();
        let p = PointSet::from_rows(&[&[2.0, 0.0], &[0.0, 2.0]]);
        let r = check_part_preservation(&ip, &p, &pt(&[0.5, 0.5]));
        assert!(r.passed(), "{r}");
        let y = pt(&[1.5, -0.5]);
        assert!(check_part_preservation(&ip, &PointSet::singleton(y.clone()), &y).passed());
        let hy = SpongeSpec::hyperbolic(2).unwrap();
        let p = PointSet::from_rows(&[&[0.0, 1.0], &[1.0, 1.0]]);
        let y = pt(&[0.5, 0.5]);
        assert!(hy.bounds_check(&p, &y, crate::spec::Side::Left).unwrap());
        let r = check_part_preservation(&hy, &p, &y);
        assert!(r.passed(), "{r}");
        assert!(!r.notes().iter().any(|n| n.starts_with("part preservation: hypothesis fails")));
    }
}
