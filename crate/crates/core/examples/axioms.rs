//! Orientation, absorption and part-preservation checks, including the
//! failure of transitivity in the inner-product sponge.
//!
//! ```text
//! cargo run --example axioms
//! ```

use sponge::axioms::{check_absorption, check_orientation, check_part_preservation};
use sponge::{Point, PointSet, Sponge, SpongeSpec, DEFAULT_TOL};

fn main() -> sponge::Result<()> {
    let ip = SpongeSpec::inner_product(2)?;
    let four = PointSet::from_rows(&[&[1.0, 0.0], &[2.0, 0.0], &[2.0, 1.0], &[1.0, 3.0]]);
    println!("orientation:\n{}", check_orientation(&ip, &four));

    let xyz = PointSet::from_rows(&[&[2.0, 0.0], &[2.0, 1.0], &[1.0, 3.0]]);
    println!("absorption on {{x, y, z}}:\n{}", check_absorption(&ip, &xyz)?);

    let (x, y, z) = (Point::from_slice(&[2.0, 0.0]), Point::from_slice(&[2.0, 1.0]), Point::from_slice(&[1.0, 3.0]));
    let meet = |pts: Vec<Point>| ip.meet(&PointSet::new(pts).unwrap(), DEFAULT_TOL).unwrap().unwrap();
    println!("M{{x,y}} = {:?}, M{{y,z}} = {:?}, M{{x,y,z}} = {:?}", meet(vec![x.clone(), y.clone()]), meet(vec![y.clone(), z.clone()]), meet(vec![x, y, z]));

    let y = Point::from_slice(&[0.5, 0.5]);
    let p = PointSet::from_rows(&[&[2.0, 0.0], &[0.0, 2.0]]);
    println!("part preservation with y = (0.5, 0.5):\n{}", check_part_preservation(&ip, &p, &y));

    let epi = SpongeSpec::from_json(r#"{"family": "epigraph", "profile": {"kind": "power", "c": 1.0, "p": 2.0}, "dim": 3}"#)?;
    let q = PointSet::from_rows(&[&[0.0, 0.0, 0.0], &[1.0, 0.5, -0.2], &[-0.4, 1.0, 0.3]]);
    println!("epigraph absorption:\n{}", check_absorption(&epi, &q)?);
    Ok(())
}
