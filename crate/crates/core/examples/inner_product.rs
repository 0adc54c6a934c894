//! The inner-product sponge on the plane: the four-vector example, meets
//! as min-norm points and joins of right-bounded sets.
//!
//! ```text
//! cargo run --example inner_product
//! ```

use sponge::inner_product::{ip_join, ip_leq, ip_meet, min_norm_point};
use sponge::{Point, PointSet, DEFAULT_TOL};

fn pt(x: f64, y: f64) -> Point {
    Point::from_slice(&[x, y])
}

fn main() -> sponge::Result<()> {
    let (w, x, y, z) = (pt(1.0, 0.0), pt(2.0, 0.0), pt(2.0, 1.0), pt(1.0, 3.0));
    println!("x ⪯ y: {}, y ⪯ z: {}, x ⪯ z: {}", ip_leq(&x, &y)?, ip_leq(&y, &z)?, ip_leq(&x, &z)?);
    println!("w below all three: {}", [&x, &y, &z].iter().all(|q| ip_leq(&w, q).unwrap()));

    let p = PointSet::new(vec![x.clone(), y.clone(), z.clone()])?;
    let m = min_norm_point(&p, 1e-15)?;
    println!("M{{x,y,z}} = {:?}", m.point);
    for (i, weight) in &m.support {
        println!("  weight {weight:.6} on {:?}", p.points()[*i]);
    }
    println!("M{{x,y}} = {:?}", ip_meet(&PointSet::pair(x.clone(), y.clone())?));

    let r = PointSet::from_rows(&[&[1.0, 0.0], &[0.0, 1.0]]);
    println!("J{{(1,0),(0,1)}} = {:?}", ip_join(&r, DEFAULT_TOL)?);
    let opposite = PointSet::from_rows(&[&[1.0, 0.0], &[-1.0, 0.0]]);
    println!("J{{(1,0),(-1,0)}} = {:?}", ip_join(&opposite, DEFAULT_TOL)?);
    Ok(())
}
