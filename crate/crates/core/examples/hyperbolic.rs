//! The Poincaré half-plane as a sponge: left cones are half disks.
//!
//! ```text
//! cargo run --example hyperbolic
//! ```

use sponge::hyperbolic::{d_hyp, hyp_discriminator_bound, hyp_join, hyp_leq, hyp_meet, hyp_meet_pair};
use sponge::{Point, PointSet, DEFAULT_TOL};

fn main() -> sponge::Result<()> {
    let x = Point::from_slice(&[0.0, 1.0]);
    let y = Point::from_slice(&[1.0, 1.0]);
    let far = Point::from_slice(&[2.0, 1.0]);
    println!("d(x, y) = {:.6}", d_hyp(&x, &y)?);
    println!("(0.5, 1.2) above x: {}", hyp_leq(&x, &Point::from_slice(&[0.5, 1.2]))?);

    println!("pair meet {{x, y}}: {:?}", hyp_meet_pair(&x, &y)?);
    match hyp_meet_pair(&x, &far) {
        Ok(m) => println!("pair meet {{x, far}}: {m:?}"),
        Err(e) => println!("pair meet {{x, far}}: {e}"),
    }

    let p = PointSet::from_rows(&[&[0.0, 1.0], &[1.0, 1.0], &[0.4, 1.5], &[-0.3, 0.6]]);
    println!("join: {:?}", hyp_join(&p, DEFAULT_TOL)?);
    println!("meet: {:?}", hyp_meet(&p, DEFAULT_TOL)?);

    for delta in [0.01, 0.1, 1.0] {
        println!("comparable and h within {delta}: distance at most {:.6}", hyp_discriminator_bound(delta)?);
    }
    Ok(())
}
