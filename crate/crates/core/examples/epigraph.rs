//! Epigraph sponges `f(|y⊥ − x⊥|) ≤ y_h − x_h` with power profiles:
//! profile validation, pair and set joins, meets by inversion.
//!
//! ```text
//! cargo run --example epigraph
//! ```

use sponge::epigraph::{epi_join, epi_join_pair, epi_meet, validate_profile, Profile};
use sponge::{Point, PointSet, DEFAULT_TOL};

fn main() -> sponge::Result<()> {
    for (p, dim) in [(1.0, 2), (1.0, 3), (2.0, 3), (3.0, 4)] {
        let f = Profile::power(1.0, p)?;
        let rep = validate_profile(&f, dim, 10_000);
        println!("f(d) = d^{p} in dimension {dim}: {}", if rep.passed() { "sponge" } else { "rejected" });
        if let Some(v) = rep.violations().first() {
            println!("  {}: {}", v.axiom, v.detail);
        }
    }

    let f = Profile::power(1.0, 2.0)?;
    let a = Point::from_slice(&[-1.0, 0.0]);
    let b = Point::from_slice(&[1.0, 0.0]);
    println!("symmetric pair join: {:?}", epi_join_pair(&f, &a, &b, DEFAULT_TOL)?);

    let p = PointSet::from_rows(&[&[-1.0, 0.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.3, -0.4, 0.5]]);
    println!("join of four points in 3D: {:?}", epi_join(&f, &p, DEFAULT_TOL)?);
    println!("meet of the same points:   {:?}", epi_meet(&f, &p, DEFAULT_TOL)?);
    Ok(())
}
