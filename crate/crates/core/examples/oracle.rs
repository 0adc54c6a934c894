//! Cross-checking the exact solvers against the brute-force grid scan.
//!
//! ```text
//! cargo run --release --example oracle
//! ```

use sponge::oracle::brute_force_certified;
use sponge::{Extremum, PointSet, Sponge, SpongeSpec, DEFAULT_TOL};

fn main() -> sponge::Result<()> {
    let cases = [
        ("inner product meet", SpongeSpec::inner_product(2)?, PointSet::from_rows(&[&[2.0, 0.0], &[0.0, 2.0]]), Extremum::Meet),
        ("inner product join", SpongeSpec::inner_product(2)?, PointSet::from_rows(&[&[1.0, 0.0], &[0.0, 1.0]]), Extremum::Join),
        (
            "epigraph join",
            SpongeSpec::from_json(r#"{"family": "epigraph", "profile": {"kind": "power", "c": 1.0, "p": 2.0}, "dim": 2}"#)?,
            PointSet::from_rows(&[&[0.0, 0.0], &[1.0, 0.0]]),
            Extremum::Join,
        ),
        ("hyperbolic join", SpongeSpec::hyperbolic(2)?, PointSet::from_rows(&[&[0.0, 1.0], &[1.0, 1.0]]), Extremum::Join),
        ("hyperbolic meet", SpongeSpec::hyperbolic(2)?, PointSet::from_rows(&[&[0.0, 1.0], &[1.0, 1.0]]), Extremum::Meet),
    ];
    for (name, spec, p, side) in cases {
        let exact = match side {
            Extremum::Join => spec.join(&p, DEFAULT_TOL)?,
            Extremum::Meet => spec.meet(&p, DEFAULT_TOL)?,
        };
        let grid = brute_force_certified(&spec, &p, 0.01, side)?;
        println!("{name}: exact {exact:?}, grid {grid:?}");
    }
    Ok(())
}
