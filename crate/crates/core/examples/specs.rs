//! Sponge specs as JSON: the same document drives the library and the CLI.
//!
//! ```text
//! cargo run --example specs
//! ```

use sponge::{PointSet, Sponge, SpongeSpec, DEFAULT_TOL};

fn main() -> sponge::Result<()> {
    let docs = [
        r#"{"family": "inner_product", "dim": 2}"#,
        r#"{"family": "epigraph", "profile": {"kind": "power", "c": 0.5, "p": 2.0}, "dim": 2}"#,
        r#"{"family": "hyperbolic", "dim": 2}"#,
        r#"{"family": "product", "components": [
            {"family": "angle", "kappa": 0.5, "period": 1.0, "dim": 1},
            {"family": "inner_product", "dim": 1}
        ], "dim": 2}"#,
    ];
    let p = PointSet::from_rows(&[&[0.25, 1.0], &[0.8, 0.9]]);
    for doc in docs {
        let spec = SpongeSpec::from_json(doc)?;
        println!("{}", serde_json::to_string(&spec).expect("specs serialize"));
        println!("  join {:?}", spec.join(&p, DEFAULT_TOL)?);
        println!("  meet {:?}", spec.meet(&p, DEFAULT_TOL)?);
    }
    match SpongeSpec::from_json(r#"{"family": "epigraph", "profile": {"kind": "power", "c": 1.0, "p": 1.0}, "dim": 3}"#) {
        Ok(_) => println!("accepted"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
