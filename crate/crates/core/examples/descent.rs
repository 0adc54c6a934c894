//! Approximate joins by descending through right bounds, compared with the
//! exact epigraph and hyperbolic solvers.
//!
//! ```text
//! cargo run --release --example descent
//! ```

use sponge::descent::{default_seeds, descent_join};
use sponge::{PointSet, Sponge, SpongeSpec, DEFAULT_TOL};

fn main() -> sponge::Result<()> {
    let epi = SpongeSpec::from_json(r#"{"family": "epigraph", "profile": {"kind": "power", "c": 1.0, "p": 2.0}, "dim": 2}"#)?;
    let p = PointSet::from_rows(&[&[-1.0, 0.0], &[1.0, 0.0]]);
    let seeds = PointSet::from_rows(&[&[0.0, 2.0], &[0.5, 2.5]]);
    let d = descent_join(&epi, &p, &seeds, 500, 1e-9, 1)?;
    println!("epigraph: {:?} after {} iterations (exact {:?})", d.point, d.iterations, epi.join(&p, DEFAULT_TOL)?);

    let hyp = SpongeSpec::hyperbolic(3)?;
    let q = PointSet::from_rows(&[&[0.0, 0.0, 1.0], &[1.0, 0.2, 1.0], &[0.3, 0.9, 0.7]]);
    let seeds = default_seeds(&hyp, &q, 4, 7)?;
    let d = descent_join(&hyp, &q, &seeds, 500, 1e-9, 7)?;
    println!("hyperbolic: {:?} after {} iterations (exact {:?})", d.point, d.iterations, hyp.join(&q, DEFAULT_TOL)?);
    let every = d.trace.len() / 8;
    let samples: Vec<String> = d.trace.iter().step_by(every.max(1)).map(|v| format!("{v:.6}")).collect();
    println!("  discriminator trace: {}", samples.join(" "));
    Ok(())
}
