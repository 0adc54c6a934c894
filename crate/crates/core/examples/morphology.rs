//! Dilation, erosion, opening and closing of vector-valued fields, with a
//! field written in the text format the CLI reads.
//!
//! ```text
//! cargo run --release --example morphology
//! ```

use std::f64::consts::TAU;

use sponge::io::write_field;
use sponge::morphology::{close, dilate, erode, morph, open, BoundaryPolicy, Field, MorphOp, MorphOptions, StructuringElement, UnboundedPolicy};
use sponge::SpongeSpec;

fn main() -> sponge::Result<()> {
    let spec = SpongeSpec::hyperbolic(2)?;
    // a height bump over a sloped base: every window has a join and a meet
    let field = Field::from_fn(32, 32, 2, |x, y| {
        let (u, v) = (x as f64 / 31.0, y as f64 / 31.0);
        vec![0.2 * u, 1.0 + 0.5 * (-((u - 0.5).powi(2) + (v - 0.5).powi(2)) * 20.0).exp()]
    })?;
    let se = StructuringElement::square(1);
    for (name, out) in [
        ("dilate", dilate(&field, &se, &spec, BoundaryPolicy::Shrink)?),
        ("erode", erode(&field, &se, &spec, BoundaryPolicy::Shrink)?),
        ("open", open(&field, &se, &spec, BoundaryPolicy::Shrink)?),
        ("close", close(&field, &se, &spec, BoundaryPolicy::Shrink)?),
    ] {
        println!("{name:>6}: centre {:?}", out.pixel(16, 16));
    }

    // angles whose windows straddle more than the cone keep their value
    let angles = Field::from_fn(16, 1, 1, |x, _| vec![(x as f64 * 1.7) % TAU])?;
    let opts = MorphOptions { unbounded: Some(UnboundedPolicy::Passthrough), ..MorphOptions::default() };
    let out = morph(&angles, &se, &SpongeSpec::angle(std::f64::consts::PI, TAU)?, MorphOp::Dilate, &opts)?;
    println!("angle dilation: {} of 16 pixels passed through", out.unbounded_pixels);

    let path = std::env::temp_dir().join("sponge_example.field");
    write_field(&path, &field)?;
    println!("wrote {}", path.display());
    Ok(())
}
