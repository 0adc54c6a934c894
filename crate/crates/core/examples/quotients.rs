//! Half-open cones on the line, their quotients by subgroups, and the
//! angle and torus sponges that come out of them.
//!
//! ```text
//! cargo run --example quotients
//! ```

use std::f64::consts::{PI, TAU};

use sponge::groups::{angle_join, angle_leq, angle_meet, check_antiH, check_quotient_postulate, AxisGroup, BoxQuotient, ConeSpec1D, Subgroup};
use sponge::{PointSet, Sponge, SpongeSpec, DEFAULT_TOL};

fn main() -> sponge::Result<()> {
    let half_turn = ConeSpec1D::angle(PI, TAU)?;
    println!("6.1 ⪯ 0.2 on the circle: {}", angle_leq(&half_turn, 6.1, 0.2)?);
    println!("meet {{0.2, 6.1}} = {:?}, join = {:?}", angle_meet(&half_turn, &[0.2, 6.1])?, angle_join(&half_turn, &[0.2, 6.1])?);
    println!("meet {{0, 2.5, 4.5}} = {:?}", angle_meet(&half_turn, &[0.0, 2.5, 4.5])?);

    for (kappa, period) in [(0.5, 1.0), (0.7, 1.0)] {
        let cone = ConeSpec1D { kappa, period: Some(period) };
        let anti = check_antiH(&cone);
        let post = check_quotient_postulate(&cone, 200);
        println!("[0, {kappa}) mod {period}: antiH {}, quotient postulate {}", anti.passed(), post.passed());
        if let Some(v) = anti.violations().first() {
            println!("  witness {:?}: {}", v.witness, v.detail);
        }
    }

    let bx = |h| BoxQuotient::new(vec![0.5, 0.5], h);
    let cases = [
        ("Z^2", bx(Subgroup::Axes(vec![AxisGroup::Periodic(1.0), AxisGroup::Periodic(1.0)]))?),
        ("first axis", bx(Subgroup::Axes(vec![AxisGroup::Free, AxisGroup::Zero]))?),
        ("x1 = x2", bx(Subgroup::Line(vec![1.0, 1.0]))?),
        ("x1 + x2 = 0", bx(Subgroup::Line(vec![1.0, -1.0]))?),
    ];
    for (name, q) in cases {
        println!("box [0,1/2)^2 modulo {name}: antiH {}, quotient postulate {}", q.check_anti_h().passed(), q.check_quotient_postulate(300, 16).passed());
    }

    let a = SpongeSpec::angle(0.5, 1.0)?;
    let torus = SpongeSpec::product(vec![a.clone(), a])?;
    let p = PointSet::from_rows(&[&[0.1, 0.2], &[0.3, 0.1]]);
    println!("torus join {:?}", torus.join(&p, DEFAULT_TOL)?);
    Ok(())
}
