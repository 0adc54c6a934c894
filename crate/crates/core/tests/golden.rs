mod common;

use std::process::Command;

use common::{check_golden, family_fields};
use sponge::io::{field_to_string, read_field, write_field};
use sponge::morphology::{close, dilate, open, BoundaryPolicy, Field, StructuringElement};
use sponge::SpongeSpec;

fn crop(f: &Field, n: usize) -> Field {
    Field::from_fn(n, n, f.channels(), |x, y| f.pixel_slice(x, y).to_vec()).unwrap()
}

fn fixture(name: &str) -> (SpongeSpec, Field) {
    let (_, spec, field) = family_fields(17).into_iter().find(|(n, _, _)| *n == name).unwrap();
    (spec, crop(&field, 24))
}

#[test]
fn open_and_close_fixtures() {
    let se = StructuringElement::square(1);
    for name in ["epigraph_p2", "hyperbolic"] {
        let (spec, field) = fixture(name);
        let o = open(&field, &se, &spec, BoundaryPolicy::Shrink).unwrap();
        let c = close(&field, &se, &spec, BoundaryPolicy::Shrink).unwrap();
        check_golden(&format!("{name}_open.field"), &field_to_string(&o)).unwrap();
        check_golden(&format!("{name}_close.field"), &field_to_string(&c)).unwrap();
    }
}

#[test]
fn epigraph_dilation_matches_a_direct_search() {
    // lowest point above max_q (q_h + |c − q_⊥|²) over the window, by scanning c
    let (spec, field) = fixture("epigraph_p2");
    let out = dilate(&field, &StructuringElement::square(1), &spec, BoundaryPolicy::Shrink).unwrap();
    for (x, y) in [(0, 0), (5, 7), (12, 3), (23, 23), (10, 19)] {
        let mut win = Vec::new();
        for dy in -1i64..=1 {
            for dx in -1i64..=1 {
                let (u, v) = (x as i64 + dx, y as i64 + dy);
                if (0..24).contains(&u) && (0..24).contains(&v) {
                    win.push(field.pixel(u as usize, v as usize));
                }
            }
        }
        let env = |c: f64| win.iter().map(|q| q[1] + (c - q[0]).powi(2)).fold(f64::NEG_INFINITY, f64::max);
        let (mut lo, mut hi) = (-2.0, 2.0);
        for _ in 0..200 {
            let (a, b) = (lo + (hi - lo) / 3.0, hi - (hi - lo) / 3.0);
            if env(a) < env(b) {
                hi = b;
            } else {
                lo = a;
            }
        }
        let c = 0.5 * (lo + hi);
        let got = out.pixel(x, y);
        assert!((got[0] - c).abs() < 1e-6 && (got[1] - env(c)).abs() < 1e-9, "({x},{y}): {got:?} vs ({c}, {})", env(c));
    }
}

#[test]
fn cli_morph_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let (_, field) = fixture("epigraph_p2");
    let input = dir.path().join("in.field");
    let output = dir.path().join("out.field");
    let spec = dir.path().join("spec.json");
    let se = dir.path().join("se.json");
    write_field(&input, &field).unwrap();
    std::fs::write(&spec, r#"{"family": "epigraph", "profile": {"kind": "power", "c": 1.0, "p": 2.0}, "dim": 2}"#).unwrap();
    std::fs::write(&se, r#"{"offsets": [[-1, 0], [0, 0], [1, 0], [0, -1], [0, 1]]}"#).unwrap();
    for op in ["erode", "close"] {
        let out = Command::new(env!("CARGO_BIN_EXE_sponge"))
            .args(["morph", "--spec"])
            .arg(&spec)
            .arg("--se")
            .arg(&se)
            .args(["--op", op])
            .arg(&input)
            .arg(&output)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let text = std::fs::read_to_string(&output).unwrap();
        check_golden(&format!("cli_epigraph_p2_{op}.field"), &text).unwrap();
        assert_eq!(field_to_string(&read_field(&output).unwrap()), text);
    }
}
