#![allow(dead_code)]

use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sponge::epigraph::Profile;
use sponge::morphology::Field;
use sponge::{Point, PointSet, SpongeSpec};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn pt(c: &[f64]) -> Point {
    Point::from_slice(c)
}

pub fn uniform_point(r: &mut ChaCha8Rng, dim: usize, lo: f64, hi: f64) -> Point {
    Point::from_slice(&(0..dim).map(|_| r.gen_range(lo..hi)).collect::<Vec<_>>())
}

pub fn uniform_set(r: &mut ChaCha8Rng, n: usize, dim: usize, lo: f64, hi: f64) -> PointSet {
    PointSet::new((0..n).map(|_| uniform_point(r, dim, lo, hi)).collect()).unwrap()
}

/// Perpendicular coordinates in `[-w, w]`, height in `[h_lo, h_hi]`.
pub fn half_space_point(r: &mut ChaCha8Rng, dim: usize, w: f64, h_lo: f64, h_hi: f64) -> Point {
    let mut v: Vec<f64> = (1..dim).map(|_| r.gen_range(-w..w)).collect();
    v.push(r.gen_range(h_lo..h_hi));
    Point::from_slice(&v)
}

pub fn epi2(dim: usize) -> SpongeSpec {
    SpongeSpec::epigraph(Profile::power(1.0, 2.0).unwrap(), dim).unwrap()
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// Compares `content` with the golden file `name`. With `SPONGE_BLESS=1`
/// the file is (re)written instead.
pub fn check_golden(name: &str, content: &str) -> Result<(), String> {
    let path = golden_dir().join(name);
    if std::env::var("SPONGE_BLESS").as_deref() == Ok("1") {
        std::fs::create_dir_all(golden_dir()).map_err(|e| e.to_string())?;
        std::fs::write(&path, content).map_err(|e| e.to_string())?;
        return Ok(());
    }
    match std::fs::read_to_string(&path) {
        Ok(g) if g == content => Ok(()),
        Ok(_) => Err(format!("{} differs from the computed output", path.display())),
        Err(_) => Err(format!("{} is missing; regenerate with SPONGE_BLESS=1", path.display())),
    }
}

/// Seeded 64×64 test fields, one per family, with value ranges chosen so
/// that the non-passthrough families have bounded 3×3 windows.
pub fn family_fields(seed: u64) -> Vec<(&'static str, SpongeSpec, Field)> {
    let mut r = rng(seed);
    let n = 64;
    let mut gen = |ch: usize, f: &mut dyn FnMut(&mut ChaCha8Rng) -> Vec<f64>| {
        let data: Vec<f64> = (0..n * n).flat_map(|_| f(&mut r)).collect();
        Field::new(n, n, ch, data).unwrap()
    };
    let ip = gen(2, &mut |r| vec![r.gen_range(0.5..2.0), r.gen_range(-1.0..1.0)]);
    let epi = gen(2, &mut |r| vec![r.gen_range(-1.0..1.0), r.gen_range(0.0..1.0)]);
    let hyp = gen(2, &mut |r| vec![r.gen_range(0.0..0.5), r.gen_range(1.0..2.0)]);
    let ang = gen(1, &mut |r| vec![r.gen_range(0.0..std::f64::consts::TAU)]);
    let torus = gen(2, &mut |r| vec![r.gen_range(0.0..1.0), r.gen_range(0.0..1.0)]);
    let a = SpongeSpec::angle(0.5, 1.0).unwrap();
    vec![
        ("inner_product", SpongeSpec::inner_product(2).unwrap(), ip),
        ("epigraph_p2", epi2(2), epi),
        ("hyperbolic", SpongeSpec::hyperbolic(2).unwrap(), hyp),
        ("angle", SpongeSpec::angle(std::f64::consts::PI, std::f64::consts::TAU).unwrap(), ang),
        ("torus", SpongeSpec::product(vec![a.clone(), a]).unwrap(), torus),
    ]
}
