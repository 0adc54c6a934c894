//! Library results against brute-force searches written here from the
//! definitions alone.

mod common;

use std::f64::consts::{E, PI, TAU};

use common::{epi2, pt, rng, uniform_set};
use rand::Rng;
use sponge::epigraph::{epi_join, epi_join_pair, epi_meet, epi_right_bound_witness, Profile};
use sponge::groups::{angle_join, angle_meet, check_antiH, ConeSpec1D};
use sponge::hyperbolic::{d_hyp, h_height, hyp_discriminator_bound, hyp_join, hyp_meet, hyp_meet_pair};
use sponge::inner_product::{ip_join, ip_meet};
use sponge::morphology::{morph, BoundaryPolicy, Field, MorphOp, MorphOptions, StructuringElement};
use sponge::oracle::brute_force_certified;
use sponge::{bounds_check, Extremum, Point, PointSet, Side, Sponge, SpongeSpec, DEFAULT_TOL};

fn set(rows: &[&[f64]]) -> PointSet {
    PointSet::from_rows(rows)
}

/// Minimizes `g` over the box by a grid scan followed by repeated zooms.
fn zoom_min(g: impl Fn(&[f64]) -> f64, lo: &[f64], hi: &[f64]) -> Vec<f64> {
    let n = lo.len();
    let (mut lo, mut hi) = (lo.to_vec(), hi.to_vec());
    let per: usize = if n == 1 { 400 } else { 60 };
    let mut best = lo.clone();
    for _ in 0..30 {
        let mut best_v = f64::INFINITY;
        for idx in 0..per.pow(n as u32) {
            let mut t = idx;
            let x: Vec<f64> = (0..n)
                .map(|i| {
                    let k = t % per;
                    t /= per;
                    lo[i] + (hi[i] - lo[i]) * k as f64 / (per - 1) as f64
                })
                .collect();
            let v = g(&x);
            if v < best_v {
                best_v = v;
                best = x;
            }
        }
        for i in 0..n {
            let w = (hi[i] - lo[i]) * 4.0 / (per - 1) as f64;
            lo[i] = best[i] - w;
            hi[i] = best[i] + w;
        }
    }
    best
}

fn close(a: &Point, b: &[f64], tol: f64) -> bool {
    a.coords().iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

#[test]
fn ip_meets_match_segment_minimization() {
    for (p, want_dim) in [(set(&[&[2.0, 0.0], &[0.0, 2.0]]), 2), (set(&[&[2.0, 0.0], &[2.0, 1.0]]), 2), (set(&[&[1.0, 1.0], &[2.0, 2.0], &[1.0, 2.0]]), 2)] {
        // min-norm over convex combinations, stick-breaking weights
        let n = p.len();
        let weights = |u: &[f64]| {
            let mut rest = 1.0;
            let mut lam = Vec::with_capacity(n);
            for v in u {
                lam.push(rest * v);
                rest *= 1.0 - v;
            }
            lam.push(rest);
            lam
        };
        let combo = |u: &[f64]| -> Vec<f64> { (0..want_dim).map(|i| p.iter().zip(weights(u)).map(|(q, l)| q[i] * l).sum()).collect() };
        let g = |u: &[f64]| combo(u).iter().map(|v| v * v).sum::<f64>();
        let u = zoom_min(g, &vec![0.0; n - 1], &vec![1.0; n - 1]);
        let u: Vec<f64> = u.iter().map(|v| v.clamp(0.0, 1.0)).collect();
        let want = combo(&u);
        let m = ip_meet(&p);
        assert!(close(&m, &want, 1e-3), "{m:?} vs {want:?}");
    }
}

#[test]
fn ip_joins_match_halfspace_grid_search() {
    // min |y| subject to y·p ≥ |p|² for every p, as a penalized grid search
    for p in [set(&[&[1.0, 0.0], &[0.0, 1.0]]), set(&[&[2.0, 0.0], &[0.0, 2.0]]), set(&[&[1.0, 0.5], &[0.2, 1.0], &[1.0, 1.0]])] {
        let g = |y: &[f64]| {
            let pen: f64 = p.iter().map(|q| (q.norm_sq() - y[0] * q[0] - y[1] * q[1]).max(0.0)).sum();
            (y[0] * y[0] + y[1] * y[1]).sqrt() + 1e6 * pen
        };
        let want = zoom_min(g, &[-4.0, -4.0], &[4.0, 4.0]);
        let j = ip_join(&p, DEFAULT_TOL).unwrap().unwrap();
        assert!(close(&j, &want, 1e-4), "{j:?} vs {want:?}");
    }
    assert_eq!(ip_join(&set(&[&[1.0, 0.0], &[-1.0, 0.0]]), DEFAULT_TOL).unwrap(), None);
}

#[test]
fn ip_join_agrees_with_grid_oracle_within_five_steps() {
    let mut r = rng(31);
    let mut checked = 0;
    while checked < 30 {
        let dim = 2 + checked % 2;
        let n = r.gen_range(1..=4);
        // right-bounded: all points in an open half-space
        let p = PointSet::new((0..n).map(|_| {
            let mut v: Vec<f64> = (0..dim).map(|_| r.gen_range(-1.0..1.0)).collect();
            v[0] = r.gen_range(0.5..1.5);
            Point::from_slice(&v)
        }).collect()).unwrap();
        let spec = SpongeSpec::inner_product(dim).unwrap();
        let j = ip_join(&p, DEFAULT_TOL).unwrap().unwrap();
        let b = brute_force_certified(&spec, &p, 0.01, Extremum::Join).unwrap().unwrap();
        assert!(j.max_abs_diff(&b) <= 0.05, "{p:?}: {j:?} vs {b:?}");
        checked += 1;
    }
}

#[test]
fn epigraph_pair_join_matches_one_dimensional_minimization() {
    let f = Profile::power(1.0, 2.0).unwrap();
    let t = zoom_min(|t| (t[0] * t[0]).max((1.0 - t[0]) * (1.0 - t[0])), &[0.0], &[1.0]);
    let want = [t[0], (t[0] * t[0]).max((1.0 - t[0]).powi(2))];
    let j = epi_join_pair(&f, &pt(&[0.0, 0.0]), &pt(&[1.0, 0.0]), DEFAULT_TOL).unwrap();
    assert!(close(&j, &want, 1e-6), "{j:?}");
    assert!(close(&j, &[0.5, 0.25], 1e-9));
    // symmetric pair: (x_h + f(|x_⊥|)) on the h axis
    let s = epi_join_pair(&f, &pt(&[-1.0, 0.0]), &pt(&[1.0, 0.0]), DEFAULT_TOL).unwrap();
    assert!(close(&s, &[0.0, 1.0], 1e-12));
}

#[test]
fn epigraph_set_join_and_meet_match_grid_search() {
    let f = Profile::power(1.0, 2.0).unwrap();
    let p = set(&[&[-1.0, 0.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]]);
    let env = |c: &[f64]| p.iter().map(|q| q.h() + (c[0] - q[0]).powi(2) + (c[1] - q[1]).powi(2)).fold(f64::NEG_INFINITY, f64::max);
    let c = zoom_min(env, &[-2.0, -2.0], &[2.0, 2.0]);
    let j = epi_join(&f, &p, DEFAULT_TOL).unwrap();
    assert!(close(&j, &[c[0], c[1], env(&c)], 1e-5), "{j:?}");
    assert!(close(&j, &[0.0, 0.0, 1.0], 1e-9));

    let spec3 = epi2(3);
    let mut r = rng(41);
    for _ in 0..20 {
        let p = uniform_set(&mut r, 4, 3, -2.0, 2.0);
        // highest left bound: maximize min_q (q_h − f(|c − q_⊥|))
        let low = |c: &[f64]| -p.iter().map(|q| q.h() - (c[0] - q[0]).powi(2) - (c[1] - q[1]).powi(2)).fold(f64::INFINITY, f64::min);
        let c = zoom_min(low, &[-2.0, -2.0], &[2.0, 2.0]);
        let m = epi_meet(&f, &p, DEFAULT_TOL).unwrap();
        assert!(bounds_check(&spec3, &p, &m, Side::Left).unwrap());
        assert!(m.h() >= -low(&c) - 1e-12 && m.h() <= -low(&c) + 1e-4, "{m:?} vs h {}", -low(&c));
        assert!((m.h() + low(m.perp())).abs() < 1e-9);
    }
    let m = epi_meet(&f, &set(&[&[0.0, 0.0], &[1.0, 0.0]]), DEFAULT_TOL).unwrap();
    assert!(close(&m, &[0.5, -0.25], 1e-9));
}

#[test]
fn epigraph_join_lies_in_the_span_of_p_and_h() {
    // P in the plane e₂ = 0.3 of a 4D space: the join keeps e₂ = 0.3
    let mut r = rng(42);
    for _ in 0..20 {
        let p = PointSet::new((0..4).map(|_| pt(&[r.gen_range(-2.0..2.0), 0.3, r.gen_range(-2.0..2.0), r.gen_range(-1.0..1.0)])).collect()).unwrap();
        let j = epi_join(&Profile::power(1.0, 2.0).unwrap(), &p, DEFAULT_TOL).unwrap();
        assert!((j[1] - 0.3).abs() < 1e-6, "{j:?}");
    }
}

#[test]
fn epigraph_witness_values() {
    let f = Profile::power(1.0, 2.0).unwrap();
    assert_eq!(epi_right_bound_witness(&f, &set(&[&[1.0, 0.0]])).unwrap().coords(), &[0.0, 2.0]);
    assert_eq!(epi_right_bound_witness(&f, &set(&[&[1.0, 0.0], &[2.0, -1.0]])).unwrap().coords(), &[0.0, 4.0]);
}

#[test]
fn hyperbolic_values_from_the_formulas() {
    let acosh = |x: f64| (x + (x * x - 1.0).sqrt()).ln();
    assert!((d_hyp(&pt(&[0.0, 1.0]), &pt(&[0.0, E])).unwrap() - 1.0).abs() < 1e-12);
    let want = acosh(1.0 + 1.0 / 2.0);
    assert!((d_hyp(&pt(&[0.0, 1.0]), &pt(&[1.0, 1.0])).unwrap() - want).abs() < 1e-12);
    assert!((want - 0.962424).abs() < 1e-6);
    assert!((h_height(&pt(&[3.0, E * E])).unwrap() - 2.0).abs() < 1e-12);
    for delta in [0.01, 0.1, 1.0] {
        assert!((hyp_discriminator_bound(delta).unwrap() - acosh(delta.exp())).abs() < 1e-12);
    }
}

#[test]
fn hyperbolic_pair_meet_and_join_match_grid_search() {
    let (x, y) = (pt(&[0.0, 1.0]), pt(&[1.0, 1.0]));
    // meet: the highest point inside both half disks
    let g = |c: &[f64]| -(1.0 - c[0] * c[0]).min(1.0 - (c[0] - 1.0).powi(2)).max(0.0).sqrt();
    let c = zoom_min(g, &[-1.0], &[2.0]);
    let m = hyp_meet_pair(&x, &y).unwrap();
    assert!(close(&m, &[c[0], -g(&c)], 1e-6), "{m:?}");
    assert!(close(&m, &[0.5, 0.866025], 1e-6));
    assert_eq!(hyp_meet(&set(&[&[0.0, 1.0], &[1.0, 1.0]]), DEFAULT_TOL).unwrap(), Some(m));
    assert_eq!(hyp_meet(&set(&[&[0.0, 1.0], &[2.0, 1.0]]), DEFAULT_TOL).unwrap(), None);
    // join: the lowest point whose half disk holds both
    let g = |c: &[f64]| (c[0] * c[0] + 1.0).max((c[0] - 1.0).powi(2) + 1.0).sqrt();
    let c = zoom_min(g, &[-1.0], &[2.0]);
    let j = hyp_join(&set(&[&[0.0, 1.0], &[1.0, 1.0]]), DEFAULT_TOL).unwrap();
    assert!(close(&j, &[c[0], g(&c)], 1e-6), "{j:?}");
    assert!(close(&j, &[0.5, 1.118034], 1e-6));
    let j = hyp_join(&set(&[&[0.0, 1.0], &[0.0, 2.0]]), DEFAULT_TOL).unwrap();
    assert_eq!(j.coords(), &[0.0, 2.0]);
}

#[test]
fn hyperbolic_joins_agree_with_grid_oracle_within_five_steps() {
    let mut r = rng(51);
    let spec = SpongeSpec::hyperbolic(2).unwrap();
    for _ in 0..20 {
        let p = PointSet::new((0..3).map(|_| pt(&[r.gen_range(-1.0..1.0), r.gen_range(0.2..1.5)])).collect()).unwrap();
        let j = hyp_join(&p, DEFAULT_TOL).unwrap();
        let b = brute_force_certified(&spec, &p, 0.01, Extremum::Join).unwrap().unwrap();
        assert!(j.max_abs_diff(&b) <= 0.05, "{p:?}: {j:?} vs {b:?}");
    }
}

#[test]
fn duality_meet_is_the_join_of_sampled_left_bounds() {
    // the grid left bounds Q of P: J(Q) approaches M(P) from below
    let f = Profile::power(1.0, 2.0).unwrap();
    let spec = epi2(2);
    let mut r = rng(61);
    for _ in 0..10 {
        let p = uniform_set(&mut r, 3, 2, -1.0, 1.0);
        let m = epi_meet(&f, &p, DEFAULT_TOL).unwrap();
        let step = 0.02;
        let mut q = Vec::new();
        for i in -150..=150 {
            for k in -300..=150 {
                let z = pt(&[i as f64 * step, k as f64 * step]);
                if bounds_check(&spec, &p, &z, Side::Left).unwrap() {
                    q.push(z);
                }
            }
        }
        let jq = epi_join(&f, &PointSet::new(q).unwrap(), DEFAULT_TOL).unwrap();
        assert!(m.max_abs_diff(&jq) <= 5.0 * step, "{m:?} vs {jq:?}");
        assert!(jq.h() <= m.h() + 1e-9);
    }
}

/// Exhaustive candidate check: the element of P that every other element
/// is (weakly) above (meet) or below (join) along the cone.
fn angle_candidates(kappa: f64, p: &[f64], meet: bool) -> Vec<f64> {
    let le = |a: f64, b: f64| (b - a).rem_euclid(TAU) < kappa;
    p.iter().copied().filter(|&c| p.iter().all(|&q| if meet { le(c, q) } else { le(q, c) })).collect()
}

#[test]
fn angle_extrema_match_exhaustive_candidates() {
    let spec = ConeSpec1D::angle(PI, TAU).unwrap();
    assert_eq!(angle_meet(&spec, &[0.2, 6.1]).unwrap(), Some(6.1));
    assert_eq!(angle_join(&spec, &[0.2, 6.1]).unwrap(), Some(0.2));
    assert_eq!(angle_meet(&spec, &[0.0, 2.5, 4.5]).unwrap(), None);
    let mut r = rng(71);
    for _ in 0..500 {
        let c = r.gen_range(0.0..TAU);
        let n = r.gen_range(1..5);
        let p: Vec<f64> = (0..n).map(|_| (c + r.gen_range(0.0..4.0)).rem_euclid(TAU)).collect();
        let m = angle_candidates(PI, &p, true);
        let j = angle_candidates(PI, &p, false);
        assert_eq!(angle_meet(&spec, &p).unwrap(), m.first().copied(), "{p:?}");
        assert_eq!(angle_join(&spec, &p).unwrap(), j.first().copied(), "{p:?}");
    }
}

#[test]
fn product_join_of_two_angles() {
    let a = SpongeSpec::angle(0.5, 1.0).unwrap();
    let spec = SpongeSpec::product(vec![a.clone(), a]).unwrap();
    let j = spec.join(&set(&[&[0.1, 0.2], &[0.3, 0.1]]), DEFAULT_TOL).unwrap().unwrap();
    assert!(close(&j, &[0.3, 0.2], 1e-12));
}

#[test]
fn anti_h_witness_matches_a_search() {
    // q, r in [0, κ) with q + r ∈ Lℤ \ {0}
    let (kappa, l) = (0.7, 1.0);
    let found = (1..70).flat_map(|i| (1..70).map(move |j| (i as f64 / 100.0, j as f64 / 100.0))).find(|&(q, r)| q < kappa && r < kappa && ((q + r) / l - 1.0).abs() < 1e-12);
    assert!(found.is_some());
    let rep = check_antiH(&ConeSpec1D { kappa, period: Some(l) });
    assert!(!rep.passed());
    let w = &rep.first_violation("antiH").unwrap().witness;
    let (q, r) = (w[0][0], w[1][0]);
    assert!(q < kappa && r < kappa && ((q + r) / l).fract().abs() < 1e-12);
    assert!(check_antiH(&ConeSpec1D { kappa: 0.5, period: Some(2.0) }).passed());
}

#[test]
fn morphology_erode_uses_the_min_norm_meet() {
    let field = Field::new(3, 1, 2, vec![2.0, 0.0, 0.0, 2.0, 2.0, 0.0]).unwrap();
    let se = StructuringElement::new(vec![(-1, 0), (0, 0), (1, 0)]).unwrap();
    let opts = MorphOptions { boundary: BoundaryPolicy::Clamp, ..MorphOptions::default() };
    let out = morph(&field, &se, &SpongeSpec::inner_product(2).unwrap(), MorphOp::Erode, &opts).unwrap();
    let g = |t: &[f64]| (2.0 - 2.0 * t[0]).powi(2) + (2.0 * t[0]).powi(2);
    let t = zoom_min(g, &[0.0], &[1.0]);
    assert!(close(&out.field.pixel(1, 0), &[2.0 - 2.0 * t[0], 2.0 * t[0]], 1e-6));
}
