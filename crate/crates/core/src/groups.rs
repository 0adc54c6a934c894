//! Oriented additive groups given by a half-open positive cone, their
//! quotients by subgroups, and the angle sponge on `ℝ / Lℤ`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SpongeError};
use crate::point::Point;
use crate::report::AxiomReport;

const SEED: u64 = 0x0c0e_5eed;

/// Half-open cone `C = [0, κ)` on the line, optionally taken modulo `period`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConeSpec1D {
    pub kappa: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period: Option<f64>,
}

impl ConeSpec1D {
    pub fn new(kappa: f64, period: Option<f64>) -> Result<Self> {
        let s = ConeSpec1D { kappa, period };
        s.validate()?;
        Ok(s)
    }

    pub fn line(kappa: f64) -> Result<Self> {
        Self::new(kappa, None)
    }

    pub fn angle(kappa: f64, period: f64) -> Result<Self> {
        Self::new(kappa, Some(period))
    }

    /// `κ > 0`; with a period, `L` finite and positive and `2κ ≤ L`.
    pub fn validate(&self) -> Result<()> {
        if !(self.kappa > 0.0) {
            return Err(SpongeError::InvalidParameter(format!("kappa must be > 0, got {}", self.kappa)));
        }
        if let Some(l) = self.period {
            if !(l.is_finite() && l > 0.0) {
                return Err(SpongeError::InvalidParameter(format!("period must be finite and > 0, got {l}")));
            }
            if 2.0 * self.kappa > l {
                return Err(SpongeError::InvalidParameter(format!(
                    "kappa = {} exceeds period/2 = {}; the quotient relation is not antisymmetric",
                    self.kappa,
                    l / 2.0
                )));
            }
        }
        Ok(())
    }

    fn period_or_err(&self) -> Result<f64> {
        self.period.ok_or_else(|| SpongeError::InvalidParameter("angle operations need a period".into()))
    }

    #[inline]
    pub fn in_cone(&self, t: f64) -> bool {
        (0.0..self.kappa).contains(&t)
    }
}

/// Canonical representative of `x + Lℤ` in `[0, L)`.
pub fn canonical_angle(x: f64, period: f64) -> f64 {
    let r = x.rem_euclid(period);
    if r >= period {
        0.0
    } else {
        r
    }
}

/// A residue class of `ℝ / Lℤ`, stored by its canonical representative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Angle {
    value: f64,
    period: f64,
}

impl Angle {
    pub fn new(x: f64, period: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(SpongeError::NonFinite);
        }
        if !(period.is_finite() && period > 0.0) {
            return Err(SpongeError::InvalidParameter(format!("period must be finite and > 0, got {period}")));
        }
        Ok(Angle { value: canonical_angle(x, period), period })
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn neg(&self) -> Angle {
        Angle { value: canonical_angle(-self.value, self.period), period: self.period }
    }
}

/// `x ≤ y < x + κ`.
pub fn line_leq(spec: &ConeSpec1D, x: f64, y: f64) -> bool {
    x <= y && y - x < spec.kappa
}

/// `((b − a) mod L) ∈ [0, κ)`. Inputs are reduced mod `L` first.
pub fn angle_leq(spec: &ConeSpec1D, a: f64, b: f64) -> Result<bool> {
    let l = spec.period_or_err()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(SpongeError::NonFinite);
    }
    Ok(angle_leq_raw(spec.kappa, l, a, b))
}

#[inline]
pub(crate) fn angle_leq_raw(kappa: f64, l: f64, a: f64, b: f64) -> bool {
    let d = canonical_angle(canonical_angle(b, l) - canonical_angle(a, l), l);
    d < kappa
}

fn angle_extremum(spec: &ConeSpec1D, p: &[f64], meet: bool) -> Result<Option<f64>> {
    spec.validate()?;
    let l = spec.period_or_err()?;
    if p.is_empty() {
        return Err(SpongeError::Empty);
    }
    if p.iter().any(|v| !v.is_finite()) {
        return Err(SpongeError::NonFinite);
    }
    let k = spec.kappa;
    let found = p.iter().find(|&&m| {
        p.iter().all(|&q| if meet { angle_leq_raw(k, l, m, q) } else { angle_leq_raw(k, l, q, m) })
    });
    Ok(found.map(|&m| canonical_angle(m, l)))
}

/// The element of `P` below all others, or `None` if `P` has no left bound.
///
/// Any left bound of `P` lies within `κ` before every element, so it can
/// be pushed up to the first element of `P` along the circle; that element
/// is then the meet.
pub fn angle_meet(spec: &ConeSpec1D, p: &[f64]) -> Result<Option<f64>> {
    angle_extremum(spec, p, true)
}

/// The element of `P` above all others, or `None` if `P` has no right bound.
pub fn angle_join(spec: &ConeSpec1D, p: &[f64]) -> Result<Option<f64>> {
    angle_extremum(spec, p, false)
}

fn scalar(v: f64) -> Point {
    Point::from_slice(&[v])
}

fn probe_values(radius: f64, samples: usize) -> Vec<f64> {
    let mut v = vec![0.0, 0.1, 0.25, 0.3, 0.5, 0.6, 0.75, 1.0, 2.0, 1e-9];
    let n = samples.max(1);
    v.extend((0..=n).map(|k| -radius + 2.0 * radius * k as f64 / n as f64));
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    v.extend((0..n).map(|_| rng.gen_range(-radius..radius)));
    let neg: Vec<f64> = v.iter().map(|x| -x).collect();
    v.extend(neg);
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

/// A pair `a, b ∈ C` with `a + b ∉ C`, found on samples.
pub fn cone_additivity_witness(cone: impl Fn(f64) -> bool, samples: usize) -> Option<(f64, f64)> {
    let inside: Vec<f64> = probe_values(4.0, samples).into_iter().filter(|&t| cone(t)).collect();
    let stride = (inside.len() / 200).max(1);
    let picked: Vec<f64> = inside.iter().step_by(stride).copied().collect();
    picked.iter().flat_map(|&a| picked.iter().map(move |&b| (a, b))).find(|&(a, b)| !cone(a + b))
}

/// Checks `0 ∈ C` and `C ∩ −C = {0}` on sampled values of `[−4, 4]`.
/// Whether `C + C ⊆ C` (i.e. the orientation is transitive) is reported as
/// a note, not a violation.
pub fn cone_axioms_check(cone: impl Fn(f64) -> bool, samples: usize) -> AxiomReport {
    let mut rep = AxiomReport::new();
    if !cone(0.0) {
        rep.violate("zero in cone", vec![scalar(0.0)], "0 is not in C, so the relation is not reflexive");
    }
    if let Some(t) = probe_values(4.0, samples).into_iter().find(|&t| t != 0.0 && cone(t) && cone(-t)) {
        rep.violate("cone antisymmetry", vec![scalar(t), scalar(-t)], format!("both {t} and {} are in C", -t));
    }
    match cone_additivity_witness(&cone, samples) {
        Some((a, b)) => rep.note(format!("C + C is not contained in C: {a} + {b} = {} (not transitive)", a + b)),
        None => rep.note("C + C is contained in C on samples (transitive)"),
    }
    rep
}

/// One coordinate of a product subgroup of `ℝⁿ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AxisGroup {
    Zero,
    Periodic(f64),
    Free,
}

/// Subgroup `H` of `ℝⁿ`: a coordinatewise product, or a line `ℝ·d`.
#[derive(Debug, Clone, PartialEq)]
pub enum Subgroup {
    Axes(Vec<AxisGroup>),
    Line(Vec<f64>),
}

/// `ℝⁿ` oriented by the box cone `Π [0, κᵢ)`, together with a subgroup `H`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxQuotient {
    pub kappa: Vec<f64>,
    pub subgroup: Subgroup,
}

impl BoxQuotient {
    pub fn new(kappa: Vec<f64>, subgroup: Subgroup) -> Result<Self> {
        if kappa.is_empty() || kappa.iter().any(|k| !(*k > 0.0)) {
            return Err(SpongeError::InvalidParameter("box cone sides must be > 0".into()));
        }
        let n = match &subgroup {
            Subgroup::Axes(a) => a.len(),
            Subgroup::Line(d) => d.len(),
        };
        if n != kappa.len() {
            return Err(SpongeError::DimensionMismatch { expected: kappa.len(), got: n });
        }
        if let Subgroup::Line(d) = &subgroup {
            if d.iter().all(|v| *v == 0.0) {
                return Err(SpongeError::InvalidParameter("line direction must be nonzero".into()));
            }
        }
        Ok(BoxQuotient { kappa, subgroup })
    }

    /// The line cone `[0, κ)` modulo `Lℤ`.
    pub fn from_cone(spec: &ConeSpec1D) -> Result<Self> {
        let l = spec.period_or_err()?;
        Self::new(vec![spec.kappa], Subgroup::Axes(vec![AxisGroup::Periodic(l)]))
    }

    pub fn dim(&self) -> usize {
        self.kappa.len()
    }

    pub fn in_cone(&self, x: &[f64]) -> bool {
        x.iter().zip(&self.kappa).all(|(v, k)| (0.0..*k).contains(v))
    }

    pub fn in_subgroup(&self, x: &[f64]) -> bool {
        match &self.subgroup {
            Subgroup::Axes(a) => x.iter().zip(a).all(|(v, g)| match g {
                AxisGroup::Zero => *v == 0.0,
                AxisGroup::Periodic(l) => (v / l - (v / l).round()).abs() <= 1e-12,
                AxisGroup::Free => true,
            }),
            Subgroup::Line(d) => {
                let dd: f64 = d.iter().map(|v| v * v).sum();
                let t = x.iter().zip(d).map(|(a, b)| a * b).sum::<f64>() / dd;
                x.iter().zip(d).all(|(v, di)| (v - t * di).abs() <= 1e-12)
            }
        }
    }

    /// Some `h ∈ H` with `s − h ∈ C` for every sample `s`, if one exists.
    pub fn common_shift(&self, s: &[Vec<f64>]) -> Option<Vec<f64>> {
        s.first()?;
        let fits = |h: &[f64]| s.iter().all(|x| {
            let d: Vec<f64> = x.iter().zip(h).map(|(a, b)| a - b).collect();
            self.in_cone(&d)
        });
        let n = self.dim();
        let h = match &self.subgroup {
            Subgroup::Axes(axes) => {
                let mut h = vec![0.0; n];
                for i in 0..n {
                    let lo = s.iter().map(|x| x[i]).fold(f64::NEG_INFINITY, f64::max) - self.kappa[i];
                    let hi = s.iter().map(|x| x[i]).fold(f64::INFINITY, f64::min);
                    h[i] = match axes[i] {
                        AxisGroup::Zero => 0.0,
                        AxisGroup::Free => hi,
                        AxisGroup::Periodic(l) => {
                            let k = (hi / l).floor();
                            if k * l > lo {
                                k * l
                            } else {
                                (k + 1.0) * l
                            }
                        }
                    };
                }
                h
            }
            Subgroup::Line(d) => {
                let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
                for x in s {
                    for i in 0..n {
                        if d[i] == 0.0 {
                            continue;
                        }
                        let (a, b) = ((x[i] - self.kappa[i]) / d[i], x[i] / d[i]);
                        let (a, b) = if d[i] > 0.0 { (a, b) } else { (b, a) };
                        lo = lo.max(a);
                        hi = hi.min(b);
                    }
                }
                if lo > hi {
                    return None;
                }
                let t = if d.iter().all(|v| *v >= 0.0) { hi } else { 0.5 * (lo + hi) };
                d.iter().map(|di| t * di).collect()
            }
        };
        fits(&h).then_some(h)
    }

    /// Whether `x ∈ C + H`.
    pub fn in_cone_plus_subgroup(&self, x: &[f64]) -> bool {
        self.common_shift(&[x.to_vec()]).is_some()
    }

    /// `q, r ∈ C ∧ q + r ∈ H ⟹ q, r ∈ H`.
    ///
    /// Exact for product subgroups (a periodic coordinate fails iff
    /// `2κ > L`); a grid search for lines.
    pub fn check_anti_h(&self) -> AxiomReport {
        let mut rep = AxiomReport::new();
        let n = self.dim();
        let pt = |v: &[f64]| Point::from_slice(v);
        match &self.subgroup {
            Subgroup::Axes(axes) => {
                rep.note("analytic verdict: holds iff 2*kappa <= L on every periodic coordinate");
                for (i, g) in axes.iter().enumerate() {
                    if let AxisGroup::Periodic(l) = *g {
                        let k = self.kappa[i];
                        if 2.0 * k <= l {
                            continue;
                        }
                        let top = (10.0 * k / l).ceil() as i64 - 1;
                        let pair = (1..=top)
                            .rev()
                            .map(|j| j as f64 * l / 10.0)
                            .map(|q| (q, l - q))
                            .find(|&(q, r)| q < k && (0.0..k).contains(&r) && r > 0.0)
                            .unwrap_or((l / 2.0, l / 2.0));
                        let mut q = vec![0.0; n];
                        let mut r = vec![0.0; n];
                        q[i] = pair.0;
                        r[i] = pair.1;
                        rep.violate(
                            "antiH",
                            vec![pt(&q), pt(&r)],
                            format!("q + r = {} lies in H but q, r do not", pair.0 + pair.1),
                        );
                    }
                }
            }
            Subgroup::Line(d) => {
                rep.note("sampled: q on a grid of step kappa/5, r = t*d - q with t solved per q");
                let m = 5usize;
                let total = (m + 1).pow(n as u32);
                'outer: for idx in 0..total {
                    let mut rem = idx;
                    let q: Vec<f64> = (0..n)
                        .map(|i| {
                            let j = rem % (m + 1);
                            rem /= m + 1;
                            self.kappa[i] * j as f64 / m as f64
                        })
                        .collect();
                    if !self.in_cone(&q) {
                        continue;
                    }
                    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
                    for i in 0..n {
                        if d[i] == 0.0 {
                            if !(0.0..self.kappa[i]).contains(&-q[i]) {
                                continue 'outer;
                            }
                            continue;
                        }
                        let (a, b) = (q[i] / d[i], (q[i] + self.kappa[i]) / d[i]);
                        let (a, b) = if d[i] > 0.0 { (a, b) } else { (b, a) };
                        lo = lo.max(a);
                        hi = hi.min(b);
                    }
                    for t in [lo, 0.5 * (lo + hi)] {
                        if !(lo <= hi) || !t.is_finite() {
                            continue;
                        }
                        let r: Vec<f64> = (0..n).map(|i| t * d[i] - q[i]).collect();
                        if self.in_cone(&r) && !(self.in_subgroup(&q) && self.in_subgroup(&r)) {
                            rep.violate("antiH", vec![pt(&q), pt(&r)], format!("q + r = {t} * d lies in H"));
                            break 'outer;
                        }
                    }
                }
            }
        }
        rep
    }

    /// `∀z ∃h ∈ H: R(z) ∩ (C + H) ⊆ R(h)` with `R(x) = x + C`, checked on
    /// sampled `z` and, for each, a `res`-per-axis grid of `R(z)`.
    pub fn check_quotient_postulate(&self, samples: usize, res: usize) -> AxiomReport {
        let mut rep = AxiomReport::new();
        let n = self.dim();
        let res = res.max(2);
        rep.note(format!("sampled: {samples} random z plus a 0.25-grid on [-1, 1]^n; {res} points per axis in R(z)"));
        let mut zs: Vec<Vec<f64>> = Vec::new();
        let g = 9usize;
        for idx in 0..g.pow(n as u32) {
            let mut rem = idx;
            zs.push(
                (0..n)
                    .map(|_| {
                        let j = rem % g;
                        rem /= g;
                        -1.0 + 0.25 * j as f64
                    })
                    .collect(),
            );
        }
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x9e37);
        for _ in 0..samples {
            zs.push((0..n).map(|_| rng.gen_range(-2.0..2.0)).collect());
        }
        for z in zs {
            let mut hits = Vec::new();
            for idx in 0..res.pow(n as u32) {
                let mut rem = idx;
                let s: Vec<f64> = (0..n)
                    .map(|i| {
                        let j = rem % res;
                        rem /= res;
                        z[i] + self.kappa[i] * j as f64 / res as f64
                    })
                    .collect();
                if self.in_cone_plus_subgroup(&s) {
                    hits.push(s);
                }
            }
            if !hits.is_empty() && self.common_shift(&hits).is_none() {
                rep.violate(
                    "quotient postulate",
                    vec![Point::from_slice(&z)],
                    format!("no h in H has R(z) ∩ (C + H) inside R(h) ({} sampled points)", hits.len()),
                );
                break;
            }
        }
        rep
    }
}

/// Whether the quotient `ℝ / Lℤ` by the cone `[0, κ)` is an oriented set.
#[allow(non_snake_case)]
pub fn check_antiH(spec: &ConeSpec1D) -> AxiomReport {
    match BoxQuotient::from_cone(spec) {
        Ok(q) => q.check_anti_h(),
        Err(e) => precondition_failure(e),
    }
}

/// Sampled check of the quotient postulate for `ℝ / Lℤ`.
pub fn check_quotient_postulate(spec: &ConeSpec1D, samples: usize) -> AxiomReport {
    match BoxQuotient::from_cone(spec) {
        Ok(q) => q.check_quotient_postulate(samples, 64),
        Err(e) => precondition_failure(e),
    }
}

fn precondition_failure(e: SpongeError) -> AxiomReport {
    let mut rep = AxiomReport::new();
    rep.violate("precondition", vec![], e.to_string());
    rep
}

/// Refining the line orientation given by `base` with a cone predicate `C`:
/// checks `0 ∈ C`, `0 ⪯ c` for sampled `c ∈ C`, and
/// `y ∈ C ∧ 0 ⪯ x ⪯ y ⟹ x ∈ C ∧ y − x ∈ C` on sampled pairs.
///
/// `base.kappa` may be infinite for the usual order on `ℝ`.
pub fn check_refinement(base: &ConeSpec1D, cone: impl Fn(f64) -> bool, samples: usize) -> AxiomReport {
    let mut rep = AxiomReport::new();
    if base.period.is_some() || !(base.kappa > 0.0) {
        return precondition_failure(SpongeError::InvalidParameter("base must be a line cone with kappa > 0".into()));
    }
    let radius = if base.kappa.is_finite() { 2.0 * base.kappa } else { 4.0 };
    rep.note(format!("sampled on [-{radius}, {radius}]"));
    let vals = probe_values(radius, samples);
    if !cone(0.0) {
        rep.violate("zero in cone", vec![scalar(0.0)], "0 is not in C");
    }
    if let Some(&c) = vals.iter().find(|&&c| cone(c) && !line_leq(base, 0.0, c)) {
        rep.violate("cone above zero", vec![scalar(c)], format!("{c} is in C but 0 ⪯ {c} fails in the base"));
    }
    let ys: Vec<f64> = vals.iter().copied().filter(|&y| cone(y) && line_leq(base, 0.0, y)).collect();
    'search: for &y in &ys {
        for &x in &vals {
            if line_leq(base, 0.0, x) && line_leq(base, x, y) && !(cone(x) && cone(y - x)) {
                rep.violate(
                    "refinement",
                    vec![scalar(x), scalar(y)],
                    format!("y = {y} in C and 0 ⪯ x = {x} ⪯ y, but x or y − x is not in C"),
                );
                break 'search;
            }
        }
    }
    rep
}
