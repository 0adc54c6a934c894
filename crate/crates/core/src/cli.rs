//! Command-line front end. Exit codes: 0 ok, 1 input error, 2 unbounded,
//! 3 validation failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::axioms::{check_absorption, check_orientation, check_part_preservation};
use crate::epigraph::validate_profile;
use crate::error::{Result, SpongeError};
use crate::groups::{check_antiH, check_quotient_postulate, cone_axioms_check, ConeSpec1D};
use crate::io::{format_point, format_sig12, read_field, read_json, read_points_csv, write_field};
use crate::morphology::{morph, BoundaryPolicy, MorphOp, MorphOptions, StructuringElement, UnboundedPolicy};
use crate::oracle::certified_grid;
use crate::oracle::brute_force_extremum;
use crate::point::{Point, PointSet};
use crate::report::AxiomReport;
use crate::spec::{Extremum, Family, Sponge, SpongeSpec, DEFAULT_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_UNBOUNDED: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "sponge", version, about = "Joins, meets and morphology in non-transitive sponges")]
struct Cli {
    /// Solver tolerance.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct SpecArg {
    /// Sponge spec JSON file.
    #[arg(long)]
    spec: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Join of the points in a CSV file.
    Join {
        #[command(flatten)]
        spec: SpecArg,
        points: PathBuf,
    },
    /// Meet of the points in a CSV file.
    Meet {
        #[command(flatten)]
        spec: SpecArg,
        points: PathBuf,
    },
    /// Validation suite for a family (profile checks, quotient conditions, sampled axioms).
    Validate {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
    /// Morphological filter of a field file.
    Morph {
        #[command(flatten)]
        spec: SpecArg,
        /// Structuring element JSON file.
        #[arg(long)]
        se: PathBuf,
        #[arg(long, value_enum)]
        op: OpArg,
        #[arg(long, value_enum, default_value_t = BoundaryArg::Shrink)]
        boundary: BoundaryArg,
        /// Default: passthrough for angle families, error otherwise.
        #[arg(long, value_enum)]
        on_unbounded: Option<UnboundedArg>,
        input: PathBuf,
        output: PathBuf,
    },
    /// Boundary samples of the left and right cones of a point, as CSV.
    Cones {
        #[command(flatten)]
        spec: SpecArg,
        point: PathBuf,
        #[arg(long, default_value_t = 64)]
        resolution: usize,
    },
    /// Orientation, absorption and part-preservation checks on a point set.
    Axioms {
        #[command(flatten)]
        spec: SpecArg,
        points: PathBuf,
        /// Optional `y` for part preservation, comma separated.
        #[arg(long)]
        y: Option<String>,
    },
    /// Compares the exact solver with the brute-force grid oracle.
    Oracle {
        #[command(flatten)]
        spec: SpecArg,
        points: PathBuf,
        #[arg(long, default_value_t = 0.01)]
        grid_step: f64,
        #[arg(long, value_enum, default_value_t = SideArg::Join)]
        side: SideArg,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OpArg {
    Dilate,
    Erode,
    Open,
    Close,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum BoundaryArg {
    Clamp,
    Shrink,
    Error,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum UnboundedArg {
    Error,
    Passthrough,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SideArg {
    Join,
    Meet,
}

enum Outcome {
    Ok,
    Unbounded,
    Failed,
}

/// Runs the CLI with `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(Outcome::Ok) => EXIT_OK,
        Ok(Outcome::Unbounded) => EXIT_UNBOUNDED,
        Ok(Outcome::Failed) => EXIT_VALIDATION,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn load_spec(a: &SpecArg) -> Result<SpongeSpec> {
    SpongeSpec::from_json(&std::fs::read_to_string(&a.spec)?)
}

fn io_err(e: std::io::Error) -> SpongeError {
    SpongeError::Io(e.to_string())
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<Outcome> {
    if !(cli.tol > 0.0) {
        return Err(SpongeError::InvalidParameter("--tol must be > 0".into()));
    }
    match &cli.cmd {
        Cmd::Join { spec, points } | Cmd::Meet { spec, points } => {
            let s = load_spec(spec)?;
            let p = read_points_csv(points)?;
            let side = if matches!(cli.cmd, Cmd::Join { .. }) { Extremum::Join } else { Extremum::Meet };
            match s.extremum(&p, cli.tol, side) {
                Ok(Some(x)) => writeln!(out, "{}", format_point(&x)).map_err(io_err)?,
                Ok(None) | Err(SpongeError::BoundaryAmbiguous(_)) => {
                    writeln!(out, "UNBOUNDED").map_err(io_err)?;
                    return Ok(Outcome::Unbounded);
                }
                Err(e) => return Err(e),
            }
            Ok(Outcome::Ok)
        }
        Cmd::Validate { spec, samples } => {
            let text = std::fs::read_to_string(&spec.spec)?;
            let rep = validate_text(&text, *samples, cli.seed)?;
            write!(out, "{rep}").map_err(io_err)?;
            Ok(if rep.passed() { Outcome::Ok } else { Outcome::Failed })
        }
        Cmd::Morph { spec, se, op, boundary, on_unbounded, input, output } => {
            let s = load_spec(spec)?;
            let se: StructuringElement = read_json(se)?;
            let se = StructuringElement::new(se.offsets)?;
            let field = read_field(input)?;
            let opts = MorphOptions {
                boundary: match boundary {
                    BoundaryArg::Clamp => BoundaryPolicy::Clamp,
                    BoundaryArg::Shrink => BoundaryPolicy::Shrink,
                    BoundaryArg::Error => BoundaryPolicy::Error,
                },
                unbounded: on_unbounded.map(|u| match u {
                    UnboundedArg::Error => UnboundedPolicy::Error,
                    UnboundedArg::Passthrough => UnboundedPolicy::Passthrough,
                }),
                tol: cli.tol,
            };
            let op = match op {
                OpArg::Dilate => MorphOp::Dilate,
                OpArg::Erode => MorphOp::Erode,
                OpArg::Open => MorphOp::Open,
                OpArg::Close => MorphOp::Close,
            };
            let t0 = Instant::now();
            let res = match morph(&field, &se, &s, op, &opts) {
                Ok(r) => r,
                Err(e @ SpongeError::WindowUnbounded { .. }) => {
                    writeln!(out, "UNBOUNDED: {e}").map_err(io_err)?;
                    return Ok(Outcome::Unbounded);
                }
                Err(e) => return Err(e),
            };
            write_field(output, &res.field)?;
            if !se.contains_origin() {
                writeln!(out, "warning: structuring element does not contain (0, 0)").map_err(io_err)?;
            }
            writeln!(
                out,
                "{op:?} {}x{} in {:.3} s; unbounded pixels passed through: {}",
                field.width(),
                field.height(),
                t0.elapsed().as_secs_f64(),
                res.unbounded_pixels
            )
            .map_err(io_err)?;
            Ok(Outcome::Ok)
        }
        Cmd::Cones { spec, point, resolution } => {
            let s = load_spec(spec)?;
            let p = read_points_csv(point)?;
            let x = &p.points()[0];
            s.check_point(x)?;
            for (kind, pts) in cone_samples(&s, x, (*resolution).max(4))? {
                if kind == RIGHT_EVERYWHERE {
                    writeln!(out, "{kind}").map_err(io_err)?;
                }
                for q in pts {
                    let row: Vec<String> = q.iter().map(|v| format_sig12(*v)).collect();
                    writeln!(out, "{kind},{}", row.join(",")).map_err(io_err)?;
                }
            }
            Ok(Outcome::Ok)
        }
        Cmd::Axioms { spec, points, y } => {
            let s = load_spec(spec)?;
            let p = read_points_csv(points)?;
            s.check_set(&p)?;
            let mut rep = check_orientation(&s, &p);
            match check_absorption(&s, &p) {
                Ok(r) => rep.merge(r),
                Err(SpongeError::JoinUnavailable) => rep.note("P has no join; absorption skipped"),
                Err(e) => return Err(e),
            }
            if let Some(y) = y {
                let coords = y
                    .split(',')
                    .map(|t| t.trim().parse::<f64>().map_err(|_| SpongeError::Parse(format!("bad --y value {t:?}"))))
                    .collect::<Result<Vec<f64>>>()?;
                let y = Point::new(coords)?;
                s.check_point(&y)?;
                rep.merge(check_part_preservation(&s, &p, &y));
            }
            write!(out, "{rep}").map_err(io_err)?;
            Ok(if rep.passed() { Outcome::Ok } else { Outcome::Failed })
        }
        Cmd::Oracle { spec, points, grid_step, side } => {
            let s = load_spec(spec)?;
            let p = read_points_csv(points)?;
            let side = match side {
                SideArg::Join => Extremum::Join,
                SideArg::Meet => Extremum::Meet,
            };
            let exact = match s.extremum(&p, cli.tol, side) {
                Ok(x) => x,
                Err(SpongeError::BoundaryAmbiguous(_)) => None,
                Err(e) => return Err(e),
            };
            let brute = match certified_grid(&s, &p, side, *grid_step)? {
                Some(g) => brute_force_extremum(&s, &p, &g, side)?,
                None => None,
            };
            let show = |x: &Option<Point>| x.as_ref().map_or("UNBOUNDED".to_string(), format_point);
            writeln!(out, "exact: {}", show(&exact)).map_err(io_err)?;
            writeln!(out, "oracle: {}", show(&brute)).map_err(io_err)?;
            let agree = match (&exact, &brute) {
                (Some(a), Some(b)) => {
                    let d = a.max_abs_diff(b);
                    writeln!(out, "max difference: {}", format_sig12(d)).map_err(io_err)?;
                    d <= 5.0 * grid_step
                }
                (None, None) => true,
                _ => false,
            };
            writeln!(out, "{}", if agree { "AGREE" } else { "DISAGREE" }).map_err(io_err)?;
            Ok(if agree { Outcome::Ok } else { Outcome::Failed })
        }
    }
}

/// Family validation suite. Accepts a sponge spec or a bare cone spec
/// `{"kappa": .., "period": ..}`; parameters are not pre-validated so that
/// rejected profiles and cones produce a failing report instead of an
/// input error.
pub fn validate_text(text: &str, samples: usize, seed: u64) -> Result<AxiomReport> {
    if let Ok(spec) = serde_json::from_str::<SpongeSpec>(text) {
        return validate_spec(&spec, samples, seed);
    }
    let cone: ConeSpec1D = serde_json::from_str(text).map_err(|e| SpongeError::Parse(e.to_string()))?;
    Ok(validate_cone(&cone, samples))
}

fn validate_cone(cone: &ConeSpec1D, samples: usize) -> AxiomReport {
    let k = cone.kappa;
    let mut rep = cone_axioms_check(|t| (0.0..k).contains(&t), samples.min(500));
    if cone.period.is_some() {
        rep.merge(check_antiH(cone));
        rep.merge(check_quotient_postulate(cone, samples.min(500)));
    }
    rep
}

fn validate_spec(spec: &SpongeSpec, samples: usize, seed: u64) -> Result<AxiomReport> {
    match &spec.family {
        Family::Epigraph { profile } => {
            let mut rep = validate_profile(profile, spec.dim, samples);
            if rep.passed() {
                rep.merge(sampled_axioms(spec, seed)?);
            }
            Ok(rep)
        }
        Family::Angle { kappa, period } => {
            let mut rep = validate_cone(&ConeSpec1D { kappa: *kappa, period: Some(*period) }, samples);
            if rep.passed() {
                rep.merge(sampled_axioms(spec, seed)?);
            }
            Ok(rep)
        }
        Family::Product { components } => {
            let mut rep = AxiomReport::new();
            for c in components {
                rep.merge(validate_spec(c, samples, seed)?);
            }
            if spec.validate().is_ok() && rep.passed() {
                rep.merge(sampled_axioms(spec, seed)?);
            }
            Ok(rep)
        }
        Family::InnerProduct | Family::Hyperbolic => {
            spec.validate()?;
            sampled_axioms(spec, seed)
        }
    }
}

fn random_point(spec: &SpongeSpec, rng: &mut ChaCha8Rng) -> Point {
    let mut v: Vec<f64> = Vec::with_capacity(spec.dim);
    match &spec.family {
        Family::Product { components } => {
            for c in components {
                v.extend(random_point(c, rng).into_vec());
            }
        }
        Family::Angle { period, .. } => v.push(rng.gen_range(0.0..*period)),
        Family::Hyperbolic => {
            v.extend((1..spec.dim).map(|_| rng.gen_range(-1.0..1.0)));
            v.push(rng.gen_range(0.2..2.0));
        }
        _ => v.extend((0..spec.dim).map(|_| rng.gen_range(-2.0..2.0))),
    }
    Point::from_slice(&v)
}

fn sampled_axioms(spec: &SpongeSpec, seed: u64) -> Result<AxiomReport> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample = PointSet::new((0..24).map(|_| random_point(spec, &mut rng)).collect())?;
    let mut rep = check_orientation(spec, &sample);
    let mut checked = 0;
    for _ in 0..60 {
        let p = PointSet::new((0..3).map(|_| random_point(spec, &mut rng)).collect())?;
        match check_absorption(spec, &p) {
            Ok(r) => {
                checked += 1;
                rep.merge(r);
            }
            Err(SpongeError::JoinUnavailable) | Err(SpongeError::BoundaryAmbiguous(_)) => {}
            Err(e) => return Err(e),
        }
        if let Some(m) = spec.meet(&p, DEFAULT_TOL).ok().flatten() {
            rep.merge(check_part_preservation(spec, &p, &m));
        }
    }
    rep.note(format!("absorption checked on {checked} random right-bounded triples"));
    Ok(rep)
}

type ConeRows = Vec<(&'static str, Vec<Vec<f64>>)>;

/// Row kind for `R(0)` of the inner-product sponge, which is the whole space.
pub const RIGHT_EVERYWHERE: &str = "right,everywhere";

/// Boundary samples of `L(x)` and `R(x)` in the plane; angles give the
/// arc endpoints.
pub fn cone_samples(spec: &SpongeSpec, x: &Point, n: usize) -> Result<ConeRows> {
    let circle = |cx: f64, cy: f64, r: f64, upper_only: bool| -> Vec<Vec<f64>> {
        let span = if upper_only { std::f64::consts::PI } else { 2.0 * std::f64::consts::PI };
        let last = if upper_only { n } else { n - 1 };
        (0..=last).map(|k| span * k as f64 / n as f64).map(|t| vec![cx + r * t.cos(), cy + r * t.sin()]).collect()
    };
    match &spec.family {
        Family::Angle { kappa, period } => {
            let a = x[0];
            let wrap = |v: f64| crate::groups::canonical_angle(v, *period);
            Ok(vec![("left", vec![vec![wrap(a - kappa)], vec![a]]), ("right", vec![vec![a], vec![wrap(a + kappa)]])])
        }
        _ if spec.dim != 2 => Err(SpongeError::Unsupported("cone sampling is implemented for 2D points".into())),
        Family::InnerProduct => {
            let nx = x.norm();
            if nx == 0.0 {
                return Ok(vec![("left", vec![vec![0.0, 0.0]]), (RIGHT_EVERYWHERE, vec![])]);
            }
            let left = circle(x[0] / 2.0, x[1] / 2.0, nx / 2.0, false);
            let u = [-x[1] / nx, x[0] / nx];
            let span = 2.0 * nx;
            let right = (0..n)
                .map(|k| -span + 2.0 * span * k as f64 / (n - 1) as f64)
                .map(|t| vec![x[0] + t * u[0], x[1] + t * u[1]])
                .collect();
            Ok(vec![("left", left), ("right", right)])
        }
        Family::Hyperbolic => {
            let left = circle(x[0], 0.0, x[1], true);
            let span = 2.0 * x[1];
            let right = (0..n)
                .map(|k| x[0] - span + 2.0 * span * k as f64 / (n - 1) as f64)
                .map(|e| vec![e, ((e - x[0]).powi(2) + x[1] * x[1]).sqrt()])
                .collect();
            Ok(vec![("left", left), ("right", right)])
        }
        Family::Epigraph { profile } => {
            let span = 2.0;
            let es: Vec<f64> = (0..n).map(|k| x[0] - span + 2.0 * span * k as f64 / (n - 1) as f64).collect();
            let left = es.iter().map(|&e| vec![e, x[1] - profile.eval((e - x[0]).abs())]).collect();
            let right = es.iter().map(|&e| vec![e, x[1] + profile.eval((e - x[0]).abs())]).collect();
            Ok(vec![("left", left), ("right", right)])
        }
        Family::Product { .. } => Err(SpongeError::Unsupported("cone sampling of products".into())),
    }
}
