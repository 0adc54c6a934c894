//! Dilation, erosion, opening and closing of vector-valued grids, with the
//! window join / meet taken in a sponge.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SpongeError};
use crate::point::{Point, PointSet};
use crate::spec::{Extremum, Family, SpongeSpec, DEFAULT_TOL};

/// Row-major grid of points with `channels` coordinates each.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    width: usize,
    height: usize,
    channels: usize,
    data: Vec<f64>,
}

impl Field {
    pub fn new(width: usize, height: usize, channels: usize, data: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 || channels == 0 {
            return Err(SpongeError::InvalidParameter("field sizes must be positive".into()));
        }
        if data.len() != width * height * channels {
            return Err(SpongeError::InvalidParameter(format!(
                "field data has {} values, expected {}",
                data.len(),
                width * height * channels
            )));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(SpongeError::NonFinite);
        }
        Ok(Field { width, height, channels, data })
    }

    pub fn from_fn(width: usize, height: usize, channels: usize, f: impl Fn(usize, usize) -> Vec<f64>) -> Result<Self> {
        let mut data = Vec::with_capacity(width * height * channels);
        for y in 0..height {
            for x in 0..width {
                let v = f(x, y);
                if v.len() != channels {
                    return Err(SpongeError::DimensionMismatch { expected: channels, got: v.len() });
                }
                data.extend(v);
            }
        }
        Self::new(width, height, channels, data)
    }

    pub fn constant(width: usize, height: usize, value: &Point) -> Result<Self> {
        Self::from_fn(width, height, value.dim(), |_, _| value.coords().to_vec())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn pixel_slice(&self, x: usize, y: usize) -> &[f64] {
        let at = (y * self.width + x) * self.channels;
        &self.data[at..at + self.channels]
    }

    pub fn pixel(&self, x: usize, y: usize) -> Point {
        Point::from_slice(self.pixel_slice(x, y))
    }

    pub fn map_pixels(&self, f: impl Fn(&Point) -> Point) -> Result<Field> {
        Self::from_fn(self.width, self.height, self.channels, |x, y| f(&self.pixel(x, y)).into_vec())
    }
}

/// Window offsets `(dx, dy)`. JSON: `{"offsets": [[-1, 0], [0, 0], [1, 0]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuringElement {
    pub offsets: Vec<(i64, i64)>,
}

impl StructuringElement {
    pub fn new(offsets: Vec<(i64, i64)>) -> Result<Self> {
        if offsets.is_empty() {
            return Err(SpongeError::Empty);
        }
        Ok(StructuringElement { offsets })
    }

    pub fn identity() -> Self {
        StructuringElement { offsets: vec![(0, 0)] }
    }

    /// All offsets with `|dx|, |dy| ≤ r`.
    pub fn square(r: i64) -> Self {
        let offsets = (-r..=r).flat_map(|dy| (-r..=r).map(move |dx| (dx, dy))).collect();
        StructuringElement { offsets }
    }

    pub fn contains_origin(&self) -> bool {
        self.offsets.contains(&(0, 0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryPolicy {
    Clamp,
    #[default]
    Shrink,
    Error,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnboundedPolicy {
    Error,
    Passthrough,
}

impl UnboundedPolicy {
    pub fn default_for(spec: &SpongeSpec) -> Self {
        let angular = match &spec.family {
            Family::Angle { .. } => true,
            Family::Product { components } => components.iter().any(|c| matches!(c.family, Family::Angle { .. })),
            _ => false,
        };
        if angular {
            UnboundedPolicy::Passthrough
        } else {
            UnboundedPolicy::Error
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MorphOp {
    Dilate,
    Erode,
    Open,
    Close,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MorphOptions {
    pub boundary: BoundaryPolicy,
    /// `None` picks [`UnboundedPolicy::default_for`] the family.
    pub unbounded: Option<UnboundedPolicy>,
    pub tol: f64,
}

impl Default for MorphOptions {
    fn default() -> Self {
        MorphOptions { boundary: BoundaryPolicy::Shrink, unbounded: None, tol: DEFAULT_TOL }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MorphOutput {
    pub field: Field,
    /// Pixels whose window had no join / meet and were passed through.
    pub unbounded_pixels: usize,
}

fn window(field: &Field, se: &StructuringElement, x: usize, y: usize, policy: BoundaryPolicy) -> Result<Vec<Point>> {
    let (w, h) = (field.width as i64, field.height as i64);
    let mut pts = Vec::with_capacity(se.offsets.len());
    for &(dx, dy) in &se.offsets {
        let (i, j) = (x as i64 + dx, y as i64 + dy);
        let inside = (0..w).contains(&i) && (0..h).contains(&j);
        let (i, j) = match (inside, policy) {
            (true, _) => (i, j),
            (false, BoundaryPolicy::Clamp) => (i.clamp(0, w - 1), j.clamp(0, h - 1)),
            (false, BoundaryPolicy::Shrink) => continue,
            (false, BoundaryPolicy::Error) => return Err(SpongeError::OutOfBounds { x, y }),
        };
        pts.push(field.pixel(i as usize, j as usize));
    }
    Ok(pts)
}

fn single_pass(field: &Field, se: &StructuringElement, spec: &SpongeSpec, side: Extremum, opts: &MorphOptions) -> Result<MorphOutput> {
    if field.channels != spec.dim {
        return Err(SpongeError::DimensionMismatch { expected: spec.dim, got: field.channels });
    }
    spec.validate()?;
    let policy = opts.unbounded.unwrap_or_else(|| UnboundedPolicy::default_for(spec));
    let what = match side {
        Extremum::Join => "join",
        Extremum::Meet => "meet",
    };
    let results: Vec<Result<(Vec<f64>, bool)>> = (0..field.width * field.height)
        .into_par_iter()
        .map(|k| {
            let (x, y) = (k % field.width, k / field.width);
            let pts = window(field, se, x, y, opts.boundary)?;
            if pts.is_empty() {
                return Ok((field.pixel_slice(x, y).to_vec(), false));
            }
            let set = PointSet::new(pts)?;
            match spec.extremum(&set, opts.tol, side) {
                Ok(Some(z)) => Ok((z.into_vec(), false)),
                Ok(None) | Err(SpongeError::BoundaryAmbiguous(_)) => match policy {
                    UnboundedPolicy::Passthrough => Ok((field.pixel_slice(x, y).to_vec(), true)),
                    UnboundedPolicy::Error => Err(SpongeError::WindowUnbounded { x, y, what }),
                },
                Err(e) => Err(e),
            }
        })
        .collect();
    let mut data = Vec::with_capacity(field.data.len());
    let mut unbounded_pixels = 0;
    for r in results {
        let (v, passed) = r?;
        data.extend(v);
        unbounded_pixels += passed as usize;
    }
    Ok(MorphOutput { field: Field { data, ..field.clone() }, unbounded_pixels })
}

/// Applies `op`; opening is erosion then dilation, closing the reverse.
pub fn morph(field: &Field, se: &StructuringElement, spec: &SpongeSpec, op: MorphOp, opts: &MorphOptions) -> Result<MorphOutput> {
    let passes: &[Extremum] = match op {
        MorphOp::Dilate => &[Extremum::Join],
        MorphOp::Erode => &[Extremum::Meet],
        MorphOp::Open => &[Extremum::Meet, Extremum::Join],
        MorphOp::Close => &[Extremum::Join, Extremum::Meet],
    };
    let mut out = MorphOutput { field: field.clone(), unbounded_pixels: 0 };
    for &side in passes {
        let next = single_pass(&out.field, se, spec, side, opts)?;
        out = MorphOutput { field: next.field, unbounded_pixels: out.unbounded_pixels + next.unbounded_pixels };
    }
    Ok(out)
}

fn with_policy(policy: BoundaryPolicy) -> MorphOptions {
    MorphOptions { boundary: policy, ..MorphOptions::default() }
}

/// Per-pixel join over the window.
pub fn dilate(field: &Field, se: &StructuringElement, spec: &SpongeSpec, policy: BoundaryPolicy) -> Result<Field> {
    morph(field, se, spec, MorphOp::Dilate, &with_policy(policy)).map(|o| o.field)
}

/// Per-pixel meet over the window.
pub fn erode(field: &Field, se: &StructuringElement, spec: &SpongeSpec, policy: BoundaryPolicy) -> Result<Field> {
    morph(field, se, spec, MorphOp::Erode, &with_policy(policy)).map(|o| o.field)
}

pub fn open(field: &Field, se: &StructuringElement, spec: &SpongeSpec, policy: BoundaryPolicy) -> Result<Field> {
    morph(field, se, spec, MorphOp::Open, &with_policy(policy)).map(|o| o.field)
}

pub fn close(field: &Field, se: &StructuringElement, spec: &SpongeSpec, policy: BoundaryPolicy) -> Result<Field> {
    morph(field, se, spec, MorphOp::Close, &with_policy(policy)).map(|o| o.field)
}
