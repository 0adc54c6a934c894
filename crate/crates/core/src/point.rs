//! Points of the ambient space and finite point sets.
//!
//! By convention the last coordinate of a [`Point`] is the distinguished
//! axis `h`; the remaining coordinates form the orthogonal part `x_perp`.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Result, SpongeError};

/// A finite-dimensional real vector with finite coordinates.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(SpongeError::InvalidParameter("point must have dim >= 1".into()));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(SpongeError::NonFinite);
        }
        Ok(Point(coords))
    }

    /// Builds a point from a slice. Panics on empty or non-finite input;
    /// meant for literals in examples and tests.
    pub fn from_slice(coords: &[f64]) -> Self {
        Point::new(coords.to_vec()).expect("invalid point literal")
    }

    pub fn zeros(dim: usize) -> Self {
        Point(vec![0.0; dim.max(1)])
    }

    /// Recombines an orthogonal part and an `h` coordinate.
    pub fn compose(perp: &[f64], h: f64) -> Self {
        let mut v = perp.to_vec();
        v.push(h);
        Point(v)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    /// The coordinate along the distinguished axis (last coordinate).
    #[inline]
    pub fn h(&self) -> f64 {
        self.0[self.0.len() - 1]
    }

    /// The coordinates orthogonal to `h`.
    #[inline]
    pub fn perp(&self) -> &[f64] {
        &self.0[..self.0.len() - 1]
    }

    pub fn with_h(&self, h: f64) -> Self {
        let mut v = self.0.clone();
        let n = v.len();
        v[n - 1] = h;
        Point(v)
    }

    pub fn dot(&self, other: &Point) -> f64 {
        dot(&self.0, &other.0)
    }

    pub fn norm_sq(&self) -> f64 {
        dot(&self.0, &self.0)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn dist(&self, other: &Point) -> f64 {
        dist_sq(&self.0, &other.0).sqrt()
    }

    pub fn scale(&self, s: f64) -> Point {
        Point(self.0.iter().map(|c| c * s).collect())
    }

    /// Max-norm comparison, used to compare solver output.
    pub fn approx_eq(&self, other: &Point, tol: f64) -> bool {
        self.dim() == other.dim()
            && self.0.iter().zip(&other.0).all(|(a, b)| (a - b).abs() <= tol)
    }

    pub fn max_abs_diff(&self, other: &Point) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Index<usize> for Point {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = SpongeError;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Point::new(v)
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Self {
        p.0
    }
}

impl Add for &Point {
    type Output = Point;
    fn add(self, rhs: &Point) -> Point {
        Point(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Point {
    type Output = Point;
    fn sub(self, rhs: &Point) -> Point {
        Point(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<f64> for &Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        self.scale(s)
    }
}

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// A finite, nonempty multiset of points of uniform dimension.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point>", into = "Vec<Point>")]
pub struct PointSet(Vec<Point>);

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let first = points.first().ok_or(SpongeError::Empty)?;
        let dim = first.dim();
        if let Some(bad) = points.iter().find(|p| p.dim() != dim) {
            return Err(SpongeError::DimensionMismatch { expected: dim, got: bad.dim() });
        }
        Ok(PointSet(points))
    }

    /// Builds a set from coordinate literals; panics on invalid input.
    pub fn from_rows(rows: &[&[f64]]) -> Self {
        PointSet::new(rows.iter().map(|r| Point::from_slice(r)).collect())
            .expect("invalid point set literal")
    }

    pub fn singleton(p: Point) -> Self {
        PointSet(vec![p])
    }

    pub fn pair(a: Point, b: Point) -> Result<Self> {
        PointSet::new(vec![a, b])
    }

    pub fn dim(&self) -> usize {
        self.0[0].dim()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> &[Point] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.0.iter()
    }

    /// Applies `f` to every point.
    pub fn map(&self, f: impl Fn(&Point) -> Point) -> PointSet {
        PointSet(self.0.iter().map(f).collect())
    }

    pub fn with(&self, extra: Point) -> Result<PointSet> {
        let mut v = self.0.clone();
        v.push(extra);
        PointSet::new(v)
    }

    pub fn into_vec(self) -> Vec<Point> {
        self.0
    }
}

impl TryFrom<Vec<Point>> for PointSet {
    type Error = SpongeError;
    fn try_from(v: Vec<Point>) -> Result<Self> {
        PointSet::new(v)
    }
}

impl From<PointSet> for Vec<Point> {
    fn from(p: PointSet) -> Self {
        p.0
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a Point;
    type IntoIter = std::slice::Iter<'a, Point>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}
