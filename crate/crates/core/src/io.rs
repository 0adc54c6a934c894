//! File formats: point CSV, the `FIELD v1` text format, and JSON specs.

use std::fmt::Write as _;
use std::path::Path;

use serde::de::DeserializeOwned;

use crate::error::{Result, SpongeError};
use crate::morphology::Field;
use crate::point::{Point, PointSet};

const FIELD_MAGIC: &str = "FIELD v1";

/// One point per row, no header; the dimension is the column count.
pub fn parse_points_csv(text: &str) -> Result<PointSet> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).comment(Some(b'#')).from_reader(text.as_bytes());
    let mut pts = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| SpongeError::Parse(e.to_string()))?;
        if rec.iter().all(str::is_empty) {
            continue;
        }
        let coords = rec
            .iter()
            .map(|f| f.parse::<f64>().map_err(|e| SpongeError::Parse(format!("row {}: {f:?}: {e}", line + 1))))
            .collect::<Result<Vec<f64>>>()?;
        pts.push(Point::new(coords)?);
    }
    PointSet::new(pts)
}

pub fn read_points_csv(path: impl AsRef<Path>) -> Result<PointSet> {
    parse_points_csv(&std::fs::read_to_string(path)?)
}

pub fn write_points_csv(points: &[Point]) -> String {
    let mut out = String::new();
    for p in points {
        let row: Vec<String> = p.coords().iter().map(f64::to_string).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Serializes with shortest round-trip float formatting, so parsing the
/// result gives back the identical field.
pub fn field_to_string(f: &Field) -> String {
    let mut out = String::with_capacity(f.data().len() * 20);
    let _ = writeln!(out, "{FIELD_MAGIC}");
    let _ = writeln!(out, "{} {} {}", f.width(), f.height(), f.channels());
    for px in f.data().chunks(f.channels()) {
        for (i, v) in px.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{v}");
        }
        out.push('\n');
    }
    out
}

pub fn parse_field(text: &str) -> Result<Field> {
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some(FIELD_MAGIC) {
        return Err(SpongeError::Parse(format!("missing {FIELD_MAGIC:?} header")));
    }
    let dims: Vec<usize> = lines
        .next()
        .ok_or_else(|| SpongeError::Parse("missing size line".into()))?
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| SpongeError::Parse(format!("bad size {t:?}"))))
        .collect::<Result<_>>()?;
    let [w, h, c] = dims[..] else {
        return Err(SpongeError::Parse("size line must be: width height channels".into()));
    };
    let mut data = Vec::with_capacity(w * h * c);
    let mut rows = 0;
    for (k, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let before = data.len();
        for t in line.split_whitespace() {
            data.push(t.parse::<f64>().map_err(|_| SpongeError::Parse(format!("pixel line {}: bad value {t:?}", k + 1)))?);
        }
        if data.len() - before != c {
            return Err(SpongeError::Parse(format!("pixel line {} has {} values, expected {c}", k + 1, data.len() - before)));
        }
        rows += 1;
    }
    if rows != w * h {
        return Err(SpongeError::Parse(format!("expected {} pixel lines, found {rows}", w * h)));
    }
    Field::new(w, h, c, data)
}

pub fn read_field(path: impl AsRef<Path>) -> Result<Field> {
    parse_field(&std::fs::read_to_string(path)?)
}

pub fn write_field(path: impl AsRef<Path>, f: &Field) -> Result<()> {
    std::fs::write(path, field_to_string(f))?;
    Ok(())
}

pub fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| SpongeError::Parse(e.to_string()))
}

/// `v` with 12 significant digits, trailing zeros removed.
pub fn format_sig12(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let exp = v.abs().log10().floor() as i32;
    if !(-5..15).contains(&exp) {
        return format!("{v:.11e}");
    }
    let decimals = (11 - exp).max(0) as usize;
    let s = format!("{v:.decimals$}");
    let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

pub fn format_point(p: &Point) -> String {
    p.coords().iter().map(|v| format_sig12(*v)).collect::<Vec<_>>().join(" ")
}
