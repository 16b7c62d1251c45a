//! JSON file formats for instances and fences.
//!
//! Coordinates are strings holding exact rationals: a decimal such as
//! `"-0.125"`, or `"p/q"` when the value has no terminating decimal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fence::Fence;
use crate::geom::{Instance, Point, Polygon, Rational, Segment};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    num_colors: usize,
    objects: Vec<ObjectFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ObjectFile {
    color: usize,
    vertices: Vec<[String; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FenceFile {
    total_length: f64,
    segments: Vec<[[String; 2]; 2]>,
}

/// Exact decimal form when one exists, `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    let (num, den) = (r.numer(), r.denom());
    if den.is_one() {
        return num.to_string();
    }
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let mut rest = den.clone();
    let (mut twos, mut fives) = (0u32, 0u32);
    while rest.is_multiple_of(&two) {
        rest /= &two;
        twos += 1;
    }
    while rest.is_multiple_of(&five) {
        rest /= &five;
        fives += 1;
    }
    if !rest.is_one() {
        return format!("{num}/{den}");
    }
    let digits = twos.max(fives);
    let scaled = num * BigInt::from(10).pow(digits) / den;
    let text = scaled.abs().to_string();
    let digits = digits as usize;
    let padded = format!("{text:0>width$}", width = digits + 1);
    let (int, frac) = padded.split_at(padded.len() - digits);
    let sign = if scaled.is_negative() { "-" } else { "" };
    format!("{sign}{int}.{frac}")
}

/// Parses a decimal (`"3"`, `"-0.5"`, `".25"`) or `p/q` string exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::BadCoordinate(s.to_string());
    let t = s.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int}{frac}0").parse().map_err(|_| bad())?;
    let den = BigInt::from(10).pow(frac.len() as u32 + 1);
    let value = Rational::new(digits, den);
    Ok(if neg { -value } else { value })
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

pub fn parse_instance(bytes: &[u8]) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_slice(bytes).map_err(parse_error)?;
    let mut objects = Vec::with_capacity(file.objects.len());
    for (i, o) in file.objects.into_iter().enumerate() {
        if o.color >= file.num_colors {
            return Err(Error::Parse {
                line: 0,
                column: 0,
                message: format!(
                    "object {i} has color {} but num_colors is {}",
                    o.color, file.num_colors
                ),
            });
        }
        let vertices = o
            .vertices
            .iter()
            .map(|[x, y]| Ok(Point::new(parse_rational(x)?, parse_rational(y)?)))
            .collect::<Result<Vec<Point>>>()?;
        objects.push(Polygon::new(vertices, o.color));
    }
    Ok(Instance::new(file.num_colors, objects))
}

fn point_strings(p: &Point) -> [String; 2] {
    [format_rational(&p.x), format_rational(&p.y)]
}

pub fn serialize_instance(inst: &Instance) -> Vec<u8> {
    let file = InstanceFile {
        num_colors: inst.num_colors,
        objects: inst
            .objects
            .iter()
            .map(|o| ObjectFile {
                color: o.color(),
                vertices: o.vertices().iter().map(point_strings).collect(),
            })
            .collect(),
    };
    let mut out = serde_json::to_vec_pretty(&file).expect("plain data serializes");
    out.push(b'\n');
    out
}

pub fn serialize_fence(fence: &Fence) -> Vec<u8> {
    let file = FenceFile {
        total_length: fence.total_length,
        segments: fence
            .segments
            .iter()
            .map(|s| [point_strings(&s.a), point_strings(&s.b)])
            .collect(),
    };
    let mut out = serde_json::to_vec_pretty(&file).expect("plain data serializes");
    out.push(b'\n');
    out
}

/// Reads a fence file; `total_length` is recomputed from the segments.
pub fn parse_fence(bytes: &[u8]) -> Result<Fence> {
    let file: FenceFile = serde_json::from_slice(bytes).map_err(parse_error)?;
    let mut segments = Vec::with_capacity(file.segments.len());
    for [[ax, ay], [bx, by]] in &file.segments {
        let a = Point::new(parse_rational(ax)?, parse_rational(ay)?);
        let b = Point::new(parse_rational(bx)?, parse_rational(by)?);
        let s = Segment::try_new(a, b).ok_or_else(|| Error::Parse {
            line: 0,
            column: 0,
            message: "zero-length fence segment".into(),
        })?;
        segments.push(s);
    }
    Ok(Fence::from_segments(segments))
}
