//! Exact planar primitives.
//!
//! Every topological decision (sidedness, incidence, intersection) is made on
//! arbitrary-precision rationals. Only lengths leave the exact world, as `f64`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// A point with exact rational coordinates. Ordered lexicographically by `(x, y)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point {
            x: Rational::from_integer(BigInt::from(x)),
            y: Rational::from_integer(BigInt::from(y)),
        }
    }

    /// `x_num / den`, `y_num / den`.
    pub fn from_ratio(x_num: i64, y_num: i64, den: i64) -> Self {
        Point {
            x: Rational::new(x_num.into(), den.into()),
            y: Rational::new(y_num.into(), den.into()),
        }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (rat_to_f64(&self.x), rat_to_f64(&self.y))
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        let two = Rational::from_integer(BigInt::from(2));
        Point {
            x: (&self.x + &other.x) / &two,
            y: (&self.y + &other.y) / &two,
        }
    }

    pub fn translate(&self, dx: &Rational, dy: &Rational) -> Point {
        Point {
            x: &self.x + dx,
            y: &self.y + dy,
        }
    }

    pub fn scale(&self, s: &Rational) -> Point {
        Point {
            x: &self.x * s,
            y: &self.y * s,
        }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

pub(crate) fn rat_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Twice the signed area of triangle `pqr`, i.e. `(q - p) x (r - p)`.
pub fn cross(p: &Point, q: &Point, r: &Point) -> Rational {
    (&q.x - &p.x) * (&r.y - &p.y) - (&q.y - &p.y) * (&r.x - &p.x)
}

/// Sign of `(q - p) x (r - p)`: `+1` for a left turn, `-1` for a right turn, `0` if collinear.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> i8 {
    let c = cross(p, q, r);
    if c.is_positive() {
        1
    } else if c.is_negative() {
        -1
    } else {
        0
    }
}

/// A closed straight segment with distinct endpoints.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    /// Panics if `a == b`; use [`Segment::try_new`] for untrusted input.
    pub fn new(a: Point, b: Point) -> Self {
        Self::try_new(a, b).expect("zero-length segment")
    }

    pub fn try_new(a: Point, b: Point) -> Option<Self> {
        if a == b {
            None
        } else {
            Some(Segment { a, b })
        }
    }

    /// Same segment with endpoints in lexicographic order.
    pub fn canonical(&self) -> Segment {
        if self.a <= self.b {
            self.clone()
        } else {
            Segment {
                a: self.b.clone(),
                b: self.a.clone(),
            }
        }
    }

    pub fn length(&self) -> f64 {
        euclid_length(self)
    }

    /// Whether `p` lies on the closed segment.
    pub fn contains(&self, p: &Point) -> bool {
        orientation(&self.a, &self.b, p) == 0 && in_closed_box(&self.a, &self.b, p)
    }

    pub(crate) fn bbox(&self) -> Aabb {
        Aabb::of_points([&self.a, &self.b])
    }
}

impl fmt::Debug for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}-{:?}", self.a, self.b)
    }
}

/// `p` inside the closed axis-aligned box spanned by `a` and `b`.
fn in_closed_box(a: &Point, b: &Point, p: &Point) -> bool {
    let (xlo, xhi) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (ylo, yhi) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    xlo <= &p.x && &p.x <= xhi && ylo <= &p.y && &p.y <= yhi
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Intersection {
    Empty,
    Point(Point),
    /// Maximal shared sub-segment, endpoints in lexicographic order.
    Overlap(Segment),
}

/// Exact intersection of two closed segments.
pub fn segment_intersection(s: &Segment, t: &Segment) -> Intersection {
    let o1 = orientation(&s.a, &s.b, &t.a);
    let o2 = orientation(&s.a, &s.b, &t.b);
    if o1 == 0 && o2 == 0 {
        return collinear_overlap(s, t);
    }
    if o1 == o2 {
        return Intersection::Empty;
    }
    let o3 = orientation(&t.a, &t.b, &s.a);
    let o4 = orientation(&t.a, &t.b, &s.b);
    // o3 == o4 == 0 would mean s is collinear with t, already handled above.
    if o3 == o4 {
        return Intersection::Empty;
    }
    if o1 == 0 {
        return Intersection::Point(t.a.clone());
    }
    if o2 == 0 {
        return Intersection::Point(t.b.clone());
    }
    if o3 == 0 {
        return Intersection::Point(s.a.clone());
    }
    if o4 == 0 {
        return Intersection::Point(s.b.clone());
    }
    // Proper crossing: s.a + u (s.b - s.a) with u = ((t.a - s.a) x dt) / (ds x dt).
    let dsx = &s.b.x - &s.a.x;
    let dsy = &s.b.y - &s.a.y;
    let dtx = &t.b.x - &t.a.x;
    let dty = &t.b.y - &t.a.y;
    let denom = &dsx * &dty - &dsy * &dtx;
    let num = (&t.a.x - &s.a.x) * &dty - (&t.a.y - &s.a.y) * &dtx;
    let u = num / denom;
    Intersection::Point(Point {
        x: &s.a.x + &u * &dsx,
        y: &s.a.y + &u * &dsy,
    })
}

fn collinear_overlap(s: &Segment, t: &Segment) -> Intersection {
    // Lexicographic order is monotone along any line.
    let s = s.canonical();
    let t = t.canonical();
    let lo = if s.a >= t.a { s.a } else { t.a };
    let hi = if s.b <= t.b { s.b } else { t.b };
    match lo.cmp(&hi) {
        Ordering::Less => Intersection::Overlap(Segment { a: lo, b: hi }),
        Ordering::Equal => Intersection::Point(lo),
        Ordering::Greater => Intersection::Empty,
    }
}

/// Euclidean length in double precision.
pub fn euclid_length(s: &Segment) -> f64 {
    let dx = rat_to_f64(&(&s.b.x - &s.a.x));
    let dy = rat_to_f64(&(&s.b.y - &s.a.y));
    dx.hypot(dy)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

/// Conservative floating-point bounding box used only to skip exact work.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Aabb {
    pub min: (f64, f64),
    pub max: (f64, f64),
}

impl Aabb {
    pub fn of_points<'a>(pts: impl IntoIterator<Item = &'a Point>) -> Aabb {
        let mut min = (f64::INFINITY, f64::INFINITY);
        let mut max = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in pts {
            let (x, y) = p.to_f64();
            min.0 = min.0.min(x);
            min.1 = min.1.min(y);
            max.0 = max.0.max(x);
            max.1 = max.1.max(y);
        }
        let pad = |v: f64| 1e-9 * (1.0 + v.abs());
        Aabb {
            min: (min.0 - pad(min.0), min.1 - pad(min.1)),
            max: (max.0 + pad(max.0), max.1 + pad(max.1)),
        }
    }

    pub fn intersects(&self, other: &Aabb) -> bool {
        self.min.0 <= other.max.0
            && other.min.0 <= self.max.0
            && self.min.1 <= other.max.1
            && other.min.1 <= self.max.1
    }
}

/// A simple polygon, stored counterclockwise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polygon {
    vertices: Vec<Point>,
    color: usize,
}

impl Polygon {
    /// Builds a polygon, reversing clockwise input so the stored order is counterclockwise.
    pub fn new(vertices: Vec<Point>, color: usize) -> Self {
        let mut poly = Polygon { vertices, color };
        if poly.signed_area2().is_negative() {
            log::warn!("polygon of color {color} given clockwise; reversing");
            poly.vertices.reverse();
        }
        poly
    }

    /// Stores the vertices exactly as given (no orientation fix-up).
    pub fn new_unchecked(vertices: Vec<Point>, color: usize) -> Self {
        Polygon { vertices, color }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn color(&self) -> usize {
        self.color
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edges `v[i] -> v[i+1]`, wrapping around. Zero-length edges are skipped.
    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        let n = self.vertices.len();
        (0..n).filter_map(move |i| {
            Segment::try_new(self.vertices[i].clone(), self.vertices[(i + 1) % n].clone())
        })
    }

    /// Twice the signed area (shoelace).
    pub fn signed_area2(&self) -> Rational {
        let n = self.vertices.len();
        let mut acc = Rational::zero();
        for i in 0..n {
            let p = &self.vertices[i];
            let q = &self.vertices[(i + 1) % n];
            acc += &p.x * &q.y - &q.x * &p.y;
        }
        acc
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|e| euclid_length(&e)).sum()
    }

    pub(crate) fn bbox(&self) -> Aabb {
        Aabb::of_points(&self.vertices)
    }

    pub fn translate(&self, dx: &Rational, dy: &Rational) -> Polygon {
        Polygon {
            vertices: self.vertices.iter().map(|p| p.translate(dx, dy)).collect(),
            color: self.color,
        }
    }

    pub fn scale(&self, s: &Rational) -> Polygon {
        Polygon {
            vertices: self.vertices.iter().map(|p| p.scale(s)).collect(),
            color: self.color,
        }
    }
}

impl fmt::Debug for Polygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polygon(color {}, {:?})", self.color, self.vertices)
    }
}

/// Exact point location with respect to a simple polygon.
pub fn point_in_polygon(p: &Point, poly: &Polygon) -> Location {
    let n = poly.vertices.len();
    let mut winding = 0i64;
    for i in 0..n {
        let a = &poly.vertices[i];
        let b = &poly.vertices[(i + 1) % n];
        let o = orientation(a, b, p);
        if o == 0 && in_closed_box(a, b, p) {
            return Location::Boundary;
        }
        if a.y <= p.y {
            if b.y > p.y && o > 0 {
                winding += 1;
            }
        } else if b.y <= p.y && o < 0 {
            winding -= 1;
        }
    }
    if winding != 0 {
        Location::Interior
    } else {
        Location::Exterior
    }
}

/// Splits `seg` at every point where it meets the boundary of `poly`.
///
/// Returns the sorted breakpoints (including the endpoints of `seg`) and whether
/// some boundary edge overlaps `seg` running in the same direction.
fn split_against_boundary(seg: &Segment, poly: &Polygon) -> (Vec<Point>, bool) {
    let mut pts = vec![seg.a.clone(), seg.b.clone()];
    let mut same_direction_overlap = false;
    for e in poly.edges() {
        match segment_intersection(seg, &e) {
            Intersection::Empty => {}
            Intersection::Point(p) => pts.push(p),
            Intersection::Overlap(o) => {
                let dot = (&seg.b.x - &seg.a.x) * (&e.b.x - &e.a.x)
                    + (&seg.b.y - &seg.a.y) * (&e.b.y - &e.a.y);
                if dot.is_positive() {
                    same_direction_overlap = true;
                }
                pts.push(o.a);
                pts.push(o.b);
            }
        }
    }
    pts.sort();
    pts.dedup();
    (pts, same_direction_overlap)
}

/// Whether the closed segment meets the open interior of `poly`.
pub fn segment_meets_interior(seg: &Segment, poly: &Polygon) -> bool {
    if !seg.bbox().intersects(&poly.bbox()) {
        return false;
    }
    let (pts, _) = split_against_boundary(seg, poly);
    pts.windows(2)
        .any(|w| point_in_polygon(&w[0].midpoint(&w[1]), poly) == Location::Interior)
}

/// Whether the open interiors of two simple counterclockwise polygons intersect.
pub fn interiors_overlap(p: &Polygon, q: &Polygon) -> bool {
    if !p.bbox().intersects(&q.bbox()) {
        return false;
    }
    boundary_enters(p, q) || boundary_enters(q, p)
}

fn boundary_enters(p: &Polygon, q: &Polygon) -> bool {
    for e in p.edges() {
        let (pts, same_dir) = split_against_boundary(&e, q);
        if same_dir {
            return true;
        }
        if pts
            .windows(2)
            .any(|w| point_in_polygon(&w[0].midpoint(&w[1]), q) == Location::Interior)
        {
            return true;
        }
    }
    false
}

/// A set of colored, pairwise interior-disjoint simple polygons.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub num_colors: usize,
    pub objects: Vec<Polygon>,
}

impl Instance {
    pub fn new(num_colors: usize, objects: Vec<Polygon>) -> Self {
        Instance {
            num_colors,
            objects,
        }
    }

    pub fn num_corners(&self) -> usize {
        self.objects.iter().map(Polygon::len).sum()
    }

    /// Colors that own at least one object, ascending.
    pub fn used_colors(&self) -> Vec<usize> {
        let mut c: Vec<usize> = self.objects.iter().map(Polygon::color).collect();
        c.sort_unstable();
        c.dedup();
        c
    }

    pub fn translate(&self, dx: &Rational, dy: &Rational) -> Instance {
        Instance {
            num_colors: self.num_colors,
            objects: self.objects.iter().map(|o| o.translate(dx, dy)).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Instance {
        Instance {
            num_colors: self.num_colors,
            objects: self.objects.iter().map(|o| o.scale(s)).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ViolationKind {
    NonSimplePolygon,
    TooFewVertices,
    OverlappingInteriors,
    BadColorIndex,
    ZeroAreaPolygon,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub object: usize,
    /// The second object for pairwise violations.
    pub other: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return writeln!(f, "instance valid");
        }
        for v in &self.violations {
            match v.other {
                Some(o) => writeln!(f, "{:?}: objects {} and {}", v.kind, v.object, o)?,
                None => writeln!(f, "{:?}: object {}", v.kind, v.object)?,
            }
        }
        Ok(())
    }
}

fn is_simple(poly: &Polygon) -> bool {
    let v = &poly.vertices;
    let n = v.len();
    if (0..n).any(|i| v[i] == v[(i + 1) % n]) {
        return false;
    }
    let edges: Vec<Segment> = poly.edges().collect();
    for i in 0..n {
        for j in (i + 1)..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            match segment_intersection(&edges[i], &edges[j]) {
                Intersection::Empty => {}
                Intersection::Point(p) if adjacent => {
                    let shared = if j == i + 1 { &v[j] } else { &v[0] };
                    if &p != shared {
                        return false;
                    }
                }
                _ => return false,
            }
        }
    }
    true
}

/// Checks every polygon and instance invariant, collecting all violations.
pub fn validate_instance(inst: &Instance) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut sound = vec![true; inst.objects.len()];
    for (i, poly) in inst.objects.iter().enumerate() {
        let mut push = |kind| {
            report.violations.push(Violation {
                kind,
                object: i,
                other: None,
            })
        };
        if poly.color >= inst.num_colors {
            push(ViolationKind::BadColorIndex);
        }
        if poly.len() < 3 {
            push(ViolationKind::TooFewVertices);
            sound[i] = false;
            continue;
        }
        if !is_simple(poly) {
            push(ViolationKind::NonSimplePolygon);
            sound[i] = false;
            continue;
        }
        let area = poly.signed_area2();
        if area.is_zero() {
            push(ViolationKind::ZeroAreaPolygon);
            sound[i] = false;
        } else if area.is_negative() {
            // Only reachable through `new_unchecked`.
            push(ViolationKind::NonSimplePolygon);
            sound[i] = false;
        }
    }
    for i in 0..inst.objects.len() {
        for j in (i + 1)..inst.objects.len() {
            if sound[i] && sound[j] && interiors_overlap(&inst.objects[i], &inst.objects[j]) {
                report.violations.push(Violation {
                    kind: ViolationKind::OverlappingInteriors,
                    object: i,
                    other: Some(j),
                });
            }
        }
    }
    report
}

#[cfg(test)]
pub(crate) mod test_util {
    use super::*;

    pub fn pt(x: f64, y: f64) -> Point {
        // Only exact binary fractions are used in tests.
        Point::new(
            Rational::from_float(x).unwrap(),
            Rational::from_float(y).unwrap(),
        )
    }

    pub fn seg(ax: f64, ay: f64, bx: f64, by: f64) -> Segment {
        Segment::new(pt(ax, ay), pt(bx, by))
    }

    pub fn rect(x0: f64, y0: f64, x1: f64, y1: f64, color: usize) -> Polygon {
        Polygon::new(
            vec![pt(x0, y0), pt(x1, y0), pt(x1, y1), pt(x0, y1)],
            color,
        )
    }
}
