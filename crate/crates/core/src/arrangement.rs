//! Planar subdivision induced by a set of segments.
//!
//! Stored as a half-edge structure: edge `e` owns half-edges `2e` (`u -> v`)
//! and `2e + 1` (`v -> u`), and every half-edge has its face on the left.
//! Bounded faces are traced counterclockwise. Each connected component
//! contributes one clockwise outer cycle, which becomes a hole of whichever
//! face encloses it (or of the unbounded face).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geom::{
    euclid_length, point_in_polygon, segment_intersection, Instance, Intersection, Location,
    Point, Rational, Segment,
};
use crate::visibility::SegmentSet;

#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub length: f64,
    /// Index of the input segment this edge was cut from.
    pub source: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Face {
    pub id: usize,
    pub object: Option<usize>,
    /// An exact point strictly inside the face.
    pub representative_point: Point,
    /// Counterclockwise boundary cycle (half-edge ids); `None` for the unbounded face.
    pub outer: Option<Vec<usize>>,
    /// Clockwise outer cycles of components nested directly inside this face.
    pub holes: Vec<Vec<usize>>,
}

impl Face {
    pub fn is_bounded(&self) -> bool {
        self.outer.is_some()
    }

    /// All boundary half-edges, outer cycle first.
    pub fn half_edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.outer.iter().chain(self.holes.iter()).flatten().copied()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Arrangement {
    /// Vertices in lexicographic order.
    pub vertices: Vec<Point>,
    /// Edges with `u < v`.
    pub edges: Vec<Edge>,
    pub faces: Vec<Face>,
    /// `(left of u->v, left of v->u)` per edge.
    pub edge_faces: Vec<(usize, usize)>,
    pub outer_face: usize,
    /// Connected components of the segment union.
    pub num_components: usize,
}

impl Arrangement {
    pub fn half_origin(&self, h: usize) -> usize {
        let e = &self.edges[h / 2];
        if h.is_multiple_of(2) {
            e.u
        } else {
            e.v
        }
    }

    pub fn half_dest(&self, h: usize) -> usize {
        self.half_origin(h ^ 1)
    }

    pub fn edge_segment(&self, e: usize) -> Segment {
        let ed = &self.edges[e];
        Segment::new(self.vertices[ed.u].clone(), self.vertices[ed.v].clone())
    }

    pub fn total_edge_length(&self) -> f64 {
        self.edges.iter().map(|e| e.length).sum()
    }

    /// `V - E + F`, which must equal `1 + C`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    pub fn object_face(&self, object: usize) -> Option<usize> {
        self.faces
            .iter()
            .find(|f| f.object == Some(object))
            .map(|f| f.id)
    }

    /// Line-oriented text listing used for golden files and debugging.
    ///
    /// ```text
    /// V <count>
    /// v <id> <x> <y>
    /// E <count>
    /// e <id> <u> <v> <length> <left face> <right face>
    /// F <count> outer <id>
    /// f <id> <object or -> <rep x> <rep y> <boundary length>
    /// ```
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "V {}", self.vertices.len());
        for (i, p) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "v {i} {} {}", p.x, p.y);
        }
        let _ = writeln!(s, "E {}", self.edges.len());
        for (i, e) in self.edges.iter().enumerate() {
            let (l, r) = self.edge_faces[i];
            let _ = writeln!(s, "e {i} {} {} {:.9} {l} {r}", e.u, e.v, e.length);
        }
        let _ = writeln!(s, "F {} outer {}", self.faces.len(), self.outer_face);
        for f in &self.faces {
            let obj = f.object.map_or("-".to_string(), |o| o.to_string());
            let _ = writeln!(
                s,
                "f {} {obj} {} {} {:.9}",
                f.id,
                f.representative_point.x,
                f.representative_point.y,
                face_boundary_length(self, f.id)
            );
        }
        s
    }
}

/// Sum of the lengths of the edges bounding `f`; an edge with `f` on both sides counts twice.
pub fn face_boundary_length(arr: &Arrangement, f: usize) -> f64 {
    arr.faces[f]
        .half_edges()
        .map(|h| arr.edges[h / 2].length)
        .sum()
}

type Approx = [f64; 4];

fn approx(s: &Segment) -> Approx {
    let (ax, ay) = s.a.to_f64();
    let (bx, by) = s.b.to_f64();
    [ax, ay, bx, by]
}

fn approx_orient(px: f64, py: f64, qx: f64, qy: f64, rx: f64, ry: f64, eps: f64) -> i8 {
    let c = (qx - px) * (ry - py) - (qy - py) * (rx - px);
    if c > eps {
        1
    } else if c < -eps {
        -1
    } else {
        0
    }
}

/// Floating-point filter: `true` only when the two segments certainly miss each other.
fn surely_disjoint(s: &Approx, t: &Approx, eps: f64) -> bool {
    let pad = eps;
    if s[0].max(s[2]) + pad < t[0].min(t[2])
        || t[0].max(t[2]) + pad < s[0].min(s[2])
        || s[1].max(s[3]) + pad < t[1].min(t[3])
        || t[1].max(t[3]) + pad < s[1].min(s[3])
    {
        return true;
    }
    let o1 = approx_orient(s[0], s[1], s[2], s[3], t[0], t[1], eps);
    let o2 = approx_orient(s[0], s[1], s[2], s[3], t[2], t[3], eps);
    if o1 != 0 && o1 == o2 {
        return true;
    }
    let o3 = approx_orient(t[0], t[1], t[2], t[3], s[0], s[1], eps);
    let o4 = approx_orient(t[0], t[1], t[2], t[3], s[2], s[3], eps);
    o3 != 0 && o3 == o4
}

/// Builds the arrangement of a free-segment set.
pub fn build_arrangement(set: &SegmentSet) -> Result<Arrangement> {
    build_from_segments(&set.segments)
}

/// Builds the arrangement of segments that pairwise share at most one point.
pub fn build_from_segments(segments: &[Segment]) -> Result<Arrangement> {
    if segments.is_empty() {
        return Err(Error::DegenerateInput);
    }
    let approxes: Vec<Approx> = segments.iter().map(approx).collect();
    let scale = approxes
        .iter()
        .flat_map(|a| a.iter())
        .fold(1.0f64, |m, v| m.max(v.abs()));
    let eps = 1e-10 * scale * scale;
    let m = segments.len();

    // Split points per segment.
    let hits: Vec<Result<Vec<(usize, usize, Point)>>> = (0..m)
        .into_par_iter()
        .map(|i| {
            let mut found = Vec::new();
            for j in (i + 1)..m {
                if surely_disjoint(&approxes[i], &approxes[j], eps) {
                    continue;
                }
                match segment_intersection(&segments[i], &segments[j]) {
                    Intersection::Empty => {}
                    Intersection::Point(p) => found.push((i, j, p)),
                    Intersection::Overlap(_) => {
                        return Err(Error::Internal(format!(
                            "segments {i} and {j} overlap; input must be split first"
                        )))
                    }
                }
            }
            Ok(found)
        })
        .collect();
    let mut stops: Vec<Vec<Point>> = segments
        .iter()
        .map(|s| vec![s.a.clone(), s.b.clone()])
        .collect();
    for batch in hits {
        for (i, j, p) in batch? {
            stops[i].push(p.clone());
            stops[j].push(p);
        }
    }
    for s in &mut stops {
        s.sort();
        s.dedup();
    }

    let mut vertices: Vec<Point> = stops.iter().flatten().cloned().collect();
    vertices.sort();
    vertices.dedup();
    let vid = |p: &Point| vertices.binary_search(p).expect("vertex registered");

    let mut edges = Vec::new();
    for (si, s) in stops.iter().enumerate() {
        for w in s.windows(2) {
            let (u, v) = (vid(&w[0]), vid(&w[1]));
            edges.push(Edge {
                u: u.min(v),
                v: u.max(v),
                length: euclid_length(&Segment::new(w[0].clone(), w[1].clone())),
                source: si,
            });
        }
    }
    edges.sort_by_key(|a| (a.u, a.v));
    edges.dedup_by(|a, b| (a.u, a.v) == (b.u, b.v));

    assemble(vertices, edges)
}

fn half_direction(vertices: &[Point], edges: &[Edge], h: usize) -> (Rational, Rational) {
    let e = &edges[h / 2];
    let (o, d) = if h.is_multiple_of(2) { (e.u, e.v) } else { (e.v, e.u) };
    (
        &vertices[d].x - &vertices[o].x,
        &vertices[d].y - &vertices[o].y,
    )
}

/// Counterclockwise angular order starting from the positive x-axis.
fn angle_cmp(a: &(Rational, Rational), b: &(Rational, Rational)) -> Ordering {
    let half = |d: &(Rational, Rational)| -> u8 {
        if d.1.is_positive() || (d.1.is_zero() && d.0.is_positive()) {
            0
        } else {
            1
        }
    };
    let (ha, hb) = (half(a), half(b));
    if ha != hb {
        return ha.cmp(&hb);
    }
    let c = &a.0 * &b.1 - &a.1 * &b.0;
    if c.is_positive() {
        Ordering::Less
    } else if c.is_negative() {
        Ordering::Greater
    } else {
        Ordering::Equal
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn assemble(vertices: Vec<Point>, edges: Vec<Edge>) -> Result<Arrangement> {
    let nv = vertices.len();
    let nh = edges.len() * 2;
    let origin = |h: usize| -> usize {
        let e = &edges[h / 2];
        if h.is_multiple_of(2) {
            e.u
        } else {
            e.v
        }
    };

    // Outgoing half-edges around each vertex, counterclockwise.
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for h in 0..nh {
        out[origin(h)].push(h);
    }
    let mut pos = vec![0usize; nh];
    for list in out.iter_mut() {
        let mut keyed: Vec<((Rational, Rational), usize)> = list
            .iter()
            .map(|&h| (half_direction(&vertices, &edges, h), h))
            .collect();
        keyed.sort_by(|a, b| angle_cmp(&a.0, &b.0));
        *list = keyed.into_iter().map(|(_, h)| h).collect();
        for (i, &h) in list.iter().enumerate() {
            pos[h] = i;
        }
    }
    let next = |h: usize| -> usize {
        let twin = h ^ 1;
        let around = &out[origin(twin)];
        around[(pos[twin] + around.len() - 1) % around.len()]
    };

    // Trace boundary cycles.
    let mut cycle_of = vec![usize::MAX; nh];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for start in 0..nh {
        if cycle_of[start] != usize::MAX {
            continue;
        }
        let id = cycles.len();
        let mut cyc = Vec::new();
        let mut h = start;
        loop {
            cycle_of[h] = id;
            cyc.push(h);
            h = next(h);
            if h == start {
                break;
            }
            if cycle_of[h] != usize::MAX {
                return Err(Error::Internal("half-edge cycles are not disjoint".into()));
            }
        }
        cycles.push(cyc);
    }
    let area2: Vec<Rational> = cycles
        .iter()
        .map(|cyc| {
            cyc.iter().fold(Rational::zero(), |acc, &h| {
                let p = &vertices[origin(h)];
                let q = &vertices[origin(h ^ 1)];
                acc + (&p.x * &q.y - &q.x * &p.y)
            })
        })
        .collect();

    let mut uf = UnionFind::new(nv);
    for e in &edges {
        uf.union(e.u, e.v);
    }
    let mut comp_id: BTreeMap<usize, usize> = BTreeMap::new();
    for v in 0..nv {
        let r = uf.find(v);
        let next_id = comp_id.len();
        comp_id.entry(r).or_insert(next_id);
    }
    let num_components = comp_id.len();
    let comp_of_vertex: Vec<usize> = (0..nv).map(|v| comp_id[&uf.find(v)]).collect();
    let cycle_comp: Vec<usize> = cycles
        .iter()
        .map(|c| comp_of_vertex[origin(c[0])])
        .collect();

    // Faces: 0 is unbounded, then bounded cycles in trace order.
    let mut face_of_cycle = vec![usize::MAX; cycles.len()];
    let mut outer_cycle_of_comp = vec![usize::MAX; num_components];
    let mut n_faces = 1;
    for (ci, a) in area2.iter().enumerate() {
        if a.is_positive() {
            face_of_cycle[ci] = n_faces;
            n_faces += 1;
        } else {
            let comp = cycle_comp[ci];
            if outer_cycle_of_comp[comp] != usize::MAX {
                return Err(Error::Internal(format!(
                    "component {comp} has more than one outer cycle"
                )));
            }
            outer_cycle_of_comp[comp] = ci;
        }
    }
    if outer_cycle_of_comp.contains(&usize::MAX) {
        return Err(Error::Internal("component without outer cycle".into()));
    }

    // Nest each component inside the smallest bounded cycle of another component containing it.
    let bounded: Vec<usize> = (0..cycles.len())
        .filter(|&c| face_of_cycle[c] != usize::MAX)
        .collect();
    let cycle_polys: Vec<Vec<Point>> = if num_components > 1 {
        cycles
            .iter()
            .map(|c| c.iter().map(|&h| vertices[origin(h)].clone()).collect())
            .collect()
    } else {
        Vec::new()
    };
    let mut holes: Vec<Vec<usize>> = vec![Vec::new(); n_faces];
    for comp in 0..num_components {
        let oc = outer_cycle_of_comp[comp];
        let probe = cycles[oc]
            .iter()
            .map(|&h| origin(h))
            .min()
            .expect("nonempty cycle");
        let probe = &vertices[probe];
        let mut best: Option<usize> = None;
        if num_components > 1 {
            for &c in &bounded {
                if cycle_comp[c] == comp {
                    continue;
                }
                if winding(probe, &cycle_polys[c]) != 0
                    && best.is_none_or(|b| area2[c] < area2[b])
                {
                    best = Some(c);
                }
            }
        }
        let host = best.map_or(0, |c| face_of_cycle[c]);
        holes[host].push(oc);
    }

    let mut half_face = vec![0usize; nh];
    for (ci, cyc) in cycles.iter().enumerate() {
        let f = if face_of_cycle[ci] != usize::MAX {
            face_of_cycle[ci]
        } else {
            holes
                .iter()
                .position(|hs| hs.contains(&ci))
                .expect("outer cycle assigned to a face")
        };
        for &h in cyc {
            half_face[h] = f;
        }
    }

    let mut faces: Vec<Face> = Vec::with_capacity(n_faces);
    faces.push(Face {
        id: 0,
        object: None,
        representative_point: point_below_left(&vertices),
        outer: None,
        holes: holes[0].iter().map(|&c| cycles[c].clone()).collect(),
    });
    for &c in &bounded {
        let id = face_of_cycle[c];
        debug_assert_eq!(id, faces.len());
        let mut face = Face {
            id,
            object: None,
            representative_point: vertices[0].clone(),
            outer: Some(cycles[c].clone()),
            holes: holes[id].iter().map(|&hc| cycles[hc].clone()).collect(),
        };
        face.representative_point = interior_point(&vertices, &edges, &face);
        faces.push(face);
    }

    let edge_faces = (0..edges.len())
        .map(|e| (half_face[2 * e], half_face[2 * e + 1]))
        .collect();
    let arr = Arrangement {
        vertices,
        edges,
        faces,
        edge_faces,
        outer_face: 0,
        num_components,
    };
    if arr.euler_characteristic() != 1 + num_components as i64 {
        return Err(Error::Internal(format!(
            "Euler relation violated: V={} E={} F={} C={}",
            arr.vertices.len(),
            arr.edges.len(),
            arr.faces.len(),
            num_components
        )));
    }
    Ok(arr)
}

/// Winding number of a closed vertex sequence around `p` (p not on it).
fn winding(p: &Point, poly: &[Point]) -> i64 {
    let n = poly.len();
    let mut w = 0;
    for i in 0..n {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        let o = crate::geom::orientation(a, b, p);
        if a.y <= p.y {
            if b.y > p.y && o > 0 {
                w += 1;
            }
        } else if b.y <= p.y && o < 0 {
            w -= 1;
        }
    }
    w
}

fn point_below_left(vertices: &[Point]) -> Point {
    let minx = vertices.iter().map(|p| &p.x).min().expect("vertices");
    let miny = vertices.iter().map(|p| &p.y).min().expect("vertices");
    Point::new(minx - Rational::one(), miny - Rational::one())
}

/// A point strictly inside a bounded face.
///
/// Scans the horizontal line halfway between the lowest vertex of the outer
/// cycle and the next distinct vertex height on the face boundary, and picks
/// the midpoint of the first span lying inside the face.
fn interior_point(vertices: &[Point], edges: &[Edge], face: &Face) -> Point {
    let ends = |h: usize| -> (&Point, &Point) {
        let e = &edges[h / 2];
        if h.is_multiple_of(2) {
            (&vertices[e.u], &vertices[e.v])
        } else {
            (&vertices[e.v], &vertices[e.u])
        }
    };
    let outer = face.outer.as_ref().expect("bounded face");
    let ymin = outer
        .iter()
        .map(|&h| &ends(h).0.y)
        .min()
        .expect("nonempty cycle")
        .clone();
    let ynext = face
        .half_edges()
        .map(|h| &ends(h).0.y)
        .filter(|y| **y > ymin)
        .min()
        .expect("bounded face has positive height")
        .clone();
    let two = Rational::from_integer(2.into());
    let y0 = (&ymin + &ynext) / &two;
    let mut xs: Vec<Rational> = face
        .half_edges()
        .filter_map(|h| {
            let (p, q) = ends(h);
            if (p.y < y0) != (q.y < y0) {
                Some(&p.x + (&y0 - &p.y) * (&q.x - &p.x) / (&q.y - &p.y))
            } else {
                None
            }
        })
        .collect();
    xs.sort();
    for i in (0..xs.len().saturating_sub(1)).step_by(2) {
        if xs[i] < xs[i + 1] {
            return Point::new((&xs[i] + &xs[i + 1]) / &two, y0);
        }
    }
    // Unreachable for a face with positive area.
    Point::new(xs[0].clone(), y0)
}

/// Tags the face holding each object's interior.
pub fn locate_object_faces(arr: &Arrangement, inst: &Instance) -> Result<Arrangement> {
    let mut out = arr.clone();
    for f in out.faces.iter_mut() {
        f.object = None;
    }
    let boxes: Vec<_> = inst.objects.iter().map(|o| o.bbox()).collect();
    let mut found: Vec<Option<usize>> = vec![None; inst.objects.len()];
    for f in out.faces.iter_mut().filter(|f| f.is_bounded()) {
        let rp = &f.representative_point;
        let pb = crate::geom::Aabb::of_points([rp]);
        for (oi, obj) in inst.objects.iter().enumerate() {
            if !boxes[oi].intersects(&pb) {
                continue;
            }
            if point_in_polygon(rp, obj) == Location::Interior {
                if found[oi].is_some() {
                    return Err(Error::Internal(format!(
                        "object {oi} interior split across faces"
                    )));
                }
                if f.object.is_some() {
                    return Err(Error::Internal(format!(
                        "face {} lies inside two objects",
                        f.id
                    )));
                }
                found[oi] = Some(f.id);
                f.object = Some(oi);
            }
        }
    }
    if let Some(missing) = found.iter().position(Option::is_none) {
        return Err(Error::ObjectFaceNotFound(missing));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::test_util::*;
    use crate::geom::Polygon;
    use crate::visibility::free_segments;

    fn counts(a: &Arrangement) -> (usize, usize, usize, usize) {
        (a.vertices.len(), a.edges.len(), a.faces.len(), a.num_components)
    }

    #[test]
    fn crossing_pair() {
        let a = build_from_segments(&[seg(0., 0., 2., 2.), seg(0., 2., 2., 0.)]).unwrap();
        assert_eq!(counts(&a), (5, 4, 1, 1));
    }

    #[test]
    fn triangle_segments() {
        let a = build_from_segments(&[seg(0., 0., 3., 0.), seg(3., 0., 0., 4.), seg(0., 4., 0., 0.)])
            .unwrap();
        assert_eq!(counts(&a), (3, 3, 2, 1));
        let inner = a.faces.iter().find(|f| f.is_bounded()).unwrap();
        assert!((face_boundary_length(&a, inner.id) - 12.0).abs() < 1e-12);
        assert!((face_boundary_length(&a, a.outer_face) - 12.0).abs() < 1e-12);
    }

    #[test]
    fn empty_input_is_degenerate() {
        assert_eq!(build_from_segments(&[]), Err(Error::DegenerateInput));
    }

    #[test]
    fn unit_square_object() {
        let inst = Instance::new(1, vec![rect(0., 0., 1., 1., 0)]);
        let arr = build_arrangement(&free_segments(&inst)).unwrap();
        assert_eq!(counts(&arr), (4, 4, 2, 1));
        let arr = locate_object_faces(&arr, &inst).unwrap();
        let f = arr.object_face(0).unwrap();
        assert_ne!(f, arr.outer_face);
        assert_eq!(face_boundary_length(&arr, f), 4.0);
        assert_eq!(face_boundary_length(&arr, arr.outer_face), 4.0);
    }

    #[test]
    fn two_squares_tag_distinct_faces() {
        let inst = Instance::new(2, vec![rect(0., 0., 1., 1., 0), rect(3., 0., 4., 1., 1)]);
        let arr = build_arrangement(&free_segments(&inst)).unwrap();
        let arr = locate_object_faces(&arr, &inst).unwrap();
        let (a, b) = (arr.object_face(0).unwrap(), arr.object_face(1).unwrap());
        assert_ne!(a, b);
        assert_eq!(arr.euler_characteristic(), 1 + arr.num_components as i64);
    }

    #[test]
    fn l_shape_single_face() {
        let l = Polygon::new(
            vec![pt(0., 0.), pt(2., 0.), pt(2., 1.), pt(1., 1.), pt(1., 2.), pt(0., 2.)],
            0,
        );
        let inst = Instance::new(1, vec![l.clone()]);
        let arr = build_arrangement(&free_segments(&inst)).unwrap();
        let inside: Vec<usize> = arr
            .faces
            .iter()
            .filter(|f| point_in_polygon(&f.representative_point, &l) == Location::Interior)
            .map(|f| f.id)
            .collect();
        assert_eq!(inside.len(), 1);
        let arr = locate_object_faces(&arr, &inst).unwrap();
        assert_eq!(arr.object_face(0), Some(inside[0]));
    }

    #[test]
    fn nested_components_become_holes() {
        let outer = [
            seg(0., 0., 10., 0.),
            seg(10., 0., 10., 10.),
            seg(10., 10., 0., 10.),
            seg(0., 10., 0., 0.),
        ];
        let inner = [
            seg(4., 4., 6., 4.),
            seg(6., 4., 6., 6.),
            seg(6., 6., 4., 6.),
            seg(4., 6., 4., 4.),
        ];
        let all: Vec<Segment> = outer.iter().chain(inner.iter()).cloned().collect();
        let a = build_from_segments(&all).unwrap();
        assert_eq!(counts(&a), (8, 8, 3, 2));
        let ring = a
            .faces
            .iter()
            .find(|f| f.is_bounded() && !f.holes.is_empty())
            .unwrap();
        assert_eq!(ring.holes.len(), 1);
        assert!((face_boundary_length(&a, ring.id) - 48.0).abs() < 1e-12);
        // the ring's point is outside the hole
        let (x, y) = ring.representative_point.to_f64();
        assert!(!(4.0..=6.0).contains(&x) || !(4.0..=6.0).contains(&y));
        assert!(a.faces[a.outer_face].holes.len() == 1);
    }

    #[test]
    fn dangling_edge_counts_twice() {
        let a = build_from_segments(&[
            seg(0., 0., 4., 0.),
            seg(4., 0., 4., 4.),
            seg(4., 4., 0., 4.),
            seg(0., 4., 0., 0.),
            seg(1., 1., 0., 0.),
        ])
        .unwrap();
        assert_eq!(counts(&a), (5, 5, 2, 1));
        let inner = a.faces.iter().find(|f| f.is_bounded()).unwrap();
        let expect = 16.0 + 2.0 * 2f64.sqrt();
        assert!((face_boundary_length(&a, inner.id) - expect).abs() < 1e-12);
    }

    #[test]
    fn dump_is_stable() {
        let a = build_from_segments(&[seg(0., 0., 1., 0.), seg(1., 0., 0., 1.), seg(0., 1., 0., 0.)])
            .unwrap();
        let expected = "\
V 3
v 0 0 0
v 1 0 1
v 2 1 0
E 3
e 0 0 1 1.000000000 0 1
e 1 0 2 1.000000000 1 0
e 2 1 2 1.414213562 0 1
F 2 outer 0
f 0 - -1 -1 3.414213562
f 1 - 1/4 1/2 3.414213562
";
        assert_eq!(a.dump(), expected);
    }
}
