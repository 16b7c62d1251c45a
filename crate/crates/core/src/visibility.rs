//! Free segments between object corners.
//!
//! A segment is free when it avoids the open interior of every object. The
//! candidate set is every corner pair plus every object edge; collinear
//! overlaps are then split so that any two output segments share at most a
//! point.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::geom::{segment_meets_interior, Instance, Point, Rational, Segment};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentSet {
    /// Canonical segments (endpoints in lexicographic order), sorted.
    pub segments: Vec<Segment>,
    /// Every corner location mapped to the `(object, vertex)` pairs sitting on it.
    pub corner_index: BTreeMap<Point, Vec<(usize, usize)>>,
}

impl SegmentSet {
    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn total_length(&self) -> f64 {
        self.segments.iter().map(Segment::length).sum()
    }
}

pub fn corner_index(inst: &Instance) -> BTreeMap<Point, Vec<(usize, usize)>> {
    let mut index: BTreeMap<Point, Vec<(usize, usize)>> = BTreeMap::new();
    for (oi, poly) in inst.objects.iter().enumerate() {
        for (vi, v) in poly.vertices().iter().enumerate() {
            index.entry(v.clone()).or_default().push((oi, vi));
        }
    }
    index
}

/// Distinct corner locations in lexicographic order.
pub fn corners(inst: &Instance) -> Vec<Point> {
    corner_index(inst).into_keys().collect()
}

pub fn is_free(s: &Segment, inst: &Instance) -> bool {
    !inst.objects.iter().any(|o| segment_meets_interior(s, o))
}

/// The full free-segment set `S` of an instance.
pub fn free_segments(inst: &Instance) -> SegmentSet {
    let index = corner_index(inst);
    let pts: Vec<&Point> = index.keys().collect();
    let pairs: Vec<(usize, usize)> = (0..pts.len())
        .flat_map(|i| ((i + 1)..pts.len()).map(move |j| (i, j)))
        .collect();
    let mut candidates: Vec<Segment> = pairs
        .par_iter()
        .filter_map(|&(i, j)| {
            let s = Segment::new(pts[i].clone(), pts[j].clone());
            is_free(&s, inst).then_some(s)
        })
        .collect();
    for poly in &inst.objects {
        candidates.extend(poly.edges().map(|e| e.canonical()));
    }
    SegmentSet {
        segments: split_collinear(candidates),
        corner_index: index,
    }
}

/// Key identifying the supporting line of a canonical segment.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum LineKey {
    /// `y = slope * x + intercept`
    Sloped(Rational, Rational),
    /// `x = c`
    Vertical(Rational),
}

fn line_key(s: &Segment) -> LineKey {
    let dx = &s.b.x - &s.a.x;
    if dx == Rational::from_integer(BigInt::from(0)) {
        LineKey::Vertical(s.a.x.clone())
    } else {
        let slope = (&s.b.y - &s.a.y) / dx;
        let intercept = &s.a.y - &slope * &s.a.x;
        LineKey::Sloped(slope, intercept)
    }
}

/// Splits collinear overlapping segments into elementary non-overlapping pieces
/// and removes duplicates. The union of the input is preserved; the result is
/// sorted and canonical.
pub fn split_collinear(segments: Vec<Segment>) -> Vec<Segment> {
    let mut groups: HashMap<LineKey, Vec<Segment>> = HashMap::new();
    for s in segments {
        let s = s.canonical();
        groups.entry(line_key(&s)).or_default().push(s);
    }
    let mut out = Vec::new();
    for (_, group) in groups {
        if group.len() == 1 {
            out.extend(group);
            continue;
        }
        let mut stops: Vec<Point> = group
            .iter()
            .flat_map(|s| [s.a.clone(), s.b.clone()])
            .collect();
        stops.sort();
        stops.dedup();
        // coverage[i] > 0 iff piece stops[i]..stops[i+1] is covered
        let mut delta = vec![0i64; stops.len()];
        for s in &group {
            let i = stops.binary_search(&s.a).expect("endpoint registered");
            let j = stops.binary_search(&s.b).expect("endpoint registered");
            delta[i] += 1;
            delta[j] -= 1;
        }
        let mut cover = 0;
        for i in 0..stops.len() - 1 {
            cover += delta[i];
            if cover > 0 {
                out.push(Segment::new(stops[i].clone(), stops[i + 1].clone()));
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::test_util::*;
    use crate::geom::{segment_intersection, Intersection, Polygon};

    #[test]
    fn corner_counts() {
        let tri = Instance::new(1, vec![Polygon::new(vec![pt(0., 0.), pt(1., 0.), pt(0., 1.)], 0)]);
        assert_eq!(corners(&tri).len(), 3);
        let two = Instance::new(2, vec![rect(0., 0., 1., 1., 0), rect(3., 0., 4., 1., 1)]);
        assert_eq!(corners(&two).len(), 8);
        let touching = Instance::new(2, vec![rect(0., 0., 1., 1., 0), rect(1., 1., 2., 2., 1)]);
        let idx = corner_index(&touching);
        assert_eq!(idx.len(), 7);
        assert_eq!(idx[&pt(1., 1.)].len(), 2);
    }

    #[test]
    fn freeness_examples() {
        let inst = Instance::new(2, vec![rect(0., 0., 1., 1., 0), rect(3., 0., 4., 1., 1)]);
        assert!(is_free(&seg(0., 0., 1., 0.), &inst));
        assert!(!is_free(&seg(0., 0., 1., 1.), &inst));
        assert!(is_free(&seg(1., 0., 3., 0.), &inst));
        // passes through the second square
        assert!(!is_free(&seg(1., 0., 4., 1.), &inst));
    }

    #[test]
    fn triangle_and_quad_keep_only_edges() {
        let tri = Instance::new(1, vec![Polygon::new(vec![pt(0., 0.), pt(3., 0.), pt(0., 4.)], 0)]);
        assert_eq!(free_segments(&tri).len(), 3);
        let quad = Instance::new(
            1,
            vec![Polygon::new(vec![pt(0., 0.), pt(2., 0.), pt(3., 2.), pt(0., 1.)], 0)],
        );
        assert_eq!(free_segments(&quad).len(), 4);
    }

    #[test]
    fn collinear_split_is_elementary() {
        let pieces = split_collinear(vec![seg(0., 0., 3., 0.), seg(1., 0., 2., 0.), seg(2., 0., 1., 0.)]);
        assert_eq!(
            pieces,
            vec![seg(0., 0., 1., 0.), seg(1., 0., 2., 0.), seg(2., 0., 3., 0.)]
        );
        // gaps are not filled
        let pieces = split_collinear(vec![seg(0., 0., 1., 0.), seg(2., 0., 3., 0.)]);
        assert_eq!(pieces.len(), 2);
    }

    /// Independent filter: sample points along every corner pair.
    #[test]
    fn two_squares_matches_pairwise_filter() {
        let inst = Instance::new(2, vec![rect(0., 0., 1., 1., 0), rect(3., 0., 4., 1., 1)]);
        let set = free_segments(&inst);
        let pts = corners(&inst);
        let mut expected = Vec::new();
        for i in 0..pts.len() {
            for j in (i + 1)..pts.len() {
                let s = Segment::new(pts[i].clone(), pts[j].clone());
                // Free iff no point at parameter k/64 (k = 1..63) is strictly inside a square.
                let (ax, ay) = s.a.to_f64();
                let (bx, by) = s.b.to_f64();
                let blocked = (1..64).any(|k| {
                    let t = k as f64 / 64.0;
                    let (x, y) = (ax + t * (bx - ax), ay + t * (by - ay));
                    (0.0 < x && x < 1.0 && 0.0 < y && y < 1.0)
                        || (3.0 < x && x < 4.0 && 0.0 < y && y < 1.0)
                });
                if !blocked {
                    expected.push(s);
                }
            }
        }
        // The only collinear chains are the lines y = 0 and y = 1 through both squares.
        let expected = split_collinear(expected);
        assert_eq!(set.segments, expected);
        for (i, s) in set.segments.iter().enumerate() {
            for t in &set.segments[i + 1..] {
                assert!(!matches!(segment_intersection(s, t), Intersection::Overlap(_)));
            }
        }
    }

    #[test]
    fn invariant_under_object_permutation() {
        let a = rect(0., 0., 1., 1., 0);
        let b = Polygon::new(vec![pt(2., 0.), pt(3., 0.5), pt(2., 2.)], 1);
        let c = rect(0., 3., 2., 4., 0);
        let s1 = free_segments(&Instance::new(2, vec![a.clone(), b.clone(), c.clone()]));
        let s2 = free_segments(&Instance::new(2, vec![c, a, b]));
        assert_eq!(s1.segments, s2.segments);
    }
}
