//! Fences: the geometric side of a cut.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::Write;

use crate::arrangement::{build_from_segments, locate_object_faces, Arrangement};
use crate::cut::Cut;
use crate::dual::DualGraph;
use crate::error::{Error, Result};
use crate::geom::{Instance, Point, Segment};
use crate::visibility::split_collinear;

#[derive(Clone, Debug, PartialEq)]
pub struct Fence {
    /// Arrangement edges, canonical and sorted.
    pub segments: Vec<Segment>,
    pub total_length: f64,
    pub source_cut: Option<Cut>,
}

impl Fence {
    pub fn empty() -> Fence {
        Fence {
            segments: Vec::new(),
            total_length: 0.0,
            source_cut: None,
        }
    }

    pub fn from_segments(mut segments: Vec<Segment>) -> Fence {
        segments = segments.iter().map(Segment::canonical).collect();
        segments.sort();
        segments.dedup();
        let total_length = segments.iter().map(Segment::length).sum();
        Fence {
            segments,
            total_length,
            source_cut: None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// Number of fence segments at each endpoint.
    pub fn vertex_degrees(&self) -> BTreeMap<&Point, usize> {
        let mut deg = BTreeMap::new();
        for s in &self.segments {
            *deg.entry(&s.a).or_insert(0) += 1;
            *deg.entry(&s.b).or_insert(0) += 1;
        }
        deg
    }

    /// Whether the fence is a union of closed curves (all degrees even).
    pub fn is_closed(&self) -> bool {
        self.vertex_degrees().values().all(|d| d % 2 == 0)
    }

    /// Number of connected pieces of the fence.
    pub fn num_components(&self) -> usize {
        let deg = self.vertex_degrees();
        let ids: BTreeMap<&Point, usize> = deg.keys().enumerate().map(|(i, p)| (*p, i)).collect();
        let mut uf = UnionFind::new(ids.len());
        for s in &self.segments {
            uf.union(ids[&s.a], ids[&s.b]);
        }
        (0..ids.len()).filter(|&i| uf.find(i) == i).count()
    }

    /// Segments chained into maximal walks; closed walks repeat their first point.
    pub fn polylines(&self) -> Vec<Vec<Point>> {
        let mut adj: BTreeMap<&Point, Vec<usize>> = BTreeMap::new();
        for (i, s) in self.segments.iter().enumerate() {
            adj.entry(&s.a).or_default().push(i);
            adj.entry(&s.b).or_default().push(i);
        }
        let mut used = vec![false; self.segments.len()];
        let mut out = Vec::new();
        let odd: Vec<&Point> = adj
            .iter()
            .filter(|(_, es)| es.len() % 2 == 1)
            .map(|(p, _)| *p)
            .collect();
        let starts: Vec<&Point> = odd.into_iter().chain(adj.keys().copied()).collect();
        for start in starts {
            loop {
                let mut at = start;
                let mut line = vec![at.clone()];
                while let Some(&e) = adj[at].iter().find(|&&e| !used[e]) {
                    used[e] = true;
                    let s = &self.segments[e];
                    at = if &s.a == at { &s.b } else { &s.a };
                    line.push(at.clone());
                }
                if line.len() < 2 {
                    break;
                }
                out.push(line);
            }
        }
        out
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// The arrangement edges behind a cut on this arrangement's dual.
pub fn extract_fence(arr: &Arrangement, dual: &DualGraph, cut: &Cut) -> Result<Fence> {
    let mut ids = BTreeSet::new();
    for &e in &cut.edges {
        let de = dual.edges.get(e).ok_or(Error::ProvenanceMismatch(e))?;
        for &a in &de.provenance {
            if a >= arr.edges.len() {
                return Err(Error::ProvenanceMismatch(e));
            }
            ids.insert(a);
        }
    }
    let mut segments: Vec<Segment> = ids.iter().map(|&a| arr.edge_segment(a).canonical()).collect();
    segments.sort();
    let total_length = ids.iter().map(|&a| arr.edges[a].length).sum();
    Ok(Fence {
        segments,
        total_length,
        source_cut: Some(cut.clone()),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeparationReport {
    pub valid: bool,
    /// One object pair per offending region: two objects of different
    /// colors reachable from each other without crossing the fence.
    pub violations: Vec<(usize, usize)>,
    /// Set when the check itself could not run (e.g. a fence segment cuts an object).
    pub note: Option<String>,
}

impl fmt::Display for SeparationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid {
            writeln!(f, "valid")?;
        } else {
            writeln!(f, "invalid")?;
        }
        for (a, b) in &self.violations {
            writeln!(f, "objects {a} and {b} are not separated")?;
        }
        if let Some(n) = &self.note {
            writeln!(f, "{n}")?;
        }
        Ok(())
    }
}

/// Checks separation from scratch: arrange the fence together with all
/// object edges, join faces across every non-fence edge, and look for a
/// region holding two colors.
pub fn validate_fence(inst: &Instance, fence: &Fence) -> SeparationReport {
    let invalid = |note: String| SeparationReport {
        valid: false,
        violations: Vec::new(),
        note: Some(note),
    };
    let mut pieces: Vec<Segment> = fence.segments.clone();
    for o in &inst.objects {
        pieces.extend(o.edges());
    }
    if pieces.is_empty() {
        return SeparationReport {
            valid: true,
            violations: Vec::new(),
            note: None,
        };
    }
    let pieces = split_collinear(pieces);
    let on_fence: Vec<bool> = pieces
        .iter()
        .map(|p| {
            let m = p.a.midpoint(&p.b);
            fence.segments.iter().any(|s| s.contains(&m))
        })
        .collect();
    let arr = match build_from_segments(&pieces) {
        Ok(a) => a,
        Err(e) => return invalid(format!("could not arrange fence: {e}")),
    };
    let arr = match locate_object_faces(&arr, inst) {
        Ok(a) => a,
        Err(e) => return invalid(format!("fence crosses an object: {e}")),
    };
    let mut uf = UnionFind::new(arr.faces.len());
    for (e, &(f, g)) in arr.edge_faces.iter().enumerate() {
        if !on_fence[arr.edges[e].source] {
            uf.union(f, g);
        }
    }
    // First object of each color per region.
    let mut regions: BTreeMap<usize, BTreeMap<usize, usize>> = BTreeMap::new();
    for (oi, obj) in inst.objects.iter().enumerate() {
        let face = arr.object_face(oi).expect("located above");
        regions
            .entry(uf.find(face))
            .or_default()
            .entry(obj.color())
            .or_insert(oi);
    }
    let mut violations: Vec<(usize, usize)> = regions
        .values()
        .filter(|by_color| by_color.len() > 1)
        .map(|by_color| {
            let mut objs: Vec<usize> = by_color.values().copied().collect();
            objs.sort_unstable();
            (objs[0], objs[1])
        })
        .collect();
    violations.sort_unstable();
    SeparationReport {
        valid: violations.is_empty(),
        violations,
        note: None,
    }
}

const PALETTE: [&str; 8] = [
    "#d62728", "#2ca02c", "#1f77b4", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

/// SVG drawing of the objects (filled by color) and the fence (black lines).
pub fn render_svg(inst: &Instance, fence: Option<&Fence>) -> String {
    let mut pts: Vec<(f64, f64)> = inst
        .objects
        .iter()
        .flat_map(|o| o.vertices().iter().map(Point::to_f64))
        .collect();
    if let Some(f) = fence {
        pts.extend(f.segments.iter().flat_map(|s| [s.a.to_f64(), s.b.to_f64()]));
    }
    let (mut x0, mut y0, mut x1, mut y1) = (0.0f64, 0.0f64, 1.0f64, 1.0f64);
    if let Some(&(x, y)) = pts.first() {
        (x0, y0, x1, y1) = (x, y, x, y);
        for &(x, y) in &pts {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
    }
    let span = (x1 - x0).max(y1 - y0);
    let margin = if span > 0.0 { 0.05 * span } else { 1.0 };
    let (w, h) = (x1 - x0 + 2.0 * margin, y1 - y0 + 2.0 * margin);
    // y axis points up in the instance, down in SVG
    let fy = |y: f64| 0.0 - y; // not -y, which prints -0.00
    let stroke = 0.004 * w.max(h);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{:.2} {:.2} {:.2} {:.2}\">\n",
        x0 - margin,
        fy(y1) - margin,
        w,
        h
    ));
    for o in &inst.objects {
        let mut d = String::new();
        for (i, v) in o.vertices().iter().enumerate() {
            let (x, y) = v.to_f64();
            d.push_str(&format!("{}{:.2} {:.2} ", if i == 0 { "M" } else { "L" }, x, fy(y)));
        }
        d.push('Z');
        out.push_str(&format!(
            "  <path d=\"{d}\" fill=\"{}\" stroke=\"none\"/>\n",
            PALETTE[o.color() % PALETTE.len()]
        ));
    }
    if let Some(f) = fence {
        for line in f.polylines() {
            let points: Vec<String> = line
                .iter()
                .map(|p| {
                    let (x, y) = p.to_f64();
                    format!("{:.2},{:.2}", x, fy(y))
                })
                .collect();
            out.push_str(&format!(
                "  <polyline points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"{:.2}\"/>\n",
                points.join(" "),
                stroke
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Renders to `sink` and returns the bytes written.
pub fn export_svg(inst: &Instance, fence: Option<&Fence>, sink: &mut dyn Write) -> Result<Vec<u8>> {
    let bytes = render_svg(inst, fence).into_bytes();
    sink.write_all(&bytes)
        .and_then(|_| sink.flush())
        .map_err(|e| Error::SinkWriteFailure(e.to_string()))?;
    Ok(bytes)
}
