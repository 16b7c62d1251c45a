//! Benchmark instances.

use std::f64::consts::PI;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::{interiors_overlap, Instance, Point, Polygon, Rational};

/// Denominator used when snapping irrational coordinates to rationals.
pub const SNAP_DENOMINATOR: i64 = 1_000_000_000;

/// Attempts per object before random generation gives up.
pub const REJECTION_BUDGET: usize = 2_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    LowerBound,
    Random,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorParams {
    pub kind: GeneratorKind,
    pub grid_k: usize,
    pub thickness: f64,
    pub seed: u64,
    pub num_objects: usize,
    pub num_colors: usize,
    pub coordinate_range: i64,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        GeneratorParams {
            kind: GeneratorKind::Random,
            grid_k: 1,
            thickness: 0.01,
            seed: 0,
            num_objects: 3,
            num_colors: 2,
            coordinate_range: 12,
        }
    }
}

pub fn generate(params: &GeneratorParams) -> Result<Instance> {
    match params.kind {
        GeneratorKind::LowerBound => gen_lower_bound(params.grid_k, params.thickness),
        GeneratorKind::Random => gen_random(params),
    }
}

fn snap(v: f64) -> Rational {
    let scaled = (v * SNAP_DENOMINATOR as f64).round() as i64;
    Rational::new(BigInt::from(scaled), BigInt::from(SNAP_DENOMINATOR))
}

fn snap_point(x: f64, y: f64) -> Point {
    Point::new(snap(x), snap(y))
}

/// Rhombic `grid_k x grid_k` patch of `2 grid_k^2` equilateral triangles with
/// side `sqrt(3)`. Each triangle carries one thin rectangle per side, inset
/// from the side by `thickness` and shortened at both ends so neighbours in the
/// same triangle stay apart. Rectangles are colored by side direction
/// (0 deg, 60 deg, 120 deg), so the two rectangles along a shared side agree.
pub fn gen_lower_bound(grid_k: usize, thickness: f64) -> Result<Instance> {
    if grid_k == 0 {
        return Err(Error::InvalidInstance("grid_k must be at least 1".into()));
    }
    if !(thickness > 0.0 && thickness <= 0.05) {
        return Err(Error::BadThickness(thickness.to_string()));
    }
    let side = 3f64.sqrt();
    let lattice = |i: usize, j: usize| -> (f64, f64) {
        (i as f64 * side + j as f64 * side / 2.0, j as f64 * 1.5)
    };
    let inset = thickness;
    // Shortening needed at a 60 degree corner is sqrt(3) * (inset + thickness).
    let end_cut = 2.0 * (inset + thickness);

    let mut objects = Vec::with_capacity(6 * grid_k * grid_k);
    for j in 0..grid_k {
        for i in 0..grid_k {
            let up = [lattice(i, j), lattice(i + 1, j), lattice(i, j + 1)];
            let down = [lattice(i + 1, j), lattice(i + 1, j + 1), lattice(i, j + 1)];
            for tri in [up, down] {
                for s in 0..3 {
                    let (a, b) = (tri[s], tri[(s + 1) % 3]);
                    let len = ((b.0 - a.0).powi(2) + (b.1 - a.1).powi(2)).sqrt();
                    let u = ((b.0 - a.0) / len, (b.1 - a.1) / len);
                    let n = (-u.1, u.0);
                    let at = |base: (f64, f64), along: f64, off: f64| {
                        snap_point(
                            base.0 + along * u.0 + off * n.0,
                            base.1 + along * u.1 + off * n.1,
                        )
                    };
                    let verts = vec![
                        at(a, end_cut, inset),
                        at(b, -end_cut, inset),
                        at(b, -end_cut, inset + thickness),
                        at(a, end_cut, inset + thickness),
                    ];
                    let angle = u.1.atan2(u.0).rem_euclid(PI);
                    let color = ((angle / (PI / 3.0)).round() as usize) % 3;
                    objects.push(Polygon::new(verts, color));
                }
            }
        }
    }
    Ok(Instance::new(3, objects))
}

fn convex_hull(mut pts: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    pts.sort_unstable();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut hull: Vec<(i64, i64)> = Vec::with_capacity(pts.len() * 2);
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &(i64, i64)>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

fn random_shape(rng: &mut ChaCha8Rng, range: i64, color: usize) -> Option<Polygon> {
    if rng.gen_bool(0.5) {
        let max_side = (range / 4).max(1);
        let w = rng.gen_range(1..=max_side);
        let h = rng.gen_range(1..=max_side);
        let x = rng.gen_range(0..=range - w);
        let y = rng.gen_range(0..=range - h);
        let verts = [(x, y), (x + w, y), (x + w, y + h), (x, y + h)];
        Some(Polygon::new(
            verts.iter().map(|&(a, b)| Point::from_ints(a, b)).collect(),
            color,
        ))
    } else {
        let size = (range / 3).max(2);
        let x0 = rng.gen_range(0..=range - size);
        let y0 = rng.gen_range(0..=range - size);
        let n = rng.gen_range(3..=5);
        let pts: Vec<(i64, i64)> = (0..n)
            .map(|_| (x0 + rng.gen_range(0..=size), y0 + rng.gen_range(0..=size)))
            .collect();
        let hull = convex_hull(pts);
        (hull.len() >= 3).then(|| {
            Polygon::new(
                hull.iter().map(|&(a, b)| Point::from_ints(a, b)).collect(),
                color,
            )
        })
    }
}

/// Seeded random instance of axis-aligned rectangles and small convex
/// polygons with integer corners in `[0, coordinate_range]`, rejection-sampled
/// until interiors are pairwise disjoint. Object `i` gets color `i % num_colors`.
pub fn gen_random(params: &GeneratorParams) -> Result<Instance> {
    if params.num_colors == 0 || params.num_colors > params.num_objects {
        return Err(Error::InvalidInstance(format!(
            "need 1 <= num_colors ({}) <= num_objects ({})",
            params.num_colors, params.num_objects
        )));
    }
    if params.coordinate_range < 2 {
        return Err(Error::InvalidInstance(
            "coordinate_range must be at least 2".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut objects: Vec<Polygon> = Vec::with_capacity(params.num_objects);
    for i in 0..params.num_objects {
        let color = i % params.num_colors;
        let mut attempts = 0;
        loop {
            attempts += 1;
            if attempts > REJECTION_BUDGET {
                return Err(Error::GenerationTimeout(REJECTION_BUDGET));
            }
            let Some(cand) = random_shape(&mut rng, params.coordinate_range, color) else {
                continue;
            };
            if objects.iter().all(|o| !interiors_overlap(o, &cand)) {
                objects.push(cand);
                break;
            }
        }
    }
    Ok(Instance::new(params.num_colors, objects))
}
