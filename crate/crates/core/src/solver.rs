//! End-to-end pipeline: instance to fence.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::arrangement::{build_arrangement, locate_object_faces, Arrangement};
use crate::cut::{
    brute_force_labeling, exact_labeling, isolation_heuristic, max_flow_min_cut, Cut,
};
use crate::dual::{add_apexes, build_dual, DualGraph};
use crate::error::{Error, Result};
use crate::fence::{extract_fence, Fence};
use crate::geom::{validate_instance, Instance};
use crate::visibility::{free_segments, SegmentSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// `Exact2` for at most two colors, `Isolation` otherwise.
    Auto,
    /// Max-flow min-cut; optimal, two colors only.
    Exact2,
    /// Isolation heuristic; within `2 - 2/k` of optimal.
    Isolation,
    /// Exhaustive labeling; optimal, small instances only.
    BruteForce,
    /// Contraction plus variable elimination; optimal, moderate instances.
    Exact,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Exact2 => "exact2",
            Method::Isolation => "isolation",
            Method::BruteForce => "bruteforce",
            Method::Exact => "exact",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        [
            Method::Auto,
            Method::Exact2,
            Method::Isolation,
            Method::BruteForce,
            Method::Exact,
        ]
        .into_iter()
        .find(|m| m.name() == s)
        .ok_or_else(|| format!("unknown method {s:?}"))
    }
}

/// Geometry shared by all solvers.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub segments: SegmentSet,
    pub arrangement: Arrangement,
    pub dual: DualGraph,
}

pub fn prepare(inst: &Instance) -> Result<Prepared> {
    let segments = free_segments(inst);
    let arrangement = build_arrangement(&segments)?;
    let arrangement = locate_object_faces(&arrangement, inst)?;
    let dual = build_dual(&arrangement, inst);
    Ok(Prepared {
        segments,
        arrangement,
        dual,
    })
}

#[derive(Clone, Debug)]
pub struct Solution {
    /// Absent when there was nothing to separate.
    pub prepared: Option<Prepared>,
    pub cut: Cut,
    pub fence: Fence,
    /// The method that actually ran (`Auto` resolved).
    pub method: Method,
}

/// The dual with empty color classes dropped and the rest renumbered `0..k'`.
pub fn compact_colors(g: &DualGraph) -> DualGraph {
    let terminals: BTreeMap<usize, _> = g
        .terminals
        .values()
        .filter(|t| !t.is_empty())
        .cloned()
        .enumerate()
        .collect();
    DualGraph {
        num_nodes: g.num_nodes,
        edges: g.edges.clone(),
        terminals,
    }
}

fn run_method(g: &DualGraph, method: Method, budget: u128) -> Result<Cut> {
    let k = g.num_colors();
    match method {
        Method::Auto => unreachable!("resolved by the caller"),
        Method::Exact2 => {
            if k > 2 {
                return Err(Error::MethodMismatch {
                    method: "exact2",
                    requirement: format!("at most 2 colors, found {k}"),
                });
            }
            match (g.terminals.get(&0), g.terminals.get(&1)) {
                (Some(a), Some(b)) => max_flow_min_cut(g, a, b),
                _ => Ok(Cut::empty()),
            }
        }
        Method::Isolation => isolation_heuristic(&add_apexes(g, k)),
        Method::BruteForce => brute_force_labeling(g, k, budget),
        Method::Exact => exact_labeling(g, k, budget),
    }
}

/// Solves a validated instance with `method`; `budget` bounds the exhaustive solvers.
pub fn solve(inst: &Instance, method: Method, budget: u128) -> Result<Solution> {
    let report = validate_instance(inst);
    if !report.is_valid() {
        return Err(Error::InvalidInstance(report.to_string().trim_end().to_string()));
    }
    let k = inst.used_colors().len();
    let method = match method {
        Method::Auto if k <= 2 => Method::Exact2,
        Method::Auto => Method::Isolation,
        m => m,
    };
    if method == Method::Exact2 && k > 2 {
        return Err(Error::MethodMismatch {
            method: "exact2",
            requirement: format!("at most 2 colors, found {k}"),
        });
    }
    if k <= 1 {
        return Ok(Solution {
            prepared: None,
            cut: Cut::empty(),
            fence: Fence::empty(),
            method,
        });
    }
    let prepared = prepare(inst)?;
    let g = compact_colors(&prepared.dual);
    let cut = run_method(&g, method, budget)?;
    if !cut.is_separating(&g) {
        return Err(Error::Internal(format!("{method} returned a non-separating cut")));
    }
    let fence = extract_fence(&prepared.arrangement, &prepared.dual, &cut)?;
    Ok(Solution {
        prepared: Some(prepared),
        cut,
        fence,
        method,
    })
}

/// Optimal fence for an instance with at most two colors.
pub fn solve_two_color(inst: &Instance) -> Result<Fence> {
    solve(inst, Method::Exact2, 0).map(|s| s.fence)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cut::DEFAULT_ORACLE_BUDGET;
    use crate::fence::validate_fence;
    use crate::geom::test_util::*;

    #[test]
    fn single_square_needs_no_fence() {
        let inst = Instance::new(2, vec![rect(0., 0., 1., 1., 0)]);
        let f = solve_two_color(&inst).unwrap();
        assert!(f.is_empty());
        assert_eq!(f.total_length, 0.0);
    }

    #[test]
    fn two_squares() {
        let inst = Instance::new(2, vec![rect(0., 0., 1., 1., 0), rect(3., 0., 4., 1., 1)]);
        let f = solve_two_color(&inst).unwrap();
        assert!((f.total_length - 4.0).abs() < 1e-9);
        assert!(f.is_closed());
        assert_eq!(f.num_components(), 1);
        assert!(validate_fence(&inst, &f).valid);
        let bf = solve(&inst, Method::BruteForce, DEFAULT_ORACLE_BUDGET).unwrap();
        assert!((bf.cut.value - 4.0).abs() < 1e-9);
    }

    #[test]
    fn method_selection() {
        let three = Instance::new(
            3,
            vec![rect(0., 0., 1., 1., 0), rect(3., 0., 4., 1., 1), rect(0., 3., 1., 4., 2)],
        );
        assert!(matches!(
            solve(&three, Method::Exact2, 0),
            Err(Error::MethodMismatch { .. })
        ));
        let s = solve(&three, Method::Auto, 0).unwrap();
        assert_eq!(s.method, Method::Isolation);
        assert!((s.cut.value - 8.0).abs() < 1e-9);
        assert!(validate_fence(&three, &s.fence).valid);
        let ex = solve(&three, Method::Exact, DEFAULT_ORACLE_BUDGET).unwrap();
        assert!((ex.cut.value - 8.0).abs() < 1e-9);
        assert_eq!("bruteforce".parse::<Method>(), Ok(Method::BruteForce));
        assert!("fast".parse::<Method>().is_err());
    }

    #[test]
    fn unused_color_is_dropped() {
        let inst = Instance::new(3, vec![rect(0., 0., 1., 1., 0), rect(3., 0., 4., 1., 2)]);
        let s = solve(&inst, Method::Isolation, 0).unwrap();
        assert!((s.cut.value - 4.0).abs() < 1e-9);
    }

    #[test]
    fn invalid_instance_rejected() {
        let inst = Instance::new(2, vec![rect(0., 0., 2., 2., 0), rect(1., 1., 3., 3., 1)]);
        assert!(matches!(solve_two_color(&inst), Err(Error::InvalidInstance(_))));
    }
}
