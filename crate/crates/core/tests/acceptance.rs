//! Acceptance run: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::time::Instant;

use geomcut::cut::{
    brute_force_labeling, exact_labeling, isolation_heuristic, lagrangian_bound,
    max_flow_min_cut, DEFAULT_ORACLE_BUDGET,
};
use geomcut::dual::{add_apexes, DualGraph};
use geomcut::error::Error;
use geomcut::fence::validate_fence;
use geomcut::generators::{gen_lower_bound, gen_random, GeneratorParams};
use geomcut::geom::{Instance, Point, Polygon, Segment};
use geomcut::solver::{compact_colors, prepare, solve, solve_two_color, Method};
use geomcut::steiner::{brute_force_duplication, min_duplication, parity_ok, parse_tree, WeightedTree};

const REL: f64 = 1e-9;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= REL * a.abs().max(b.abs()).max(1.0)
}

fn rect(x0: i64, y0: i64, x1: i64, y1: i64, color: usize) -> Polygon {
    let p = Point::from_ints;
    Polygon::new(vec![p(x0, y0), p(x1, y0), p(x1, y1), p(x0, y1)], color)
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn random(seed: u64, objects: usize, colors: usize) -> Instance {
    gen_random(&GeneratorParams {
        seed,
        num_objects: objects,
        num_colors: colors,
        ..GeneratorParams::default()
    })
    .expect("generator")
}

/// Seeded two-color instances with at most 20 corners and 25 dual nodes.
fn two_color_corpus(count: usize) -> Vec<(u64, Instance, DualGraph)> {
    let mut out = Vec::new();
    let mut seed = 0;
    while out.len() < count {
        let inst = random(seed, 2 + (seed % 3) as usize, 2);
        if inst.num_corners() <= 20 {
            let g = compact_colors(&prepare(&inst).expect("prepare").dual);
            if g.num_nodes <= 25 {
                out.push((seed, inst, g));
            }
        }
        seed += 1;
    }
    out
}

/// Seeded three-color instances small enough for exhaustive labeling.
fn three_color_corpus(count: usize) -> Vec<(u64, Instance, DualGraph)> {
    let mut out = Vec::new();
    let mut seed = 0;
    while out.len() < count {
        let inst = random(seed, 3 + (seed % 2) as usize, 3);
        let g = compact_colors(&prepare(&inst).expect("prepare").dual);
        let free = g.num_nodes - g.terminals.values().map(BTreeSet::len).sum::<usize>();
        if 3u128.checked_pow(free as u32).is_some_and(|s| s <= DEFAULT_ORACLE_BUDGET) {
            out.push((seed, inst, g));
        }
        seed += 1;
    }
    out
}

fn criterion_1(max_secs: &mut f64) -> Outcome {
    let corpus = two_color_corpus(100);
    for (seed, _, g) in &corpus {
        let start = Instant::now();
        let mf = max_flow_min_cut(g, &g.terminals[&0], &g.terminals[&1]).expect("max flow");
        let bf = brute_force_labeling(g, 2, DEFAULT_ORACLE_BUDGET).expect("oracle");
        let secs = start.elapsed().as_secs_f64();
        *max_secs = max_secs.max(secs);
        if !close(mf.value, bf.value) || !mf.is_separating(g) || secs >= 10.0 {
            return outcome(
                false,
                format!("seed {seed}: flow {} oracle {} in {secs:.2}s", mf.value, bf.value),
            );
        }
    }
    outcome(
        true,
        format!(
            "{} instances, max-flow = brute force within 1e-9, slowest {:.3}s",
            corpus.len(),
            max_secs
        ),
    )
}

fn criterion_2() -> Outcome {
    let inst = Instance::new(2, vec![rect(0, 0, 1, 1, 0), rect(3, 0, 4, 1, 1)]);
    let f = solve_two_color(&inst).expect("solve");
    let pass = (f.total_length - 4.0).abs() <= 1e-9 && f.is_closed() && f.num_components() == 1;
    outcome(
        pass,
        format!(
            "total_length {:.9}, {} segments, closed {}, pieces {}",
            f.total_length,
            f.segments.len(),
            f.is_closed(),
            f.num_components()
        ),
    )
}

fn criterion_3() -> Outcome {
    let corpus = three_color_corpus(50);
    let bound = 2.0 - 2.0 / 3.0 + 1e-9;
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for (seed, _, g) in &corpus {
        let iso = isolation_heuristic(&add_apexes(g, 3)).expect("isolation");
        let bf = brute_force_labeling(g, 3, DEFAULT_ORACLE_BUDGET).expect("oracle");
        let ratio = iso.value / bf.value;
        lo = lo.min(ratio);
        hi = hi.max(ratio);
        if !(ratio >= 1.0 - 1e-9 && ratio <= bound) || !iso.is_separating(g) {
            return outcome(false, format!("seed {seed}: ratio {ratio}"));
        }
    }
    outcome(
        true,
        format!("{} instances, isolation/oracle in [{lo:.6}, {hi:.6}]", corpus.len()),
    )
}

fn lower_bound_value(grid_k: usize) -> (DualGraph, f64) {
    let inst = gen_lower_bound(grid_k, 0.01).expect("generator");
    let g = compact_colors(&prepare(&inst).expect("prepare").dual);
    let f_star = 2.0 * (grid_k * grid_k) as f64 * 3.0 + 2.0 * grid_k as f64 * 3f64.sqrt();
    (g, f_star)
}

/// `edge color flow` per line.
fn read_flows(name: &str) -> Vec<(usize, usize, f64)> {
    let path = format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("{path}: {e}"))
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let mut it = l.split_whitespace();
            let mut next = || it.next().expect("three fields");
            (next().parse().unwrap(), next().parse().unwrap(), next().parse().unwrap())
        })
        .collect()
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let (g1, f_star_1) = lower_bound_value(1);
    let refused = matches!(
        brute_force_labeling(&g1, 3, DEFAULT_ORACLE_BUDGET),
        Err(Error::TooLarge { .. })
    );
    let exact = exact_labeling(&g1, 3, DEFAULT_ORACLE_BUDGET).expect("exact");
    let secs = start.elapsed().as_secs_f64();
    let f_a_paper = 6.0 * 3f64.sqrt();
    let dev = (exact.value - f_a_paper).abs() / f_a_paper;
    let ratio_1 = exact.value / f_star_1;
    let k1_pass = dev <= 0.05 && ratio_1 > 1.05 && secs < 60.0 && exact.is_separating(&g1);

    // grid_k = 2 is far beyond exact search. Bracket the optimum: above by
    // the isolation heuristic, below by half the sum of all isolating cuts and
    // by the flow certificate in tests/data (solved offline as the linear
    // relaxation, checked here by weak duality).
    let (g2, f_star_2) = lower_bound_value(2);
    let ag = add_apexes(&g2, 3);
    let upper = isolation_heuristic(&ag).expect("isolation").value;
    let iso_sum: f64 = (0..3)
        .map(|c| {
            let others: BTreeSet<usize> = (0..3)
                .filter(|&o| o != c)
                .flat_map(|o| g2.terminals[&o].iter().copied())
                .collect();
            max_flow_min_cut(&g2, &g2.terminals[&c], &others).expect("flow").value
        })
        .sum();
    let certified = lagrangian_bound(&g2, 3, &read_flows("lower_bound_grid2.flows")).expect("flows");
    let lower = (iso_sum / 2.0).max(certified);
    let (r2_lo, r2_hi) = (lower / f_star_2, upper / f_star_2);
    let trend = if r2_lo > ratio_1 {
        "increases (certified)"
    } else if r2_hi <= ratio_1 {
        "does not increase"
    } else {
        "undecided"
    };
    outcome(
        k1_pass && r2_lo > ratio_1,
        format!(
            "grid 1: F_A {:.6} ({:.2}% from 6*sqrt(3)), ratio {:.4} vs 6+2*sqrt(3), {secs:.1}s, \
             exhaustive labeling refused: {refused}; grid 2: {} dual nodes, F_A in [{lower:.6}, {upper:.6}], ratio in [{r2_lo:.4}, {r2_hi:.4}], trend {trend}",
            exact.value,
            100.0 * dev,
            ratio_1,
            g2.num_nodes
        ),
    )
}

fn criterion_5() -> Outcome {
    let mut checked = 0;
    for seed in 0..200u64 {
        let leaves = 2 + (seed % 6) as usize;
        let t = WeightedTree::random(seed, leaves, 10.0).expect("tree");
        let dp = min_duplication(&t);
        let bf = brute_force_duplication(&t).expect("oracle");
        if !close(dp.cost, bf.cost)
            || dp.cost > t.total_length() / 3.0 + 1e-9
            || !parity_ok(&t, &dp.duplicated)
            || t.num_edges() > 12
        {
            return outcome(false, format!("seed {seed}: dp {} oracle {}", dp.cost, bf.cost));
        }
        checked += 1;
    }
    let k13 = min_duplication(&parse_tree("(L:1,L:1):1").expect("tree")).cost;
    outcome(
        k13 == 1.0,
        format!("{checked} trees agree with exhaustive search and stay under |T|/3; K1,3 cost {k13}"),
    )
}

fn criterion_6() -> Outcome {
    let mut instances: Vec<Instance> = two_color_corpus(30).into_iter().map(|c| c.1).collect();
    instances.extend(three_color_corpus(20).into_iter().map(|c| c.1));
    instances.push(gen_lower_bound(1, 0.01).expect("generator"));
    let mut fences = 0;
    for (i, inst) in instances.iter().enumerate() {
        let p = prepare(inst).expect("prepare");
        let a = &p.arrangement;
        if a.euler_characteristic() != 1 + a.num_components as i64 {
            return outcome(false, format!("instance {i}: Euler characteristic"));
        }
        let seg_len = p.segments.total_length();
        if !close(p.dual.total_weight(), seg_len) || !close(a.total_edge_length(), seg_len) {
            return outcome(false, format!("instance {i}: dual weight vs segment length"));
        }
        let methods: &[Method] = if inst.used_colors().len() <= 2 {
            &[Method::Exact2, Method::Isolation]
        } else {
            &[Method::Isolation, Method::Exact]
        };
        for &m in methods {
            let sol = solve(inst, m, DEFAULT_ORACLE_BUDGET).expect("solve");
            if !validate_fence(inst, &sol.fence).valid {
                return outcome(false, format!("instance {i}: {m} fence rejected"));
            }
            if sol.cut.edges.iter().any(|&e| e >= p.dual.edges.len()) {
                return outcome(false, format!("instance {i}: apex edge in {m} cut"));
            }
            fences += 1;
        }
    }
    outcome(
        true,
        format!(
            "{} arrangements satisfy V-E+F=1+C and weight = length; {fences} fences validated; no apex edges",
            instances.len()
        ),
    )
}

fn criterion_7() -> Outcome {
    let single = solve(&Instance::new(2, vec![rect(0, 0, 1, 1, 0)]), Method::Auto, 0).expect("solve");
    let mono = solve(
        &Instance::new(2, vec![rect(0, 0, 1, 1, 0), rect(3, 0, 4, 1, 0), rect(0, 3, 1, 4, 0)]),
        Method::Auto,
        0,
    )
    .expect("solve");
    // Shared edge x = 1, 0 <= y <= 1 (length 1), and a partially shared edge
    // x = 2, 0 <= y <= 1 against a taller neighbour.
    let touching = Instance::new(2, vec![rect(0, 0, 1, 1, 0), rect(1, 0, 2, 1, 1)]);
    let partial = Instance::new(2, vec![rect(0, 0, 2, 1, 0), rect(2, 0, 3, 3, 1)]);
    let shared_ok = |inst: &Instance, x: i64| {
        let f = solve_two_color(inst).expect("solve");
        let wall = Segment::new(Point::from_ints(x, 0), Point::from_ints(x, 1));
        let covered: f64 = f
            .segments
            .iter()
            .filter(|s| wall.contains(&s.a) && wall.contains(&s.b))
            .map(Segment::length)
            .sum();
        (covered >= 1.0 - 1e-9 && f.total_length >= 1.0, f.total_length)
    };
    let (t_ok, t_len) = shared_ok(&touching, 1);
    let (p_ok, p_len) = shared_ok(&partial, 2);
    let pass = single.fence.is_empty()
        && single.fence.total_length == 0.0
        && mono.fence.is_empty()
        && mono.fence.total_length == 0.0
        && t_ok
        && p_ok;
    outcome(
        pass,
        format!(
            "single object {:.9}, one color {:.9}, shared edge L=1 fenced at cost {t_len:.9} and {p_len:.9}",
            single.fence.total_length, mono.fence.total_length
        ),
    )
}

fn criterion_8(max_secs: f64) -> Outcome {
    outcome(
        max_secs < 10.0,
        format!(
            "hardness and asymptotic running time not reproduced; exactness covered by criterion 1, \
             soft time cap met (slowest oracle instance {max_secs:.3}s < 10s)"
        ),
    )
}

fn main() {
    let mut max_secs = 0.0;
    let results = vec![
        ("oracle equivalence, two colors", criterion_1(&mut max_secs)),
        ("two-squares benchmark", criterion_2()),
        ("approximation ratio, three colors", criterion_3()),
        ("lower-bound instance", criterion_4()),
        ("steiner duplication", criterion_5()),
        ("structural invariants", criterion_6()),
        ("degenerate cases", criterion_7()),
        ("non-goals", criterion_8(max_secs)),
    ];
    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {} [{name}]: {tag} - {}", i + 1, o.detail);
        failed += usize::from(!o.pass);
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
