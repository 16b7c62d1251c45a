//! Minimum and approximate multiterminal cuts on the dual graph.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rayon::prelude::*;

use crate::dual::{AugmentedGraph, DualGraph};
use crate::error::{Error, Result};

/// Default cap on the number of labelings (or table entries) an exhaustive solver may visit.
pub const DEFAULT_ORACLE_BUDGET: u128 = 1 << 25;

/// A set of dual edges whose removal separates differently colored terminals.
#[derive(Clone, Debug, PartialEq)]
pub struct Cut {
    pub edges: BTreeSet<usize>,
    pub value: f64,
    /// Per-node label, for solvers that produce one.
    pub labeling: Option<Vec<usize>>,
}

impl Cut {
    pub fn empty() -> Cut {
        Cut {
            edges: BTreeSet::new(),
            value: 0.0,
            labeling: None,
        }
    }

    pub fn from_edges(g: &DualGraph, edges: BTreeSet<usize>) -> Cut {
        let value = edges.iter().map(|&e| g.edges[e].weight).sum();
        Cut {
            edges,
            value,
            labeling: None,
        }
    }

    /// Cut made of every edge whose endpoints carry different labels.
    pub fn from_labeling(g: &DualGraph, labels: Vec<usize>) -> Cut {
        let edges = g
            .edges
            .iter()
            .enumerate()
            .filter(|(_, e)| labels[e.a] != labels[e.b])
            .map(|(i, _)| i)
            .collect();
        let mut cut = Cut::from_edges(g, edges);
        cut.labeling = Some(labels);
        cut
    }

    /// Whether removing the cut edges leaves no component holding two terminal colors.
    pub fn is_separating(&self, g: &DualGraph) -> bool {
        let colors = g.terminal_colors();
        let adj = g.adjacency();
        let mut seen = vec![false; g.num_nodes];
        for start in 0..g.num_nodes {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            let mut color: Option<usize> = None;
            while let Some(u) = queue.pop_front() {
                if let Some(c) = colors[u] {
                    match color {
                        Some(prev) if prev != c => return false,
                        _ => color = Some(c),
                    }
                }
                for &(v, e) in &adj[u] {
                    if !seen[v] && !self.edges.contains(&e) {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
        }
        true
    }
}

/// Dinic's algorithm on an undirected network with floating-point capacities.
struct FlowNetwork {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<f64>,
    eps: f64,
}

impl FlowNetwork {
    fn new(n: usize, eps: f64) -> Self {
        FlowNetwork {
            head: vec![Vec::new(); n],
            to: Vec::new(),
            cap: Vec::new(),
            eps,
        }
    }

    fn add_arc_pair(&mut self, u: usize, v: usize, forward: f64, backward: f64) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(forward);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(backward);
    }

    fn levels(&self, s: usize) -> Vec<usize> {
        let mut level = vec![usize::MAX; self.head.len()];
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.head[u] {
                let v = self.to[a];
                if self.cap[a] > self.eps && level[v] == usize::MAX {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        level
    }

    fn max_flow(&mut self, s: usize, t: usize) -> f64 {
        let mut total = 0.0;
        loop {
            let level = self.levels(s);
            if level[t] == usize::MAX {
                return total;
            }
            let mut it = vec![0usize; self.head.len()];
            loop {
                let pushed = self.augment(s, t, f64::INFINITY, &level, &mut it);
                if pushed <= self.eps {
                    break;
                }
                total += pushed;
            }
        }
    }

    /// One augmenting path in the level graph, iteratively.
    fn augment(&mut self, s: usize, t: usize, limit: f64, level: &[usize], it: &mut [usize]) -> f64 {
        let mut path: Vec<usize> = Vec::new();
        let mut u = s;
        loop {
            if u == t {
                let mut bottleneck = limit;
                for &a in &path {
                    bottleneck = bottleneck.min(self.cap[a]);
                }
                for &a in &path {
                    self.cap[a] -= bottleneck;
                    self.cap[a ^ 1] += bottleneck;
                }
                return bottleneck;
            }
            let mut advanced = false;
            while it[u] < self.head[u].len() {
                let a = self.head[u][it[u]];
                let v = self.to[a];
                if self.cap[a] > self.eps && level[v] == level[u] + 1 {
                    path.push(a);
                    u = v;
                    advanced = true;
                    break;
                }
                it[u] += 1;
            }
            if !advanced {
                // dead end: retreat
                match path.pop() {
                    Some(a) => {
                        u = self.to[a ^ 1];
                        it[u] += 1;
                    }
                    None => return 0.0,
                }
            }
        }
    }

    /// Nodes reachable from `s` through arcs with residual capacity.
    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.head[u] {
                let v = self.to[a];
                if self.cap[a] > self.eps && !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }
}

/// Min cut between two node sets over `extra` additional (apex) nodes and edges.
/// Returns the source-side reachable set over the first `n` nodes and the flow value.
fn min_cut_side(
    g: &DualGraph,
    extra_nodes: usize,
    extra_edges: &[(usize, usize, f64)],
    sources: &BTreeSet<usize>,
    sinks: &BTreeSet<usize>,
) -> (Vec<bool>, f64) {
    let n = g.num_nodes + extra_nodes;
    let total: f64 = g.total_weight() + extra_edges.iter().map(|e| e.2).sum::<f64>();
    let big = total + 1.0;
    let eps = 1e-13 * big;
    let mut net = FlowNetwork::new(n + 2, eps);
    for e in g.edges.iter().filter(|e| !e.is_loop()) {
        net.add_arc_pair(e.a, e.b, e.weight, e.weight);
    }
    for &(a, b, w) in extra_edges {
        net.add_arc_pair(a, b, w, w);
    }
    let (s, t) = (n, n + 1);
    for &v in sources {
        net.add_arc_pair(s, v, big, 0.0);
    }
    for &v in sinks {
        net.add_arc_pair(v, t, big, 0.0);
    }
    let flow = net.max_flow(s, t);
    let mut side = net.reachable(s);
    side.truncate(n);
    (side, flow)
}

fn check_duality(value: f64, flow: f64) -> Result<()> {
    if (value - flow).abs() > 1e-9 * value.abs().max(1.0) {
        return Err(Error::Internal(format!(
            "cut value {value} differs from flow value {flow}"
        )));
    }
    Ok(())
}

/// Exact minimum cut separating `sources` from `sinks`.
///
/// The cut is the set of edges leaving the residual-reachable set of the
/// sources; labeling marks that set with 0 and the rest with 1.
pub fn max_flow_min_cut(
    g: &DualGraph,
    sources: &BTreeSet<usize>,
    sinks: &BTreeSet<usize>,
) -> Result<Cut> {
    if let Some(&v) = sources.intersection(sinks).next() {
        return Err(Error::NoSeparationNeeded(v));
    }
    if sources.is_empty() || sinks.is_empty() {
        return Ok(Cut::empty());
    }
    let (side, flow) = min_cut_side(g, 0, &[], sources, sinks);
    let labels: Vec<usize> = side.iter().map(|&r| usize::from(!r)).collect();
    let cut = Cut::from_labeling(g, labels);
    check_duality(cut.value, flow)?;
    Ok(cut)
}

/// Isolation heuristic for multiway cut: for each color, the minimum cut
/// between its apex and all other apexes; keep the union of the `k - 1`
/// cheapest. Within `2 - 2/k` of optimal.
pub fn isolation_heuristic(ag: &AugmentedGraph) -> Result<Cut> {
    ag.require_nonempty()?;
    let k = ag.apex.len();
    if k < 2 {
        return Ok(Cut::empty());
    }
    let extra: Vec<(usize, usize, f64)> = ag
        .apex_edges()
        .into_iter()
        .map(|(a, t)| (a, t, ag.apex_weight))
        .collect();
    let g = &ag.base;
    let colors: Vec<usize> = ag.apex.keys().copied().collect();
    let mut isolating: Vec<(f64, usize, BTreeSet<usize>)> = colors
        .par_iter()
        .map(|&c| -> Result<(f64, usize, BTreeSet<usize>)> {
            let src = BTreeSet::from([ag.apex[&c]]);
            let snk: BTreeSet<usize> = colors
                .iter()
                .filter(|&&o| o != c)
                .map(|o| ag.apex[o])
                .collect();
            let (side, flow) = min_cut_side(g, k, &extra, &src, &snk);
            if extra.iter().any(|&(a, t, _)| side[a] != side[t]) {
                return Err(Error::Internal("apex edge in an isolating cut".into()));
            }
            let edges: BTreeSet<usize> = g
                .edges
                .iter()
                .enumerate()
                .filter(|(_, e)| side[e.a] != side[e.b])
                .map(|(i, _)| i)
                .collect();
            let value: f64 = edges.iter().map(|&e| g.edges[e].weight).sum();
            check_duality(value, flow)?;
            Ok((value, c, edges))
        })
        .collect::<Result<_>>()?;
    isolating.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let union: BTreeSet<usize> = isolating
        .iter()
        .take(k - 1)
        .flat_map(|(_, _, e)| e.iter().copied())
        .collect();
    Ok(Cut::from_edges(g, union))
}

/// Checks terminal colors against `k` and returns the per-node fixed color.
fn fixed_colors(g: &DualGraph, k: usize) -> Result<Vec<Option<usize>>> {
    let colors = g.terminal_colors();
    if let Some(c) = colors.iter().flatten().find(|&&c| c >= k) {
        return Err(Error::InvalidInstance(format!(
            "terminal color {c} outside 0..{k}"
        )));
    }
    Ok(colors)
}

fn labeling_cost(g: &DualGraph, labels: &[usize]) -> f64 {
    g.edges
        .iter()
        .filter(|e| labels[e.a] != labels[e.b])
        .map(|e| e.weight)
        .sum()
}

/// Exhaustive minimum over every labeling of the non-terminal nodes.
///
/// Visits labelings in reflected Gray-code order so each step relabels one
/// node. Refuses when `k^f` exceeds `budget`, `f` being the number of free nodes.
pub fn brute_force_labeling(g: &DualGraph, k: usize, budget: u128) -> Result<Cut> {
    let fixed = fixed_colors(g, k)?;
    let free: Vec<usize> = (0..g.num_nodes).filter(|&v| fixed[v].is_none()).collect();
    let f = free.len();
    let space = (k.max(1) as u128).checked_pow(f as u32);
    if space.is_none_or(|s| s > budget) {
        return Err(Error::TooLarge {
            free: f,
            labels: k,
            budget,
        });
    }
    let mut labels: Vec<usize> = fixed.iter().map(|c| c.unwrap_or(0)).collect();
    if k <= 1 || f == 0 {
        return Ok(Cut::from_labeling(g, labels));
    }
    let adj = g.adjacency();
    let weighted: Vec<Vec<(usize, f64)>> = free
        .iter()
        .map(|&u| adj[u].iter().map(|&(v, e)| (v, g.edges[e].weight)).collect())
        .collect();

    let mut cost = labeling_cost(g, &labels);
    let mut best = cost;
    let mut best_labels = labels.clone();
    let mut dir = vec![true; f];
    let mut steps: u64 = 0;
    loop {
        let mut j = 0;
        while j < f {
            let cur = labels[free[j]];
            let can = if dir[j] { cur + 1 < k } else { cur > 0 };
            if can {
                break;
            }
            dir[j] = !dir[j];
            j += 1;
        }
        if j == f {
            break;
        }
        let u = free[j];
        let old = labels[u];
        let new = if dir[j] { old + 1 } else { old - 1 };
        for &(v, w) in &weighted[j] {
            let lv = labels[v];
            if old == lv {
                cost += w;
            } else if new == lv {
                cost -= w;
            }
        }
        labels[u] = new;
        steps += 1;
        if steps & 0xffff == 0 {
            cost = labeling_cost(g, &labels);
        }
        if cost < best {
            best = cost;
            best_labels.copy_from_slice(&labels);
        }
    }
    Ok(Cut::from_labeling(g, best_labels))
}

/// Working copy of the dual graph for optimality-preserving contractions.
struct Reducer {
    adj: Vec<BTreeMap<usize, f64>>,
    alive: Vec<bool>,
    fixed: Vec<Option<usize>>,
    /// Node this one was merged into (itself while alive).
    parent: Vec<usize>,
}

impl Reducer {
    fn new(g: &DualGraph, fixed: Vec<Option<usize>>) -> Self {
        let mut adj = vec![BTreeMap::new(); g.num_nodes];
        for e in g.edges.iter().filter(|e| !e.is_loop()) {
            *adj[e.a].entry(e.b).or_insert(0.0) += e.weight;
            *adj[e.b].entry(e.a).or_insert(0.0) += e.weight;
        }
        Reducer {
            adj,
            alive: vec![true; g.num_nodes],
            fixed,
            parent: (0..g.num_nodes).collect(),
        }
    }

    /// Merges `u` into `v`; edges between them vanish since both share a label.
    fn merge(&mut self, u: usize, v: usize) {
        let nbrs = std::mem::take(&mut self.adj[u]);
        for (x, w) in nbrs {
            self.adj[x].remove(&u);
            if x != v {
                *self.adj[v].entry(x).or_insert(0.0) += w;
                *self.adj[x].entry(v).or_insert(0.0) += w;
            }
        }
        self.alive[u] = false;
        self.parent[u] = v;
    }

    fn root(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    /// Same-color terminals become one node; then two contractions run to a
    /// fixpoint, each keeping some optimal labeling intact:
    /// a free node whose heaviest edge carries at least half its incident
    /// weight joins that neighbour (relabeling it so never costs more), and
    /// the source side of each color's minimum isolating cut joins that
    /// color's terminal (uncrossing it with any optimal region never costs more).
    fn reduce(&mut self, k: usize) {
        let n = self.adj.len();
        let mut rep: Vec<usize> = Vec::new();
        let mut seen: Vec<Option<usize>> = vec![None; k];
        for v in 0..n {
            if let Some(c) = self.fixed[v] {
                match seen[c] {
                    Some(r) => self.merge(v, r),
                    None => {
                        seen[c] = Some(v);
                        rep.push(v);
                    }
                }
            }
        }
        self.contract_heavy((0..n).collect());
        if rep.len() < 2 {
            return;
        }
        loop {
            let mut touched = Vec::new();
            for &r in &rep {
                touched.extend(self.contract_isolated(r, &rep));
            }
            if touched.is_empty() {
                break;
            }
            self.contract_heavy(touched);
        }
    }

    /// Heavy-edge contraction starting from `start`; follows up on neighbours.
    fn contract_heavy(&mut self, start: Vec<usize>) {
        let n = self.adj.len();
        let mut queued = vec![false; n];
        let mut queue = VecDeque::new();
        for v in start {
            if self.alive[v] && self.fixed[v].is_none() && !queued[v] {
                queued[v] = true;
                queue.push_back(v);
            }
        }
        while let Some(u) = queue.pop_front() {
            queued[u] = false;
            if !self.alive[u] {
                continue;
            }
            let total: f64 = self.adj[u].values().sum();
            let heavy = self.adj[u]
                .iter()
                .max_by(|a, b| a.1.total_cmp(b.1).then(b.0.cmp(a.0)))
                .map(|(&v, &w)| (v, w));
            let Some((v, w)) = heavy else { continue };
            if 2.0 * w < total {
                continue;
            }
            let touched: Vec<usize> = self.adj[u].keys().copied().collect();
            self.merge(u, v);
            for x in touched {
                if self.alive[x] && self.fixed[x].is_none() && !queued[x] {
                    queued[x] = true;
                    queue.push_back(x);
                }
            }
        }
    }

    /// Merges the minimal source side of the min cut isolating terminal `r`
    /// from the other terminals into `r`. Returns the neighbours of the merged set.
    fn contract_isolated(&mut self, r: usize, reps: &[usize]) -> Vec<usize> {
        let n = self.adj.len();
        let total: f64 = self.adj.iter().flat_map(|a| a.values()).sum::<f64>() / 2.0;
        let big = total + 1.0;
        let mut net = FlowNetwork::new(n + 1, 1e-13 * big);
        for u in 0..n {
            for (&v, &w) in &self.adj[u] {
                if u < v {
                    net.add_arc_pair(u, v, w, w);
                }
            }
        }
        let t = n;
        for &o in reps.iter().filter(|&&o| o != r) {
            net.add_arc_pair(o, t, big, 0.0);
        }
        net.max_flow(r, t);
        let side = net.reachable(r);
        let members: Vec<usize> = (0..n).filter(|&v| side[v] && v != r).collect();
        let mut boundary = Vec::new();
        for &v in &members {
            boundary.extend(self.adj[v].keys().copied().filter(|x| !side[*x]));
            self.merge(v, r);
        }
        boundary
    }
}

/// A table over a set of variables, indexed in mixed radix `k` with the
/// first scope variable as least significant digit.
struct Factor {
    scope: Vec<usize>,
    table: Vec<f64>,
}

/// Greedy min-fill elimination order over the free interaction graph.
/// Returns the order and the largest neighbourhood met (the induced width).
fn elimination_order(free: &[usize], adj: &BTreeMap<usize, BTreeSet<usize>>) -> (Vec<usize>, usize) {
    let mut graph = adj.clone();
    let mut remaining: BTreeSet<usize> = free.iter().copied().collect();
    let mut order = Vec::with_capacity(free.len());
    let mut width = 0;
    while !remaining.is_empty() {
        let mut best: Option<(usize, usize, usize)> = None;
        for &v in &remaining {
            let nb = &graph[&v];
            let nbv: Vec<usize> = nb.iter().copied().collect();
            let mut fill = 0;
            for i in 0..nbv.len() {
                for j in (i + 1)..nbv.len() {
                    if !graph[&nbv[i]].contains(&nbv[j]) {
                        fill += 1;
                    }
                }
            }
            let key = (fill, nb.len(), v);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
        let (_, deg, v) = best.expect("nonempty");
        width = width.max(deg);
        let nb: Vec<usize> = graph[&v].iter().copied().collect();
        for i in 0..nb.len() {
            for j in (i + 1)..nb.len() {
                graph.get_mut(&nb[i]).unwrap().insert(nb[j]);
                graph.get_mut(&nb[j]).unwrap().insert(nb[i]);
            }
        }
        for x in &nb {
            graph.get_mut(x).unwrap().remove(&v);
        }
        graph.remove(&v);
        remaining.remove(&v);
        order.push(v);
    }
    (order, width)
}

/// Exact minimum-cost labeling for graphs beyond exhaustive reach.
///
/// Same optimum as [`brute_force_labeling`], computed by contracting nodes
/// that some optimal labeling never separates and then eliminating the
/// remaining free nodes one at a time (min-fill order), tabulating the best
/// cost of each eliminated node for every labeling of its neighbours.
/// Refuses when any table would exceed `budget` entries.
pub fn exact_labeling(g: &DualGraph, k: usize, budget: u128) -> Result<Cut> {
    let fixed = fixed_colors(g, k)?;
    if k <= 1 {
        let labels = vec![0; g.num_nodes];
        return Ok(Cut::from_labeling(g, labels));
    }
    let mut red = Reducer::new(g, fixed.clone());
    red.reduce(k);

    let free: Vec<usize> = (0..g.num_nodes)
        .filter(|&v| red.alive[v] && red.fixed[v].is_none())
        .collect();
    let mut inter: BTreeMap<usize, BTreeSet<usize>> =
        free.iter().map(|&v| (v, BTreeSet::new())).collect();
    let mut factors: Vec<Factor> = Vec::new();
    for &u in &free {
        let mut unary = vec![0.0; k];
        for (&v, &w) in &red.adj[u] {
            match red.fixed[v] {
                Some(c) => {
                    for (l, slot) in unary.iter_mut().enumerate() {
                        if l != c {
                            *slot += w;
                        }
                    }
                }
                None => {
                    inter.get_mut(&u).unwrap().insert(v);
                    if u < v {
                        let mut table = vec![w; k * k];
                        for l in 0..k {
                            table[l * k + l] = 0.0;
                        }
                        factors.push(Factor {
                            scope: vec![u, v],
                            table,
                        });
                    }
                }
            }
        }
        factors.push(Factor {
            scope: vec![u],
            table: unary,
        });
    }

    log::debug!("exact: {} free nodes after reduction", free.len());
    let (order, width) = elimination_order(&free, &inter);
    log::debug!("exact: elimination width {width}");
    let needed = (k as u128).checked_pow(width as u32 + 1);
    if needed.is_none_or(|s| s > budget) {
        return Err(Error::TooLarge {
            free: free.len(),
            labels: k,
            budget,
        });
    }

    // Forward pass: eliminate, remembering argmins.
    let mut choices: Vec<(usize, Vec<usize>, Vec<u8>)> = Vec::with_capacity(order.len());
    for &x in &order {
        let (involved, rest): (Vec<Factor>, Vec<Factor>) =
            factors.into_iter().partition(|f| f.scope.contains(&x));
        factors = rest;
        let mut scope: Vec<usize> = involved
            .iter()
            .flat_map(|f| f.scope.iter().copied())
            .filter(|&v| v != x)
            .collect();
        scope.sort_unstable();
        scope.dedup();
        let size = k.pow(scope.len() as u32);
        // Position of each factor variable within [x, scope...].
        let full: Vec<usize> = std::iter::once(x).chain(scope.iter().copied()).collect();
        let strides: Vec<Vec<usize>> = involved
            .iter()
            .map(|f| {
                let mut s = vec![0usize; full.len()];
                let mut mul = 1;
                for var in &f.scope {
                    let p = full.iter().position(|v| v == var).unwrap();
                    s[p] = mul;
                    mul *= k;
                }
                s
            })
            .collect();
        let mut table = vec![f64::INFINITY; size];
        let mut arg = vec![0u8; size];
        let mut digits = vec![0usize; scope.len()];
        let mut base_idx = vec![0usize; involved.len()];
        for (idx, (tslot, aslot)) in table.iter_mut().zip(arg.iter_mut()).enumerate() {
            if idx > 0 {
                // odometer increment over scope digits, updating factor offsets
                let mut p = 0;
                loop {
                    digits[p] += 1;
                    for (fi, s) in strides.iter().enumerate() {
                        base_idx[fi] += s[p + 1];
                    }
                    if digits[p] < k {
                        break;
                    }
                    for (fi, s) in strides.iter().enumerate() {
                        base_idx[fi] -= s[p + 1] * k;
                    }
                    digits[p] = 0;
                    p += 1;
                }
            }
            for lx in 0..k {
                let mut sum = 0.0;
                for (fi, f) in involved.iter().enumerate() {
                    sum += f.table[base_idx[fi] + lx * strides[fi][0]];
                }
                if sum < *tslot {
                    *tslot = sum;
                    *aslot = lx as u8;
                }
            }
        }
        choices.push((x, scope.clone(), arg));
        factors.push(Factor { scope, table });
    }

    let mut labels: Vec<Option<usize>> = vec![None; g.num_nodes];
    for (v, c) in red.fixed.iter().enumerate() {
        if red.alive[v] {
            if let Some(c) = c {
                labels[v] = Some(*c);
            }
        }
    }
    for (x, scope, arg) in choices.iter().rev() {
        let mut idx = 0;
        let mut mul = 1;
        for v in scope {
            idx += labels[*v].expect("eliminated later, assigned earlier") * mul;
            mul *= k;
        }
        labels[*x] = Some(arg[idx] as usize);
    }
    let full: Vec<usize> = (0..g.num_nodes)
        .map(|v| labels[red.root(v)].expect("every root labeled"))
        .collect();
    Ok(Cut::from_labeling(g, full))
}

/// Lower bound on every `k`-labeling cost of `g`, certified by per-color edge flows.
///
/// `flows` holds `(edge, color, f)` with `f` running from `edges[edge].a` to
/// `.b`; missing entries are zero. Any flows give a valid bound (it is the
/// Lagrangian dual of the linear relaxation), good flows give a tight one.
/// Each terminal gains its own color's net outflow, each free node the
/// smallest net outflow over all colors, and a flow beyond half the edge
/// weight costs its excess.
pub fn lagrangian_bound(g: &DualGraph, k: usize, flows: &[(usize, usize, f64)]) -> Result<f64> {
    let fixed = fixed_colors(g, k)?;
    let mut out = vec![0.0; g.num_nodes * k];
    let mut bound = 0.0;
    for &(e, c, f) in flows {
        let edge = g.edges.get(e).filter(|_| c < k && f.is_finite()).ok_or_else(|| {
            Error::InvalidInstance(format!("flow entry ({e}, {c}, {f}) does not fit the graph"))
        })?;
        bound += (edge.weight / 2.0 - f.abs()).min(0.0);
        out[edge.a * k + c] += f;
        out[edge.b * k + c] -= f;
    }
    for (v, color) in fixed.iter().enumerate() {
        let row = &out[v * k..(v + 1) * k];
        bound += match color {
            Some(c) => row[*c],
            None => row.iter().copied().fold(f64::INFINITY, f64::min),
        };
    }
    Ok(bound)
}
