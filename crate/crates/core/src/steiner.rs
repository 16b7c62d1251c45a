//! Edge duplication on full binary trees.
//!
//! Given a tree whose internal vertices all have degree 3, pick edges to
//! double so every internal vertex ends up with even degree, at minimum total
//! length. The optimum never exceeds a third of the tree length.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Largest tree the exhaustive solver accepts.
pub const BRUTE_FORCE_MAX_EDGES: usize = 22;

/// A tree rooted at a leaf. Edge `e` joins `edges[e].0` (parent) to `edges[e].1` (child).
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedTree {
    num_nodes: usize,
    root: usize,
    edges: Vec<(usize, usize, f64)>,
    /// Child edges per node.
    children: Vec<Vec<usize>>,
    /// Edge to the parent, `None` at the root.
    up: Vec<Option<usize>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DuplicationResult {
    pub cost: f64,
    pub duplicated: BTreeSet<usize>,
    /// `(U1, U2)` per edge: best cost inside the subtree below the edge when
    /// the edge is used once or twice. Empty for the exhaustive solver.
    pub table: Vec<(f64, f64)>,
}

impl WeightedTree {
    /// Builds a tree from undirected edges `(u, v, length)` over nodes
    /// `0..num_nodes`, rooted at leaf `root`. Edge ids follow input order.
    pub fn from_edges(num_nodes: usize, edges: &[(usize, usize, f64)], root: usize) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::MalformedTree("tree needs at least one edge".into()));
        }
        if edges.len() + 1 != num_nodes {
            return Err(Error::MalformedTree(format!(
                "{} edges cannot span {} nodes",
                edges.len(),
                num_nodes
            )));
        }
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); num_nodes];
        for (i, &(u, v, len)) in edges.iter().enumerate() {
            if u >= num_nodes || v >= num_nodes || u == v {
                return Err(Error::MalformedTree(format!("bad edge {u}-{v}")));
            }
            if !(len > 0.0 && len.is_finite()) {
                return Err(Error::MalformedTree(format!("edge {i} has length {len}")));
            }
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
        if root >= num_nodes || adj[root].len() != 1 {
            return Err(Error::MalformedTree(format!("root {root} is not a leaf")));
        }
        if let Some(v) = (0..num_nodes).find(|&v| adj[v].len() != 1 && adj[v].len() != 3) {
            return Err(Error::MalformedTree(format!(
                "vertex {v} has degree {}",
                adj[v].len()
            )));
        }
        let mut oriented = edges.to_vec();
        let mut children = vec![Vec::new(); num_nodes];
        let mut up = vec![None; num_nodes];
        let mut seen = vec![false; num_nodes];
        seen[root] = true;
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for &(v, e) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    oriented[e] = (u, v, edges[e].2);
                    children[u].push(e);
                    up[v] = Some(e);
                    stack.push(v);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::MalformedTree("tree is disconnected".into()));
        }
        Ok(WeightedTree {
            num_nodes,
            root,
            edges: oriented,
            children,
            up,
        })
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// `(parent, child, length)` per edge.
    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn total_length(&self) -> f64 {
        self.edges.iter().map(|e| e.2).sum()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.children[v].len() + usize::from(self.up[v].is_some())
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.num_nodes).filter(|&v| self.degree(v) == 1).collect()
    }

    /// Same tree rooted at another leaf; edge ids are kept.
    pub fn reroot(&self, leaf: usize) -> Result<Self> {
        WeightedTree::from_edges(self.num_nodes, &self.edges, leaf)
    }

    /// Random tree with `num_leaves >= 2` leaves and lengths in `(0, max_len]`,
    /// grown by repeatedly splitting a random edge and hanging a new leaf there.
    pub fn random(seed: u64, num_leaves: usize, max_len: f64) -> Result<Self> {
        if num_leaves < 2 {
            return Err(Error::MalformedTree("need at least two leaves".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let len = |rng: &mut ChaCha8Rng| max_len * (1.0 - rng.gen::<f64>());
        let mut edges = vec![(0, 1, len(&mut rng))];
        let mut n = 2;
        for _ in 2..num_leaves {
            let e = rng.gen_range(0..edges.len());
            let (u, v, _) = edges[e];
            let (mid, leaf) = (n, n + 1);
            n += 2;
            edges[e] = (u, mid, len(&mut rng));
            edges.push((mid, v, len(&mut rng)));
            edges.push((mid, leaf, len(&mut rng)));
        }
        WeightedTree::from_edges(n, &edges, 0)
    }

    /// Nodes in an order where each parent precedes its children.
    fn preorder(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.num_nodes);
        let mut stack = vec![self.root];
        while let Some(u) = stack.pop() {
            order.push(u);
            for &e in self.children[u].iter().rev() {
                stack.push(self.edges[e].1);
            }
        }
        order
    }
}

/// Whether doubling `duplicated` gives every internal vertex even degree.
pub fn parity_ok(t: &WeightedTree, duplicated: &BTreeSet<usize>) -> bool {
    (0..t.num_nodes).filter(|&v| t.degree(v) == 3).all(|v| {
        let incident = t.children[v].iter().chain(t.up[v].iter());
        let degree: usize = incident
            .map(|e| if duplicated.contains(e) { 2 } else { 1 })
            .sum();
        degree.is_multiple_of(2)
    })
}

/// Exact bottom-up dynamic program with backtracking.
pub fn min_duplication(t: &WeightedTree) -> DuplicationResult {
    let order = t.preorder();
    let mut table = vec![(0.0, 0.0); t.edges.len()];
    for &v in order.iter().rev() {
        let Some(e) = t.up[v] else { continue };
        let len = t.edges[e].2;
        table[e] = match t.children[v].as_slice() {
            [] => (0.0, len),
            &[l, r] => {
                let (l1, l2) = table[l];
                let (r1, r2) = table[r];
                ((l1 + r2).min(l2 + r1), (l1 + r1).min(l2 + r2) + len)
            }
            _ => unreachable!("degrees checked on construction"),
        };
    }

    let top = t.children[t.root][0];
    let mut twice = vec![false; t.edges.len()];
    twice[top] = table[top].1 < table[top].0;
    let cost = table[top].0.min(table[top].1);
    for &v in &order {
        let Some(e) = t.up[v] else { continue };
        if let &[l, r] = t.children[v].as_slice() {
            let (l1, l2) = table[l];
            let (r1, r2) = table[r];
            let (dl, dr) = if twice[e] {
                if l1 + r1 <= l2 + r2 {
                    (false, false)
                } else {
                    (true, true)
                }
            } else if l1 + r2 <= l2 + r1 {
                (false, true)
            } else {
                (true, false)
            };
            twice[l] = dl;
            twice[r] = dr;
        }
    }
    DuplicationResult {
        cost,
        duplicated: (0..t.edges.len()).filter(|&e| twice[e]).collect(),
        table,
    }
}

/// Exhaustive minimum over all edge subsets.
pub fn brute_force_duplication(t: &WeightedTree) -> Result<DuplicationResult> {
    let m = t.edges.len();
    if m > BRUTE_FORCE_MAX_EDGES {
        return Err(Error::TooLarge {
            free: m,
            labels: 2,
            budget: 1 << BRUTE_FORCE_MAX_EDGES,
        });
    }
    // Bit i of a mask stands for the i-th internal vertex; an internal vertex
    // has even degree iff an odd number of its three edges is doubled.
    let internal: Vec<usize> = (0..t.num_nodes).filter(|&v| t.degree(v) == 3).collect();
    let bit = |v: usize| internal.binary_search(&v).map(|i| 1u32 << i).unwrap_or(0);
    let edge_mask: Vec<u32> = t.edges.iter().map(|&(u, v, _)| bit(u) | bit(v)).collect();
    let target: u32 = internal.iter().map(|&v| bit(v)).fold(0, |a, b| a | b);

    let mut best: Option<(f64, u32)> = None;
    for subset in 0u32..(1u32 << m) {
        let mut mask = 0;
        let mut cost = 0.0;
        for e in 0..m {
            if subset >> e & 1 == 1 {
                mask ^= edge_mask[e];
                cost += t.edges[e].2;
            }
        }
        if mask == target && best.is_none_or(|(b, _)| cost < b) {
            best = Some((cost, subset));
        }
    }
    let (cost, subset) = best.expect("doubling every edge is always feasible");
    Ok(DuplicationResult {
        cost,
        duplicated: (0..m).filter(|&e| subset >> e & 1 == 1).collect(),
        table: Vec::new(),
    })
}

/// Parses a tree written as the subtree hanging below an implicit root leaf.
///
/// Grammar: `node := "L" ":" len | "(" node "," node ")" ":" len`, where the
/// length belongs to the edge above the node. `L:5` is a single edge;
/// `(L:1,L:1):1` is the unit star K1,3.
pub fn parse_tree(text: &str) -> Result<WeightedTree> {
    let mut p = TreeParser {
        chars: text.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
        edges: Vec::new(),
        next: 1,
    };
    p.node(0)?;
    if p.pos != p.chars.len() {
        return Err(p.error("trailing input"));
    }
    WeightedTree::from_edges(p.next, &p.edges, 0)
}

struct TreeParser {
    chars: Vec<char>,
    pos: usize,
    edges: Vec<(usize, usize, f64)>,
    next: usize,
}

impl TreeParser {
    fn error(&self, msg: &str) -> Error {
        Error::MalformedTree(format!("{msg} at offset {}", self.pos))
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.chars.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn node(&mut self, parent: usize) -> Result<()> {
        let id = self.next;
        self.next += 1;
        match self.chars.get(self.pos) {
            Some('L') => self.pos += 1,
            Some('(') => {
                self.pos += 1;
                self.node(id)?;
                self.expect(',')?;
                self.node(id)?;
                self.expect(')')?;
            }
            _ => return Err(self.error("expected 'L' or '('")),
        }
        self.expect(':')?;
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '-' | '+'))
        {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        let len: f64 = text.parse().map_err(|_| self.error("bad edge length"))?;
        self.edges.push((parent, id, len));
        Ok(())
    }
}
