//! Face-adjacency (dual) graph of an arrangement.

use std::collections::{BTreeMap, BTreeSet};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::geom::Instance;

#[derive(Clone, Debug, PartialEq)]
pub struct DualEdge {
    pub a: usize,
    pub b: usize,
    /// Total length of the boundary shared by faces `a` and `b`.
    pub weight: f64,
    /// Arrangement edges making up the shared boundary.
    pub provenance: Vec<usize>,
}

impl DualEdge {
    pub fn is_loop(&self) -> bool {
        self.a == self.b
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DualGraph {
    /// One node per arrangement face; node id = face id.
    pub num_nodes: usize,
    pub edges: Vec<DualEdge>,
    /// Object faces per color, for every color in `0..k`.
    pub terminals: BTreeMap<usize, BTreeSet<usize>>,
}

impl DualGraph {
    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.weight).sum()
    }

    pub fn num_colors(&self) -> usize {
        self.terminals.len()
    }

    /// Color of each node, if it is a terminal.
    pub fn terminal_colors(&self) -> Vec<Option<usize>> {
        let mut c = vec![None; self.num_nodes];
        for (&color, nodes) in &self.terminals {
            for &n in nodes {
                c[n] = Some(color);
            }
        }
        c
    }

    /// `(neighbour, dual edge id)` lists, self-loops omitted.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.num_nodes];
        for (i, e) in self.edges.iter().enumerate() {
            if !e.is_loop() {
                adj[e.a].push((e.b, i));
                adj[e.b].push((e.a, i));
            }
        }
        adj
    }
}

/// Builds the dual of an arrangement whose object faces are tagged.
pub fn build_dual(arr: &Arrangement, inst: &Instance) -> DualGraph {
    let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut edges: Vec<DualEdge> = Vec::new();
    for (e, &(f, g)) in arr.edge_faces.iter().enumerate() {
        let key = (f.min(g), f.max(g));
        let id = *index.entry(key).or_insert_with(|| {
            edges.push(DualEdge {
                a: key.0,
                b: key.1,
                weight: 0.0,
                provenance: Vec::new(),
            });
            edges.len() - 1
        });
        edges[id].weight += arr.edges[e].length;
        edges[id].provenance.push(e);
    }
    let mut terminals: BTreeMap<usize, BTreeSet<usize>> =
        (0..inst.num_colors).map(|c| (c, BTreeSet::new())).collect();
    for f in &arr.faces {
        if let Some(o) = f.object {
            terminals
                .entry(inst.objects[o].color())
                .or_default()
                .insert(f.id);
        }
    }
    DualGraph {
        num_nodes: arr.faces.len(),
        edges,
        terminals,
    }
}

/// Dual graph plus one apex node per color, joined to that color's terminals
/// by edges of weight `apex_weight` (larger than any apex-free cut).
#[derive(Clone, Debug, PartialEq)]
pub struct AugmentedGraph {
    pub base: DualGraph,
    /// Apex node id per color; apex ids follow the base nodes.
    pub apex: BTreeMap<usize, usize>,
    pub apex_weight: f64,
    /// Colors without any object; their apex is isolated.
    pub empty_colors: Vec<usize>,
}

impl AugmentedGraph {
    pub fn num_nodes(&self) -> usize {
        self.base.num_nodes + self.apex.len()
    }

    pub fn is_apex(&self, node: usize) -> bool {
        node >= self.base.num_nodes
    }

    /// Apex edges as `(apex, terminal)` pairs.
    pub fn apex_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (color, &apex) in &self.apex {
            for &t in &self.base.terminals[color] {
                out.push((apex, t));
            }
        }
        out
    }

    /// Fails with the first empty color, if any.
    pub fn require_nonempty(&self) -> Result<()> {
        match self.empty_colors.first() {
            Some(&c) => Err(Error::EmptyColorClass(c)),
            None => Ok(()),
        }
    }
}

pub fn add_apexes(g: &DualGraph, k: usize) -> AugmentedGraph {
    let mut base = g.clone();
    for c in 0..k {
        base.terminals.entry(c).or_default();
    }
    let apex: BTreeMap<usize, usize> = (0..k).map(|c| (c, base.num_nodes + c)).collect();
    let empty_colors: Vec<usize> = (0..k).filter(|c| base.terminals[c].is_empty()).collect();
    for c in &empty_colors {
        log::warn!("color {c} has no objects; its apex is isolated");
    }
    AugmentedGraph {
        apex_weight: g.total_weight() + 1.0,
        base,
        apex,
        empty_colors,
    }
}
