//! Hypergraphs with identified, growable hyperedges: the unit-weight view
//! of scheduling under scenarios, where scenario k is hyperedge k and the
//! goal is to color nodes with m colors minimizing the largest same-color
//! count inside any hyperedge.
//!
//! A growing hyperedge keeps one identity from its first revealed prefix to
//! its final form. Edges of size one are permitted; they are irrelevant to
//! the objective and can never lie on a hypercycle.

use serde::{Deserialize, Serialize};

use crate::instance::{Instance, Job};
use crate::weight::Weight;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("node {0} out of range 1..={1}")]
    NodeOutOfRange(usize, usize),
    #[error("coloring covers {given} of {wanted} nodes")]
    UncoloredNodes { given: usize, wanted: usize },
    #[error("conversion requires unit weights (job {0})")]
    NonUnitWeight(usize),
}

/// Node ids are 0-based internally and 1-based in JSON.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Hypergraph {
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Self {
        let mut h = Hypergraph { n, edges };
        for e in &mut h.edges {
            e.sort_unstable();
            e.dedup();
        }
        h
    }

    pub fn add_node(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    pub fn create_edge(&mut self, mut members: Vec<usize>) -> usize {
        members.sort_unstable();
        members.dedup();
        debug_assert!(members.iter().all(|&v| v < self.n));
        self.edges.push(members);
        self.edges.len() - 1
    }

    pub fn extend_edge(&mut self, edge: usize, node: usize) {
        debug_assert!(node < self.n);
        let e = &mut self.edges[edge];
        if !e.contains(&node) {
            e.push(node);
            e.sort_unstable();
        }
    }

    pub fn edge(&self, id: usize) -> &[usize] {
        &self.edges[id]
    }

    /// Edge ids containing the node.
    pub fn edges_of(&self, node: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].contains(&node)).collect()
    }

    /// Component id per node (union-find over shared edge membership).
    pub fn components(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.n);
        for e in &self.edges {
            for w in e.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        (0..self.n).map(|v| uf.find(v)).collect()
    }

    /// Acyclicity of the bipartite node–hyperedge incidence graph, which is
    /// the hyperforest property: no closed alternating node–edge sequence
    /// with at least two pairwise distinct hyperedges and distinct nodes.
    pub fn is_hyperforest(&self) -> bool {
        let mut uf = UnionFind::new(self.n + self.edges.len());
        for (idx, e) in self.edges.iter().enumerate() {
            let ev = self.n + idx;
            for &v in e {
                if uf.find(v) == uf.find(ev) {
                    return false;
                }
                uf.union(v, ev);
            }
        }
        true
    }
}

/// Literal hypercycle search, used as an independent test oracle for
/// [`Hypergraph::is_hyperforest`]. Exponential; keep inputs tiny.
pub fn brute_force_has_hypercycle(h: &Hypergraph) -> bool {
    // Search for v_1, e_1, v_2, ..., e_l, v_1 with l >= 2, pairwise
    // distinct edges and pairwise distinct nodes v_1..v_l.
    fn dfs(
        h: &Hypergraph,
        start: usize,
        current: usize,
        used_edges: &mut Vec<usize>,
        used_nodes: &mut Vec<usize>,
    ) -> bool {
        for (eid, e) in h.edges.iter().enumerate() {
            if used_edges.contains(&eid) || !e.contains(&current) {
                continue;
            }
            if !used_edges.is_empty() && e.contains(&start) && current != start {
                return true;
            }
            for &next in e {
                if next == current || used_nodes.contains(&next) || next == start {
                    continue;
                }
                used_edges.push(eid);
                used_nodes.push(next);
                if dfs(h, start, next, used_edges, used_nodes) {
                    return true;
                }
                used_nodes.pop();
                used_edges.pop();
            }
        }
        false
    }
    for start in 0..h.n {
        let mut used_nodes = vec![start];
        if dfs(h, start, start, &mut Vec::new(), &mut used_nodes) {
            return true;
        }
    }
    false
}

/// Offline coloring maintained by an adversary: node → color in [m].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OfflineColoring {
    pub colors: Vec<usize>,
}

impl OfflineColoring {
    pub fn new(colors: Vec<usize>) -> Self {
        OfflineColoring { colors }
    }
}

/// Proper iff no hyperedge contains two nodes of equal color; equivalently
/// the coloring's makespan is at most 1.
pub fn is_proper(h: &Hypergraph, c: &OfflineColoring) -> bool {
    if c.colors.len() < h.n {
        return false;
    }
    for e in &h.edges {
        for (a, w) in e.iter().enumerate() {
            for v in &e[a + 1..] {
                if c.colors[*w] == c.colors[*v] {
                    return false;
                }
            }
        }
    }
    true
}

/// Apply a color permutation to one connected component, leaving the rest
/// untouched. Properness is preserved for any bijection.
pub fn permute_component(
    h: &Hypergraph,
    c: &OfflineColoring,
    component_node: usize,
    perm: &[usize],
) -> OfflineColoring {
    let comps = h.components();
    let target = comps[component_node];
    let mut colors = c.colors.clone();
    for (v, col) in colors.iter_mut().enumerate() {
        if v < comps.len() && comps[v] == target {
            *col = perm[*col];
        }
    }
    OfflineColoring::new(colors)
}

/// Objective value of a complete coloring: the largest number of
/// same-colored nodes inside any hyperedge.
pub fn omhc_makespan(h: &Hypergraph, coloring: &[usize]) -> Result<usize, HypergraphError> {
    if coloring.len() < h.n {
        return Err(HypergraphError::UncoloredNodes { given: coloring.len(), wanted: h.n });
    }
    let mut worst = 0;
    for e in &h.edges {
        let mut counts = std::collections::HashMap::new();
        for &v in e {
            *counts.entry(coloring[v]).or_insert(0usize) += 1;
        }
        worst = worst.max(counts.values().copied().max().unwrap_or(0));
    }
    Ok(worst)
}

/// Hyperedge k becomes scenario k of a unit-weight instance on m machines.
pub fn to_instance(h: &Hypergraph, m: usize) -> Instance {
    let jobs = (0..h.n)
        .map(|v| {
            Job::unit(
                (0..h.edges.len())
                    .filter(|&e| h.edges[e].contains(&v))
                    .collect(),
            )
        })
        .collect();
    Instance::new(m, h.edges.len(), jobs)
}

/// Scenario k of a unit-weight instance becomes hyperedge k.
pub fn from_instance(instance: &Instance) -> Result<Hypergraph, HypergraphError> {
    for (j, job) in instance.jobs.iter().enumerate() {
        if job.p != Weight::one() {
            return Err(HypergraphError::NonUnitWeight(j + 1));
        }
    }
    let edges = (0..instance.k).map(|k| instance.scenario_jobs(k)).collect();
    Ok(Hypergraph::new(instance.n(), edges))
}

/// The set of hyperedges an adversary keeps extendable. The invariant:
/// active hyperedges are pairwise disconnected in the full hypergraph and
/// each is inclusion-maximal, so every component of the active subhypergraph
/// is exactly one maximal hyperedge.
#[derive(Clone, Debug, Default)]
pub struct ActiveEdgeSet {
    pub active: std::collections::BTreeSet<usize>,
}

impl ActiveEdgeSet {
    pub fn audit(&self, h: &Hypergraph) -> Result<(), String> {
        let comps = h.components();
        let mut seen = std::collections::HashMap::new();
        for &e in &self.active {
            let members = h.edge(e);
            if members.is_empty() {
                return Err(format!("active edge {e} is empty"));
            }
            let comp = comps[members[0]];
            if let Some(prev) = seen.insert(comp, e) {
                return Err(format!("active edges {prev} and {e} share a component"));
            }
            // Active singletons inside larger components are fine: a
            // one-node edge can never lie on a hypercycle, so extending it
            // keeps the hypergraph a forest.
            if members.len() >= 2 {
                for (other, oe) in h.edges.iter().enumerate() {
                    if other != e
                        && members.len() < oe.len()
                        && members.iter().all(|v| oe.contains(v))
                    {
                        return Err(format!(
                            "active edge {e} is strictly contained in edge {other}"
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

#[derive(Serialize, Deserialize)]
struct HypergraphWire {
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl Serialize for Hypergraph {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        HypergraphWire {
            n: self.n,
            edges: self
                .edges
                .iter()
                .map(|e| e.iter().map(|&v| v + 1).collect())
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Hypergraph {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let wire = HypergraphWire::deserialize(de)?;
        let mut edges = Vec::with_capacity(wire.edges.len());
        for e in wire.edges {
            let mut out = Vec::with_capacity(e.len());
            for v in e {
                if v == 0 || v > wire.n {
                    return Err(serde::de::Error::custom(format!(
                        "node {v} outside 1..={}",
                        wire.n
                    )));
                }
                out.push(v - 1);
            }
            edges.push(out);
        }
        Ok(Hypergraph::new(wire.n, edges))
    }
}

/// One line of a reveal trace: a node arrives, joins existing hyperedges
/// and creates new ones (all ids and nodes 1-based on the wire).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RevealTraceLine {
    pub node: usize,
    pub joins: Vec<usize>,
    pub creates: Vec<Vec<usize>>,
}
