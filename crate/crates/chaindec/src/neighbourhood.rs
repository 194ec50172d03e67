//! Neighbourhood graphs, quasi-threshold recognition and the universal
//! clique cutset that seeds a chain decomposition.
//!
//! The neighbourhood graph of one part joins two vertices whenever they
//! share a common neighbour across the bipartition. For P7-free inputs
//! these graphs are quasi-threshold (no induced P4, no induced C4), and
//! every connected non-complete quasi-threshold graph has a nonempty set
//! of universal vertices whose removal disconnects it.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::bigraph::{BipartiteGraph, Side, VertexId, VertexSet};
use crate::patterns::InducedPathWitness;

/// Unlabelled-side auxiliary graph.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimpleGraph {
    adj: BTreeMap<VertexId, VertexSet>,
}

impl SimpleGraph {
    pub fn new(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Self {
        let mut adj: BTreeMap<VertexId, VertexSet> = vertices
            .into_iter()
            .map(|v| (v, VertexSet::new()))
            .collect();
        for (u, v) in edges {
            debug_assert!(u != v, "loops are not representable");
            debug_assert!(adj.contains_key(&u) && adj.contains_key(&v));
            adj.get_mut(&u).unwrap().insert(v);
            adj.get_mut(&v).unwrap().insert(u);
        }
        Self { adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(|n| n.len()).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.adj.keys().copied().collect()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj.get(&u).is_some_and(|n| n.contains(&v))
    }

    pub fn neighbours_of(&self, v: VertexId) -> &VertexSet {
        static EMPTY: VertexSet = VertexSet::new();
        self.adj.get(&v).unwrap_or(&EMPTY)
    }

    /// True for graphs with at most one vertex.
    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        self.adj.values().all(|nbrs| nbrs.len() == n - 1) || n == 0
    }

    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::new();
        let mut out = Vec::new();
        for &start in self.adj.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = VertexSet::new();
            let mut queue = vec![start];
            seen.insert(start);
            while let Some(v) = queue.pop() {
                comp.insert(v);
                for &w in &self.adj[&v] {
                    if seen.insert(w) {
                        queue.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    pub fn remove_vertices(&self, q: &VertexSet) -> SimpleGraph {
        let adj = self
            .adj
            .iter()
            .filter(|(v, _)| !q.contains(v))
            .map(|(&v, n)| (v, n.difference(q).copied().collect()))
            .collect();
        Self { adj }
    }
}

/// Graph on the chosen part of `g`; two vertices are adjacent iff they
/// have a common neighbour in `g`.
pub fn neighbourhood_graph(g: &BipartiteGraph, side: Side) -> SimpleGraph {
    let part: Vec<VertexId> = g.side_vertices(side).into_iter().collect();
    let mut edges = Vec::new();
    for (i, &x) in part.iter().enumerate() {
        let nx = g.neighbours_of(x);
        for &y in &part[i + 1..] {
            if nx.intersection(g.neighbours_of(y)).next().is_some() {
                edges.push((x, y));
            }
        }
    }
    SimpleGraph::new(part, edges)
}

pub fn is_complete_graph(h: &SimpleGraph) -> bool {
    h.is_complete()
}

/// A four-vertex obstruction to being quasi-threshold, in path or cycle
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuasiThresholdWitness {
    Path4([VertexId; 4]),
    Cycle4([VertexId; 4]),
}

impl fmt::Display for QuasiThresholdWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (kind, vs) = match self {
            QuasiThresholdWitness::Path4(vs) => ("induced P4", vs),
            QuasiThresholdWitness::Cycle4(vs) => ("induced C4", vs),
        };
        let labels: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
        write!(f, "{kind} {}", labels.join("-"))
    }
}

/// Returns an induced P4 or C4 if one exists; absent iff `h` is
/// quasi-threshold. Scans four-element subsets in ascending order.
pub fn quasi_threshold_witness(h: &SimpleGraph) -> Option<QuasiThresholdWitness> {
    let verts: Vec<VertexId> = h.vertices().collect();
    let n = verts.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let quad = [verts[a], verts[b], verts[c], verts[d]];
                    if let Some(w) = classify_quad(h, quad) {
                        return Some(w);
                    }
                }
            }
        }
    }
    None
}

fn classify_quad(h: &SimpleGraph, quad: [VertexId; 4]) -> Option<QuasiThresholdWitness> {
    let deg: Vec<usize> = quad
        .iter()
        .map(|&v| quad.iter().filter(|&&w| w != v && h.has_edge(v, w)).count())
        .collect();
    let edges: usize = deg.iter().sum::<usize>() / 2;
    match edges {
        3 => {
            // Three edges with degrees 1,1,2,2 form a path; order it from
            // the smaller endpoint.
            let mut ends: Vec<VertexId> = quad
                .iter()
                .zip(&deg)
                .filter(|(_, &d)| d == 1)
                .map(|(&v, _)| v)
                .collect();
            if ends.len() != 2 || deg.contains(&3) {
                return None;
            }
            ends.sort();
            let start = ends[0];
            let mut order = vec![start];
            while order.len() < 4 {
                let last = *order.last().unwrap();
                let next = quad
                    .iter()
                    .find(|&&v| !order.contains(&v) && h.has_edge(last, v))?;
                order.push(*next);
            }
            Some(QuasiThresholdWitness::Path4(order.try_into().unwrap()))
        }
        4 if deg.iter().all(|&d| d == 2) => {
            // The only 2-regular graph on four vertices is the 4-cycle.
            let a = quad[0];
            let mut nbrs: Vec<VertexId> = quad
                .iter()
                .filter(|&&v| h.has_edge(a, v))
                .copied()
                .collect();
            nbrs.sort();
            let opposite = *quad.iter().find(|&&v| v != a && !h.has_edge(a, v))?;
            Some(QuasiThresholdWitness::Cycle4([
                a, nbrs[0], opposite, nbrs[1],
            ]))
        }
        _ => None,
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NeighbourhoodError {
    #[error("graph is complete; it has no cutset")]
    CompleteInput,
    #[error("graph is disconnected")]
    DisconnectedInput,
    #[error("graph is not quasi-threshold: {0}")]
    NotQuasiThreshold(QuasiThresholdWitness),
}

/// The set of universal vertices of `h` together with the connected
/// components left after removing them, ordered by smallest label.
///
/// For a connected non-complete quasi-threshold graph the universal set is
/// nonempty, a clique, complete to the rest, and its removal disconnects:
/// were the remainder connected on two or more vertices it would contain
/// its own universal vertex, which would then be universal in `h`.
pub fn universal_clique_cutset(
    h: &SimpleGraph,
) -> Result<(VertexSet, Vec<VertexSet>), NeighbourhoodError> {
    if h.is_complete() {
        return Err(NeighbourhoodError::CompleteInput);
    }
    if !h.is_connected() {
        return Err(NeighbourhoodError::DisconnectedInput);
    }
    if let Some(w) = quasi_threshold_witness(h) {
        return Err(NeighbourhoodError::NotQuasiThreshold(w));
    }
    let n = h.vertex_count();
    let universal: VertexSet = h
        .vertices()
        .filter(|&v| h.neighbours_of(v).len() == n - 1)
        .collect();
    let parts = h.remove_vertices(&universal).connected_components();
    debug_assert!(!universal.is_empty());
    debug_assert!(parts.len() >= 2);
    Ok((universal, parts))
}

/// Diagnostic conversion: lifts a P4/C4 found in a neighbourhood graph of
/// `g` to an induced P7 of `g` itself. Returns `None` when the witness did
/// not come from a neighbourhood graph of `g`.
pub fn locate_induced_p7(
    g: &BipartiteGraph,
    witness: &QuasiThresholdWitness,
) -> Option<InducedPathWitness> {
    let shared = |x: VertexId, y: VertexId| -> Option<VertexId> {
        g.neighbours_of(x)
            .intersection(g.neighbours_of(y))
            .next()
            .copied()
    };
    let path = match *witness {
        QuasiThresholdWitness::Path4([x1, x2, x3, x4]) => {
            let w12 = shared(x1, x2)?;
            let w23 = shared(x2, x3)?;
            let w34 = shared(x3, x4)?;
            vec![x1, w12, x2, w23, x3, w34, x4]
        }
        QuasiThresholdWitness::Cycle4([x1, x2, x3, x4]) => {
            let w41 = shared(x4, x1)?;
            let w12 = shared(x1, x2)?;
            let w23 = shared(x2, x3)?;
            let w34 = shared(x3, x4)?;
            vec![w41, x1, w12, x2, w23, x3, w34]
        }
    };
    let w = InducedPathWitness::from_vertices(path);
    w.verify(g).then_some(w)
}
