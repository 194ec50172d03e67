//! Labelled bipartite graphs with a fixed bipartition.
//!
//! Vertices carry 1-based labels that are preserved by every operation:
//! induced subgraphs, complements and reconstructions never renumber.
//! Graph equality is equality of the vertex set, the side map and the
//! edge set, so the bipartition is part of a graph's identity.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// 1-based vertex label.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The two parts of a bipartition.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Left => write!(f, "L"),
            Side::Right => write!(f, "R"),
        }
    }
}

/// Ordered set of vertex labels.
pub type VertexSet = BTreeSet<VertexId>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {u}-{v} joins two vertices of the same side")]
    SameSideEdge { u: VertexId, v: VertexId },
    #[error("edge {0}-{0} is a self-loop")]
    SelfLoop(VertexId),
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(VertexId),
    #[error("sets overlap at vertex {0}")]
    OverlappingSets(VertexId),
}

/// A labelled bipartite graph: a side for every vertex plus a cross-side
/// edge set. Immutable after construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BipartiteGraph {
    sides: BTreeMap<VertexId, Side>,
    adj: BTreeMap<VertexId, VertexSet>,
}

impl BipartiteGraph {
    /// Builds a graph on vertices `1..=sides.len()`, vertex `i` taking side
    /// `sides[i-1]`. Every edge must join a Left vertex to a Right vertex.
    pub fn new(
        sides: &[Side],
        edges: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Self, GraphError> {
        let side_map: BTreeMap<VertexId, Side> = sides
            .iter()
            .enumerate()
            .map(|(i, &s)| (VertexId(i as u32 + 1), s))
            .collect();
        Self::from_labelled(
            side_map,
            edges.into_iter().map(|(u, v)| (VertexId(u), VertexId(v))),
        )
    }

    /// Builds a graph from an explicit side map; labels need not be
    /// contiguous. Used wherever labels of a host graph are inherited.
    pub fn from_labelled(
        sides: BTreeMap<VertexId, Side>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        let mut adj: BTreeMap<VertexId, VertexSet> =
            sides.keys().map(|&v| (v, VertexSet::new())).collect();
        for (u, v) in edges {
            let su = *sides.get(&u).ok_or(GraphError::UnknownVertex(u))?;
            let sv = *sides.get(&v).ok_or(GraphError::UnknownVertex(v))?;
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if su == sv {
                return Err(GraphError::SameSideEdge { u, v });
            }
            adj.get_mut(&u).unwrap().insert(v);
            adj.get_mut(&v).unwrap().insert(u);
        }
        Ok(Self { sides, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.sides.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(|n| n.len()).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.sides.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.sides.keys().copied()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.sides.keys().copied().collect()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.sides.contains_key(&v)
    }

    pub fn side(&self, v: VertexId) -> Option<Side> {
        self.sides.get(&v).copied()
    }

    /// All vertices of one part, in ascending label order.
    pub fn side_vertices(&self, side: Side) -> VertexSet {
        self.sides
            .iter()
            .filter(|&(_, &s)| s == side)
            .map(|(&v, _)| v)
            .collect()
    }

    pub fn left(&self) -> VertexSet {
        self.side_vertices(Side::Left)
    }

    pub fn right(&self) -> VertexSet {
        self.side_vertices(Side::Right)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj.get(&u).is_some_and(|n| n.contains(&v))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj.get(&v).map_or(0, |n| n.len())
    }

    /// Neighbours of `v`, or an empty set for an unknown vertex.
    pub fn neighbours_of(&self, v: VertexId) -> &VertexSet {
        static EMPTY: VertexSet = VertexSet::new();
        self.adj.get(&v).unwrap_or(&EMPTY)
    }

    /// Edges as `(left, right)` pairs in ascending lexicographic order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (&v, s) in &self.sides {
            if *s == Side::Left {
                for &w in &self.adj[&v] {
                    out.push((v, w));
                }
            }
        }
        out
    }

    /// Flips every cross-side pair; vertices and sides are kept. An
    /// involution.
    pub fn bipartite_complement(&self) -> Self {
        let right = self.right();
        let mut adj: BTreeMap<VertexId, VertexSet> =
            self.sides.keys().map(|&v| (v, VertexSet::new())).collect();
        for (&v, &s) in &self.sides {
            if s == Side::Left {
                for &w in &right {
                    if !self.has_edge(v, w) {
                        adj.get_mut(&v).unwrap().insert(w);
                        adj.get_mut(&w).unwrap().insert(v);
                    }
                }
            }
        }
        Self {
            sides: self.sides.clone(),
            adj,
        }
    }

    /// Subgraph induced by `s`; labels and sides are inherited.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<Self, GraphError> {
        for &v in s {
            if !self.contains(v) {
                return Err(GraphError::UnknownVertex(v));
            }
        }
        let sides = s.iter().map(|&v| (v, self.sides[&v])).collect();
        let adj = s
            .iter()
            .map(|&v| (v, self.adj[&v].intersection(s).copied().collect()))
            .collect();
        Ok(Self { sides, adj })
    }

    /// Induced subgraph on everything except `v`.
    pub fn remove_vertex(&self, v: VertexId) -> Result<Self, GraphError> {
        if !self.contains(v) {
            return Err(GraphError::UnknownVertex(v));
        }
        let mut s = self.vertex_set();
        s.remove(&v);
        self.induced_subgraph(&s)
    }

    /// Maximal connected vertex sets, ordered by smallest contained label.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::new();
        let mut out = Vec::new();
        for &start in self.sides.keys() {
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

    /// Vertices outside `a` with at least one neighbour in `a`.
    pub fn neighbourhood(&self, a: &VertexSet) -> Result<VertexSet, GraphError> {
        let mut out = VertexSet::new();
        for &v in a {
            if !self.contains(v) {
                return Err(GraphError::UnknownVertex(v));
            }
            for &w in &self.adj[&v] {
                if !a.contains(&w) {
                    out.insert(w);
                }
            }
        }
        Ok(out)
    }

    /// True iff every cross-side pair between `x` and `y` is an edge.
    /// Vacuously true when there are no cross-side pairs.
    pub fn is_complete_to(&self, x: &VertexSet, y: &VertexSet) -> Result<bool, GraphError> {
        self.check_disjoint_known(x, y)?;
        Ok(self.cross_pairs(x, y, |g, u, v| g.has_edge(u, v)))
    }

    /// True iff no cross-side pair between `x` and `y` is an edge.
    pub fn is_anticomplete_to(&self, x: &VertexSet, y: &VertexSet) -> Result<bool, GraphError> {
        self.check_disjoint_known(x, y)?;
        Ok(self.cross_pairs(x, y, |g, u, v| !g.has_edge(u, v)))
    }

    fn check_disjoint_known(&self, x: &VertexSet, y: &VertexSet) -> Result<(), GraphError> {
        for &v in x.iter().chain(y.iter()) {
            if !self.contains(v) {
                return Err(GraphError::UnknownVertex(v));
            }
        }
        if let Some(&v) = x.intersection(y).next() {
            return Err(GraphError::OverlappingSets(v));
        }
        Ok(())
    }

    fn cross_pairs(
        &self,
        x: &VertexSet,
        y: &VertexSet,
        pred: impl Fn(&Self, VertexId, VertexId) -> bool,
    ) -> bool {
        x.iter().all(|&u| {
            y.iter()
                .all(|&v| self.sides[&u] == self.sides[&v] || pred(self, u, v))
        })
    }

    /// Union of two graphs on disjoint vertex sets.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self, GraphError> {
        if let Some(&v) = self.vertex_set().intersection(&other.vertex_set()).next() {
            return Err(GraphError::OverlappingSets(v));
        }
        let mut sides = self.sides.clone();
        sides.extend(other.sides.iter().map(|(&v, &s)| (v, s)));
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|(&v, n)| (v, n.clone())));
        Ok(Self { sides, adj })
    }
}

/// Convenience for tests and fixtures.
pub fn vset(labels: impl IntoIterator<Item = u32>) -> VertexSet {
    labels.into_iter().map(VertexId).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use Side::{Left as L, Right as R};

    #[test]
    fn single_edge_graph() {
        let g = BipartiteGraph::new(&[L, R], [(1, 2)]).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge(VertexId(1), VertexId(2)));
        assert!(g.has_edge(VertexId(2), VertexId(1)));
    }

    #[test]
    fn two_k2_matches_fixture() {
        let g = BipartiteGraph::new(&[L, R, L, R], [(1, 2), (3, 4)]).unwrap();
        assert_eq!(g, fixtures::two_k2());
    }

    #[test]
    fn loop_edge_rejected() {
        let err = BipartiteGraph::new(&[L, L, R], [(1, 1)]).unwrap_err();
        assert_eq!(err, GraphError::SelfLoop(VertexId(1)));
    }

    #[test]
    fn same_side_edge_rejected() {
        let err = BipartiteGraph::new(&[L, L, R], [(1, 2)]).unwrap_err();
        assert_eq!(
            err,
            GraphError::SameSideEdge {
                u: VertexId(1),
                v: VertexId(2)
            }
        );
    }

    #[test]
    fn unknown_vertex_rejected() {
        let err = BipartiteGraph::new(&[L, R], [(1, 4)]).unwrap_err();
        assert_eq!(err, GraphError::UnknownVertex(VertexId(4)));
    }

    #[test]
    fn complement_of_single_edge_is_edgeless() {
        let g = BipartiteGraph::new(&[L, R], [(1, 2)]).unwrap();
        let h = g.bipartite_complement();
        assert_eq!(h.edge_count(), 0);
        assert_eq!(h.vertex_count(), 2);
        assert_eq!(h.side(VertexId(2)), Some(R));
    }

    #[test]
    fn complement_of_p7_is_a_path_on_seven_vertices() {
        let h = fixtures::p7().bipartite_complement();
        assert_eq!(h.edge_count(), 6);
        // 3-6-1-4-7-2-5 is the whole graph as a chordless path.
        assert!(crate::patterns::find_induced_path(&h, 7).is_some());
    }

    #[test]
    fn complement_of_g8_has_expected_edges() {
        let h = fixtures::g8().bipartite_complement();
        let expected: Vec<(VertexId, VertexId)> = [
            (1, 6),
            (1, 7),
            (1, 8),
            (2, 7),
            (2, 8),
            (3, 5),
            (3, 6),
            (3, 8),
            (4, 6),
        ]
        .iter()
        .map(|&(u, v)| (VertexId(u), VertexId(v)))
        .collect();
        assert_eq!(h.edges(), expected);
    }

    #[test]
    fn complement_is_involution() {
        let g = fixtures::g8();
        assert_eq!(g.bipartite_complement().bipartite_complement(), g);
    }

    #[test]
    fn induced_subgraph_keeps_labels() {
        let g = fixtures::g8();
        let s = vset([3, 7]);
        let sub = g.induced_subgraph(&s).unwrap();
        assert_eq!(sub.vertex_set(), s);
        assert_eq!(sub.edges(), vec![(VertexId(3), VertexId(7))]);
    }

    #[test]
    fn induced_subgraph_identity_and_empty() {
        let g = fixtures::g8();
        assert_eq!(g.induced_subgraph(&g.vertex_set()).unwrap(), g);
        let empty = g.induced_subgraph(&VertexSet::new()).unwrap();
        assert!(empty.is_empty());
        assert_eq!(empty.connected_components(), Vec::<VertexSet>::new());
    }

    #[test]
    fn components_ordered_by_smallest_label() {
        assert_eq!(
            fixtures::two_k2().connected_components(),
            vec![vset([1, 2]), vset([3, 4])]
        );
        assert_eq!(fixtures::g8().connected_components(), vec![vset(1..=8)]);
    }

    #[test]
    fn neighbourhood_of_sets() {
        let g = fixtures::g8();
        assert_eq!(g.neighbourhood(&vset([4])).unwrap(), vset([5, 7, 8]));
        assert_eq!(g.neighbourhood(&vset([1, 2])).unwrap(), vset([5, 6]));
        assert_eq!(
            g.neighbourhood(&VertexSet::new()).unwrap(),
            VertexSet::new()
        );
    }

    #[test]
    fn complete_and_anticomplete() {
        let g = fixtures::g8();
        assert!(g.is_complete_to(&vset([4]), &vset([7])).unwrap());
        assert!(g.is_anticomplete_to(&vset([1, 2]), &vset([7])).unwrap());
        assert!(g.is_complete_to(&VertexSet::new(), &vset([7])).unwrap());
        assert!(g.is_anticomplete_to(&VertexSet::new(), &vset([7])).unwrap());
        assert_eq!(
            g.is_complete_to(&vset([4]), &vset([4, 7])).unwrap_err(),
            GraphError::OverlappingSets(VertexId(4))
        );
    }

    #[test]
    fn disjoint_union_rejects_overlap() {
        let g = fixtures::two_k2();
        let err = g.disjoint_union(&g).unwrap_err();
        assert_eq!(err, GraphError::OverlappingSets(VertexId(1)));
    }
}
