//! Induced-path detection.
//!
//! Depth-first extension with chordality pruning, extending from the
//! smallest start vertex with neighbours in ascending order, so the
//! returned witness is the lexicographically least vertex sequence.

use crate::bigraph::{BipartiteGraph, VertexId};

/// A chordless path: consecutive vertices adjacent, non-consecutive
/// vertices non-adjacent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedPathWitness {
    vertices: Vec<VertexId>,
}

impl InducedPathWitness {
    pub(crate) fn from_vertices(vertices: Vec<VertexId>) -> Self {
        Self { vertices }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Checks the chordless-path conditions against `g`.
    pub fn verify(&self, g: &BipartiteGraph) -> bool {
        let vs = &self.vertices;
        if vs.is_empty() {
            return false;
        }
        for (i, &u) in vs.iter().enumerate() {
            if !g.contains(u) || vs[i + 1..].contains(&u) {
                return false;
            }
            for (j, &v) in vs.iter().enumerate().skip(i + 1) {
                let adjacent = g.has_edge(u, v);
                if (j == i + 1) != adjacent {
                    return false;
                }
            }
        }
        true
    }
}

impl std::fmt::Display for InducedPathWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let labels: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", labels.join("-"))
    }
}

/// Returns a chordless path on `k` vertices if one exists, the
/// lexicographically least such vertex sequence.
pub fn find_induced_path(g: &BipartiteGraph, k: usize) -> Option<InducedPathWitness> {
    if k == 0 || g.vertex_count() < k {
        return None;
    }
    let mut path = Vec::with_capacity(k);
    for start in g.vertices() {
        path.push(start);
        if extend(g, &mut path, k) {
            return Some(InducedPathWitness::from_vertices(path));
        }
        path.pop();
    }
    None
}

fn extend(g: &BipartiteGraph, path: &mut Vec<VertexId>, k: usize) -> bool {
    if path.len() == k {
        return true;
    }
    let last = *path.last().unwrap();
    for &w in g.neighbours_of(last) {
        if path.contains(&w) {
            continue;
        }
        // Chordality: w may touch nothing on the path except its last vertex.
        if path[..path.len() - 1].iter().any(|&p| g.has_edge(p, w)) {
            continue;
        }
        path.push(w);
        if extend(g, path, k) {
            return true;
        }
        path.pop();
    }
    false
}

/// Membership test for the class this crate decomposes.
pub fn is_p7_free(g: &BipartiteGraph) -> bool {
    find_induced_path(g, 7).is_none()
}
