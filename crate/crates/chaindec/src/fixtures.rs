//! Named graphs used across the test suite and shipped as `.bg` files.

use crate::bigraph::{BipartiteGraph, Side};

/// The chordless path on `n` vertices `1-2-...-n`, sides alternating
/// starting Left.
pub fn path(n: u32) -> BipartiteGraph {
    let sides: Vec<Side> = (0..n)
        .map(|i| if i % 2 == 0 { Side::Left } else { Side::Right })
        .collect();
    let edges = (1..n).map(|i| (i, i + 1));
    BipartiteGraph::new(&sides, edges).unwrap()
}

/// The cycle on `n` vertices (`n` even), sides alternating starting Left.
pub fn cycle(n: u32) -> BipartiteGraph {
    assert!(
        n >= 4 && n.is_multiple_of(2),
        "bipartite cycles have even length"
    );
    let sides: Vec<Side> = (0..n)
        .map(|i| if i % 2 == 0 { Side::Left } else { Side::Right })
        .collect();
    let edges = (1..n).map(|i| (i, i + 1)).chain([(1, n)]);
    BipartiteGraph::new(&sides, edges).unwrap()
}

/// The forbidden pattern: a chordless path on seven vertices.
pub fn p7() -> BipartiteGraph {
    path(7)
}

/// Disjoint union of the edges 1-2 and 3-4.
pub fn two_k2() -> BipartiteGraph {
    use Side::{Left as L, Right as R};
    BipartiteGraph::new(&[L, R, L, R], [(1, 2), (3, 4)]).unwrap()
}

/// The 6-cycle.
pub fn c6() -> BipartiteGraph {
    cycle(6)
}

/// Connected 8-vertex member of the class whose bipartite complement is
/// also connected; the worked example for chain construction.
pub fn g8() -> BipartiteGraph {
    use Side::{Left as L, Right as R};
    BipartiteGraph::new(
        &[L, L, L, L, R, R, R, R],
        [(1, 5), (2, 5), (2, 6), (3, 7), (4, 5), (4, 7), (4, 8)],
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::is_p7_free;

    #[test]
    fn g8_is_in_class_and_co_connected() {
        let g = g8();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.edge_count(), 7);
        assert!(is_p7_free(&g));
        assert!(g.is_connected());
        assert!(g.bipartite_complement().is_connected());
    }

    #[test]
    fn p7_is_not_in_class() {
        assert!(!is_p7_free(&p7()));
    }
}
