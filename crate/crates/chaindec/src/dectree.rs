//! Decomposition trees: recursive construction, exact decoding, size
//! metrics and structural verification.
//!
//! A tree node either holds a single vertex (leaf) or splits its graph by
//! the first applicable rule: disjoint union, disjoint union of the
//! bipartite complement, a chain decomposition of the graph, or a chain
//! decomposition of the complement. Chain nodes carry the layer count and
//! two marker vertices; each marker is copied into the opposite child so
//! decoding can recover the first blocks.

use std::fmt;

use thiserror::Error;

use crate::bigraph::{BipartiteGraph, GraphError, Side, VertexId, VertexSet};
use crate::chain::{
    decompose_via_cutset, reconstruct_from_components, ChainDecomposition, ChainError, Handedness,
};
use crate::neighbourhood::neighbourhood_graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeLabel {
    Leaf {
        v: VertexId,
        side: Side,
    },
    Union,
    CoUnion,
    Chain {
        k: usize,
        v1: VertexId,
        v2: VertexId,
        handedness: Handedness,
    },
    CoChain {
        k: usize,
        v1: VertexId,
        v2: VertexId,
        handedness: Handedness,
    },
}

/// Rooted binary tree; every internal node has exactly two ordered
/// children, and the first child of a chain node is the one augmented
/// with the marker `v1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionTree {
    label: NodeLabel,
    children: Option<Box<[DecompositionTree; 2]>>,
}

impl DecompositionTree {
    pub fn leaf(v: VertexId, side: Side) -> Self {
        Self {
            label: NodeLabel::Leaf { v, side },
            children: None,
        }
    }

    pub fn internal(label: NodeLabel, first: Self, second: Self) -> Self {
        debug_assert!(!matches!(label, NodeLabel::Leaf { .. }));
        Self {
            label,
            children: Some(Box::new([first, second])),
        }
    }

    pub fn label(&self) -> &NodeLabel {
        &self.label
    }

    pub fn children(&self) -> Option<(&Self, &Self)> {
        self.children.as_ref().map(|c| (&c[0], &c[1]))
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_none()
    }

    /// All vertex labels appearing at leaves below this node. Markers are
    /// counted once per subtree they occur in.
    pub fn leaf_labels(&self) -> VertexSet {
        match self.children() {
            None => match self.label {
                NodeLabel::Leaf { v, .. } => [v].into_iter().collect(),
                _ => VertexSet::new(),
            },
            Some((l, r)) => {
                let mut s = l.leaf_labels();
                s.extend(r.leaf_labels());
                s
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("cannot decompose an empty graph")]
    EmptyGraph,
    #[error("no decomposition rule applies to this {n}-vertex graph")]
    NotDecomposable { n: usize },
    #[error(transparent)]
    Chain(#[from] ChainError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecodeError {
    #[error("marker vertex {0} is absent from the expected child")]
    MarkerAbsent(VertexId),
    #[error("vertex {0} carries inconsistent sides across subtrees")]
    SideMismatch(VertexId),
    #[error("vertex {0} occurs in both children of a union node")]
    OverlappingUnion(VertexId),
    #[error(transparent)]
    Reconstruct(#[from] ChainError),
}

impl From<GraphError> for DecodeError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::OverlappingSets(v) => DecodeError::OverlappingUnion(v),
            other => DecodeError::Reconstruct(ChainError::Graph(other)),
        }
    }
}

/// Builds the decomposition tree of `g` by the fixed rule order.
pub fn build_tree(g: &BipartiteGraph) -> Result<DecompositionTree, BuildError> {
    build_tree_traced(g, &mut |_, _| {})
}

/// Like [`build_tree`] but reports every chain decomposition as it is
/// used, together with the graph it decomposes (the node's graph for
/// chain nodes, its bipartite complement for co-chain nodes).
pub fn build_tree_traced(
    g: &BipartiteGraph,
    observe: &mut dyn FnMut(&BipartiteGraph, &ChainDecomposition),
) -> Result<DecompositionTree, BuildError> {
    if g.is_empty() {
        return Err(BuildError::EmptyGraph);
    }
    if g.vertex_count() == 1 {
        let v = g.vertices().next().unwrap();
        return Ok(DecompositionTree::leaf(v, g.side(v).unwrap()));
    }

    let comps = g.connected_components();
    if comps.len() > 1 {
        let (g1, g2) = split_components(g, &comps)?;
        return Ok(DecompositionTree::internal(
            NodeLabel::Union,
            build_tree_traced(&g1, observe)?,
            build_tree_traced(&g2, observe)?,
        ));
    }

    let h = g.bipartite_complement();
    let hcomps = h.connected_components();
    if hcomps.len() > 1 {
        let (h1, h2) = split_components(&h, &hcomps)?;
        return Ok(DecompositionTree::internal(
            NodeLabel::CoUnion,
            build_tree_traced(&h1, observe)?,
            build_tree_traced(&h2, observe)?,
        ));
    }

    for (base, co) in [(g, false), (&h, true)] {
        for handedness in [Handedness::Left, Handedness::Right] {
            let ng = neighbourhood_graph(base, handedness.primary_side());
            if ng.is_complete() {
                continue;
            }
            let dec = decompose_via_cutset(base, handedness).map_err(BuildError::Chain)?;
            let (dec, v1, v2) = orient_for_smallest(base, dec);
            observe(base, &dec);
            let k = dec.k();

            let mut s1 = dec.a_union();
            s1.extend(dec.b_union());
            s1.insert(v1);
            let mut s2 = dec.c_union();
            s2.extend(dec.d_union());
            s2.insert(v2);
            let f1 = base.induced_subgraph(&s1).map_err(ChainError::Graph)?;
            let f2 = base.induced_subgraph(&s2).map_err(ChainError::Graph)?;

            let label = if co {
                NodeLabel::CoChain {
                    k,
                    v1,
                    v2,
                    handedness,
                }
            } else {
                NodeLabel::Chain {
                    k,
                    v1,
                    v2,
                    handedness,
                }
            };
            return Ok(DecompositionTree::internal(
                label,
                build_tree_traced(&f1, observe)?,
                build_tree_traced(&f2, observe)?,
            ));
        }
    }

    Err(BuildError::NotDecomposable {
        n: g.vertex_count(),
    })
}

fn split_components(
    g: &BipartiteGraph,
    comps: &[VertexSet],
) -> Result<(BipartiteGraph, BipartiteGraph), ChainError> {
    let rest: VertexSet = comps[1..].iter().flatten().copied().collect();
    Ok((
        g.induced_subgraph(&comps[0]).map_err(ChainError::Graph)?,
        g.induced_subgraph(&rest).map_err(ChainError::Graph)?,
    ))
}

/// Chooses markers and the component order. The markers are the smallest
/// labels of `D1` and `B1`; if the smallest non-marker vertex would land
/// in the second child, the symmetric decomposition `(C,D,A,B)` is used
/// instead so that the first child always contains it.
pub(crate) fn orient_for_smallest(
    g: &BipartiteGraph,
    dec: ChainDecomposition,
) -> (ChainDecomposition, VertexId, VertexId) {
    let v1 = *dec.d()[0].iter().next().expect("D1 nonempty for k >= 2");
    let v2 = *dec.b()[0].iter().next().expect("B1 nonempty for k >= 2");
    let m = g
        .vertices()
        .find(|&v| v != v1 && v != v2)
        .expect("chain nodes have at least three vertices");
    let first_side = {
        let mut s = dec.a_union();
        s.extend(dec.b_union());
        s
    };
    if first_side.contains(&m) {
        (dec, v1, v2)
    } else {
        let swapped = dec.swap_components();
        let v1s = *swapped.d()[0].iter().next().unwrap();
        let v2s = *swapped.b()[0].iter().next().unwrap();
        debug_assert_eq!(
            [v1s.min(v2s), v1s.max(v2s)],
            [v1.min(v2), v1.max(v2)],
            "swapping components permutes the same marker pair"
        );
        (swapped, v1s, v2s)
    }
}

/// Reconstructs the graph a tree was built from. Exact inverse of
/// [`build_tree`] and total on well-formed trees.
pub fn decode_tree(t: &DecompositionTree) -> Result<BipartiteGraph, DecodeError> {
    match (&t.label, t.children()) {
        (&NodeLabel::Leaf { v, side }, None) => {
            let sides = [(v, side)].into_iter().collect();
            Ok(BipartiteGraph::from_labelled(sides, [])
                .expect("single vertex graph is always valid"))
        }
        (NodeLabel::Union, Some((l, r))) => {
            let (gl, gr) = (decode_tree(l)?, decode_tree(r)?);
            Ok(gl.disjoint_union(&gr)?)
        }
        (NodeLabel::CoUnion, Some((l, r))) => {
            let (hl, hr) = (decode_tree(l)?, decode_tree(r)?);
            Ok(hl.disjoint_union(&hr)?.bipartite_complement())
        }
        (
            &NodeLabel::Chain {
                k,
                v1,
                v2,
                handedness,
            },
            Some((l, r)),
        ) => decode_chain(l, r, k, v1, v2, handedness),
        (
            &NodeLabel::CoChain {
                k,
                v1,
                v2,
                handedness,
            },
            Some((l, r)),
        ) => Ok(decode_chain(l, r, k, v1, v2, handedness)?.bipartite_complement()),
        _ => unreachable!("leaf labels exactly at leaves by construction"),
    }
}

fn decode_chain(
    first: &DecompositionTree,
    second: &DecompositionTree,
    k: usize,
    v1: VertexId,
    v2: VertexId,
    handedness: Handedness,
) -> Result<BipartiteGraph, DecodeError> {
    let f1 = decode_tree(first)?;
    let f2 = decode_tree(second)?;
    let marker_side = handedness.secondary_side();
    for (f, marker) in [(&f1, v1), (&f2, v2)] {
        match f.side(marker) {
            None => return Err(DecodeError::MarkerAbsent(marker)),
            Some(s) if s != marker_side => return Err(DecodeError::SideMismatch(marker)),
            _ => {}
        }
    }
    // Each marker also occurs as an ordinary vertex of the opposite
    // component, on the same side.
    for (f, marker) in [(&f2, v1), (&f1, v2)] {
        match f.side(marker) {
            None => return Err(DecodeError::MarkerAbsent(marker)),
            Some(s) if s != marker_side => return Err(DecodeError::SideMismatch(marker)),
            _ => {}
        }
    }

    // D1 is anticomplete to A1 and complete to every later A-block, so the
    // non-neighbours of the marker inside its host child are exactly A1.
    let a1: VertexSet = f1
        .side_vertices(handedness.primary_side())
        .difference(f1.neighbours_of(v1))
        .copied()
        .collect();
    let c1: VertexSet = f2
        .side_vertices(handedness.primary_side())
        .difference(f2.neighbours_of(v2))
        .copied()
        .collect();
    let g1 = f1.remove_vertex(v1).map_err(ChainError::Graph)?;
    let g2 = f2.remove_vertex(v2).map_err(ChainError::Graph)?;
    Ok(reconstruct_from_components(
        &g1, &g2, k, &a1, &c1, handedness,
    )?)
}

/// Exact node and leaf counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeMetrics {
    pub nodes: usize,
    pub leaves: usize,
}

pub fn tree_metrics(t: &DecompositionTree) -> TreeMetrics {
    match t.children() {
        None => TreeMetrics {
            nodes: 1,
            leaves: 1,
        },
        Some((l, r)) => {
            let (ml, mr) = (tree_metrics(l), tree_metrics(r));
            TreeMetrics {
                nodes: 1 + ml.nodes + mr.nodes,
                leaves: ml.leaves + mr.leaves,
            }
        }
    }
}

/// Upper bound on tree nodes for an n-vertex graph, defined for n >= 3.
pub fn node_count_bound(n: usize) -> Option<usize> {
    (n >= 3).then(|| 8 * n - 17)
}

/// Upper bound on tree leaves for an n-vertex graph, defined for n >= 3.
pub fn leaf_count_bound(n: usize) -> Option<usize> {
    (n >= 3).then(|| 4 * (n - 2))
}

/// The clauses a tree must satisfy as a 2-decomposition of its vertex
/// set: children cover their parent, overlap by at most two vertices, and
/// each contributes a private vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwoDecClause {
    RootSetRepeated,
    LeafSize,
    ChildrenCover,
    Overlap,
    PrivateElement,
}

impl fmt::Display for TwoDecClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            TwoDecClause::RootSetRepeated => "root-set-repeated",
            TwoDecClause::LeafSize => "leaf-size",
            TwoDecClause::ChildrenCover => "children-cover",
            TwoDecClause::Overlap => "overlap",
            TwoDecClause::PrivateElement => "private-element",
        };
        write!(f, "{name}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoDecViolation {
    pub clause: TwoDecClause,
    pub detail: String,
}

impl fmt::Display for TwoDecViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.clause, self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwoDecReport {
    pub violations: Vec<TwoDecViolation>,
    pub max_overlap: usize,
}

impl TwoDecReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the 2-decomposition structure of a tree. `S(v)` is the vertex
/// set of the graph the node decodes to: leaf labels at leaves, the union
/// of child sets at union nodes, and the union minus the markers at chain
/// nodes.
pub fn verify_2decomposition(t: &DecompositionTree) -> TwoDecReport {
    let mut report = TwoDecReport::default();
    let root_set = decoded_set(t);
    walk(t, &root_set, true, &mut report);
    return report;

    fn decoded_set(t: &DecompositionTree) -> VertexSet {
        match (&t.label, t.children()) {
            (&NodeLabel::Leaf { v, .. }, None) => [v].into_iter().collect(),
            (NodeLabel::Union | NodeLabel::CoUnion, Some((l, r))) => {
                let mut s = decoded_set(l);
                s.extend(decoded_set(r));
                s
            }
            (NodeLabel::Chain { v1, v2, .. } | NodeLabel::CoChain { v1, v2, .. }, Some((l, r))) => {
                let mut s1 = decoded_set(l);
                s1.remove(v1);
                let mut s2 = decoded_set(r);
                s2.remove(v2);
                s1.extend(s2);
                s1
            }
            _ => VertexSet::new(),
        }
    }

    fn walk(t: &DecompositionTree, root_set: &VertexSet, is_root: bool, report: &mut TwoDecReport) {
        let s = decoded_set(t);
        if !is_root && &s == root_set {
            report.violations.push(TwoDecViolation {
                clause: TwoDecClause::RootSetRepeated,
                detail: "a non-root node carries the full vertex set".into(),
            });
        }
        match t.children() {
            None => {
                if s.len() != 1 {
                    report.violations.push(TwoDecViolation {
                        clause: TwoDecClause::LeafSize,
                        detail: format!("leaf set has {} vertices", s.len()),
                    });
                }
            }
            Some((l, r)) => {
                if s.len() < 2 {
                    report.violations.push(TwoDecViolation {
                        clause: TwoDecClause::LeafSize,
                        detail: format!("internal node set has {} vertices", s.len()),
                    });
                }
                let s1 = decoded_set(l);
                let s2 = decoded_set(r);
                let union: VertexSet = s1.union(&s2).copied().collect();
                if union != s {
                    report.violations.push(TwoDecViolation {
                        clause: TwoDecClause::ChildrenCover,
                        detail: "child sets do not union to the node's set".into(),
                    });
                }
                let overlap = s1.len() + s2.len() - union.len();
                report.max_overlap = report.max_overlap.max(overlap);
                if overlap > 2 {
                    report.violations.push(TwoDecViolation {
                        clause: TwoDecClause::Overlap,
                        detail: format!("children overlap in {overlap} vertices"),
                    });
                }
                if s1.difference(&s2).next().is_none() || s2.difference(&s1).next().is_none() {
                    report.violations.push(TwoDecViolation {
                        clause: TwoDecClause::PrivateElement,
                        detail: "a child has no private vertex".into(),
                    });
                }
                walk(l, root_set, false, report);
                walk(r, root_set, false, report);
            }
        }
    }
}

/// Consistency check on marker orientation: at every chain node the
/// smallest non-marker vertex must lie in the first child. The builder
/// enforces this; hand-built trees may violate it without harming decode,
/// which trusts the stored child order.
pub fn marker_orientation_violations(t: &DecompositionTree) -> Vec<String> {
    let mut out = Vec::new();
    walk(t, &mut out);
    return out;

    fn walk(t: &DecompositionTree, out: &mut Vec<String>) {
        if let (NodeLabel::Chain { v1, v2, .. } | NodeLabel::CoChain { v1, v2, .. }, Some((l, r))) =
            (&t.label, t.children())
        {
            let all = t.leaf_labels();
            if let Some(&m) = all.iter().find(|&&v| v != *v1 && v != *v2) {
                if !l.leaf_labels().contains(&m) {
                    out.push(format!(
                        "smallest non-marker vertex {m} is not in the first child"
                    ));
                }
            }
            walk(l, out);
            walk(r, out);
        } else if let Some((l, r)) = t.children() {
            walk(l, out);
            walk(r, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraph::vset;
    use crate::chain::validate;
    use crate::fixtures;

    #[test]
    fn two_k2_tree_shape() {
        let t = build_tree(&fixtures::two_k2()).unwrap();
        assert_eq!(t.label(), &NodeLabel::Union);
        let (l, r) = t.children().unwrap();
        for (child, (a, b)) in [(l, (1, 2)), (r, (3, 4))] {
            assert_eq!(child.label(), &NodeLabel::CoUnion);
            let (cl, cr) = child.children().unwrap();
            assert_eq!(
                cl.label(),
                &NodeLabel::Leaf {
                    v: VertexId(a),
                    side: Side::Left
                }
            );
            assert_eq!(
                cr.label(),
                &NodeLabel::Leaf {
                    v: VertexId(b),
                    side: Side::Right
                }
            );
        }
        assert_eq!(
            tree_metrics(&t),
            TreeMetrics {
                nodes: 7,
                leaves: 4
            }
        );
    }

    #[test]
    fn g8_root_is_the_expected_chain_node() {
        let g = fixtures::g8();
        let t = build_tree(&g).unwrap();
        assert_eq!(
            t.label(),
            &NodeLabel::Chain {
                k: 2,
                v1: VertexId(7),
                v2: VertexId(5),
                handedness: Handedness::Left
            }
        );
        let (f1, f2) = t.children().unwrap();
        assert_eq!(f1.leaf_labels(), vset([1, 2, 4, 5, 6, 7, 8]));
        assert_eq!(f2.leaf_labels(), vset([3, 5, 7]));
    }

    #[test]
    fn traced_chain_decompositions_validate() {
        let g = fixtures::g8();
        let mut seen = 0;
        let t = build_tree_traced(&g, &mut |base, dec| {
            seen += 1;
            assert!(validate(base, dec).is_valid());
        })
        .unwrap();
        assert!(seen >= 1);
        assert_eq!(decode_tree(&t).unwrap(), g);
    }

    #[test]
    fn p7_fails_with_quasi_threshold_witness() {
        let err = build_tree(&fixtures::p7()).unwrap_err();
        match err {
            BuildError::Chain(ChainError::NotQuasiThreshold(w)) => {
                assert_eq!(format!("{w}"), "induced P4 1-3-5-7");
            }
            other => panic!("expected NotQuasiThreshold, got {other:?}"),
        }
    }

    #[test]
    fn decode_round_trips_fixtures() {
        for g in [
            fixtures::two_k2(),
            fixtures::g8(),
            fixtures::c6(),
            fixtures::path(6),
            fixtures::cycle(8).bipartite_complement(),
        ] {
            if let Ok(t) = build_tree(&g) {
                assert_eq!(decode_tree(&t).unwrap(), g);
            }
        }
    }

    #[test]
    fn single_leaf_decodes_to_one_vertex() {
        let t = DecompositionTree::leaf(VertexId(1), Side::Left);
        let g = decode_tree(&t).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.side(VertexId(1)), Some(Side::Left));
        assert_eq!(
            tree_metrics(&t),
            TreeMetrics {
                nodes: 1,
                leaves: 1
            }
        );
    }

    #[test]
    fn metrics_respect_bounds_on_fixtures() {
        for (g, n) in [(fixtures::two_k2(), 4), (fixtures::g8(), 8)] {
            let t = build_tree(&g).unwrap();
            let m = tree_metrics(&t);
            assert!(m.nodes <= node_count_bound(n).unwrap());
            assert!(m.leaves <= leaf_count_bound(n).unwrap());
        }
    }

    #[test]
    fn g8_tree_is_a_2decomposition_with_marker_overlap() {
        let t = build_tree(&fixtures::g8()).unwrap();
        let report = verify_2decomposition(&t);
        assert!(report.is_valid(), "{:?}", report.violations);
        assert_eq!(report.max_overlap, 2);
        let (l, r) = t.children().unwrap();
        let s1 = l.leaf_labels();
        let s2 = r.leaf_labels();
        let overlap: VertexSet = s1.intersection(&s2).copied().collect();
        assert_eq!(overlap, vset([5, 7]));
    }

    #[test]
    fn two_k2_tree_has_zero_overlap() {
        let t = build_tree(&fixtures::two_k2()).unwrap();
        let report = verify_2decomposition(&t);
        assert!(report.is_valid());
        assert_eq!(report.max_overlap, 0);
    }

    #[test]
    fn hand_built_tree_without_private_vertex_is_flagged() {
        let t = DecompositionTree::internal(
            NodeLabel::Union,
            DecompositionTree::leaf(VertexId(1), Side::Left),
            DecompositionTree::leaf(VertexId(2), Side::Right),
        );
        let t = DecompositionTree::internal(
            NodeLabel::Union,
            t,
            DecompositionTree::leaf(VertexId(2), Side::Right),
        );
        let report = verify_2decomposition(&t);
        assert!(report
            .violations
            .iter()
            .any(|v| v.clause == TwoDecClause::PrivateElement));
    }

    #[test]
    fn hand_built_chain_node_missing_a_marker_fails_cover_clause() {
        // The marker 7 never occurs under the second child, so the child
        // sets do not union to the node's decoded set.
        let t = DecompositionTree::internal(
            NodeLabel::Chain {
                k: 2,
                v1: VertexId(7),
                v2: VertexId(5),
                handedness: Handedness::Left,
            },
            DecompositionTree::leaf(VertexId(1), Side::Left),
            DecompositionTree::leaf(VertexId(5), Side::Right),
        );
        let report = verify_2decomposition(&t);
        assert!(report
            .violations
            .iter()
            .any(|v| v.clause == TwoDecClause::ChildrenCover));
    }

    #[test]
    fn marker_orientation_holds_for_built_trees() {
        let t = build_tree(&fixtures::g8()).unwrap();
        assert!(marker_orientation_violations(&t).is_empty());
    }

    #[test]
    fn orientation_swaps_when_smallest_vertex_sits_in_second_component() {
        use crate::chain::ChainDecomposition;
        // Fabricated valid-shaped decomposition of a 6-vertex graph where
        // the smallest non-marker label lives on the C/D side.
        let g = BipartiteGraph::new(
            &[
                Side::Left,
                Side::Right,
                Side::Left,
                Side::Right,
                Side::Left,
                Side::Right,
            ],
            [(3, 2), (3, 4), (5, 6), (1, 6), (5, 2)],
        )
        .unwrap();
        let dec = ChainDecomposition::new(
            Handedness::Left,
            vec![vset([3]), vset([5])],
            vec![vset([2]), vset([4])],
            vec![vset([1]), vset([])],
            vec![vset([6]), vset([])],
        )
        .unwrap();
        let (oriented, v1, v2) = orient_for_smallest(&g, dec.clone());
        // v1 = min D1 = 6, v2 = min B1 = 2; smallest non-marker is 1,
        // which lies in C ∪ D, so the components must swap.
        assert_eq!(oriented, dec.swap_components());
        assert_eq!(v1, VertexId(2));
        assert_eq!(v2, VertexId(6));
    }

    #[test]
    fn decode_rejects_missing_marker() {
        // Chain node whose first child lacks the marker 7 entirely.
        let t = DecompositionTree::internal(
            NodeLabel::Chain {
                k: 2,
                v1: VertexId(7),
                v2: VertexId(5),
                handedness: Handedness::Left,
            },
            DecompositionTree::leaf(VertexId(1), Side::Left),
            DecompositionTree::leaf(VertexId(5), Side::Right),
        );
        assert_eq!(
            decode_tree(&t).unwrap_err(),
            DecodeError::MarkerAbsent(VertexId(7))
        );
    }

    #[test]
    fn decode_rejects_overlapping_union() {
        let t = DecompositionTree::internal(
            NodeLabel::Union,
            DecompositionTree::leaf(VertexId(1), Side::Left),
            DecompositionTree::leaf(VertexId(1), Side::Left),
        );
        assert_eq!(
            decode_tree(&t).unwrap_err(),
            DecodeError::OverlappingUnion(VertexId(1))
        );
    }

    #[test]
    fn chain_children_carry_the_marker_neighbourhood_property() {
        // In the first child, the marker's neighbours on the primary side
        // are exactly the A-blocks above the first.
        let g = fixtures::g8();
        let mut decs = Vec::new();
        let t =
            build_tree_traced(&g, &mut |base, dec| decs.push((base.clone(), dec.clone()))).unwrap();
        let (base, dec) = &decs[0];
        let (f1, _) = t.children().unwrap();
        let f1g = base.induced_subgraph(&f1.leaf_labels()).unwrap();
        let v1 = match t.label() {
            NodeLabel::Chain { v1, .. } => *v1,
            _ => unreachable!(),
        };
        let mut upper = dec.a_union();
        for v in &dec.a()[0] {
            upper.remove(v);
        }
        let nbrs_on_primary: VertexSet = f1g
            .neighbours_of(v1)
            .intersection(&f1g.side_vertices(Side::Left))
            .copied()
            .collect();
        assert_eq!(nbrs_on_primary, upper);
    }
}
