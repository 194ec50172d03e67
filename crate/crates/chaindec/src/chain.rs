//! Chain decompositions: validation, construction via the universal
//! clique cutset, splitting into components, and exact reconstruction.
//!
//! A k-chain decomposition partitions one part of a bipartite graph into
//! blocks `A_1..A_k, C_1..C_k` and the other into `B_1..B_k, D_1..D_k`
//! subject to a ladder of completeness and anticompleteness conditions
//! between blocks. Its two components `G[A∪B]` and `G[C∪D]` determine the
//! graph once `k`, `A_1` and `C_1` are known; all cross edges run between
//! `A_i×D_j` and `C_i×B_j` with `j < i`.

use std::fmt;

use thiserror::Error;

use crate::bigraph::{BipartiteGraph, GraphError, Side, VertexId, VertexSet};
use crate::neighbourhood::{neighbourhood_graph, universal_clique_cutset, NeighbourhoodError};
use crate::patterns::InducedPathWitness;

/// Which part carries the `A`/`C` blocks.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Handedness {
    Left,
    Right,
}

impl Handedness {
    /// Side holding the `A_i` and `C_i` blocks.
    pub fn primary_side(self) -> Side {
        match self {
            Handedness::Left => Side::Left,
            Handedness::Right => Side::Right,
        }
    }

    /// Side holding the `B_i` and `D_i` blocks.
    pub fn secondary_side(self) -> Side {
        self.primary_side().opposite()
    }
}

impl fmt::Display for Handedness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Handedness::Left => write!(f, "left"),
            Handedness::Right => write!(f, "right"),
        }
    }
}

/// The ordered quadruple of block sequences of a k-chain decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainDecomposition {
    handedness: Handedness,
    a: Vec<VertexSet>,
    b: Vec<VertexSet>,
    c: Vec<VertexSet>,
    d: Vec<VertexSet>,
}

impl ChainDecomposition {
    pub fn new(
        handedness: Handedness,
        a: Vec<VertexSet>,
        b: Vec<VertexSet>,
        c: Vec<VertexSet>,
        d: Vec<VertexSet>,
    ) -> Result<Self, ChainError> {
        let k = a.len();
        if k == 0 || b.len() != k || c.len() != k || d.len() != k {
            return Err(ChainError::Shape(format!(
                "block sequences must share one positive length, got {}/{}/{}/{}",
                a.len(),
                b.len(),
                c.len(),
                d.len()
            )));
        }
        Ok(Self {
            handedness,
            a,
            b,
            c,
            d,
        })
    }

    pub fn k(&self) -> usize {
        self.a.len()
    }

    pub fn handedness(&self) -> Handedness {
        self.handedness
    }

    pub fn a(&self) -> &[VertexSet] {
        &self.a
    }

    pub fn b(&self) -> &[VertexSet] {
        &self.b
    }

    pub fn c(&self) -> &[VertexSet] {
        &self.c
    }

    pub fn d(&self) -> &[VertexSet] {
        &self.d
    }

    pub fn a_union(&self) -> VertexSet {
        union_of(&self.a)
    }

    pub fn b_union(&self) -> VertexSet {
        union_of(&self.b)
    }

    pub fn c_union(&self) -> VertexSet {
        union_of(&self.c)
    }

    pub fn d_union(&self) -> VertexSet {
        union_of(&self.d)
    }

    /// The symmetric decomposition with the component roles exchanged:
    /// `(A,B,C,D) -> (C,D,A,B)`. Validity is preserved.
    pub fn swap_components(&self) -> Self {
        Self {
            handedness: self.handedness,
            a: self.c.clone(),
            b: self.d.clone(),
            c: self.a.clone(),
            d: self.b.clone(),
        }
    }
}

fn union_of(blocks: &[VertexSet]) -> VertexSet {
    blocks.iter().flatten().copied().collect()
}

/// First blocks plus the middle sets from which a chain decomposition is
/// grown. `a ∪ q ∪ c` must partition the primary part and `b ∪ r ∪ d` the
/// secondary part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSeed {
    pub handedness: Handedness,
    pub a: VertexSet,
    pub b: VertexSet,
    pub c: VertexSet,
    pub d: VertexSet,
    pub q: VertexSet,
    pub r: VertexSet,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("seed condition {clause} violated: {detail}")]
    BadSeed { clause: u8, detail: String },
    #[error("induced P7 found: {0}")]
    InducedP7(InducedPathWitness),
    #[error("graph is complete; it has no cutset")]
    CompleteInput,
    #[error("graph is disconnected")]
    DisconnectedInput,
    #[error("neighbourhood graph is not quasi-threshold: {0}")]
    NotQuasiThreshold(crate::neighbourhood::QuasiThresholdWitness),
    #[error("decomposition is invalid:\n{0}")]
    InvalidDecomposition(Box<ChainReport>),
    #[error("malformed components: {0}")]
    MalformedComponents(String),
    #[error("malformed decomposition: {0}")]
    Shape(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl From<NeighbourhoodError> for ChainError {
    fn from(e: NeighbourhoodError) -> Self {
        match e {
            NeighbourhoodError::CompleteInput => ChainError::CompleteInput,
            NeighbourhoodError::DisconnectedInput => ChainError::DisconnectedInput,
            NeighbourhoodError::NotQuasiThreshold(w) => ChainError::NotQuasiThreshold(w),
        }
    }
}

/// The individual conditions a chain decomposition must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainAxiom {
    BlockEmpty,
    PartitionViolated,
    BWithoutNeighbourInA,
    DWithoutNeighbourInC,
    AWithoutNonNeighbourInB,
    CWithoutNonNeighbourInD,
    ABNotAnticomplete,
    ABNotComplete,
    CDNotAnticomplete,
    CDNotComplete,
    ADNotComplete,
    ADNotAnticomplete,
    CBNotComplete,
    CBNotAnticomplete,
}

impl fmt::Display for ChainAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ChainAxiom::BlockEmpty => "block-empty",
            ChainAxiom::PartitionViolated => "partition",
            ChainAxiom::BWithoutNeighbourInA => "B-needs-neighbour-in-A",
            ChainAxiom::DWithoutNeighbourInC => "D-needs-neighbour-in-C",
            ChainAxiom::AWithoutNonNeighbourInB => "A-needs-non-neighbour-in-previous-B",
            ChainAxiom::CWithoutNonNeighbourInD => "C-needs-non-neighbour-in-previous-D",
            ChainAxiom::ABNotAnticomplete => "A-B-anticomplete-above",
            ChainAxiom::ABNotComplete => "A-B-complete-below",
            ChainAxiom::CDNotAnticomplete => "C-D-anticomplete-above",
            ChainAxiom::CDNotComplete => "C-D-complete-below",
            ChainAxiom::ADNotComplete => "A-D-complete-below",
            ChainAxiom::ADNotAnticomplete => "A-D-anticomplete-at-or-above",
            ChainAxiom::CBNotComplete => "C-B-complete-below",
            ChainAxiom::CBNotAnticomplete => "C-B-anticomplete-at-or-above",
        };
        write!(f, "{name}")
    }
}

/// One violated axiom with the vertices that witness the violation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainViolation {
    pub axiom: ChainAxiom,
    pub witness: Vec<VertexId>,
    pub detail: String,
}

impl fmt::Display for ChainViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.axiom, self.detail)
    }
}

/// Validation outcome; empty iff the decomposition satisfies every axiom.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChainReport {
    pub violations: Vec<ChainViolation>,
}

impl ChainReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ChainReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks every axiom of `dec` against the edges of `g`. Violations are
/// data, not errors.
pub fn validate(g: &BipartiteGraph, dec: &ChainDecomposition) -> ChainReport {
    let mut out = Vec::new();
    let k = dec.k();
    let (a, b, c, d) = (dec.a(), dec.b(), dec.c(), dec.d());

    check_partition(g, dec, &mut out);

    // Mandatory non-emptiness: every block below the last layer, and at
    // least one block in the last layer.
    for i in 0..k.saturating_sub(1) {
        for (name, blocks) in [("A", a), ("B", b), ("C", c), ("D", d)] {
            if blocks[i].is_empty() {
                out.push(ChainViolation {
                    axiom: ChainAxiom::BlockEmpty,
                    witness: vec![],
                    detail: format!("{name}{} is empty", i + 1),
                });
            }
        }
    }
    if [a, b, c, d].iter().all(|s| s[k - 1].is_empty()) {
        out.push(ChainViolation {
            axiom: ChainAxiom::BlockEmpty,
            witness: vec![],
            detail: format!("all blocks of layer {k} are empty"),
        });
    }

    // Domination inside each layer.
    for i in 0..k {
        for &v in &b[i] {
            if !a[i].iter().any(|&u| g.has_edge(u, v)) {
                out.push(ChainViolation {
                    axiom: ChainAxiom::BWithoutNeighbourInA,
                    witness: vec![v],
                    detail: format!("{v} in B{} has no neighbour in A{}", i + 1, i + 1),
                });
            }
        }
        for &v in &d[i] {
            if !c[i].iter().any(|&u| g.has_edge(u, v)) {
                out.push(ChainViolation {
                    axiom: ChainAxiom::DWithoutNeighbourInC,
                    witness: vec![v],
                    detail: format!("{v} in D{} has no neighbour in C{}", i + 1, i + 1),
                });
            }
        }
    }

    // Non-neighbour condition for the middle layers.
    for i in 1..k.saturating_sub(1) {
        for &u in &a[i] {
            if b[i - 1].iter().all(|&v| g.has_edge(u, v)) {
                out.push(ChainViolation {
                    axiom: ChainAxiom::AWithoutNonNeighbourInB,
                    witness: vec![u],
                    detail: format!("{u} in A{} is complete to B{}", i + 1, i),
                });
            }
        }
        for &u in &c[i] {
            if d[i - 1].iter().all(|&v| g.has_edge(u, v)) {
                out.push(ChainViolation {
                    axiom: ChainAxiom::CWithoutNonNeighbourInD,
                    witness: vec![u],
                    detail: format!("{u} in C{} is complete to D{}", i + 1, i),
                });
            }
        }
    }

    // Ladder conditions between layers.
    for i in 0..k {
        for j in 0..k {
            if j > i {
                ladder_anticomplete(
                    g,
                    &a[i],
                    &b[j],
                    "A",
                    "B",
                    i,
                    j,
                    ChainAxiom::ABNotAnticomplete,
                    &mut out,
                );
                ladder_anticomplete(
                    g,
                    &c[i],
                    &d[j],
                    "C",
                    "D",
                    i,
                    j,
                    ChainAxiom::CDNotAnticomplete,
                    &mut out,
                );
            }
            if j + 1 < i {
                ladder_complete(
                    g,
                    &a[i],
                    &b[j],
                    "A",
                    "B",
                    i,
                    j,
                    ChainAxiom::ABNotComplete,
                    &mut out,
                );
                ladder_complete(
                    g,
                    &c[i],
                    &d[j],
                    "C",
                    "D",
                    i,
                    j,
                    ChainAxiom::CDNotComplete,
                    &mut out,
                );
            }
            if j < i {
                ladder_complete(
                    g,
                    &a[i],
                    &d[j],
                    "A",
                    "D",
                    i,
                    j,
                    ChainAxiom::ADNotComplete,
                    &mut out,
                );
                ladder_complete(
                    g,
                    &c[i],
                    &b[j],
                    "C",
                    "B",
                    i,
                    j,
                    ChainAxiom::CBNotComplete,
                    &mut out,
                );
            } else {
                ladder_anticomplete(
                    g,
                    &a[i],
                    &d[j],
                    "A",
                    "D",
                    i,
                    j,
                    ChainAxiom::ADNotAnticomplete,
                    &mut out,
                );
                ladder_anticomplete(
                    g,
                    &c[i],
                    &b[j],
                    "C",
                    "B",
                    i,
                    j,
                    ChainAxiom::CBNotAnticomplete,
                    &mut out,
                );
            }
        }
    }

    ChainReport { violations: out }
}

#[allow(clippy::too_many_arguments)]
fn ladder_complete(
    g: &BipartiteGraph,
    x: &VertexSet,
    y: &VertexSet,
    xn: &str,
    yn: &str,
    i: usize,
    j: usize,
    axiom: ChainAxiom,
    out: &mut Vec<ChainViolation>,
) {
    for &u in x {
        for &v in y {
            if !g.has_edge(u, v) {
                out.push(ChainViolation {
                    axiom,
                    witness: vec![u, v],
                    detail: format!(
                        "missing edge {u}-{v} between {xn}{} and {yn}{}",
                        i + 1,
                        j + 1
                    ),
                });
                return;
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn ladder_anticomplete(
    g: &BipartiteGraph,
    x: &VertexSet,
    y: &VertexSet,
    xn: &str,
    yn: &str,
    i: usize,
    j: usize,
    axiom: ChainAxiom,
    out: &mut Vec<ChainViolation>,
) {
    for &u in x {
        for &v in y {
            if g.has_edge(u, v) {
                out.push(ChainViolation {
                    axiom,
                    witness: vec![u, v],
                    detail: format!(
                        "unexpected edge {u}-{v} between {xn}{} and {yn}{}",
                        i + 1,
                        j + 1
                    ),
                });
                return;
            }
        }
    }
}

fn check_partition(g: &BipartiteGraph, dec: &ChainDecomposition, out: &mut Vec<ChainViolation>) {
    let primary = g.side_vertices(dec.handedness().primary_side());
    let secondary = g.side_vertices(dec.handedness().secondary_side());
    let mut seen = VertexSet::new();
    let push = |detail: String, witness: Vec<VertexId>, out: &mut Vec<ChainViolation>| {
        out.push(ChainViolation {
            axiom: ChainAxiom::PartitionViolated,
            witness,
            detail,
        });
    };
    for (name, blocks, part) in [
        ("A", dec.a(), &primary),
        ("C", dec.c(), &primary),
        ("B", dec.b(), &secondary),
        ("D", dec.d(), &secondary),
    ] {
        for (i, block) in blocks.iter().enumerate() {
            for &v in block {
                if !part.contains(&v) {
                    push(
                        format!("{v} in {name}{} is not on the required side", i + 1),
                        vec![v],
                        out,
                    );
                }
                if !seen.insert(v) {
                    push(format!("{v} occurs in more than one block"), vec![v], out);
                }
            }
        }
    }
    for &v in primary.iter().chain(secondary.iter()) {
        if !seen.contains(&v) {
            push(format!("{v} is not covered by any block"), vec![v], out);
        }
    }
}

/// Grows a chain decomposition whose first blocks are exactly the seed's
/// `(a, b, c, d)`. The seed conditions are always checked; a violated
/// condition is reported as `BadSeed` with its number.
///
/// When the middle sets cannot be layered the graph contains an induced
/// P7 and the error carries a verified witness.
pub fn grow_from_seed(
    g: &BipartiteGraph,
    seed: &ChainSeed,
) -> Result<ChainDecomposition, ChainError> {
    check_seed(g, seed)?;

    if seed.q.is_empty() {
        // The fourth seed condition forces r to be empty here, so the
        // graph splits as a 1-chain.
        return ChainDecomposition::new(
            seed.handedness,
            vec![seed.a.clone()],
            vec![seed.b.clone()],
            vec![seed.c.clone()],
            vec![seed.d.clone()],
        );
    }

    // Split q by completeness towards b and d.
    let complete_to = |x: VertexId, set: &VertexSet| set.iter().all(|&v| g.has_edge(x, v));
    let mut qb = VertexSet::new();
    let mut qd = VertexSet::new();
    let mut qbd = VertexSet::new();
    for &x in &seed.q {
        match (complete_to(x, &seed.b), complete_to(x, &seed.d)) {
            (true, false) => qb.insert(x),
            (false, true) => qd.insert(x),
            (true, true) => qbd.insert(x),
            (false, false) => unreachable!("excluded by seed condition 8"),
        };
    }

    // Split r by which side of q it touches. A vertex touching both sides
    // threads an induced P7 through the seed blocks.
    let mut rb = VertexSet::new();
    let mut rd = VertexSet::new();
    let mut rbd = VertexSet::new();
    for &x in &seed.r {
        let in_qb = qb.iter().any(|&q| g.has_edge(x, q));
        let in_qd = qd.iter().any(|&q| g.has_edge(x, q));
        match (in_qb, in_qd) {
            (true, true) => return Err(ChainError::InducedP7(p7_through_r(g, seed, x, &qb, &qd))),
            (true, false) => rb.insert(x),
            (false, true) => rd.insert(x),
            (false, false) => rbd.insert(x),
        };
    }

    // A q-vertex complete to both b and d but missing vertices on both
    // sides of r also threads an induced P7.
    for &x in &qbd {
        let miss_rb = rb.iter().find(|&&v| !g.has_edge(x, v));
        let miss_rd = rd.iter().find(|&&v| !g.has_edge(x, v));
        if let (Some(&r1), Some(&r2)) = (miss_rb, miss_rd) {
            return Err(ChainError::InducedP7(p7_through_q(
                g, seed, x, r1, r2, &qb, &qd,
            )));
        }
    }

    if rb.is_empty() {
        let a2: VertexSet = qd.union(&qbd).copied().collect();
        let b2: VertexSet = rd.union(&rbd).copied().collect();
        ChainDecomposition::new(
            seed.handedness,
            vec![seed.a.clone(), a2],
            vec![seed.b.clone(), b2],
            vec![seed.c.clone(), qb],
            vec![seed.d.clone(), VertexSet::new()],
        )
    } else if rd.is_empty() {
        let c2: VertexSet = qb.union(&qbd).copied().collect();
        let d2: VertexSet = rb.union(&rbd).copied().collect();
        ChainDecomposition::new(
            seed.handedness,
            vec![seed.a.clone(), qd],
            vec![seed.b.clone(), VertexSet::new()],
            vec![seed.c.clone(), c2],
            vec![seed.d.clone(), d2],
        )
    } else {
        // Both sides of r are inhabited: layer the middle recursively.
        let mut middle = seed.q.clone();
        middle.extend(seed.r.iter().copied());
        let sub_graph = g.induced_subgraph(&middle)?;
        let sub_seed = ChainSeed {
            handedness: seed.handedness,
            a: qd,
            b: rd,
            c: qb,
            d: rb,
            q: qbd,
            r: rbd,
        };
        let sub = grow_from_seed(&sub_graph, &sub_seed)?;
        let mut a = vec![seed.a.clone()];
        let mut b = vec![seed.b.clone()];
        let mut c = vec![seed.c.clone()];
        let mut d = vec![seed.d.clone()];
        a.extend(sub.a.iter().cloned());
        b.extend(sub.b.iter().cloned());
        c.extend(sub.c.iter().cloned());
        d.extend(sub.d.iter().cloned());
        ChainDecomposition::new(seed.handedness, a, b, c, d)
    }
}

fn smallest(set: impl IntoIterator<Item = VertexId>) -> VertexId {
    set.into_iter().next().expect("set guaranteed nonempty")
}

/// Witness for an r-vertex `x` adjacent into both `qb` and `qd`:
/// `a-b-q1-x-q2-d-c` is an induced P7, each vertex chosen smallest.
fn p7_through_r(
    g: &BipartiteGraph,
    seed: &ChainSeed,
    x: VertexId,
    qb: &VertexSet,
    qd: &VertexSet,
) -> InducedPathWitness {
    let q1 = smallest(qb.iter().copied().filter(|&q| g.has_edge(x, q)));
    let q2 = smallest(qd.iter().copied().filter(|&q| g.has_edge(x, q)));
    let b = smallest(seed.b.iter().copied().filter(|&v| !g.has_edge(q2, v)));
    let a = smallest(seed.a.iter().copied().filter(|&v| g.has_edge(v, b)));
    let d = smallest(seed.d.iter().copied().filter(|&v| !g.has_edge(q1, v)));
    let c = smallest(seed.c.iter().copied().filter(|&v| g.has_edge(v, d)));
    let w = InducedPathWitness::from_vertices(vec![a, b, q1, x, q2, d, c]);
    debug_assert!(w.verify(g), "constructed witness must be chordless");
    w
}

/// Witness for a q-vertex `x` missing `r1` on the b-side and `r2` on the
/// d-side: `r1-q1-b-x-d-q2-r2` is an induced P7.
fn p7_through_q(
    g: &BipartiteGraph,
    seed: &ChainSeed,
    x: VertexId,
    r1: VertexId,
    r2: VertexId,
    qb: &VertexSet,
    qd: &VertexSet,
) -> InducedPathWitness {
    let q1 = smallest(qb.iter().copied().filter(|&q| g.has_edge(r1, q)));
    let d = smallest(seed.d.iter().copied().filter(|&v| !g.has_edge(q1, v)));
    let q2 = smallest(qd.iter().copied().filter(|&q| g.has_edge(r2, q)));
    let b = smallest(seed.b.iter().copied().filter(|&v| !g.has_edge(q2, v)));
    let w = InducedPathWitness::from_vertices(vec![r1, q1, b, x, d, q2, r2]);
    debug_assert!(w.verify(g), "constructed witness must be chordless");
    w
}

fn check_seed(g: &BipartiteGraph, seed: &ChainSeed) -> Result<(), ChainError> {
    let bad = |clause: u8, detail: String| Err(ChainError::BadSeed { clause, detail });
    let primary = g.side_vertices(seed.handedness.primary_side());
    let secondary = g.side_vertices(seed.handedness.secondary_side());

    if let Some(v) = partition_defect(&[&seed.a, &seed.q, &seed.c], &primary) {
        return bad(1, format!("a, q, c must partition the primary part ({v})"));
    }
    if let Some(v) = partition_defect(&[&seed.b, &seed.r, &seed.d], &secondary) {
        return bad(
            2,
            format!("b, r, d must partition the secondary part ({v})"),
        );
    }
    for &v in &seed.b {
        if !seed.a.iter().any(|&u| g.has_edge(u, v)) {
            return bad(3, format!("{v} in b has no neighbour in a"));
        }
    }
    for &v in &seed.r {
        if !seed.q.iter().any(|&u| g.has_edge(u, v)) {
            return bad(4, format!("{v} in r has no neighbour in q"));
        }
    }
    for &v in &seed.d {
        if !seed.c.iter().any(|&u| g.has_edge(u, v)) {
            return bad(5, format!("{v} in d has no neighbour in c"));
        }
    }
    for &u in &seed.a {
        for &v in seed.r.iter().chain(seed.d.iter()) {
            if g.has_edge(u, v) {
                return bad(6, format!("a is not anticomplete to r ∪ d ({u}-{v})"));
            }
        }
    }
    for &u in &seed.c {
        for &v in seed.b.iter().chain(seed.r.iter()) {
            if g.has_edge(u, v) {
                return bad(7, format!("c is not anticomplete to b ∪ r ({u}-{v})"));
            }
        }
    }
    for &x in &seed.q {
        let to_b = seed.b.iter().all(|&v| g.has_edge(x, v));
        let to_d = seed.d.iter().all(|&v| g.has_edge(x, v));
        if !to_b && !to_d {
            return bad(8, format!("{x} in q is complete to neither b nor d"));
        }
    }
    Ok(())
}

/// Returns a vertex breaking "the given sets are pairwise disjoint and
/// cover exactly `universe`", if any.
fn partition_defect(sets: &[&VertexSet], universe: &VertexSet) -> Option<VertexId> {
    let mut seen = VertexSet::new();
    for set in sets {
        for &v in *set {
            if !universe.contains(&v) || !seen.insert(v) {
                return Some(v);
            }
        }
    }
    universe.iter().find(|v| !seen.contains(v)).copied()
}

/// Decomposes a connected graph whose chosen neighbourhood graph is
/// non-complete: extracts the universal clique cutset, maps its parts to
/// components, and grows the chain from the resulting seed.
pub fn decompose_via_cutset(
    g: &BipartiteGraph,
    handedness: Handedness,
) -> Result<ChainDecomposition, ChainError> {
    let primary = handedness.primary_side();
    let ng = neighbourhood_graph(g, primary);
    let (q, parts) = universal_clique_cutset(&ng)?;

    // Components of g − q; each part is the primary side of exactly one.
    let mut rest = g.vertex_set();
    for &v in &q {
        rest.remove(&v);
    }
    let shed = g.induced_subgraph(&rest)?;
    let comps = shed.connected_components();
    let blocks: Vec<(VertexSet, VertexSet)> = parts
        .iter()
        .map(|part| {
            let lead = *part.iter().next().expect("cutset parts are nonempty");
            let comp = comps
                .iter()
                .find(|c| c.contains(&lead))
                .expect("part vertex must lie in some component");
            let secondary: VertexSet = comp
                .iter()
                .copied()
                .filter(|&v| g.side(v) == Some(primary.opposite()))
                .collect();
            (part.clone(), secondary)
        })
        .collect();

    // Every cutset vertex must be complete to all but at most one
    // secondary block; two exceptions thread an induced P7 across the
    // two components involved.
    for &x in &q {
        let missed: Vec<usize> = blocks
            .iter()
            .enumerate()
            .filter(|(_, (_, bi))| bi.iter().any(|&v| !g.has_edge(x, v)))
            .map(|(i, _)| i)
            .collect();
        if missed.len() >= 2 {
            return Err(ChainError::InducedP7(p7_across_components(
                g,
                x,
                &blocks[missed[0]],
                &blocks[missed[1]],
            )));
        }
    }

    let (a, b) = blocks[0].clone();
    let mut c = VertexSet::new();
    let mut d = VertexSet::new();
    for (ai, bi) in &blocks[1..] {
        c.extend(ai.iter().copied());
        d.extend(bi.iter().copied());
    }
    let mut r = g.side_vertices(primary.opposite());
    for (_, bi) in &blocks {
        for v in bi {
            r.remove(v);
        }
    }

    grow_from_seed(
        g,
        &ChainSeed {
            handedness,
            a,
            b,
            c,
            d,
            q,
            r,
        },
    )
}

/// Witness for a cutset vertex `x` missing vertices in two different
/// component blocks: `y-a-w-x-w'-a'-z` is an induced P7.
fn p7_across_components(
    g: &BipartiteGraph,
    x: VertexId,
    (ai, bi): &(VertexSet, VertexSet),
    (aj, bj): &(VertexSet, VertexSet),
) -> InducedPathWitness {
    let reach = |block_a: &VertexSet, block_b: &VertexSet| {
        let y = smallest(block_b.iter().copied().filter(|&v| !g.has_edge(x, v)));
        let a = smallest(block_a.iter().copied().filter(|&v| g.has_edge(v, y)));
        let w = smallest(g.neighbours_of(x).intersection(g.neighbours_of(a)).copied());
        (y, a, w)
    };
    let (y, a, w) = reach(ai, bi);
    let (z, a2, w2) = reach(aj, bj);
    let witness = InducedPathWitness::from_vertices(vec![y, a, w, x, w2, a2, z]);
    debug_assert!(witness.verify(g), "constructed witness must be chordless");
    witness
}

/// The two induced subgraphs `G[A∪B]` and `G[C∪D]`. Validates first.
pub fn components_of(
    g: &BipartiteGraph,
    dec: &ChainDecomposition,
) -> Result<(BipartiteGraph, BipartiteGraph), ChainError> {
    let report = validate(g, dec);
    if !report.is_valid() {
        return Err(ChainError::InvalidDecomposition(Box::new(report)));
    }
    let mut ab = dec.a_union();
    ab.extend(dec.b_union());
    let mut cd = dec.c_union();
    cd.extend(dec.d_union());
    Ok((g.induced_subgraph(&ab)?, g.induced_subgraph(&cd)?))
}

/// Rebuilds the decomposed graph from its two components, `k`, and the
/// first primary blocks of each component. Blocks are recovered layer by
/// layer inside each component and the determined cross edges are added.
pub fn reconstruct_from_components(
    g1: &BipartiteGraph,
    g2: &BipartiteGraph,
    k: usize,
    a1: &VertexSet,
    c1: &VertexSet,
    handedness: Handedness,
) -> Result<BipartiteGraph, ChainError> {
    if k == 0 {
        return Err(ChainError::MalformedComponents(
            "layer count must be positive".into(),
        ));
    }
    if let Some(&v) = g1.vertex_set().intersection(&g2.vertex_set()).next() {
        return Err(ChainError::MalformedComponents(format!(
            "components share vertex {v}"
        )));
    }
    let (a, b) = derive_blocks(g1, k, a1, handedness, 'A', 'B')?;
    let (c, d) = derive_blocks(g2, k, c1, handedness, 'C', 'D')?;
    if [&a, &b, &c, &d].iter().all(|s| s[k - 1].is_empty()) {
        return Err(ChainError::MalformedComponents(format!(
            "all blocks of layer {k} are empty"
        )));
    }

    let mut sides: std::collections::BTreeMap<VertexId, Side> = std::collections::BTreeMap::new();
    for gr in [g1, g2] {
        for v in gr.vertices() {
            sides.insert(v, gr.side(v).unwrap());
        }
    }
    let mut edges: Vec<(VertexId, VertexId)> = g1.edges();
    edges.extend(g2.edges());
    for i in 0..k {
        for j in 0..i {
            for &u in &a[i] {
                for &v in &d[j] {
                    edges.push((u, v));
                }
            }
            for &u in &c[i] {
                for &v in &b[j] {
                    edges.push((u, v));
                }
            }
        }
    }
    Ok(BipartiteGraph::from_labelled(sides, edges)?)
}

/// Recovers the primary/secondary block sequences of one component from
/// its first primary block.
fn derive_blocks(
    gc: &BipartiteGraph,
    k: usize,
    first: &VertexSet,
    handedness: Handedness,
    primary_name: char,
    secondary_name: char,
) -> Result<(Vec<VertexSet>, Vec<VertexSet>), ChainError> {
    let primary = gc.side_vertices(handedness.primary_side());
    let secondary = gc.side_vertices(handedness.secondary_side());
    if !first.is_subset(&primary) {
        return Err(ChainError::MalformedComponents(format!(
            "{primary_name}1 is not a subset of the component's primary part"
        )));
    }

    let mut prim_blocks = vec![first.clone()];
    let mut sec_blocks = vec![gc.neighbourhood(first)?];
    let mut used_prim = first.clone();
    let mut used_sec = sec_blocks[0].clone();

    for i in 2..=k {
        if i == k {
            prim_blocks.push(primary.difference(&used_prim).copied().collect());
            sec_blocks.push(secondary.difference(&used_sec).copied().collect());
            break;
        }
        let prev = &sec_blocks[i - 2];
        let next_prim: VertexSet = primary
            .difference(&used_prim)
            .copied()
            .filter(|&u| prev.iter().any(|&v| !gc.has_edge(u, v)))
            .collect();
        let next_sec: VertexSet = gc
            .neighbourhood(&next_prim)?
            .difference(&used_sec)
            .copied()
            .collect();
        used_prim.extend(next_prim.iter().copied());
        used_sec.extend(next_sec.iter().copied());
        prim_blocks.push(next_prim);
        sec_blocks.push(next_sec);
    }

    if k >= 2 {
        for i in 0..k - 1 {
            if prim_blocks[i].is_empty() {
                return Err(ChainError::MalformedComponents(format!(
                    "derived block {primary_name}{} is empty",
                    i + 1
                )));
            }
            if sec_blocks[i].is_empty() {
                return Err(ChainError::MalformedComponents(format!(
                    "derived block {secondary_name}{} is empty",
                    i + 1
                )));
            }
        }
    }

    let covered_prim: VertexSet = prim_blocks.iter().flatten().copied().collect();
    let covered_sec: VertexSet = sec_blocks.iter().flatten().copied().collect();
    if covered_prim != primary || covered_sec != secondary {
        return Err(ChainError::MalformedComponents(format!(
            "{primary_name}/{secondary_name} blocks do not cover the component"
        )));
    }
    Ok((prim_blocks, sec_blocks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraph::vset;
    use crate::fixtures;
    use Side::{Left as L, Right as R};

    fn g8_dec() -> ChainDecomposition {
        ChainDecomposition::new(
            Handedness::Left,
            vec![vset([1, 2]), vset([4])],
            vec![vset([5, 6]), vset([8])],
            vec![vset([3]), vset([])],
            vec![vset([7]), vset([])],
        )
        .unwrap()
    }

    fn g8_seed() -> ChainSeed {
        ChainSeed {
            handedness: Handedness::Left,
            a: vset([1, 2]),
            b: vset([5, 6]),
            c: vset([3]),
            d: vset([7]),
            q: vset([4]),
            r: vset([8]),
        }
    }

    #[test]
    fn g8_two_chain_is_valid() {
        let report = validate(&fixtures::g8(), &g8_dec());
        assert!(report.is_valid(), "{report}");
    }

    #[test]
    fn two_k2_one_chain_is_valid() {
        let dec = ChainDecomposition::new(
            Handedness::Left,
            vec![vset([1])],
            vec![vset([2])],
            vec![vset([3])],
            vec![vset([4])],
        )
        .unwrap();
        assert!(validate(&fixtures::two_k2(), &dec).is_valid());
    }

    #[test]
    fn corrupted_d1_names_the_axiom() {
        let dec = ChainDecomposition::new(
            Handedness::Left,
            vec![vset([1, 2]), vset([4])],
            vec![vset([5, 6]), vset([])],
            vec![vset([3]), vset([])],
            vec![vset([8]), vset([7])],
        )
        .unwrap();
        let report = validate(&fixtures::g8(), &dec);
        assert!(!report.is_valid());
        assert!(
            report
                .violations
                .iter()
                .any(|v| v.axiom == ChainAxiom::DWithoutNeighbourInC
                    && v.witness == vec![VertexId(8)])
        );
    }

    #[test]
    fn grow_from_g8_seed_matches_expected() {
        let dec = grow_from_seed(&fixtures::g8(), &g8_seed()).unwrap();
        assert_eq!(dec, g8_dec());
    }

    #[test]
    fn empty_middle_yields_one_chain() {
        let g = fixtures::two_k2();
        let seed = ChainSeed {
            handedness: Handedness::Left,
            a: vset([1]),
            b: vset([2]),
            c: vset([3]),
            d: vset([4]),
            q: vset([]),
            r: vset([]),
        };
        let dec = grow_from_seed(&g, &seed).unwrap();
        assert_eq!(dec.k(), 1);
        assert_eq!(dec.a(), &[vset([1])]);
        assert!(validate(&g, &dec).is_valid());
    }

    #[test]
    fn six_vertex_middle_vertex_example() {
        let g = BipartiteGraph::new(
            &[L, R, L, R, L, R],
            [(1, 2), (3, 4), (5, 2), (5, 4), (5, 6)],
        )
        .unwrap();
        let seed = ChainSeed {
            handedness: Handedness::Left,
            a: vset([1]),
            b: vset([2]),
            c: vset([3]),
            d: vset([4]),
            q: vset([5]),
            r: vset([6]),
        };
        let dec = grow_from_seed(&g, &seed).unwrap();
        let expected = ChainDecomposition::new(
            Handedness::Left,
            vec![vset([1]), vset([5])],
            vec![vset([2]), vset([6])],
            vec![vset([3]), vset([])],
            vec![vset([4]), vset([])],
        )
        .unwrap();
        assert_eq!(dec, expected);
        assert!(validate(&g, &dec).is_valid());
    }

    #[test]
    fn bad_seed_names_the_clause() {
        let g = fixtures::g8();
        let mut seed = g8_seed();
        seed.d = vset([8]); // 8 has no neighbour in c = {3}
        seed.r = vset([7]); // keep the partition intact
        let err = grow_from_seed(&g, &seed).unwrap_err();
        match err {
            ChainError::BadSeed { clause, .. } => assert_eq!(clause, 5),
            other => panic!("expected BadSeed, got {other:?}"),
        }
    }

    #[test]
    fn cutset_chain_for_g8() {
        let dec = decompose_via_cutset(&fixtures::g8(), Handedness::Left).unwrap();
        assert_eq!(dec, g8_dec());
    }

    #[test]
    fn cutset_chain_for_the_six_vertex_graph() {
        let g = BipartiteGraph::new(
            &[L, R, L, R, L, R],
            [(1, 2), (3, 4), (5, 2), (5, 4), (5, 6)],
        )
        .unwrap();
        let dec = decompose_via_cutset(&g, Handedness::Left).unwrap();
        assert_eq!(dec.a(), &[vset([1]), vset([5])]);
        assert_eq!(dec.b(), &[vset([2]), vset([6])]);
        assert!(validate(&g, &dec).is_valid());
    }

    #[test]
    fn cutset_chain_rejects_c6() {
        let err = decompose_via_cutset(&fixtures::c6(), Handedness::Left).unwrap_err();
        assert!(matches!(err, ChainError::CompleteInput));
    }

    #[test]
    fn p7_seed_failure_produces_verified_witness() {
        // The r-vertex 7 is adjacent into both halves of the q-split
        // (5 sits over b, 6 over d), which threads a P7 through the seed.
        let g = BipartiteGraph::new(
            &[L, R, L, R, L, L, R],
            [(1, 2), (3, 4), (5, 2), (6, 4), (5, 7), (6, 7)],
        )
        .unwrap();
        let seed = ChainSeed {
            handedness: Handedness::Left,
            a: vset([1]),
            b: vset([2]),
            c: vset([3]),
            d: vset([4]),
            q: vset([5, 6]),
            r: vset([7]),
        };
        let err = grow_from_seed(&g, &seed).unwrap_err();
        match err {
            ChainError::InducedP7(w) => {
                assert_eq!(w.len(), 7);
                assert!(w.verify(&g));
            }
            other => panic!("expected InducedP7, got {other:?}"),
        }
    }

    #[test]
    fn components_of_g8() {
        let g = fixtures::g8();
        let (g1, g2) = components_of(&g, &g8_dec()).unwrap();
        assert_eq!(g1.vertex_set(), vset([1, 2, 4, 5, 6, 8]));
        assert_eq!(
            g1.edges(),
            [(1, 5), (2, 5), (2, 6), (4, 5), (4, 8)]
                .iter()
                .map(|&(u, v)| (VertexId(u), VertexId(v)))
                .collect::<Vec<_>>()
        );
        assert_eq!(g2.vertex_set(), vset([3, 7]));
        assert_eq!(g2.edges(), vec![(VertexId(3), VertexId(7))]);
    }

    #[test]
    fn swapped_decomposition_swaps_components() {
        let g = fixtures::g8();
        let dec = g8_dec();
        let (g1, g2) = components_of(&g, &dec).unwrap();
        let (s1, s2) = components_of(&g, &dec.swap_components()).unwrap();
        assert_eq!((s1, s2), (g2, g1));
    }

    #[test]
    fn reconstruct_g8_from_components() {
        let g = fixtures::g8();
        let (g1, g2) = components_of(&g, &g8_dec()).unwrap();
        let rebuilt =
            reconstruct_from_components(&g1, &g2, 2, &vset([1, 2]), &vset([3]), Handedness::Left)
                .unwrap();
        assert_eq!(rebuilt, g);
    }

    #[test]
    fn one_chain_reconstruction_is_disjoint_union() {
        let g = fixtures::two_k2();
        let g1 = g.induced_subgraph(&vset([1, 2])).unwrap();
        let g2 = g.induced_subgraph(&vset([3, 4])).unwrap();
        let rebuilt =
            reconstruct_from_components(&g1, &g2, 1, &vset([1]), &vset([3]), Handedness::Left)
                .unwrap();
        assert_eq!(rebuilt, g);
    }

    #[test]
    fn reconstruction_rejects_overlapping_components() {
        let g = fixtures::g8();
        let g1 = g.induced_subgraph(&vset([1, 5])).unwrap();
        let err =
            reconstruct_from_components(&g1, &g1, 1, &vset([1]), &vset([1]), Handedness::Left)
                .unwrap_err();
        assert!(matches!(err, ChainError::MalformedComponents(_)));
    }

    #[test]
    fn reconstruction_rejects_missing_intermediate_block() {
        let g = fixtures::g8();
        let (g1, g2) = components_of(&g, &g8_dec()).unwrap();
        // Claiming three layers leaves layer 2 of the second component
        // impossible to populate.
        let err =
            reconstruct_from_components(&g1, &g2, 3, &vset([1, 2]), &vset([3]), Handedness::Left)
                .unwrap_err();
        assert!(matches!(err, ChainError::MalformedComponents(_)));
    }
}
