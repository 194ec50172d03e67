//! Brute-force ground truth at small n: exhaustive enumeration of all
//! labelled graphs, class counting, a per-graph verification pipeline,
//! and seeded random sampling for sizes beyond the exhaustive cap.
//!
//! Enumeration walks edge subsets of the complete graph as integer codes
//! in lexicographic order. The work is embarrassingly parallel over code
//! ranges and merged by addition, so the sweep runs on rayon when the
//! `parallel` feature is enabled and falls back to a sequential scan
//! otherwise.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::bigraph::{BipartiteGraph, Side};
use crate::chain::validate;
use crate::codec::{bit_length_bound, decode_stream, encode_tree};
use crate::dectree::{
    build_tree_traced, leaf_count_bound, marker_orientation_violations, node_count_bound,
    tree_metrics, verify_2decomposition,
};
use crate::neighbourhood::{is_complete_graph, neighbourhood_graph, quasi_threshold_witness};
use crate::patterns::find_induced_path;

/// Default enumeration cap: the n=7 sweep visits 2^21 graphs.
pub const DEFAULT_CAP: u32 = 7;
/// Enumeration codes are stored in a u64, so C(n,2) must stay below 64.
const HARD_CAP: u32 = 11;
/// Default number of rejected draws before sampling gives up.
pub const DEFAULT_REJECTION_BUDGET: u32 = 10_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: u32, cap: u32 },
    #[error("no sample accepted after {budget} draws (n = {n}, edge_prob = {edge_prob})")]
    RejectionBudgetExceeded { n: u32, edge_prob: f64, budget: u32 },
}

/// Number of n-vertex labelled graphs in the class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassCount {
    pub n: u32,
    pub value: u64,
}

/// Counts from one enumeration pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CountSummary {
    pub n: u32,
    /// All labelled graphs on n vertices: 2^C(n,2).
    pub total: u64,
    /// Those that are 2-colorable.
    pub bipartite: u64,
    /// Bipartite and without an induced P7: the class being counted.
    pub members: u64,
}

/// One failed check of the per-graph pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckFailure {
    pub stage: CheckStage,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStage {
    InducedP7Precheck,
    QuasiThreshold,
    NonCompleteNeighbourhood,
    Build,
    ChainValidation,
    RoundTrip,
    NodeBound,
    LeafBound,
    TwoDecomposition,
    MarkerOrientation,
    Encoding,
    BitBound,
}

impl fmt::Display for CheckStage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            CheckStage::InducedP7Precheck => "induced-p7-precheck",
            CheckStage::QuasiThreshold => "quasi-threshold",
            CheckStage::NonCompleteNeighbourhood => "non-complete-neighbourhood",
            CheckStage::Build => "build",
            CheckStage::ChainValidation => "chain-validation",
            CheckStage::RoundTrip => "round-trip",
            CheckStage::NodeBound => "node-bound",
            CheckStage::LeafBound => "leaf-bound",
            CheckStage::TwoDecomposition => "two-decomposition",
            CheckStage::MarkerOrientation => "marker-orientation",
            CheckStage::Encoding => "encoding",
            CheckStage::BitBound => "bit-bound",
        };
        write!(f, "{name}")
    }
}

/// Outcome of the full pipeline on one graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct GraphReport {
    pub failures: Vec<CheckFailure>,
    pub nodes: Option<usize>,
    pub leaves: Option<usize>,
    pub bits: Option<usize>,
}

impl GraphReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// Runs every check this crate can make against a single graph: the
/// neighbourhood-graph structure, tree construction with per-node chain
/// validation, decode round-trip, size bounds, 2-decomposition shape,
/// marker orientation and the encoding envelope.
///
/// With `precheck_p7` the pipeline first searches for an induced P7 and
/// reports only that when found; class members are unaffected.
pub fn verify_graph(g: &BipartiteGraph, precheck_p7: bool) -> GraphReport {
    let mut report = GraphReport::default();
    let fail = |report: &mut GraphReport, stage: CheckStage, detail: String| {
        report.failures.push(CheckFailure { stage, detail });
    };

    if precheck_p7 {
        if let Some(w) = find_induced_path(g, 7) {
            fail(
                &mut report,
                CheckStage::InducedP7Precheck,
                format!("induced P7 {w}"),
            );
            return report;
        }
    }

    let n = g.vertex_count();
    let h = g.bipartite_complement();

    for side in [Side::Left, Side::Right] {
        if let Some(w) = quasi_threshold_witness(&neighbourhood_graph(g, side)) {
            fail(
                &mut report,
                CheckStage::QuasiThreshold,
                format!("{side} neighbourhood graph contains {w}"),
            );
        }
    }
    if n >= 3 && g.is_connected() && h.is_connected() {
        let all_complete = [
            neighbourhood_graph(g, Side::Left),
            neighbourhood_graph(g, Side::Right),
            neighbourhood_graph(&h, Side::Left),
        ]
        .iter()
        .all(is_complete_graph);
        if all_complete {
            fail(
                &mut report,
                CheckStage::NonCompleteNeighbourhood,
                "both neighbourhood graphs and the complement's left one are complete".into(),
            );
        }
    }

    let mut chain_failures = Vec::new();
    let tree = build_tree_traced(g, &mut |base, dec| {
        let r = validate(base, dec);
        if !r.is_valid() {
            chain_failures.push(format!("{}", r.violations[0]));
        }
    });
    for detail in chain_failures {
        fail(&mut report, CheckStage::ChainValidation, detail);
    }
    let tree = match tree {
        Ok(t) => t,
        Err(e) => {
            fail(&mut report, CheckStage::Build, e.to_string());
            return report;
        }
    };

    match crate::dectree::decode_tree(&tree) {
        Ok(back) if &back == g => {}
        Ok(_) => fail(
            &mut report,
            CheckStage::RoundTrip,
            "decoded graph differs from the input".into(),
        ),
        Err(e) => fail(&mut report, CheckStage::RoundTrip, e.to_string()),
    }

    let metrics = tree_metrics(&tree);
    report.nodes = Some(metrics.nodes);
    report.leaves = Some(metrics.leaves);
    if let Some(bound) = node_count_bound(n) {
        if metrics.nodes > bound {
            fail(
                &mut report,
                CheckStage::NodeBound,
                format!("{} nodes exceed the bound {bound}", metrics.nodes),
            );
        }
    }
    if let Some(bound) = leaf_count_bound(n) {
        if metrics.leaves > bound {
            fail(
                &mut report,
                CheckStage::LeafBound,
                format!("{} leaves exceed the bound {bound}", metrics.leaves),
            );
        }
    }

    let two_dec = verify_2decomposition(&tree);
    if !two_dec.is_valid() {
        fail(
            &mut report,
            CheckStage::TwoDecomposition,
            two_dec.violations[0].to_string(),
        );
    }
    for detail in marker_orientation_violations(&tree) {
        fail(&mut report, CheckStage::MarkerOrientation, detail);
    }

    let enc_n = g.vertices().last().map_or(1, |v| v.0);
    match encode_tree(&tree, enc_n) {
        Ok(stream) => {
            report.bits = Some(stream.bit_len());
            match decode_stream(&stream) {
                Ok(t) if t == tree => {}
                Ok(_) => fail(
                    &mut report,
                    CheckStage::Encoding,
                    "decoded stream differs from the tree".into(),
                ),
                Err(e) => fail(&mut report, CheckStage::Encoding, e.to_string()),
            }
            if let Some(bound) = bit_length_bound(enc_n as usize) {
                if stream.bit_len() > bound {
                    fail(
                        &mut report,
                        CheckStage::BitBound,
                        format!("{} bits exceed the envelope {bound}", stream.bit_len()),
                    );
                }
            }
        }
        Err(e) => fail(&mut report, CheckStage::Encoding, e.to_string()),
    }

    report
}

/// A graph that failed the pipeline during a sweep, identified by its
/// edge-subset code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepFailure {
    pub code: u64,
    pub failures: Vec<CheckFailure>,
}

/// Aggregate outcome of one exhaustive sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub n: u32,
    pub total: u64,
    pub bipartite: u64,
    pub members: u64,
    pub failures: Vec<SweepFailure>,
    pub max_nodes: usize,
    pub max_leaves: usize,
    pub max_bits: usize,
    pub node_bound: Option<usize>,
    pub leaf_bound: Option<usize>,
    pub bit_bound: Option<usize>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n: {}", self.n)?;
        writeln!(f, "graphs: {}", self.total)?;
        writeln!(f, "bipartite: {}", self.bipartite)?;
        writeln!(f, "members: {}", self.members)?;
        writeln!(
            f,
            "max_nodes: {} (bound {})",
            self.max_nodes,
            bound_str(self.node_bound)
        )?;
        writeln!(
            f,
            "max_leaves: {} (bound {})",
            self.max_leaves,
            bound_str(self.leaf_bound)
        )?;
        writeln!(
            f,
            "max_bits: {} (bound {})",
            self.max_bits,
            bound_str(self.bit_bound)
        )?;
        writeln!(f, "failures: {}", self.failures.len())?;
        for fail in &self.failures {
            for check in &fail.failures {
                writeln!(
                    f,
                    "failure code={} {}: {}",
                    fail.code, check.stage, check.detail
                )?;
            }
        }
        Ok(())
    }
}

fn bound_str(b: Option<usize>) -> String {
    b.map_or_else(|| "-".into(), |v| v.to_string())
}

// ---------------------------------------------------------------------
// Mask-level enumeration internals
// ---------------------------------------------------------------------

fn vertex_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

fn adjacency_from_code(n: usize, pairs: &[(usize, usize)], code: u64) -> Vec<u32> {
    let mut adj = vec![0u32; n];
    for (p, &(i, j)) in pairs.iter().enumerate() {
        if code >> p & 1 == 1 {
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
    }
    adj
}

/// BFS 2-coloring; the smallest vertex of each component is colored
/// Left. Returns `None` for odd cycles.
fn canonical_bipartition(adj: &[u32]) -> Option<Vec<Side>> {
    let n = adj.len();
    let mut colors: Vec<Option<Side>> = vec![None; n];
    for start in 0..n {
        if colors[start].is_some() {
            continue;
        }
        colors[start] = Some(Side::Left);
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let vc = colors[v].unwrap();
            let mut nbrs = adj[v];
            while nbrs != 0 {
                let w = nbrs.trailing_zeros() as usize;
                nbrs &= nbrs - 1;
                match colors[w] {
                    None => {
                        colors[w] = Some(vc.opposite());
                        queue.push_back(w);
                    }
                    Some(wc) if wc == vc => return None,
                    _ => {}
                }
            }
        }
    }
    Some(colors.into_iter().map(Option::unwrap).collect())
}

/// Depth-first search for a chordless path on seven vertices.
fn has_induced_p7(adj: &[u32]) -> bool {
    let n = adj.len();
    if n < 7 {
        return false;
    }
    fn extend(adj: &[u32], last: usize, visited: u32, len: usize) -> bool {
        if len == 7 {
            return true;
        }
        let inner = visited & !(1 << last);
        let mut cand = adj[last] & !visited;
        while cand != 0 {
            let w = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            if adj[w] & inner == 0 && extend(adj, w, visited | 1 << w, len + 1) {
                return true;
            }
        }
        false
    }
    (0..n).any(|s| extend(adj, s, 1 << s, 1))
}

fn to_bigraph(adj: &[u32], sides: &[Side]) -> BipartiteGraph {
    let n = adj.len();
    let mut edges = Vec::new();
    for (i, &nbrs) in adj.iter().enumerate() {
        for j in i + 1..n {
            if nbrs >> j & 1 == 1 {
                edges.push((i as u32 + 1, j as u32 + 1));
            }
        }
    }
    BipartiteGraph::new(sides, edges).expect("2-colored mask graph is bipartite")
}

fn check_cap(n: u32, cap: u32) -> Result<(usize, Vec<(usize, usize)>), OracleError> {
    let cap = cap.min(HARD_CAP);
    if n > cap {
        return Err(OracleError::CapExceeded { n, cap });
    }
    let n = n as usize;
    Ok((n, vertex_pairs(n)))
}

#[derive(Default)]
struct SweepAcc {
    bipartite: u64,
    members: u64,
    failures: Vec<SweepFailure>,
    max_nodes: usize,
    max_leaves: usize,
    max_bits: usize,
}

impl SweepAcc {
    #[cfg(feature = "parallel")]
    fn merge(mut self, other: SweepAcc) -> SweepAcc {
        self.bipartite += other.bipartite;
        self.members += other.members;
        self.failures.extend(other.failures);
        self.max_nodes = self.max_nodes.max(other.max_nodes);
        self.max_leaves = self.max_leaves.max(other.max_leaves);
        self.max_bits = self.max_bits.max(other.max_bits);
        self
    }

    fn absorb(&mut self, n: usize, pairs: &[(usize, usize)], code: u64, full: bool) {
        let adj = adjacency_from_code(n, pairs, code);
        let Some(sides) = canonical_bipartition(&adj) else {
            return;
        };
        self.bipartite += 1;
        if has_induced_p7(&adj) {
            return;
        }
        self.members += 1;
        if !full {
            return;
        }
        let g = to_bigraph(&adj, &sides);
        let report = verify_graph(&g, false);
        self.max_nodes = self.max_nodes.max(report.nodes.unwrap_or(0));
        self.max_leaves = self.max_leaves.max(report.leaves.unwrap_or(0));
        self.max_bits = self.max_bits.max(report.bits.unwrap_or(0));
        if !report.passed() {
            self.failures.push(SweepFailure {
                code,
                failures: report.failures,
            });
        }
    }
}

fn finish_sweep(n: u32, total: u64, mut acc: SweepAcc) -> SweepReport {
    acc.failures.sort_by_key(|f| f.code);
    SweepReport {
        n,
        total,
        bipartite: acc.bipartite,
        members: acc.members,
        failures: acc.failures,
        max_nodes: acc.max_nodes,
        max_leaves: acc.max_leaves,
        max_bits: acc.max_bits,
        node_bound: node_count_bound(n as usize),
        leaf_bound: leaf_count_bound(n as usize),
        bit_bound: bit_length_bound(n as usize),
    }
}

fn sweep_sequential_impl(n: u32, cap: u32, full: bool) -> Result<SweepReport, OracleError> {
    let (nv, pairs) = check_cap(n, cap)?;
    let total = 1u64 << pairs.len();
    let mut acc = SweepAcc::default();
    for code in 0..total {
        acc.absorb(nv, &pairs, code, full);
    }
    Ok(finish_sweep(n, total, acc))
}

#[cfg(feature = "parallel")]
fn sweep_parallel_impl(n: u32, cap: u32, full: bool) -> Result<SweepReport, OracleError> {
    use rayon::prelude::*;
    let (nv, pairs) = check_cap(n, cap)?;
    let total = 1u64 << pairs.len();
    let acc = (0..total)
        .into_par_iter()
        .fold(SweepAcc::default, |mut acc, code| {
            acc.absorb(nv, &pairs, code, full);
            acc
        })
        .reduce(SweepAcc::default, SweepAcc::merge);
    Ok(finish_sweep(n, total, acc))
}

fn sweep(n: u32, cap: u32, full: bool) -> Result<SweepReport, OracleError> {
    #[cfg(feature = "parallel")]
    {
        sweep_parallel_impl(n, cap, full)
    }
    #[cfg(not(feature = "parallel"))]
    {
        sweep_sequential_impl(n, cap, full)
    }
}

// ---------------------------------------------------------------------
// Public sweeps
// ---------------------------------------------------------------------

/// Counts all labelled graphs, the bipartite ones, and the class members
/// on n vertices. Parallel when the `parallel` feature is enabled.
pub fn count_summary(n: u32, cap: u32) -> Result<CountSummary, OracleError> {
    let r = sweep(n, cap, false)?;
    Ok(CountSummary {
        n,
        total: r.total,
        bipartite: r.bipartite,
        members: r.members,
    })
}

/// Always-sequential variant of [`count_summary`].
pub fn count_summary_sequential(n: u32, cap: u32) -> Result<CountSummary, OracleError> {
    let r = sweep_sequential_impl(n, cap, false)?;
    Ok(CountSummary {
        n,
        total: r.total,
        bipartite: r.bipartite,
        members: r.members,
    })
}

/// Number of labelled bipartite P7-free graphs on n vertices.
pub fn count_class(n: u32) -> Result<ClassCount, OracleError> {
    count_class_with_cap(n, DEFAULT_CAP)
}

pub fn count_class_with_cap(n: u32, cap: u32) -> Result<ClassCount, OracleError> {
    Ok(ClassCount {
        n,
        value: count_summary(n, cap)?.members,
    })
}

/// Runs the full pipeline over every class member on n vertices.
pub fn verify_class(n: u32) -> Result<SweepReport, OracleError> {
    verify_class_with_cap(n, DEFAULT_CAP)
}

pub fn verify_class_with_cap(n: u32, cap: u32) -> Result<SweepReport, OracleError> {
    sweep(n, cap, true)
}

/// Always-sequential variant of [`verify_class_with_cap`].
pub fn verify_class_sequential(n: u32, cap: u32) -> Result<SweepReport, OracleError> {
    sweep_sequential_impl(n, cap, true)
}

/// Materializes every class member on n vertices under the canonical
/// bipartition, in enumeration-code order. Intended for desk-scale use.
pub fn class_members_with_cap(n: u32, cap: u32) -> Result<Vec<BipartiteGraph>, OracleError> {
    let (nv, pairs) = check_cap(n, cap)?;
    let total = 1u64 << pairs.len();
    let mut out = Vec::new();
    for code in 0..total {
        let adj = adjacency_from_code(nv, &pairs, code);
        if let Some(sides) = canonical_bipartition(&adj) {
            if !has_induced_p7(&adj) {
                out.push(to_bigraph(&adj, &sides));
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------
// Random sampling
// ---------------------------------------------------------------------

/// Rejection-samples a P7-free bipartite graph: a uniform side per
/// vertex, each cross pair an edge with probability `edge_prob`, redrawn
/// until the graph is P7-free. Deterministic for a given seed.
pub fn random_p7free(n: u32, edge_prob: f64, seed: u64) -> Result<BipartiteGraph, OracleError> {
    random_p7free_with_budget(n, edge_prob, seed, DEFAULT_REJECTION_BUDGET)
}

pub fn random_p7free_with_budget(
    n: u32,
    edge_prob: f64,
    seed: u64,
    budget: u32,
) -> Result<BipartiteGraph, OracleError> {
    assert!(
        (0.0..=1.0).contains(&edge_prob),
        "edge_prob must be in [0, 1]"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        let sides: Vec<Side> = (0..n)
            .map(|_| {
                if rng.random_bool(0.5) {
                    Side::Left
                } else {
                    Side::Right
                }
            })
            .collect();
        let mut edges = Vec::new();
        for u in 1..=n {
            for v in u + 1..=n {
                if sides[u as usize - 1] != sides[v as usize - 1] && rng.random_bool(edge_prob) {
                    edges.push((u, v));
                }
            }
        }
        let g = BipartiteGraph::new(&sides, edges).expect("cross pairs only");
        if crate::patterns::is_p7_free(&g) {
            return Ok(g);
        }
    }
    Err(OracleError::RejectionBudgetExceeded {
        n,
        edge_prob,
        budget,
    })
}
