//! Command-line front end: decompose graphs to tree streams, reconstruct
//! them, verify single graphs, run exhaustive sweeps, sample random class
//! members and print size statistics.
//!
//! Exit status: 0 on success, 1 on verification failure or any runtime
//! error, 2 on usage errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use chaindec::codec::{
    bit_length_bound, decode_stream, encode_tree, read_graph, write_graph, BitStream,
};
use chaindec::dectree::{
    build_tree, decode_tree, leaf_count_bound, node_count_bound, tree_metrics,
};
use chaindec::oracle::{
    count_class_with_cap, random_p7free, verify_class_with_cap, verify_graph, DEFAULT_CAP,
};
use chaindec::patterns::find_induced_path;

#[derive(Parser)]
#[command(
    name = "chaindec",
    version,
    about = "Chain-decomposition trees for P7-free bipartite graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the decomposition tree of a .bg graph and write it as a .bct stream.
    Decompose {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Search for an induced P7 first and report it instead of a build error.
        #[arg(long)]
        check_p7: bool,
    },
    /// Decode a .bct stream back into a .bg graph.
    Reconstruct {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run the full verification pipeline on one graph.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        /// Emit the machine-readable report.
        #[arg(long)]
        json: bool,
    },
    /// Exhaustively count or verify all n-vertex graphs in the class.
    Enumerate {
        #[arg(short)]
        n: u32,
        /// Print only the class count.
        #[arg(long)]
        count_only: bool,
        /// Enumeration cap (the sweep visits 2^C(n,2) graphs).
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u32,
        /// Number of worker threads for the sweep.
        #[arg(long)]
        workers: Option<usize>,
        /// Emit the machine-readable report.
        #[arg(long)]
        json: bool,
    },
    /// Sample a random P7-free bipartite graph.
    Gen {
        #[arg(short)]
        n: u32,
        #[arg(short = 'p', long, default_value_t = 0.5)]
        edge_prob: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Print size statistics and bound slack for one graph.
    Stats {
        #[arg(short, long)]
        input: PathBuf,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Decompose {
            input,
            output,
            check_p7,
        } => {
            let g = load_graph(&input)?;
            if check_p7 {
                if let Some(w) = find_induced_path(&g, 7) {
                    eprintln!("induced P7 found: {w}");
                    return Ok(ExitCode::FAILURE);
                }
            }
            let tree = build_tree(&g).with_context(|| format!("cannot decompose {input:?}"))?;
            let stream = encode_tree(&tree, g.vertex_count() as u32)?;
            fs::write(&output, stream.as_bytes())
                .with_context(|| format!("cannot write {output:?}"))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Reconstruct { input, output } => {
            let bytes = fs::read(&input).with_context(|| format!("cannot read {input:?}"))?;
            let tree = decode_stream(&BitStream::from_bytes(bytes))?;
            let g = decode_tree(&tree)?;
            fs::write(&output, write_graph(&g)?)
                .with_context(|| format!("cannot write {output:?}"))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { input, json } => {
            let g = load_graph(&input)?;
            let report = verify_graph(&g, true);
            if json {
                println!("{}", report.to_json());
            } else {
                println!("graph: n={} m={}", g.vertex_count(), g.edge_count());
                for f in &report.failures {
                    println!("fail {}: {}", f.stage, f.detail);
                }
                if let (Some(nodes), Some(leaves), Some(bits)) =
                    (report.nodes, report.leaves, report.bits)
                {
                    println!("tree: nodes={nodes} leaves={leaves} bits={bits}");
                }
                println!("result: {}", if report.passed() { "PASS" } else { "FAIL" });
            }
            Ok(exit_by(report.passed()))
        }
        Command::Enumerate {
            n,
            count_only,
            cap,
            workers,
            json,
        } => in_pool(workers, move || {
            if count_only {
                let count = count_class_with_cap(n, cap)?;
                println!("{}", count.value);
                return Ok(ExitCode::SUCCESS);
            }
            let report = verify_class_with_cap(n, cap)?;
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{report}");
            }
            Ok(exit_by(report.passed()))
        }),
        Command::Gen {
            n,
            edge_prob,
            seed,
            output,
        } => {
            if !(0.0..=1.0).contains(&edge_prob) {
                bail!("edge probability must lie in [0, 1]");
            }
            let g = random_p7free(n, edge_prob, seed)?;
            fs::write(&output, write_graph(&g)?)
                .with_context(|| format!("cannot write {output:?}"))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Stats { input } => {
            let g = load_graph(&input)?;
            let n = g.vertex_count();
            let tree = build_tree(&g).with_context(|| format!("cannot decompose {input:?}"))?;
            let metrics = tree_metrics(&tree);
            let bits = encode_tree(&tree, n as u32)?.bit_len();
            println!("n: {n}");
            println!("m: {}", g.edge_count());
            println!("tree_nodes: {}", metrics.nodes);
            println!("tree_leaves: {}", metrics.leaves);
            if let (Some(nb), Some(lb), Some(bb)) = (
                node_count_bound(n),
                leaf_count_bound(n),
                bit_length_bound(n),
            ) {
                println!("node_bound: {nb}");
                println!("leaf_bound: {lb}");
                println!("encoded_bits: {bits}");
                println!("bit_bound: {bb}");
                println!("bit_slack: {}", bb - bits);
            } else {
                println!("encoded_bits: {bits}");
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn load_graph(path: &PathBuf) -> Result<chaindec::BipartiteGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {path:?}"))?;
    read_graph(&text).with_context(|| format!("cannot parse {path:?}"))
}

fn exit_by(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

#[cfg(feature = "parallel")]
fn in_pool(
    workers: Option<usize>,
    f: impl FnOnce() -> Result<ExitCode> + Send,
) -> Result<ExitCode> {
    match workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .context("cannot build worker pool")?
            .install(f),
        None => f(),
    }
}

#[cfg(not(feature = "parallel"))]
fn in_pool(
    workers: Option<usize>,
    f: impl FnOnce() -> Result<ExitCode> + Send,
) -> Result<ExitCode> {
    if workers.is_some() {
        eprintln!("note: built without the parallel feature; --workers is ignored");
    }
    f()
}
