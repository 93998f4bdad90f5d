//! Argument grammar for the `relroots` binary.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "relroots",
    version,
    about = "Two-terminal reliability polynomials: exact computation, roots, and dynamics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Cycle,
    Theta,
    Bundle,
    Path,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

/// A graph given either as a JSON file or as a parametric family.
#[derive(Args, Clone, Debug)]
pub struct GraphInput {
    /// Graph JSON file: {"vertices":[..], "edges":[[u,v],..], "s":id, "t":id}.
    #[arg(long, value_name = "FILE")]
    pub graph: Option<PathBuf>,
    /// Parametric family instead of a file.
    #[arg(long, value_enum, value_name = "KIND")]
    pub family: Option<FamilyKind>,
    /// Cycle order.
    #[arg(long)]
    pub n: Option<u32>,
    /// Terminal distance (cycle) or path count (theta).
    #[arg(long)]
    pub k: Option<u32>,
    /// Path length (theta, path).
    #[arg(long)]
    pub l: Option<u32>,
    /// Parallel edge count (bundle).
    #[arg(long)]
    pub m: Option<u32>,
    /// Source terminal, overriding the file's.
    #[arg(long)]
    pub s: Option<String>,
    /// Target terminal, overriding the file's.
    #[arg(long)]
    pub t: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute the two-terminal reliability polynomial of a graph.
    Compute {
        #[command(flatten)]
        input: GraphInput,
        /// Print as p^k times the deflated cofactor.
        #[arg(long)]
        factored: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        /// Also write the rendered result to this file.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Directory for the on-disk memo cache.
        #[arg(long, value_name = "DIR")]
        cache: Option<PathBuf>,
    },
    /// Closed-form reliability of a parametric family, cross-checked
    /// against the graph engine.
    Family {
        /// Family kind.
        #[arg(long, value_enum, value_name = "KIND")]
        family: FamilyKind,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        l: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        factored: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Locate all complex roots of a graph's reliability polynomial.
    Roots {
        #[command(flatten)]
        input: GraphInput,
        /// CSV destination (header graph_id,s,t,re,im,residual,zero_mult).
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        #[arg(long, value_name = "DIR")]
        cache: Option<PathBuf>,
    },
    /// Replace every edge of a host graph by a two-terminal gadget.
    Substitute {
        /// Host graph JSON file.
        #[arg(long, value_name = "FILE")]
        host: PathBuf,
        /// Gadget graph (JSON file via --graph, or a family).
        #[command(flatten)]
        gadget: GraphInput,
        #[arg(long)]
        factored: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Write the substituted graph itself as JSON.
        #[arg(long, value_name = "FILE")]
        emit_graph: Option<PathBuf>,
        #[arg(long, value_name = "DIR")]
        cache: Option<PathBuf>,
    },
    /// Inverse-orbit point cloud of 0 under the reliability polynomial.
    Attractor {
        #[command(flatten)]
        input: GraphInput,
        /// Backward iteration depth.
        #[arg(long, default_value_t = 10)]
        depth: u32,
        /// Point budget before breadth-first expansion degrades to walks.
        #[arg(long, default_value_t = 200_000)]
        budget: usize,
        /// Seed for the backward random walks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV destination (header re,im,depth).
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// SVG scatter destination.
        #[arg(long, value_name = "FILE")]
        svg: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Julia-set connectivity of the reliability polynomial via critical
    /// forward orbits.
    Connectivity {
        #[command(flatten)]
        input: GraphInput,
        /// Forward-orbit iteration cap.
        #[arg(long, default_value_t = 1000)]
        max_iter: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Hermite-Biehler weak-stability analysis. For `--family cycle` this
    /// runs the structural left-half-plane witness for the cycle's
    /// reversed reliability; otherwise it tests the graph's reliability
    /// polynomial directly.
    Stability {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Find a theta-graph root near a target inside the unit disk at 0.
    Density {
        /// Real part of the target.
        #[arg(long, allow_hyphen_values = true)]
        re: f64,
        /// Imaginary part of the target.
        #[arg(long, allow_hyphen_values = true)]
        im: f64,
        /// Required distance from the target.
        #[arg(long, default_value_t = 0.05)]
        eps: f64,
        /// Also lift the found root through an m-edge bundle substitution
        /// and report the lifted roots near the unit disk at 1.
        #[arg(long, value_name = "M")]
        lift: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Root sweep over a graph6 corpus (or a generated census of all
    /// connected graphs of one order), all terminal pairs per graph.
    Sweep {
        /// graph6 file, one graph per line.
        #[arg(value_name = "GRAPH6_FILE")]
        input: Option<PathBuf>,
        /// Generate all connected graphs of this order instead of reading
        /// a file.
        #[arg(long, value_name = "N", conflicts_with = "input")]
        gen_order: Option<usize>,
        /// Designated source terminal (default: sweep all pairs).
        #[arg(long, requires = "t")]
        s: Option<String>,
        /// Designated target terminal.
        #[arg(long, requires = "s")]
        t: Option<String>,
        /// Roots CSV destination.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// SVG scatter of the full root cloud.
        #[arg(long, value_name = "FILE")]
        svg: Option<PathBuf>,
        /// Directory for the on-disk memo cache.
        #[arg(long, value_name = "DIR")]
        cache: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Exact real-root census of a graph's reliability polynomial.
    Census {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
}
