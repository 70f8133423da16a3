//! `cospec`: command-line front end to the `cospectral` library.
//!
//! Exit codes: 0 success, 1 negative mathematical result (report still
//! printed), 2 usage or input error.

mod commands;
mod input;
mod report;
mod reproduce;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use report::Report;

#[derive(Parser)]
#[command(name = "cospec", version, about = "Cospectral graphs from coalescing and block similarities")]
struct Cli {
    /// Print the report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for every randomized step.
    #[arg(long, global = true, env = "COSPEC_SEED", default_value_t = 1)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Describe graph6 codes (`-` reads one code per line from stdin).
    Decode { code: String },
    /// graph6 code of a graph given by 1-based edges.
    Encode {
        #[arg(long)]
        order: usize,
        /// Edges such as `1-2,2-3`.
        #[arg(long, default_value = "")]
        edges: String,
    },
    /// Print the exact matrix of a graph.
    Matrix {
        graph: String,
        #[arg(long, default_value = "adj")]
        kind: String,
    },
    /// Characteristic polynomial of the matrix of a graph.
    Charpoly {
        graph: String,
        #[arg(long, default_value = "adj")]
        kind: String,
    },
    /// Compare characteristic polynomials; exit 1 if they differ.
    Cospectral {
        g1: String,
        g2: String,
        #[arg(long, default_value = "dist")]
        kind: String,
    },
    /// Coalesce rooted graphs onto the classes of a partition.
    Coalesce {
        #[arg(long)]
        base: String,
        /// Classes separated by `;`, 1-based vertices by `,`.
        #[arg(long)]
        partition: String,
        /// One `graph6:root` per class (root 1-based, default 1).
        #[arg(long)]
        attach: String,
        /// Also print this matrix of the result.
        #[arg(long)]
        kind: Option<String>,
    },
    /// Search a block-diagonal S with S M(G1) = M(G2) S.
    FindSim {
        g1: String,
        g2: String,
        /// Defaults to a single class.
        #[arg(long)]
        partition: Option<String>,
        #[arg(long, default_value = "dist")]
        kind: String,
        /// Also require SJ = JS.
        #[arg(long)]
        sjjs: bool,
        /// Require S to intertwine every distance-t adjacency matrix.
        #[arg(long)]
        simultaneous: bool,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Find a witness for a coalescing theorem and check it on attachments.
    VerifyTheorem {
        theorem: Theorem,
        g1: String,
        g2: String,
        #[arg(long)]
        partition: Option<String>,
        /// Attachments `graph6:root,...`; random ones when omitted.
        #[arg(long)]
        attach: Option<String>,
        /// Number of random attachment tuples.
        #[arg(long, default_value_t = 5)]
        samples: usize,
        /// q of the q-Laplacian (theorem 1).
        #[arg(long, default_value = "0")]
        q: String,
        /// Distance function tables to check (theorem 3); random when omitted.
        #[arg(long = "f")]
        f: Vec<String>,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Subset characteristic-polynomial condition for a two-class split.
    Butler {
        g1: String,
        g2: String,
        /// 1-based vertices, e.g. `1,2,3`.
        #[arg(long)]
        v1: String,
        /// Defaults to the remaining vertices.
        #[arg(long)]
        v2: Option<String>,
    },
    /// Cospectral pairs in a graph6 stream.
    Mine {
        /// graph6 file, `-` for stdin.
        #[arg(long, conflicts_with = "order", required_unless_present = "order")]
        file: Option<String>,
        /// Enumerate all connected labeled graphs of this order instead.
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, default_value = "dist")]
        kind: String,
        /// Classify distance pairs by availability of S with SJ = JS.
        #[arg(long)]
        classify_sjjs: bool,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        workers: Option<usize>,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Re-derive a worked example or census.
    Reproduce { target: reproduce::Target },
}

#[derive(clap::Args)]
struct Sampling {
    /// Random invertibility samples.
    #[arg(long, default_value_t = cospectral::similarity::DEFAULT_TRIALS)]
    trials: usize,
    /// Sample coefficients are drawn from [-B, B].
    #[arg(long, default_value_t = cospectral::similarity::DEFAULT_COEFF_BOUND)]
    coeff_bound: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    /// q-Laplacian, any block similarity.
    #[value(name = "1")]
    QLaplacian,
    /// Distance matrix, S with SJ = JS.
    #[value(name = "2")]
    Distance,
    /// Generalized distance, simultaneous S.
    #[value(name = "3")]
    GeneralizedDistance,
}

fn run(cli: Cli) -> anyhow::Result<Report> {
    use commands::*;
    let seed = cli.seed;
    match cli.command {
        Command::Decode { code } => decode(&code),
        Command::Encode { order, edges } => encode(order, &edges),
        Command::Matrix { graph, kind } => matrix(&graph, &kind),
        Command::Charpoly { graph, kind } => charpoly(&graph, &kind),
        Command::Cospectral { g1, g2, kind } => cospectral_cmd(&g1, &g2, &kind),
        Command::Coalesce { base, partition, attach, kind } => coalesce_cmd(&base, &partition, &attach, kind.as_deref()),
        Command::FindSim { g1, g2, partition, kind, sjjs, simultaneous, sampling } => find_sim(
            &g1,
            &g2,
            partition.as_deref(),
            &kind,
            sjjs,
            simultaneous,
            seed,
            sampling.trials,
            sampling.coeff_bound,
        ),
        Command::VerifyTheorem { theorem, g1, g2, partition, attach, samples, q, f, sampling } => {
            let theorem = match theorem {
                Theorem::QLaplacian => TheoremKind::QLaplacian(q),
                Theorem::Distance => TheoremKind::Distance,
                Theorem::GeneralizedDistance => TheoremKind::GeneralizedDistance(f),
            };
            verify_theorem(VerifyArgs {
                theorem,
                g1,
                g2,
                partition,
                attach,
                samples,
                seed,
                trials: sampling.trials,
                coeff_bound: sampling.coeff_bound,
            })
        }
        Command::Butler { g1, g2, v1, v2 } => butler(&g1, &g2, &v1, v2.as_deref()),
        Command::Mine { file, order, kind, classify_sjjs, workers, sampling } => mine(MineArgs {
            file,
            order,
            kind,
            classify_sjjs,
            workers: workers.unwrap_or_else(default_workers),
            seed,
            trials: sampling.trials,
            coeff_bound: sampling.coeff_bound,
        }),
        Command::Reproduce { target } => reproduce::run(target, seed),
    }
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(report) => {
            report.print(json);
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
