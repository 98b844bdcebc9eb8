//! `concover`: command-line front end. Every command prints one JSON run
//! report on stdout; diagnostics go to stderr.

mod commands;
mod input;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use concover::covers::SearchBudget;
use concover::Caps;

use report::{Budget, Failure};

#[derive(Parser, Debug)]
#[command(
    name = "concover",
    version,
    about = "Nerves of connected covers of graphs, their homology, minors and Helly numbers"
)]
pub struct Cli {
    #[command(flatten)]
    pub flags: GlobalFlags,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalFlags {
    /// Largest family tried by cover searches.
    #[arg(long, global = true, default_value_t = SearchBudget::default().members)]
    pub budget_members: usize,
    /// Largest pool of connected vertex sets used by cover searches.
    #[arg(long, global = true, default_value_t = SearchBudget::default().pool)]
    pub budget_pool: usize,
    /// Search-node budget for cover searches.
    #[arg(long, global = true, default_value_t = SearchBudget::default().nodes)]
    pub budget_nodes: u64,
    /// Overrides every vertex cap of the exact searches (minor host,
    /// embedding, Leray complex, piercing ambient graph).
    #[arg(long, global = true)]
    pub cap_vertices: Option<usize>,
    /// Seed for randomized sweeps.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads for the parallel scans (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Let `gamma` run the exhaustive cover search when the structural rules
    /// leave the upper bound open.
    #[arg(long, global = true)]
    pub exhaustive: bool,
    /// Include wall-clock time in the report (makes output non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
}

impl GlobalFlags {
    pub fn caps(&self) -> Caps {
        let mut caps = Caps::default();
        if let Some(v) = self.cap_vertices {
            caps.minor_graph_vertices = v;
            caps.embed_vertices = v;
            caps.leray_vertices = v;
            caps.pierce_vertices = v;
        }
        caps
    }

    pub fn search_budget(&self) -> SearchBudget {
        SearchBudget {
            members: self.budget_members,
            pool: self.budget_pool,
            nodes: self.budget_nodes,
        }
    }

    pub fn budget(&self) -> Budget {
        Budget {
            members: self.budget_members,
            pool: self.budget_pool,
            nodes: self.budget_nodes,
            exhaustive: self.exhaustive,
            caps: self.caps(),
        }
    }
}

/// Graph arguments are a file path, `-` for stdin, a family name such as
/// `k5`, `w8`, `cycle:6` or `multipartite:2,2,3`, or graph6 text itself.
/// Cover arguments are files (or `-`) holding `{"graph": <graph6>,
/// "members": [[...], ...]}` with members given as vertex positions.
#[derive(Subcommand, Debug)]
pub enum Command {
    /// Lower and upper bounds on the homological dimension of a graph.
    Gamma { graph: String },
    /// Maximal faces and f-vector of the nerve of a cover.
    Nerve { cover: PathBuf },
    /// Reduced Z2 Betti numbers of a cover's nerve, or of a complex file
    /// (one maximal face per line) with --complex.
    Betti {
        #[arg(required_unless_present = "complex")]
        cover: Option<PathBuf>,
        #[arg(long, conflicts_with = "cover")]
        complex: Option<PathBuf>,
    },
    /// Checks that every nonempty intersection of members is connected.
    Validate { cover: PathBuf },
    /// Searches for a minor of PATTERN in GRAPH.
    Minor { graph: String, pattern: String },
    /// Helly number, witnessing configuration, and the clique model it yields.
    Helly { cover: PathBuf },
    /// Minimum number of vertices meeting every member.
    Pierce { cover: PathBuf },
    /// Whether every P members contain Q with a common vertex.
    Pq {
        cover: PathBuf,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    /// The 3-chain T of an ordered 2-cycle. The cycle file lists one
    /// triangle per line; the order is the file order unless --order names
    /// a file with the same triangles in another order.
    Tchain {
        cycle: PathBuf,
        #[arg(long)]
        order: Option<PathBuf>,
    },
    /// Searches for a connected cover whose nerve has homology in dimension DIM.
    Search {
        graph: String,
        #[arg(long)]
        dim: usize,
    },
    /// Runs a stored example and compares against its expected values.
    Reproduce { name: String },
    /// Helly measurements on seeded random covers, one record per instance
    /// (requires --seed).
    Sweep {
        #[arg(long, value_enum, default_value = "planar")]
        family: commands::SweepFamily,
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.flags.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("concover: cannot set up {t} threads: {e}");
            return ExitCode::from(Failure::INPUT);
        }
    }
    let report = commands::run(&cli);
    match serde_json::to_string_pretty(&report) {
        Ok(text) => {
            let mut out = std::io::stdout().lock();
            if let Err(e) = writeln!(out, "{text}").and_then(|_| out.flush()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("concover: cannot write the report: {e}");
                    return ExitCode::from(Failure::INTERNAL);
                }
            }
        }
        Err(e) => {
            eprintln!("concover: cannot serialize the report: {e}");
            return ExitCode::from(Failure::INTERNAL);
        }
    }
    if let Some(msg) = &report.error {
        eprintln!("concover: {msg}");
    }
    ExitCode::from(report.exit_code)
}
