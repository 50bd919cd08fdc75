mod bench;
mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Solver, verifier, generator and benchmark harness for maximum bipartite
/// PD-matching: assign jobs to machines so that each machine's load stays
/// within the tolerance of every job placed on it, matching as many jobs as
/// possible.
#[derive(Parser)]
#[command(name = "pdmatch", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TieBreakArg {
    Low,
    High,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and write the matching.
    Solve {
        /// Instance JSON file.
        #[arg(long)]
        input: String,
        /// Algorithm name; `auto` picks the best applicable one.
        #[arg(long, default_value = "auto")]
        algorithm: String,
        /// Write the matching JSON here instead of stdout.
        #[arg(long)]
        output: Option<String>,
        /// Machine processing order for the greedy algorithm, e.g. `1,0`.
        #[arg(long)]
        machine_order: Option<String>,
        /// Tie-break between equal-tolerance jobs.
        #[arg(long, value_enum, default_value = "low")]
        tiebreak: TieBreakArg,
        /// Work budget for enumeration-based algorithms.
        #[arg(long)]
        budget: Option<u64>,
        /// Job-type limit for the t-types algorithm.
        #[arg(long, default_value_t = 3)]
        max_types: usize,
    },
    /// Check a matching against an instance and report feasibility,
    /// maximality and strong maximality.
    Verify {
        /// Instance JSON file.
        #[arg(long)]
        input: String,
        /// Matching JSON file.
        #[arg(long)]
        matching: String,
    },
    /// Print the structural classification of an instance as JSON.
    Classify {
        /// Instance JSON file.
        #[arg(long)]
        input: String,
        #[arg(long)]
        output: Option<String>,
    },
    /// Produce an instance from one of the generator families.
    Generate {
        /// random | mono | udep | 3partition | 3dm | ddm | fixture
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, default_value_t = 4)]
        max_tol: u64,
        #[arg(long, default_value_t = 0.25)]
        zero_prob: f64,
        /// 3-partition values, comma separated.
        #[arg(long)]
        a: Option<String>,
        /// 3-partition triple sum.
        #[arg(long)]
        b: Option<u64>,
        /// Ground-set size for the reduction families.
        #[arg(long)]
        k: Option<usize>,
        /// Triples `x,y,z;x,y,z;...` for the 3dm family.
        #[arg(long)]
        triples: Option<String>,
        /// Tuples `a,b,c;...` for the ddm family.
        #[arg(long)]
        tuples: Option<String>,
        #[arg(long)]
        k1: Option<u64>,
        #[arg(long)]
        k2: Option<u64>,
        /// Fixture name: ir | tight | monobad | 3part-example.
        #[arg(long)]
        name: Option<String>,
        /// Fixture parameter (r or k).
        #[arg(long)]
        param: Option<usize>,
        #[arg(long)]
        output: Option<String>,
        /// Also write generator metadata (job roles, machine maps) here.
        #[arg(long)]
        metadata: Option<String>,
    },
    /// Run algorithms over a generated corpus and report sizes, optima and
    /// approximation ratios.
    Bench {
        /// Corpus spec: `family:key=val,...` clauses joined by `;`, e.g.
        /// `random:count=100,n=8,m=3,max-tol=4,zero-prob=0.25`.
        #[arg(long)]
        corpus: String,
        /// Comma-separated algorithm names.
        #[arg(long)]
        algorithms: String,
        /// Report path; records go here as CSV plus a JSON sibling.
        #[arg(long)]
        report: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Per-instance budget for oracle sizing.
        #[arg(long)]
        budget: Option<u64>,
        /// Record format on stdout when no report path is given.
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Solve {
            input,
            algorithm,
            output,
            machine_order,
            tiebreak,
            budget,
            max_types,
        } => commands::solve(
            &input,
            &algorithm,
            output.as_deref(),
            machine_order.as_deref(),
            tiebreak,
            budget,
            max_types,
        ),
        Command::Verify { input, matching } => commands::verify(&input, &matching),
        Command::Classify { input, output } => commands::classify(&input, output.as_deref()),
        Command::Generate {
            family,
            seed,
            n,
            m,
            max_tol,
            zero_prob,
            a,
            b,
            k,
            triples,
            tuples,
            k1,
            k2,
            name,
            param,
            output,
            metadata,
        } => commands::generate(commands::GenerateArgs {
            family,
            seed,
            n,
            m,
            max_tol,
            zero_prob,
            a,
            b,
            k,
            triples,
            tuples,
            k1,
            k2,
            name,
            param,
            output,
            metadata,
        }),
        Command::Bench {
            corpus,
            algorithms,
            report,
            seed,
            budget,
            format,
        } => bench::run(
            &corpus,
            &algorithms,
            report.as_deref(),
            seed,
            budget,
            format,
        ),
    };
    ExitCode::from(code)
}
