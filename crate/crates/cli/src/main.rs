//! `qwst`: construct graph families, analyze state transfer between two
//! vertices, and simulate fidelity series.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qwst::constructions::{
    cocktail_party, cyclic_cover_family, hadamard_bipartite, hadamard_fractions, hypercube, k4_family,
    seidel_complete, Construction,
};
use qwst::format::GraphFile;
use qwst::graph::{hermitian_from_weights, HermitianAdjacency};
use qwst::spectral::{certify, decompose, eigenvalue_support, CospectralityCertificate, NotCospectral, DEFAULT_M_MAX};
use qwst::transfer::{
    first_pst_time, pgst_decide_with, pst_check, PgstOptions, TransferVerdict, DEFAULT_SWEEP_BUDGET,
};
use qwst::walk::{fidelity_sweep, TransitionMatrix};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "qwst", version, about = "Quantum walk state transfer on weighted graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a graph family member as a JSON graph file.
    Construct {
        #[command(subcommand)]
        family: Family,
    },
    /// Spectral and transfer report for the pair (a, b).
    Analyze(AnalyzeArgs),
    /// Fidelity series |<U^t N*e_a, N*e_b>| for t = 0..=t_max as CSV.
    Simulate(SimulateArgs),
}

#[derive(Subcommand)]
enum Family {
    /// Complement of n disjoint edges; antipodes 0 and n.
    Cocktail {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// d-cube; antipodes 0 and 2^d - 1.
    Hypercube {
        #[arg(long)]
        d: u32,
        #[command(flatten)]
        out: OutArg,
    },
    /// Seidel-signed complete graph on 2n vertices; pair (0, 1).
    Seidel {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Iterated double cover of the 12-vertex oriented base; pair (1, 10).
    Cyclic {
        #[arg(long)]
        d: u32,
        #[command(flatten)]
        out: OutArg,
    },
    /// Hadamard-diagonalized K_{n+1,n+1}; pair (0, 2^s - 1).
    Hadamard {
        #[arg(long)]
        s: u32,
        /// Comma-separated odd fractions p/q; chosen automatically if absent.
        #[arg(long, value_delimiter = ',', value_parser = parse_fraction)]
        fractions: Option<Vec<(i64, i64)>>,
        #[command(flatten)]
        out: OutArg,
    },
    /// K_4 with an m-th root of unity; pair (0, 1).
    K4 {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Args)]
struct OutArg {
    /// Output path.
    #[arg(short = 'o', long = "out")]
    path: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Expectation {
    Pst,
    NoPst,
    Pgst,
    NoPgst,
    Undecided,
}

#[derive(Args)]
struct AnalyzeArgs {
    file: PathBuf,
    a: usize,
    b: usize,
    /// Search PST over 1..=bound.
    #[arg(long, default_value_t = 1000)]
    pst_bound: u64,
    #[arg(long, default_value_t = DEFAULT_M_MAX)]
    m_max: u32,
    /// Sweep length for undecided PGST verdicts; 0 disables.
    #[arg(long, env = "QWST_SWEEP_BUDGET", default_value_t = DEFAULT_SWEEP_BUDGET)]
    sweep_budget: u64,
    /// Exit with status 1 unless the report shows this outcome.
    #[arg(long, value_enum)]
    expect: Option<Expectation>,
    /// Write the report here instead of standard output.
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    file: PathBuf,
    a: usize,
    b: usize,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    t_max: u64,
    /// CSV output path.
    #[arg(long)]
    out: PathBuf,
}

fn parse_fraction(s: &str) -> Result<(i64, i64), String> {
    let (p, q) = s.split_once('/').ok_or_else(|| format!("expected p/q, got {s:?}"))?;
    let p = p.trim().parse().map_err(|e| format!("{p:?}: {e}"))?;
    let q = q.trim().parse().map_err(|e| format!("{q:?}: {e}"))?;
    Ok((p, q))
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Unmet(String),
}

impl From<qwst::Error> for Failure {
    fn from(e: qwst::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn io_error(path: &Path, e: io::Error) -> Failure {
    Failure::Usage(format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct { family } => construct(family),
        Command::Analyze(args) => analyze(args),
        Command::Simulate(args) => simulate(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Unmet(msg)) => {
            eprintln!("qwst: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("qwst: {msg}");
            ExitCode::from(2)
        }
    }
}

fn construct(family: Family) -> Result<(), Failure> {
    let (c, out): (Construction, OutArg) = match family {
        Family::Cocktail { n, out } => (cocktail_party(n)?, out),
        Family::Hypercube { d, out } => (hypercube(d)?, out),
        Family::Seidel { n, out } => (seidel_complete(n)?, out),
        Family::Cyclic { d, out } => (cyclic_cover_family(d)?, out),
        Family::Hadamard { s, fractions, out } => {
            if !(1..=6).contains(&s) {
                return Err(Failure::Usage(format!("s must be in 1..=6, got {s}")));
            }
            let fractions = fractions.unwrap_or_else(|| hadamard_fractions(s));
            (hadamard_bipartite(s, &fractions)?, out)
        }
        Family::K4 { m, p, out } => (k4_family(m, p)?, out),
    };
    c.graph_file()?.write(&out.path)?;
    println!(
        "wrote {} ({} vertices, pair {} {})",
        out.path.display(),
        c.graph().n(),
        c.pair.0,
        c.pair.1
    );
    Ok(())
}

#[derive(Serialize)]
struct Report {
    schema: u32,
    graph: GraphSummary,
    pair: [usize; 2],
    spectrum: Vec<SpectrumEntry>,
    supports: Supports,
    cospectrality: Cospectrality,
    pst: PstSearch,
    pgst: TransferVerdict,
}

#[derive(Serialize)]
struct GraphSummary {
    n: usize,
    edges: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<qwst::format::FamilyTag>,
}

#[derive(Serialize)]
struct SpectrumEntry {
    eigenvalue: f64,
    multiplicity: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<String>,
}

#[derive(Serialize)]
struct Supports {
    a: Vec<f64>,
    b: Vec<f64>,
}

#[derive(Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
enum Cospectrality {
    StronglyCospectral { certificate: CospectralityCertificate },
    NotStronglyCospectral { detail: NotCospectral },
}

#[derive(Serialize)]
struct PstSearch {
    bound: u64,
    first_time: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<TransferVerdict>,
}

fn load(path: &Path, a: usize, b: usize) -> Result<(GraphFile, HermitianAdjacency), Failure> {
    let file = GraphFile::read(path)?;
    let w = file.weight_matrix()?;
    w.graph().check_vertex(a)?;
    w.graph().check_vertex(b)?;
    Ok((file, hermitian_from_weights(&w)))
}

fn analyze(args: AnalyzeArgs) -> Result<(), Failure> {
    let (file, h) = load(&args.file, args.a, args.b)?;
    let s = decompose(&h);
    let spectrum = s
        .spaces()
        .iter()
        .map(|e| SpectrumEntry {
            eigenvalue: e.value,
            multiplicity: e.multiplicity,
            exact: e.exact.map(|c| c.to_string()),
        })
        .collect();
    let supports = Supports {
        a: eigenvalue_support(&s, args.a),
        b: eigenvalue_support(&s, args.b),
    };
    let (cospectrality, pst) = match certify(&s, args.a, args.b, args.m_max) {
        Ok(cert) => {
            let first_time = first_pst_time(&cert, args.pst_bound);
            let verdict = first_time.map(|t| pst_check(&h, &cert, t)).transpose()?;
            (
                Cospectrality::StronglyCospectral { certificate: cert },
                PstSearch {
                    bound: args.pst_bound,
                    first_time,
                    verdict,
                },
            )
        }
        Err(detail) => (
            Cospectrality::NotStronglyCospectral { detail },
            PstSearch {
                bound: args.pst_bound,
                first_time: None,
                verdict: None,
            },
        ),
    };
    let opts = PgstOptions {
        m_max: args.m_max,
        sweep_budget: args.sweep_budget,
    };
    let pgst = pgst_decide_with(&h, &s, args.a, args.b, opts)?;

    let report = Report {
        schema: SCHEMA,
        graph: GraphSummary {
            n: file.n,
            edges: file.edges.len(),
            family: file.family.clone(),
        },
        pair: [args.a, args.b],
        spectrum,
        supports,
        cospectrality,
        pst,
        pgst,
    };
    let text = serde_json::to_string_pretty(&report).expect("reports always serialize") + "\n";
    match &args.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| io_error(path, e))?,
        None => print!("{text}"),
    }

    if let Some(want) = args.expect {
        let found_pst = report.pst.first_time.is_some();
        let met = match want {
            Expectation::Pst => found_pst,
            Expectation::NoPst => !found_pst,
            Expectation::Pgst => report.pgst.kind() == "pgst",
            Expectation::NoPgst => report.pgst.kind() == "no_pgst",
            Expectation::Undecided => report.pgst.kind() == "undecided",
        };
        if !met {
            let name = want.to_possible_value().expect("no skipped variants").get_name().to_string();
            return Err(Failure::Unmet(format!(
                "expected {name}; pst search found {:?}, pgst verdict is {}",
                report.pst.first_time,
                report.pgst.kind()
            )));
        }
    }
    Ok(())
}

fn simulate(args: SimulateArgs) -> Result<(), Failure> {
    let file = GraphFile::read(&args.file)?;
    let w = file.weight_matrix()?;
    let u = TransitionMatrix::new(&w);
    let sweep = fidelity_sweep(&u, args.a, args.b, args.t_max)?;
    let f = File::create(&args.out).map_err(|e| io_error(&args.out, e))?;
    let mut out = BufWriter::new(f);
    sweep
        .write_csv(&mut out)
        .and_then(|()| out.flush())
        .map_err(|e| io_error(&args.out, e))?;
    println!("max fidelity {:.12} at t = {}", sweep.best, sweep.best_t);
    Ok(())
}
