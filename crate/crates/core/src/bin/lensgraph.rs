//! Command-line front end. Reports go to stdout, notes to stderr.
//!
//! Exit codes: 0 success / principal, 1 input error, 2 usage error,
//! 3 not principal, 4 inconclusive, 5 some certificate not found.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lensgraph::format::{to_dot, CertificateReport, GraphFile, VerdictReport};
use lensgraph::graph::{gauge_labeling, lens_labeling, skew_product, sphere_graph};
use lensgraph::ktheory::KTheoryReport;
use lensgraph::principality::{certify_zp, check_gauge, CertifyOptions, Status};

const EXIT_INPUT: u8 = 1;
const EXIT_NOT_PRINCIPAL: u8 = 3;
const EXIT_INCONCLUSIVE: u8 = 4;
const EXIT_NOT_FOUND: u8 = 5;

#[derive(Parser)]
#[command(name = "lensgraph", version, about = "Invariants of graph C*-algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the sphere graph L_{2n-1}.
    GenSphere {
        #[arg(long)]
        n: usize,
        /// Output file; the graph goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the skew product L_{2n-1} x_c Z_p with its gauge Z_p labeling.
    GenLens {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        /// Comma-separated weights m_1,...,m_n.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        weights: Vec<i64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// K_0 and K_1 of the graph algebra.
    Ktheory { file: PathBuf },
    /// Decide principality of the gauge circle action.
    CheckGauge { file: PathBuf },
    /// Search for Z_p principality certificates; needs labels and a modulus.
    Certify {
        file: PathBuf,
        #[arg(long)]
        max_len: usize,
        /// Candidate pair budget per target.
        #[arg(long, default_value_t = CertifyOptions::DEFAULT_MAX_PAIRS)]
        max_pairs: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Graphviz DOT rendering.
    ExportDot { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn load(path: &Path) -> Result<GraphFile, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    GraphFile::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit_graph(file: &GraphFile, out: Option<&Path>) -> Result<(), String> {
    let json = file.to_json();
    match out {
        None => println!("{json}"),
        Some(path) => {
            fs::write(path, format!("{json}\n")).map_err(|e| format!("{}: {e}", path.display()))?;
            let summary = serde_json::json!({
                "out": path.display().to_string(),
                "vertices": file.graph.vertex_count(),
                "edges": file.graph.edge_count(),
            });
            println!("{}", serde_json::to_string_pretty(&summary).expect("summary serializes"));
            eprintln!("wrote {}", path.display());
        }
    }
    Ok(())
}

fn run(command: Command) -> Result<u8, String> {
    match command {
        Command::GenSphere { n, out } => {
            let graph = sphere_graph(n).map_err(|e| e.to_string())?;
            emit_graph(&GraphFile { graph, labeling: None }, out.as_deref())?;
            Ok(0)
        }
        Command::GenLens { n, p, weights, out } => {
            let sphere = sphere_graph(n).map_err(|e| e.to_string())?;
            let lens = lens_labeling(&sphere, p, &weights).map_err(|e| e.to_string())?;
            let skew = skew_product(&sphere, &lens).map_err(|e| e.to_string())?;
            let labeling = gauge_labeling(&skew, p).map_err(|e| e.to_string())?;
            emit_graph(&GraphFile { graph: skew, labeling: Some(labeling) }, out.as_deref())?;
            Ok(0)
        }
        Command::Ktheory { file } => {
            let f = load(&file)?;
            println!("{}", KTheoryReport::for_graph(&f.graph).to_json());
            Ok(0)
        }
        Command::CheckGauge { file } => {
            let f = load(&file)?;
            let verdict = check_gauge(&f.graph);
            let report = VerdictReport::new(&f.graph, &verdict);
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            eprintln!("{}", report.reason);
            Ok(match verdict.status {
                Status::Principal => 0,
                Status::NotPrincipal => EXIT_NOT_PRINCIPAL,
                Status::Inconclusive => EXIT_INCONCLUSIVE,
            })
        }
        Command::Certify { file, max_len, max_pairs, jobs } => {
            let f = load(&file)?;
            let labeling = f
                .labeling
                .as_ref()
                .ok_or_else(|| format!("{}: certify needs edge labels and a modulus", file.display()))?;
            let options = CertifyOptions { max_len, max_pairs, jobs };
            let result = certify_zp(&f.graph, labeling, options).map_err(|e| e.to_string())?;
            let report = CertificateReport::new(&f.graph, &result);
            println!("{}", report.to_json());
            let missing = result.not_found().count();
            if missing == 0 {
                eprintln!("certified all {} targets", result.outcomes.len());
                Ok(0)
            } else {
                eprintln!("{missing} of {} targets have no certificate within max_len {max_len}", result.outcomes.len());
                Ok(EXIT_NOT_FOUND)
            }
        }
        Command::ExportDot { file } => {
            let f = load(&file)?;
            print!("{}", to_dot(&f.graph, f.labeling.as_ref()));
            Ok(0)
        }
    }
}
