use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use oriadim::classes::{in_class, ClassParams};
use oriadim::gen;
use oriadim::graph::diameter;
use oriadim::io::{emit_graph, emit_orientation, parse_graph, parse_orientation, RunReport};
use oriadim::orient::{audit_orientation, orient_diam3, verify_orientation, OrientError};
use oriadim::search::{oriented_diameter_exact, search_witness, SearchConfig, SearchError};

/// Orients bridgeless graphs to minimize directed diameter.
#[derive(Parser)]
#[command(name = "oriadim", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format on stdout.
    #[arg(long, value_enum, default_value_t = ReportFormat::Json, global = true)]
    report: ReportFormat,
}

#[derive(Copy, Clone, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Orient a graph, preferring the partition rule set with its
    /// diameter-9 guarantee.
    Orient {
        /// Graph file (`n m` header then `a b` edge lines).
        input: String,
        /// Write the resulting orientation here.
        #[arg(long)]
        output: Option<String>,
        /// Node budget for the exact fallback.
        #[arg(long, default_value_t = 5_000_000)]
        budget: u64,
    },
    /// Compute the directed diameter of an orientation file.
    Diameter { input: String },
    /// Exact minimum oriented diameter by branch-and-bound.
    Exact {
        input: String,
        #[arg(long, default_value_t = 5_000_000)]
        budget: u64,
        /// Stop as soon as an orientation at most this good is found.
        #[arg(long)]
        target: Option<u32>,
        /// Maximum edge count accepted (hard ceiling 30).
        #[arg(long, default_value_t = 20)]
        edge_cap: usize,
    },
    /// Check membership in the deletion-robust small-diameter class.
    CheckClass {
        input: String,
        #[arg(short)]
        k: u32,
        #[arg(long)]
        lambda: u32,
        #[arg(short)]
        s: usize,
    },
    /// Verify an orientation against its graph and report the certificate.
    Verify {
        graph: String,
        orientation: String,
    },
    /// Hunt for small graphs whose exact oriented diameter reaches a
    /// target.
    WitnessSearch {
        #[arg(long)]
        n_max: u32,
        #[arg(long)]
        target: u32,
        /// Worker threads; falls back to ORIADIM_THREADS, then 1.
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Per-order sample count beyond the exhaustive range.
        #[arg(long, default_value_t = 2_000)]
        budget: u64,
    },
    /// Emit a generated graph on stdout.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        /// Vertex count (upper bound for the random families).
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum Family {
    Cycle,
    Complete,
    Path,
    WorkedExample,
    ClassRandom,
    Case2Random,
}

const EXIT_INPUT: u8 = 1;
const EXIT_CAPABILITY: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

enum Failure {
    Input(String),
    Capability(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Capability(_) => EXIT_CAPABILITY,
            Failure::Internal(_) => EXIT_INTERNAL,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Capability(m) | Failure::Internal(m) => m,
        }
    }
}

fn input_err(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn read_file(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn orient_failure(e: OrientError) -> Failure {
    match e {
        OrientError::Search(SearchError::AboveEdgeCap { .. }) => Failure::Capability(e.to_string()),
        _ => Failure::Input(e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Some(report)) => {
            match cli.report {
                ReportFormat::Json => println!("{}", report.to_json()),
                ReportFormat::Text => print!("{}", report.to_text()),
            }
            ExitCode::SUCCESS
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn run(cli: &Cli) -> Result<Option<RunReport>, Failure> {
    match &cli.command {
        Command::Orient { input, output, budget } => {
            let g = parse_graph(&read_file(input)?).map_err(input_err)?;
            let cfg = SearchConfig { node_budget: *budget, ..SearchConfig::default() };
            let (o, plan) = orient_diam3(&g, &cfg).map_err(orient_failure)?;
            // Re-derive everything reported; disagreement is an internal
            // bug, not an input problem.
            let cert = verify_orientation(&g, &o)
                .map_err(|e| Failure::Internal(format!("self-check failed: {e}")))?;
            if !cert.strongly_connected {
                return Err(Failure::Internal(
                    "self-check failed: orientation is not strong".into(),
                ));
            }
            let mut report = RunReport::new("orient");
            report.vertices = Some(g.vertex_count());
            report.edges = Some(g.edge_count());
            report.mode = Some(plan.mode.name().to_string());
            report.fallback_reason = plan.fallback_reason.clone();
            report.diameter = Some(cert.diameter);
            report.strongly_connected = Some(true);
            report.witness_pair = Some(cert.witness_pair());
            report.certificate_digest = Some(cert.digest());
            if let Some(p) = &plan.partition {
                let audit = audit_orientation(&g, p, &o);
                if !audit.ok() {
                    return Err(Failure::Internal(format!(
                        "self-check failed: audit violations {:?}",
                        audit.failures
                    )));
                }
                report.audit_ok = Some(true);
                report.cell_sizes = Some(
                    p.cell_sizes().into_iter().map(|(c, s)| (c.to_string(), s)).collect(),
                );
                report.rules_applied = Some(plan.rules_applied.len());
                report.shadowed_matches = Some(plan.shadowed.len());
                report.leftover_edges = Some(plan.leftover.len());
            }
            if let Some(path) = output {
                fs::write(path, emit_orientation(&o))
                    .map_err(|e| Failure::Input(format!("{path}: {e}")))?;
            }
            Ok(Some(report))
        }
        Command::Diameter { input } => {
            let o = parse_orientation(&read_file(input)?).map_err(input_err)?;
            let cert = diameter(&o).map_err(input_err)?;
            let mut report = RunReport::new("diameter");
            report.vertices = Some(o.vertex_count());
            report.edges = Some(o.arc_count());
            report.diameter = Some(cert.diameter);
            report.strongly_connected = Some(cert.strongly_connected);
            report.witness_pair = Some(cert.witness_pair());
            report.certificate_digest = Some(cert.digest());
            Ok(Some(report))
        }
        Command::Exact { input, budget, target, edge_cap } => {
            let g = parse_graph(&read_file(input)?).map_err(input_err)?;
            let cfg = SearchConfig {
                edge_cap: *edge_cap,
                node_budget: *budget,
                target: *target,
            };
            let res = oriented_diameter_exact(&g, &cfg).map_err(|e| match e {
                SearchError::AboveEdgeCap { .. } => Failure::Capability(e.to_string()),
                other => Failure::Input(other.to_string()),
            })?;
            let cert = diameter(&res.orientation).map_err(input_err)?;
            if cert.diameter != res.diameter {
                return Err(Failure::Internal(
                    "self-check failed: reported diameter disagrees with certificate".into(),
                ));
            }
            let mut report = RunReport::new("exact");
            report.vertices = Some(g.vertex_count());
            report.edges = Some(g.edge_count());
            report.diameter = Some(res.diameter);
            report.strongly_connected = Some(cert.strongly_connected);
            report.certificate_digest = Some(cert.digest());
            report.proven_optimal = Some(res.proven_optimal);
            report.nodes_explored = Some(res.nodes_explored);
            Ok(Some(report))
        }
        Command::CheckClass { input, k, lambda, s } => {
            let g = parse_graph(&read_file(input)?).map_err(input_err)?;
            let params = ClassParams::new(*k, *lambda, *s).map_err(input_err)?;
            let res = in_class(&g, params).map_err(input_err)?;
            let mut report = RunReport::new("check-class");
            report.vertices = Some(g.vertex_count());
            report.edges = Some(g.edge_count());
            report.member = Some(res.member);
            report.violating_deletion = res.violating_deletion;
            report.violating_pair = res.violating_pair;
            Ok(Some(report))
        }
        Command::Verify { graph, orientation } => {
            let g = parse_graph(&read_file(graph)?).map_err(input_err)?;
            let o = parse_orientation(&read_file(orientation)?).map_err(input_err)?;
            let cert = verify_orientation(&g, &o).map_err(input_err)?;
            let mut report = RunReport::new("verify");
            report.vertices = Some(g.vertex_count());
            report.edges = Some(g.edge_count());
            report.diameter = Some(cert.diameter);
            report.strongly_connected = Some(cert.strongly_connected);
            report.witness_pair = Some(cert.witness_pair());
            report.certificate_digest = Some(cert.digest());
            Ok(Some(report))
        }
        Command::WitnessSearch { n_max, target, threads, seed, budget } => {
            let threads = threads
                .or_else(|| {
                    std::env::var("ORIADIM_THREADS").ok().and_then(|v| v.parse().ok())
                })
                .unwrap_or(1);
            let cfg = SearchConfig { node_budget: *budget, ..SearchConfig::default() };
            let res = search_witness(*n_max, *target, &cfg, threads, *seed);
            let mut report = RunReport::new("witness-search");
            report.witnesses_found = Some(res.witnesses.len());
            report.graphs_examined = Some(res.graphs_examined);
            report.proven_exhaustive = Some(res.proven_exhaustive);
            report.seed = Some(*seed);
            for w in &res.witnesses {
                // Witness graphs go to stderr so stdout stays a single
                // report.
                eprint!("{}", emit_graph(w));
            }
            Ok(Some(report))
        }
        Command::Gen { family, n, seed } => {
            let mut rng = gen::seeded_rng(*seed);
            let g = match family {
                Family::Cycle => gen::cycle(*n),
                Family::Complete => gen::complete(*n),
                Family::Path => gen::path(*n),
                Family::WorkedExample => gen::worked_example(),
                Family::ClassRandom => gen::random_class_instance(&mut rng, *n),
                Family::Case2Random => gen::random_case2_instance(&mut rng, *n),
            };
            // The graph itself is the output; no report competes for
            // stdout.
            print!("{}", emit_graph(&g));
            Ok(None)
        }
    }
}
