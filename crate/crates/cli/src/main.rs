//! `vminor`: command-line front end. Graph arguments are files holding
//! graph6 or sparse6, or the encoded string itself.
//!
//! Exit status is 0 on success, 1 when a decision comes out negative and 2
//! on any error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use vminor_core::chains::{clean_chain, Chain, ChainMode};
use vminor_core::circle::{circle_diagram, de_fraysseix_diagram, verify_de_fraysseix};
use vminor_core::config::RunConfig;
use vminor_core::cutrank::{cut_rank, exact_rankwidth_with_cap};
use vminor_core::epengine::{many_robust_parts, PartsOutcome};
use vminor_core::families::closure_audit;
use vminor_core::formats::{parse_graph, to_graph6};
use vminor_core::matroid::{
    fundamental_graph, matroid_minor_witness, perturbation_path, BinaryMatroid, Multigraph,
};
use vminor_core::perturb::{certify_robustness_with, cut_perturbation_witness, PerturbationWitness, RobustnessVerdict};
use vminor_core::sided::SidedBipartiteGraph;
use vminor_core::vmsearch::{PivotMinorSearch, VertexMinorSearch};
use vminor_core::{Graph, VertexId, VertexSet};
use vminor_suite::{run_all, SuiteConfig};

#[derive(Parser)]
#[command(name = "vminor", version, about = "Vertex-minors, perturbations and binary matroid minors")]
struct Cli {
    /// Print JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the result to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Local complementation, pivoting and contraction.
    #[command(subcommand)]
    Graph(GraphOp),
    /// Cut-rank of a vertex set.
    Cutrank { graph: String, vertices: Vec<usize> },
    /// Exact rank-width with an optimal decomposition.
    Rankwidth { graph: String },
    #[command(subcommand)]
    Vm(Contains),
    #[command(subcommand)]
    Pm(Contains),
    #[command(subcommand)]
    Perturb(PerturbOp),
    #[command(subcommand)]
    Chain(ChainOp),
    #[command(subcommand)]
    Ep(EpOp),
    #[command(subcommand)]
    Matroid(MatroidOp),
    #[command(subcommand)]
    Circle(CircleOp),
    #[command(subcommand)]
    Families(FamiliesOp),
    /// Run the acceptance criteria.
    Suite {
        #[arg(long, env = "VMINOR_SEED", default_value_t = 7)]
        seed: u64,
        /// Criterion ids to run; all when empty.
        only: Vec<usize>,
    },
}

#[derive(Subcommand)]
enum GraphOp {
    Lc { graph: String, v: usize },
    Pivot { graph: String, u: usize, v: usize },
    Contract { graph: String, v: usize },
}

#[derive(Subcommand)]
enum Contains {
    /// Whether `h` is a minor of `g`, with a script when it is.
    Contains { g: String, h: String },
}

#[derive(Subcommand)]
enum PerturbOp {
    /// Check a witness file.
    Verify { witness: PathBuf },
    /// The witness removing the edges leaving a vertex set.
    Cut { graph: String, vertices: Vec<usize> },
    /// Whether every `t`-perturbation of `g` keeps `h`.
    Robust {
        g: String,
        h: String,
        #[arg(long)]
        t: usize,
    },
}

#[derive(Subcommand)]
enum ChainOp {
    /// Fix every pair of a chain, keeping `k` parts.
    Clean {
        graph: String,
        /// JSON list of parts, each a list of vertices.
        chain: PathBuf,
        #[arg(long)]
        k: usize,
        /// Use pivots only; the graph must be bipartite.
        #[arg(long)]
        pivot: bool,
    },
}

#[derive(Subcommand)]
enum EpOp {
    /// Disjoint robust parts for each component, or a perturbation.
    Parts {
        graph: String,
        #[arg(required = true)]
        components: Vec<String>,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
    },
}

#[derive(Subcommand)]
enum MatroidOp {
    /// Fundamental graph with respect to a base, the first one by default.
    Fg {
        matroid: PathBuf,
        #[arg(long, value_delimiter = ',')]
        base: Vec<String>,
    },
    /// Fewest lifts and projections between two matroids.
    Dist {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Whether `n` is isomorphic to a minor of `m`.
    Minor { m: PathBuf, n: PathBuf },
}

#[derive(Subcommand)]
enum CircleOp {
    /// A chord diagram for the graph, if it is a circle graph.
    Check { graph: String },
    /// Circle graph check for the fundamental graph of a planar multigraph.
    FgVerify { multigraph: PathBuf },
}

#[derive(Subcommand)]
enum FamiliesOp {
    Audit { graph: String },
}

/// What a command produced: the JSON form, the plain form, and whether the
/// decision it answers came out positive.
struct Outcome {
    json: Value,
    text: String,
    positive: bool,
}

impl Outcome {
    fn new(json: impl Serialize, text: impl Into<String>) -> Result<Self> {
        Ok(Outcome {
            json: serde_json::to_value(json)?,
            text: text.into(),
            positive: true,
        })
    }

    fn decided(mut self, positive: bool) -> Self {
        self.positive = positive;
        self
    }
}

struct Io {
    json: bool,
    output: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn graph_arg(arg: &str) -> Result<Graph> {
    let path = Path::new(arg);
    let text = if path.is_file() { read(path)? } else { arg.to_string() };
    parse_graph(&text).with_context(|| format!("cannot parse graph {arg:?}"))
}

fn vertex(g: &Graph, i: usize) -> Result<VertexId> {
    let v = VertexId::new(i)?;
    if !g.vertices().contains(v) {
        bail!("vertex {i} is not in the graph");
    }
    Ok(v)
}

fn vertex_set(g: &Graph, vs: &[usize]) -> Result<VertexSet> {
    vs.iter().map(|&i| vertex(g, i)).collect()
}

fn graph_outcome(g: &Graph) -> Result<Outcome> {
    let g6 = to_graph6(g);
    Outcome::new(json!({ "graph6": g6, "graph": g }), g6)
}

fn script_text(script: &impl std::fmt::Display) -> String {
    script.to_string().trim_end().to_string()
}

fn run(cli: Cli, cfg: &RunConfig) -> Result<Outcome> {
    match cli.command {
        Command::Graph(op) => match op {
            GraphOp::Lc { graph, v } => {
                let g = graph_arg(&graph)?;
                graph_outcome(&g.local_complement(vertex(&g, v)?)?)
            }
            GraphOp::Pivot { graph, u, v } => {
                let g = graph_arg(&graph)?;
                graph_outcome(&g.pivot(vertex(&g, u)?, vertex(&g, v)?)?)
            }
            GraphOp::Contract { graph, v } => {
                let g = graph_arg(&graph)?;
                graph_outcome(&g.contract_vertex(vertex(&g, v)?)?)
            }
        },
        Command::Cutrank { graph, vertices } => {
            let g = graph_arg(&graph)?;
            let r = cut_rank(&g, vertex_set(&g, &vertices)?);
            Outcome::new(json!({ "cut_rank": r }), r.to_string())
        }
        Command::Rankwidth { graph } => {
            let g = graph_arg(&graph)?;
            let (w, d) = exact_rankwidth_with_cap(&g, cfg.iso_cap)?;
            Outcome::new(json!({ "rankwidth": w, "decomposition": d }), format!("{w}\n{d}"))
        }
        Command::Vm(Contains::Contains { g, h }) => {
            let (g, h) = (graph_arg(&g)?, graph_arg(&h)?);
            let script = VertexMinorSearch::with_cap(&h, cfg.iso_cap)?.witness(&g)?;
            contains_outcome(script)
        }
        Command::Pm(Contains::Contains { g, h }) => {
            let g = SidedBipartiteGraph::from_coloring(graph_arg(&g)?)?;
            let h = SidedBipartiteGraph::from_coloring(graph_arg(&h)?)?;
            let script = PivotMinorSearch::with_cap(&h, cfg.iso_cap)?.witness(&g)?;
            contains_outcome(script)
        }
        Command::Perturb(op) => perturb(op, cfg),
        Command::Chain(ChainOp::Clean { graph, chain, k, pivot }) => {
            let g = graph_arg(&graph)?;
            let x: Chain = serde_json::from_str(&read(&chain)?).context("cannot parse chain")?;
            let mode = if pivot { ChainMode::Pivot } else { ChainMode::VertexMinor };
            let (h, y, script) = clean_chain(&g, &x, k, mode)?;
            let text = format!(
                "{}\n{}\n{}",
                to_graph6(&h),
                serde_json::to_string(&y)?,
                script_text(&script)
            );
            Outcome::new(json!({ "graph6": to_graph6(&h), "chain": y, "script": script }), text)
        }
        Command::Ep(EpOp::Parts { graph, components, k, t }) => {
            let g = graph_arg(&graph)?;
            let hs = components.iter().map(|c| graph_arg(c)).collect::<Result<Vec<_>>>()?;
            let (_, d) = exact_rankwidth_with_cap(&g, cfg.iso_cap)?;
            let out = many_robust_parts(&g, &d, &hs, k, t, &cfg.parts())?;
            let text = match &out {
                PartsOutcome::Perturbation { component, witness, .. } => {
                    format!("perturbation of order {} losing component {component}", witness.order)
                }
                PartsOutcome::Parts { vertex_sets, .. } => vertex_sets
                    .iter()
                    .enumerate()
                    .map(|(i, sets)| {
                        let sets: Vec<String> = sets.iter().map(|s| s.to_string()).collect();
                        format!("component {i}: {}", sets.join(" "))
                    })
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            Outcome::new(&out, text)
        }
        Command::Matroid(op) => matroid(op, cfg),
        Command::Circle(op) => match op {
            CircleOp::Check { graph } => {
                let d = circle_diagram(&graph_arg(&graph)?)?;
                let text = d.as_ref().map_or("not a circle graph".to_string(), |d| d.to_string());
                Ok(Outcome::new(json!({ "diagram": d }), text)?.decided(d.is_some()))
            }
            CircleOp::FgVerify { multigraph } => {
                let m = Multigraph::parse(&read(&multigraph)?)?;
                let ok = verify_de_fraysseix(&m)?;
                let d = de_fraysseix_diagram(&m)?;
                let text = d.as_ref().map_or("no chord diagram".to_string(), |d| d.to_string());
                Ok(Outcome::new(json!({ "verified": ok, "diagram": d }), text)?.decided(ok))
            }
        },
        Command::Families(FamiliesOp::Audit { graph }) => {
            let report = closure_audit(&graph_arg(&graph)?)?;
            let text = match report.counterexample {
                None => format!("passed: {} vertices", report.entries.len()),
                Some(v) => format!("failed at vertex {v}"),
            };
            let passed = report.passed();
            Ok(Outcome::new(&report, text)?.decided(passed))
        }
        Command::Suite { seed, only } => {
            let reports = run_all(&SuiteConfig { seed }, &only);
            let text = reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n");
            let passed = reports.iter().all(|r| r.passed);
            Ok(Outcome::new(&reports, text)?.decided(passed))
        }
    }
}

fn contains_outcome(script: Option<vminor_core::OperationScript>) -> Result<Outcome> {
    let text = script.as_ref().map_or("false".to_string(), |s| format!("true\n{}", script_text(s)));
    let found = script.is_some();
    Ok(Outcome::new(json!({ "contains": found, "script": script }), text)?.decided(found))
}

fn perturb(op: PerturbOp, cfg: &RunConfig) -> Result<Outcome> {
    match op {
        PerturbOp::Verify { witness } => {
            let w = PerturbationWitness::from_json(&read(&witness)?)?;
            let check = w.verify();
            Ok(Outcome::new(json!({ "valid": check.is_valid(), "check": check.to_string() }), check.to_string())?
                .decided(check.is_valid()))
        }
        PerturbOp::Cut { graph, vertices } => {
            let g = graph_arg(&graph)?;
            let w = cut_perturbation_witness(&g, vertex_set(&g, &vertices)?)?;
            Outcome::new(&w, w.to_json())
        }
        PerturbOp::Robust { g, h, t } => {
            let (g, h) = (graph_arg(&g)?, graph_arg(&h)?);
            let verdict = certify_robustness_with(&g, &h, t, &cfg.robustness())?;
            let text = match &verdict {
                RobustnessVerdict::Robust => "Robust".to_string(),
                RobustnessVerdict::NotRobust { delta, witness } => {
                    format!("NotRobust\ndelta {delta}\n{}", witness.to_json())
                }
                RobustnessVerdict::Unknown { delta, low, high, .. } => {
                    format!("Unknown\ndelta {delta} of rank in {low}..={high}")
                }
            };
            let robust = verdict == RobustnessVerdict::Robust;
            Ok(Outcome::new(&verdict, text)?.decided(robust))
        }
    }
}

fn matroid(op: MatroidOp, cfg: &RunConfig) -> Result<Outcome> {
    let load = |p: &Path| -> Result<BinaryMatroid> {
        BinaryMatroid::parse(&read(p)?).with_context(|| format!("cannot parse matroid {}", p.display()))
    };
    match op {
        MatroidOp::Fg { matroid, base } => {
            let m = load(&matroid)?;
            let b = if base.is_empty() {
                m.bases().into_iter().next().context("matroid has no base")?
            } else {
                let labels: Vec<&str> = base.iter().map(String::as_str).collect();
                m.element_set(&labels)?
            };
            let f = fundamental_graph(&m, b)?;
            let text = format!("{}\nside_a {}\nside_b {}", to_graph6(&f.graph), f.side_a, f.side_b);
            Outcome::new(json!({ "graph6": to_graph6(&f.graph), "fundamental_graph": f }), text)
        }
        MatroidOp::Dist { a, b, limit } => {
            let (a, b) = (load(&a)?, load(&b)?);
            let path = perturbation_path(&a, &b, limit.unwrap_or(cfg.dist_cap))?;
            let dist = path.as_ref().map(|p| p.len() - 1);
            let text = match &path {
                Some(p) => {
                    let steps: Vec<String> = p.iter().map(|m| m.to_text()).collect();
                    format!("{}\n{}", p.len() - 1, steps.join("\n"))
                }
                None => "beyond the limit".to_string(),
            };
            let texts: Option<Vec<String>> = path.map(|p| p.iter().map(|m| m.to_text()).collect());
            Ok(Outcome::new(json!({ "distance": dist, "path": texts }), text)?.decided(dist.is_some()))
        }
        MatroidOp::Minor { m, n } => {
            let w = matroid_minor_witness(&load(&m)?, &load(&n)?)?;
            let text = match &w {
                Some((d, c)) => format!("true\ndelete {d}\ncontract {c}"),
                None => "false".to_string(),
            };
            let found = w.is_some();
            let w = w.map(|(d, c)| json!({ "delete": d, "contract": c }));
            Ok(Outcome::new(json!({ "contains": found, "witness": w }), text)?.decided(found))
        }
    }
}

fn emit(out: &Outcome, io: &Io) -> Result<()> {
    let mut body = if io.json {
        serde_json::to_string_pretty(&out.json)?
    } else {
        out.text.clone()
    };
    body.push('\n');
    match &io.output {
        Some(p) => fs::write(p, body).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let io = Io {
        json: cli.json,
        output: cli.output.clone(),
    };
    let result = RunConfig::from_env()
        .map_err(anyhow::Error::from)
        .and_then(|cfg| run(cli, &cfg))
        .and_then(|out| emit(&out, &io).map(|_| out.positive));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
