//! Command line front end: twist spaces, real-part tracing, exhaustive
//! lift enumeration, combinatorial patchworking with SVG output, and the
//! self-verification suites.

mod report;
mod svg;

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use twistspace::gf2::Gf2Vector;
use twistspace::graph::{from_json_str, validate, EdgeId, GraphError, GraphInvolution, HalfEdgeGraph};
use twistspace::realpart::{maximal_coset, trace_real_part, RealPartError, DEFAULT_CAP};
use twistspace::tropical::{
    compact_component_count, count_components, parse_poly, patchwork_arcs, TropicalCurve,
    TropicalError,
};
use twistspace::verify::{verify, Scope};
use twistspace::wspace::{direction_basis, w_kernel, w_structural, DirectionBasis};

use report::RunReport;

/// Exit codes: 0 success, 2 validation error, 3 invariant or theorem
/// violation, 4 I/O error.
enum CliError {
    Validation(String),
    Invariant(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Invariant(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Invariant(m) | CliError::Io(m) => m,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<TropicalError> for CliError {
    fn from(e: TropicalError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<RealPartError> for CliError {
    fn from(e: RealPartError) -> Self {
        match e {
            RealPartError::CapExceeded { .. } | RealPartError::Wspace(_) => {
                CliError::Validation(e.to_string())
            }
            other => CliError::Invariant(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "twistspace",
    version,
    about = "Twist spaces of real trivalent graphs and combinatorial patchworking",
    long_about = "Twist spaces of real trivalent graphs, real-part circle counting, and \
combinatorial patchworking of non-singular plane tropical curves.\n\n\
Tropical polynomials use the min-plus convention: the curve is the locus where \
min_{ij}(b_ij + i*x + j*y) is attained twice, and the dual subdivision is the \
lower convex hull of the lifted support points."
)]
struct Cli {
    /// write the JSON report to this file instead of stdout
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// worker threads for parallel enumeration (default: single-threaded)
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the twist space W of a graph by both algorithms
    Wspace {
        /// graph JSON file
        #[arg(long)]
        graph: PathBuf,
    },
    /// Trace the real-part circles of the lift at a twist vector
    Trace {
        /// graph JSON file
        #[arg(long)]
        graph: PathBuf,
        /// comma-separated twist coordinates, e.g. e0,e2
        #[arg(long, default_value = "")]
        twists: String,
    },
    /// Enumerate all lifts and report the coset of maximal ones
    Enumerate {
        /// graph JSON file
        #[arg(long)]
        graph: PathBuf,
        /// refuse direction bases larger than this
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Patchwork a non-singular tropical curve with a twist set
    Patchwork {
        /// tropical polynomial, e.g. "0 + 0*x + 0*y" (min-plus)
        #[arg(long, conflicts_with = "poly_file")]
        poly: Option<String>,
        /// file containing the tropical polynomial
        #[arg(long)]
        poly_file: Option<PathBuf>,
        /// comma-separated twisted bounded edges, e.g. e0,e4
        #[arg(long, default_value = "")]
        twists: String,
        /// write a rendering (curve + quadrant arcs) to this SVG file
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run the self-verification suites
    Verify {
        #[arg(long, value_enum, default_value_t = ScopeArg::All)]
        scope: ScopeArg,
        /// seed for the randomized instances
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ScopeArg {
    Wspace,
    Realpart,
    Tropical,
    All,
}

impl From<ScopeArg> for Scope {
    fn from(s: ScopeArg) -> Scope {
        match s {
            ScopeArg::Wspace => Scope::Wspace,
            ScopeArg::Realpart => Scope::Realpart,
            ScopeArg::Tropical => Scope::Tropical,
            ScopeArg::All => Scope::All,
        }
    }
}

fn read_graph(
    path: &Path,
    report: &mut RunReport,
) -> Result<(HalfEdgeGraph, GraphInvolution), CliError> {
    let bytes = std::fs::read(path)?;
    report.record_input(&path.display().to_string(), &bytes);
    let text = String::from_utf8(bytes)
        .map_err(|e| CliError::Validation(format!("graph file is not UTF-8: {e}")))?;
    let (g, t) = from_json_str(&text)?;
    validate(&g, &t)?;
    Ok((g, t))
}

fn parse_twist_labels(spec: &str, basis: &DirectionBasis) -> Result<Gf2Vector, CliError> {
    let mut v = basis.zero();
    for label in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let i = basis
            .labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| CliError::Validation(format!("unknown twist coordinate {label}")))?;
        v.set(i, true);
    }
    Ok(v)
}

fn basis_json(vectors: &[Gf2Vector]) -> serde_json::Value {
    json!(vectors.iter().map(Gf2Vector::support_labels).collect::<Vec<_>>())
}

fn cmd_wspace(graph: &Path, report: &mut RunReport) -> Result<(), CliError> {
    let (g, t) = read_graph(graph, report)?;
    let basis = direction_basis(&g, &t);
    let wk = w_kernel(&g, &t);
    let ws = w_structural(&g, &t);
    let equal = wk.subspace_equal(&ws).expect("same labels");
    report.set_results(json!({
        "direction_basis": basis.labels.to_vec(),
        "dim_w": wk.dim(),
        "kernel_basis": basis_json(wk.basis()),
        "structural_basis": basis_json(ws.basis()),
        "bases_equal": equal,
    }));
    if !equal {
        return Err(CliError::Invariant(
            "kernel and structural computations of W disagree".to_string(),
        ));
    }
    Ok(())
}

fn cmd_trace(graph: &Path, twists: &str, report: &mut RunReport) -> Result<(), CliError> {
    let (g, t) = read_graph(graph, report)?;
    let basis = direction_basis(&g, &t);
    let twist = parse_twist_labels(twists, &basis)?;
    let r = trace_real_part(&g, &t, &twist)?;
    report.set_results(json!({
        "twists": twist.support_labels(),
        "report": r,
    }));
    Ok(())
}

fn cmd_enumerate(graph: &Path, cap: usize, report: &mut RunReport) -> Result<(), CliError> {
    let (g, t) = read_graph(graph, report)?;
    let basis = direction_basis(&g, &t);
    let k = basis.dim();
    let coset = maximal_coset(&g, &t, cap)?;
    let w = w_kernel(&g, &t);
    let mut results = json!({
        "direction_basis": basis.labels.to_vec(),
        "total_lifts": 1u64 << k,
        "coset_count": 1u64 << (k - w.dim()),
        "dim_w": w.dim(),
        "w_basis": basis_json(w.basis()),
        "maximal_count": 0,
        "maximal_vectors": [],
    });
    if let Some(c) = &coset {
        let vectors: Vec<Vec<String>> = c
            .w
            .elements()
            .iter()
            .map(|e| c.representative.add(e).expect("same labels").support_labels())
            .collect();
        results["maximal_count"] = json!(c.size);
        results["maximal_vectors"] = json!(vectors);
        results["coset_representative"] = json!(c.representative.support_labels());
    }
    report.set_results(results);
    Ok(())
}

fn cmd_patchwork(
    poly: Option<&str>,
    poly_file: Option<&Path>,
    twists: &str,
    svg_out: Option<&Path>,
    report: &mut RunReport,
) -> Result<(), CliError> {
    let text = match (poly, poly_file) {
        (Some(t), None) => t.to_string(),
        (None, Some(path)) => {
            let bytes = std::fs::read(path)?;
            report.record_input(&path.display().to_string(), &bytes);
            String::from_utf8(bytes)
                .map_err(|e| CliError::Validation(format!("polynomial file is not UTF-8: {e}")))?
        }
        _ => {
            return Err(CliError::Validation(
                "exactly one of --poly and --poly-file is required".to_string(),
            ))
        }
    };
    report.record_input("poly", text.trim().as_bytes());
    let curve = TropicalCurve::new(parse_poly(text.trim())?)?;
    let mut twist_set: BTreeSet<EdgeId> = BTreeSet::new();
    for label in twists.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let idx: usize = label
            .strip_prefix('e')
            .and_then(|s| s.parse().ok())
            .filter(|&i| i < curve.edges.len())
            .ok_or_else(|| CliError::Validation(format!("unknown bounded edge {label}")))?;
        twist_set.insert(EdgeId(idx));
    }
    if !curve.is_twist_admissible(&twist_set)? {
        return Err(CliError::Validation(TropicalError::NotTwistAdmissible.to_string()));
    }
    let haas = curve.is_haas_maximal(&twist_set)?;
    let arcs = patchwork_arcs(&curve, &twist_set)?;
    let strands = count_components(&curve, &arcs);
    let compact = compact_component_count(&curve, &arcs);
    if let Some(path) = svg_out {
        std::fs::write(path, svg::render_patchwork(&curve, &twist_set, &arcs))?;
    }
    report.set_results(json!({
        "degree": curve.degree,
        "genus": curve.genus(),
        "cells": curve.subdivision.cells.len(),
        "bounded_edges": curve.edges.len(),
        "rays": curve.rays.len(),
        "twists": twist_set.iter().map(|e| format!("e{}", e.0)).collect::<Vec<_>>(),
        "arcs": arcs.arcs.len(),
        "strand_components": strands,
        "compact_components": compact,
        "haas_maximal": haas,
        "maximal": compact == curve.genus() + 1,
    }));
    Ok(())
}

fn cmd_verify(scope: Scope, seed: u64, report: &mut RunReport) -> Result<(), CliError> {
    let r = verify(scope, seed);
    let passed = r.passed;
    report.set_results(serde_json::to_value(&r).expect("report serializes"));
    if !passed {
        let failed: Vec<&str> = r
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        return Err(CliError::Invariant(format!("checks failed: {}", failed.join(", "))));
    }
    Ok(())
}

fn run(cli: &Cli, report: &mut RunReport) -> Result<(), CliError> {
    match &cli.command {
        Command::Wspace { graph } => cmd_wspace(graph, report),
        Command::Trace { graph, twists } => cmd_trace(graph, twists, report),
        Command::Enumerate { graph, cap } => cmd_enumerate(graph, *cap, report),
        Command::Patchwork { poly, poly_file, twists, svg } => cmd_patchwork(
            poly.as_deref(),
            poly_file.as_deref(),
            twists,
            svg.as_deref(),
            report,
        ),
        Command::Verify { scope, seed } => cmd_verify((*scope).into(), *seed, report),
    }
}

fn main() -> ExitCode {
    let started = Instant::now();
    let cli = Cli::parse();
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.max(1))
        .build_global()
        .expect("the global thread pool is built once");
    let command = match &cli.command {
        Command::Wspace { .. } => "wspace",
        Command::Trace { .. } => "trace",
        Command::Enumerate { .. } => "enumerate",
        Command::Patchwork { .. } => "patchwork",
        Command::Verify { .. } => "verify",
    };
    let mut report = RunReport::new(command);
    let result = run(&cli, &mut report);
    // the report is emitted even on failure so the violation is inspectable
    if let Err(e) = report.emit(cli.json.as_deref(), started) {
        eprintln!("error: {e}");
        return ExitCode::from(4);
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
