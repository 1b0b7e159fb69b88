//! Command-line front end: corpus ingestion, batch certification,
//! criterion cross-validation, and machine-readable reporting.
//!
//! Exit codes: 0 success, 1 operational error, 2 internal disagreement
//! between independently computed answers (which would indicate a defect in
//! this tool, and is therefore separated from ordinary input errors).

mod analysis;

use analysis::{analyze, expand_family, Analysis, GraphReport, JobOptions};
use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use edgeflex::dual::{facet_enumeration, write_hrep};
use edgeflex::graphs::{parse_edge_list, Graph};
use edgeflex::intlin::{reduce_type_matrix, ElementaryOp, IntegerMatrix};
use edgeflex::lattice::lattice_points_with_budget;
use edgeflex::polytope::parse_polytope;
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use std::fs;
use std::path::{Path, PathBuf};

const DEFAULT_CYCLE_CAP: usize = 100_000;

#[derive(Parser)]
#[command(
    name = "edgeflex",
    about = "Exact certification of reflexivity and normality for polytopes built from graphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify reflexivity of the carrier polytope of each input graph and
    /// report its facet embedding and dimension bound.
    Certify(RunArgs),
    /// Cross-validate the odd-cycle normality criteria against exact
    /// integer-decomposition checks (connected graphs only).
    Normality(RunArgs),
    /// Expand graph families, fan analyses out over workers, and merge a
    /// summary.
    Batch(BatchArgs),
    /// Reduce a {0,1,2} type matrix to its diagonal form and emit the trace.
    Reduce(ReduceArgs),
    /// Enumerate lattice points of a dilated polytope.
    LatticePoints(LatticePointsArgs),
    /// Enumerate facets of a polytope given by its vertices.
    Facets(FacetsArgs),
}

#[derive(Args, Clone)]
struct RunArgs {
    /// Graph files in edge-list format (first line `n m`, then `u v` lines).
    #[arg(long = "input")]
    inputs: Vec<PathBuf>,
    /// Family specs such as cycle(5), dumbbell(1,2), connected(5).
    #[arg(long = "family")]
    families: Vec<String>,
    /// Override the checked dilation bound for decomposition checks.
    #[arg(long)]
    nmax: Option<usize>,
    /// Cap on enumerated simple cycles per graph.
    #[arg(long, default_value_t = DEFAULT_CYCLE_CAP)]
    cycle_cap: usize,
    /// Cap on enumerated lattice points per check.
    #[arg(long, env = "EDGEFLEX_POINT_BUDGET", default_value_t = edgeflex::lattice::DEFAULT_POINT_BUDGET)]
    point_budget: u64,
    /// Worker threads (defaults to the available cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Seed for sampled families.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output path (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include wall-clock timings (makes output bytes nondeterministic).
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct BatchArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Which analysis to fan out.
    #[arg(long, value_enum, default_value_t = BatchAnalysis::Certify)]
    analysis: BatchAnalysis,
}

#[derive(Args)]
struct ReduceArgs {
    /// Matrix files: first line `rows cols`, then integer rows.
    #[arg(long = "input", required = true)]
    inputs: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct LatticePointsArgs {
    /// Polytope file: first line `m v`, then vertex rows.
    #[arg(long = "input", required = true)]
    input: PathBuf,
    #[arg(long, default_value_t = 1)]
    dilation: u64,
    #[arg(long, env = "EDGEFLEX_POINT_BUDGET", default_value_t = edgeflex::lattice::DEFAULT_POINT_BUDGET)]
    point_budget: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FacetsArgs {
    /// Polytope file: first line `m v`, then vertex rows.
    #[arg(long = "input", required = true)]
    input: PathBuf,
    /// json for structured output, csv for the plain halfspace text format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BatchAnalysis {
    Certify,
    Normality,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Certify(args) => run_graph_analysis(args, Analysis::Certify, "certify"),
        Command::Normality(args) => run_graph_analysis(args, Analysis::Normality, "normality"),
        Command::Batch(args) => {
            let analysis = match args.analysis {
                BatchAnalysis::Certify => Analysis::Certify,
                BatchAnalysis::Normality => Analysis::Normality,
            };
            run_graph_analysis(args.run, analysis, "batch")
        }
        Command::Reduce(args) => run_reduce(args),
        Command::LatticePoints(args) => run_lattice_points(args),
        Command::Facets(args) => run_facets(args),
    }
}

#[derive(Serialize)]
struct Summary {
    total: usize,
    errors: usize,
    disagreements: usize,
    reflexive_true: usize,
    idp_q_true: usize,
    idp_omega_true: usize,
}

#[derive(Serialize)]
struct GraphRunOutput {
    schema: u32,
    command: String,
    items: Vec<GraphReport>,
    summary: Summary,
}

fn run_graph_analysis(args: RunArgs, analysis: Analysis, command: &str) -> Result<i32> {
    let jobs = collect_graphs(&args)?;
    if let Some(threads) = args.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build_global()
            .ok();
    }
    let opts = JobOptions {
        analysis,
        n_max: args.nmax,
        cycle_cap: args.cycle_cap,
        point_budget: args.point_budget,
        timings: args.timings,
    };
    let items: Vec<GraphReport> = jobs
        .par_iter()
        .map(|(id, g)| match g {
            Ok(g) => analyze(id.clone(), g, &opts),
            Err(msg) => GraphReport::from_error(id.clone(), msg.clone()),
        })
        .collect();

    let summary = Summary {
        total: items.len(),
        errors: items.iter().filter(|r| r.error.is_some()).count(),
        disagreements: items.iter().filter(|r| r.disagreement.is_some()).count(),
        reflexive_true: items.iter().filter(|r| r.reflexive == Some(true)).count(),
        idp_q_true: items.iter().filter(|r| r.idp_q == Some(true)).count(),
        idp_omega_true: items.iter().filter(|r| r.idp_omega == Some(true)).count(),
    };
    let code = if summary.disagreements > 0 {
        2
    } else if summary.errors > 0 {
        1
    } else {
        0
    };

    let body = match args.format {
        Format::Json => {
            let out = GraphRunOutput {
                schema: 1,
                command: command.to_string(),
                items,
                summary,
            };
            serde_json::to_string_pretty(&out)? + "\n"
        }
        Format::Csv => reports_to_csv(&items),
    };
    emit(args.out.as_deref(), &body)?;
    Ok(code)
}

/// Reads the corpus. Unreadable or malformed files become per-item errors in
/// the report stream; only invalid family specs abort the invocation.
fn collect_graphs(args: &RunArgs) -> Result<Vec<(String, Result<Graph, String>)>> {
    let mut jobs: Vec<(String, Result<Graph, String>)> = Vec::new();
    for path in &args.inputs {
        let id = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        let item = fs::read_to_string(path)
            .map_err(|e| format!("reading {}: {e}", path.display()))
            .and_then(|text| parse_edge_list(&text).map_err(|e| e.to_string()));
        jobs.push((id, item));
    }
    for spec in &args.families {
        let expanded = expand_family(spec, args.seed).map_err(|e| anyhow!(e))?;
        jobs.extend(expanded.into_iter().map(|(id, g)| (id, Ok(g))));
    }
    Ok(jobs)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

fn reports_to_csv(items: &[GraphReport]) -> String {
    let mut out = String::from(
        "graph_id,n,m,c0,dim,reflexive,reflexive_dimension_bound,facet_count,\
         two_disjoint_odd_cycles,ohsugi_hibi,idp_q,idp_omega,disagreement,error\n",
    );
    for r in items {
        let row = [
            csv_field(&r.graph_id),
            r.n.to_string(),
            r.m.to_string(),
            r.c0.to_string(),
            opt(&r.dim_components),
            opt(&r.reflexive),
            opt(&r.reflexive_dimension_bound),
            opt(&r.facet_count),
            opt(&r.two_disjoint_odd_cycles),
            opt(&r.ohsugi_hibi),
            opt(&r.idp_q),
            opt(&r.idp_omega),
            csv_field(r.disagreement.as_deref().unwrap_or("")),
            csv_field(r.error.as_deref().unwrap_or("")),
        ];
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct TraceOp {
    op: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    i: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    j: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    src: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dst: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    factor: Option<String>,
}

#[derive(Serialize)]
struct ReduceItem {
    input: String,
    dim: usize,
    ones: usize,
    det_abs: String,
    trace_len: usize,
    trace: Vec<TraceOp>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn trace_op_json(op: &ElementaryOp) -> TraceOp {
    let empty = TraceOp {
        op: "",
        i: None,
        j: None,
        src: None,
        dst: None,
        factor: None,
    };
    match op {
        ElementaryOp::SwapRows(i, j) => TraceOp {
            op: "swap_rows",
            i: Some(*i),
            j: Some(*j),
            ..empty
        },
        ElementaryOp::SwapCols(i, j) => TraceOp {
            op: "swap_cols",
            i: Some(*i),
            j: Some(*j),
            ..empty
        },
        ElementaryOp::AddRowMultiple { src, dst, factor } => TraceOp {
            op: "add_row_multiple",
            src: Some(*src),
            dst: Some(*dst),
            factor: Some(factor.to_string()),
            ..empty
        },
        ElementaryOp::AddColMultiple { src, dst, factor } => TraceOp {
            op: "add_col_multiple",
            src: Some(*src),
            dst: Some(*dst),
            factor: Some(factor.to_string()),
            ..empty
        },
        ElementaryOp::NegateRow(i) => TraceOp {
            op: "negate_row",
            i: Some(*i),
            ..empty
        },
        ElementaryOp::NegateCol(j) => TraceOp {
            op: "negate_col",
            j: Some(*j),
            ..empty
        },
    }
}

fn parse_matrix(text: &str) -> Result<IntegerMatrix> {
    let mut rows_data: Vec<Vec<BigInt>> = Vec::new();
    let mut header: Option<(usize, usize)> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if header.is_none() {
            if fields.len() != 2 {
                return Err(anyhow!("line {}: expected `rows cols` header", idx + 1));
            }
            header = Some((fields[0].parse()?, fields[1].parse()?));
            continue;
        }
        let row: Result<Vec<BigInt>> = fields
            .iter()
            .map(|s| {
                s.parse::<BigInt>()
                    .map_err(|_| anyhow!("line {}: invalid integer `{s}`", idx + 1))
            })
            .collect();
        rows_data.push(row?);
    }
    let (r, c) = header.ok_or_else(|| anyhow!("missing matrix header"))?;
    if rows_data.len() != r || rows_data.iter().any(|row| row.len() != c) {
        return Err(anyhow!("matrix body does not match {r}x{c} header"));
    }
    Ok(IntegerMatrix::new(r, c, rows_data.into_iter().flatten().collect())?)
}

fn run_reduce(args: ReduceArgs) -> Result<i32> {
    let mut items = Vec::new();
    let mut had_error = false;
    for path in &args.inputs {
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        let input = path.display().to_string();
        let item = match parse_matrix(&text).and_then(|m| {
            let r = reduce_type_matrix(&m)?;
            let det = m.determinant()?;
            Ok((m.rows(), r, det))
        }) {
            Ok((dim, r, det)) => ReduceItem {
                input,
                dim,
                ones: r.ones(),
                det_abs: det.magnitude().to_string(),
                trace_len: r.trace().len(),
                trace: r.trace().iter().map(trace_op_json).collect(),
                error: None,
            },
            Err(e) => {
                had_error = true;
                ReduceItem {
                    input,
                    dim: 0,
                    ones: 0,
                    det_abs: "0".into(),
                    trace_len: 0,
                    trace: Vec::new(),
                    error: Some(format!("{e:#}")),
                }
            }
        };
        items.push(item);
    }
    let body = match args.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                schema: u32,
                command: &'static str,
                items: Vec<ReduceItem>,
            }
            serde_json::to_string_pretty(&Out {
                schema: 1,
                command: "reduce",
                items,
            })? + "\n"
        }
        Format::Csv => {
            let mut s = String::from("input,dim,ones,det_abs,trace_len,error\n");
            for it in &items {
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    csv_field(&it.input),
                    it.dim,
                    it.ones,
                    it.det_abs,
                    it.trace_len,
                    csv_field(it.error.as_deref().unwrap_or(""))
                ));
            }
            s
        }
    };
    emit(args.out.as_deref(), &body)?;
    Ok(if had_error { 1 } else { 0 })
}

fn run_lattice_points(args: LatticePointsArgs) -> Result<i32> {
    let text = fs::read_to_string(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let p = parse_polytope(&text).map_err(|e| anyhow!("{}: {e}", args.input.display()))?;
    let h = facet_enumeration(&p)?;
    let pts = lattice_points_with_budget(&h, args.dilation, args.point_budget)?;
    let body = match args.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                schema: u32,
                command: &'static str,
                dim: usize,
                dilation: u64,
                count: usize,
                points: Vec<Vec<i64>>,
            }
            serde_json::to_string_pretty(&Out {
                schema: 1,
                command: "lattice-points",
                dim: pts.dim,
                dilation: pts.dilation,
                count: pts.len(),
                points: pts.points,
            })? + "\n"
        }
        Format::Csv => {
            let mut s = String::new();
            for p in &pts.points {
                let row: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                s.push_str(&row.join(","));
                s.push('\n');
            }
            s
        }
    };
    emit(args.out.as_deref(), &body)?;
    Ok(0)
}

fn run_facets(args: FacetsArgs) -> Result<i32> {
    let text = fs::read_to_string(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let p = parse_polytope(&text).map_err(|e| anyhow!("{}: {e}", args.input.display()))?;
    let h = facet_enumeration(&p)?;
    let body = match args.format {
        Format::Json => {
            #[derive(Serialize)]
            struct FacetOut {
                normal: Vec<String>,
                rhs: String,
            }
            #[derive(Serialize)]
            struct Out {
                schema: u32,
                command: &'static str,
                dim: usize,
                facets: Vec<FacetOut>,
            }
            serde_json::to_string_pretty(&Out {
                schema: 1,
                command: "facets",
                dim: h.dim(),
                facets: h
                    .facets()
                    .iter()
                    .map(|f| FacetOut {
                        normal: f.normal.iter().map(|x| x.to_string()).collect(),
                        rhs: f.rhs.to_string(),
                    })
                    .collect(),
            })? + "\n"
        }
        // the plain halfspace text format
        Format::Csv => write_hrep(&h),
    };
    emit(args.out.as_deref(), &body)?;
    Ok(0)
}

fn emit(out: Option<&Path>, body: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, body).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{body}"),
    }
    Ok(())
}
