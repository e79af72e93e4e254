//! Command implementations behind the `unitquad` binary.
//!
//! Exit codes: 0 on success (or a proper colouring), 1 when a colouring is
//! improper, 2 on any input error.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use unitquad::chi::{chromatic_number, Budget};
use unitquad::construction::{build_coloring_md, ColoringPlan};
use unitquad::field::FieldCtx;
use unitquad::report::{build_report, report_range, REPORT_NODE_BUDGET};
use unitquad::spectral::{
    cayley_spectrum, dense_spectrum, eigen_bound_report, hoffman_bound, Spectrum, SpectrumReport,
    DEFAULT_TOLERANCE,
};
use unitquad::{verify_coloring, Coloring, Error, UnitQuadranceGraph, Verdict};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "unitquad",
    version,
    about = "Unit-quadrance graphs over finite fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the graph in DIMACS .col format.
    Build(Common),
    /// Run the line construction and verify the colouring.
    Color(ColorArgs),
    /// Compute the chromatic number (exact when the budget allows).
    Chi(SearchArgs),
    /// Compute the adjacency spectrum and Hoffman bound.
    Spectrum(SpectrumArgs),
    /// Count triangles and compare with the triangle-free prediction.
    Triangles(Common),
    /// Check a colouring file against the graph it names.
    Verify(VerifyArgs),
    /// Consolidated per-q report.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Field order, an odd prime power.
    #[arg(long)]
    pub q: u64,
    /// Dimension of the space F_q^m.
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long)]
    pub json: bool,
    /// Write the main artifact here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ColorArgs {
    #[command(flatten)]
    pub common: Common,
    /// Slope override (canonical element code).
    #[arg(long)]
    pub a: Option<u32>,
    /// Shift override (canonical element code).
    #[arg(long)]
    pub t: Option<u32>,
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    /// Time limit in seconds.
    #[arg(long)]
    pub timeout: Option<f64>,
    /// Search node limit.
    #[arg(long)]
    pub nodes: Option<u64>,
}

impl BudgetArgs {
    fn budget(&self, base: Budget) -> Budget {
        Budget {
            max_time: self.timeout.map(Duration::from_secs_f64).or(base.max_time),
            max_nodes: self.nodes.or(base.max_nodes),
        }
    }
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MethodArg {
    Dense,
    Cayley,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub common: Common,
    /// Only run one method; both run by default.
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Colouring file (`# q=.. m=.. k=..` header, then `index color` lines).
    pub file: PathBuf,
    /// Require the file to describe this field order.
    #[arg(long)]
    pub q: Option<u64>,
    /// Require the file to describe this dimension.
    #[arg(long)]
    pub m: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// A single order (`7`) or an inclusive range (`5..13`).
    #[arg(long)]
    pub q: String,
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if let Error::Io(e) = e {
            return e.into();
        }
        Failure {
            code: EXIT_INPUT,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        // a closed downstream pipe (`| head`) is not an error
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure {
                code: EXIT_OK,
                message: String::new(),
            };
        }
        Failure {
            code: EXIT_INPUT,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

type CmdResult = Result<u8, Failure>;

/// Runs a parsed command, writing normal output to `out` and diagnostics to
/// `err`. Returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let result = match cli.command {
        Command::Build(args) => cmd_build(&args, out),
        Command::Color(args) => cmd_color(&args, out),
        Command::Chi(args) => cmd_chi(&args, out),
        Command::Spectrum(args) => cmd_spectrum(&args, out),
        Command::Triangles(args) => cmd_triangles(&args, out),
        Command::Verify(args) => cmd_verify(&args, out),
        Command::Report(args) => cmd_report(&args, out, err),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            if !f.message.is_empty() {
                let _ = writeln!(err, "error: {}", f.message);
            }
            f.code
        }
    }
}

fn field_and_graph(q: u64, m: usize) -> Result<(FieldCtx, UnitQuadranceGraph), Failure> {
    let ctx = FieldCtx::from_order(q)?;
    let graph = UnitQuadranceGraph::build(&ctx, m)?;
    Ok((ctx, graph))
}

/// Sends `write` either to the `--out` file or to stdout.
fn emit(
    path: Option<&Path>,
    out: &mut dyn Write,
    write: impl FnOnce(&mut dyn Write) -> unitquad::Result<()>,
) -> Result<(), Failure> {
    match path {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            write(&mut file)?;
            file.flush()?;
        }
        None => write(out)?,
    }
    Ok(())
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

pub fn cmd_build(args: &Common, out: &mut dyn Write) -> CmdResult {
    let (_, graph) = field_and_graph(args.q, args.m)?;
    emit(args.out.as_deref(), out, |w| graph.export_dimacs(w))?;
    Ok(EXIT_OK)
}

pub fn cmd_color(args: &ColorArgs, out: &mut dyn Write) -> CmdResult {
    let c = &args.common;
    let (ctx, graph) = field_and_graph(c.q, c.m)?;
    let a = args.a.map(|v| ctx.element(v as u64)).transpose()?;
    let t = args.t.map(|v| ctx.element(v as u64)).transpose()?;
    let plan = ColoringPlan::with_overrides(&ctx, a, t)?;
    let coloring = build_coloring_md(&ctx, c.m, &plan)?;
    let verdict = verify_coloring(&graph, &coloring)?;
    if let Some(path) = &c.out {
        emit(Some(path), out, |w| coloring.write(w, c.q, c.m))?;
    }
    let proper = verdict.is_proper();
    if c.json {
        let summary = serde_json::json!({
            "q": c.q,
            "m": c.m,
            "a": plan.slope().code(),
            "t": plan.shift().code(),
            "k": coloring.num_colors(),
            "proper": proper,
        });
        writeln!(out, "{}", to_json(&summary))?;
    } else {
        writeln!(
            out,
            "q={} m={} a={} t={} k={} {}",
            c.q,
            c.m,
            plan.slope(),
            plan.shift(),
            coloring.num_colors(),
            if proper { "proper" } else { "IMPROPER" }
        )?;
    }
    Ok(if proper { EXIT_OK } else { EXIT_NEGATIVE })
}

pub fn cmd_chi(args: &SearchArgs, out: &mut dyn Write) -> CmdResult {
    let c = &args.common;
    let (_, graph) = field_and_graph(c.q, c.m)?;
    let result = chromatic_number(&graph, args.budget.budget(Budget::default()));
    if let Some(path) = &c.out {
        emit(Some(path), out, |w| result.witness.write(w, c.q, c.m))?;
    }
    writeln!(out, "{}", to_json(&result.record(c.q, c.m)))?;
    Ok(EXIT_OK)
}

pub fn cmd_spectrum(args: &SpectrumArgs, out: &mut dyn Write) -> CmdResult {
    let c = &args.common;
    let (ctx, graph) = field_and_graph(c.q, c.m)?;
    let mut spectra: Vec<Spectrum> = Vec::new();
    if !matches!(args.method, Some(MethodArg::Dense)) {
        spectra.push(cayley_spectrum(&ctx, c.m)?);
    }
    if !matches!(args.method, Some(MethodArg::Cayley)) {
        spectra.push(dense_spectrum(&graph, DEFAULT_TOLERANCE)?);
    }
    if let Some(path) = &c.out {
        emit(Some(path), out, |w| spectra[0].write_text(w))?;
    }
    let reports: Vec<SpectrumReport> = spectra
        .iter()
        .map(|s| SpectrumReport::new(s, c.q, c.m))
        .collect();
    if c.json {
        writeln!(out, "{}", to_json(&reports))?;
        return Ok(EXIT_OK);
    }
    for s in &spectra {
        let diag = eigen_bound_report(s, c.q);
        let hoffman = hoffman_bound(s)
            .map(|h| format!("{h:.6} (chi >= {})", (h - 1e-9).ceil()))
            .unwrap_or_else(|e| e.to_string());
        writeln!(
            out,
            "{}: lambda1={:.6} lambdaMin={:.6} hoffman={}",
            s.method(),
            s.lambda1(),
            s.lambda_min(),
            hoffman
        )?;
        if c.m == 2 {
            writeln!(
                out,
                "  max |lambda| over non-principal = {:.6}; <= sqrt(q): {}; <= 2 sqrt(q): {}",
                diag.max_nonprincipal_abs, diag.within_sqrt_q, diag.within_two_sqrt_q
            )?;
        }
    }
    if let [a, b] = &spectra[..] {
        let dev = a.max_deviation(b).unwrap_or(f64::INFINITY);
        writeln!(out, "max deviation between methods: {dev:.3e}")?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_triangles(args: &Common, out: &mut dyn Write) -> CmdResult {
    let (_, graph) = field_and_graph(args.q, args.m)?;
    let count = graph.triangle_count();
    let predicted = if args.m == 2 {
        unitquad::graph::triangle_free_predicted(args.q)
    } else {
        unitquad::graph::TrianglePrediction::Unknown
    };
    if args.json {
        let summary = serde_json::json!({
            "q": args.q,
            "m": args.m,
            "triangles": count,
            "triangleFreePredicted": predicted,
        });
        writeln!(out, "{}", to_json(&summary))?;
    } else {
        writeln!(
            out,
            "q={} m={} triangles={} triangle-free predicted: {:?}",
            args.q, args.m, count, predicted
        )?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let file = File::open(&args.file)?;
    let (header, coloring) = Coloring::read(BufReader::new(file))?;
    if args.q.is_some_and(|q| q != header.q) || args.m.is_some_and(|m| m != header.m) {
        return Err(input_error(format!(
            "file describes q={} m={}, which does not match the flags",
            header.q, header.m
        )));
    }
    let (_, graph) = field_and_graph(header.q, header.m)?;
    match verify_coloring(&graph, &coloring)? {
        Verdict::Proper => {
            writeln!(out, "proper: {} colors", coloring.num_colors())?;
            Ok(EXIT_OK)
        }
        Verdict::Violation { u, v } => {
            let (pu, pv) = (graph.point(u), graph.point(v));
            let fmt = |p: &unitquad::Point| {
                p.coords
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            writeln!(
                out,
                "violation: vertices {u} ({}) and {v} ({}) share color {}",
                fmt(&pu),
                fmt(&pv),
                coloring.color(u)
            )?;
            Ok(EXIT_NEGATIVE)
        }
    }
}

/// Parses `7` or `5..13` (inclusive).
pub fn parse_q_range(spec: &str) -> Result<(u64, u64), Failure> {
    let parse = |s: &str| {
        s.trim()
            .parse::<u64>()
            .map_err(|_| input_error(format!("invalid q `{spec}`")))
    };
    match spec.split_once("..") {
        Some((lo, hi)) => {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            let (lo, hi) = (parse(lo)?, parse(hi)?);
            if lo > hi {
                return Err(input_error(format!("empty range `{spec}`")));
            }
            Ok((lo, hi))
        }
        None => {
            let q = parse(spec)?;
            Ok((q, q))
        }
    }
}

pub fn cmd_report(args: &ReportArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let (lo, hi) = parse_q_range(&args.q)?;
    let budget = args.budget.budget(Budget::nodes(REPORT_NODE_BUDGET));
    let records = if lo == hi {
        vec![build_report(lo, args.m, budget)?]
    } else {
        let (records, skipped) = report_range(lo, hi, args.m, budget);
        for s in skipped {
            writeln!(err, "warning: {s}")?;
        }
        records
    };
    let render = |w: &mut dyn Write| -> unitquad::Result<()> {
        if args.json {
            writeln!(w, "{}", to_json(&records))?;
        } else {
            for r in &records {
                write!(w, "{}", r.to_text())?;
            }
        }
        Ok(())
    };
    emit(args.out.as_deref(), out, render)?;
    Ok(EXIT_OK)
}
