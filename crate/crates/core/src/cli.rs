//! The `bergman` command line: argument parsing, dispatch and JSON reports.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::bitset::ElementSet;
use crate::cremona::{self, CremonaData, CremonaError};
use crate::fan::{self, FanError, FanKind};
use crate::field::FieldKind;
use crate::generators::{GenError, GeneratorSpec};
use crate::matroid::{Matroid, MatroidError};

pub const SCHEMA: &str = "bergman-report/1";
pub const THREADS_ENV: &str = "BERGMAN_THREADS";

#[derive(Debug, Parser)]
#[command(name = "bergman", version, about = "Matroids, Bergman fans and combinatorial Cremona maps")]
pub struct Cli {
    /// Include wall-clock timing in reports (makes output nondeterministic).
    #[arg(long, global = true)]
    pub timing: bool,
    /// Write the report here instead of stdout.
    #[arg(long, short = 'o', global = true)]
    pub report: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a matroid file.
    Gen {
        /// Generator string such as `E8`, `K5`, `U:2,3`, `fano`, `dowling:Z2xZ2`.
        spec: String,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cremona bases, maps, involutions and realizations.
    Cremona(CremonaArgs),
    /// Rays, ray graphs and the graph S.
    Fan(FanArgs),
}

#[derive(Debug, Args)]
#[group(skip)]
#[command(group(ArgGroup::new("cremona-mode").required(true).multiple(false)))]
pub struct CremonaArgs {
    /// Matroid file, or `gen:<spec>`.
    pub input: String,
    /// List every Cremona basis.
    #[arg(long, group = "cremona-mode")]
    pub enumerate: bool,
    /// Test one basis (comma-separated labels) and print its Crem map.
    #[arg(long, value_name = "BASIS", group = "cremona-mode")]
    pub check: Option<String>,
    /// Structure report and involution for two bases.
    #[arg(long, num_args = 2, value_names = ["B", "B_STAR"], group = "cremona-mode")]
    pub pair: Option<Vec<String>>,
    /// Realize from two bases meeting in one element.
    #[arg(long, num_args = 2, value_names = ["B", "B_STAR"], group = "cremona-mode")]
    pub realize: Option<Vec<String>>,
    /// Field for `--realize`: `Q`, `Qsqrt5`, `Fp:<p>` or `F<p>`.
    #[arg(long, default_value = "Q")]
    pub field: String,
    /// Largest ground set accepted by `--enumerate`.
    #[arg(long, default_value_t = cremona::DEFAULT_BASIS_BUDGET)]
    pub max_elements: usize,
}

#[derive(Debug, Args)]
#[group(skip)]
#[command(group(ArgGroup::new("fan-mode").required(true).multiple(false)))]
pub struct FanArgs {
    /// Matroid file, or `gen:<spec>`.
    pub input: String,
    /// Census of nested rays (proper connected flats).
    #[arg(long, group = "fan-mode")]
    pub rays: bool,
    /// Statistics of the ray adjacency graph.
    #[arg(long, group = "fan-mode")]
    pub graph: bool,
    /// Degree tables and verdict for the graph S.
    #[arg(long, group = "fan-mode")]
    pub s_graph: bool,
    /// With `--s-graph`: only rank-one neighbour counts (no hyperplanes).
    #[arg(long, requires = "s_graph")]
    pub rank_one_only: bool,
    /// Write the ray adjacency graph in DOT format.
    #[arg(long, value_name = "PATH", group = "fan-mode")]
    pub dot: Option<PathBuf>,
    /// Cone census of the fine or nested structure.
    #[arg(long, value_name = "KIND", value_parser = ["fine", "nested"], group = "fan-mode")]
    pub cones: Option<String>,
    /// Largest ground set for which flats of rank >= 3 are enumerated.
    #[arg(long)]
    pub flat_budget: Option<usize>,
    /// Largest number of cones generated by `--cones`.
    #[arg(long, default_value_t = fan::DEFAULT_CONE_BUDGET)]
    pub cone_budget: usize,
}

/// A failure with its process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub kind: &'static str,
    pub message: String,
}

pub const EXIT_INVALID: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;
pub const EXIT_INVARIANT: u8 = 4;

impl CliError {
    fn invalid(message: impl Into<String>) -> Self {
        CliError { code: EXIT_INVALID, kind: "invalid-input", message: message.into() }
    }
    fn budget(message: impl Into<String>) -> Self {
        CliError { code: EXIT_BUDGET, kind: "budget-exceeded", message: message.into() }
    }
    fn invariant(message: impl Into<String>) -> Self {
        CliError { code: EXIT_INVARIANT, kind: "invariant-violation", message: message.into() }
    }
}

impl From<MatroidError> for CliError {
    fn from(e: MatroidError) -> Self {
        match e {
            MatroidError::BudgetExceeded { .. } => CliError::budget(e.to_string()),
            _ => CliError::invalid(e.to_string()),
        }
    }
}

impl From<GenError> for CliError {
    fn from(e: GenError) -> Self {
        match e {
            GenError::Matroid(m) => m.into(),
            _ => CliError::invalid(e.to_string()),
        }
    }
}

impl From<FanError> for CliError {
    fn from(e: FanError) -> Self {
        match e {
            FanError::BudgetExceeded { .. } => CliError::budget(e.to_string()),
            FanError::Matroid(m) => m.into(),
            _ => CliError::invalid(e.to_string()),
        }
    }
}

impl From<CremonaError> for CliError {
    fn from(e: CremonaError) -> Self {
        match e {
            CremonaError::BudgetExceeded { .. } => CliError::budget(e.to_string()),
            CremonaError::InvariantViolation(_) | CremonaError::OneLineNotPreserved | CremonaError::NotUnimodular(_) => {
                CliError::invariant(e.to_string())
            }
            CremonaError::Matroid(m) => m.into(),
            _ => CliError::invalid(e.to_string()),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct InputInfo {
    pub source: String,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct MatroidSummary {
    pub elements: usize,
    pub rank: usize,
    pub connected: bool,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: Vec<String>,
    pub input: InputInfo,
    pub matroid: MatroidSummary,
    pub payload: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Loads a matroid file or builds `gen:<spec>`, hashing the canonical bytes.
pub fn load_input(input: &str) -> Result<(Matroid, InputInfo), CliError> {
    let (m, bytes) = match input.strip_prefix("gen:") {
        Some(spec) => {
            let m = spec.parse::<GeneratorSpec>()?.build()?;
            let text = m.to_json()?;
            (m, text.into_bytes())
        }
        None => {
            let bytes = fs::read(input).map_err(|e| CliError::invalid(format!("cannot read {input}: {e}")))?;
            let text = std::str::from_utf8(&bytes).map_err(|_| CliError::invalid(format!("{input} is not UTF-8")))?;
            (Matroid::from_json(text)?, bytes)
        }
    };
    let sha256 = format!("{:x}", Sha256::digest(&bytes));
    Ok((m, InputInfo { source: input.to_string(), sha256 }))
}

fn summary(m: &Matroid) -> MatroidSummary {
    MatroidSummary { elements: m.size(), rank: m.rank(), connected: m.is_connected_matroid() }
}

fn labels(m: &Matroid, s: ElementSet) -> Vec<String> {
    s.iter().map(|e| m.label(e)).collect()
}

fn parse_basis(m: &Matroid, text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|l| {
            let l = l.trim();
            m.ground().index_of(l).ok_or_else(|| CliError::invalid(format!("unknown element label {l:?}")))
        })
        .collect()
}

fn require_cremona(m: &Matroid, text: &str) -> Result<CremonaData, CliError> {
    let b = parse_basis(m, text)?;
    cremona::cremona_check(m, &b)?.ok_or_else(|| CliError::invalid(format!("{{{text}}} is not a Cremona basis")))
}

fn cremona_json(m: &Matroid, d: &CremonaData) -> Value {
    let parts: BTreeMap<String, Vec<String>> = d
        .parts
        .iter()
        .map(|&((i, j), f)| (format!("{},{}", m.label(d.basis[i]), m.label(d.basis[j])), labels(m, f)))
        .collect();
    json!({
        "basis": d.labels(m),
        "parts": parts,
        "corank_flats": d.corank_flats.iter().map(|&f| labels(m, f)).collect::<Vec<_>>(),
    })
}

fn run_cremona(m: &Matroid, a: &CremonaArgs) -> Result<Value, CliError> {
    if a.enumerate {
        let bases = cremona::enumerate_cremona_bases(m, a.max_elements)?;
        return Ok(json!({
            "count": bases.len(),
            "bases": bases.iter().map(|d| cremona_json(m, d)).collect::<Vec<_>>(),
        }));
    }
    if let Some(text) = &a.check {
        let b = parse_basis(m, text)?;
        return Ok(match cremona::cremona_check(m, &b)? {
            None => json!({ "cremona": false }),
            Some(d) => {
                let map = cremona::crem_map(m, &d)?;
                json!({
                    "cremona": true,
                    "data": cremona_json(m, &d),
                    "crem_map": {
                        "matrix": map.matrix,
                        "one_line_scale": map.one_line_scale(),
                        "quotient_matrix": map.quotient_matrix(),
                        "quotient_det": map.quotient_det()?,
                    },
                })
            }
        });
    }
    if let Some(pair) = &a.pair {
        let d1 = require_cremona(m, &pair[0])?;
        let d2 = require_cremona(m, &pair[1])?;
        let report = cremona::two_basis_report(m, &d1, &d2);
        if !report.holds {
            return Err(CliError::invariant(format!("two-basis structure violated: {}", report.violations.join("; "))));
        }
        let phi = cremona::build_involution(m, &d1, &d2)?;
        let cycles: Vec<Vec<String>> =
            phi.cycles().into_iter().filter(|c| c.len() > 1).map(|c| c.into_iter().map(|e| m.label(e)).collect()).collect();
        return Ok(json!({
            "report": report,
            "involution": {
                "cycles": cycles,
                "images": (0..m.size()).map(|e| (m.label(e), m.label(phi.apply(e)))).collect::<BTreeMap<_, _>>(),
            },
        }));
    }
    if let Some(pair) = &a.realize {
        let field: FieldKind = a.field.parse().map_err(|e| CliError::invalid(format!("{e}")))?;
        let d1 = require_cremona(m, &pair[0])?;
        let d2 = require_cremona(m, &pair[1])?;
        let r = cremona::realize(m, &d1, &d2, field)?;
        let vectors: Vec<Value> =
            (0..m.size()).map(|e| json!({ "element": m.label(e), "vector": r.vectors[e] })).collect();
        return Ok(json!({
            "field": r.field,
            "b0": m.label(r.b0),
            "basis_order": r.basis_order.iter().map(|&e| m.label(e)).collect::<Vec<_>>(),
            "e_plus": labels(m, r.e_plus),
            "e_zero": labels(m, r.e_zero),
            "classes": r.classes.iter().map(|&c| labels(m, c)).collect::<Vec<_>>(),
            "N": r.class_count(),
            "kappa": r.kappa,
            "vectors": vectors,
            "isomorphism_verified": true,
        }));
    }
    Err(CliError::invalid("no cremona mode selected"))
}

fn run_fan(m: &Matroid, a: &FanArgs) -> Result<Value, CliError> {
    if a.rays {
        let rays = fan::nested_rays(m)?;
        let mut by_rank: BTreeMap<usize, usize> = BTreeMap::new();
        for f in &rays {
            *by_rank.entry(f.rank).or_default() += 1;
        }
        return Ok(json!({
            "count": rays.len(),
            "by_rank": by_rank,
            "rays": rays.iter().map(|f| json!({ "rank": f.rank, "elements": labels(m, f.elements) })).collect::<Vec<_>>(),
        }));
    }
    if a.graph {
        let g = fan::ray_adjacency_graph(m)?;
        let stats = g.stats();
        return Ok(json!({
            "stats": stats,
            "petersen": g.is_isomorphic_to(&fan::petersen_graph()),
        }));
    }
    if a.s_graph {
        if a.rank_one_only {
            let table = fan::rank_one_degree_table(m);
            let min = table.values().copied().min();
            let max = table.values().copied().max();
            return Ok(json!({ "rank_one_neighbors": table, "min": min, "max": max }));
        }
        return Ok(serde_json::to_value(fan::graph_s(m)?).expect("report serializes"));
    }
    if let Some(path) = &a.dot {
        let g = fan::ray_adjacency_graph(m)?;
        fs::write(path, g.to_dot(m)).map_err(|e| CliError::invalid(format!("cannot write {}: {e}", path.display())))?;
        return Ok(json!({ "dot": path.display().to_string(), "vertices": g.vertices.len(), "edges": g.edges.len() }));
    }
    if let Some(kind) = &a.cones {
        let kind = if kind == "fine" { FanKind::Fine } else { FanKind::Nested };
        let s = fan::fan_structure(m, kind, a.cone_budget)?;
        let mut by_dim: BTreeMap<usize, usize> = BTreeMap::new();
        for c in &s.cones {
            *by_dim.entry(c.len()).or_default() += 1;
        }
        return Ok(json!({ "kind": s.kind, "rays": s.rays.len(), "cones": s.cones.len(), "by_dimension": by_dim }));
    }
    Err(CliError::invalid("no fan mode selected"))
}

fn write_output(path: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::invalid(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v.parse().map_err(|_| CliError::invalid(format!("{THREADS_ENV} must be a positive integer")))?;
        // a second call in the same process keeps the existing pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

/// Runs a parsed command line. `argv` is echoed into reports.
pub fn run(cli: &Cli, argv: &[String]) -> Result<(), CliError> {
    configure_threads()?;
    let start = Instant::now();
    let (m, input, payload) = match &cli.command {
        Command::Gen { spec, out } => {
            let m = spec.parse::<GeneratorSpec>()?.build()?;
            return write_output(out.as_ref(), &m.to_json()?);
        }
        Command::Cremona(a) => {
            let (m, input) = load_input(&a.input)?;
            let payload = run_cremona(&m, a)?;
            (m, input, payload)
        }
        Command::Fan(a) => {
            let (m, input) = load_input(&a.input)?;
            let m = match a.flat_budget {
                Some(b) => m.with_flat_budget(b),
                None => m,
            };
            let payload = run_fan(&m, a)?;
            (m, input, payload)
        }
    };
    let report = Report {
        schema: SCHEMA,
        command: argv.iter().skip(1).cloned().collect(),
        input,
        matroid: summary(&m),
        payload,
        timing_ms: cli.timing.then(|| start.elapsed().as_secs_f64() * 1000.0),
    };
    write_output(cli.report.as_ref(), &report.to_json())
}

/// Entry point used by the binary.
pub fn main_with_args(argv: Vec<String>) -> ExitCode {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_INVALID) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli, &argv) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", json!({ "error": e.kind, "message": e.message }));
            ExitCode::from(e.code)
        }
    }
}
