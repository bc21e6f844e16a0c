//! Command-line front end. Every command is a plain function returning the text
//! it would print, so the binary stays a thin wrapper and the commands are
//! testable in-process.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::comb::{self, CombSpec, InvariantValue};
use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::monogamy::{analyze, telescope_check, MonogamyOptions};
use crate::qstate::{PureState, StateFile};
use crate::roof::{roof_tau3, RoofOptions, RoofProblem, RoofResult};
use crate::tangles::{ckw_residue, fmt6, one_tangle, three_tangle_pure, two_tangle, TangleReport};
use crate::verify::{self, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Zero threshold for columns backed by a roof optimisation.
pub const ROOF_ZERO_TOLERANCE: f64 = 1e-5;

#[derive(Debug, Parser)]
#[command(name = "qtangle", version, about = "Tangles, SL(2,C) invariants and convex-roof three-tangles of few-qubit states")]
pub struct Cli {
    /// Base seed of the roof restarts.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of roof restarts.
    #[arg(long, global = true, default_value_t = crate::roof::DEFAULT_RESTARTS)]
    pub restarts: usize,
    /// Exponent of the transform x^beta applied inside roofs.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub beta: f64,
    /// Print serialized reports instead of tables.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the main output to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Input {
    /// State file: {"n_qubits": n, "amplitudes": [[re, im], ...]}.
    #[arg(long, conflicts_with = "family")]
    pub file: Option<PathBuf>,
    /// Named family, e.g. psi_p:p=0.35 or cluster:a=0.5,b=0.5,c=0.5,d=0.5.
    #[arg(long)]
    pub family: Option<String>,
}

impl Input {
    pub fn load(&self) -> Result<PureState> {
        match (&self.file, &self.family) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(path)?;
                Ok(StateFile::parse(&text)?.state)
            }
            (None, Some(spec)) => FamilySpec::from_str(spec)?.build(),
            _ => Err(Error::Parse("exactly one of --file or --family is required".into())),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One-, two- and three-tangles and CKW residues.
    Tangles {
        #[command(flatten)]
        input: Input,
        /// Skip the roof three-tangles of four-qubit states.
        #[arg(long)]
        no_roof: bool,
    },
    /// Polynomial invariants from the registry or a custom comb.
    Invariants {
        #[command(flatten)]
        input: Input,
        /// Registry name (tau3, H, C4_14, C4_13, C4_12, F1, F2, F3).
        #[arg(long, conflicts_with = "comb")]
        name: Option<String>,
        /// Custom comb such as "m22.m22".
        #[arg(long)]
        comb: Option<String>,
        /// Average the custom comb over qubit permutations.
        #[arg(long, requires = "comb")]
        symmetrize: bool,
        #[arg(long, requires = "comb", default_value_t = 1.0)]
        prefactor: f64,
    },
    /// Four-qubit monogamy analysis; with --telescope, the doubling identities of a three-qubit reference.
    Monogamy {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        telescope: bool,
        /// Tolerance of the consistency flag.
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Convex-roof three-tangle of a three-qubit marginal.
    Roof {
        #[command(flatten)]
        input: Input,
        /// Triple of qubits of a four-qubit state, e.g. 234.
        #[arg(long)]
        triple: Option<String>,
        /// Number of pure components (rank..=8).
        #[arg(long)]
        decomposition_size: Option<usize>,
    },
    /// Scan one family parameter and tabulate columns as CSV.
    Sweep {
        #[arg(long)]
        family: String,
        #[arg(long)]
        param: String,
        /// start:stop:steps
        #[arg(long)]
        range: String,
        /// Comma-separated columns: tau1_J, tau2_JK, residue_J, tau3, roof_JKL, tau4_J, mismatch, or a registry name.
        #[arg(long, value_delimiter = ',', required = true)]
        columns: Vec<String>,
        #[arg(long, default_value_t = 1e-9)]
        zero_tol: f64,
    },
    /// Run the regression corpus and print one row per claim.
    VerifyPaper {
        /// Restrict to these criteria.
        #[arg(long, value_delimiter = ',')]
        criterion: Vec<u32>,
    },
}

/// What a command produced: the main text, optional side text shown on stdout
/// when the main text goes to a file, and the exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub summary: Option<String>,
    pub exit_code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, summary: None, exit_code: EXIT_OK }
    }
}

impl Cli {
    fn roof_options(&self) -> RoofOptions {
        RoofOptions::with_seed(self.seed, self.restarts)
    }

    fn monogamy_options(&self) -> MonogamyOptions {
        MonogamyOptions { roof: self.roof_options(), beta: self.beta, ..Default::default() }
    }
}

/// Parses arguments, runs the command, prints, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return EXIT_OK;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments");
            eprintln!("error: kind=usage exit={EXIT_PARSE} {}", first.trim_start_matches("error: "));
            return EXIT_PARSE;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            if let Err(e) = emit(&cli, &out) {
                return report_error(&e);
            }
            out.exit_code
        }
        Err(e) => report_error(&e),
    }
}

fn emit(cli: &Cli, out: &Output) -> Result<()> {
    match &cli.out {
        Some(path) => {
            write_file(path, &out.text)?;
            if let Some(s) = &out.summary {
                print!("{s}");
            }
        }
        None => print!("{}", out.text),
    }
    Ok(())
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)?;
    Ok(())
}

pub fn exit_code_for(e: &Error) -> i32 {
    if e.is_input_error() {
        EXIT_PARSE
    } else {
        EXIT_NUMERICAL
    }
}

/// One line on stderr: `error: kind=<tag> exit=<code> <message>`.
pub fn error_line(e: &Error) -> String {
    let msg = e.to_string().replace('\n', " ");
    format!("error: kind={} exit={} {}", e.kind(), exit_code_for(e), msg)
}

fn report_error(e: &Error) -> i32 {
    eprintln!("{}", error_line(e));
    exit_code_for(e)
}

pub fn execute(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Tangles { input, no_roof } => cmd_tangles(cli, input, *no_roof),
        Command::Invariants { input, name, comb, symmetrize, prefactor } => {
            cmd_invariants(cli, input, name.as_deref(), comb.as_deref(), *symmetrize, *prefactor)
        }
        Command::Monogamy { input, telescope, tolerance } => cmd_monogamy(cli, input, *telescope, *tolerance),
        Command::Roof { input, triple, decomposition_size } => {
            cmd_roof(cli, input, triple.as_deref(), *decomposition_size)
        }
        Command::Sweep { family, param, range, columns, zero_tol } => {
            let spec = SweepSpec::from_args(family, param, range, columns.clone(), *zero_tol, cli.beta)?;
            cmd_sweep(cli, &spec)
        }
        Command::VerifyPaper { criterion } => cmd_verify_paper(cli, criterion),
    }
}

/// Rounds a float to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.11e}", x).parse().unwrap_or(x)
}

fn csv_value(x: f64) -> String {
    let r = round12(x);
    if r != 0.0 && r.abs() < 1e-4 {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

fn round_json(v: &mut Value) {
    match v {
        Value::Number(n) => {
            if n.is_f64() {
                if let Some(x) = n.as_f64() {
                    if let Some(r) = serde_json::Number::from_f64(round12(x)) {
                        *n = r;
                    }
                }
            }
        }
        Value::Array(a) => a.iter_mut().for_each(round_json),
        Value::Object(m) => m.values_mut().for_each(round_json),
        _ => {}
    }
}

/// Pretty JSON with every float rounded to 12 significant digits.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut v = serde_json::to_value(value)?;
    round_json(&mut v);
    Ok(serde_json::to_string_pretty(&v)? + "\n")
}

fn check_beta(beta: f64) -> Result<()> {
    if !(beta > 0.0 && beta <= 4.0) {
        return Err(Error::BadParam(format!("beta = {beta} outside (0, 4]")));
    }
    Ok(())
}

pub fn cmd_tangles(cli: &Cli, input: &Input, no_roof: bool) -> Result<Output> {
    let state = input.load()?;
    let opts = cli.roof_options();
    let report = TangleReport::compute(&state, if no_roof { None } else { Some(&opts) })?;
    Ok(Output::ok(if cli.json { to_json(&report)? } else { report.table() }))
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantRow {
    pub name: String,
    pub re: f64,
    pub im: f64,
    pub modulus: f64,
    pub homogeneity_degree: u32,
    /// `modulus^(4 / degree)`.
    pub normalized: f64,
}

impl InvariantRow {
    fn new(name: &str, v: &InvariantValue) -> Self {
        InvariantRow {
            name: name.to_string(),
            re: v.raw.re,
            im: v.raw.im,
            modulus: v.modulus,
            homogeneity_degree: v.homogeneity_degree,
            normalized: v.normalized(),
        }
    }
}

/// Registry names that apply to a state with `n` qubits.
pub fn applicable_invariants(n: usize) -> Vec<&'static str> {
    match n {
        3 => vec!["tau3"],
        4 => vec!["H", "C4_12", "C4_13", "C4_14", "C4_23", "C4_24", "C4_34", "F1", "F2", "F3"],
        _ => vec![],
    }
}

pub fn invariant_rows(
    state: &PureState,
    name: Option<&str>,
    custom: Option<&CombSpec>,
) -> Result<Vec<InvariantRow>> {
    if let Some(spec) = custom {
        let v = spec.eval(state)?;
        return Ok(vec![InvariantRow::new(&spec.to_string(), &v)]);
    }
    let names = match name {
        Some(n) => vec![n],
        None => applicable_invariants(state.n_qubits()),
    };
    if names.is_empty() {
        return Err(Error::BadArity { expected: 4, got: state.n_qubits() });
    }
    names
        .into_iter()
        .map(|n| comb::evaluate_named(n, state).map(|v| InvariantRow::new(n, &v)))
        .collect()
}

pub fn cmd_invariants(
    cli: &Cli,
    input: &Input,
    name: Option<&str>,
    custom: Option<&str>,
    symmetrize: bool,
    prefactor: f64,
) -> Result<Output> {
    let state = input.load()?;
    let spec = match custom {
        Some(text) => {
            let mut s = CombSpec::parse(text)?.scaled(prefactor);
            if symmetrize {
                s = s.symmetrized();
            }
            Some(s)
        }
        None => None,
    };
    let rows = invariant_rows(&state, name, spec.as_ref())?;
    if cli.json {
        return Ok(Output::ok(to_json(&rows)?));
    }
    let mut t = String::from("name        re            im            modulus       degree  normalized\n");
    for r in &rows {
        let _ = writeln!(
            t,
            "{:<11} {:<13} {:<13} {:<13} {:<7} {}",
            r.name,
            fmt6(r.re),
            fmt6(r.im),
            fmt6(r.modulus),
            r.homogeneity_degree,
            fmt6(r.normalized)
        );
    }
    Ok(Output::ok(t))
}

pub fn cmd_monogamy(cli: &Cli, input: &Input, telescope: bool, tolerance: Option<f64>) -> Result<Output> {
    check_beta(cli.beta)?;
    let state = input.load()?;
    let mut opts = cli.monogamy_options();
    if let Some(t) = tolerance {
        opts.tolerance = t;
    }
    if telescope {
        let check = telescope_check(&state, &opts)?;
        if cli.json {
            return Ok(Output::ok(to_json(&check)?));
        }
        let mut t = String::from("identity                                   lhs          rhs          tol        pass\n");
        for id in &check.identities {
            let _ = writeln!(
                t,
                "{:<42} {:<12} {:<12} {:<10} {}",
                id.name,
                fmt6(id.lhs),
                fmt6(id.rhs),
                fmt6(id.tolerance),
                if id.pass { "yes" } else { "NO" }
            );
        }
        return Ok(Output::ok(t));
    }
    let report = analyze(&state, &opts)?;
    Ok(Output::ok(if cli.json { to_json(&report)? } else { report.table() }))
}

/// Parses a triple such as `"234"` into sorted distinct qubit positions.
pub fn parse_triple(text: &str) -> Result<[usize; 3]> {
    let digits: Vec<usize> = text
        .chars()
        .map(|ch| ch.to_digit(10).map(|d| d as usize))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Parse(format!("triple {text:?} is not three digits")))?;
    if digits.len() != 3 {
        return Err(Error::Parse(format!("triple {text:?} is not three digits")));
    }
    let mut t = [digits[0], digits[1], digits[2]];
    t.sort_unstable();
    if t[0] == t[1] || t[1] == t[2] {
        return Err(Error::BadSubset(format!("repeated qubit in {text:?}")));
    }
    Ok(t)
}

pub fn roof_of(
    state: &PureState,
    triple: Option<&str>,
    beta: f64,
    decomposition_size: Option<usize>,
    opts: &RoofOptions,
) -> Result<RoofResult> {
    let rho = match (state.n_qubits(), triple) {
        (3, None) => state.density_matrix(),
        (_, Some(t)) => state.reduce(&parse_triple(t)?)?,
        (n, None) => return Err(Error::Parse(format!("--triple is required for a {n}-qubit state"))),
    };
    let mut problem = RoofProblem::new(rho, beta)?;
    if let Some(m) = decomposition_size {
        problem = problem.with_decomposition_size(m)?;
    }
    roof_tau3(&problem, opts)
}

pub fn cmd_roof(cli: &Cli, input: &Input, triple: Option<&str>, m: Option<usize>) -> Result<Output> {
    check_beta(cli.beta)?;
    let state = input.load()?;
    let res = roof_of(&state, triple, cli.beta, m, &cli.roof_options())?;
    if cli.json {
        return Ok(Output::ok(to_json(&res)?));
    }
    let mut t = String::new();
    let _ = writeln!(t, "roof value (upper bound)  {}", fmt6(res.value));
    let _ = writeln!(t, "average tau3              {}", fmt6(res.average_tau3));
    let _ = writeln!(t, "transform exponent        {}", fmt6(res.transform_exponent));
    let _ = writeln!(t, "rank                      {}", res.rank);
    let _ = writeln!(t, "restarts (converged)      {} ({})", res.restarts_used, res.converged_restarts);
    let _ = writeln!(t, "reconstruction residual   {}", fmt6(res.reconstruction_residual));
    let _ = writeln!(t, "\nweight       tau3");
    for comp in &res.decomposition {
        let _ = writeln!(t, "{:<12} {}", fmt6(comp.weight), fmt6(comp.tau3));
    }
    Ok(Output::ok(t))
}

/// A one-parameter scan of a family.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub family: FamilySpec,
    pub param: String,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    pub columns: Vec<String>,
    /// Values with modulus at or below this count as zero; roof-backed
    /// columns never go below [`ROOF_ZERO_TOLERANCE`].
    pub zero_tolerance: f64,
    pub beta: f64,
}

impl SweepSpec {
    pub fn new(family: FamilySpec, param: &str, start: f64, stop: f64, steps: usize, columns: &[&str]) -> Self {
        SweepSpec {
            family,
            param: param.to_string(),
            start,
            stop,
            steps,
            columns: columns.iter().map(|s| s.to_string()).collect(),
            zero_tolerance: 1e-9,
            beta: 1.0,
        }
    }

    pub fn from_args(family: &str, param: &str, range: &str, columns: Vec<String>, zero_tol: f64, beta: f64) -> Result<Self> {
        let parts: Vec<&str> = range.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("range {range:?} is not start:stop:steps")));
        }
        let num = |s: &str| s.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad number {s:?}")));
        let steps = parts[2]
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad step count {:?}", parts[2])))?;
        Ok(SweepSpec {
            family: FamilySpec::from_str(family)?,
            param: param.to_string(),
            start: num(parts[0])?,
            stop: num(parts[1])?,
            steps,
            columns,
            zero_tolerance: zero_tol,
            beta,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::BadParam(format!("steps = {} < 2", self.steps)));
        }
        if !self.start.is_finite() || !self.stop.is_finite() || self.start >= self.stop {
            return Err(Error::BadParam(format!("start {} is not below stop {}", self.start, self.stop)));
        }
        if self.columns.is_empty() {
            return Err(Error::BadParam("no columns requested".into()));
        }
        for c in &self.columns {
            Column::parse(c)?;
        }
        check_beta(self.beta)
    }

    pub fn grid(&self) -> Vec<f64> {
        let h = (self.stop - self.start) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| if i + 1 == self.steps { self.stop } else { self.start + h * i as f64 })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Column {
    OneTangle(usize),
    TwoTangle(usize, usize),
    Residue(usize),
    Tau3,
    Roof([usize; 3]),
    Tau4(usize),
    Mismatch,
    Invariant(String),
}

impl Column {
    fn parse(name: &str) -> Result<Self> {
        let digits = |s: &str, n: usize| -> Result<Vec<usize>> {
            let d: Option<Vec<usize>> = s.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect();
            match d {
                Some(d) if d.len() == n && d.iter().all(|&q| q >= 1) => Ok(d),
                _ => Err(Error::Parse(format!("bad column {name:?}"))),
            }
        };
        Ok(if let Some(r) = name.strip_prefix("tau1_") {
            Column::OneTangle(digits(r, 1)?[0])
        } else if let Some(r) = name.strip_prefix("tau2_") {
            let d = digits(r, 2)?;
            Column::TwoTangle(d[0], d[1])
        } else if let Some(r) = name.strip_prefix("residue_") {
            Column::Residue(digits(r, 1)?[0])
        } else if let Some(r) = name.strip_prefix("roof_") {
            Column::Roof(parse_triple(r)?)
        } else if let Some(r) = name.strip_prefix("tau4_") {
            Column::Tau4(digits(r, 1)?[0])
        } else if name == "tau3" {
            Column::Tau3
        } else if name == "mismatch" {
            Column::Mismatch
        } else if comb::REGISTRY.contains(&name) || name.starts_with("C4_") {
            Column::Invariant(name.to_string())
        } else {
            return Err(Error::Parse(format!("unknown column {name:?}")));
        })
    }

    fn roof_backed(&self) -> bool {
        matches!(self, Column::Roof(_) | Column::Tau4(_) | Column::Mismatch)
    }
}

/// A change of class (`negative`, `zero`, `positive`) between adjacent grid points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Transition {
    pub column: String,
    pub lo: f64,
    pub hi: f64,
    pub from: String,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub transitions: Vec<Transition>,
}

impl SweepResult {
    /// Header `param,<columns>` and one row per grid point, 12 significant digits.
    pub fn to_csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&x| csv_value(x)).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    pub fn transitions_table(&self) -> String {
        let mut s = String::from("column          from      to        bracket\n");
        for t in &self.transitions {
            let _ = writeln!(s, "{:<15} {:<9} {:<9} [{}, {}]", t.column, t.from, t.to, fmt6(t.lo), fmt6(t.hi));
        }
        s
    }
}

fn evaluate_columns(state: &PureState, cols: &[Column], beta: f64, opts: &RoofOptions) -> Result<Vec<f64>> {
    let needs_report = cols.iter().any(|c| matches!(c, Column::Tau4(_) | Column::Mismatch));
    let report = if needs_report {
        let mopts = MonogamyOptions { roof: opts.clone(), beta, ..Default::default() };
        Some(analyze(state, &mopts)?)
    } else {
        None
    };
    cols.iter()
        .map(|c| match c {
            Column::OneTangle(j) => one_tangle(state, *j),
            Column::TwoTangle(j, k) => two_tangle(state, *j, *k),
            Column::Residue(j) => ckw_residue(state, *j),
            Column::Tau3 => three_tangle_pure(state),
            Column::Roof(t) => {
                if let Some(r) = &report {
                    let key: String = t.iter().map(|q| q.to_string()).collect();
                    if let Some(v) = r.roofs.get(&key) {
                        return Ok(*v);
                    }
                }
                let problem = RoofProblem::new(state.reduce(t)?, beta)?;
                roof_tau3(&problem, opts).map(|r| r.value)
            }
            Column::Tau4(j) => {
                let r = report.as_ref().expect("report computed");
                r.per_qubit
                    .get(&j.to_string())
                    .map(|q| q.tau4_candidate)
                    .ok_or(Error::BadIndex { index: *j, n_qubits: state.n_qubits() })
            }
            Column::Mismatch => Ok(report.as_ref().expect("report computed").max_mismatch),
            Column::Invariant(name) => comb::evaluate_named(name, state).map(|v| v.normalized()),
        })
        .collect()
}

fn classify(x: f64, zero: f64) -> &'static str {
    if x.abs() <= zero {
        "zero"
    } else if x > 0.0 {
        "positive"
    } else {
        "negative"
    }
}

/// Evaluates every grid point (in parallel, ordered by grid index) and
/// brackets every class change of every column.
pub fn run_sweep(spec: &SweepSpec, opts: &RoofOptions) -> Result<SweepResult> {
    spec.validate()?;
    let cols: Vec<Column> = spec.columns.iter().map(|c| Column::parse(c)).collect::<Result<_>>()?;
    let grid = spec.grid();
    let rows: Vec<Vec<f64>> = grid
        .par_iter()
        .map(|&x| {
            let state = spec.family.clone().with(&spec.param, Complex64::new(x, 0.0)).build()?;
            let mut row = vec![x];
            row.extend(evaluate_columns(&state, &cols, spec.beta, opts)?);
            Ok(row)
        })
        .collect::<Result<_>>()?;
    let mut transitions = Vec::new();
    for (ci, col) in cols.iter().enumerate() {
        let zero = if col.roof_backed() { spec.zero_tolerance.max(ROOF_ZERO_TOLERANCE) } else { spec.zero_tolerance };
        for w in rows.windows(2) {
            let (a, b) = (classify(w[0][ci + 1], zero), classify(w[1][ci + 1], zero));
            if a != b {
                transitions.push(Transition {
                    column: spec.columns[ci].clone(),
                    lo: w[0][0],
                    hi: w[1][0],
                    from: a.to_string(),
                    to: b.to_string(),
                });
            }
        }
    }
    let mut header = vec!["param".to_string()];
    header.extend(spec.columns.iter().cloned());
    Ok(SweepResult { header, rows, transitions })
}

pub fn cmd_sweep(cli: &Cli, spec: &SweepSpec) -> Result<Output> {
    let res = run_sweep(spec, &cli.roof_options())?;
    let text = if cli.json { to_json(&res)? } else { res.to_csv() };
    let summary = Some(if cli.json { to_json(&res.transitions)? } else { res.transitions_table() });
    Ok(Output { text, summary, exit_code: EXIT_OK })
}

pub fn cmd_verify_paper(cli: &Cli, criteria: &[u32]) -> Result<Output> {
    let opts = VerifyOptions { seed: cli.seed, restarts: cli.restarts };
    let ids: Vec<u32> = if criteria.is_empty() { verify::CRITERIA.to_vec() } else { criteria.to_vec() };
    let outcomes = ids.iter().map(|&id| verify::run_criterion(id, &opts)).collect::<Result<Vec<_>>>()?;
    let all_pass = outcomes.iter().all(|o| o.pass());
    let mut text = if cli.json {
        let by_id: BTreeMap<u32, _> = outcomes.iter().map(|o| (o.id, o)).collect();
        to_json(&by_id)?
    } else {
        verify::table(&outcomes)
    };
    if !cli.json {
        let failed = outcomes.iter().filter(|o| !o.pass()).count();
        let _ = writeln!(text, "\n{} of {} criteria passed", outcomes.len() - failed, outcomes.len());
    }
    let summary = Some(outcomes.iter().map(|o| o.summary_line() + "\n").collect());
    Ok(Output { text, summary, exit_code: if all_pass { EXIT_OK } else { EXIT_VERIFY_FAILED } })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Cli {
        let mut v = vec!["qtangle"];
        v.extend_from_slice(args);
        Cli::try_parse_from(v).unwrap()
    }

    #[test]
    fn tangles_psi_p_half() {
        let c = cli(&["--json", "tangles", "--family", "psi_p:p=0.5", "--no-roof"]);
        let out = execute(&c).unwrap();
        let v: Value = serde_json::from_str(&out.text).unwrap();
        assert!((v["one_tangles"]["1"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn input_errors_map_to_exit_2() {
        assert_eq!(main_with_args(["qtangle", "tangles", "--family", "nosuch:p=1"]), EXIT_PARSE);
        assert_eq!(main_with_args(["qtangle", "tangles"]), EXIT_PARSE);
        assert_eq!(main_with_args(["qtangle", "frobnicate"]), EXIT_PARSE);
        assert_eq!(main_with_args(["qtangle", "--beta", "7", "roof", "--family", "ghz:n=3"]), EXIT_PARSE);
    }

    #[test]
    fn error_line_is_single_line() {
        let line = error_line(&Error::Parse("a\nb".into()));
        assert!(!line.contains('\n'));
        assert!(line.starts_with("error: kind=parse exit=2"));
        assert_eq!(exit_code_for(&Error::NoConvergence), EXIT_NUMERICAL);
    }

    #[test]
    fn round12_digits() {
        assert_eq!(round12(0.1234567890123456), 0.123456789012);
        assert_eq!(round12(0.0), 0.0);
    }

    #[test]
    fn sweep_two_steps_two_rows() {
        let spec = SweepSpec::new(FamilySpec::from_str("psi_p").unwrap(), "p", 0.0, 1.0, 2, &["tau1_1"]);
        let res = run_sweep(&spec, &RoofOptions::with_seed(0, 1)).unwrap();
        assert_eq!(res.rows.len(), 2);
        assert!(res.to_csv().starts_with("param,tau1_1\n"));
    }

    #[test]
    fn sweep_validation() {
        let family = FamilySpec::from_str("psi_p").unwrap();
        let opts = RoofOptions::with_seed(0, 1);
        let one = SweepSpec::new(family.clone(), "p", 0.0, 1.0, 1, &["tau1_1"]);
        assert!(matches!(run_sweep(&one, &opts), Err(Error::BadParam(_))));
        let backwards = SweepSpec::new(family.clone(), "p", 1.0, 0.0, 5, &["tau1_1"]);
        assert!(matches!(run_sweep(&backwards, &opts), Err(Error::BadParam(_))));
        let bad = SweepSpec::new(family, "p", 0.0, 1.0, 5, &["nonsense"]);
        assert!(matches!(run_sweep(&bad, &opts), Err(Error::Parse(_))));
    }

    #[test]
    fn triple_parsing() {
        assert_eq!(parse_triple("432").unwrap(), [2, 3, 4]);
        assert!(parse_triple("12").is_err());
        assert!(parse_triple("122").is_err());
        assert!(parse_triple("1a2").is_err());
    }

    #[test]
    fn invariants_by_name_and_comb() {
        let c = cli(&["invariants", "--family", "ghz:n=3", "--name", "tau3"]);
        let out = execute(&c).unwrap();
        assert!(out.text.contains("tau3"));
        let c = cli(&["--json", "invariants", "--family", "ghz:n=3", "--comb", "m22.m22"]);
        let v: Value = serde_json::from_str(&execute(&c).unwrap().text).unwrap();
        assert!((v[0]["modulus"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    }
}
