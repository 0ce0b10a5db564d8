//! The `nl` command-line front end.
//!
//! Exit codes: 0 success, 1 a checked negative answer (invalid proof,
//! ill-typed input, no proof within budget, fuel exhausted), 2 anything
//! that prevented running (usage, I/O, syntax).

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use nl_core::calculus::{check_proof, CheckMode, Report, Sequent};
use nl_core::proof_file::{self, load_prelude, EMPTY_PRELUDE};
use nl_core::search::{prove_with_stats, SearchBudget};
use nl_core::surface::{elaborate, elaborate_formula, parse_sequent, parse_term, print_term, Prelude, SurfaceError};
use nl_core::term::{normalize, Strategy, Term};
use nl_core::typing::types_of;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    Negative = 1,
    Error = 2,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Parser, Debug)]
#[command(name = "nl", version, about = "Nominalistic Logic kernel: parse, type, reduce, check and prove")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the elaborated kernel term of a file or expression.
    Parse {
        file: Option<PathBuf>,
        #[arg(short = 'e', long = "expr")]
        expr: Option<String>,
        #[arg(long, default_value = EMPTY_PRELUDE)]
        prelude: String,
        #[arg(long)]
        resugar: bool,
    },
    /// Print every type of a term: the structural type, then `i` when nominalizable.
    Type {
        expr: Option<String>,
        #[arg(short = 'e', long = "expr")]
        expr_flag: Option<String>,
        #[arg(long, default_value = EMPTY_PRELUDE)]
        prelude: String,
    },
    /// Print the normal form of a term.
    Reduce {
        expr: Option<String>,
        #[arg(short = 'e', long = "expr")]
        expr_flag: Option<String>,
        #[arg(long, default_value = EMPTY_PRELUDE)]
        prelude: String,
        #[arg(long, value_enum, default_value_t = StrategyArg::Lo)]
        strategy: StrategyArg,
        #[arg(long, default_value_t = 10_000)]
        fuel: u64,
        #[arg(long)]
        resugar: bool,
    },
    /// Check a JSON proof file.
    Check {
        proof: PathBuf,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long, value_enum, default_value_t = ReportArg::Text)]
        report: ReportArg,
    },
    /// Search for a proof of a sequent such as `p |- p`.
    Prove {
        sequent: String,
        #[arg(long, default_value = EMPTY_PRELUDE)]
        prelude: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = 200_000)]
        nodes: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Strict)]
        mode: ModeArg,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Lo,
    Ri,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Strict,
    Paper,
}

impl From<ModeArg> for CheckMode {
    fn from(m: ModeArg) -> CheckMode {
        match m {
            ModeArg::Strict => CheckMode::Strict,
            ModeArg::Paper => CheckMode::PaperBidirectional,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReportArg {
    Text,
    Json,
}

/// Runs `nl` with the process's standard streams.
pub fn main_with_args<I, T>(argv: I) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// Runs `nl` writing results to `out` and diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { ExitStatus::Error } else { ExitStatus::Success };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return status;
        }
    };
    let result = match cli.command {
        Command::Parse { file, expr, prelude, resugar } => cmd_parse(file, expr, &prelude, resugar, out),
        Command::Type { expr, expr_flag, prelude } => {
            source(None, expr.or(expr_flag)).and_then(|src| cmd_type(&src, &prelude, out))
        }
        Command::Reduce { expr, expr_flag, prelude, strategy, fuel, resugar } => source(None, expr.or(expr_flag))
            .and_then(|src| cmd_reduce(&src, &prelude, strategy, fuel, resugar, out)),
        Command::Check { proof, mode, report } => cmd_check(&proof, mode.map(Into::into), report, out),
        Command::Prove { sequent, prelude, depth, nodes, mode, emit } => {
            cmd_prove(&sequent, &prelude, SearchBudget::new(depth, nodes), mode.into(), emit.as_deref(), out)
        }
    };
    match result {
        Ok(status) => status,
        Err(failure) => {
            let _ = writeln!(err, "{}", failure.message);
            failure.status
        }
    }
}

struct Failure {
    status: ExitStatus,
    message: String,
}

impl Failure {
    fn error(message: impl Into<String>) -> Failure {
        Failure { status: ExitStatus::Error, message: message.into() }
    }

    fn negative(message: impl Into<String>) -> Failure {
        Failure { status: ExitStatus::Negative, message: message.into() }
    }

    fn surface(e: &SurfaceError, src: &str) -> Failure {
        let message = format!("error: {}", e.render(src));
        if e.is_type_error() {
            Failure::negative(message)
        } else {
            Failure::error(message)
        }
    }
}

type CmdResult = Result<ExitStatus, Failure>;

fn io_fail(e: std::io::Error) -> Failure {
    Failure::error(format!("error: {e}"))
}

fn source(file: Option<PathBuf>, expr: Option<String>) -> Result<String, Failure> {
    match (file, expr) {
        (Some(_), Some(_)) => Err(Failure::error("error: give either a file or -e <expr>, not both")),
        (None, Some(e)) => Ok(e),
        (Some(path), None) => std::fs::read_to_string(&path)
            .map_err(|e| Failure::error(format!("error: cannot read {}: {e}", path.display()))),
        (None, None) => Err(Failure::error("error: missing input; give an expression or -e <expr>")),
    }
}

fn prelude_arg(name: &str) -> Result<Prelude, Failure> {
    load_prelude(name, Path::new(".")).map_err(|e| Failure::error(format!("error: {e}")))
}

fn elaborate_text(src: &str, prelude: &Prelude) -> Result<Term, Failure> {
    parse_term(src, prelude).and_then(|a| elaborate(&a)).map_err(|e| Failure::surface(&e, src))
}

fn cmd_parse(
    file: Option<PathBuf>,
    expr: Option<String>,
    prelude: &str,
    resugar: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let src = source(file, expr)?;
    let pre = prelude_arg(prelude)?;
    let t = elaborate_text(src.trim_end(), &pre)?;
    writeln!(out, "{}", print_term(&t, resugar)).map_err(io_fail)?;
    Ok(ExitStatus::Success)
}

fn cmd_type(src: &str, prelude: &str, out: &mut dyn Write) -> CmdResult {
    let pre = prelude_arg(prelude)?;
    let t = elaborate_text(src, &pre)?;
    let tys = types_of(&t).map_err(|e| Failure::negative(format!("error: {e}")))?;
    for ty in tys {
        writeln!(out, "{ty}").map_err(io_fail)?;
    }
    Ok(ExitStatus::Success)
}

fn cmd_reduce(
    src: &str,
    prelude: &str,
    strategy: StrategyArg,
    fuel: u64,
    resugar: bool,
    out: &mut dyn Write,
) -> CmdResult {
    if fuel == 0 {
        return Err(Failure::error("error: --fuel must be positive"));
    }
    let pre = prelude_arg(prelude)?;
    let t = elaborate_text(src, &pre)?;
    let strategy = match strategy {
        StrategyArg::Lo => Strategy::LeftmostOutermost,
        StrategyArg::Ri => Strategy::RightmostInnermost,
    };
    let nf = normalize(&t, strategy, fuel).map_err(|e| Failure::negative(format!("error: {e}")))?;
    writeln!(out, "{}", print_term(&nf, resugar)).map_err(io_fail)?;
    Ok(ExitStatus::Success)
}

/// The JSON report, one entry per node in preorder.
#[derive(Serialize)]
pub struct JsonReport {
    pub mode: &'static str,
    pub valid: bool,
    pub nodes: Vec<JsonNode>,
}

#[derive(Serialize)]
pub struct JsonNode {
    pub path: String,
    pub rule: String,
    pub ok: bool,
    pub error: Option<JsonError>,
}

#[derive(Serialize)]
pub struct JsonError {
    pub kind: String,
    pub detail: String,
}

fn path_str(path: &[usize]) -> String {
    std::iter::once("root".to_owned()).chain(path.iter().map(usize::to_string)).collect::<Vec<_>>().join(".")
}

pub fn json_report(report: &Report) -> JsonReport {
    JsonReport {
        mode: report.mode.as_str(),
        valid: report.valid(),
        nodes: report
            .nodes
            .iter()
            .map(|n| JsonNode {
                path: path_str(&n.path),
                rule: n.rule.clone(),
                ok: n.result.is_ok(),
                error: n.result.as_ref().err().map(|e| JsonError { kind: format!("{:?}", e.kind), detail: e.detail.clone() }),
            })
            .collect(),
    }
}

pub fn text_report(report: &Report) -> String {
    let mut s = format!("mode: {}\n", report.mode.as_str());
    for n in &report.nodes {
        match &n.result {
            Ok(()) => s.push_str(&format!("{}  {}  ok\n", path_str(&n.path), n.rule)),
            Err(e) => s.push_str(&format!("{}  {}  FAIL {:?}: {}\n", path_str(&n.path), n.rule, e.kind, e.detail)),
        }
    }
    s.push_str(if report.valid() { "VALID\n" } else { "INVALID\n" });
    s
}

fn cmd_check(path: &Path, mode: Option<CheckMode>, report: ReportArg, out: &mut dyn Write) -> CmdResult {
    let loaded = proof_file::load_proof(path).map_err(|e| {
        let msg = format!("error: {}: {e}", path.display());
        if e.is_type_error() {
            Failure::negative(msg)
        } else {
            Failure::error(msg)
        }
    })?;
    let rep = check_proof(&loaded.root, mode.unwrap_or(loaded.mode));
    let text = match report {
        ReportArg::Text => text_report(&rep),
        ReportArg::Json => {
            serde_json::to_string_pretty(&json_report(&rep)).expect("reports always serialize") + "\n"
        }
    };
    out.write_all(text.as_bytes()).map_err(io_fail)?;
    Ok(if rep.valid() { ExitStatus::Success } else { ExitStatus::Negative })
}

/// The prelude reference to store in a proof file written to `emit`.
fn prelude_ref(prelude: &str, emit: &Path) -> String {
    let p = Path::new(prelude);
    if prelude == EMPTY_PRELUDE && !p.exists() {
        return EMPTY_PRELUDE.to_owned();
    }
    let abs = std::fs::canonicalize(p).unwrap_or_else(|_| p.to_path_buf());
    let dir = emit.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::canonicalize(dir)
        .ok()
        .and_then(|d| pathdiff::diff_paths(&abs, d))
        .unwrap_or(abs)
        .to_string_lossy()
        .into_owned()
}

fn cmd_prove(
    text: &str,
    prelude: &str,
    budget: SearchBudget,
    mode: CheckMode,
    emit: Option<&Path>,
    out: &mut dyn Write,
) -> CmdResult {
    let pre = prelude_arg(prelude)?;
    let surface = parse_sequent(text, &pre).map_err(|e| Failure::surface(&e, text))?;
    let side = |asts: &[nl_core::surface::Ast]| -> Result<Vec<Term>, Failure> {
        asts.iter().map(|a| elaborate_formula(a).map_err(|e| Failure::surface(&e, text))).collect()
    };
    let goal = Sequent::new(side(&surface.left)?, side(&surface.right)?);
    let (proof, stats) = prove_with_stats(&goal, budget, mode);
    let Some(proof) = proof else {
        writeln!(
            out,
            "NOT FOUND within depth {} ({} sequents explored{})",
            budget.depth,
            stats.explored,
            if stats.exhausted { ", node limit reached" } else { "" }
        )
        .map_err(io_fail)?;
        return Ok(ExitStatus::Negative);
    };
    write!(out, "{}", proof.render(true)).map_err(io_fail)?;
    writeln!(out, "PROVED ({} nodes, depth {}, {} sequents explored)", proof.size(), proof.depth(), stats.explored)
        .map_err(io_fail)?;
    if let Some(path) = emit {
        let file = proof_file::to_proof_file(&proof, &prelude_ref(prelude, path), mode);
        std::fs::write(path, proof_file::to_json(&file) + "\n")
            .map_err(|e| Failure::error(format!("error: cannot write {}: {e}", path.display())))?;
    }
    Ok(ExitStatus::Success)
}
