//! Subcommands of the `ameforge` binary.
//!
//! Every command returns a [`CommandOutcome`]; `main` only prints it and
//! exits with its status, so commands can be driven from tests directly.

use std::fs;
use std::path::{Path, PathBuf};

use ameforge_core::ame::{
    all_pass, reduce_ame, state_from_code, verify_uniform_combinatorial, verify_uniform_dense, AmeState,
    BipartitionReport, DENSE_TOLERANCE,
};
use ameforge_core::bounds::{bounds_table, necessary_condition};
use ameforge_core::certificate::{nonexistence_certificate, CertificateStatus};
use ameforge_core::field::is_prime_power;
use ameforge_core::search::{search_systematic_mds, SearchOptions, SearchStatus, DEFAULT_BUDGET};
use ameforge_core::{extended_grs_truncated, Code, Error, FiniteField, Word};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub const BUDGET_ENV: &str = "AMEFORGE_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    VerificationFailed = 1,
    Usage = 2,
    Budget = 3,
}

#[derive(Debug, Clone)]
pub struct CommandOutcome {
    pub status: ExitStatus,
    pub summary: String,
    pub json: Option<Value>,
}

impl CommandOutcome {
    fn new(status: ExitStatus, summary: impl Into<String>, json: Option<Value>) -> Self {
        CommandOutcome {
            status,
            summary: summary.into(),
            json,
        }
    }

    fn usage(summary: impl Into<String>) -> Self {
        Self::new(ExitStatus::Usage, summary, None)
    }

    fn from_error(context: &str, err: &Error) -> Self {
        let status = match err {
            Error::BudgetExceeded(_) => ExitStatus::Budget,
            Error::VerificationFailed(_) | Error::NonUniformSupport => ExitStatus::VerificationFailed,
            _ => ExitStatus::Usage,
        };
        Self::new(status, format!("{context}: {err}"), None)
    }

    pub fn code(&self) -> i32 {
        self.status as i32
    }
}

#[derive(Debug, Parser)]
#[command(name = "ameforge", version, about = "Minimal-support AME states and MDS codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Combinatorial,
    Dense,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a minimal-support AME(n, d) state and verify it.
    Construct {
        n: usize,
        d: u32,
        /// Write the state file here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write a JSON report here (`-` for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Check that every marginal on at most n/2 sites is maximally mixed.
    Verify {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
        /// Shorthand for `--mode both`.
        #[arg(long)]
        both: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Exhaustive search for systematic linear [n, k] MDS codes over GF(q).
    Search {
        q: u32,
        n: usize,
        k: usize,
        /// Maximum number of column extensions.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        all_information_sets: bool,
        #[arg(long)]
        no_pruning: bool,
        /// Fix the first row and column of the parity block to ones.
        #[arg(long)]
        normalize: bool,
        #[arg(long)]
        stop_at_first: bool,
        /// Worker threads (default: available parallelism).
        #[arg(long)]
        workers: Option<usize>,
        /// Produce the signed nonexistence certificate (only for 5 7 3).
        #[arg(long)]
        certificate: bool,
        /// Write every witness, one parity block per line, to this file.
        #[arg(long)]
        witness_file: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print bounds on the largest n admitting a minimal-support AME(n, d).
    Table {
        d_max: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Derive AME(n-1, d) from a verified AME(n, d) state file.
    Reduce {
        input: PathBuf,
        output: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

impl Cli {
    /// True when the JSON report goes to stdout, which then carries nothing else.
    pub fn json_to_stdout(&self) -> bool {
        self.command.json_path().is_some_and(|p| p.as_os_str() == "-")
    }
}

impl Command {
    fn json_path(&self) -> Option<&Path> {
        match self {
            Command::Construct { json, .. }
            | Command::Verify { json, .. }
            | Command::Search { json, .. }
            | Command::Table { json, .. }
            | Command::Reduce { json, .. } => json.as_deref(),
        }
    }
}

/// Runs a parsed command. The JSON report, when requested, is written even
/// for failing outcomes.
pub fn run(cli: &Cli) -> CommandOutcome {
    let mut outcome = match &cli.command {
        Command::Construct { n, d, out, .. } => cmd_construct(*n, *d, out.as_deref()),
        Command::Verify { path, mode, both, .. } => cmd_verify(path, if *both { Mode::Both } else { *mode }),
        Command::Search {
            q,
            n,
            k,
            budget,
            all_information_sets,
            no_pruning,
            normalize,
            stop_at_first,
            workers,
            certificate,
            witness_file,
            ..
        } => match resolve_budget(*budget) {
            Err(o) => o,
            Ok(budget) => {
                let opts = SearchOptions {
                    budget,
                    workers: workers.unwrap_or(0),
                    pruning: !no_pruning,
                    normalize: *normalize,
                    all_information_sets: *all_information_sets,
                    stop_at_first: *stop_at_first,
                    keep_all_witnesses: witness_file.is_some(),
                    ..SearchOptions::default()
                };
                if *certificate {
                    cmd_certificate(*q, *n, *k, &opts)
                } else {
                    cmd_search(*q, *n, *k, &opts, witness_file.as_deref())
                }
            }
        },
        Command::Table { d_max, .. } => cmd_table(*d_max),
        Command::Reduce { input, output, .. } => cmd_reduce(input, output),
    };
    if let (Some(path), Some(value)) = (cli.command.json_path(), &outcome.json) {
        let text = serde_json::to_string_pretty(value).expect("reports serialize") + "\n";
        if let Err(e) = write_output(path, &text) {
            outcome = CommandOutcome::usage(format!("cannot write JSON report: {e}"));
        }
    }
    outcome
}

fn write_output(path: &Path, text: &str) -> std::io::Result<()> {
    if path.as_os_str() == "-" {
        print!("{text}");
        Ok(())
    } else {
        fs::write(path, text)
    }
}

/// `--budget` wins over the environment, which wins over the default.
pub fn resolve_budget(flag: Option<u64>) -> Result<u64, CommandOutcome> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CommandOutcome::usage(format!("{BUDGET_ENV}={v:?} is not a nonnegative integer"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn read_state(path: &Path) -> Result<AmeState, CommandOutcome> {
    let text = fs::read_to_string(path)
        .map_err(|e| CommandOutcome::usage(format!("cannot read {}: {e}", path.display())))?;
    AmeState::from_text(&text).map_err(|e| CommandOutcome::usage(format!("malformed state file {}: {e}", path.display())))
}

fn repetition_code(n: usize, d: u32) -> Code {
    Code::new(n, d, (0..d).map(|s| Word::new(vec![s; n]))).expect("distinct words")
}

pub fn cmd_construct(n: usize, d: u32, out: Option<&Path>) -> CommandOutcome {
    if n < 2 || d < 2 {
        return CommandOutcome::usage(format!("construct needs n >= 2 and d >= 2 (got n={n}, d={d})"));
    }
    let gate = necessary_condition(n, d as usize);
    if !gate.allowed {
        return CommandOutcome::new(
            ExitStatus::Usage,
            format!("AME({n},{d}) of minimal support does not exist: {}", gate.explanation),
            Some(json!({"n": n, "d": d, "constructed": false, "reason": gate.explanation})),
        );
    }
    let code = if n <= 3 {
        repetition_code(n, d)
    } else if d == 5 && n > 6 {
        let reason = format!(
            "AME({n},{d}) of minimal support does not exist by the nonexistence result N(5)=6 \
             (no MDS code of length 7 with 125 words over 5 symbols; see `search 5 7 3 --certificate`), \
             although the necessary condition is satisfied"
        );
        return CommandOutcome::new(
            ExitStatus::Usage,
            reason.clone(),
            Some(json!({"n": n, "d": d, "constructed": false, "reason": reason})),
        );
    } else if is_prime_power(d as u64) && n <= d as usize + 1 {
        let built = FiniteField::new(d as u64)
            .and_then(|f| extended_grs_truncated(&f, n, n / 2))
            .and_then(|c| c.to_code());
        match built {
            Ok(c) => c,
            Err(e) => return CommandOutcome::from_error("construction failed", &e),
        }
    } else {
        let reason = format!(
            "AME({n},{d}) is outside the constructive scope: the extended Reed-Solomon construction \
             needs d to be a prime power with n <= d+1 (existence is open or unknown here)"
        );
        return CommandOutcome::new(
            ExitStatus::Usage,
            reason.clone(),
            Some(json!({"n": n, "d": d, "constructed": false, "reason": reason})),
        );
    };
    let state = match state_from_code(&code) {
        Ok(s) => s,
        Err(e) => return CommandOutcome::from_error("construction failed", &e),
    };
    let reports = match verify_uniform_combinatorial(&state) {
        Ok(r) => r,
        Err(e) => return CommandOutcome::from_error("verification failed", &e),
    };
    let passed = all_pass(&reports);
    if let Some(path) = out {
        if let Err(e) = fs::write(path, state.to_text()) {
            return CommandOutcome::usage(format!("cannot write {}: {e}", path.display()));
        }
    }
    let summary = format!(
        "AME({n},{d}): {} kets, {} bipartitions {}",
        state.support_size(),
        reports.len(),
        if passed { "verified" } else { "FAILED verification" }
    );
    let report = json!({
        "n": n,
        "d": d,
        "constructed": true,
        "support_size": state.support_size(),
        "verified": passed,
        "bipartitions": reports,
    });
    let status = if passed {
        ExitStatus::Success
    } else {
        ExitStatus::VerificationFailed
    };
    CommandOutcome::new(status, summary, Some(report))
}

fn verdicts(reports: &[BipartitionReport]) -> Vec<bool> {
    reports.iter().map(|r| r.pass).collect()
}

pub fn cmd_verify(path: &Path, mode: Mode) -> CommandOutcome {
    let state = match read_state(path) {
        Ok(s) => s,
        Err(o) => return o,
    };
    let combinatorial = match mode {
        Mode::Dense => None,
        _ => Some(verify_uniform_combinatorial(&state)),
    };
    let dense = match mode {
        Mode::Combinatorial => None,
        _ => Some(verify_uniform_dense(&state, DENSE_TOLERANCE)),
    };

    let mut failures = Vec::new();
    let mut json_modes = serde_json::Map::new();
    for (name, result) in [("combinatorial", &combinatorial), ("dense", &dense)] {
        match result {
            None => {}
            Some(Ok(reports)) => {
                if let Some(r) = reports.iter().find(|r| !r.pass) {
                    failures.push(format!("{name}: fails at B={:?} (deviation {:.3e})", r.subset, r.deviation));
                }
                json_modes.insert(name.into(), json!(reports));
            }
            Some(Err(Error::NonUniformSupport)) => {
                failures.push(format!("{name}: amplitudes differ in magnitude, so the state cannot be AME of minimal support"));
                json_modes.insert(name.into(), json!({"error": Error::NonUniformSupport.to_string()}));
            }
            Some(Err(e)) => return CommandOutcome::from_error(name, e),
        }
    }
    let agree = match (&combinatorial, &dense) {
        (Some(Ok(a)), Some(Ok(b))) => Some(verdicts(a) == verdicts(b)),
        _ => None,
    };
    if agree == Some(false) {
        failures.push("combinatorial and dense verdicts disagree".into());
    }
    let passed = failures.is_empty();
    let report = json!({
        "path": path.display().to_string(),
        "n": state.n(),
        "d": state.d(),
        "support_size": state.support_size(),
        "minimal_support": state.is_minimal_support(),
        "tolerance": DENSE_TOLERANCE,
        "reports": json_modes,
        "verdicts_agree": agree,
        "pass": passed,
    });
    let summary = if passed {
        format!(
            "AME({},{}) verified ({} kets, minimal support: {})",
            state.n(),
            state.d(),
            state.support_size(),
            state.is_minimal_support()
        )
    } else {
        format!("not AME: {}", failures.join("; "))
    };
    let status = if passed {
        ExitStatus::Success
    } else {
        ExitStatus::VerificationFailed
    };
    CommandOutcome::new(status, summary, Some(report))
}

fn format_block(block: &[Vec<u32>]) -> String {
    block
        .iter()
        .map(|row| row.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join(" | ")
}

pub fn cmd_search(q: u32, n: usize, k: usize, opts: &SearchOptions, witness_file: Option<&Path>) -> CommandOutcome {
    let report = match search_systematic_mds(q, n, k, opts) {
        Ok(r) => r,
        Err(e) => return CommandOutcome::from_error("search", &e),
    };
    if let (Some(path), Some(all)) = (witness_file, &report.all_witnesses) {
        let text: String = all.iter().map(|b| format_block(b) + "\n").collect();
        if let Err(e) = fs::write(path, text) {
            return CommandOutcome::usage(format!("cannot write {}: {e}", path.display()));
        }
    }
    let mut summary = format!(
        "GF({q}) [{n},{k}]: {} MDS codes found ({} extensions, {} information set(s))",
        report.mds_found, report.candidates_examined, report.information_sets_searched
    );
    let status = match report.status {
        SearchStatus::BudgetExceeded => {
            summary.push_str(&format!("; budget of {} exhausted, result partial", report.budget));
            ExitStatus::Budget
        }
        SearchStatus::StoppedAtFirst => {
            summary.push_str("; stopped at first witness");
            ExitStatus::Success
        }
        SearchStatus::Complete => {
            summary.push_str("; search complete");
            ExitStatus::Success
        }
    };
    if let Some(w) = report.witnesses.first() {
        summary.push_str(&format!("\nfirst witness P = [{}]", format_block(w)));
    }
    let value = serde_json::to_value(&report).expect("report serializes");
    CommandOutcome::new(status, summary, Some(value))
}

pub fn cmd_certificate(q: u32, n: usize, k: usize, opts: &SearchOptions) -> CommandOutcome {
    if (q, n, k) != (5, 7, 3) {
        return CommandOutcome::usage("--certificate applies only to `search 5 7 3`");
    }
    let cert = match nonexistence_certificate(opts.budget, opts.workers) {
        Ok(c) => c,
        Err(e) => return CommandOutcome::from_error("certificate", &e),
    };
    if let Err(e) = cert.validate() {
        return CommandOutcome::from_error("certificate self-check", &e);
    }
    let found: u64 = cert.searches.iter().map(|s| s.mds_found).sum();
    let summary = format!(
        "GF(5) [7,3]: {found} MDS codes found; certificate {}; conclusion: {}; signature {}",
        match cert.status {
            CertificateStatus::Complete => "complete",
            CertificateStatus::Incomplete => "incomplete (budget exhausted)",
        },
        cert.conclusion.as_deref().unwrap_or("none"),
        cert.signature
    );
    let status = match cert.status {
        CertificateStatus::Complete => ExitStatus::Success,
        CertificateStatus::Incomplete => ExitStatus::Budget,
    };
    let value = serde_json::to_value(&cert).expect("certificate serializes");
    CommandOutcome::new(status, summary, Some(value))
}

pub fn cmd_table(d_max: usize) -> CommandOutcome {
    if d_max < 3 {
        return CommandOutcome::usage(format!("table needs d_max >= 3 (got {d_max})"));
    }
    let rows = bounds_table(d_max);
    let mut lines = vec![format!("{:>4} {:>6} {:>6} {:>6}  note", "d", "lower", "upper", "exact")];
    for r in &rows {
        lines.push(format!(
            "{:>4} {:>6} {:>6} {:>6}  {}",
            r.d,
            r.lower,
            r.upper,
            r.exact.map_or("-".to_string(), |e| e.to_string()),
            r.note
        ));
    }
    CommandOutcome::new(ExitStatus::Success, lines.join("\n"), Some(json!(rows)))
}

pub fn cmd_reduce(input: &Path, output: &Path) -> CommandOutcome {
    let state = match read_state(input) {
        Ok(s) => s,
        Err(o) => return o,
    };
    if state.n() < 3 {
        return CommandOutcome::usage(format!(
            "reduction needs at least 3 sites; {} has n={}",
            input.display(),
            state.n()
        ));
    }
    let reduced = match reduce_ame(&state) {
        Ok(s) => s,
        Err(e) => return CommandOutcome::from_error("reduce", &e),
    };
    if let Err(e) = fs::write(output, reduced.to_text()) {
        return CommandOutcome::usage(format!("cannot write {}: {e}", output.display()));
    }
    let rule = if state.n() % 2 == 0 {
        "shortened last site at symbol 0"
    } else {
        "punctured last site"
    };
    let summary = format!(
        "AME({},{}) with {} kets -> AME({},{}) with {} kets ({rule}); verified",
        state.n(),
        state.d(),
        state.support_size(),
        reduced.n(),
        reduced.d(),
        reduced.support_size()
    );
    let report = json!({
        "input": {"n": state.n(), "d": state.d(), "support_size": state.support_size()},
        "output": {"n": reduced.n(), "d": reduced.d(), "support_size": reduced.support_size()},
        "rule": rule,
        "verified": true,
    });
    CommandOutcome::new(ExitStatus::Success, summary, Some(report))
}
