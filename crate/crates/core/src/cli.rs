//! `subtrop` command-line front end.
//!
//! Exit codes: 0 sat/ok, 1 unsat, 2 usage or parse error, 3 oracle
//! disagreement, 4 witness failure.

use std::fmt::Write as _;
use std::num::NonZeroU64;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::value::RawValue;

use crate::condition::{build_cnf, build_dnf_single, LinearCondition};
use crate::decide::{decide_condition, DecideOptions, Decision, UnsatReason};
use crate::lra::{solve_conjunction, ConjunctionSystem, Feasibility};
use crate::oracle::{exhaustive_decide, Verdict};
use crate::parser::{parse_bindings, parse_system};
use crate::system::{declared_names, ExponentSolution, Sign};
use crate::witness::{
    evaluate_t, random_bindings, symbolic_t, uniform_bound, verify_witness_limited, SymbolicWitness, WitnessError,
};
use crate::{Rational, RationalReport, System};

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNSAT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DISAGREEMENT: i32 = 3;
pub const EXIT_WITNESS_FAILURE: i32 = 4;

/// Instantiations sampled by `--check` on `witness` and `verify`.
const CHECK_SAMPLES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Report SAT with an integer exponent vector, or UNSAT.
    Decide,
    /// Print the symbolic witness t and z(c) = t^n.
    Witness,
    /// Evaluate the witness exactly on concrete coefficients.
    Verify,
    /// Print the linear condition with its provenance.
    Explain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "subtrop", version, about = "Parametric positive solutions of signed polynomial inequalities")]
pub struct CliConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// System file (.spp)
    pub input: PathBuf,
    /// Coefficient values (`name = p[/q]` lines) for verify
    #[arg(long)]
    pub coeffs: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Cross-check against the brute-force oracle
    #[arg(long)]
    pub check: bool,
    /// Seed for sampled instantiations under --check
    #[arg(long)]
    pub seed: Option<u64>,
    /// Abort when an exact value would exceed this many bits
    #[arg(long)]
    pub max_bits: Option<NonZeroU64>,
    /// Use r = 1 + v·Σ(negative coefficients) instead of r = t
    #[arg(long)]
    pub use_uniform_bound: bool,
    /// Move the exponent vector toward the origin
    #[arg(long)]
    pub shrink: bool,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn new(code: i32, stdout: String) -> Self {
        Outcome { code, stdout, stderr: String::new() }
    }

    fn error(code: i32, message: impl std::fmt::Display) -> Self {
        Outcome { code, stdout: String::new(), stderr: format!("error: {message}\n") }
    }

    fn with_stderr(mut self, message: impl std::fmt::Display) -> Self {
        let _ = writeln!(self.stderr, "{message}");
        self
    }
}

/// Reads the files named in `cfg` and runs the command.
pub fn run(cfg: &CliConfig) -> Outcome {
    let source = match std::fs::read_to_string(&cfg.input) {
        Ok(s) => s,
        Err(e) => return Outcome::error(EXIT_USAGE, format!("{}: {e}", cfg.input.display())),
    };
    let coeffs = match &cfg.coeffs {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(s) => Some(s),
            Err(e) => return Outcome::error(EXIT_USAGE, format!("{}: {e}", path.display())),
        },
        None => None,
    };
    run_sources(cfg, &source, coeffs.as_deref())
}

/// Runs the command on in-memory sources; `cfg.input` and `cfg.coeffs` are ignored.
pub fn run_sources(cfg: &CliConfig, source: &str, coeffs: Option<&str>) -> Outcome {
    let sys = match parse_system(source) {
        Ok(sys) => sys,
        Err(e) => return Outcome::error(EXIT_USAGE, format!("{}:{e}", cfg.input.display())),
    };
    match cfg.command {
        Command::Decide => cmd_decide(cfg, &sys),
        Command::Witness => cmd_witness(cfg, &sys),
        Command::Verify => cmd_verify(cfg, &sys, coeffs),
        Command::Explain => cmd_explain(cfg, &sys),
    }
}

fn json_int(value: &BigInt) -> Box<RawValue> {
    RawValue::from_string(value.to_string()).expect("integer literal is valid JSON")
}

fn json_ints(values: &ExponentSolution) -> Vec<Box<RawValue>> {
    values.values.iter().map(json_int).collect()
}

fn to_json<S: Serialize>(value: &S) -> String {
    let mut s = serde_json::to_string(value).expect("report serializes");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct StatusJson {
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<Vec<Box<RawValue>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    row: Option<usize>,
}

/// Decision report shared by every command that needs a decision.
fn render_decision(cfg: &CliConfig, sys: &System, decision: &Decision) -> String {
    match cfg.format {
        Format::Json => to_json(&match decision {
            Decision::Sat { n, .. } => StatusJson { status: "sat", n: Some(json_ints(n)), reason: None, row: None },
            Decision::Unsat(UnsatReason::NoModel) => StatusJson { status: "unsat", n: None, reason: None, row: None },
            Decision::Unsat(UnsatReason::ZeroRow(i)) => {
                StatusJson { status: "unsat", n: None, reason: Some("zero-row"), row: Some(i + 1) }
            }
        }),
        Format::Text => match decision {
            Decision::Sat { n, .. } => format!("sat\nn = {n}\n"),
            Decision::Unsat(UnsatReason::NoModel) => "unsat\n".to_string(),
            Decision::Unsat(UnsatReason::ZeroRow(i)) => {
                format!("unsat (zero-row: polynomial {} is identically zero)\n", sys.poly_names()[*i])
            }
        },
    }
}

fn unsat_message(decision: &Decision) -> &'static str {
    match decision {
        Decision::Unsat(UnsatReason::ZeroRow(_)) => "no parametric positive solution: identically zero polynomial",
        _ => "no parametric positive solution",
    }
}

/// Cross-checks a decision against the oracle (with `--check`) and, for a
/// single polynomial, against its disjunctive form.
fn cross_check(cfg: &CliConfig, sys: &System, cond: &LinearCondition, sat: bool) -> Result<(), Outcome> {
    if cfg.check {
        let verdict = exhaustive_decide(cond).map_err(|e| Outcome::error(EXIT_USAGE, e))?;
        if (verdict == Verdict::Sat) != sat {
            return Err(Outcome::error(
                EXIT_DISAGREEMENT,
                format!("oracle disagrees: solver says {}, oracle says {verdict:?}", if sat { "sat" } else { "unsat" }),
            ));
        }
    }
    if sys.num_polys() == 1 {
        let branches = build_dnf_single(sys).expect("single row");
        let dnf_sat = branches.iter().any(|b| {
            let rows = b.constraints.iter().map(|l| l.coeffs.clone()).collect();
            matches!(
                solve_conjunction::<Rational>(&ConjunctionSystem::with_rows(sys.num_vars(), rows)),
                Feasibility::Feasible(_)
            )
        });
        if dnf_sat != sat {
            return Err(Outcome::error(EXIT_DISAGREEMENT, "single-inequality branches disagree with the clause form"));
        }
    }
    Ok(())
}

fn decide_checked(cfg: &CliConfig, sys: &System) -> Result<Decision, Outcome> {
    let cond = build_cnf(sys);
    let decision = decide_condition(sys, &cond, DecideOptions { shrink: cfg.shrink });
    let condition_sat = match &decision {
        Decision::Sat { .. } => true,
        Decision::Unsat(UnsatReason::NoModel) => false,
        Decision::Unsat(UnsatReason::ZeroRow(_)) => crate::lra::solve_cnf::<Rational>(&cond).is_sat(),
    };
    cross_check(cfg, sys, &cond, condition_sat)?;
    Ok(decision)
}

fn cmd_decide(cfg: &CliConfig, sys: &System) -> Outcome {
    let decision = match decide_checked(cfg, sys) {
        Ok(d) => d,
        Err(out) => return out,
    };
    let code = if decision.is_sat() { EXIT_OK } else { EXIT_UNSAT };
    Outcome::new(code, render_decision(cfg, sys, &decision))
}

#[derive(Serialize)]
struct TJson {
    one: u8,
    terms: Vec<[String; 2]>,
}

#[derive(Serialize)]
struct WitnessJson {
    t: TJson,
    n: Vec<Box<RawValue>>,
}

fn render_witness(cfg: &CliConfig, witness: &SymbolicWitness) -> String {
    match cfg.format {
        Format::Json => to_json(&WitnessJson {
            t: TJson {
                one: 1,
                terms: witness.terms.iter().map(|t| [t.numerator.clone(), t.denominator.clone()]).collect(),
            },
            n: json_ints(&witness.n),
        }),
        Format::Text => format!("{witness}\n"),
    }
}

fn witness_failure(e: WitnessError) -> Outcome {
    match e {
        WitnessError::WitnessFailure { .. } => Outcome::error(EXIT_WITNESS_FAILURE, e),
        other => Outcome::error(EXIT_USAGE, other),
    }
}

/// Verifies `n` on sampled positive instantiations of `sys`.
fn sampled_check(cfg: &CliConfig, sys: &System, n: &ExponentSolution) -> Result<(), Outcome> {
    let parametric = sys.parametric_skeleton_if_concrete();
    let names = parametric.coefficient_names();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.unwrap_or(0));
    let witness = symbolic_t(&parametric, n).map_err(witness_failure)?;
    for _ in 0..CHECK_SAMPLES {
        let bindings = random_bindings(&names, &mut rng);
        let concrete = parametric.instantiate(&bindings).map_err(|e| Outcome::error(EXIT_USAGE, e))?;
        let t = evaluate_t(&witness, &bindings).map_err(witness_failure)?;
        verify_witness_limited(&concrete, n, &t, cfg.max_bits.map(NonZeroU64::get)).map_err(witness_failure)?;
    }
    Ok(())
}

fn cmd_witness(cfg: &CliConfig, sys: &System) -> Outcome {
    let decision = match decide_checked(cfg, sys) {
        Ok(d) => d,
        Err(out) => return out,
    };
    let Decision::Sat { n, .. } = &decision else {
        return Outcome::new(EXIT_UNSAT, render_decision(cfg, sys, &decision)).with_stderr(unsat_message(&decision));
    };
    let witness = match symbolic_t(sys, n) {
        Ok(w) => w,
        Err(e) => return witness_failure(e),
    };
    if cfg.check {
        if let Err(out) = sampled_check(cfg, sys, n) {
            return out;
        }
    }
    Outcome::new(EXIT_OK, render_witness(cfg, &witness))
}

#[derive(Serialize)]
struct VerifyJson {
    status: &'static str,
    t: String,
    r: String,
    n: Vec<Box<RawValue>>,
    point: Vec<String>,
    values: Vec<String>,
    ok: bool,
}

fn render_report(cfg: &CliConfig, n: &ExponentSolution, report: &RationalReport) -> String {
    let strings = |v: &[Rational]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
    match cfg.format {
        Format::Json => to_json(&VerifyJson {
            status: if report.ok { "ok" } else { "fail" },
            t: report.t_value.to_string(),
            r: report.r_value.to_string(),
            n: json_ints(n),
            point: strings(&report.point),
            values: strings(&report.values),
            ok: report.ok,
        }),
        Format::Text => {
            let list = |v: &[Rational]| format!("({})", strings(v).join(", "));
            format!(
                "t = {}\nr = {}\nn = {n}\npoint = {}\nvalues = {}\n{}\n",
                report.t_value,
                report.r_value,
                list(&report.point),
                list(&report.values),
                if report.ok { "ok" } else { "fail" }
            )
        }
    }
}

fn cmd_verify(cfg: &CliConfig, sys: &System, coeffs: Option<&str>) -> Outcome {
    let concrete = if sys.is_parametric() {
        let Some(text) = coeffs else {
            return Outcome::error(EXIT_USAGE, "verify needs --coeffs for a parametric system");
        };
        let bindings = match parse_bindings(text) {
            Ok(b) => b,
            Err(e) => return Outcome::error(EXIT_USAGE, format!("coefficient file: {e}")),
        };
        let declared = declared_names(sys.coefficients());
        if let Some(extra) = bindings.keys().find(|k| !declared.contains(*k)) {
            return Outcome::error(EXIT_USAGE, format!("coefficient file names unknown coefficient `{extra}`"));
        }
        match sys.instantiate(&bindings) {
            Ok(c) => c,
            Err(e) => return Outcome::error(EXIT_USAGE, e),
        }
    } else {
        if coeffs.is_some() {
            return Outcome::error(EXIT_USAGE, "--coeffs given but the system already has concrete coefficients");
        }
        sys.clone()
    };

    let decision = match decide_checked(cfg, &concrete) {
        Ok(d) => d,
        Err(out) => return out,
    };
    let Decision::Sat { n, .. } = &decision else {
        return Outcome::new(EXIT_UNSAT, render_decision(cfg, &concrete, &decision))
            .with_stderr(unsat_message(&decision));
    };
    let witness = match symbolic_t(&concrete, n) {
        Ok(w) => w,
        Err(e) => return witness_failure(e),
    };
    let r = if cfg.use_uniform_bound {
        match uniform_bound(&concrete) {
            Ok(r) => r,
            Err(e) => return Outcome::error(EXIT_USAGE, e),
        }
    } else {
        let bindings = concrete.bindings().expect("concrete system");
        match evaluate_t(&witness, &bindings) {
            Ok(t) => t,
            Err(e) => return witness_failure(e),
        }
    };
    let report = match verify_witness_limited(&concrete, n, &r, cfg.max_bits.map(NonZeroU64::get)) {
        Ok(report) => report,
        Err(e) => return witness_failure(e),
    };
    if cfg.check && sys.is_parametric() {
        if let Err(out) = sampled_check(cfg, sys, n) {
            return out;
        }
    }
    Outcome::new(EXIT_OK, render_report(cfg, n, &report))
}

#[derive(Serialize)]
struct LiteralJson {
    positive: usize,
    coeffs: Vec<i64>,
}

#[derive(Serialize)]
struct ClauseJson {
    row: usize,
    negative: usize,
    literals: Vec<LiteralJson>,
}

#[derive(Serialize)]
struct BranchJson {
    pivot: usize,
    constraints: Vec<ClauseConstraintJson>,
}

#[derive(Serialize)]
struct ClauseConstraintJson {
    negative: usize,
    coeffs: Vec<i64>,
}

#[derive(Serialize)]
struct ExplainJson {
    vars: Vec<String>,
    monomials: Vec<Vec<u32>>,
    signs: Vec<Vec<i8>>,
    dim: usize,
    clauses: Vec<ClauseJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    branches: Option<Vec<BranchJson>>,
}

fn monomial_text(exps: &[u32], vars: &[String]) -> String {
    let factors: Vec<String> = exps
        .iter()
        .zip(vars)
        .filter(|(&k, _)| k > 0)
        .map(|(&k, v)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
        .collect();
    if factors.is_empty() {
        "1".into()
    } else {
        factors.join("*")
    }
}

fn cmd_explain(cfg: &CliConfig, sys: &System) -> Outcome {
    let cond = build_cnf(sys);
    let branches = (sys.num_polys() == 1).then(|| build_dnf_single(sys).expect("single row"));
    let text = match cfg.format {
        Format::Json => to_json(&ExplainJson {
            vars: sys.var_names().to_vec(),
            monomials: sys.exponents().iter().map(<[u32]>::to_vec).collect(),
            signs: sys.signs().to_i8(),
            dim: cond.dim,
            clauses: cond
                .clauses
                .iter()
                .map(|c| ClauseJson {
                    row: c.row + 1,
                    negative: c.negative + 1,
                    literals: c
                        .literals
                        .iter()
                        .map(|l| LiteralJson { positive: l.positive + 1, coeffs: l.coeffs.clone() })
                        .collect(),
                })
                .collect(),
            branches: branches.as_ref().map(|bs| {
                bs.iter()
                    .map(|b| BranchJson {
                        pivot: b.pivot + 1,
                        constraints: b
                            .constraints
                            .iter()
                            .map(|l| ClauseConstraintJson { negative: l.negative + 1, coeffs: l.coeffs.clone() })
                            .collect(),
                    })
                    .collect()
            }),
        }),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "# monomials");
            for (j, exps) in sys.exponents().iter().enumerate() {
                let _ = writeln!(out, "e{} = {}", j + 1, monomial_text(exps, sys.var_names()));
            }
            let _ = writeln!(out, "# signs");
            for (i, name) in sys.poly_names().iter().enumerate() {
                let row: Vec<String> = sys.signs().row(i).iter().map(|s| s.as_i8().to_string()).collect();
                let zero = sys.signs().row(i).iter().all(|&s| s == Sign::Zero);
                let _ = writeln!(out, "{name}: [{}]{}", row.join(" "), if zero { "  (identically zero)" } else { "" });
            }
            let _ = writeln!(out, "# condition over n = ({}): {} clauses", n_names(sys.num_vars()), cond.clauses.len());
            out.push_str(&cond.to_string());
            if let Some(bs) = &branches {
                let _ = writeln!(out, "# single-inequality branches");
                for b in bs {
                    let _ = write!(out, "branch {}:", b.pivot + 1);
                    for l in &b.constraints {
                        let coeffs: Vec<String> = l.coeffs.iter().map(ToString::to_string).collect();
                        let _ = write!(out, " [{}: {}]", l.negative + 1, coeffs.join(" "));
                    }
                    out.push('\n');
                }
            }
            out
        }
    };
    Outcome::new(EXIT_OK, text)
}

fn n_names(dim: usize) -> String {
    (1..=dim).map(|l| format!("n{l}")).collect::<Vec<_>>().join(", ")
}

impl System {
    fn parametric_skeleton_if_concrete(&self) -> System {
        if self.is_parametric() {
            self.clone()
        } else {
            self.parametric_skeleton()
        }
    }
}
