//! Command-line front end. [`run`] does all the work and returns the exit
//! code with the text to print, so tests can drive it without a process.

use std::fmt::{self, Write as _};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Value};

use catalan_core::descent::{euler_search_with, form_search_with, triangular_cube_search_with};
use catalan_core::engine::{
    apply_rule, cassels_bound_check, classify, search_pruned_detailed, search_with, tuple_json,
    CaseId, Certificate, SearchBounds,
};
use catalan_core::lte::lte_valuation;
use catalan_core::par::{execution_for, with_workers};
use catalan_core::pell::pell_fundamental;
use catalan_core::selfcheck;
use catalan_core::{normalize_tuple, CatalanTuple, Execution};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub payload: String,
}

impl CommandResult {
    fn ok(payload: String) -> Self {
        Self {
            exit_code: EXIT_OK,
            payload,
        }
    }

    fn usage(payload: String) -> Self {
        Self {
            exit_code: EXIT_USAGE,
            payload,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "catalan", version, about = "Exact tools for x^p - y^q = 1")]
struct Cli {
    /// Worker threads for sweeps; 1 runs sequentially
    #[arg(long, global = true, env = "CATALAN_WORKERS")]
    workers: Option<usize>,

    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Search x^p - y^q = 1 over a bounded grid
    Search(SearchArgs),
    /// List the cases whose hypotheses a tuple meets
    Classify(TupleArgs),
    /// Emit obstruction certificates for a tuple
    Certify {
        #[command(flatten)]
        tuple: TupleArgs,
        /// Only this case (i..viii)
        #[arg(long = "case")]
        case: Option<String>,
    },
    /// v_p(a^n - b^n) by the lifting-the-exponent formula
    #[command(allow_negative_numbers = true)]
    Lte {
        a: BigInt,
        b: BigInt,
        n: BigInt,
        p: BigInt,
    },
    /// Fundamental solution of alpha^2 - d beta^2 = 1
    #[command(allow_negative_numbers = true)]
    Pell {
        d: BigInt,
        #[arg(long)]
        power: Option<BigInt>,
    },
    /// Bounded searches behind the descent argument
    Descent(DescentArgs),
    /// Inequality chain for distinct odd primes p, q
    Cassels { p: BigInt, q: BigInt },
    /// Run the acceptance checks
    Selfcheck,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long)]
    x_max: BigInt,
    #[arg(long)]
    exp_max: BigInt,
    /// Upper bound on x^p
    #[arg(long)]
    cap: BigInt,
    /// Apply the cheap obstructions before evaluating and report counts
    #[arg(long)]
    pruned: bool,
}

#[derive(Debug, Args)]
struct TupleArgs {
    x: BigInt,
    p: BigInt,
    y: BigInt,
    q: BigInt,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct DescentArgs {
    #[arg(long)]
    form_bound: Option<BigInt>,
    #[arg(long)]
    euler_bound: Option<BigInt>,
    #[arg(long)]
    triangular_bound: Option<BigInt>,
}

mod caps {
    pub const SEARCH_X_MAX: u64 = 100_000;
    pub const SEARCH_EXP_MAX: u64 = 64;
    pub const SEARCH_CAP_DIGITS: u64 = 60;
    pub const TUPLE_EXPONENT: u64 = 100_000;
    /// Upper bound on the bit length of `x^p` and `y^q`.
    pub const TUPLE_POWER_BITS: u64 = 4_000_000;
    pub const LTE_EXPONENT: u64 = 100_000;
    pub const LTE_ARG_DIGITS: u64 = 1_000;
    pub const PELL_D: u64 = 1_000_000_000;
    pub const PELL_POWER: u64 = 10_000;
    pub const FORM_BOUND: u64 = 2_000;
    pub const EULER_BOUND: u64 = 2_000;
    pub const TRIANGULAR_BOUND: u64 = 10_000_000;
    pub const CASSELS_PRIME: u64 = 2_000;
}

/// A domain or range error, reported with exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error: {}", self.0)
    }
}

/// Wraps a library error as `Name: message`, `Name` being its variant.
fn domain<E: fmt::Debug + fmt::Display>(e: E) -> UsageError {
    let debug = format!("{e:?}");
    let name = debug.split(['(', ' ', '{']).next().unwrap_or_default();
    UsageError(format!("{name}: {e}"))
}

fn bounded(name: &str, v: &BigInt, lo: u64, hi: u64) -> Result<u64, UsageError> {
    v.to_u64()
        .filter(|n| (lo..=hi).contains(n))
        .ok_or_else(|| UsageError(format!("{name} must be between {lo} and {hi}, got {v}")))
}

fn exponent(name: &str, v: &BigInt, hi: u64) -> Result<u32, UsageError> {
    bounded(name, v, 1, hi).map(|n| n as u32)
}

fn digits_at_most(name: &str, v: &BigInt, digits: u64) -> Result<(), UsageError> {
    if v.abs().to_string().len() as u64 > digits {
        return Err(UsageError(format!(
            "{name} must have at most {digits} digits"
        )));
    }
    Ok(())
}

struct Context {
    json: bool,
    workers: Option<usize>,
}

impl Context {
    /// Runs a sweep with the requested worker count.
    fn sweep<R: Send>(&self, op: impl FnOnce(Execution) -> R + Send) -> R {
        match self.workers {
            Some(k) => with_workers(k, || op(execution_for(k))),
            None => op(Execution::default()),
        }
    }

    fn emit(&self, value: &Value, text: impl FnOnce() -> String) -> String {
        if self.json {
            let mut s = serde_json::to_string_pretty(value).expect("JSON values serialise");
            s.push('\n');
            s
        } else {
            text()
        }
    }
}

/// Parses `argv` (program name first) and runs the subcommand.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandResult::ok(text),
                _ => CommandResult::usage(text),
            };
        }
    };
    let ctx = Context {
        json: cli.json,
        workers: cli.workers,
    };
    let outcome = match cli.command {
        Command::Search(args) => search(&ctx, &args),
        Command::Classify(args) => classify_cmd(&ctx, &args),
        Command::Certify { tuple, case } => certify(&ctx, &tuple, case.as_deref()),
        Command::Lte { a, b, n, p } => lte(&ctx, &a, &b, &n, &p),
        Command::Pell { d, power } => pell(&ctx, &d, power.as_ref()),
        Command::Descent(args) => descent(&ctx, &args),
        Command::Cassels { p, q } => cassels(&ctx, &p, &q),
        Command::Selfcheck => return run_selfcheck(&ctx),
    };
    match outcome {
        Ok(payload) => CommandResult::ok(payload),
        Err(e) => CommandResult::usage(format!("{e}\n")),
    }
}

fn search(ctx: &Context, args: &SearchArgs) -> Result<String, UsageError> {
    let x_max = bounded("--x-max", &args.x_max, 2, caps::SEARCH_X_MAX)?;
    let exp_max = exponent("--exp-max", &args.exp_max, caps::SEARCH_EXP_MAX)?;
    if !args.cap.is_positive() {
        return Err(UsageError(format!(
            "--cap must be positive, got {}",
            args.cap
        )));
    }
    digits_at_most("--cap", &args.cap, caps::SEARCH_CAP_DIGITS)?;
    let bounds = SearchBounds::new(x_max, exp_max, args.cap.clone());

    let line = |t: &CatalanTuple| format!("{}^{} - {}^{} = 1", t.x(), t.p(), t.y(), t.q());
    if !args.pruned {
        let sols = ctx.sweep(|exec| search_with(&bounds, exec));
        let value = json!({ "solutions": sols.iter().map(tuple_json).collect::<Vec<_>>() });
        return Ok(ctx.emit(&value, || sols.iter().map(|t| line(t) + "\n").collect()));
    }

    let r = ctx.sweep(|exec| search_pruned_detailed(&bounds, exec));
    let stats: serde_json::Map<String, Value> = r
        .stats
        .iter()
        .map(|(c, n)| (c.to_string(), json!(n)))
        .collect();
    let value = json!({
        "solutions": r.solutions.iter().map(tuple_json).collect::<Vec<_>>(),
        "candidates": r.candidates,
        "pruned": stats,
    });
    Ok(ctx.emit(&value, || {
        let mut out: String = r.solutions.iter().map(|t| line(t) + "\n").collect();
        let _ = writeln!(out, "candidates: {}", r.candidates);
        for (case, n) in &r.stats {
            let _ = writeln!(out, "pruned by {case}: {n}");
        }
        out
    }))
}

fn parse_tuple(args: &TupleArgs) -> Result<CatalanTuple, UsageError> {
    let p = exponent("p", &args.p, caps::TUPLE_EXPONENT)?;
    let q = exponent("q", &args.q, caps::TUPLE_EXPONENT)?;
    let raw = CatalanTuple::new(args.x.clone(), p, args.y.clone(), q).map_err(domain)?;
    for (name, base, e) in [("x^p", raw.x(), p), ("y^q", raw.y(), q)] {
        if base.bits().saturating_mul(e.into()) > caps::TUPLE_POWER_BITS {
            return Err(UsageError(format!(
                "{name} exceeds {} bits",
                caps::TUPLE_POWER_BITS
            )));
        }
    }
    Ok(normalize_tuple(&raw))
}

fn classify_cmd(ctx: &Context, args: &TupleArgs) -> Result<String, UsageError> {
    let t = parse_tuple(args)?;
    let cases = classify(&t).map_err(domain)?;
    let names: Vec<&str> = cases.iter().map(|c| c.as_str()).collect();
    let value = json!({ "tuple": tuple_json(&t), "cases": names });
    Ok(ctx.emit(&value, || {
        let listed = if names.is_empty() {
            "none".to_string()
        } else {
            names.join(", ")
        };
        format!("tuple: {t}\ncases: {listed}\n")
    }))
}

fn certificate_text(c: &Certificate) -> String {
    let mut out = format!("case {}: {:?} ({})\n", c.case_id, c.verdict, c.obstruction);
    for (k, v) in &c.witness {
        let _ = writeln!(out, "  {k} = {v}");
    }
    out
}

fn certify(ctx: &Context, args: &TupleArgs, case: Option<&str>) -> Result<String, UsageError> {
    let t = parse_tuple(args)?;
    if let Some(name) = case {
        let case: CaseId = name.parse().map_err(domain)?;
        let cert = apply_rule(case, &t).map_err(domain)?;
        return Ok(ctx.emit(&cert.to_json_value(), || {
            format!("tuple: {t}\n{}", certificate_text(&cert))
        }));
    }
    let certs = classify(&t)
        .map_err(domain)?
        .into_iter()
        .map(|c| apply_rule(c, &t))
        .collect::<Result<Vec<_>, _>>()
        .map_err(domain)?;
    let value = Value::Array(certs.iter().map(Certificate::to_json_value).collect());
    Ok(ctx.emit(&value, || {
        let mut out = format!("tuple: {t}\n");
        if certs.is_empty() {
            out.push_str("no case applies\n");
        }
        certs
            .iter()
            .for_each(|c| out.push_str(&certificate_text(c)));
        out
    }))
}

fn lte(
    ctx: &Context,
    a: &BigInt,
    b: &BigInt,
    n: &BigInt,
    p: &BigInt,
) -> Result<String, UsageError> {
    digits_at_most("a", a, caps::LTE_ARG_DIGITS)?;
    digits_at_most("b", b, caps::LTE_ARG_DIGITS)?;
    digits_at_most("p", p, caps::LTE_ARG_DIGITS)?;
    let n = bounded("n", n, 1, caps::LTE_EXPONENT)?;
    let (value, branch) = lte_valuation(a, b, n, p).map_err(domain)?;
    let json = json!({ "value": value, "branch": branch.to_string() });
    Ok(ctx.emit(&json, || format!("{value}\n")))
}

fn pell(ctx: &Context, d: &BigInt, power: Option<&BigInt>) -> Result<String, UsageError> {
    if d.is_positive() && d.to_u64().is_none_or(|v| v > caps::PELL_D) {
        return Err(UsageError(format!("d must be at most {}", caps::PELL_D)));
    }
    let m = match power {
        Some(m) => bounded("--power", m, 1, caps::PELL_POWER)?,
        None => 1,
    };
    let s = pell_fundamental(d)
        .map_err(domain)?
        .pow(m)
        .map_err(domain)?;
    let value = json!({
        "d": d.to_string(),
        "power": m,
        "alpha": s.alpha().to_string(),
        "beta": s.beta().to_string(),
    });
    Ok(ctx.emit(&value, || {
        format!("alpha = {}\nbeta = {}\n", s.alpha(), s.beta())
    }))
}

fn descent(ctx: &Context, args: &DescentArgs) -> Result<String, UsageError> {
    if let Some(b) = &args.form_bound {
        let b = bounded("--form-bound", b, 0, caps::FORM_BOUND)?;
        let found = ctx.sweep(|exec| form_search_with(b, exec));
        let value = json!({
            "search": "form",
            "bound": b,
            "solutions": found.iter().map(|t| [t.fa.to_string(), t.fb.to_string(), t.fc.to_string()]).collect::<Vec<_>>(),
        });
        return Ok(ctx.emit(&value, || lines("solutions", &found)));
    }
    if let Some(b) = &args.euler_bound {
        let b = bounded("--euler-bound", b, 0, caps::EULER_BOUND)?;
        let found = ctx.sweep(|exec| euler_search_with(b, exec));
        let value = json!({
            "search": "euler",
            "bound": b,
            "solutions": found.iter().map(|t| [t.al.to_string(), t.be.to_string(), t.ga.to_string()]).collect::<Vec<_>>(),
            "all_trivial": found.iter().all(|t| t.is_trivial()),
        });
        return Ok(ctx.emit(&value, || {
            let nontrivial: Vec<_> = found.iter().filter(|t| !t.is_trivial()).collect();
            let mut out = format!(
                "solutions: {} ({} non-trivial)\n",
                found.len(),
                nontrivial.len()
            );
            nontrivial
                .iter()
                .for_each(|t| out.push_str(&format!("{t}\n")));
            out
        }));
    }
    let b = args
        .triangular_bound
        .as_ref()
        .expect("clap requires one bound");
    let b = bounded("--triangular-bound", b, 1, caps::TRIANGULAR_BOUND)?;
    let found = ctx.sweep(|exec| triangular_cube_search_with(b, exec));
    let value = json!({ "search": "triangular", "bound": b, "indices": found });
    Ok(ctx.emit(&value, || lines("indices", &found)))
}

fn lines<T: fmt::Display>(label: &str, items: &[T]) -> String {
    let mut out = format!("{label}: {}\n", items.len());
    items.iter().for_each(|t| out.push_str(&format!("{t}\n")));
    out
}

fn cassels(ctx: &Context, p: &BigInt, q: &BigInt) -> Result<String, UsageError> {
    let p = exponent("p", p, caps::CASSELS_PRIME)?;
    let q = exponent("q", q, caps::CASSELS_PRIME)?;
    let holds = cassels_bound_check(p, q).map_err(domain)?;
    Ok(ctx.emit(&json!({ "p": p, "q": q, "holds": holds }), || {
        format!("{holds}\n")
    }))
}

fn run_selfcheck(ctx: &Context) -> CommandResult {
    let reports = ctx.sweep(|_| selfcheck::run_all());
    let passed = reports.iter().all(|r| r.passed);
    let value = Value::Array(
        reports
            .iter()
            .map(|r| json!({ "id": r.id, "name": r.name, "passed": r.passed, "detail": r.detail }))
            .collect(),
    );
    let payload = ctx.emit(&value, || {
        reports.iter().map(|r| format!("{r}\n")).collect()
    });
    CommandResult {
        exit_code: if passed { EXIT_OK } else { EXIT_INTERNAL },
        payload,
    }
}
