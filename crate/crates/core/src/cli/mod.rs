//! Command line front end. Every command prints one JSON report holding the
//! tool version, an echo of the configuration and the result.
//!
//! Exit codes: 0 verified, 1 expected negative verdict, 2 internal
//! inconsistency, 3 bad input.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::basechange::{run_pipeline, TheoremInstanceJson};
use crate::comodule::{
    base_change_comodule, cobar_complex, invariants, universal_coefficient_check, validate_comodule, Comodule,
    ComoduleJson, DEFAULT_MAX_DEGREE,
};
use crate::detinv::{hilbert_dim, hilbert_dim_exact};
use crate::error::{Error, Result};
use crate::exactlin::{parse_scalar_list, smith_normal_form, BaseScalar, IntText};
use crate::glinv::{fft_check, ActionSpec};
use crate::hopf::{base_change_hopf, validate_axioms, HopfJson, HopfRef};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INCONSISTENT: i32 = 2;
pub const EXIT_BAD_INPUT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "hopfinv", version, about = "Invariants of finite flat group schemes and determinantal varieties")]
pub struct Cli {
    /// Seed for all random sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for parallel checks (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Print a human-readable summary to stderr (always printed on failure).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the Hopf algebra axioms.
    HopfCheck(HopfArgs),
    /// Invariants of a comodule.
    Invariants(ComoduleArgs),
    /// Cobar complex and its cohomology.
    Cobar(CobarArgs),
    /// Exactness of the universal coefficient sequence for invariants.
    UcsCheck(UcsArgs),
    /// Base change of invariants for a map V -> M^G.
    Theorem1(TheoremArgs),
    /// Hilbert function of a determinantal variety.
    Hilbert(HilbertArgs),
    /// Degreewise first fundamental theorem check.
    FftCheck(FftArgs),
}

#[derive(Debug, Args)]
pub struct HopfArgs {
    /// Built-in name (mu_<n>, const_<G>, alpha_<p>).
    #[arg(long, conflicts_with = "hopf_file", required_unless_present = "hopf_file")]
    pub hopf: Option<String>,
    /// Inline Hopf algebra JSON file.
    #[arg(long)]
    pub hopf_file: Option<PathBuf>,
    /// Base change to this scalar ring first.
    #[arg(long)]
    pub scalar: Option<String>,
}

#[derive(Debug, Args)]
pub struct ComoduleArgs {
    #[arg(long)]
    pub comodule: PathBuf,
    /// Hopf algebra name, used when the comodule file does not name one.
    #[arg(long)]
    pub hopf: Option<String>,
    #[arg(long)]
    pub scalar: Option<String>,
}

#[derive(Debug, Args)]
pub struct CobarArgs {
    #[command(flatten)]
    pub input: ComoduleArgs,
    #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
    pub max_degree: usize,
}

#[derive(Debug, Args)]
pub struct UcsArgs {
    #[arg(long)]
    pub comodule: PathBuf,
    #[arg(long)]
    pub hopf: Option<String>,
    /// Comma-separated scalar rings, e.g. `f2` or `q,f2,z4`.
    #[arg(long)]
    pub scalar: String,
}

#[derive(Debug, Args)]
pub struct TheoremArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long)]
    pub hopf: Option<String>,
    /// Comma-separated sample algebras; overrides the instance file.
    #[arg(long)]
    pub algebras: Option<String>,
}

#[derive(Debug, Args)]
pub struct HilbertArgs {
    /// Matrix shape `GxF`.
    #[arg(long)]
    pub shape: String,
    #[arg(long)]
    pub rank: usize,
    #[arg(long)]
    pub degree: u32,
    /// Use the exact quotient instead of evaluation.
    #[arg(long)]
    pub exact: bool,
}

#[derive(Debug, Args)]
pub struct FftArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub s: usize,
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub dmax: u32,
}

/// Result of running one command.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    /// Pretty-printed JSON report, newline terminated.
    pub report: String,
    pub summary: String,
}

#[derive(Serialize)]
struct Envelope<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    config: Value,
    verdict: &'a str,
    result: Value,
}

struct Done {
    code: i32,
    config: Value,
    result: Value,
    summary: String,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::BadInput(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::BadInput(format!("{}: {e}", path.display())))
}

fn parse_scalar(s: &str) -> Result<BaseScalar> {
    s.parse::<BaseScalar>().map_err(|e| Error::BadInput(e.to_string()))
}

fn load_comodule(path: &Path, hopf: Option<&str>) -> Result<Comodule> {
    let j: ComoduleJson = read_json(path)?;
    let fallback = hopf.map(|h| HopfRef::Name(h.to_string()));
    j.into_comodule(fallback.as_ref())
}

fn with_scalar(m: Comodule, scalar: Option<&str>) -> Result<Comodule> {
    match scalar {
        None => Ok(m),
        Some(s) => base_change_comodule(&m, parse_scalar(s)?),
    }
}

fn factors(a: &crate::exactlin::IntMatrix) -> Vec<IntText> {
    smith_normal_form(a).invariant_factors().iter().cloned().map(IntText).collect()
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn verdict_code(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

fn hopf_check(a: &HopfArgs) -> Result<Done> {
    let mut h = match (&a.hopf, &a.hopf_file) {
        (Some(name), _) => HopfRef::Name(name.clone()).resolve()?,
        (None, Some(path)) => read_json::<HopfJson>(path)?.into_hopf()?,
        (None, None) => return Err(Error::BadInput("give --hopf or --hopf-file".into())),
    };
    if let Some(s) = &a.scalar {
        h = base_change_hopf(&h, parse_scalar(s)?)?;
    }
    let report = validate_axioms(&h);
    let summary = match report.first_failure() {
        None => format!("{}: all {} axioms hold", h.name(), report.checks.len()),
        Some(f) => format!("{}: {} fails at {:?}", h.name(), f.axiom, f.witness),
    };
    Ok(Done {
        code: verdict_code(report.passed()),
        config: json!({"hopf": a.hopf, "hopf_file": a.hopf_file, "scalar": a.scalar}),
        result: to_value(&report),
        summary,
    })
}

fn comodule_config(a: &ComoduleArgs) -> Value {
    json!({"comodule": a.comodule, "hopf": a.hopf, "scalar": a.scalar})
}

fn invariants_cmd(a: &ComoduleArgs) -> Result<Done> {
    let m = with_scalar(load_comodule(&a.comodule, a.hopf.as_deref())?, a.scalar.as_deref())?;
    let validation = validate_comodule(&m);
    if !validation.passed() {
        return Ok(Done {
            code: EXIT_NEGATIVE,
            config: comodule_config(a),
            result: json!({"validation": validation}),
            summary: "comodule axioms fail".into(),
        });
    }
    let inv = invariants(&m);
    let module = inv.module();
    Ok(Done {
        code: EXIT_OK,
        config: comodule_config(a),
        result: json!({
            "validation": validation,
            "invariants": module,
            "inclusion": inv.inclusion(),
            "generator_orders": inv.kernel.orders.iter().cloned().map(IntText).collect::<Vec<_>>(),
        }),
        summary: format!("M^G = {module}"),
    })
}

fn cobar_cmd(a: &CobarArgs) -> Result<Done> {
    let m = with_scalar(load_comodule(&a.input.comodule, a.input.hopf.as_deref())?, a.input.scalar.as_deref())?;
    let cx = cobar_complex(&m, a.max_degree)?;
    let diffs: Vec<Value> = cx
        .differentials()
        .iter()
        .enumerate()
        .map(|(n, d)| json!({"degree": n, "rows": d.rows(), "cols": d.cols(), "invariant_factors": factors(d)}))
        .collect();
    let mut cohomology = Vec::new();
    let mut text = Vec::new();
    for i in 0..a.max_degree {
        let h = cx.cohomology(i)?;
        text.push(format!("H^{i} = {h}"));
        cohomology.push(json!({"degree": i, "module": h}));
    }
    let mut config = comodule_config(&a.input);
    config["max_degree"] = json!(a.max_degree);
    Ok(Done {
        code: EXIT_OK,
        config,
        result: json!({"terms": cx.terms(), "differentials": diffs, "square_zero": true, "cohomology": cohomology}),
        summary: text.join(", "),
    })
}

fn ucs_cmd(a: &UcsArgs) -> Result<Done> {
    let m = load_comodule(&a.comodule, a.hopf.as_deref())?;
    let scalars = parse_scalar_list(&a.scalar).map_err(|e| Error::BadInput(e.to_string()))?;
    if scalars.is_empty() {
        return Err(Error::BadInput("--scalar lists no scalar rings".into()));
    }
    let mut reports = Vec::new();
    let mut text = Vec::new();
    for s in scalars {
        let r = universal_coefficient_check(&m, s)?;
        text.push(format!(
            "{s}: 0 -> {} -> {} -> {} -> 0 exact (H^1 = {})",
            r.rho.source, r.rho.target, r.tor1, r.h1
        ));
        reports.push(r);
    }
    Ok(Done {
        code: EXIT_OK,
        config: json!({"comodule": a.comodule, "hopf": a.hopf, "scalar": a.scalar}),
        result: to_value(&reports),
        summary: text.join("\n"),
    })
}

fn theorem_cmd(a: &TheoremArgs) -> Result<Done> {
    let j: TheoremInstanceJson = read_json(&a.instance)?;
    let algebras = match &a.algebras {
        Some(s) => Some(parse_scalar_list(s).map_err(|e| Error::BadInput(e.to_string()))?),
        None => None,
    };
    let hopf = a.hopf.as_ref().map(|h| HopfRef::Name(h.clone()));
    let inst = j.into_instance(hopf.as_ref(), algebras)?;
    let report = run_pipeline(&inst)?;
    let failing: Vec<u64> = report.hypothesis.iter().filter(|(_, v)| !v.pass).map(|(p, _)| *p).collect();
    let summary = if report.hypothesis_holds {
        let chars: Vec<String> = std::iter::once("0".to_string())
            .chain(report.bad_primes.primes.iter().map(u64::to_string))
            .collect();
        format!(
            "hypothesis holds in characteristics {}; phi_S bijective for every sample algebra\n{}",
            chars.join(", "),
            report.note
        )
    } else {
        format!("hypothesis fails in characteristic {failing:?}\n{}", report.note)
    };
    Ok(Done {
        code: verdict_code(report.hypothesis_holds),
        config: json!({"instance": a.instance, "hopf": a.hopf, "algebras": inst.sample_algebras}),
        result: to_value(&report),
        summary,
    })
}

fn parse_shape(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::BadInput(format!("shape `{s}` is not of the form GxF"));
    let (g, f) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((g.trim().parse().map_err(|_| bad())?, f.trim().parse().map_err(|_| bad())?))
}

fn hilbert_cmd(a: &HilbertArgs, seed: u64) -> Result<Done> {
    let (g, f) = parse_shape(&a.shape)?;
    let r = if a.exact {
        hilbert_dim_exact(g, f, a.rank, a.degree)?
    } else {
        hilbert_dim(g, f, a.rank, a.degree, seed)
    };
    Ok(Done {
        code: EXIT_OK,
        config: json!({"shape": [g, f], "rank": a.rank, "degree": a.degree, "exact": a.exact, "seed": seed}),
        summary: format!("dim K[Y_{}]_{} = {} ({})", a.rank, a.degree, r.dim, r.method),
        result: to_value(&r),
    })
}

fn fft_cmd(a: &FftArgs, seed: u64) -> Result<Done> {
    let spec = ActionSpec::new(a.m, a.n, a.r, a.s, a.t)?;
    let r = fft_check(spec, a.dmax, seed)?;
    let dims: Vec<String> = r.per_degree.iter().map(|d| format!("{}/{}", d.dim_y, d.dim_inv)).collect();
    Ok(Done {
        code: verdict_code(r.overall),
        config: json!({"spec": spec, "dmax": a.dmax, "seed": seed}),
        summary: format!("dims (Y/invariants) per degree: {}; overall {}", dims.join(", "), r.overall),
        result: to_value(&r),
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::HopfCheck(_) => "hopf-check",
        Command::Invariants(_) => "invariants",
        Command::Cobar(_) => "cobar",
        Command::UcsCheck(_) => "ucs-check",
        Command::Theorem1(_) => "theorem1",
        Command::Hilbert(_) => "hilbert",
        Command::FftCheck(_) => "fft-check",
    }
}

fn dispatch(cli: &Cli) -> Result<Done> {
    match &cli.command {
        Command::HopfCheck(a) => hopf_check(a),
        Command::Invariants(a) => invariants_cmd(a),
        Command::Cobar(a) => cobar_cmd(a),
        Command::UcsCheck(a) => ucs_cmd(a),
        Command::Theorem1(a) => theorem_cmd(a),
        Command::Hilbert(a) => hilbert_cmd(a, cli.seed),
        Command::FftCheck(a) => fft_cmd(a, cli.seed),
    }
}

/// Runs a parsed command. The report depends only on the command and its
/// inputs, never on `--jobs`.
pub fn run(cli: &Cli) -> Outcome {
    let name = command_name(&cli.command);
    let work = || dispatch(cli);
    let result = if cli.jobs > 0 {
        match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
            Ok(pool) => pool.install(work),
            Err(e) => Err(Error::BadInput(format!("cannot start {} worker threads: {e}", cli.jobs))),
        }
    } else {
        work()
    };
    let (code, verdict, config, result, summary) = match result {
        Ok(d) => {
            let verdict = if d.code == EXIT_OK { "pass" } else { "fail" };
            (d.code, verdict, d.config, d.result, d.summary)
        }
        Err(e) => {
            let code = e.exit_code();
            let kind = if code == EXIT_INCONSISTENT { "internal inconsistency" } else { "bad input" };
            (code, "error", Value::Null, json!({"error": e.to_string(), "kind": kind}), format!("error: {e}"))
        }
    };
    let env = Envelope {
        tool: "hopfinv",
        version: VERSION,
        command: name,
        config,
        verdict,
        result,
    };
    let mut report = serde_json::to_string_pretty(&env).expect("report serializes");
    report.push('\n');
    Outcome { code, report, summary }
}

/// Parses arguments (including the program name) and runs; argument errors
/// give exit code 3 with clap's message as the summary.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_BAD_INPUT,
            };
            Outcome {
                code,
                report: String::new(),
                summary: e.to_string(),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        assert_eq!(parse_shape("2x3").unwrap(), (2, 3));
        assert!(parse_shape("2by3").is_err());
    }

    #[test]
    fn hopf_check_report() {
        let out = run_args(["hopfinv", "hopf-check", "--hopf", "mu_2"]);
        assert_eq!(out.code, 0);
        let v: Value = serde_json::from_str(&out.report).unwrap();
        assert_eq!(v["verdict"], "pass");
        assert_eq!(v["version"], VERSION);
        let bad = run_args(["hopfinv", "hopf-check", "--hopf", "nope"]);
        assert_eq!(bad.code, 3);
        assert_eq!(run_args(["hopfinv", "frobnicate"]).code, 3);
    }

    #[test]
    fn fft_and_hilbert_reports() {
        let out = run_args(["hopfinv", "fft-check", "--m", "1", "--n", "1", "--r", "1", "--s", "1", "--t", "1", "--dmax", "2"]);
        assert_eq!(out.code, 0);
        let v: Value = serde_json::from_str(&out.report).unwrap();
        let dims: Vec<u64> = v["result"]["per_degree"].as_array().unwrap().iter().map(|d| d["dim_inv"].as_u64().unwrap()).collect();
        assert_eq!(dims, vec![1, 1, 1]);
        let h = run_args(["hopfinv", "hilbert", "--shape", "2x2", "--rank", "1", "--degree", "2"]);
        let v: Value = serde_json::from_str(&h.report).unwrap();
        assert_eq!(v["result"]["dim"], 9);
        assert_eq!(v["result"]["method"], "evaluation");
    }
}
