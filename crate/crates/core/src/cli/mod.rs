//! The `btc` command-line front end: JSON in, JSON out.
//!
//! Exit codes: 0 success, 1 a "No" verdict under `--exit-verdict`,
//! 2 invalid input (a diagnostic JSON is printed), 3 internal failure,
//! including a failed bundled fixture in `verify-examples`.

mod fixtures;
mod payload;

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::calculus::{build_commutator, build_operator, build_semicommutator, OperatorKind, Truncation};
use crate::decide::{
    decide_commute, decide_commute_numeric, decide_semicommute, decide_semicommute_numeric, Verdict,
};
use crate::error::Error;
use crate::oracle::{mc_inner_product, mc_volume, oracle_action_coefficient, McConfig, DEFAULT_SAMPLES};
use crate::search::{enumerate_commuting, enumerate_semicommuting};
use crate::SCHEMA;

pub use fixtures::{verify_examples, FixtureResult};
use payload::{
    DecisionInput, EmptyPayload, MatrixPayload, OraclePayload, OracleQuery, PairPayload, Relation,
    SearchPayload,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    DecideCommute,
    DecideSemicommute,
    Matrix,
    Oracle,
    Search,
    VerifyExamples,
}

/// Flags shared by every subcommand.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub threads: Option<usize>,
    pub seed: Option<u64>,
    pub exit_verdict: bool,
    pub truncation: Option<Truncation>,
    pub samples: Option<u64>,
}

/// What a run printed and how it should exit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

#[derive(Debug)]
enum Failure {
    Invalid(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(m) => Failure::Internal(m),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Invalid(format!("malformed JSON: {e}"))
    }
}

struct Produced {
    output: String,
    verdict: Option<bool>,
    healthy: bool,
}

impl Produced {
    fn document(v: Value) -> Produced {
        Produced { output: format!("{v}\n"), verdict: None, healthy: true }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JobSpec {
    schema: String,
    command: Command,
    #[serde(default)]
    payload: Value,
}

fn check_schema(schema: Option<&str>, required: bool) -> Result<(), Failure> {
    match schema {
        Some(SCHEMA) => Ok(()),
        Some(other) => Err(Failure::Invalid(format!("unsupported schema {other:?}, expected {SCHEMA:?}"))),
        None if required => Err(Failure::Invalid(format!("missing \"schema\": \"{SCHEMA}\""))),
        None => Ok(()),
    }
}

fn with_schema(v: Value) -> Value {
    let mut v = v;
    if let Value::Object(map) = &mut v {
        map.insert("schema".into(), Value::String(SCHEMA.into()));
    }
    v
}

fn verdict_output(v: &Verdict) -> Result<Produced, Failure> {
    let mut p = Produced::document(with_schema(serde_json::to_value(v)?));
    p.verdict = Some(v.is_yes());
    Ok(p)
}

fn execute(command: Command, payload: Value, opts: &Options, schema_required: bool) -> Result<Produced, Failure> {
    match command {
        Command::DecideCommute | Command::DecideSemicommute => {
            let pl: PairPayload = serde_json::from_value(payload)?;
            check_schema(pl.schema.as_deref(), schema_required)?;
            let commute = command == Command::DecideCommute;
            let v = match (pl.decision_input()?, commute) {
                (DecisionInput::Exact(pair), true) => decide_commute(&pair)?,
                (DecisionInput::Exact(pair), false) => decide_semicommute(&pair)?,
                (DecisionInput::Numeric(np), true) => decide_commute_numeric(&np)?,
                (DecisionInput::Numeric(np), false) => decide_semicommute_numeric(&np)?,
            };
            verdict_output(&v)
        }
        Command::Matrix => {
            let pl: MatrixPayload = serde_json::from_value(payload)?;
            check_schema(pl.schema.as_deref(), schema_required)?;
            let truncation = opts
                .truncation
                .clone()
                .or_else(|| pl.truncation.clone())
                .ok_or_else(|| Failure::Invalid("matrix needs a truncation (D=<rational> or N=<natural>)".into()))?;
            let first = pl.first()?;
            let second = pl.second()?;
            let op = match (pl.kind, second) {
                (OperatorKind::Toeplitz, None) => build_operator(&pl.m, &first, &truncation)?,
                (OperatorKind::Toeplitz, Some(_)) => {
                    return Err(Failure::Invalid("a toeplitz matrix takes only \"first\"".into()))
                }
                (OperatorKind::Commutator, Some(s)) => build_commutator(&pl.m, &first, &s, &truncation)?,
                (OperatorKind::Semicommutator, Some(s)) => build_semicommutator(&pl.m, &first, &s, &truncation)?,
                (_, None) => return Err(Failure::Invalid("commutators need \"second\"".into())),
            };
            let mut doc = op.to_json();
            doc["max_abs_entry"] = json!(op.max_abs_entry(pl.region));
            doc["region"] = serde_json::to_value(pl.region)?;
            Ok(Produced::document(doc))
        }
        Command::Oracle => {
            let pl: OraclePayload = serde_json::from_value(payload)?;
            check_schema(pl.schema.as_deref(), schema_required)?;
            let seed = opts
                .seed
                .ok_or_else(|| Failure::Invalid("oracle needs an explicit --seed".into()))?;
            let samples = opts.samples.or(pl.samples).unwrap_or(DEFAULT_SAMPLES);
            let cfg = McConfig::new(samples, seed);
            let sym = pl.symbol()?;
            let mut doc = match pl.query {
                OracleQuery::Volume => serde_json::to_value(mc_volume(&pl.m, &cfg)?)?,
                OracleQuery::InnerProduct => {
                    serde_json::to_value(mc_inner_product(&pl.m, &sym, pl.beta()?, pl.lambda()?, &cfg)?)?
                }
                OracleQuery::ActionCoefficient => {
                    serde_json::to_value(oracle_action_coefficient(&pl.m, &sym, pl.beta()?, &cfg)?)?
                }
            };
            doc["seed"] = json!(format!("{seed:#x}"));
            Ok(Produced::document(with_schema(doc)))
        }
        Command::Search => {
            let pl: SearchPayload = serde_json::from_value(payload)?;
            check_schema(pl.schema.as_deref(), schema_required)?;
            let space = pl.space()?;
            let header = json!({
                "schema": SCHEMA,
                "relation": match pl.relation { Relation::Commute => "commute", Relation::Semicommute => "semicommute" },
                "cardinality": space.cardinality().to_string(),
            });
            let mut out = format!("{header}\n");
            match pl.relation {
                Relation::Commute => {
                    for c in enumerate_commuting(&space)? {
                        out.push_str(&c.to_json_line());
                        out.push('\n');
                    }
                }
                Relation::Semicommute => {
                    for c in enumerate_semicommuting(&space)? {
                        out.push_str(&c.to_json_line());
                        out.push('\n');
                    }
                }
            }
            Ok(Produced { output: out, verdict: None, healthy: true })
        }
        Command::VerifyExamples => {
            if !payload.is_null() {
                let pl: EmptyPayload = serde_json::from_value(payload)?;
                check_schema(pl.schema.as_deref(), false)?;
            }
            let results = verify_examples();
            let failed = results.iter().filter(|r| !r.pass).count();
            let doc = json!({
                "schema": SCHEMA,
                "fixtures": results,
                "passed": results.len() - failed,
                "failed": failed,
            });
            Ok(Produced { output: format!("{doc}\n"), verdict: None, healthy: failed == 0 })
        }
    }
}

fn finish(result: Result<Produced, Failure>, opts: &Options) -> Outcome {
    match result {
        Ok(p) => {
            let code = if !p.healthy {
                3
            } else if opts.exit_verdict && p.verdict == Some(false) {
                1
            } else {
                0
            };
            Outcome { code, output: p.output }
        }
        Err(Failure::Invalid(message)) => Outcome { code: 2, output: diagnostic("invalid_input", &message) },
        Err(Failure::Internal(message)) => Outcome { code: 3, output: diagnostic("internal", &message) },
    }
}

fn diagnostic(kind: &str, message: &str) -> String {
    format!("{}\n", json!({ "schema": SCHEMA, "error": { "kind": kind, "message": message } }))
}

fn guarded(opts: &Options, f: impl FnOnce() -> Result<Produced, Failure> + Send) -> Outcome {
    let pool = match opts.threads {
        Some(0) => return finish(Err(Failure::Invalid("--threads must be at least 1".into())), opts),
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    };
    let pool = match pool {
        Ok(p) => p,
        Err(e) => return finish(Err(Failure::Internal(format!("thread pool: {e}"))), opts),
    };
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| pool.install(f)))
        .unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(Failure::Internal(msg))
        });
    finish(result, opts)
}

/// Runs one command on a JSON payload.
pub fn run_command(command: Command, payload: &str, opts: &Options) -> Outcome {
    guarded(opts, || {
        let value: Value = if payload.trim().is_empty() && command == Command::VerifyExamples {
            Value::Null
        } else {
            serde_json::from_str(payload)?
        };
        execute(command, value, opts, true)
    })
}

/// Runs a job document {"schema": "btc/1", "command": ..., "payload": ...}.
pub fn run_job(job: &str, opts: &Options) -> Outcome {
    guarded(opts, || {
        let spec: JobSpec = serde_json::from_str(job)?;
        check_schema(Some(&spec.schema), true)?;
        execute(spec.command, spec.payload, opts, false)
    })
}

#[derive(Parser, Debug)]
#[command(name = "btc", version, about = "Commuting Toeplitz operators with monomial-type symbols")]
struct Cli {
    /// Read the JSON input from FILE, or standard input for "-".
    #[arg(long, global = true, default_value = "-")]
    input: String,
    /// Write the result to FILE, or standard output for "-".
    #[arg(long, global = true, default_value = "-")]
    output: String,
    /// Worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomized commands, in hex (0x prefix optional).
    #[arg(long, global = true, value_parser = parse_hex)]
    seed: Option<u64>,
    /// Exit 1 on a "No" verdict.
    #[arg(long, global = true)]
    exit_verdict: bool,
    /// Basis truncation, D=<rational> or N=<natural>.
    #[arg(long, global = true)]
    truncation: Option<Truncation>,
    /// Monte-Carlo sample count.
    #[arg(long, global = true)]
    samples: Option<u64>,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Decide whether two Toeplitz operators commute.
    DecideCommute,
    /// Decide whether T₁T₂ is the Toeplitz operator of the product symbol.
    DecideSemicommute,
    /// Truncated matrix of an operator, commutator or semi-commutator.
    Matrix,
    /// Monte-Carlo integrals over the domain.
    Oracle,
    /// Enumerate commuting or semi-commuting pairs (JSON lines).
    Search,
    /// Check the bundled reference examples.
    VerifyExamples,
    /// Run a job document {"schema", "command", "payload"}.
    Run,
}

fn parse_hex(s: &str) -> Result<u64, String> {
    let t = s.trim();
    let t = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")).unwrap_or(t);
    u64::from_str_radix(t, 16).map_err(|e| format!("seed must be hex: {e}"))
}

fn read_input(path: &str, stdin: &mut dyn Read) -> std::io::Result<String> {
    let mut s = String::new();
    if path == "-" {
        stdin.read_to_string(&mut s)?;
    } else {
        s = fs::read_to_string(PathBuf::from(path))?;
    }
    Ok(s)
}

/// Entry point behind the `btc` binary; returns the exit code.
pub fn main_with(args: impl IntoIterator<Item = OsString>, stdin: &mut dyn Read, stdout: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let _ = write!(stdout, "{}", diagnostic("usage", e.to_string().trim()));
            return 2;
        }
    };
    let opts = Options {
        threads: cli.threads,
        seed: cli.seed,
        exit_verdict: cli.exit_verdict,
        truncation: cli.truncation.clone(),
        samples: cli.samples,
    };
    let command = match cli.command {
        Sub::DecideCommute => Some(Command::DecideCommute),
        Sub::DecideSemicommute => Some(Command::DecideSemicommute),
        Sub::Matrix => Some(Command::Matrix),
        Sub::Oracle => Some(Command::Oracle),
        Sub::Search => Some(Command::Search),
        Sub::VerifyExamples => Some(Command::VerifyExamples),
        Sub::Run => None,
    };
    let outcome = if command == Some(Command::VerifyExamples) {
        run_command(Command::VerifyExamples, "", &opts)
    } else {
        match read_input(&cli.input, stdin) {
            Ok(text) => match command {
                Some(c) => run_command(c, &text, &opts),
                None => run_job(&text, &opts),
            },
            Err(e) => Outcome { code: 2, output: diagnostic("io", &format!("{}: {e}", cli.input)) },
        }
    };
    let written = if cli.output == "-" {
        stdout.write_all(outcome.output.as_bytes()).and_then(|_| stdout.flush())
    } else {
        fs::write(&cli.output, &outcome.output)
    };
    match written {
        Ok(()) => outcome.code,
        Err(e) => {
            let _ = write!(stdout, "{}", diagnostic("io", &format!("{}: {e}", cli.output)));
            3
        }
    }
}

impl std::str::FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        serde_json::from_value(Value::String(s.into()))
            .map_err(|_| Error::Parse(format!("unknown command {s:?}")))
    }
}
