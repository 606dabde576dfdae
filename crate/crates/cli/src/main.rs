//! `perfect`: command-line front end for perfect-core.
//!
//! Text output by default; `--json` prints one canonical envelope per invocation.
//! Exit codes: 0 success, 1 usage error, 2 domain error.

use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use perfect_core::factorization::{lucas_lehmer, prime_power_factors};
use perfect_core::series::{certify, perfect_reciprocal_sum_with, TermForm};
use perfect_core::sigma::{EnumerationMode, PerfectEnumerator, SieveConfig, SigmaValue};
use perfect_core::structure::{euler_decompose_even, euler_decompose_odd};
use perfect_core::{Error, Natural};
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(
    name = "perfect",
    version,
    about = "Exact divisor sums, perfect numbers and reciprocal-sum certificates"
)]
struct Cli {
    /// Print a single JSON envelope instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Divisor sum σ(n) and aliquot sum
    Sigma { n: Natural },
    /// Prime-power factorization
    Factor { n: Natural },
    /// Every perfect number up to a limit
    PerfectScan(LimitArg),
    /// Even perfect numbers as 2^(k-1)(2^k-1); odd numbers as p^i m²
    Decompose { n: Natural },
    /// Lucas-Lehmer sweep over exponents 2..=max-k
    Mersenne(MaxKArg),
    /// Partial sum of 1/k over perfect k up to a cutoff
    Series {
        #[command(flatten)]
        limit: LimitArg,
        /// Attach a bound certificate for the sum
        #[arg(long)]
        certify: bool,
    },
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("limit_group").required(true).args(["limit", "limit_flag"])))]
struct LimitArg {
    limit: Option<u64>,
    #[arg(long = "limit", value_name = "LIMIT")]
    limit_flag: Option<u64>,
}

impl LimitArg {
    fn value(&self) -> u64 {
        self.limit
            .or(self.limit_flag)
            .expect("clap enforces the group")
    }
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("max_k_group").required(true).args(["max_k", "max_k_flag"])))]
struct MaxKArg {
    max_k: Option<u64>,
    #[arg(long = "max-k", value_name = "MAX_K")]
    max_k_flag: Option<u64>,
}

impl MaxKArg {
    fn value(&self) -> u64 {
        self.max_k
            .or(self.max_k_flag)
            .expect("clap enforces the group")
    }
}

struct Outcome {
    result: Value,
    text: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let (name, input) = describe(&cli.command);
    let outcome = run(&cli.command);
    let code = if outcome.is_ok() { 0 } else { 2 };

    if cli.json {
        let (result, error) = match outcome {
            Ok(o) => (o.result, Value::Null),
            Err(e) => (
                Value::Null,
                json!({ "code": e.code(), "message": e.to_string() }),
            ),
        };
        let envelope = json!({
            "command": name,
            "input": input,
            "result": result,
            "exact": true,
            "error": error,
        });
        println!("{}", canonical(envelope));
    } else {
        match outcome {
            Ok(o) => print!("{}", o.text),
            Err(e) => eprintln!("error [{}]: {e}", e.code()),
        }
    }
    ExitCode::from(code)
}

fn describe(command: &Command) -> (&'static str, Value) {
    match command {
        Command::Sigma { n } => ("sigma", json!({ "n": n.to_string() })),
        Command::Factor { n } => ("factor", json!({ "n": n.to_string() })),
        Command::PerfectScan(l) => ("perfect-scan", json!({ "limit": l.value() })),
        Command::Decompose { n } => ("decompose", json!({ "n": n.to_string() })),
        Command::Mersenne(k) => ("mersenne", json!({ "max_k": k.value() })),
        Command::Series { limit, certify } => (
            "series",
            json!({ "cutoff": limit.value(), "certify": certify }),
        ),
    }
}

fn enumerator() -> PerfectEnumerator {
    PerfectEnumerator::new(SieveConfig::from_env(), EnumerationMode::Production)
}

fn run(command: &Command) -> Result<Outcome, Error> {
    match command {
        Command::Sigma { n } => {
            let v = SigmaValue::compute(n)?;
            let aliquot = v.aliquot();
            let perfect = aliquot == *n;
            Ok(Outcome {
                text: format!(
                    "sigma({n}) = {}\naliquot = {aliquot}\nperfect = {perfect}\n",
                    v.sigma
                ),
                result: json!({
                    "n": n.to_string(),
                    "sigma": v.sigma.to_string(),
                    "aliquot": aliquot.to_string(),
                    "perfect": perfect,
                }),
            })
        }
        Command::Factor { n } => {
            let f = prime_power_factors(n)?;
            let factors: Vec<Value> = f
                .pairs()
                .iter()
                .map(|(p, e)| json!({ "prime": p.to_string(), "exponent": e }))
                .collect();
            let shown = if f.is_empty() {
                "1".to_owned()
            } else {
                f.to_string()
            };
            Ok(Outcome {
                text: format!("{n} = {shown}\n"),
                result: json!({ "n": n.to_string(), "factors": factors }),
            })
        }
        Command::PerfectScan(limit) => {
            let found = enumerator().perfect_up_to(limit.value())?;
            let text: String = found.iter().map(|n| format!("{n}\n")).collect();
            Ok(Outcome {
                text,
                result: json!({ "perfect": found.iter().map(ToString::to_string).collect::<Vec<_>>() }),
            })
        }
        Command::Decompose { n } => {
            if n.is_even() {
                let form = euler_decompose_even(n)?;
                Ok(Outcome {
                    text: format!(
                        "{n} = 2^{} * {} (k = {}, 2^k - 1 prime)\n",
                        form.two_adic(),
                        form.mersenne,
                        form.k
                    ),
                    result: json!({ "parity": "even", "form": serde_json::to_value(&form).expect("serializes") }),
                })
            } else {
                let d = euler_decompose_odd(n)?;
                Ok(Outcome {
                    text: format!("{n} = {}^{} * {}^2\n", d.p, d.i, d.m),
                    result: json!({ "parity": "odd", "form": serde_json::to_value(&d).expect("serializes") }),
                })
            }
        }
        Command::Mersenne(max_k) => {
            let mut hits = Vec::new();
            let mut text = String::new();
            for k in 2..=max_k.value() {
                if lucas_lehmer(k)? {
                    let m = Natural::power_of_two(k) - 1u64;
                    text.push_str(&format!("k = {k}: 2^{k} - 1 = {m}\n"));
                    hits.push(json!({ "k": k, "mersenne": m.to_string() }));
                }
            }
            Ok(Outcome {
                text,
                result: json!({ "primes": hits }),
            })
        }
        Command::Series {
            limit,
            certify: with_certificate,
        } => {
            let sum = perfect_reciprocal_sum_with(limit.value(), &enumerator())?;
            let mut text = String::new();
            for term in &sum.terms {
                let parity = match term.form {
                    TermForm::Even(_) => "even",
                    TermForm::Odd(_) => "odd",
                };
                text.push_str(&format!("1/{} ({parity})\n", term.n));
            }
            text.push_str(&format!(
                "even part = {}\nodd part = {}\ntotal = {}\n",
                sum.even_part, sum.odd_part, sum.total
            ));
            let mut result = json!({ "sum": serde_json::to_value(&sum).expect("serializes") });
            if *with_certificate {
                let doc = certify(&sum)?.to_document();
                for step in &doc.steps {
                    text.push_str(&format!(
                        "{}: {} {} {}\n",
                        step.label,
                        step.lhs,
                        step.relation.symbol(),
                        step.rhs
                    ));
                }
                text.push_str(&format!(
                    "certified: {} {} {}\n",
                    doc.conclusion.total,
                    doc.conclusion.relation.symbol(),
                    doc.conclusion.bound
                ));
                result["certificate"] = serde_json::to_value(&doc).expect("serializes");
            }
            Ok(Outcome { text, result })
        }
    }
}

/// Compact JSON with sorted keys and every number rendered as a decimal string.
fn canonical(value: Value) -> String {
    fn strings_for_numbers(value: Value) -> Value {
        match value {
            Value::Number(n) => Value::String(n.to_string()),
            Value::Array(items) => items.into_iter().map(strings_for_numbers).collect(),
            Value::Object(map) => map
                .into_iter()
                .map(|(k, v)| (k, strings_for_numbers(v)))
                .collect(),
            other => other,
        }
    }
    strings_for_numbers(value).to_string()
}
