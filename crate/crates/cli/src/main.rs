use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use lrpoly::hive::build_system;
use lrpoly::kostant::{kostant_chambers, kostant_count};
use lrpoly::lr3::load_k3;
use lrpoly::steinberg::{is_generic, type_signature};
use lrpoly::stretch::{check_ktt, stretch_poly, Counter};
use lrpoly::{count_to_json, Error, Partition, Weight};

/// Seed used by `verify-k3` when none is given.
const DEFAULT_SEED: u64 = 1729;

#[derive(Parser, Debug)]
#[command(name = "lrpoly", version, about = "Littlewood-Richardson coefficients and their polynomials")]
struct Cli {
    /// Write the JSON result to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Reserved; caching is not implemented.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Hive,
    Steinberg,
    Tableaux,
    System,
    All,
}

impl Method {
    fn counters(self) -> Vec<Counter> {
        match self {
            Method::Hive => vec![Counter::Hive],
            Method::Steinberg => vec![Counter::Steinberg],
            Method::Tableaux => vec![Counter::Tableaux],
            Method::System => vec![Counter::System],
            Method::All => Counter::ALL.to_vec(),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The coefficient c_{λμ}^ν by one or all methods.
    Lr {
        lambda: Partition,
        mu: Partition,
        nu: Partition,
        #[arg(long, value_enum, default_value = "hive")]
        method: Method,
    },
    /// The stretching polynomial N ↦ c_{Nλ,Nμ}^{Nν}.
    Stretch {
        lambda: Partition,
        mu: Partition,
        nu: Partition,
        #[arg(long, value_enum, default_value = "hive")]
        method: Method,
    },
    /// Kostant's partition function of type A_{k-1} at a weight given by
    /// k comma-separated integers summing to zero.
    Kostant {
        k: usize,
        #[arg(allow_hyphen_values = true)]
        weight: String,
    },
    /// Chamber decomposition of the Kostant partition function for A_n.
    Chambers { n: usize },
    /// The hive inequality system E·a + B·(λ,μ,ν) ≥ 0.
    Matrix { k: usize },
    /// Checks every cone of the k = 3 complex against independent counts.
    VerifyK3 {
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Genericity and the type-signature digest.
    Generic { lambda: Partition, mu: Partition, nu: Partition },
    /// P(0) and coefficient positivity of the stretching polynomial.
    Ktt { lambda: Partition, mu: Partition, nu: Partition },
}

enum Failure {
    /// Bad input; exit code 2.
    Usage(String),
    /// A check failed; the JSON still goes out, exit code 1.
    Verification(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::PolynomialityViolated { .. } => Failure::Verification(json!({ "error": e.to_string() })),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn length(ps: [&Partition; 3]) -> usize {
    ps.iter().map(|p| p.length()).max().unwrap_or(0).max(1)
}

fn lr(lambda: &Partition, mu: &Partition, nu: &Partition, method: Method) -> Result<Value, Failure> {
    let mut out = Map::new();
    let mut values = Vec::new();
    for c in method.counters() {
        let v = c.count(lambda, mu, nu)?;
        out.insert(c.name().into(), count_to_json(v));
        values.push(v);
    }
    let agree = values.windows(2).all(|w| w[0] == w[1]);
    if matches!(method, Method::All) {
        out.insert("agree".into(), json!(agree));
    }
    if lambda.size() + mu.size() != nu.size() {
        out.insert("reason".into(), json!("sum mismatch"));
    }
    let out = Value::Object(out);
    if agree {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}

fn stretch(lambda: &Partition, mu: &Partition, nu: &Partition, method: Method) -> Result<Value, Failure> {
    let results = method
        .counters()
        .into_iter()
        .map(|c| stretch_poly(lambda, mu, nu, c))
        .collect::<Result<Vec<_>, _>>()?;
    if let [only] = results.as_slice() {
        return Ok(only.to_json());
    }
    let agree = results.windows(2).all(|w| w[0].polynomial == w[1].polynomial);
    let mut out = Map::new();
    for r in &results {
        out.insert(r.method.name().into(), r.to_json());
    }
    out.insert("agree".into(), json!(agree));
    let out = Value::Object(out);
    if agree {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}

fn kostant(k: usize, weight: &str) -> Result<Value, Failure> {
    let parts = weight
        .split(',')
        .map(|s| s.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Usage(format!("bad weight {weight:?}: {e}")))?;
    if parts.len() != k {
        return Err(Failure::Usage(format!("weight has {} entries, expected {k}", parts.len())));
    }
    let count = kostant_count(k, &Weight::from_ints(&parts))?;
    Ok(json!({ "k": k, "weight": parts, "count": count_to_json(count) }))
}

fn chambers(n: usize) -> Result<Value, Failure> {
    let regions = kostant_chambers(n)?;
    Ok(json!({
        "n": n,
        "variables": lrpoly::kostant::variable_names(n),
        "regions": regions.iter().map(|r| json!({
            "rays": r.rays,
            "inequalities": r.inequalities,
            "polynomial": r.polynomial.to_string(),
        })).collect::<Vec<_>>(),
    }))
}

fn verify_k3(samples: usize, seed: u64) -> Result<Value, Failure> {
    if samples == 0 {
        return Err(Failure::Usage("--samples must be at least 1".into()));
    }
    let k3 = load_k3();
    k3.validate()?;
    let reports = k3
        .cones
        .iter()
        .map(|c| k3.verify_cone(c, samples, seed))
        .collect::<Result<Vec<_>, _>>()?;
    let passed = reports.iter().all(|r| r.passed());
    let out = json!({
        "samples": samples,
        "seed": seed,
        "passed": passed,
        "cones": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
    });
    if passed {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}

fn generic(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<Value, Failure> {
    let k = length([lambda, mu, nu]);
    let generic = is_generic(lambda, mu, nu, k)?;
    let digest = if generic {
        Value::String(type_signature(lambda, mu, nu, k)?.digest())
    } else {
        Value::Null
    };
    Ok(json!({ "k": k, "generic": generic, "signature_digest": digest }))
}

fn run(cli: &Cli) -> Result<Value, Failure> {
    if cli.cache.is_some() {
        return Err(Failure::Usage("--cache is reserved and not implemented".into()));
    }
    match &cli.command {
        Command::Lr { lambda, mu, nu, method } => lr(lambda, mu, nu, *method),
        Command::Stretch { lambda, mu, nu, method } => stretch(lambda, mu, nu, *method),
        Command::Kostant { k, weight } => kostant(*k, weight),
        Command::Chambers { n } => chambers(*n),
        Command::Matrix { k } => Ok(build_system(*k)?.to_json()),
        Command::VerifyK3 { samples, seed } => verify_k3(*samples, *seed),
        Command::Generic { lambda, mu, nu } => generic(lambda, mu, nu),
        Command::Ktt { lambda, mu, nu } => Ok(check_ktt(lambda, mu, nu)?.to_json()),
    }
}

fn emit(cli: &Cli, value: &Value) -> Result<(), String> {
    let text = serde_json::to_string(value).expect("JSON values serialize");
    match &cli.output {
        Some(path) => std::fs::write(path, text + "\n").map_err(|e| format!("{}: {e}", path.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (value, code) = match run(&cli) {
        Ok(v) => (v, 0),
        Err(Failure::Verification(v)) => (v, 1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if let Err(msg) = emit(&cli, &value) {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
