//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 on usage or validation errors, 3 when a
//! resource guard refuses the request. Data goes to stdout, diagnostics to
//! stderr.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use matchcost::daa::{Daa, DEFAULT_NAIVE_GUARD};
use matchcost::oracle::{self, DEFAULT_BRUTE_GUARD};
use matchcost::output::{self, Format, Meta};
use matchcost::{Algorithm, Alphabet, Error, Paa, Pattern, RepSet, TextModel};

/// Default limit on product states times value range in `analyze`.
const DEFAULT_DP_GUARD: u128 = 1 << 32;

#[derive(Parser, Debug)]
#[command(
    name = "matchcost",
    version,
    about = "Exact distributions of text-character accesses of BM, BMH, BNDM and BOM"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact cost distribution via the reduced automaton construction.
    Analyze(DistArgs),
    /// Exact cost distribution by enumerating every text.
    Brute(DistArgs),
    /// Empirical cost distribution from sampled texts.
    Simulate {
        #[command(flatten)]
        dist: DistArgs,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Per-window listing of a single run on an explicit text.
    Trace {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        text: String,
        #[arg(long, default_value = "csv")]
        format: Format,
    },
    /// State-space sizes of the construction.
    States {
        #[command(flatten)]
        target: Target,
        /// Also build the naive automaton (subject to MATCHCOST_NAIVE_GUARD).
        #[arg(long)]
        naive: bool,
        #[arg(long, default_value = "csv")]
        format: Format,
    },
    /// Finite-horizon estimate of the long-run accesses per text symbol.
    Rate {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        horizon: usize,
        #[arg(long, default_value = "csv")]
        format: Format,
    },
    /// Tab-separated dump of the cost-counting automaton.
    Dump {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        naive: bool,
    },
}

#[derive(Args, Debug)]
struct Target {
    #[arg(long)]
    pattern: String,
    #[arg(long = "algo", alias = "algorithm")]
    algorithm: Algorithm,
    /// `iid:a=0.5,b=0.5`, `markov:<initial>|<conditional>`, or a JSON model file.
    #[arg(long)]
    model: Option<String>,
    /// Alphabet when no model is given, e.g. `acgt`.
    #[arg(long)]
    alphabet: Option<String>,
}

#[derive(Args, Debug)]
struct DistArgs {
    #[command(flatten)]
    target: Target,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "csv")]
    format: Format,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Guard(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_guard() {
            Failure::Guard(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn guard(var: &str, default: u128) -> CliResult<u128> {
    match std::env::var(var) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{var}={v:?} is not a nonnegative integer"))),
        Err(_) => Ok(default),
    }
}

fn load_model(source: &str) -> CliResult<TextModel> {
    if source.starts_with("iid:") || source.starts_with("markov:") {
        return Ok(TextModel::from_spec(source)?);
    }
    let text = std::fs::read_to_string(source)
        .map_err(|e| Failure::Usage(format!("cannot read model {source:?}: {e}")))?;
    Ok(TextModel::from_json(&text)?)
}

struct Resolved {
    pattern: Pattern,
    model: Option<TextModel>,
}

impl Target {
    /// The alphabet comes from the model, else `--alphabet`, else the
    /// symbols of the pattern and `extra`.
    fn resolve(&self, extra: &str) -> CliResult<Resolved> {
        let model = self.model.as_deref().map(load_model).transpose()?;
        let alphabet = match (&model, &self.alphabet) {
            (Some(_), Some(_)) => {
                return Err(Failure::Usage(
                    "--alphabet cannot be combined with --model".into(),
                ))
            }
            (Some(m), None) => m.alphabet().clone(),
            (None, Some(a)) => Alphabet::from_chars(a)?,
            (None, None) => {
                let chars: BTreeSet<char> = self.pattern.chars().chain(extra.chars()).collect();
                Alphabet::new(chars)?
            }
        };
        let pattern = Pattern::parse(&alphabet, &self.pattern)?;
        Ok(Resolved { pattern, model })
    }

    fn resolve_with_model(&self) -> CliResult<(Pattern, TextModel)> {
        if self.model.is_none() {
            return Err(Failure::Usage("this command requires --model".into()));
        }
        let r = self.resolve("")?;
        Ok((r.pattern, r.model.expect("checked above")))
    }

    fn meta(&self, command: &str, pattern: &Pattern) -> Meta {
        let mut meta = Meta::new();
        meta.insert("command".into(), json!(command));
        meta.insert("algorithm".into(), json!(self.algorithm.name()));
        meta.insert("pattern".into(), json!(self.pattern));
        meta.insert("m".into(), json!(pattern.len()));
        meta.insert(
            "alphabet".into(),
            json!(pattern.alphabet().symbols().iter().collect::<String>()),
        );
        if let Some(model) = &self.model {
            meta.insert("model".into(), json!(model));
        }
        meta
    }
}

fn add_moments(meta: &mut Meta, dist: &matchcost::Distribution) {
    let (mean, variance) = dist.moments();
    meta.insert("n".into(), json!(dist.n));
    meta.insert("mean".into(), json!(mean));
    meta.insert("variance".into(), json!(variance));
}

fn analyze(args: &DistArgs) -> CliResult<String> {
    let started = Instant::now();
    let (pattern, model) = args.target.resolve_with_model()?;
    let algorithm = args.target.algorithm;
    let reps = RepSet::compatible(&pattern, algorithm)?;
    let daa = Daa::reduced(&pattern, algorithm, &reps)?;
    let paa = Paa::induce(&daa, &model)?;
    let m = pattern.len();
    let values = (args.n.saturating_sub(m) as u128 + 1) * m as u128 + 1;
    let needed = paa.num_states() as u128 * values;
    let limit = guard("MATCHCOST_DP_GUARD", DEFAULT_DP_GUARD)?;
    if needed > limit {
        return Err(Error::GuardExceeded {
            what: "distribution table cells",
            needed,
            limit,
        }
        .into());
    }
    let dist = paa.distribution(args.n);
    let elapsed = started.elapsed().as_secs_f64();
    eprintln!(
        "reps={} daa_states={} paa_states={} wall_time={elapsed:.3}s",
        reps.len(),
        daa.num_states(),
        paa.num_states()
    );
    let mut meta = args.target.meta("analyze", &pattern);
    add_moments(&mut meta, &dist);
    meta.insert("representatives".into(), json!(reps.len()));
    meta.insert("daa_states".into(), json!(daa.num_states()));
    meta.insert("paa_states".into(), json!(paa.num_states()));
    meta.insert("wall_time_s".into(), json!(elapsed));
    Ok(output::render(&dist, meta, args.format))
}

fn brute(args: &DistArgs) -> CliResult<String> {
    let (pattern, model) = args.target.resolve_with_model()?;
    let limit = guard("MATCHCOST_BRUTE_GUARD", DEFAULT_BRUTE_GUARD)?;
    let dist = oracle::brute_distribution(&pattern, args.target.algorithm, &model, args.n, limit)?;
    let mut meta = args.target.meta("brute", &pattern);
    add_moments(&mut meta, &dist);
    meta.insert("oracle".into(), json!(true));
    Ok(output::render(&dist, meta, args.format))
}

fn simulate(args: &DistArgs, samples: u64, seed: u64) -> CliResult<String> {
    let (pattern, model) = args.target.resolve_with_model()?;
    let emp = oracle::monte_carlo(
        &pattern,
        args.target.algorithm,
        &model,
        args.n,
        samples,
        seed,
    )?;
    let dist = emp.pmf();
    let mut meta = args.target.meta("simulate", &pattern);
    add_moments(&mut meta, &dist);
    meta.insert("empirical".into(), json!(true));
    meta.insert("samples".into(), json!(samples));
    meta.insert("seed".into(), json!(seed));
    Ok(output::render(&dist, meta, args.format))
}

fn trace(target: &Target, text: &str, format: Format) -> CliResult<String> {
    let r = target.resolve(text)?;
    let alphabet = r.pattern.alphabet();
    let symbols = alphabet.encode(text)?;
    let m = r.pattern.len();
    let run = matchcost::matchers::run_matcher(target.algorithm, &r.pattern, &symbols);
    let window = |start: usize| alphabet.decode(&symbols[start..start + m]);
    Ok(match format {
        Format::Csv => {
            let mut out = String::from("start,window,cost,shift,match\n");
            for e in &run.entries {
                out += &format!(
                    "{},{},{},{},{}\n",
                    e.start,
                    window(e.start),
                    e.verdict.cost,
                    e.verdict.shift,
                    e.is_match
                );
            }
            out + &format!("total,{}\n", run.total_cost)
        }
        Format::Json => {
            let windows: Vec<Value> = run
                .entries
                .iter()
                .map(|e| {
                    json!({
                        "start": e.start,
                        "window": window(e.start),
                        "cost": e.verdict.cost,
                        "shift": e.verdict.shift,
                        "match": e.is_match,
                    })
                })
                .collect();
            let mut meta = target.meta("trace", &r.pattern);
            meta.insert("text".into(), json!(text));
            json!({ "meta": meta, "windows": windows, "total": run.total_cost }).to_string() + "\n"
        }
    })
}

fn report(pairs: Vec<(&str, Value)>, meta: Meta, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::from("key,value\n");
            for (k, v) in pairs {
                let v = match v {
                    Value::String(s) => s,
                    other => other.to_string(),
                };
                out += &format!("{k},{v}\n");
            }
            out
        }
        Format::Json => {
            let mut doc = Meta::new();
            doc.insert("meta".into(), Value::Object(meta));
            for (k, v) in pairs {
                doc.insert(k.into(), v);
            }
            Value::Object(doc).to_string() + "\n"
        }
    }
}

fn states(target: &Target, naive: bool, format: Format) -> CliResult<String> {
    let r = target.resolve("")?;
    let p = &r.pattern;
    let (m, sigma) = (p.len() as u128, p.alphabet().size() as u128);
    let reps = RepSet::compatible(p, target.algorithm)?;
    let daa = Daa::reduced(p, target.algorithm, &reps)?;
    let bound = if target.algorithm == Algorithm::Bom {
        reps.len() as u128 * (m + 1)
    } else {
        (m * (m + 1) / 2 + 1) * (m + 1)
    };
    let naive_bound = sigma
        .checked_pow(m as u32)
        .and_then(|k| k.checked_mul(m + 1))
        .map_or_else(|| json!("overflow"), |k| json!(k.to_string()));
    let mut pairs = vec![
        ("algorithm", json!(target.algorithm.name())),
        ("pattern", json!(target.pattern)),
        ("m", json!(m)),
        ("sigma", json!(sigma)),
        ("closure", json!(reps.kind().name())),
        ("base_representatives", json!(reps.base_len())),
        ("representatives", json!(reps.len())),
        ("refined", json!(reps.is_refined())),
        ("daa_states_total", json!(daa.full_size().to_string())),
        ("daa_states_reachable", json!(daa.num_states())),
        ("state_bound", json!(bound.to_string())),
        ("naive_states_total", naive_bound),
    ];
    if naive {
        let limit = guard("MATCHCOST_NAIVE_GUARD", DEFAULT_NAIVE_GUARD)?;
        let d = Daa::naive(p, target.algorithm, limit)?;
        pairs.push(("naive_states_reachable", json!(d.num_states())));
    }
    if let Some(model) = &r.model {
        let paa = Paa::induce(&daa, model)?;
        pairs.push(("contexts", json!(model.num_contexts())));
        pairs.push(("paa_states", json!(paa.num_states())));
    }
    Ok(report(pairs, target.meta("states", p), format))
}

fn rate(target: &Target, horizon: usize, format: Format) -> CliResult<String> {
    let (pattern, model) = target.resolve_with_model()?;
    let reps = RepSet::compatible(&pattern, target.algorithm)?;
    let daa = Daa::reduced(&pattern, target.algorithm, &reps)?;
    let est = Paa::induce(&daa, &model)?.mean_rate(horizon)?;
    if !est.converged {
        eprintln!(
            "warning: estimates over [N/2, N] and [N, 2N] differ by {:.3e}",
            (est.estimate - est.previous_estimate).abs()
        );
    }
    let pairs = vec![
        ("estimate", json!(est.estimate)),
        ("previous_estimate", json!(est.previous_estimate)),
        ("horizon", json!(est.horizon)),
        ("expectation_half", json!(est.expectation_half)),
        ("expectation_n", json!(est.expectation_n)),
        ("expectation_2n", json!(est.expectation_2n)),
        ("converged", json!(est.converged)),
        ("heuristic", json!(true)),
    ];
    Ok(report(pairs, target.meta("rate", &pattern), format))
}

fn dump(target: &Target, naive: bool) -> CliResult<String> {
    let r = target.resolve("")?;
    let daa = if naive {
        let limit = guard("MATCHCOST_NAIVE_GUARD", DEFAULT_NAIVE_GUARD)?;
        Daa::naive(&r.pattern, target.algorithm, limit)?
    } else {
        let reps = RepSet::compatible(&r.pattern, target.algorithm)?;
        Daa::reduced(&r.pattern, target.algorithm, &reps)?
    };
    Ok(daa.dump())
}

fn run(cli: &Cli) -> CliResult<String> {
    match &cli.command {
        Command::Analyze(args) => analyze(args),
        Command::Brute(args) => brute(args),
        Command::Simulate {
            dist,
            samples,
            seed,
        } => simulate(dist, *samples, *seed),
        Command::Trace {
            target,
            text,
            format,
        } => trace(target, text, *format),
        Command::States {
            target,
            naive,
            format,
        } => states(target, *naive, *format),
        Command::Rate {
            target,
            horizon,
            format,
        } => rate(target, *horizon, *format),
        Command::Dump { target, naive } => dump(target, *naive),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
