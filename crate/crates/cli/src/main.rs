//! `kcore`: dimension tables, the finite chain, TASEP words, simulation and
//! the verification suites.
//!
//! Exit codes: 0 when every hard check passes, 1 on a theorem or property
//! failure, 2 on usage, configuration or I/O errors. Conjecture verdicts never
//! change the exit code.

use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use kcore::chain::{format_rational, write_pi_csv, ChainAnalysis, ChainExport, SolveMethod};
use kcore::dimensions::{strong_dim, DimensionEngine, DimensionTable};
use kcore::partition::hook_length_dimension;
use kcore::posets::{weak_covers_by_column, weak_dim};
use kcore::report::{Finding, Report};
use kcore::simulate::{self, Outputs, SimulationConfig};
use kcore::suites::{self, Suite};
use kcore::tasep::{alpha, alpha_inv, jumps, CyclicState};
use kcore::{enumerate_reduced_states, reduce, Error, KBoundedPartition, Partition, ReducedState};
use serde::Serialize;
use serde_json::{json, Value};

const CACHE_ENV: &str = "KCORE_CACHE_DIR";

#[derive(Parser)]
#[command(name = "kcore", version, about = "Growth of (k+1)-cores under the k-Plancherel measure")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// k-analog, weak and classical dimensions of k-bounded partitions.
    Dims(DimsArgs),
    /// Build and solve the finite k!-state chain.
    Chain(ChainArgs),
    /// Run the growth process and compare its boundary to the limit curve.
    Simulate(SimulateArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Map between reduced states and cyclic words, with the jump set.
    Tasep(TasepArgs),
}

#[derive(Args)]
struct Common {
    /// Write a JSON run report here.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct DimsArgs {
    #[arg(long)]
    k: u32,
    /// A partition such as "2,1,1" or "(2,1,1)".
    partition: Option<String>,
    /// Every state of the finite chain instead of a single partition.
    #[arg(long, conflicts_with = "partition")]
    all_reduced: bool,
    #[arg(long, default_value = "tableaux")]
    engine: DimensionEngine,
    /// Dimension cache directory; also read from KCORE_CACHE_DIR.
    #[arg(long, value_name = "DIR")]
    cache: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ChainArgs {
    #[arg(long)]
    k: u32,
    #[arg(long, default_value = "tableaux")]
    engine: DimensionEngine,
    #[arg(long, default_value = "auto")]
    solver: SolveMethod,
    /// Allow k outside 2..=6.
    #[arg(long)]
    force: bool,
    /// π table as CSV.
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SimulateArgs {
    /// JSON config; flags below override its fields.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trajectories: Option<u32>,
    #[arg(long)]
    checkpoint_every: Option<u64>,
    /// Boundary of the first trajectory as CSV.
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    rho_csv: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    occupancy_csv: Option<PathBuf>,
    /// Boundary with the fitted limit curve.
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    k: u32,
    #[arg(long, default_value = "all")]
    suite: Suite,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct TasepArgs {
    /// Needed when the input is a partition.
    #[arg(long)]
    k: Option<u32>,
    /// A word such as "1-4-2-3-5", or a partition such as "3,3,1,1".
    input: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Serialize)]
struct RunReport {
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<u32>,
    inputs: Value,
    results: Value,
    findings: Vec<Finding>,
    timing_ms: f64,
}

/// A finished command: its report and whether a hard check failed.
struct Outcome {
    report: RunReport,
    hard_failure: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let (json, result) = match cli.command {
        Command::Dims(a) => (a.common.json.clone(), dims(a)),
        Command::Chain(a) => (a.common.json.clone(), chain(a)),
        Command::Simulate(a) => (a.common.json.clone(), run_simulation(a)),
        Command::Verify(a) => (a.common.json.clone(), verify(a)),
        Command::Tasep(a) => (a.common.json.clone(), tasep(a)),
    };
    let mut outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    outcome.report.timing_ms = started.elapsed().as_secs_f64() * 1e3;
    if let Some(path) = json {
        if let Err(e) = write_json(&path, &outcome.report) {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    if outcome.hard_failure {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> kcore::Result<()> {
    serde_json::to_writer_pretty(BufWriter::new(File::create(path)?), value)?;
    Ok(())
}

fn print_findings(findings: &[Finding]) {
    for f in findings {
        println!("{f}");
    }
}

fn parse_bounded(text: &str, k: u32) -> kcore::Result<KBoundedPartition> {
    KBoundedPartition::new(text.parse::<Partition>()?, k)
}

fn cache_path(dir: Option<PathBuf>, k: u32) -> Option<PathBuf> {
    dir.or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from)).map(|d| d.join(format!("dimensions-k{k}.json")))
}

fn load_cache(path: &Path, k: u32) -> kcore::Result<DimensionTable> {
    if !path.exists() {
        return Ok(DimensionTable::new(k));
    }
    let t = DimensionTable::read_json(File::open(path)?)?;
    if t.k != k {
        return Err(Error::Config(format!("{} holds k={}, expected k={k}", path.display(), t.k)));
    }
    Ok(t)
}

fn dims(a: DimsArgs) -> kcore::Result<Outcome> {
    if a.k == 0 {
        return Err(Error::Config("k must be positive".into()));
    }
    let shapes: Vec<KBoundedPartition> = match (&a.partition, a.all_reduced) {
        (Some(p), _) => vec![parse_bounded(p, a.k)?],
        (None, true) => enumerate_reduced_states(a.k).into_iter().map(|s| s.bounded().clone()).collect(),
        (None, false) => return Err(Error::Config("give a partition or --all-reduced".into())),
    };
    let cache = cache_path(a.cache, a.k);
    let mut table = match &cache {
        Some(p) => load_cache(p, a.k)?,
        None => DimensionTable::new(a.k),
    };
    let mut rows = Vec::new();
    let mut csv = String::from("state,size,d_k,w_k,d,sandwich\n");
    println!("{:<20} {:>4} {:>16} {:>16} {:>16}  sandwich", "λ", "|λ|", "d^(k)", "w^(k)", "d");
    let mut hard_failure = false;
    for b in &shapes {
        let d_k = match table.get(b.partition()) {
            Some(d) => d.clone(),
            None => {
                let d = strong_dim(b, a.engine);
                table.insert(b, d.clone())?;
                d
            }
        };
        let w = weak_dim(b);
        let d = hook_length_dimension(b.partition());
        let holds = w <= d && d <= d_k && (b.size() > a.k as u64 || (w == d && d == d_k));
        hard_failure |= !holds;
        let flag = if holds { "ok" } else { "VIOLATED" };
        println!("{:<20} {:>4} {:>16} {:>16} {:>16}  {flag}", b.to_string(), b.size(), d_k, w, d);
        csv.push_str(&format!("\"{}\",{},{d_k},{w},{d},{flag}\n", b.partition().key(), b.size()));
        rows.push(json!({
            "state": b.partition(),
            "size": b.size(),
            "d_k": d_k.to_string(),
            "w_k": w.to_string(),
            "d": d.to_string(),
            "sandwich": holds,
        }));
    }
    if let Some(p) = &cache {
        if let Some(parent) = p.parent() {
            std::fs::create_dir_all(parent)?;
        }
        table.write_json(BufWriter::new(File::create(p)?))?;
    }
    if let Some(p) = &a.csv {
        std::fs::write(p, csv)?;
    }
    Ok(Outcome {
        report: RunReport {
            command: "dims",
            k: Some(a.k),
            inputs: json!({ "partition": a.partition, "all_reduced": a.all_reduced, "engine": a.engine }),
            results: Value::Array(rows),
            findings: Vec::new(),
            timing_ms: 0.0,
        },
        hard_failure,
    })
}

fn chain(a: ChainArgs) -> kcore::Result<Outcome> {
    if a.k == 0 || (!a.force && !(2..=6).contains(&a.k)) {
        return Err(Error::Config(format!("k={} is outside 2..=6; pass --force to run it anyway", a.k)));
    }
    let analysis = ChainAnalysis::new(a.k, a.engine, a.solver)?;
    let mut report = suites::chain_checks(&analysis);
    report.extend(suites::conjectures(&analysis));
    let export = ChainExport::new(&analysis, report.findings.clone());
    println!("{:>5}  {:<24} {:<20} {:>14}  {:>10}", "index", "λ", "α⁻¹(λ)", "π", "π·lcd");
    let lcd = analysis.pi.lcd();
    for ((i, s), p) in analysis.matrix.states.iter().enumerate().zip(&analysis.pi.values) {
        let scaled = p * num_rational::BigRational::from_integer(lcd.clone().into());
        println!("{i:>5}  {:<24} {:<20} {:>14}  {:>10}", s.to_string(), alpha_inv(s).to_string(), format_rational(p), scaled.to_integer());
    }
    println!("lcd {}  M_k {}  ρ = ({})", export.lcd, export.m_k, export.rho.join(", "));
    print_findings(&report.findings);
    if let Some(p) = &a.csv {
        write_pi_csv(&analysis, BufWriter::new(File::create(p)?))?;
    }
    Ok(Outcome {
        hard_failure: !report.all_hard_checks_pass(),
        report: RunReport {
            command: "chain",
            k: Some(a.k),
            inputs: json!({ "engine": a.engine, "solver": a.solver }),
            results: serde_json::to_value(&export)?,
            findings: report.findings,
            timing_ms: 0.0,
        },
    })
}

fn simulation_config(a: &SimulateArgs) -> kcore::Result<SimulationConfig> {
    let mut config = match &a.config {
        Some(p) => SimulationConfig::from_json(&std::fs::read_to_string(p)?)?,
        None => SimulationConfig::new(
            a.k.ok_or_else(|| Error::Config("--k is required without --config".into()))?,
            a.n.ok_or_else(|| Error::Config("--n is required without --config".into()))?,
            a.seed.unwrap_or(0),
        ),
    };
    if let Some(k) = a.k {
        config.k = k;
    }
    if let Some(n) = a.n {
        config.n = n;
    }
    if let Some(s) = a.seed {
        config.seed = s;
    }
    if let Some(t) = a.trajectories {
        config.trajectories = t;
    }
    if let Some(c) = a.checkpoint_every {
        config.checkpoint_every = c;
    }
    let o: &mut Outputs = &mut config.outputs;
    for (slot, flag) in [
        (&mut o.boundary_csv, &a.csv),
        (&mut o.rho_csv, &a.rho_csv),
        (&mut o.occupancy_csv, &a.occupancy_csv),
        (&mut o.svg, &a.svg),
    ] {
        if flag.is_some() {
            slot.clone_from(flag);
        }
    }
    config.validate()?;
    Ok(config)
}

fn run_simulation(a: SimulateArgs) -> kcore::Result<Outcome> {
    let config = simulation_config(&a)?;
    let analysis = ChainAnalysis::shared(config.k)?;
    let result = simulate::simulate(&analysis, &config)?;
    simulate::write_outputs(&result)?;
    println!("k={} n={} seed={} exact ρ_i = {}", config.k, config.n, config.seed, result.rho_exact.join(", "));
    for t in &result.trajectories {
        let rho: Vec<String> = t.rho.iter().map(|r| format!("{r:.6}")).collect();
        let zmax = t.occupancy.iter().map(|o| o.z()).fold(0.0, f64::max);
        println!(
            "stream {}: ρ = ({})  max occupancy z = {zmax:.2}  γ = {:.6}  sup deviation = {:.6}  mean square = {:.3e}",
            t.stream,
            rho.join(", "),
            t.fit.gamma,
            t.fit.max_deviation,
            t.fit.mean_sq_deviation
        );
        for c in &t.checkpoints {
            println!("  n={:<12} γ = {:.6}  sup deviation = {:.6}", c.n, c.fit.gamma, c.fit.max_deviation);
        }
    }
    Ok(Outcome {
        report: RunReport {
            command: "simulate",
            k: Some(config.k),
            inputs: serde_json::to_value(&config)?,
            results: serde_json::to_value(&result)?,
            findings: Vec::new(),
            timing_ms: 0.0,
        },
        hard_failure: false,
    })
}

fn verify(a: VerifyArgs) -> kcore::Result<Outcome> {
    if a.k == 0 {
        return Err(Error::Config("k must be positive".into()));
    }
    let report: Report = suites::run(a.suite, a.k)?;
    print_findings(&report.findings);
    let failures = report.hard_failures().count();
    println!("{} checks, {failures} hard failures", report.findings.len());
    Ok(Outcome {
        hard_failure: failures > 0,
        report: RunReport {
            command: "verify",
            k: Some(a.k),
            inputs: json!({ "suite": format!("{:?}", a.suite).to_lowercase() }),
            results: json!({ "checks": report.findings.len(), "hard_failures": failures }),
            findings: report.findings,
            timing_ms: 0.0,
        },
    })
}

fn tasep(a: TasepArgs) -> kcore::Result<Outcome> {
    let (state, word): (ReducedState, CyclicState) = if a.input.contains('-') {
        let w: CyclicState = a.input.parse()?;
        if a.k.is_some_and(|k| k != w.k()) {
            return Err(Error::Config(format!("word has k={}, --k says {}", w.k(), a.k.unwrap())));
        }
        (alpha(&w), w)
    } else {
        let k = a.k.ok_or_else(|| Error::Config("--k is required for a partition".into()))?;
        let s = ReducedState::new(parse_bounded(&a.input, k)?)?;
        let w = alpha_inv(&s);
        (s, w)
    };
    println!("α⁻¹{state} = {word}");
    println!("α({word}) = {state}");
    let mut moves = Vec::new();
    for j in jumps(&word) {
        let target = alpha(&j.to);
        let column = column_of(&state, &target).ok_or_else(|| Error::Precondition(format!("no weak cover of {state} reduces to {target}")))?;
        let rect = if j.passed == j.value + 1 { format!(", completes □_{}", j.value) } else { String::new() };
        println!("  {} jumps past {} → {} = α⁻¹{target}, box in column {column}{rect}", j.value, j.passed, j.to);
        moves.push(json!({
            "value": j.value,
            "passed": j.passed,
            "word": j.to.to_string(),
            "state": target.partition(),
            "column": column,
        }));
    }
    Ok(Outcome {
        report: RunReport {
            command: "tasep",
            k: Some(word.k()),
            inputs: json!({ "input": a.input }),
            results: json!({ "state": state.partition(), "word": word.to_string(), "jumps": moves }),
            findings: Vec::new(),
            timing_ms: 0.0,
        },
        hard_failure: false,
    })
}

/// The column of the box added by the weak cover that reduces to `to`.
fn column_of(from: &ReducedState, to: &ReducedState) -> Option<u32> {
    weak_covers_by_column(from.bounded()).into_iter().find(|(_, big)| reduce(big).0 == *to).map(|(c, _)| c)
}
