use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use jmx_core::homology::DEFAULT_BUDGET;
use jmx_core::Error;
use jmx_cli::output::{to_json, write_atomic, Format};
use jmx_cli::props::{self, SuiteReport, SCOPES};
use jmx_cli::registry::{self, Payload, COROLLARIES};
use jmx_cli::verify::{verify_corollary, verify_theorem, CliError, Options, Verdict, VerificationReport};
use serde_json::json;

const EXIT_MISMATCH: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;
const EXIT_INPUT: u8 = 4;

#[derive(Parser)]
#[command(name = "jmx", version, about = "Verify the J^M[X] cofiber theorem and its corollaries on finite models")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Write each report to a file in this directory instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare both sides of the theorem or a corollary.
    Verify {
        #[command(subcommand)]
        target: Target,
    },
    /// Run property suites.
    Props {
        /// Suites to run; all of them when omitted.
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SCOPES))]
        scope: Vec<String>,
    },
    /// Print registry data.
    Dump {
        #[command(subcommand)]
        what: Dump,
    },
}

#[derive(clap::Args, Clone)]
struct Limits {
    /// Highest homology degree compared; the instance default when omitted.
    #[arg(long)]
    max_degree: Option<usize>,
    /// Largest number of filtered simplices enumerated.
    #[arg(long, env = "JMX_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// First length cutoff; the degree when omitted.
    #[arg(long)]
    k0: Option<usize>,
}

#[derive(Subcommand)]
enum Target {
    /// Cofiber of X -> X ⋊_M EM against B J^M[X].
    Theorem { key: String, #[command(flatten)] limits: Limits },
    /// One of james, milnor_b, wu, bn_circle.
    Corollary { name: String, #[command(flatten)] limits: Limits },
    /// Every action instance and every corollary, in parallel.
    All { #[command(flatten)] limits: Limits },
}

#[derive(Subcommand)]
enum Dump {
    /// An instance's payload as JSON.
    Instance {
        key: String,
        /// Truncation at which spaces and actions are built.
        #[arg(long, default_value_t = 3)]
        top: usize,
    },
    /// Registry keys, kinds, and expected groups.
    Registry,
}

fn options(key_degree: usize, limits: &Limits) -> Options {
    Options { max_degree: limits.max_degree.unwrap_or(key_degree), budget: limits.budget, k0: limits.k0 }
}

fn instance_degree(key: &str) -> usize {
    registry::find(key).map_or(0, |i| i.degree)
}

fn emit(cli: &Cli, name: &str, json: String, tsv: Option<String>) -> std::io::Result<()> {
    let (body, ext) = match (cli.format, tsv) {
        (Format::Tsv, Some(t)) => (t, "tsv"),
        _ => (json, "json"),
    };
    match &cli.out {
        Some(dir) => {
            let path = write_atomic(dir, &format!("{name}.{ext}"), &body)?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{body}"),
    }
    Ok(())
}

fn refusal(name: &str, e: &CliError) -> serde_json::Value {
    match e {
        CliError::Core(Error::HypothesisFails { level, x, m }) => json!({
            "instance": name,
            "error": "hypothesis_fails",
            "message": e.to_string(),
            "witness": { "level": level, "x": x, "m": m },
        }),
        _ => json!({ "instance": name, "error": "input", "message": e.to_string() }),
    }
}

fn exit_for(overall: Verdict) -> u8 {
    match overall {
        Verdict::Match => 0,
        Verdict::Mismatch => EXIT_MISMATCH,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn report(cli: &Cli, name: &str, r: Result<VerificationReport, CliError>) -> std::io::Result<u8> {
    match r {
        Ok(rep) => {
            let code = exit_for(rep.overall);
            emit(cli, name, to_json(&rep), Some(rep.to_tsv()))?;
            Ok(code)
        }
        Err(e) => {
            eprintln!("{name}: {e}");
            emit(cli, name, to_json(&refusal(name, &e)), None)?;
            Ok(EXIT_INPUT)
        }
    }
}

fn verify_all(cli: &Cli, limits: &Limits) -> std::io::Result<u8> {
    let mut jobs: Vec<(String, Box<dyn Fn() -> Result<VerificationReport, CliError> + Send + Sync>)> = Vec::new();
    for i in registry::registry() {
        if let Payload::Action(_) = i.payload {
            let opts = options(i.degree, limits);
            jobs.push((i.key.to_string(), Box::new(move || verify_theorem(i.key, &opts))));
        }
    }
    for (name, key) in COROLLARIES {
        let opts = options(instance_degree(key), limits);
        jobs.push((format!("corollary_{name}"), Box::new(move || verify_corollary(name, &opts))));
    }
    let results: Vec<(String, Result<VerificationReport, CliError>)> = std::thread::scope(|s| {
        let handles: Vec<_> = jobs.iter().map(|(name, job)| (name.clone(), s.spawn(job))).collect();
        handles.into_iter().map(|(name, h)| (name, h.join().expect("verification thread"))).collect()
    });
    let mut worst = 0u8;
    let mut summary = Vec::new();
    for (name, r) in results {
        let refused_by_design = matches!(&r, Err(CliError::Core(Error::HypothesisFails { .. })));
        summary.push(json!({
            "instance": name,
            "overall": r.as_ref().map(|x| serde_json::to_value(x.overall).expect("verdict")).unwrap_or(json!("refused")),
        }));
        let code = report(cli, &name, r)?;
        if !refused_by_design {
            worst = worst.max(code);
        }
    }
    eprintln!("{}", serde_json::to_string(&summary).expect("summary"));
    Ok(worst)
}

fn run_props(cli: &Cli, scopes: &[String]) -> std::io::Result<u8> {
    let chosen: Vec<&str> = if scopes.is_empty() { SCOPES.to_vec() } else { scopes.iter().map(String::as_str).collect() };
    let reports: Vec<SuiteReport> = chosen.iter().filter_map(|s| props::run(s)).collect();
    let mut tsv = String::from("suite\tcases\tfailures\tseconds\n");
    for r in &reports {
        tsv.push_str(&format!("{}\t{}\t{}\t{:.3}\n", r.name, r.cases, r.failures.len(), r.seconds));
        eprintln!("{}: {} cases, {} failures", r.name, r.cases, r.failures.len());
        for n in &r.notes {
            eprintln!("  {n}");
        }
    }
    emit(cli, "props", to_json(&reports), Some(tsv))?;
    Ok(if reports.iter().all(SuiteReport::passed) { 0 } else { EXIT_MISMATCH })
}

fn dump_instance(cli: &Cli, key: &str, top: usize) -> std::io::Result<u8> {
    let Some(inst) = registry::find(key) else {
        eprintln!("unknown instance {key:?}");
        return Ok(EXIT_INPUT);
    };
    let payload = match &inst.payload {
        Payload::Action(f) => f(top).map(|a| serde_json::to_value(a.to_json()).expect("action")),
        Payload::Tensor { space, monoid } => space(top).map(|x| {
            json!({ "space": x.to_json(), "monoid": format!("{monoid:?}"), "presentation": monoid.presentation().to_json() })
        }),
        Payload::Category(f) => Ok(serde_json::to_value(f().to_json()).expect("category")),
    };
    match payload {
        Ok(p) => {
            let doc = json!({
                "key": inst.key,
                "kind": inst.kind(),
                "description": inst.description,
                "degree": inst.degree,
                "expected": inst.expected,
                "payload": p,
            });
            emit(cli, key, to_json(&doc), None)?;
            Ok(0)
        }
        Err(e) => {
            eprintln!("{key}: {e}");
            Ok(EXIT_INPUT)
        }
    }
}

fn dump_registry(cli: &Cli) -> std::io::Result<u8> {
    let rows: Vec<_> = registry::registry()
        .iter()
        .map(|i| json!({ "key": i.key, "kind": i.kind(), "description": i.description, "expected": i.expected }))
        .collect();
    let mut tsv = String::from("key\tkind\tdescription\n");
    for i in registry::registry() {
        tsv.push_str(&format!("{}\t{:?}\t{}\n", i.key, i.kind(), i.description));
    }
    emit(cli, "registry", to_json(&rows), Some(tsv))?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify { target: Target::Theorem { key, limits } } => {
            report(&cli, key, verify_theorem(key, &options(instance_degree(key), limits)))
        }
        Command::Verify { target: Target::Corollary { name, limits } } => {
            let degree = COROLLARIES.iter().find(|(n, _)| n == name).map_or(0, |(_, k)| instance_degree(k));
            report(&cli, &format!("corollary_{name}"), verify_corollary(name, &options(degree, limits)))
        }
        Command::Verify { target: Target::All { limits } } => verify_all(&cli, limits),
        Command::Props { scope } => run_props(&cli, scope),
        Command::Dump { what: Dump::Instance { key, top } } => dump_instance(&cli, key, *top),
        Command::Dump { what: Dump::Registry } => dump_registry(&cli),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("output error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
