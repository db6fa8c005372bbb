// SPDX-License-Identifier: Apache-2.0

//! `pbit`: single runs, sweeps, landscapes and the benchmark table.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pbit_core::{registry, Policy};
use pbit_harness::graphs::{resolve_dir, InstanceCache};
use pbit_harness::landscape::{landscape, write_landscape};
use pbit_harness::record::{read_csv, write_csv, write_json, write_traces, Record};
use pbit_harness::sweep::{execute, load_spec, Delay, OnIncompatible, SweepSection, SweepSpec};
use pbit_harness::{HarnessError, Result};

#[derive(Parser)]
#[command(name = "pbit", version, about = "p-bit Ising annealing simulator and benchmark harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one operating point on one instance.
    Run(RunArgs),
    /// Run a Cartesian sweep from a spec file, a recipe name or flags.
    Sweep(SweepArgs),
    /// Bin sweep records into a cost landscape.
    Landscape(LandscapeArgs),
    /// List the benchmark registry.
    Graphs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    graph: String,
    /// Directory holding G-set files (falls back to PBIT_GRAPH_DIR).
    #[arg(long)]
    graph_dir: Option<PathBuf>,
    #[arg(long, value_parser = parse_policy)]
    policy: Policy,
    /// Update interval in ns.
    #[arg(long)]
    tau: f64,
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    #[arg(long, default_value_t = 12)]
    b: u32,
    /// Apply delay in ns.
    #[arg(long, default_value_t = 5.0)]
    d: f64,
    /// Total simulated time in ns.
    #[arg(long, default_value_t = 500.0)]
    time: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    repeats: usize,
    /// Accept clocked policies with d != tau.
    #[arg(long)]
    allow_unclocked: bool,
    /// Write energy traces as `run_id,t_ns,energy`.
    #[arg(long)]
    trace_out: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SweepArgs {
    /// Spec file path or recipe name.
    #[arg(long, conflicts_with_all = ["graph", "policy", "tau", "c", "b", "d", "time", "seed", "repeats"])]
    spec: Option<String>,
    #[arg(long, value_delimiter = ',')]
    graph: Vec<String>,
    #[arg(long)]
    graph_dir: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', value_parser = parse_policy)]
    policy: Vec<Policy>,
    #[arg(long, value_delimiter = ',')]
    tau: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    c: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    b: Vec<u32>,
    /// Apply delay in ns, or `tau`.
    #[arg(long)]
    d: Option<String>,
    #[arg(long, value_delimiter = ',')]
    time: Vec<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    repeats: Option<usize>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    allow_unclocked: bool,
    #[arg(long)]
    trace_out: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct LandscapeArgs {
    /// Sweep CSV to bin.
    input: PathBuf,
    #[arg(long, default_value_t = pbit_core::metrics::DEFAULT_BINS)]
    bins: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_policy(s: &str) -> std::result::Result<Policy, String> {
    s.parse().map_err(|e: pbit_core::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Landscape(args) => cmd_landscape(args),
        Command::Graphs => cmd_graphs(),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn cmd_run(args: RunArgs) -> Result<()> {
    let name = pbit_core::lookup(&args.graph)
        .map_err(|_| HarnessError::UnknownBenchmark(args.graph.clone()))?
        .name;
    if args.repeats == 0 {
        return Err(HarnessError::Usage("--repeats must be at least 1".into()));
    }
    let spec = SweepSpec {
        base_seed: args.seed,
        sections: vec![SweepSection {
            name: "run".into(),
            instances: vec![name],
            policies: vec![args.policy],
            taus_ns: vec![args.tau],
            cs: vec![args.c],
            bits: vec![args.b],
            times_ns: vec![args.time],
            delay: Delay::Fixed(args.d),
            repeats: args.repeats,
            allow_unclocked: args.allow_unclocked,
            on_incompatible: OnIncompatible::Error,
        }],
    };
    let single = args.repeats == 1;
    run_spec(&spec, args.graph_dir.as_deref(), 1, args.trace_out.as_deref(), &args.output, single)
}

fn cmd_sweep(args: SweepArgs) -> Result<()> {
    let mut spec = match &args.spec {
        Some(s) => load_spec(s)?,
        None => spec_from_flags(&args)?,
    };
    if args.allow_unclocked {
        for sec in &mut spec.sections {
            sec.allow_unclocked = true;
        }
    }
    let jobs = args
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if jobs == 0 {
        return Err(HarnessError::Usage("--jobs must be at least 1".into()));
    }
    run_spec(&spec, args.graph_dir.as_deref(), jobs, args.trace_out.as_deref(), &args.output, false)
}

fn spec_from_flags(args: &SweepArgs) -> Result<SweepSpec> {
    let need = |empty: bool, flag: &str| {
        if empty {
            Err(HarnessError::Usage(format!("sweep needs --spec or {flag}")))
        } else {
            Ok(())
        }
    };
    need(args.graph.is_empty(), "--graph")?;
    need(args.policy.is_empty(), "--policy")?;
    need(args.tau.is_empty(), "--tau")?;
    let instances = args
        .graph
        .iter()
        .map(|g| {
            pbit_core::lookup(g)
                .map(|e| e.name)
                .map_err(|_| HarnessError::UnknownBenchmark(g.clone()))
        })
        .collect::<Result<_>>()?;
    let delay = match args.d.as_deref() {
        None => Delay::Fixed(pbit_core::engine::DEFAULT_DELAY_NS),
        Some("tau") => Delay::Tau,
        Some(v) => Delay::Fixed(
            v.parse()
                .map_err(|_| HarnessError::Usage(format!("--d expects a number or `tau`, got `{v}`")))?,
        ),
    };
    let or = |v: &Vec<f64>, dflt: f64| if v.is_empty() { vec![dflt] } else { v.clone() };
    let repeats = args.repeats.unwrap_or(1);
    if repeats == 0 {
        return Err(HarnessError::Usage("--repeats must be at least 1".into()));
    }
    Ok(SweepSpec {
        base_seed: args.seed.unwrap_or(0),
        sections: vec![SweepSection {
            name: "flags".into(),
            instances,
            policies: args.policy.clone(),
            taus_ns: args.tau.clone(),
            cs: or(&args.c, 1.0),
            bits: if args.b.is_empty() { vec![pbit_core::B_REF] } else { args.b.clone() },
            times_ns: or(&args.time, pbit_core::engine::DEFAULT_TIME_NS),
            delay,
            repeats,
            allow_unclocked: false,
            on_incompatible: OnIncompatible::Error,
        }],
    })
}

fn run_spec(
    spec: &SweepSpec,
    graph_dir: Option<&Path>,
    jobs: usize,
    trace_out: Option<&Path>,
    output: &OutputArgs,
    single: bool,
) -> Result<()> {
    let points = spec.points()?;
    let dir = resolve_dir(graph_dir);
    let cache = InstanceCache::load_all(&dir, &spec.instance_names())?;
    let result = execute(&points, &cache, jobs, trace_out.is_some())?;

    let mut buf = Vec::new();
    match output.format {
        Format::Csv => write_csv(&mut buf, &result.records)?,
        Format::Json => write_json(&mut buf, &result.records, single)?,
    }
    emit(output.out.as_deref(), &buf)?;
    if let Some(path) = trace_out {
        let mut tbuf = Vec::new();
        write_traces(&mut tbuf, &result.traces)?;
        emit(Some(path), &tbuf)?;
    }
    Ok(())
}

fn cmd_landscape(args: LandscapeArgs) -> Result<()> {
    let file = std::fs::File::open(&args.input).map_err(|source| HarnessError::Io {
        path: args.input.clone(),
        source,
    })?;
    let records: Vec<Record> = read_csv(file)?;
    let groups = landscape(&records, args.bins)?;
    let mut buf = Vec::new();
    write_landscape(&mut buf, &groups)?;
    emit(args.out.as_deref(), &buf)
}

fn cmd_graphs() -> Result<()> {
    let mut text = String::new();
    for e in registry() {
        text.push_str(&format!("{} {} {} {}\n", e.name, e.n, e.m, e.target));
    }
    emit(None, text.as_bytes())
}

fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|source| HarnessError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => std::io::stdout().lock().write_all(bytes).map_err(|source| HarnessError::Io {
            path: "<stdout>".into(),
            source,
        }),
    }
}
