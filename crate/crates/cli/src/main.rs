//! `hopbench`: run benchmark matrices, cluster experiments, timing
//! measurements and the statistical analysis of stored runs.

mod parse;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use hopbench_core::analysis::{cluster_table, make_reports, ReportConfig, DEFAULT_BUDGETS, DEFAULT_TARGETS};
use hopbench_core::harness::{
    cluster_config, measure_timing, read_records, run_clusters, run_experiment_to_dir, Manifest, RecordWriter,
    TimingConfig, MANIFEST_FILE, RECORDS_FILE,
};
use hopbench_core::problems::{ClusterKind, SuiteFunction};
use hopbench_core::{AlgorithmEntry, ExperimentConfig, OptimizerConfig, ProblemSpec, RunRecord};

const COMPARED: &str = "bh,bhpop,pbh,de,pso,cmaes";

#[derive(Parser)]
#[command(name = "hopbench", version, about = "Basin hopping benchmarking and analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Log verbosity (error, warn, info, debug).
    #[arg(long, global = true, default_value = "warn")]
    log: String,
}

#[derive(Subcommand)]
enum Command {
    /// Run the suite matrix and store one record per run.
    Run(RunArgs),
    /// Run the atomic cluster experiments.
    Clusters(ClusterArgs),
    /// Build metric tables and statistical comparisons from stored runs.
    Analyze(AnalyzeArgs),
    /// List the available problems.
    ListProblems,
    /// Measure time overhead relative to random search.
    Timing(TimingArgs),
}

#[derive(Args)]
struct Workers {
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, env = "HOPBENCH_WORKERS")]
    workers: Option<usize>,
}

impl Workers {
    fn resolve(&self) -> Result<usize> {
        match self.workers {
            Some(0) => bail!("--workers must be at least 1"),
            Some(n) => Ok(n),
            None => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
        }
    }
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value = COMPARED)]
    algos: String,
    /// Function ids, e.g. `1-24` or `1,3,15-19`.
    #[arg(long, default_value = "1-24")]
    functions: String,
    #[arg(long, default_value = "5,10,20,40")]
    dims: String,
    #[arg(long, default_value_t = 15)]
    instances: u32,
    #[arg(long, default_value_t = 15)]
    runs: u32,
    #[arg(long, default_value_t = 200_000)]
    cap: u64,
    #[arg(long, default_value_t = 1e-8)]
    err: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    workers: Workers,
    /// Store zero wall times so repeated runs give identical files.
    #[arg(long)]
    no_wall_time: bool,
}

#[derive(Args)]
struct ClusterArgs {
    #[arg(long, default_value = "lj,mo")]
    kinds: String,
    #[arg(long, default_value = "20,30,40")]
    atoms: String,
    #[arg(long, default_value = "bh,bhpop,de,pso,cmaes")]
    algos: String,
    #[arg(long, default_value_t = 15)]
    runs: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    workers: Workers,
    #[arg(long)]
    no_wall_time: bool,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Record files or run directories.
    #[arg(long = "in", required = true, num_args = 1..)]
    inputs: Vec<PathBuf>,
    /// Report directory.
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    budgets: Option<String>,
    #[arg(long)]
    targets: Option<String>,
    #[arg(long)]
    reference: Option<String>,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// Run cap for running-time statistics; read from the manifest when omitted.
    #[arg(long)]
    cap: Option<u64>,
}

#[derive(Args)]
struct TimingArgs {
    #[arg(long, default_value = COMPARED)]
    algos: String,
    #[arg(long, default_value_t = 24)]
    function: u32,
    #[arg(long, default_value = "20,40,60,80,100")]
    dims: String,
    #[arg(long, default_value_t = 10_000)]
    evals: u64,
    #[arg(long, default_value_t = 10)]
    reps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Optional JSON output file.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure class mapped to the process exit status.
enum Failure {
    Usage(anyhow::Error),
    Runtime(anyhow::Error),
}

fn usage<T>(r: Result<T>) -> std::result::Result<T, Failure> {
    r.map_err(Failure::Usage)
}

fn runtime<T>(r: Result<T>) -> std::result::Result<T, Failure> {
    r.map_err(Failure::Runtime)
}

fn parse_algos(s: &str) -> Result<Vec<AlgorithmEntry>> {
    parse::name_list(s)?
        .iter()
        .map(|n| Ok(AlgorithmEntry::new(n.parse::<OptimizerConfig>()?)))
        .collect()
}

fn parse_kinds(s: &str) -> Result<Vec<ClusterKind>> {
    parse::name_list(s)?.iter().map(|k| Ok(k.parse()?)).collect()
}

fn print_run_summary(records: &[RunRecord], out: &Path) {
    let failed = records.iter().filter(|r| r.is_failed()).count();
    let hit = records
        .iter()
        .filter(|r| r.status == hopbench_core::RunStatus::TargetReached)
        .count();
    println!(
        "{} runs written to {} ({hit} reached the target, {failed} failed)",
        records.len(),
        out.display()
    );
}

fn cmd_run(a: RunArgs) -> std::result::Result<(), Failure> {
    let algorithms = usage(parse_algos(&a.algos))?;
    let functions: Vec<u32> = usage(parse::int_list(&a.functions))?;
    let dims: Vec<usize> = usage(parse::int_list(&a.dims))?;
    for f in &functions {
        usage(SuiteFunction::new(*f).map_err(Into::into))?;
    }
    if let Some(d) = dims.iter().find(|d| **d < 2) {
        return Err(Failure::Usage(anyhow::anyhow!("dimension {d} below 2")));
    }
    let mut problems = Vec::new();
    for &d in &dims {
        for &f in &functions {
            problems.push(ProblemSpec::suite(f, d));
        }
    }
    let cfg = ExperimentConfig {
        algorithms,
        problems,
        instances: a.instances,
        runs_per_instance: a.runs,
        cap: a.cap,
        cap_per_dim: None,
        target_error: a.err,
        master_seed: a.seed,
        worker_count: usage(a.workers.resolve())?,
        record_wall_time: !a.no_wall_time,
    };
    usage(cfg.validate().map_err(Into::into))?;
    let records = runtime(run_experiment_to_dir(&cfg, &a.out).with_context(|| format!("writing {}", a.out.display())))?;
    print_run_summary(&records, &a.out);
    Ok(())
}

fn cmd_clusters(a: ClusterArgs) -> std::result::Result<(), Failure> {
    let algorithms = usage(parse_algos(&a.algos))?;
    let kinds = usage(parse_kinds(&a.kinds))?;
    let sizes: Vec<usize> = usage(parse::int_list(&a.atoms))?;
    let mut cfg = usage(
        cluster_config(algorithms, &kinds, &sizes, a.runs, a.seed, usage(a.workers.resolve())?).map_err(Into::into),
    )?;
    cfg.record_wall_time = !a.no_wall_time;
    usage(cfg.validate().map_err(Into::into))?;

    let records = runtime(
        (|| -> Result<Vec<RunRecord>> {
            std::fs::create_dir_all(&a.out)?;
            let mut w = RecordWriter::create(&a.out.join(RECORDS_FILE))?;
            let recs = run_clusters(&cfg, |r| w.write(r))?;
            w.finish()?;
            Manifest::new(&cfg, recs.len()).write(&a.out)?;
            let report = make_reports(&recs, &ReportConfig::default())?;
            report.write(&a.out.join("report"))?;
            Ok(recs)
        })()
        .with_context(|| format!("writing {}", a.out.display())),
    )?;

    println!(
        "{:<8} {:>5} {:<8} {:>24} {:>12}",
        "problem", "D", "algo", "mean ± std", "best"
    );
    for row in cluster_table(&records) {
        println!(
            "{:<8} {:>5} {:<8} {:>24} {:>12.4}",
            row.problem,
            row.dim,
            row.algo,
            format!("{:.4} ± {:.4}", row.mean, row.std),
            row.best
        );
    }
    print_run_summary(&records, &a.out);
    Ok(())
}

/// Records and the cap stored alongside them, if any.
fn load_input(path: &Path) -> Result<(Vec<RunRecord>, Option<u64>)> {
    if path.is_dir() {
        let recs = read_records(&path.join(RECORDS_FILE))?;
        let cap = if path.join(MANIFEST_FILE).exists() {
            let m = Manifest::read(path)?;
            m.config.cap_per_dim.is_none().then_some(m.config.cap)
        } else {
            None
        };
        Ok((recs, cap))
    } else {
        Ok((read_records(path)?, None))
    }
}

fn cmd_analyze(a: AnalyzeArgs) -> std::result::Result<(), Failure> {
    let budgets = match &a.budgets {
        Some(s) => usage(parse::int_list::<u64>(s))?,
        None => DEFAULT_BUDGETS.to_vec(),
    };
    let targets = match &a.targets {
        Some(s) => usage(parse::float_list(s))?,
        None => DEFAULT_TARGETS.to_vec(),
    };
    if budgets.contains(&0) {
        return Err(Failure::Usage(anyhow::anyhow!("budgets must be at least 1")));
    }
    if !(a.alpha > 0.0 && a.alpha < 1.0) {
        return Err(Failure::Usage(anyhow::anyhow!("--alpha must lie in (0, 1)")));
    }

    let mut records = Vec::new();
    let mut caps = Vec::new();
    let mut bad = 0;
    for p in &a.inputs {
        match load_input(p) {
            Ok((r, cap)) => {
                records.extend(r);
                caps.push(cap);
            }
            Err(e) => {
                eprintln!("{}: {e}", p.display());
                bad += 1;
            }
        }
    }
    if records.is_empty() {
        return Err(Failure::Runtime(anyhow::anyhow!("no readable records")));
    }
    let manifest_cap = match caps.first() {
        Some(Some(c)) if caps.iter().all(|x| *x == Some(*c)) => Some(*c),
        _ => None,
    };
    let cfg = ReportConfig {
        budgets,
        targets,
        reference: a.reference.clone(),
        alpha: a.alpha,
        cap: a.cap.or(manifest_cap),
        ..ReportConfig::default()
    };
    let bundle = runtime(make_reports(&records, &cfg).map_err(Into::into))?;
    runtime(
        bundle
            .write(&a.out)
            .with_context(|| format!("writing {}", a.out.display())),
    )?;

    for w in &bundle.warnings {
        eprintln!("warning: {w}");
    }
    if let Some(f) = &bundle.friedman {
        println!("Friedman chi2 = {:.4}, p = {:.4e}", f.statistic, f.p_value);
    }
    if !bundle.ranks.is_empty() {
        println!("average ranks:");
        let mut ranks = bundle.ranks.clone();
        ranks.sort_by(|x, y| x.average_rank.total_cmp(&y.average_rank));
        for r in ranks {
            println!("  {:<8} {:.3}", r.algo, r.average_rank);
        }
    }
    println!("{} records analyzed; report in {}", records.len(), a.out.display());
    if bad > 0 {
        return Err(Failure::Runtime(anyhow::anyhow!("{bad} input(s) could not be read")));
    }
    Ok(())
}

fn cmd_list_problems() {
    let mut o = std::io::stdout().lock();
    let mut lines = vec![format!("{:<5} {:<24} group", "id", "name")];
    for f in SuiteFunction::all() {
        lines.push(format!("f{:<4} {:<24} {}", f.id(), f.base_name(), f.group()));
    }
    lines.push(String::new());
    lines.push("clusters: LJ_<N> (Lennard-Jones), MO_<N> (Morse), N in 2..=150, D = 3N".into());
    for l in lines {
        if writeln!(o, "{l}").is_err() {
            return;
        }
    }
}

fn cmd_timing(a: TimingArgs) -> std::result::Result<(), Failure> {
    let cfg = TimingConfig {
        algorithms: usage(parse_algos(&a.algos))?,
        fn_id: a.function,
        dims: usage(parse::int_list(&a.dims))?,
        evals: a.evals,
        reps: a.reps,
        seed: a.seed,
    };
    usage(SuiteFunction::new(a.function).map_err(Into::into))?;
    let rows = runtime(measure_timing(&cfg).map_err(Into::into))?;
    println!("seconds are hardware-dependent; overhead = time / random-search time");
    println!("{:<14} {:>5} {:>12} {:>10}", "algo", "D", "seconds", "overhead");
    for r in &rows {
        println!(
            "{:<14} {:>5} {:>12.4} {:>10.2}",
            r.algo, r.dim, r.mean_seconds, r.overhead
        );
    }
    if let Some(out) = &a.out {
        runtime((|| -> Result<()> {
            let f = std::fs::File::create(out)?;
            serde_json::to_writer_pretty(f, &rows)?;
            Ok(())
        })())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    env_logger::Builder::new().parse_filters(&cli.log).init();

    let result = match cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Clusters(a) => cmd_clusters(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::ListProblems => {
            cmd_list_problems();
            Ok(())
        }
        Command::Timing(a) => cmd_timing(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
