//! Command-line front end and experiment harness for `qls-core`.
//!
//! `qls run` writes one [`qls_core::RunRecord`] as JSON; `qls bench` and
//! `qls sweep` fan seeded runs out over a worker pool sized by `QLS_THREADS`
//! and tabulate them; `qls generate` writes planted-partition edge lists.
//! Exit status is 2 for bad arguments, 3 for file or graph problems, and 4
//! for solver failures.

pub mod args;
pub mod error;
pub mod harness;
pub mod output;

pub use args::{BenchArgs, Cli, Command, Format, GenerateArgs, RunArgs, SearchArgs, SeedArgs, SweepArgs};
pub use error::CliError;
pub use harness::{GraphSource, LoadedGraph, Outcome, ResultRow, SweepRow};

use qls_core::{generate_planted_partition, run_qls, QlsConfig, SolverKind};

use crate::harness::{bench_jobs, run_jobs, sweep_jobs, worker_count};
use crate::output::{bench_summary, emit, sweep_summary, to_csv, to_json};

pub fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run(args) => cmd_run(&args),
        Command::Bench(args) => cmd_bench(&args),
        Command::Sweep(args) => cmd_sweep(&args),
        Command::Generate(args) => cmd_generate(&args),
    }
}

pub fn cmd_run(args: &RunArgs) -> Result<(), CliError> {
    let graph = args.graph.load()?;
    let cfg = args.search.config(args.solver, args.subset_size, args.seed);
    cfg.validate()?;
    let record = run_qls(&graph.graph, &cfg)?;
    emit(args.out.as_deref(), &to_json(&record)?)
}

fn template(search: &SearchArgs, subset_size: usize) -> Result<QlsConfig, CliError> {
    let cfg = search.config(SolverKind::Exact, subset_size, 0);
    cfg.validate()?;
    Ok(cfg)
}

fn finish(failed: usize, total: usize) -> Result<(), CliError> {
    if failed > 0 {
        Err(CliError::RunsFailed { failed, total })
    } else {
        Ok(())
    }
}

/// Every graph x solver x seed run, in that nesting order.
pub fn bench_outcomes(args: &BenchArgs) -> Result<Vec<Outcome>, CliError> {
    let seeds = args.seeds.resolve()?;
    if args.solvers.is_empty() {
        return Err(CliError::Usage("no solvers given".into()));
    }
    let template = template(&args.search, args.subset_size)?;
    let graphs = args
        .graphs
        .iter()
        .map(GraphSource::load)
        .collect::<Result<Vec<_>, _>>()?;
    let jobs = bench_jobs(&graphs, &args.solvers, &seeds, &template);
    Ok(run_jobs(&jobs, worker_count()))
}

pub fn bench_rows(args: &BenchArgs) -> Result<Vec<ResultRow>, CliError> {
    Ok(bench_outcomes(args)?.iter().map(ResultRow::from).collect())
}

pub fn cmd_bench(args: &BenchArgs) -> Result<(), CliError> {
    let rows = bench_rows(args)?;
    let bytes = match args.format {
        Format::Csv => to_csv(&rows)?,
        Format::Json => to_json(&rows)?,
    };
    emit(args.out.as_deref(), &bytes)?;
    eprint!("{}", bench_summary(&rows));
    finish(rows.iter().filter(|r| r.status != "ok").count(), rows.len())
}

/// Every subset size x seed run, in that nesting order.
pub fn sweep_outcomes(args: &SweepArgs) -> Result<Vec<Outcome>, CliError> {
    let seeds = args.seeds.resolve()?;
    if args.subset_sizes.is_empty() {
        return Err(CliError::Usage("no subset sizes given".into()));
    }
    let mut template = template(&args.search, 1)?;
    template.solver.kind = args.solver;
    for &size in &args.subset_sizes {
        template.clone().with_subset_size(size).validate()?;
    }
    let graph = args.source()?.load()?;
    let jobs = sweep_jobs(&graph, &args.subset_sizes, &seeds, &template);
    Ok(run_jobs(&jobs, worker_count()))
}

pub fn sweep_rows(args: &SweepArgs) -> Result<Vec<SweepRow>, CliError> {
    Ok(sweep_outcomes(args)?.iter().map(SweepRow::from).collect())
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<(), CliError> {
    let rows = sweep_rows(args)?;
    let bytes = match args.format {
        Format::Csv => to_csv(&rows)?,
        Format::Json => to_json(&rows)?,
    };
    emit(args.out.as_deref(), &bytes)?;
    eprint!("{}", sweep_summary(&rows));
    finish(rows.iter().filter(|r| r.status != "ok").count(), rows.len())
}

/// The edge-list text `generate` writes for these arguments.
pub fn generated_edge_list(args: &GenerateArgs) -> Result<Vec<u8>, CliError> {
    let planted = generate_planted_partition(args.n, args.p_in, args.p_out, args.seed)?;
    let mut bytes = Vec::new();
    planted
        .graph
        .write_edge_list(&mut bytes, &planted.header(args.p_in, args.p_out, args.seed))
        .map_err(|e| CliError::io("edge list", e))?;
    Ok(bytes)
}

pub fn cmd_generate(args: &GenerateArgs) -> Result<(), CliError> {
    emit(args.out.as_deref(), &generated_edge_list(args)?)
}
