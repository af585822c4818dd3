//! Graph sources, seeded run fan-out, and the row types written by `bench`
//! and `sweep`.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use qls_core::{
    generate_planted_partition, load_edge_list, run_qls, ConvergedReason, Graph, QlsConfig, RunRecord, SolverKind,
};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::output::round_sig;

/// Where a graph comes from: an edge-list file or a planted-partition draw
/// written `planted:N:P_IN:P_OUT:SEED`.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphSource {
    File(PathBuf),
    Planted { n: usize, p_in: f64, p_out: f64, seed: u64 },
}

impl FromStr for GraphSource {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let Some(spec) = s.strip_prefix("planted:") else {
            return Ok(GraphSource::File(PathBuf::from(s)));
        };
        let usage = || format!("expected planted:N:P_IN:P_OUT:SEED, got {s:?}");
        let parts: Vec<&str> = spec.split(':').collect();
        let [n, p_in, p_out, seed] = parts[..] else {
            return Err(usage());
        };
        Ok(GraphSource::Planted {
            n: n.parse().map_err(|_| usage())?,
            p_in: p_in.parse().map_err(|_| usage())?,
            p_out: p_out.parse().map_err(|_| usage())?,
            seed: seed.parse().map_err(|_| usage())?,
        })
    }
}

impl fmt::Display for GraphSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSource::File(path) => write!(f, "{}", path.display()),
            GraphSource::Planted { n, p_in, p_out, seed } => write!(f, "planted:{n}:{p_in}:{p_out}:{seed}"),
        }
    }
}

/// A graph ready to run, tagged with the id used in result rows.
#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub id: String,
    pub graph: Graph,
}

impl GraphSource {
    pub fn load(&self) -> Result<LoadedGraph, CliError> {
        let graph = match self {
            GraphSource::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path.display(), e))?;
                load_edge_list(&text)
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
                    .graph
            }
            &GraphSource::Planted { n, p_in, p_out, seed } => generate_planted_partition(n, p_in, p_out, seed)?.graph,
        };
        Ok(LoadedGraph {
            id: self.to_string(),
            graph,
        })
    }
}

/// One seeded search to execute.
#[derive(Debug, Clone)]
pub struct Job<'g> {
    pub graph: &'g LoadedGraph,
    pub config: QlsConfig,
}

/// A finished job.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub config: QlsConfig,
    pub result: Result<RunRecord, qls_core::Error>,
}

impl Outcome {
    pub fn solver(&self) -> SolverKind {
        self.config.solver.kind
    }
}

/// Worker count from `QLS_THREADS`, else the available parallelism.
pub fn worker_count() -> usize {
    std::env::var("QLS_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Applies `f` to every item on up to `threads` workers. Results keep the
/// input order whatever the scheduling.
pub fn parallel_map<T, R, F>(items: &[T], threads: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let threads = threads.clamp(1, items.len().max(1));
    if threads == 1 {
        return items.iter().map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let done = Mutex::new(Vec::with_capacity(items.len()));
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(item) = items.get(i) else { break };
                let r = f(item);
                done.lock().expect("worker panicked").push((i, r));
            });
        }
    });
    let mut done = done.into_inner().expect("worker panicked");
    done.sort_unstable_by_key(|(i, _)| *i);
    done.into_iter().map(|(_, r)| r).collect()
}

pub fn run_jobs(jobs: &[Job<'_>], threads: usize) -> Vec<Outcome> {
    parallel_map(jobs, threads, |job| Outcome {
        graph: job.graph.id.clone(),
        n: job.graph.graph.n(),
        m: job.graph.graph.m(),
        config: job.config.clone(),
        result: run_qls(&job.graph.graph, &job.config),
    })
}

/// Jobs for the full graphs x solvers x seeds product, in that nesting order.
/// Every solver sees the same seeds and therefore the same initial guesses.
pub fn bench_jobs<'g>(
    graphs: &'g [LoadedGraph],
    solvers: &[SolverKind],
    seeds: &[u64],
    template: &QlsConfig,
) -> Vec<Job<'g>> {
    let mut jobs = Vec::with_capacity(graphs.len() * solvers.len() * seeds.len());
    for graph in graphs {
        for &kind in solvers {
            for &seed in seeds {
                let mut config = template.clone();
                config.solver.kind = kind;
                config.seed = seed;
                jobs.push(Job { graph, config });
            }
        }
    }
    jobs
}

/// Jobs for every subset size x seed on one graph.
pub fn sweep_jobs<'g>(graph: &'g LoadedGraph, sizes: &[usize], seeds: &[u64], template: &QlsConfig) -> Vec<Job<'g>> {
    sizes
        .iter()
        .flat_map(|&size| {
            seeds.iter().map(move |&seed| {
                let mut config = template.clone().with_subset_size(size);
                config.seed = seed;
                Job { graph, config }
            })
        })
        .collect()
}

fn status(result: &Result<RunRecord, qls_core::Error>) -> String {
    match result {
        Ok(_) => "ok".into(),
        Err(e) => format!("error: {e}"),
    }
}

/// One `bench` result. Reals are kept at twelve significant digits so a row
/// survives a trip through its text form unchanged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub solver: SolverKind,
    pub seed: u64,
    pub modularity: Option<f64>,
    pub iterations: Option<usize>,
    pub accepted_moves: Option<usize>,
    pub wall_time_s: Option<f64>,
    pub converged_reason: Option<ConvergedReason>,
    pub status: String,
}

impl From<&Outcome> for ResultRow {
    fn from(o: &Outcome) -> Self {
        let record = o.result.as_ref().ok();
        ResultRow {
            graph: o.graph.clone(),
            n: o.n,
            m: o.m,
            solver: o.solver(),
            seed: o.config.seed,
            modularity: record.map(|r| round_sig(r.final_modularity)),
            iterations: record.map(|r| r.iterations),
            accepted_moves: record.map(|r| r.accepted_moves),
            wall_time_s: record.map(|r| round_sig(r.wall_time.as_secs_f64())),
            converged_reason: record.map(|r| r.converged_reason),
            status: status(&o.result),
        }
    }
}

/// One `sweep` result; `clamped` marks a requested size larger than the graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub solver: SolverKind,
    pub subset_size: usize,
    pub effective_subset_size: usize,
    pub clamped: bool,
    pub seed: u64,
    pub iterations: Option<usize>,
    pub modularity: Option<f64>,
    pub accepted_moves: Option<usize>,
    pub wall_time_s: Option<f64>,
    pub converged_reason: Option<ConvergedReason>,
    pub status: String,
}

impl From<&Outcome> for SweepRow {
    fn from(o: &Outcome) -> Self {
        let record = o.result.as_ref().ok();
        let requested = o.config.subset_size;
        SweepRow {
            graph: o.graph.clone(),
            n: o.n,
            m: o.m,
            solver: o.solver(),
            subset_size: requested,
            effective_subset_size: requested.min(o.n),
            clamped: requested > o.n,
            seed: o.config.seed,
            iterations: record.map(|r| r.iterations),
            modularity: record.map(|r| round_sig(r.final_modularity)),
            accepted_moves: record.map(|r| r.accepted_moves),
            wall_time_s: record.map(|r| round_sig(r.wall_time.as_secs_f64())),
            converged_reason: record.map(|r| r.converged_reason),
            status: status(&o.result),
        }
    }
}
