use std::path::PathBuf;

use clap::builder::{PossibleValuesParser, TypedValueParser};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qls_core::{QlsConfig, SolverKind};

use crate::error::CliError;
use crate::harness::GraphSource;

#[derive(Debug, Parser)]
#[command(
    name = "qls",
    version,
    about = "Quantum local search for two-community modularity maximization"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one seeded search and write its record as JSON.
    Run(RunArgs),
    /// Run every graph x solver x seed combination and tabulate the results.
    Bench(BenchArgs),
    /// Record iterations to convergence across a ladder of subset sizes.
    Sweep(SweepArgs),
    /// Write a two-block planted-partition graph as an edge list.
    Generate(GenerateArgs),
}

fn solver_kind() -> impl TypedValueParser<Value = SolverKind> {
    PossibleValuesParser::new(SolverKind::ALL.map(SolverKind::name))
        .map(|name| name.parse::<SolverKind>().expect("parser only admits known names"))
}

/// Search and backend knobs shared by every command that runs the search.
#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    /// Stop after this many consecutive iterations without improvement.
    #[arg(long, default_value_t = QlsConfig::DEFAULT_NO_IMPROVE_LIMIT)]
    pub no_improve_limit: usize,
    /// Hard cap on iterations per run.
    #[arg(long, default_value_t = QlsConfig::DEFAULT_MAX_ITERATIONS)]
    pub max_iterations: usize,
    /// Samples per solve: annealer restarts or variational measurement shots.
    #[arg(long, default_value_t = 10_000)]
    pub shots: usize,
    /// Objective evaluations allowed to the variational optimizer.
    #[arg(long, default_value_t = 100)]
    pub opt_budget: usize,
    /// Entangling layers in the variational ansatz.
    #[arg(long, default_value_t = 1)]
    pub depth: usize,
    /// Metropolis sweeps per annealer restart [default: 100].
    #[arg(long)]
    pub sweeps: Option<usize>,
}

impl Default for SearchArgs {
    fn default() -> Self {
        SearchArgs {
            no_improve_limit: QlsConfig::DEFAULT_NO_IMPROVE_LIMIT,
            max_iterations: QlsConfig::DEFAULT_MAX_ITERATIONS,
            shots: 10_000,
            opt_budget: 100,
            depth: 1,
            sweeps: None,
        }
    }
}

impl SearchArgs {
    pub fn config(&self, kind: SolverKind, subset_size: usize, seed: u64) -> QlsConfig {
        let mut cfg = QlsConfig::new(kind, seed).with_subset_size(subset_size);
        cfg.no_improve_limit = self.no_improve_limit;
        cfg.max_iterations = self.max_iterations;
        cfg.solver.anneal_samples = Some(self.shots);
        cfg.solver.anneal_sweeps = self.sweeps;
        cfg.solver.shots = self.shots;
        cfg.solver.opt_budget = self.opt_budget;
        cfg.solver.depth = self.depth;
        cfg
    }
}

#[derive(Debug, Clone, Args)]
pub struct SeedArgs {
    /// Run seeds 0..N-1.
    #[arg(long, default_value_t = 30)]
    pub seeds: usize,
    /// Explicit comma-separated seeds, overriding --seeds.
    #[arg(long, value_delimiter = ',')]
    pub seed_list: Vec<u64>,
}

impl SeedArgs {
    pub fn resolve(&self) -> Result<Vec<u64>, CliError> {
        let seeds: Vec<u64> = if self.seed_list.is_empty() {
            (0..self.seeds as u64).collect()
        } else {
            self.seed_list.clone()
        };
        if seeds.is_empty() {
            return Err(CliError::Usage("no seeds to run".into()));
        }
        Ok(seeds)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Edge-list file, or planted:N:P_IN:P_OUT:SEED.
    #[arg(long)]
    pub graph: GraphSource,
    #[arg(long, value_parser = solver_kind())]
    pub solver: SolverKind,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = QlsConfig::DEFAULT_SUBSET_SIZE)]
    pub subset_size: usize,
    #[command(flatten)]
    pub search: SearchArgs,
    /// Output file [default: stdout].
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Edge-list file or planted:N:P_IN:P_OUT:SEED; repeat for several graphs.
    #[arg(long = "graph", required = true)]
    pub graphs: Vec<GraphSource>,
    /// Comma-separated solver names.
    #[arg(long, value_delimiter = ',', default_value = "exact", value_parser = solver_kind())]
    pub solvers: Vec<SolverKind>,
    #[command(flatten)]
    pub seeds: SeedArgs,
    #[arg(long, default_value_t = QlsConfig::DEFAULT_SUBSET_SIZE)]
    pub subset_size: usize,
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Output file [default: stdout].
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Edge-list file or planted spec; alternative to --n/--p-in/--p-out.
    #[arg(long, conflicts_with_all = ["n", "p_in", "p_out", "graph_seed"])]
    pub graph: Option<GraphSource>,
    /// Vertices of the generated planted-partition graph.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub p_in: Option<f64>,
    #[arg(long)]
    pub p_out: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub graph_seed: u64,
    #[arg(long, value_delimiter = ',', default_value = "4,8,16,32")]
    pub subset_sizes: Vec<usize>,
    #[arg(long, default_value = "exact", value_parser = solver_kind())]
    pub solver: SolverKind,
    #[command(flatten)]
    pub seeds: SeedArgs,
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Output file [default: stdout].
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl SweepArgs {
    pub fn source(&self) -> Result<GraphSource, CliError> {
        if let Some(graph) = &self.graph {
            return Ok(graph.clone());
        }
        match (self.n, self.p_in, self.p_out) {
            (Some(n), Some(p_in), Some(p_out)) => Ok(GraphSource::Planted {
                n,
                p_in,
                p_out,
                seed: self.graph_seed,
            }),
            _ => Err(CliError::Usage(
                "sweep needs --graph or all of --n, --p-in, --p-out".into(),
            )),
        }
    }
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p_in: f64,
    #[arg(long)]
    pub p_out: f64,
    #[arg(long)]
    pub seed: u64,
    /// Output file [default: stdout].
    #[arg(long)]
    pub out: Option<PathBuf>,
}
