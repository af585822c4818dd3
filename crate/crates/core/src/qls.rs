//! The local-search loop.
//!
//! ```text
//! solution = initial_guess(G)
//! while not converged:
//!     X = vertices with the highest flip gain
//!     candidate = solve the subproblem on X
//!     if candidate improves modularity: accept it
//! ```
//!
//! Convergence is `no_improve_limit` consecutive iterations without a strict
//! improvement, or `max_iterations` iterations in total.

use std::time::{Duration, Instant};

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::modularity::{init_gains, GainTable, SpinAssignment};
use crate::seed::{derive_seed, rng_from_seed};
use crate::solver::{duration_secs, SolverKind, SolverOptions, SubproblemSolver};
use crate::subproblem::{build_subproblem, to_ising};
use crate::{Error, Result};

/// Improvements at or below this are treated as ties.
pub const IMPROVEMENT_EPSILON: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QlsConfig {
    pub subset_size: usize,
    pub no_improve_limit: usize,
    pub max_iterations: usize,
    pub solver: SolverOptions,
    pub seed: u64,
}

impl QlsConfig {
    pub const DEFAULT_SUBSET_SIZE: usize = 16;
    pub const DEFAULT_NO_IMPROVE_LIMIT: usize = 3;
    pub const DEFAULT_MAX_ITERATIONS: usize = 1000;

    pub fn new(solver: SolverKind, seed: u64) -> Self {
        QlsConfig {
            subset_size: Self::DEFAULT_SUBSET_SIZE,
            no_improve_limit: Self::DEFAULT_NO_IMPROVE_LIMIT,
            max_iterations: Self::DEFAULT_MAX_ITERATIONS,
            solver: SolverOptions::new(solver),
            seed,
        }
    }

    pub fn with_subset_size(mut self, subset_size: usize) -> Self {
        self.subset_size = subset_size;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.subset_size == 0 {
            return Err(Error::ConfigInvalid("subset_size must be at least 1".into()));
        }
        if self.no_improve_limit == 0 {
            return Err(Error::ConfigInvalid("no_improve_limit must be at least 1".into()));
        }
        if self.max_iterations == 0 {
            return Err(Error::ConfigInvalid("max_iterations must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConvergedReason {
    NoImprove,
    MaxIter,
}

impl ConvergedReason {
    pub fn as_str(self) -> &'static str {
        match self {
            ConvergedReason::NoImprove => "no_improve",
            ConvergedReason::MaxIter => "max_iter",
        }
    }
}

/// Everything recorded about one seeded run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub seed: u64,
    pub solver: String,
    pub n: usize,
    pub m: usize,
    pub requested_subset_size: usize,
    /// `min(requested_subset_size, n)`
    pub subset_size: usize,
    pub initial_assignment: SpinAssignment,
    pub initial_modularity: f64,
    /// Modularity after each iteration's acceptance decision.
    pub modularity_trajectory: Vec<f64>,
    pub accepted: Vec<bool>,
    pub subsets: Vec<Vec<usize>>,
    pub final_assignment: SpinAssignment,
    pub final_modularity: f64,
    pub iterations: usize,
    pub accepted_moves: usize,
    pub converged_reason: ConvergedReason,
    /// Solver calls; one per iteration.
    pub solver_calls: usize,
    pub solver_evaluations: u64,
    /// Largest gap seen between the predicted gain of an accepted move and
    /// the modularity change actually applied.
    pub max_acceptance_error: f64,
    #[serde(rename = "solver_wall_time_s", with = "duration_secs")]
    pub solver_wall_time: Duration,
    #[serde(rename = "wall_time_s", with = "duration_secs")]
    pub wall_time: Duration,
}

/// Uniformly random spins, reproducible from `seed`.
pub fn initial_guess(g: &Graph, seed: u64) -> SpinAssignment {
    let mut rng = rng_from_seed(seed);
    let spins = (0..g.n()).map(|_| if rng.random::<bool>() { 1 } else { -1 }).collect();
    SpinAssignment::new(spins).expect("only +-1 generated")
}

/// The `min(k, n)` vertices with the largest flip gain, ties going to the
/// smaller id, returned in ascending order.
pub fn populate_subset(table: &GainTable, k: usize) -> Vec<usize> {
    let n = table.len();
    let k = k.min(n);
    let mut order: Vec<usize> = (0..n).collect();
    let key = |v: usize| (std::cmp::Reverse(table.gain_key(v)), v);
    if k < n {
        order.select_nth_unstable_by_key(k, |&v| key(v));
        order.truncate(k);
    }
    order.sort_unstable();
    order
}

/// Runs the local search with the backend described by `cfg.solver`.
pub fn run_qls(g: &Graph, cfg: &QlsConfig) -> Result<RunRecord> {
    let solver = cfg.solver.build();
    run_qls_with(g, cfg, solver.as_ref())
}

/// Runs the local search with an explicit backend; `cfg.solver` is ignored.
pub fn run_qls_with(g: &Graph, cfg: &QlsConfig, solver: &dyn SubproblemSolver) -> Result<RunRecord> {
    cfg.validate()?;
    let start = Instant::now();
    let initial = initial_guess(g, cfg.seed);
    let mut spins = initial.clone();
    let mut table = init_gains(g, &spins)?;
    let initial_modularity = table.modularity();
    let k = cfg.subset_size.min(g.n());

    let mut trajectory = Vec::new();
    let mut accepted = Vec::new();
    let mut subsets = Vec::new();
    let mut stall = 0;
    let mut solver_evaluations = 0;
    let mut solver_wall_time = Duration::ZERO;
    let mut max_acceptance_error: f64 = 0.0;

    let converged_reason = loop {
        if stall >= cfg.no_improve_limit {
            break ConvergedReason::NoImprove;
        }
        if trajectory.len() >= cfg.max_iterations {
            break ConvergedReason::MaxIter;
        }
        let iteration = trajectory.len() as u64;
        let subset = populate_subset(&table, k);
        let sub = build_subproblem(g, &spins, &subset)?;
        let model = to_ising(&sub);
        let result = solver.solve(&model, derive_seed(cfg.seed, iteration + 1))?;
        solver_evaluations += result.evaluations;
        solver_wall_time += result.wall_time;

        let predicted = sub.modularity_delta(&result.spins)?;
        let improved = predicted > IMPROVEMENT_EPSILON;
        if improved {
            let applied = table.apply_move(g, &mut spins, sub.subset(), &result.spins)?;
            max_acceptance_error = max_acceptance_error.max((applied - predicted).abs());
            stall = 0;
        } else {
            stall += 1;
        }
        trajectory.push(table.modularity());
        accepted.push(improved);
        subsets.push(sub.subset().to_vec());
    };

    let iterations = trajectory.len();
    Ok(RunRecord {
        seed: cfg.seed,
        solver: solver.name().to_string(),
        n: g.n(),
        m: g.m(),
        requested_subset_size: cfg.subset_size,
        subset_size: k,
        initial_assignment: initial,
        initial_modularity,
        final_modularity: table.modularity(),
        modularity_trajectory: trajectory,
        accepted_moves: accepted.iter().filter(|&&a| a).count(),
        accepted,
        subsets,
        final_assignment: spins,
        iterations,
        converged_reason,
        solver_calls: iterations,
        solver_evaluations,
        max_acceptance_error,
        solver_wall_time,
        wall_time: start.elapsed(),
    })
}
