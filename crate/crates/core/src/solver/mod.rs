//! Subproblem solvers.
//!
//! Every backend minimizes an [`IsingModel`] and is stateless between calls,
//! so the local search can swap them freely.

mod anneal;
mod exact;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::ising::IsingModel;
use crate::variational::VariationalSolver;
use crate::{Error, Result};

pub use anneal::{default_schedule, solve_anneal, AnnealSchedule, AnnealSolver};
pub use exact::{solve_exact, ExactSolver, ENUMERATION_LIMIT, EXACT_LIMIT};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverResult {
    /// Best configuration found.
    pub spins: Vec<i8>,
    /// `model.energy(&spins)`
    pub energy: f64,
    /// Objective evaluations, samples or search nodes, depending on backend.
    pub evaluations: u64,
    pub solver_name: String,
    #[serde(with = "duration_secs")]
    pub wall_time: Duration,
}

pub trait SubproblemSolver: Send + Sync {
    fn name(&self) -> &'static str;

    /// Minimizes `model`. Results depend only on `(model, seed)`.
    fn solve(&self, model: &IsingModel, seed: u64) -> Result<SolverResult>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    Exact,
    Anneal,
    Variational,
}

impl SolverKind {
    pub const ALL: [SolverKind; 3] = [SolverKind::Exact, SolverKind::Anneal, SolverKind::Variational];

    pub fn name(self) -> &'static str {
        match self {
            SolverKind::Exact => "exact",
            SolverKind::Anneal => "anneal",
            SolverKind::Variational => "variational",
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SolverKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownSolver(s.to_string()))
    }
}

/// Backend choice plus the knobs each backend understands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    pub kind: SolverKind,
    /// Annealer restarts; defaults to the schedule's sample count.
    pub anneal_samples: Option<usize>,
    /// Annealer sweeps per restart; defaults to the schedule's sweep count.
    pub anneal_sweeps: Option<usize>,
    /// Entangling layers of the variational ansatz.
    pub depth: usize,
    /// Objective evaluations allowed to the variational optimizer.
    pub opt_budget: usize,
    /// Measurements drawn from the optimized variational state.
    pub shots: usize,
}

impl SolverOptions {
    pub fn new(kind: SolverKind) -> Self {
        SolverOptions {
            kind,
            anneal_samples: None,
            anneal_sweeps: None,
            depth: VariationalSolver::DEFAULT_DEPTH,
            opt_budget: VariationalSolver::DEFAULT_BUDGET,
            shots: VariationalSolver::DEFAULT_SHOTS,
        }
    }

    pub fn build(&self) -> Box<dyn SubproblemSolver> {
        match self.kind {
            SolverKind::Exact => Box::new(ExactSolver),
            SolverKind::Anneal => Box::new(AnnealSolver {
                samples: self.anneal_samples,
                sweeps: self.anneal_sweeps,
            }),
            SolverKind::Variational => Box::new(VariationalSolver {
                depth: self.depth,
                budget: self.opt_budget,
                shots: self.shots,
            }),
        }
    }
}

pub(crate) mod duration_secs {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        let secs = f64::deserialize(d)?;
        Duration::try_from_secs_f64(secs).map_err(serde::de::Error::custom)
    }
}
