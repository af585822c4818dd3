//! Quantum local search (QLS) for two-community modularity maximization.
//!
//! A run starts from a random spin assignment and repeatedly picks the
//! vertices with the highest single-flip modularity gain, freezes the rest of
//! the graph as boundary conditions, and hands the resulting small Ising
//! problem to a pluggable solver. Improving moves are applied incrementally;
//! the search stops after a fixed number of consecutive non-improving
//! iterations.
//!
//! Three subproblem backends ship with the crate:
//!
//! - [`solver::ExactSolver`]: certified optimum by enumeration (branch and
//!   bound above the enumeration limit).
//! - [`solver::AnnealSolver`]: best-of-N simulated annealing, a classical
//!   stand-in for a quantum annealer.
//! - [`variational::VariationalSolver`]: a statevector simulation of a
//!   layered Ry/Rz ansatz tuned by Nelder-Mead and then sampled.

pub mod error;
pub mod graph;
pub mod ising;
pub mod modularity;
pub mod qls;
pub mod seed;
pub mod solver;
pub mod subproblem;
pub mod variational;

pub use error::{Error, Result};
pub use graph::{generate_planted_partition, load_edge_list, EdgeList, Graph, PlantedPartition};
pub use ising::{Coupling, IsingModel};
pub use modularity::{flip_gain, init_gains, modularity, GainTable, SpinAssignment};
pub use qls::{initial_guess, populate_subset, run_qls, run_qls_with, ConvergedReason, QlsConfig, RunRecord};
pub use solver::{
    AnnealSchedule, AnnealSolver, ExactSolver, SolverKind, SolverOptions, SolverResult, SubproblemSolver,
};
pub use subproblem::{build_subproblem, to_ising, Subproblem};
pub use variational::{AnsatzParams, StateVector, VariationalSolver};
