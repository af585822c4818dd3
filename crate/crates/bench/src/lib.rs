//! Fixed inputs for the criterion benchmarks.

use qls_core::seed::rng_from_seed;
use qls_core::{generate_planted_partition, initial_guess, Graph, IsingModel, SpinAssignment};
use rand::Rng;

/// Two-block planted-partition graph with a deterministic draw.
pub fn planted(n: usize) -> Graph {
    generate_planted_partition(n, 0.1, 0.01, 7)
        .expect("valid parameters")
        .graph
}

/// Graph plus a reproducible random assignment.
pub fn planted_with_spins(n: usize) -> (Graph, SpinAssignment) {
    let g = planted(n);
    let s = initial_guess(&g, 3);
    (g, s)
}

/// Fully connected model with couplings and fields uniform in `[-1, 1]`.
pub fn dense_model(n_vars: usize, seed: u64) -> IsingModel {
    let mut rng = rng_from_seed(seed);
    let couplings: Vec<_> = (0..n_vars)
        .flat_map(|p| (p + 1..n_vars).map(move |q| (p, q)))
        .map(|(p, q)| (p, q, rng.random_range(-1.0..=1.0)))
        .collect();
    let h = (0..n_vars).map(|_| rng.random_range(-1.0..=1.0)).collect();
    IsingModel::new(n_vars, couplings, h).expect("valid model")
}
