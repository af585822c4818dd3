//! Statevector emulation of a variational Ising solver.
//!
//! The pipeline draws initial angles uniformly from `[-pi, pi]`, tunes them
//! with a budgeted Nelder-Mead search on the energy expectation, samples the
//! tuned state, and reports the lowest-energy sampled bitstring. Basis index
//! bit `q` maps to spin `1 - 2b` of variable `q`.

mod ansatz;
mod optimizer;
mod statevector;

use std::f64::consts::PI;
use std::time::Instant;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng as _;

use crate::ising::IsingModel;
use crate::seed::{derive_seed, rng_from_seed};
use crate::solver::{SolverResult, SubproblemSolver};
use crate::{Error, Result};

pub use ansatz::{prepare_state, AnsatzParams};
pub use optimizer::{optimize_params, NelderMead, OptimizeResult};
pub use statevector::{compose, ry_gate, rz_gate, Gate, StateVector};

/// Energy of every basis state, indexed by bit pattern.
pub fn diagonal_energies(model: &IsingModel) -> Result<Vec<f64>> {
    let n = model.n_vars();
    if n > StateVector::MAX_QUBITS {
        return Err(Error::TooManyQubits {
            found: n,
            limit: StateVector::MAX_QUBITS,
        });
    }
    Ok((0..1u64 << n).map(|z| model.energy_of_bits(z)).collect())
}

/// `<psi| H |psi>` for the diagonal Ising Hamiltonian of `model`.
pub fn expectation(state: &StateVector, model: &IsingModel) -> Result<f64> {
    if state.n_qubits() != model.n_vars() {
        return Err(Error::SizeMismatch {
            qubits: state.n_qubits(),
            vars: model.n_vars(),
        });
    }
    let diagonal = diagonal_energies(model)?;
    Ok(expectation_with(state, &diagonal))
}

fn expectation_with(state: &StateVector, diagonal: &[f64]) -> f64 {
    state
        .amplitudes()
        .iter()
        .zip(diagonal)
        .map(|(a, e)| a.norm_sqr() * e)
        .sum()
}

/// `count` independent measurements in the computational basis, as basis
/// indices.
pub fn sample(state: &StateVector, count: usize, seed: u64) -> Vec<u64> {
    let dist = WeightedIndex::new(state.probabilities()).expect("a normalized state has positive weight");
    let mut rng = rng_from_seed(seed);
    (0..count).map(|_| dist.sample(&mut rng) as u64).collect()
}

/// Bitstring of basis index `z`, qubit `n - 1` leftmost.
pub fn bitstring(z: u64, n_qubits: usize) -> String {
    (0..n_qubits)
        .rev()
        .map(|q| if (z >> q) & 1 == 1 { '1' } else { '0' })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VariationalSolver {
    pub depth: usize,
    pub budget: usize,
    pub shots: usize,
}

impl VariationalSolver {
    pub const DEFAULT_DEPTH: usize = 1;
    pub const DEFAULT_BUDGET: usize = 100;
    pub const DEFAULT_SHOTS: usize = 10_000;
}

impl Default for VariationalSolver {
    fn default() -> Self {
        VariationalSolver {
            depth: Self::DEFAULT_DEPTH,
            budget: Self::DEFAULT_BUDGET,
            shots: Self::DEFAULT_SHOTS,
        }
    }
}

impl SubproblemSolver for VariationalSolver {
    fn name(&self) -> &'static str {
        "variational"
    }

    fn solve(&self, model: &IsingModel, seed: u64) -> Result<SolverResult> {
        solve_variational(model, self.depth, self.budget, self.shots, seed)
    }
}

/// A variational solve together with the measurements it was chosen from.
#[derive(Debug, Clone, PartialEq)]
pub struct VariationalRun {
    pub result: SolverResult,
    /// Measured basis indices, in draw order.
    pub samples: Vec<u64>,
    /// Energy expectation of the tuned state.
    pub tuned_expectation: f64,
}

pub fn solve_variational(
    model: &IsingModel,
    depth: usize,
    budget: usize,
    shots: usize,
    seed: u64,
) -> Result<SolverResult> {
    run_variational(model, depth, budget, shots, seed).map(|run| run.result)
}

pub fn run_variational(
    model: &IsingModel,
    depth: usize,
    budget: usize,
    shots: usize,
    seed: u64,
) -> Result<VariationalRun> {
    let start = Instant::now();
    let n = model.n_vars();
    if shots == 0 {
        return Err(Error::ConfigInvalid(
            "variational solver needs at least one shot".into(),
        ));
    }
    let diagonal = diagonal_energies(model)?;

    let mut rng = rng_from_seed(derive_seed(seed, 0));
    let start_theta: Vec<f64> = (0..AnsatzParams::len_for(n, depth))
        .map(|_| rng.random_range(-PI..=PI))
        .collect();
    let objective = |theta: &[f64]| {
        let params = AnsatzParams::new(theta.to_vec(), depth);
        let state = prepare_state(n, &params).expect("parameter length fixed above");
        expectation_with(&state, &diagonal)
    };
    let tuned = optimize_params(objective, &start_theta, budget)?;

    let state = prepare_state(n, &AnsatzParams::new(tuned.params, depth))?;
    let samples = sample(&state, shots, derive_seed(seed, 1));
    let best = samples
        .iter()
        .copied()
        .min_by(|&a, &b| diagonal[a as usize].total_cmp(&diagonal[b as usize]).then(a.cmp(&b)))
        .expect("shots >= 1");
    let spins: Vec<i8> = (0..n).map(|p| 1 - 2 * ((best >> p) & 1) as i8).collect();

    let result = SolverResult {
        energy: model.energy_unchecked(&spins),
        spins,
        evaluations: tuned.evaluations as u64,
        solver_name: "variational".to_string(),
        wall_time: start.elapsed(),
    };
    Ok(VariationalRun {
        result,
        samples,
        tuned_expectation: tuned.value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::solve_exact;
    use num_complex::Complex64;

    fn uniform(n: usize) -> StateVector {
        let a = (1.0 / (1u64 << n) as f64).sqrt();
        StateVector::from_amplitudes(vec![Complex64::new(a, 0.0); 1 << n]).unwrap()
    }

    fn random_model(n: usize, seed: u64) -> IsingModel {
        let mut rng = rng_from_seed(seed);
        let couplings: Vec<_> = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| (p, q, rng.random_range(-1.0..1.0)))
            .collect();
        let h = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        IsingModel::new(n, couplings, h).unwrap()
    }

    #[test]
    fn uniform_superposition_has_zero_expectation() {
        let m = random_model(4, 1);
        assert!(expectation(&uniform(4), &m).unwrap().abs() < 1e-12);
    }

    #[test]
    fn basis_state_expectation() {
        let mut s = StateVector::zero(2).unwrap();
        s.ry(0, PI);
        s.ry(1, PI);
        let m = IsingModel::new(2, [(0, 1, -1.0)], vec![0.0; 2]).unwrap();
        assert!((expectation(&s, &m).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn weighted_expectation() {
        let s =
            StateVector::from_amplitudes(vec![Complex64::new(0.5, 0.0), Complex64::new(0.75f64.sqrt(), 0.0)]).unwrap();
        let m = IsingModel::new(1, [], vec![2.0]).unwrap();
        assert!((expectation(&s, &m).unwrap() + 1.0).abs() < 1e-12);
        let wrong = IsingModel::new(2, [], vec![2.0, 0.0]).unwrap();
        assert_eq!(
            expectation(&s, &wrong).unwrap_err(),
            Error::SizeMismatch { qubits: 1, vars: 2 }
        );
    }

    #[test]
    fn expectation_lies_between_extreme_energies() {
        for n in 1..=8 {
            let m = random_model(n, 10 + n as u64);
            let lowest = solve_exact(&m).unwrap().energy;
            let negated = IsingModel::new(
                n,
                m.couplings().iter().map(|c| (c.p, c.q, -c.value)),
                m.h().iter().map(|h| -h).collect(),
            )
            .unwrap();
            let highest = -solve_exact(&negated).unwrap().energy;
            let mut rng = rng_from_seed(n as u64);
            for _ in 0..5 {
                let theta = (0..AnsatzParams::len_for(n, 2))
                    .map(|_| rng.random_range(-PI..PI))
                    .collect();
                let state = prepare_state(n, &AnsatzParams::new(theta, 2)).unwrap();
                let e = expectation(&state, &m).unwrap();
                assert!(e >= lowest - 1e-9 && e <= highest + 1e-9);
            }
        }
    }

    #[test]
    fn sampling_basis_states() {
        let zero = StateVector::zero(1).unwrap();
        assert!(sample(&zero, 100, 3).iter().all(|&z| z == 0));
        let mut s = StateVector::zero(2).unwrap();
        s.ry(0, PI);
        s.cnot(0, 1);
        let outcomes = sample(&s, 5, 4);
        assert!(outcomes.iter().all(|&z| bitstring(z, 2) == "11"));
        assert_eq!(bitstring(0b01, 2), "01");
    }

    #[test]
    fn uniform_sampling_frequency() {
        let count = 100_000;
        let ones = sample(&uniform(1), count, 77).iter().filter(|&&z| z == 1).count() as f64;
        let sigma = (count as f64 * 0.25).sqrt();
        assert!((ones - count as f64 / 2.0).abs() < 3.0 * sigma);
    }

    #[test]
    fn sample_mean_matches_expectation() {
        let m = random_model(4, 5);
        let mut rng = rng_from_seed(6);
        let theta = (0..AnsatzParams::len_for(4, 1))
            .map(|_| rng.random_range(-PI..PI))
            .collect();
        let state = prepare_state(4, &AnsatzParams::new(theta, 1)).unwrap();
        let diagonal = diagonal_energies(&m).unwrap();
        let energies: Vec<f64> = sample(&state, 100_000, 8)
            .iter()
            .map(|&z| diagonal[z as usize])
            .collect();
        let count = energies.len() as f64;
        let mean = energies.iter().sum::<f64>() / count;
        let var = energies.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (count - 1.0);
        let exact = expectation(&state, &m).unwrap();
        assert!((mean - exact).abs() < 4.0 * (var / count).sqrt());
    }

    #[test]
    fn separable_model_reaches_ground_state() {
        let m = IsingModel::new(2, [], vec![1.0, 1.0]).unwrap();
        let r = solve_variational(&m, 1, 100, 10_000, 0).unwrap();
        assert_eq!(r.spins, vec![-1, -1]);
        assert_eq!(r.energy, -2.0);
        assert!(r.evaluations <= 100);
    }

    #[test]
    fn zero_model() {
        let m = IsingModel::new(3, [], vec![0.0; 3]).unwrap();
        assert_eq!(solve_variational(&m, 1, 100, 50, 1).unwrap().energy, 0.0);
    }

    #[test]
    fn reported_energy_is_best_sampled() {
        let m = random_model(5, 31);
        let r = solve_variational(&m, 1, 40, 200, 9).unwrap();
        assert!((m.energy(&r.spins).unwrap() - r.energy).abs() < 1e-12);
        assert!(r.energy >= solve_exact(&m).unwrap().energy - 1e-12);
        let again = solve_variational(&m, 1, 40, 200, 9).unwrap();
        assert_eq!(r.spins, again.spins);
        assert_eq!(r.evaluations, again.evaluations);
    }

    #[test]
    fn barbell_pair_model() {
        let m = IsingModel::new(2, [(0, 1, -5.0 / 7.0)], vec![4.0 / 7.0, 4.0 / 7.0]).unwrap();
        let hits = (0..50)
            .filter(|&seed| (solve_variational(&m, 1, 100, 10_000, seed).unwrap().energy + 13.0 / 7.0).abs() < 1e-9)
            .count();
        assert!(hits >= 40, "{hits}/50");
    }

    #[test]
    fn errors() {
        let big = IsingModel::new(21, [], vec![0.0; 21]).unwrap();
        assert!(matches!(
            solve_variational(&big, 1, 100, 1, 0),
            Err(Error::TooManyQubits { .. })
        ));
        let m = IsingModel::new(4, [], vec![1.0; 4]).unwrap();
        assert!(matches!(
            solve_variational(&m, 1, 10, 1, 0),
            Err(Error::BudgetTooSmall { .. })
        ));
    }
}
