//! Certified ground states.
//!
//! Up to [`ENUMERATION_LIMIT`] variables every configuration is visited in
//! Gray-code order with incremental local fields. Larger models (up to
//! [`EXACT_LIMIT`]) fall back to depth-first branch and bound.
//!
//! Either way, among configurations whose energies agree within the
//! tie tolerance the one with the smallest bit pattern wins, where variable
//! `p` contributes bit `p` and bit `b` means spin `1 - 2b`. That is the
//! configuration a plain count from pattern 0 upwards would report first.

use std::time::Instant;

use super::{SolverResult, SubproblemSolver};
use crate::ising::IsingModel;
use crate::{Error, Result};

pub const ENUMERATION_LIMIT: usize = 24;
pub const EXACT_LIMIT: usize = 64;

/// Incremental fields are recomputed from scratch this often.
const RESYNC_INTERVAL: u64 = 1 << 12;

#[derive(Debug, Clone, Copy, Default)]
pub struct ExactSolver;

impl SubproblemSolver for ExactSolver {
    fn name(&self) -> &'static str {
        "exact"
    }

    fn solve(&self, model: &IsingModel, _seed: u64) -> Result<SolverResult> {
        solve_exact(model)
    }
}

pub fn solve_exact(model: &IsingModel) -> Result<SolverResult> {
    let start = Instant::now();
    let n = model.n_vars();
    let (pattern, evaluations) = if n <= ENUMERATION_LIMIT {
        (enumerate(model), 1u64 << n)
    } else if n <= EXACT_LIMIT {
        BranchAndBound::new(model).run()
    } else {
        return Err(Error::TooManyVariables {
            found: n,
            limit: EXACT_LIMIT,
        });
    };
    let spins = spins_of(pattern, n);
    Ok(SolverResult {
        energy: model.energy_unchecked(&spins),
        spins,
        evaluations,
        solver_name: "exact".to_string(),
        wall_time: start.elapsed(),
    })
}

fn spins_of(pattern: u64, n: usize) -> Vec<i8> {
    (0..n).map(|p| 1 - 2 * ((pattern >> p) & 1) as i8).collect()
}

fn tie_tolerance(model: &IsingModel) -> f64 {
    let total: f64 =
        model.couplings().iter().map(|c| c.value.abs()).sum::<f64>() + model.h().iter().map(|h| h.abs()).sum::<f64>();
    1e-12 * (1.0 + total)
}

/// Local fields `h_p + sum_q J_pq s_q` and the energy of `spins`.
fn fields_and_energy(model: &IsingModel, dense: &[f64], spins: &[i8]) -> (Vec<f64>, f64) {
    let n = spins.len();
    let fields: Vec<f64> = (0..n)
        .map(|p| {
            let row = &dense[p * n..(p + 1) * n];
            model.h()[p] + row.iter().zip(spins).map(|(j, &s)| j * f64::from(s)).sum::<f64>()
        })
        .collect();
    (fields, model.energy_unchecked(spins))
}

fn enumerate(model: &IsingModel) -> u64 {
    let n = model.n_vars();
    if n == 0 {
        return 0;
    }
    let dense = model.dense_couplings();
    let tol = tie_tolerance(model);
    let mut spins = vec![1i8; n];
    let (mut fields, mut energy) = fields_and_energy(model, &dense, &spins);
    let mut best = (energy, 0u64);

    for step in 1..(1u64 << n) {
        let bit = step.trailing_zeros() as usize;
        let old = f64::from(spins[bit]);
        energy -= 2.0 * old * fields[bit];
        spins[bit] = -spins[bit];
        let row = &dense[bit * n..(bit + 1) * n];
        for (f, j) in fields.iter_mut().zip(row) {
            *f -= 2.0 * old * j;
        }
        if step % RESYNC_INTERVAL == 0 {
            (fields, energy) = fields_and_energy(model, &dense, &spins);
        }
        let pattern = step ^ (step >> 1);
        if energy < best.0 - tol || (energy <= best.0 + tol && pattern < best.1) {
            best = (energy, pattern);
        }
    }
    best.1
}

struct BranchAndBound<'a> {
    model: &'a IsingModel,
    n: usize,
    dense: Vec<f64>,
    /// Branching order: most constrained variables first.
    order: Vec<usize>,
    /// `free_pairs[d]`: sum of `|J|` over pairs within `order[d..]`.
    free_pairs: Vec<f64>,
    fields: Vec<f64>,
    spins: Vec<i8>,
    best_energy: f64,
    best_pattern: u64,
    tol: f64,
    nodes: u64,
}

impl<'a> BranchAndBound<'a> {
    fn new(model: &'a IsingModel) -> Self {
        let n = model.n_vars();
        let dense = model.dense_couplings();
        let strength = |p: usize| model.h()[p].abs() + dense[p * n..(p + 1) * n].iter().map(|j| j.abs()).sum::<f64>();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| strength(b).total_cmp(&strength(a)).then(a.cmp(&b)));
        let mut free_pairs = vec![0.0; n + 1];
        for d in (0..n).rev() {
            let v = order[d];
            let links: f64 = order[d + 1..].iter().map(|&u| dense[v * n + u].abs()).sum();
            free_pairs[d] = free_pairs[d + 1] + links;
        }
        BranchAndBound {
            model,
            n,
            fields: model.h().to_vec(),
            spins: vec![0; n],
            best_energy: f64::INFINITY,
            best_pattern: u64::MAX,
            tol: tie_tolerance(model),
            nodes: 0,
            dense,
            order,
            free_pairs,
        }
    }

    fn run(mut self) -> (u64, u64) {
        let (pattern, energy) = self.greedy_incumbent();
        self.best_pattern = pattern;
        self.best_energy = energy;
        self.search(0, self.model.offset());
        (self.best_pattern, self.nodes)
    }

    /// Single-flip descent from all spins up, used as the first incumbent.
    fn greedy_incumbent(&self) -> (u64, f64) {
        let n = self.n;
        let mut spins = vec![1i8; n];
        let (mut fields, _) = fields_and_energy(self.model, &self.dense, &spins);
        loop {
            let mut improved = false;
            for p in 0..n {
                if f64::from(spins[p]) * fields[p] > 0.0 {
                    let old = f64::from(spins[p]);
                    spins[p] = -spins[p];
                    for (q, field) in fields.iter_mut().enumerate() {
                        *field -= 2.0 * old * self.dense[q * n + p];
                    }
                    improved = true;
                }
            }
            if !improved {
                break;
            }
        }
        let pattern = spins
            .iter()
            .enumerate()
            .filter(|(_, &s)| s < 0)
            .fold(0u64, |acc, (p, _)| acc | 1 << p);
        (pattern, self.model.energy_unchecked(&spins))
    }

    fn search(&mut self, depth: usize, partial: f64) {
        self.nodes += 1;
        if depth == self.n {
            let pattern = self
                .spins
                .iter()
                .enumerate()
                .filter(|(_, &s)| s < 0)
                .fold(0u64, |acc, (p, _)| acc | 1 << p);
            if partial < self.best_energy - self.tol
                || (partial <= self.best_energy + self.tol && pattern < self.best_pattern)
            {
                self.best_energy = partial;
                self.best_pattern = pattern;
            }
            return;
        }
        let slack: f64 = self.order[depth..].iter().map(|&v| self.fields[v].abs()).sum();
        if partial - slack - self.free_pairs[depth] > self.best_energy + self.tol {
            return;
        }
        let v = self.order[depth];
        let first: i8 = if self.fields[v] > 0.0 { -1 } else { 1 };
        for spin in [first, -first] {
            let s = f64::from(spin);
            let energy = partial + s * self.fields[v];
            self.spins[v] = spin;
            for k in depth + 1..self.n {
                let u = self.order[k];
                self.fields[u] += self.dense[u * self.n + v] * s;
            }
            self.search(depth + 1, energy);
            for k in depth + 1..self.n {
                let u = self.order[k];
                self.fields[u] -= self.dense[u * self.n + v] * s;
            }
        }
        self.spins[v] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::rng_from_seed;
    use rand::Rng as _;

    fn random_model(n: usize, rng: &mut crate::seed::Rng) -> IsingModel {
        let couplings: Vec<_> = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| (p, q, rng.random_range(-1.0..1.0)))
            .collect();
        let h = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        IsingModel::new(n, couplings, h).unwrap()
    }

    /// Plain scan over patterns 0, 1, 2, ... keeping the first strict minimum.
    fn brute_force(model: &IsingModel) -> (u64, f64) {
        (0..1u64 << model.n_vars()).fold((0, f64::INFINITY), |best, z| {
            let e = model.energy_of_bits(z);
            if e < best.1 - 1e-12 {
                (z, e)
            } else {
                best
            }
        })
    }

    #[test]
    fn separable_model() {
        let m = IsingModel::new(3, [], vec![1.0, -2.0, 3.0]).unwrap();
        let r = solve_exact(&m).unwrap();
        assert_eq!(r.spins, vec![-1, 1, -1]);
        assert_eq!(r.energy, -6.0);
        assert_eq!(r.evaluations, 8);
        assert_eq!(r.solver_name, "exact");
    }

    #[test]
    fn barbell_pair_model() {
        let m = IsingModel::new(2, [(0, 1, -5.0 / 7.0)], vec![4.0 / 7.0, 4.0 / 7.0]).unwrap();
        let r = solve_exact(&m).unwrap();
        assert_eq!(r.spins, vec![-1, -1]);
        assert!((r.energy + 13.0 / 7.0).abs() < 1e-12);
    }

    #[test]
    fn ferromagnetic_tie_breaks_to_pattern_zero() {
        let m = IsingModel::new(3, [(0, 1, -1.0), (1, 2, -1.0)], vec![0.0; 3]).unwrap();
        let r = solve_exact(&m).unwrap();
        assert_eq!(r.energy, -2.0);
        assert_eq!(r.spins, vec![1, 1, 1]);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let mut rng = rng_from_seed(3);
        for n in 1..=12 {
            for _ in 0..5 {
                let m = random_model(n, &mut rng);
                let r = solve_exact(&m).unwrap();
                let (pattern, energy) = brute_force(&m);
                assert_eq!(r.spins, spins_of(pattern, n));
                assert!((r.energy - energy).abs() < 1e-9);
                for z in 0..1u64 << n {
                    assert!(r.energy <= m.energy_of_bits(z) + 1e-12);
                }
            }
        }
    }

    #[test]
    fn branch_and_bound_agrees_with_enumeration() {
        let mut rng = rng_from_seed(5);
        for n in [1, 2, 5, 9, 14, 18] {
            for _ in 0..4 {
                let m = random_model(n, &mut rng);
                let (pattern, nodes) = BranchAndBound::new(&m).run();
                assert!(nodes >= 1);
                assert_eq!(pattern, enumerate(&m), "n = {n}");
            }
        }
    }

    #[test]
    fn branch_and_bound_handles_ties() {
        let m = IsingModel::new(6, (0..5).map(|p| (p, p + 1, -1.0)), vec![0.0; 6]).unwrap();
        let (pattern, _) = BranchAndBound::new(&m).run();
        assert_eq!(pattern, 0);
    }

    #[test]
    fn large_models_use_branch_and_bound() {
        let mut rng = rng_from_seed(9);
        // |h| > sum of |J| per variable, so the field signs fix the optimum
        let n = 30;
        let couplings: Vec<_> = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| (p, q, rng.random_range(-0.1..0.1)))
            .collect();
        let h: Vec<f64> = (0..n)
            .map(|_| rng.random_range(3.0..5.0) * if rng.random() { 1.0 } else { -1.0 })
            .collect();
        let m = IsingModel::new(n, couplings, h.clone()).unwrap();
        let r = solve_exact(&m).unwrap();
        let expected: Vec<i8> = h.iter().map(|&x| if x > 0.0 { -1 } else { 1 }).collect();
        assert_eq!(r.spins, expected);
        assert!(r.evaluations < 1 << 20);
    }

    #[test]
    fn too_many_variables() {
        let m = IsingModel::new(65, [], vec![0.0; 65]).unwrap();
        assert_eq!(
            solve_exact(&m).unwrap_err(),
            Error::TooManyVariables { found: 65, limit: 64 }
        );
    }

    #[test]
    fn flip_symmetric_models_have_equal_optima() {
        let mut rng = rng_from_seed(21);
        for _ in 0..10 {
            let n = 8;
            let couplings: Vec<_> = (0..n)
                .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
                .map(|(p, q)| (p, q, rng.random_range(-1.0..1.0)))
                .collect();
            let m = IsingModel::new(n, couplings, vec![0.0; n]).unwrap();
            let r = solve_exact(&m).unwrap();
            let flipped: Vec<i8> = r.spins.iter().map(|s| -s).collect();
            assert!((m.energy(&flipped).unwrap() - r.energy).abs() < 1e-12);
        }
    }
}
