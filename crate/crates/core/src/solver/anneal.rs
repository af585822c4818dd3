//! Best-of-N simulated annealing.
//!
//! Each restart starts from uniformly random spins and runs single-spin
//! Metropolis sweeps down a geometric temperature ladder. The lowest-energy
//! configuration seen across all restarts is returned. Restart `r` draws from
//! its own stream `derive_seed(seed, r)`.

use std::time::Instant;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::{SolverResult, SubproblemSolver};
use crate::ising::IsingModel;
use crate::seed::{derive_seed, rng_from_seed};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnnealSchedule {
    sweeps: usize,
    t_initial: f64,
    t_final: f64,
    samples: usize,
}

impl AnnealSchedule {
    pub const DEFAULT_SWEEPS: usize = 100;
    pub const DEFAULT_SAMPLES: usize = 10_000;
    pub const DEFAULT_T_FINAL: f64 = 0.01;

    pub fn new(sweeps: usize, t_initial: f64, t_final: f64, samples: usize) -> Result<Self> {
        if sweeps == 0 {
            return Err(Error::InvalidSchedule("sweeps must be at least 1".into()));
        }
        if samples == 0 {
            return Err(Error::InvalidSchedule("samples must be at least 1".into()));
        }
        if !(t_final > 0.0 && t_final.is_finite() && t_initial.is_finite() && t_initial >= t_final) {
            return Err(Error::InvalidSchedule(format!(
                "need t_initial >= t_final > 0, got t_initial={t_initial}, t_final={t_final}"
            )));
        }
        Ok(AnnealSchedule {
            sweeps,
            t_initial,
            t_final,
            samples,
        })
    }

    pub fn sweeps(&self) -> usize {
        self.sweeps
    }

    pub fn t_initial(&self) -> f64 {
        self.t_initial
    }

    pub fn t_final(&self) -> f64 {
        self.t_final
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn with_samples(self, samples: usize) -> Result<Self> {
        Self::new(self.sweeps, self.t_initial, self.t_final, samples)
    }

    pub fn with_sweeps(self, sweeps: usize) -> Result<Self> {
        Self::new(sweeps, self.t_initial, self.t_final, self.samples)
    }

    /// Temperature of each sweep, `t_initial` down to `t_final` geometrically.
    pub fn temperatures(&self) -> Vec<f64> {
        if self.sweeps == 1 {
            return vec![self.t_final];
        }
        let ratio = self.t_final / self.t_initial;
        let last = (self.sweeps - 1) as f64;
        (0..self.sweeps)
            .map(|k| self.t_initial * ratio.powf(k as f64 / last))
            .collect()
    }
}

/// 100 sweeps from `2 * max|coefficient|` down to 0.01, 10 000 samples.
pub fn default_schedule(model: &IsingModel) -> AnnealSchedule {
    let t_final = AnnealSchedule::DEFAULT_T_FINAL;
    let t_initial = (2.0 * model.max_abs_coefficient()).max(t_final);
    AnnealSchedule::new(
        AnnealSchedule::DEFAULT_SWEEPS,
        t_initial,
        t_final,
        AnnealSchedule::DEFAULT_SAMPLES,
    )
    .expect("default schedule is valid")
}

/// Annealer with optional overrides of the default schedule.
#[derive(Debug, Clone, Copy, Default)]
pub struct AnnealSolver {
    pub samples: Option<usize>,
    pub sweeps: Option<usize>,
}

impl AnnealSolver {
    pub fn schedule_for(&self, model: &IsingModel) -> Result<AnnealSchedule> {
        let mut schedule = default_schedule(model);
        if let Some(samples) = self.samples {
            schedule = schedule.with_samples(samples)?;
        }
        if let Some(sweeps) = self.sweeps {
            schedule = schedule.with_sweeps(sweeps)?;
        }
        Ok(schedule)
    }
}

impl SubproblemSolver for AnnealSolver {
    fn name(&self) -> &'static str {
        "anneal"
    }

    fn solve(&self, model: &IsingModel, seed: u64) -> Result<SolverResult> {
        solve_anneal(model, &self.schedule_for(model)?, seed)
    }
}

/// Uphill moves costlier than this many `T` are always rejected.
const MAX_BOLTZMANN_EXPONENT: f64 = 40.0;

pub fn solve_anneal(model: &IsingModel, schedule: &AnnealSchedule, seed: u64) -> Result<SolverResult> {
    // re-validate: the fields are private but the type is deserializable
    let schedule = AnnealSchedule::new(schedule.sweeps, schedule.t_initial, schedule.t_final, schedule.samples)?;
    let start = Instant::now();
    let n = model.n_vars();
    let dense = model.dense_couplings();
    let temperatures = schedule.temperatures();

    let mut best_spins = vec![1i8; n];
    let mut best_energy = f64::INFINITY;
    let mut spins = vec![0i8; n];
    let mut fields = vec![0.0; n];

    for restart in 0..schedule.samples {
        let mut rng = rng_from_seed(derive_seed(seed, restart as u64));
        for s in spins.iter_mut() {
            *s = if rng.random::<bool>() { 1 } else { -1 };
        }
        for p in 0..n {
            let row = &dense[p * n..(p + 1) * n];
            fields[p] = model.h()[p] + row.iter().zip(&spins).map(|(j, &s)| j * f64::from(s)).sum::<f64>();
        }
        let mut energy = model.energy_unchecked(&spins);
        if energy < best_energy {
            best_energy = energy;
            best_spins.copy_from_slice(&spins);
        }

        for &t in &temperatures {
            for p in 0..n {
                let old = f64::from(spins[p]);
                let delta = -2.0 * old * fields[p];
                let accept = delta <= 0.0 || {
                    let x = delta / t;
                    x < MAX_BOLTZMANN_EXPONENT && rng.random::<f64>() < (-x).exp()
                };
                if !accept {
                    continue;
                }
                spins[p] = -spins[p];
                energy += delta;
                let row = &dense[p * n..(p + 1) * n];
                for (f, j) in fields.iter_mut().zip(row) {
                    *f -= 2.0 * old * j;
                }
                if energy < best_energy {
                    best_energy = energy;
                    best_spins.copy_from_slice(&spins);
                }
            }
        }
    }

    Ok(SolverResult {
        energy: model.energy_unchecked(&best_spins),
        spins: best_spins,
        evaluations: schedule.samples as u64,
        solver_name: "anneal".to_string(),
        wall_time: start.elapsed(),
    })
}
