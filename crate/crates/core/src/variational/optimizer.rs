//! Budgeted Nelder-Mead simplex search.

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizeResult {
    /// Best point ever evaluated.
    pub params: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMead {
    /// Offset of the initial simplex vertices along each axis.
    pub initial_step: f64,
    pub reflection: f64,
    pub expansion: f64,
    pub contraction: f64,
    pub shrink: f64,
    /// Stop early once the simplex values span less than this.
    pub value_tolerance: f64,
}

impl Default for NelderMead {
    fn default() -> Self {
        NelderMead {
            initial_step: 0.5,
            reflection: 1.0,
            expansion: 2.0,
            contraction: 0.5,
            shrink: 0.5,
            value_tolerance: 1e-12,
        }
    }
}

struct Budgeted<F> {
    objective: F,
    budget: usize,
    used: usize,
    best: Option<(Vec<f64>, f64)>,
}

impl<F: FnMut(&[f64]) -> f64> Budgeted<F> {
    fn eval(&mut self, x: &[f64]) -> Option<f64> {
        if self.used >= self.budget {
            return None;
        }
        self.used += 1;
        let value = (self.objective)(x);
        if self.best.as_ref().is_none_or(|(_, b)| value < *b) {
            self.best = Some((x.to_vec(), value));
        }
        Some(value)
    }
}

/// Minimizes `objective` from `start` with the default Nelder-Mead settings.
pub fn optimize_params<F>(objective: F, start: &[f64], budget: usize) -> Result<OptimizeResult>
where
    F: FnMut(&[f64]) -> f64,
{
    NelderMead::default().minimize(objective, start, budget)
}

impl NelderMead {
    /// Never calls `objective` more than `budget` times; `budget` must cover
    /// the `dim + 1` simplex vertices.
    pub fn minimize<F>(&self, objective: F, start: &[f64], budget: usize) -> Result<OptimizeResult>
    where
        F: FnMut(&[f64]) -> f64,
    {
        let dim = start.len();
        if budget < dim + 1 {
            return Err(Error::BudgetTooSmall {
                budget,
                required: dim + 1,
            });
        }
        let mut f = Budgeted {
            objective,
            budget,
            used: 0,
            best: None,
        };

        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
        for i in 0..=dim {
            let mut x = start.to_vec();
            if i > 0 {
                x[i - 1] += self.initial_step;
            }
            let v = f.eval(&x).expect("budget covers the initial simplex");
            simplex.push((x, v));
        }

        'outer: loop {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            if simplex[dim].1 - simplex[0].1 <= self.value_tolerance {
                break;
            }
            let centroid: Vec<f64> = (0..dim)
                .map(|k| simplex[..dim].iter().map(|(x, _)| x[k]).sum::<f64>() / dim as f64)
                .collect();
            let worst = simplex[dim].clone();
            let along = |t: f64| -> Vec<f64> { centroid.iter().zip(&worst.0).map(|(c, w)| c + t * (c - w)).collect() };

            let reflected = along(self.reflection);
            let Some(fr) = f.eval(&reflected) else { break };
            if fr < simplex[0].1 {
                let expanded = along(self.reflection * self.expansion);
                let Some(fe) = f.eval(&expanded) else { break };
                simplex[dim] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
                continue;
            }
            if fr < simplex[dim - 1].1 {
                simplex[dim] = (reflected, fr);
                continue;
            }
            let (contracted, fc) = if fr < worst.1 {
                let x = along(self.reflection * self.contraction);
                let Some(v) = f.eval(&x) else { break };
                (x, v)
            } else {
                let x = along(-self.contraction);
                let Some(v) = f.eval(&x) else { break };
                (x, v)
            };
            if fc < worst.1.min(fr) {
                simplex[dim] = (contracted, fc);
                continue;
            }
            let anchor = simplex[0].0.clone();
            for vertex in simplex.iter_mut().skip(1) {
                let x: Vec<f64> = anchor
                    .iter()
                    .zip(&vertex.0)
                    .map(|(a, v)| a + self.shrink * (v - a))
                    .collect();
                let Some(v) = f.eval(&x) else { break 'outer };
                *vertex = (x, v);
            }
        }

        let (params, value) = f.best.expect("at least one evaluation");
        Ok(OptimizeResult {
            params,
            value,
            evaluations: f.used,
        })
    }
}
