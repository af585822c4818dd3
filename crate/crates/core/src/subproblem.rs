//! Boundary-conditioned subproblems.
//!
//! Freezing every vertex outside a subset `X` turns modularity into
//!
//! ```text
//! Q(s) = sum_{p<q in X} 2 B_pq s_p s_q + sum_{p in X} C_p s_p,
//! C_p  = sum_{j not in X} 2 B_pj s_j
//! ```
//!
//! and `H(after) - H(before) = (Q(after) - Q(before)) / 4m` exactly. All
//! coefficients are multiples of `1/m`, so they are kept as integer
//! numerators and `m * Q` is evaluated without rounding.

use crate::graph::Graph;
use crate::ising::IsingModel;
use crate::modularity::SpinAssignment;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Subproblem {
    subset: Vec<usize>,
    incumbent: Vec<i8>,
    /// `(p, q, m * 2 B_{X[p] X[q]})` for `p < q`, zero entries omitted.
    quad: Vec<(usize, usize, i64)>,
    /// `m * C_p`
    linear: Vec<i64>,
    m: i64,
}

/// Builds the subproblem for `subset` with every other vertex frozen at its
/// spin in `s`. The subset is sorted ascending; local variable `p` is the
/// `p`-th smallest vertex id.
pub fn build_subproblem(g: &Graph, s: &SpinAssignment, subset: &[usize]) -> Result<Subproblem> {
    if s.len() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            found: s.len(),
        });
    }
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut subset = subset.to_vec();
    subset.sort_unstable();
    if let Some(&v) = subset.iter().find(|&&v| v >= g.n()) {
        return Err(Error::SubsetOutOfRange(v));
    }
    if let Some(w) = subset.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateVertex(w[0]));
    }

    let m = g.m() as i64;
    let spin = |v: usize| i64::from(s.get(v));
    let inside = |v: usize| subset.binary_search(&v).is_ok();
    let total_degree_sum: i64 = (0..g.n()).map(|v| g.degree(v) as i64 * spin(v)).sum();
    let subset_degree_sum: i64 = subset.iter().map(|&v| g.degree(v) as i64 * spin(v)).sum();
    let outside_degree_sum = total_degree_sum - subset_degree_sum;

    let linear = subset
        .iter()
        .map(|&v| {
            let outside_neighbors: i64 = g.neighbors(v).iter().filter(|&&j| !inside(j)).map(|&j| spin(j)).sum();
            2 * m * outside_neighbors - g.degree(v) as i64 * outside_degree_sum
        })
        .collect();

    let mut quad = Vec::new();
    for (p, &u) in subset.iter().enumerate() {
        for (q, &v) in subset.iter().enumerate().skip(p + 1) {
            let numerator = g.modularity_numerator(u, v);
            if numerator != 0 {
                quad.push((p, q, numerator));
            }
        }
    }

    Ok(Subproblem {
        incumbent: subset.iter().map(|&v| s.get(v)).collect(),
        subset,
        quad,
        linear,
        m,
    })
}

impl Subproblem {
    /// Global vertex ids, ascending.
    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn len(&self) -> usize {
        self.subset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subset.is_empty()
    }

    /// Current spins of the subset vertices.
    pub fn incumbent(&self) -> &[i8] {
        &self.incumbent
    }

    /// Pairwise coefficients `2 B_pq` for local `p < q`.
    pub fn quad(&self) -> Vec<(usize, usize, f64)> {
        let m = self.m as f64;
        self.quad.iter().map(|&(p, q, num)| (p, q, num as f64 / m)).collect()
    }

    /// Boundary terms `C_p`.
    pub fn linear(&self) -> Vec<f64> {
        let m = self.m as f64;
        self.linear.iter().map(|&num| num as f64 / m).collect()
    }

    /// Factor converting a change in the subproblem objective into a change
    /// in modularity: `1 / 4m`.
    pub fn scale(&self) -> f64 {
        1.0 / (4 * self.m) as f64
    }

    fn check(&self, local: &[i8]) -> Result<()> {
        if local.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: local.len(),
            });
        }
        if let Some(&bad) = local.iter().find(|&&x| x != 1 && x != -1) {
            return Err(Error::InvalidSpin(bad));
        }
        Ok(())
    }

    /// `m * Q(local)`, exact.
    fn objective_numerator(&self, local: &[i8]) -> i64 {
        let pair: i64 = self
            .quad
            .iter()
            .map(|&(p, q, num)| num * i64::from(local[p] * local[q]))
            .sum();
        let field: i64 = self.linear.iter().zip(local).map(|(c, &x)| c * i64::from(x)).sum();
        pair + field
    }

    /// Subproblem objective `Q` for local spins.
    pub fn objective(&self, local: &[i8]) -> Result<f64> {
        self.check(local)?;
        Ok(self.objective_numerator(local) as f64 / self.m as f64)
    }

    /// Modularity change from replacing the incumbent subset spins with
    /// `candidate`: `scale * (Q(candidate) - Q(incumbent))`.
    pub fn modularity_delta(&self, candidate: &[i8]) -> Result<f64> {
        self.check(candidate)?;
        let delta = self.objective_numerator(candidate) - self.objective_numerator(&self.incumbent);
        Ok(delta as f64 / (4 * self.m * self.m) as f64)
    }
}

/// Minimization form: `J_pq = -2 B_pq`, `h_p = -C_p`, offset 0. Ground states
/// of the model are exactly the maximizers of the subproblem objective.
pub fn to_ising(sp: &Subproblem) -> IsingModel {
    let couplings = sp.quad().into_iter().map(|(p, q, v)| (p, q, -v));
    let h = sp.linear().into_iter().map(|c| -c).collect();
    IsingModel::new(sp.len(), couplings, h).expect("subproblem indices are valid by construction")
}
