//! Two-community modularity and single-flip gains.
//!
//! With spins `s_i` in {-1, +1} the modularity is
//! `H = 1/(4m) * sum_ij B_ij s_i s_j`, diagonal included. Every quantity here
//! is kept as an integer numerator over a power of `m`, so incremental and
//! from-scratch evaluations agree bit for bit.

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::{Error, Result};

/// Community assignment: one spin in {-1, +1} per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i8>", into = "Vec<i8>")]
pub struct SpinAssignment(Vec<i8>);

impl SpinAssignment {
    pub fn new(spins: Vec<i8>) -> Result<Self> {
        if let Some(&bad) = spins.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::InvalidSpin(bad));
        }
        Ok(SpinAssignment(spins))
    }

    pub fn uniform(n: usize, spin: i8) -> Result<Self> {
        Self::new(vec![spin; n])
    }

    /// Spins from the low `n` bits of `pattern`: bit `b` maps to `1 - 2b`.
    pub fn from_bits(pattern: u64, n: usize) -> Self {
        SpinAssignment((0..n).map(|i| 1 - 2 * ((pattern >> i) & 1) as i8).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.0
    }

    pub fn get(&self, v: usize) -> i8 {
        self.0[v]
    }

    pub fn flip(&mut self, v: usize) {
        self.0[v] = -self.0[v];
    }

    pub fn flipped(&self, v: usize) -> Self {
        let mut s = self.clone();
        s.flip(v);
        s
    }

    pub fn negated(&self) -> Self {
        SpinAssignment(self.0.iter().map(|&s| -s).collect())
    }

    fn check_len(&self, g: &Graph) -> Result<()> {
        if self.len() != g.n() {
            return Err(Error::LengthMismatch {
                expected: g.n(),
                found: self.len(),
            });
        }
        Ok(())
    }
}

impl TryFrom<Vec<i8>> for SpinAssignment {
    type Error = Error;

    fn try_from(spins: Vec<i8>) -> Result<Self> {
        Self::new(spins)
    }
}

impl From<SpinAssignment> for Vec<i8> {
    fn from(s: SpinAssignment) -> Self {
        s.0
    }
}

/// `sum_{(i,j) in E} 2 s_i s_j` and `sum_i k_i s_i`.
fn edge_and_degree_sums(g: &Graph, s: &SpinAssignment) -> (i64, i64) {
    let spins = s.as_slice();
    let edge_sum: i64 = g.edges().map(|(u, v)| 2 * i64::from(spins[u] * spins[v])).sum();
    let degree_sum = (0..g.n()).map(|v| g.degree(v) as i64 * i64::from(spins[v])).sum();
    (edge_sum, degree_sum)
}

fn modularity_from_sums(m: usize, edge_sum: i64, degree_sum: i64) -> f64 {
    // H = (S_A - K^2 / 2m) / 4m = (2m S_A - K^2) / 8m^2
    let m = m as i64;
    let numerator = 2 * m * edge_sum - degree_sum * degree_sum;
    numerator as f64 / (8 * m * m) as f64
}

/// Modularity of the two-community split encoded by `s`.
pub fn modularity(g: &Graph, s: &SpinAssignment) -> Result<f64> {
    s.check_len(g)?;
    let (edge_sum, degree_sum) = edge_and_degree_sums(g, s);
    Ok(modularity_from_sums(g.m(), edge_sum, degree_sum))
}

/// Change in modularity if only vertex `v` flips.
pub fn flip_gain(g: &Graph, s: &SpinAssignment, v: usize) -> Result<f64> {
    s.check_len(g)?;
    if v >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    let (_, degree_sum) = edge_and_degree_sums(g, s);
    let signed_degree = g.degree(v) as i64 * i64::from(s.get(v));
    let agreement = neighbor_agreement(g, s, v);
    Ok(gain_value(g.m(), agreement, signed_degree, degree_sum))
}

/// `s_v * sum_{j in adj(v)} s_j`.
fn neighbor_agreement(g: &Graph, s: &SpinAssignment, v: usize) -> i64 {
    let sv = i64::from(s.get(v));
    sv * g.neighbors(v).iter().map(|&j| i64::from(s.get(j))).sum::<i64>()
}

/// `2m^2 * gain(v)` as an integer.
///
/// `gain(v) = -(1/m) s_v [a_v - (k_v / 2m)(K - k_v s_v)]` where `a_v` is the
/// neighbor spin sum and `K = sum_j k_j s_j`. Only the `K` term depends on
/// vertices outside the neighborhood of `v`.
fn gain_numerator(m: usize, agreement: i64, signed_degree: i64, degree_sum: i64) -> i64 {
    let m = m as i64;
    -2 * m * agreement - signed_degree * signed_degree + signed_degree * degree_sum
}

fn gain_value(m: usize, agreement: i64, signed_degree: i64, degree_sum: i64) -> f64 {
    let denom = 2 * (m as i64) * (m as i64);
    gain_numerator(m, agreement, signed_degree, degree_sum) as f64 / denom as f64
}

/// Per-vertex flip gains and the current modularity, updated incrementally
/// as moves are applied.
///
/// Gains are stored split into a neighborhood part (refreshed only for moved
/// vertices and their neighbors) and the global degree-spin sum, which is a
/// single scalar.
#[derive(Debug, Clone, PartialEq)]
pub struct GainTable {
    m: usize,
    /// `s_v * sum_{j in adj(v)} s_j`
    agreement: Vec<i64>,
    /// `k_v * s_v`
    signed_degree: Vec<i64>,
    /// `sum_{(i,j) in E} 2 s_i s_j`
    edge_sum: i64,
    /// `sum_v k_v s_v`
    degree_sum: i64,
}

/// Builds the gain table for `s` from scratch.
pub fn init_gains(g: &Graph, s: &SpinAssignment) -> Result<GainTable> {
    s.check_len(g)?;
    let agreement: Vec<i64> = (0..g.n()).map(|v| neighbor_agreement(g, s, v)).collect();
    let signed_degree: Vec<i64> = (0..g.n()).map(|v| g.degree(v) as i64 * i64::from(s.get(v))).collect();
    Ok(GainTable {
        m: g.m(),
        edge_sum: agreement.iter().sum(),
        degree_sum: signed_degree.iter().sum(),
        agreement,
        signed_degree,
    })
}

impl GainTable {
    pub fn len(&self) -> usize {
        self.agreement.len()
    }

    pub fn is_empty(&self) -> bool {
        self.agreement.is_empty()
    }

    pub fn modularity(&self) -> f64 {
        modularity_from_sums(self.m, self.edge_sum, self.degree_sum)
    }

    pub fn gain(&self, v: usize) -> f64 {
        gain_value(self.m, self.agreement[v], self.signed_degree[v], self.degree_sum)
    }

    pub fn gains(&self) -> Vec<f64> {
        (0..self.len()).map(|v| self.gain(v)).collect()
    }

    /// Exact integer key ordering vertices by gain.
    pub(crate) fn gain_key(&self, v: usize) -> i64 {
        gain_numerator(self.m, self.agreement[v], self.signed_degree[v], self.degree_sum)
    }

    /// Sets the spins of `subset` to `new_spins`, updating `s` and this table
    /// in place. Returns the exact modularity change.
    pub fn apply_move(&mut self, g: &Graph, s: &mut SpinAssignment, subset: &[usize], new_spins: &[i8]) -> Result<f64> {
        s.check_len(g)?;
        if self.len() != g.n() {
            return Err(Error::LengthMismatch {
                expected: g.n(),
                found: self.len(),
            });
        }
        if subset.len() != new_spins.len() {
            return Err(Error::LengthMismatch {
                expected: subset.len(),
                found: new_spins.len(),
            });
        }
        let mut seen = subset.to_vec();
        seen.sort_unstable();
        if let Some(&v) = seen.iter().find(|&&v| v >= g.n()) {
            return Err(Error::SubsetOutOfRange(v));
        }
        if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex(w[0]));
        }
        if let Some(&bad) = new_spins.iter().find(|&&x| x != 1 && x != -1) {
            return Err(Error::InvalidSpin(bad));
        }

        let before = self.modularity();
        let mut touched = Vec::new();
        for (&v, &spin) in subset.iter().zip(new_spins) {
            if s.get(v) != spin {
                s.flip(v);
                self.degree_sum -= self.signed_degree[v];
                self.signed_degree[v] = -self.signed_degree[v];
                self.degree_sum += self.signed_degree[v];
                touched.push(v);
                touched.extend_from_slice(g.neighbors(v));
            }
        }
        touched.sort_unstable();
        touched.dedup();
        for v in touched {
            let fresh = neighbor_agreement(g, s, v);
            self.edge_sum += fresh - self.agreement[v];
            self.agreement[v] = fresh;
        }
        Ok(self.modularity() - before)
    }
}

/// Free-function form of [`GainTable::apply_move`].
pub fn apply_move(
    g: &Graph,
    s: &mut SpinAssignment,
    table: &mut GainTable,
    subset: &[usize],
    new_spins: &[i8],
) -> Result<f64> {
    table.apply_move(g, s, subset, new_spins)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::barbell;
    use crate::graph::generate_planted_partition;
    use crate::seed::rng_from_seed;
    use proptest::prelude::*;
    use rand::Rng as _;

    const TOL: f64 = 1e-12;

    /// Modularity evaluated literally as a double sum over the modularity matrix.
    fn modularity_by_double_sum(g: &Graph, s: &SpinAssignment) -> f64 {
        let mut total = 0.0;
        for i in 0..g.n() {
            for j in 0..g.n() {
                total += g.modularity_coefficient(i, j).unwrap() * f64::from(s.get(i) * s.get(j));
            }
        }
        total / (4 * g.m()) as f64
    }

    fn spins(v: &[i8]) -> SpinAssignment {
        SpinAssignment::new(v.to_vec()).unwrap()
    }

    fn random_graph(n: usize, p: f64, rng: &mut crate::seed::Rng) -> Graph {
        loop {
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random::<f64>() < p {
                        edges.push((u, v));
                    }
                }
            }
            if let Ok(g) = Graph::from_edges(n, edges) {
                return g;
            }
        }
    }

    fn random_spins(n: usize, rng: &mut crate::seed::Rng) -> SpinAssignment {
        SpinAssignment::new((0..n).map(|_| if rng.random() { 1 } else { -1 }).collect()).unwrap()
    }

    #[test]
    fn rejects_non_spin_values() {
        assert_eq!(SpinAssignment::new(vec![1, 0]).unwrap_err(), Error::InvalidSpin(0));
    }

    #[test]
    fn barbell_modularity_values() {
        let g = barbell();
        let best = spins(&[-1, -1, -1, 1, 1, 1]);
        assert!((modularity(&g, &best).unwrap() - 5.0 / 14.0).abs() < TOL);
        let skewed = spins(&[-1, -1, 1, 1, 1, 1]);
        assert!((modularity(&g, &skewed).unwrap() - 6.0 / 49.0).abs() < TOL);
        let trivial = SpinAssignment::uniform(6, -1).unwrap();
        assert_eq!(modularity(&g, &trivial).unwrap(), 0.0);
    }

    #[test]
    fn barbell_optimum_by_enumeration() {
        let g = barbell();
        let best = (0..64u64)
            .map(|z| modularity_by_double_sum(&g, &SpinAssignment::from_bits(z, 6)))
            .fold(f64::NEG_INFINITY, f64::max);
        assert!((best - 5.0 / 14.0).abs() < TOL);
    }

    #[test]
    fn two_triangles_modularity_is_one_half() {
        let g = generate_planted_partition(6, 1.0, 0.0, 0).unwrap().graph;
        let planted = spins(&[-1, -1, -1, 1, 1, 1]);
        assert!((modularity(&g, &planted).unwrap() - 0.5).abs() < TOL);
        let best = (0..64u64)
            .map(|z| modularity_by_double_sum(&g, &SpinAssignment::from_bits(z, 6)))
            .fold(f64::NEG_INFINITY, f64::max);
        assert!((best - 0.5).abs() < TOL);
    }

    #[test]
    fn length_mismatch() {
        let g = barbell();
        assert!(matches!(
            modularity(&g, &spins(&[1, 1])),
            Err(Error::LengthMismatch { expected: 6, found: 2 })
        ));
    }

    #[test]
    fn barbell_flip_gains() {
        let g = barbell();
        let best = spins(&[-1, -1, -1, 1, 1, 1]);
        assert!((flip_gain(&g, &best, 2).unwrap() + 23.0 / 98.0).abs() < TOL);
        assert!((flip_gain(&g, &best, 0).unwrap() + 32.0 / 98.0).abs() < TOL);
        let trivial = SpinAssignment::uniform(6, -1).unwrap();
        assert!((flip_gain(&g, &trivial, 0).unwrap() + 2.0 / 49.0).abs() < TOL);
        assert!(flip_gain(&g, &trivial, 6).is_err());
    }

    #[test]
    fn isolated_vertex_gain_is_zero() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let s = spins(&[1, -1, 1]);
        assert_eq!(flip_gain(&g, &s, 2).unwrap(), 0.0);
    }

    #[test]
    fn barbell_initial_gain_table() {
        let g = barbell();
        let t = init_gains(&g, &SpinAssignment::uniform(6, -1).unwrap()).unwrap();
        let expected = [
            -2.0 / 49.0,
            -2.0 / 49.0,
            -9.0 / 98.0,
            -9.0 / 98.0,
            -2.0 / 49.0,
            -2.0 / 49.0,
        ];
        for (got, want) in t.gains().iter().zip(expected) {
            assert!((got - want).abs() < TOL);
        }
        assert_eq!(t.modularity(), 0.0);
    }

    #[test]
    fn single_edge_table() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let t = init_gains(&g, &spins(&[-1, 1])).unwrap();
        assert!((t.modularity() + 0.5).abs() < TOL);
        assert!((t.gain(0) - 0.5).abs() < TOL);
        assert!((t.gain(1) - 0.5).abs() < TOL);
    }

    #[test]
    fn barbell_moves() {
        let g = barbell();
        let start = SpinAssignment::uniform(6, -1).unwrap();

        let mut s = start.clone();
        let mut t = init_gains(&g, &s).unwrap();
        assert_eq!(t.apply_move(&g, &mut s, &[2, 3], &[-1, -1]).unwrap(), 0.0);
        assert_eq!(s, start);

        let mut s = start.clone();
        let mut t = init_gains(&g, &s).unwrap();
        t.apply_move(&g, &mut s, &[3, 4, 5], &[1, 1, 1]).unwrap();
        assert!((t.modularity() - 5.0 / 14.0).abs() < TOL);

        let mut s = start.clone();
        let mut t = init_gains(&g, &s).unwrap();
        let delta = apply_move(&g, &mut s, &mut t, &[2, 3], &[1, 1]).unwrap();
        assert!((t.modularity() + 4.0 / 49.0).abs() < TOL);
        assert!((delta + 4.0 / 49.0).abs() < TOL);
    }

    #[test]
    fn move_errors() {
        let g = barbell();
        let mut s = SpinAssignment::uniform(6, -1).unwrap();
        let mut t = init_gains(&g, &s).unwrap();
        assert_eq!(
            t.apply_move(&g, &mut s, &[9], &[1]).unwrap_err(),
            Error::SubsetOutOfRange(9)
        );
        assert_eq!(
            t.apply_move(&g, &mut s, &[1, 1], &[1, 1]).unwrap_err(),
            Error::DuplicateVertex(1)
        );
        assert!(matches!(
            t.apply_move(&g, &mut s, &[1, 2], &[1]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn incremental_table_matches_scratch() {
        let mut rng = rng_from_seed(2024);
        for trial in 0..200 {
            let n = rng.random_range(2..40);
            let g = random_graph(n, rng.random_range(0.05..0.6), &mut rng);
            let mut s = random_spins(n, &mut rng);
            let mut t = init_gains(&g, &s).unwrap();
            let k = rng.random_range(1..=n);
            let mut subset: Vec<usize> = (0..n).collect();
            for i in 0..k {
                let j = rng.random_range(i..n);
                subset.swap(i, j);
            }
            subset.truncate(k);
            let new: Vec<i8> = (0..k).map(|_| if rng.random() { 1 } else { -1 }).collect();
            let before = modularity(&g, &s).unwrap();
            let delta = t.apply_move(&g, &mut s, &subset, &new).unwrap();
            let scratch = init_gains(&g, &s).unwrap();
            assert_eq!(t, scratch, "trial {trial}");
            let after = modularity(&g, &s).unwrap();
            assert!((delta - (after - before)).abs() < 1e-9);
        }
    }

    #[test]
    fn gains_match_flip_differences() {
        let mut rng = rng_from_seed(7);
        for _ in 0..50 {
            let n = rng.random_range(2..30);
            let g = random_graph(n, 0.3, &mut rng);
            let s = random_spins(n, &mut rng);
            let t = init_gains(&g, &s).unwrap();
            let h = modularity_by_double_sum(&g, &s);
            assert!((t.modularity() - h).abs() < 1e-9);
            for v in 0..n {
                let flipped = modularity_by_double_sum(&g, &s.flipped(v));
                assert!((t.gain(v) - (flipped - h)).abs() < 1e-9);
                assert!((flip_gain(&g, &s, v).unwrap() - t.gain(v)).abs() < 1e-12);
            }
        }
    }

    fn arb_graph_and_spins() -> impl Strategy<Value = (Graph, SpinAssignment)> {
        (2usize..24)
            .prop_flat_map(|n| {
                let pairs = n * (n - 1) / 2;
                (
                    Just(n),
                    proptest::collection::vec(any::<bool>(), pairs),
                    proptest::collection::vec(prop_oneof![Just(-1i8), Just(1i8)], n),
                )
            })
            .prop_filter_map("needs an edge", |(n, mask, spins)| {
                let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
                let edges: Vec<_> = pairs.zip(mask).filter(|(_, keep)| *keep).map(|(e, _)| e).collect();
                let g = Graph::from_edges(n, edges).ok()?;
                Some((g, SpinAssignment::new(spins).unwrap()))
            })
    }

    proptest! {
        #[test]
        fn modularity_is_bounded_and_symmetric((g, s) in arb_graph_and_spins()) {
            let h = modularity(&g, &s).unwrap();
            prop_assert!(h.abs() <= 1.0);
            prop_assert_eq!(h, modularity(&g, &s.negated()).unwrap());
            prop_assert!((h - modularity_by_double_sum(&g, &s)).abs() < 1e-9);
        }

        #[test]
        fn modularity_matrix_rows_sum_to_zero((g, _s) in arb_graph_and_spins()) {
            for i in 0..g.n() {
                let row: f64 = (0..g.n()).map(|j| g.modularity_coefficient(i, j).unwrap()).sum();
                prop_assert!(row.abs() < 1e-9);
            }
        }
    }
}
