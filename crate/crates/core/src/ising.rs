//! Ising models `E(s) = sum_{p<q} J_pq s_p s_q + sum_p h_p s_p + offset`.

use std::io;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Coupling {
    pub p: usize,
    pub q: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsingModel {
    n_vars: usize,
    /// Strictly upper-triangular, sorted by `(p, q)`, no repeated pairs.
    couplings: Vec<Coupling>,
    h: Vec<f64>,
    offset: f64,
}

impl IsingModel {
    /// Builds a model from `(p, q, J_pq)` triples. Pairs may be given in
    /// either order; repeated pairs are summed.
    pub fn new<I>(n_vars: usize, couplings: I, h: Vec<f64>) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        if h.len() != n_vars {
            return Err(Error::LengthMismatch {
                expected: n_vars,
                found: h.len(),
            });
        }
        let mut list = Vec::new();
        for (a, b, value) in couplings {
            let (p, q) = (a.min(b), a.max(b));
            if p == q || q >= n_vars {
                return Err(Error::InvalidCoupling(a, b));
            }
            list.push(Coupling { p, q, value });
        }
        list.sort_by_key(|c| (c.p, c.q));
        let mut merged: Vec<Coupling> = Vec::with_capacity(list.len());
        for c in list {
            match merged.last_mut() {
                Some(last) if (last.p, last.q) == (c.p, c.q) => last.value += c.value,
                _ => merged.push(c),
            }
        }
        Ok(IsingModel {
            n_vars,
            couplings: merged,
            h,
            offset: 0.0,
        })
    }

    pub fn with_offset(mut self, offset: f64) -> Self {
        self.offset = offset;
        self
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn couplings(&self) -> &[Coupling] {
        &self.couplings
    }

    pub fn coupling(&self, p: usize, q: usize) -> f64 {
        let key = (p.min(q), p.max(q));
        self.couplings
            .binary_search_by_key(&key, |c| (c.p, c.q))
            .map_or(0.0, |i| self.couplings[i].value)
    }

    pub fn h(&self) -> &[f64] {
        &self.h
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn energy(&self, spins: &[i8]) -> Result<f64> {
        if spins.len() != self.n_vars {
            return Err(Error::LengthMismatch {
                expected: self.n_vars,
                found: spins.len(),
            });
        }
        Ok(self.energy_unchecked(spins))
    }

    pub(crate) fn energy_unchecked(&self, spins: &[i8]) -> f64 {
        let pair: f64 = self
            .couplings
            .iter()
            .map(|c| c.value * f64::from(spins[c.p] * spins[c.q]))
            .sum();
        let field: f64 = self.h.iter().zip(spins).map(|(h, &s)| h * f64::from(s)).sum();
        pair + field + self.offset
    }

    /// Energy of the configuration encoded by `pattern` (bit `b` of variable
    /// `p` gives spin `1 - 2b`).
    pub fn energy_of_bits(&self, pattern: u64) -> f64 {
        let spin = |p: usize| 1.0 - 2.0 * ((pattern >> p) & 1) as f64;
        let pair: f64 = self.couplings.iter().map(|c| c.value * spin(c.p) * spin(c.q)).sum();
        let field: f64 = self.h.iter().enumerate().map(|(p, h)| h * spin(p)).sum();
        pair + field + self.offset
    }

    pub fn max_abs_coefficient(&self) -> f64 {
        self.couplings
            .iter()
            .map(|c| c.value.abs())
            .chain(self.h.iter().map(|h| h.abs()))
            .fold(0.0, f64::max)
    }

    /// Symmetric dense coupling matrix in row-major order, zero diagonal.
    pub fn dense_couplings(&self) -> Vec<f64> {
        let n = self.n_vars;
        let mut dense = vec![0.0; n * n];
        for c in &self.couplings {
            dense[c.p * n + c.q] = c.value;
            dense[c.q * n + c.p] = c.value;
        }
        dense
    }

    /// Debug dump: one `p q J` line per coupling, then one `p h` line per
    /// field.
    pub fn write_text<W: io::Write>(&self, mut out: W) -> io::Result<()> {
        for c in &self.couplings {
            writeln!(out, "{} {} {}", c.p, c.q, c.value)?;
        }
        for (p, h) in self.h.iter().enumerate() {
            writeln!(out, "{p} {h}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn energy_examples() {
        let m = IsingModel::new(2, [], vec![1.0, -1.0]).unwrap();
        assert_eq!(m.energy(&[-1, 1]).unwrap(), -2.0);

        let m = IsingModel::new(2, [(0, 1, -5.0 / 7.0)], vec![4.0 / 7.0, 4.0 / 7.0]).unwrap();
        assert!((m.energy(&[-1, -1]).unwrap() + 13.0 / 7.0).abs() < 1e-12);
        assert!(m.energy(&[1]).is_err());
    }

    #[test]
    fn pairs_are_normalized_and_merged() {
        let m = IsingModel::new(3, [(2, 0, 1.0), (0, 2, 0.5), (1, 2, -1.0)], vec![0.0; 3]).unwrap();
        assert_eq!(m.couplings().len(), 2);
        assert_eq!(m.coupling(0, 2), 1.5);
        assert_eq!(m.coupling(2, 1), -1.0);
        assert_eq!(m.coupling(0, 1), 0.0);
        assert_eq!(
            IsingModel::new(2, [(1, 1, 1.0)], vec![0.0; 2]).unwrap_err(),
            Error::InvalidCoupling(1, 1)
        );
        assert_eq!(
            IsingModel::new(2, [(0, 2, 1.0)], vec![0.0; 2]).unwrap_err(),
            Error::InvalidCoupling(0, 2)
        );
    }

    #[test]
    fn zero_field_models_are_flip_symmetric() {
        let m = IsingModel::new(4, [(0, 1, 0.3), (1, 3, -0.7), (0, 2, 1.1)], vec![0.0; 4]).unwrap();
        for z in 0..16u64 {
            assert!((m.energy_of_bits(z) - m.energy_of_bits(!z & 0xF)).abs() < 1e-12);
        }
    }

    #[test]
    fn bit_energy_matches_spin_energy() {
        let m = IsingModel::new(3, [(0, 1, 0.25), (1, 2, -2.0)], vec![0.5, -1.0, 3.0])
            .unwrap()
            .with_offset(0.75);
        for z in 0..8u64 {
            let spins: Vec<i8> = (0..3).map(|p| 1 - 2 * ((z >> p) & 1) as i8).collect();
            assert!((m.energy(&spins).unwrap() - m.energy_of_bits(z)).abs() < 1e-12);
        }
    }

    #[test]
    fn text_dump() {
        let m = IsingModel::new(2, [(0, 1, -0.5)], vec![1.0, 2.0]).unwrap();
        let mut buf = Vec::new();
        m.write_text(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "0 1 -0.5\n0 1\n1 2\n");
    }
}
