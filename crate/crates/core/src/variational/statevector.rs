use num_complex::Complex64;

use crate::{Error, Result};

/// Dense `2^n` amplitude vector. Qubit `q` is bit `q` of the basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
    n_qubits: usize,
}

/// 2x2 unitary `[[a, b], [c, d]]`.
pub type Gate = [[Complex64; 2]; 2];

impl StateVector {
    pub const MAX_QUBITS: usize = 20;

    /// `|0...0>`
    pub fn zero(n_qubits: usize) -> Result<Self> {
        if n_qubits > Self::MAX_QUBITS {
            return Err(Error::TooManyQubits {
                found: n_qubits,
                limit: Self::MAX_QUBITS,
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(StateVector { amplitudes, n_qubits })
    }

    /// State from raw amplitudes; the length must be a power of two and the
    /// norm 1 within `1e-9`.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if !len.is_power_of_two() {
            return Err(Error::LengthMismatch {
                expected: len.next_power_of_two(),
                found: len,
            });
        }
        let n_qubits = len.trailing_zeros() as usize;
        if n_qubits > Self::MAX_QUBITS {
            return Err(Error::TooManyQubits {
                found: n_qubits,
                limit: Self::MAX_QUBITS,
            });
        }
        let state = StateVector { amplitudes, n_qubits };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::ConfigInvalid(format!("state norm is {norm}, expected 1")));
        }
        Ok(state)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn apply(&mut self, qubit: usize, gate: &Gate) {
        debug_assert!(qubit < self.n_qubits);
        let stride = 1 << qubit;
        for block in self.amplitudes.chunks_exact_mut(2 * stride) {
            let (lo, hi) = block.split_at_mut(stride);
            for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a0, *a1);
                *a0 = gate[0][0] * x + gate[0][1] * y;
                *a1 = gate[1][0] * x + gate[1][1] * y;
            }
        }
    }

    pub fn ry(&mut self, qubit: usize, theta: f64) {
        self.apply(qubit, &ry_gate(theta));
    }

    pub fn rz(&mut self, qubit: usize, theta: f64) {
        self.apply(qubit, &rz_gate(theta));
    }

    pub fn cnot(&mut self, control: usize, target: usize) {
        debug_assert!(control != target && control < self.n_qubits && target < self.n_qubits);
        let (c, t) = (1usize << control, 1usize << target);
        for z in 0..self.amplitudes.len() {
            if z & c != 0 && z & t == 0 {
                self.amplitudes.swap(z, z | t);
            }
        }
    }
}

pub fn ry_gate(theta: f64) -> Gate {
    let (s, c) = (theta / 2.0).sin_cos();
    [
        [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
        [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
    ]
}

pub fn rz_gate(theta: f64) -> Gate {
    let zero = Complex64::new(0.0, 0.0);
    [
        [Complex64::from_polar(1.0, -theta / 2.0), zero],
        [zero, Complex64::from_polar(1.0, theta / 2.0)],
    ]
}

/// `second * first`: the gate that applies `first`, then `second`.
pub fn compose(second: &Gate, first: &Gate) -> Gate {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = second[i][0] * first[0][j] + second[i][1] * first[1][j];
        }
    }
    out
}
