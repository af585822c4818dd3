//! Hardware-efficient RYRZ ansatz.
//!
//! Starting from `|0...0>`, rotation layer `l = 0..=depth` applies `Ry` then
//! `Rz` to every qubit; each of the first `depth` rotation layers is followed
//! by a linear CNOT chain `0->1, 1->2, ..., (n-2)->(n-1)`. Layer `l`, qubit
//! `q` reads its angles from `theta[2(l n + q)]` (Ry) and
//! `theta[2(l n + q) + 1]` (Rz).

use serde::{Deserialize, Serialize};

use super::statevector::{compose, ry_gate, rz_gate, StateVector};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnsatzParams {
    pub theta: Vec<f64>,
    pub depth: usize,
}

impl AnsatzParams {
    pub fn len_for(n_qubits: usize, depth: usize) -> usize {
        2 * n_qubits * (depth + 1)
    }

    pub fn new(theta: Vec<f64>, depth: usize) -> Self {
        AnsatzParams { theta, depth }
    }
}

pub fn prepare_state(n_qubits: usize, params: &AnsatzParams) -> Result<StateVector> {
    let expected = AnsatzParams::len_for(n_qubits, params.depth);
    if params.theta.len() != expected {
        return Err(Error::ParamLengthMismatch {
            expected,
            found: params.theta.len(),
        });
    }
    if let Some(bad) = params.theta.iter().find(|t| !t.is_finite()) {
        return Err(Error::ConfigInvalid(format!("non-finite ansatz angle {bad}")));
    }
    let mut state = StateVector::zero(n_qubits)?;
    for (layer, angles) in params.theta.chunks_exact(2 * n_qubits.max(1)).enumerate() {
        for (q, pair) in angles.chunks_exact(2).enumerate() {
            state.apply(q, &compose(&rz_gate(pair[1]), &ry_gate(pair[0])));
        }
        if layer < params.depth {
            for q in 0..n_qubits.saturating_sub(1) {
                state.cnot(q, q + 1);
            }
        }
    }
    Ok(state)
}
