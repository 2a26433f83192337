use std::ops::Range;

use serde::Serialize;

use super::circuit::Circuit;
use super::metrics::{metrics, CircuitMetrics};
use super::primitives::QftConvention;
use crate::statevector::QuantumState;
use crate::{Error, Result};

/// Block name of the final per-axis QFT on the data registers.
pub const TRAILING_QFT: &str = "trailing_qft";

/// Wire assignment of an encoder: data registers first, then selection ancillae, then
/// the optional amplitude-reduction ancilla.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegisterLayout {
    pub n_q: usize,
    pub dim: usize,
    pub lcu_ancillae: Vec<usize>,
    pub ar_ancilla: Option<usize>,
}

impl RegisterLayout {
    pub(crate) fn new(n_q: usize, dim: usize, n_a: usize, with_ar: bool) -> Self {
        let d = n_q * dim;
        RegisterLayout { n_q, dim, lcu_ancillae: (d..d + n_a).collect(), ar_ancilla: with_ar.then_some(d + n_a) }
    }

    pub fn data_qubits(&self) -> Range<usize> {
        0..self.n_q * self.dim
    }

    /// Qubits of axis `mu`.
    pub fn axis(&self, mu: usize) -> Range<usize> {
        mu * self.n_q..(mu + 1) * self.n_q
    }

    /// Ancillae that must read 0 on success.
    pub fn success_ancillae(&self) -> Vec<usize> {
        self.lcu_ancillae.iter().copied().chain(self.ar_ancilla).collect()
    }

    pub fn n_qubits(&self) -> usize {
        self.n_q * self.dim + self.lcu_ancillae.len() + usize::from(self.ar_ancilla.is_some())
    }
}

/// Success probability and the conditional data-register state.
#[derive(Debug, Clone)]
pub struct SuccessOutcome {
    pub probability: f64,
    pub data_state: QuantumState,
}

/// A state-preparation circuit together with its register layout.
#[derive(Debug, Clone)]
pub struct EncodingCircuit {
    pub circuit: Circuit,
    pub layout: RegisterLayout,
    /// Sum of the selection weights.
    pub lambda: f64,
    pub convention: QftConvention,
}

impl EncodingCircuit {
    pub fn simulate(&self) -> Result<QuantumState> {
        self.circuit.simulate()
    }

    /// Projects the success ancillae of `state` onto all-zero.
    pub fn condition(&self, state: &QuantumState) -> Result<SuccessOutcome> {
        let anc = self.layout.success_ancillae();
        let outcome = state.project_ancilla(&anc, &vec![false; anc.len()])?;
        Ok(SuccessOutcome { probability: outcome.probability, data_state: outcome.remaining()? })
    }

    /// Runs from `|0…0⟩` and post-selects on success.
    pub fn simulate_success(&self) -> Result<SuccessOutcome> {
        self.condition(&self.simulate()?)
    }

    /// Same outcome, measuring the ancillae before the trailing QFT and applying it
    /// to the data register afterwards.
    pub fn simulate_success_deferred(&self) -> Result<SuccessOutcome> {
        let head = self.circuit.without_block(TRAILING_QFT);
        let mut outcome = self.condition(&head.simulate()?)?;
        let mut tail = Circuit::new(self.layout.data_qubits().len())?;
        for op in self.circuit.block_ops(TRAILING_QFT) {
            if op.qubits().iter().any(|&q| q >= tail.n_qubits()) {
                return Err(Error::param("trailing QFT touches an ancilla"));
            }
            tail.push(op.clone())?;
        }
        tail.apply_in_place(&mut outcome.data_state)?;
        Ok(outcome)
    }

    pub fn metrics(&self) -> CircuitMetrics {
        metrics(&self.circuit)
    }
}
