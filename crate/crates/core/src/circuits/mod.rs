//! Circuit construction, simulation hooks and resource metrics.
//!
//! Every builder returns a [`Circuit`] (or an [`EncodingCircuit`] bundling a circuit
//! with its register layout). Wires follow the statevector convention: data axis `μ`
//! occupies qubits `μ·n_q .. (μ+1)·n_q`, selection ancillae follow, and the
//! amplitude-reduction ancilla, when present, is last.

mod circuit;
mod encoding;
mod lcu;
mod metrics;
mod primitives;
mod qaa;
pub mod text;

pub use circuit::{max_diff_up_to_phase, Block, Circuit, Op};
pub use encoding::{EncodingCircuit, RegisterLayout, SuccessOutcome, TRAILING_QFT};
pub use lcu::{
    ancilla_count, c_lc_complex, c_lc_generic, c_lc_lorentzian, c_lc_lorentzian_naive, c_lc_lorentzian_with,
    c_lc_product, lcu_prepare_ancillae, BasisOracle, LorentzianOracle, OracleTerm, SlaterOracle,
};
pub use metrics::{controlled_cost, metrics, qft_cost, CircuitMetrics};
pub use primitives::{
    axis_frame, fanout_x, mcm1, shift_phases, slater_angles, slater_fanout, slater_rotations, translation,
    translation_with, u_lorentzian, u_lorentzian_with, u_shift, u_slater, zero_reflection, QftConvention,
};
pub use qaa::{
    amplification_q, amplification_q_with, c_lc_amplified, c_lc_amplified_with, c_lc_ar, c_lc_ar_with,
    c_lc_deterministic, c_lc_deterministic_with, u_lorentzian_ar, ReflectionScope,
};
