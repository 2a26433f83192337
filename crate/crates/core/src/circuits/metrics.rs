use serde::Serialize;

use super::circuit::{Circuit, Op};
use crate::matrix;

/// Depth and gate counts under a fixed cost model.
///
/// Cost in layers: an uncontrolled or singly-controlled single-qubit gate takes 1; a
/// gate with `m_c ≥ 2` controls takes `2·m_c` (linear-depth multi-control
/// decomposition); a QFT on `m > 1` qubits takes `2m + 2`, scaled by the gate cost of
/// its controls. Global phases are free.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct CircuitMetrics {
    pub depth: usize,
    pub one_qubit: usize,
    pub cnot: usize,
    /// Controlled gates other than single-control X.
    pub multi_controlled: usize,
    pub qft_blocks: usize,
}

/// Layers taken by a single-qubit gate with `m_c` controls.
pub fn controlled_cost(m_c: usize) -> usize {
    if m_c <= 1 {
        1
    } else {
        2 * m_c
    }
}

/// Layers taken by a QFT on `m` qubits.
pub fn qft_cost(m: usize) -> usize {
    if m <= 1 {
        1
    } else {
        2 * m + 2
    }
}

fn op_cost(op: &Op) -> usize {
    match op {
        Op::Gate { controls, .. } => controlled_cost(controls.len()),
        Op::Qft { qubits, controls, .. } => qft_cost(qubits.len()) * controlled_cost(controls.len()),
        Op::GlobalPhase { .. } => 0,
    }
}

/// ASAP schedule: each op starts once all of its wires are free.
pub fn metrics(c: &Circuit) -> CircuitMetrics {
    let mut free_at = vec![0usize; c.n_qubits()];
    let mut m = CircuitMetrics::default();
    for op in c.ops() {
        match op {
            Op::Gate { controls, matrix: u, .. } => match controls.len() {
                0 => m.one_qubit += 1,
                1 if matrix::max_abs_diff(u, &matrix::pauli_x()) == 0.0 => m.cnot += 1,
                _ => m.multi_controlled += 1,
            },
            Op::Qft { .. } => m.qft_blocks += 1,
            Op::GlobalPhase { .. } => continue,
        }
        let qs = op.qubits();
        let start = qs.iter().map(|&q| free_at[q]).max().unwrap_or(0);
        let end = start + op_cost(op);
        for q in qs {
            free_at[q] = end;
        }
        m.depth = m.depth.max(end);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::primitives::{fanout_x, u_shift, u_slater};
    use crate::statevector::Control;

    #[test]
    fn empty_and_shift() {
        assert_eq!(metrics(&Circuit::new(3).unwrap()).depth, 0);
        for k in [0, 3, 100] {
            let m = metrics(&u_shift(k, 6).unwrap());
            assert_eq!(m.depth, 1);
            assert_eq!(m.one_qubit, 6);
        }
    }

    #[test]
    fn slater_depth_is_logarithmic() {
        for n_q in 2..=16usize {
            let m = metrics(&u_slater(0.5, n_q).unwrap());
            let log_nq = n_q.next_power_of_two().trailing_zeros() as usize;
            assert!(m.depth <= 3 * log_nq + 4, "n_q={n_q}: {}", m.depth);
            let k = (n_q - 1).next_power_of_two().trailing_zeros() as usize;
            assert_eq!(m.depth, 2 + 2 * k);
        }
    }

    #[test]
    fn fanout_counts() {
        let c = fanout_x(8, &[Control::on(6), Control::on(7)], &[0, 1, 2, 3, 4, 5]).unwrap();
        let m = metrics(&c);
        assert_eq!(m.multi_controlled, 1);
        assert_eq!(m.cnot, 10);
        assert_eq!(m.depth, 3 + 4 + 3);
    }
}
