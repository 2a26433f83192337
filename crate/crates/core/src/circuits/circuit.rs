use std::ops::Range;

use num_complex::Complex64;

use crate::matrix::{self, Mat2};
use crate::statevector::{Control, QuantumState, MAX_QUBITS};
use crate::{Error, Result};

/// One circuit instruction.
#[derive(Debug, Clone, PartialEq)]
pub enum Op {
    /// Single-qubit unitary on `target`, active where every control matches.
    Gate { label: String, target: usize, controls: Vec<Control>, matrix: Mat2 },
    /// QFT (or inverse) on a contiguous range, optionally controlled.
    Qft { qubits: Range<usize>, inverse: bool, controls: Vec<Control> },
    /// Uncontrolled global phase `e^{i·angle}`; carries no physical cost.
    GlobalPhase { angle: f64 },
}

impl Op {
    /// Every wire the op touches, controls included.
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Op::Gate { target, controls, .. } => {
                let mut q: Vec<usize> = controls.iter().map(|c| c.qubit).collect();
                q.push(*target);
                q
            }
            Op::Qft { qubits, controls, .. } => controls.iter().map(|c| c.qubit).chain(qubits.clone()).collect(),
            Op::GlobalPhase { .. } => Vec::new(),
        }
    }

    pub fn controls(&self) -> &[Control] {
        match self {
            Op::Gate { controls, .. } | Op::Qft { controls, .. } => controls,
            Op::GlobalPhase { .. } => &[],
        }
    }

    fn inverse(&self) -> Op {
        match self {
            Op::Gate { label, target, controls, matrix } => Op::Gate {
                label: inverse_label(label),
                target: *target,
                controls: controls.clone(),
                matrix: matrix::dagger(matrix),
            },
            Op::Qft { qubits, inverse, controls } => {
                Op::Qft { qubits: qubits.clone(), inverse: !inverse, controls: controls.clone() }
            }
            Op::GlobalPhase { angle } => Op::GlobalPhase { angle: -angle },
        }
    }

    fn remap(&self, map: &[usize]) -> Op {
        let rc = |cs: &[Control]| cs.iter().map(|c| Control { qubit: map[c.qubit], on: c.on }).collect();
        match self {
            Op::Gate { label, target, controls, matrix } => {
                Op::Gate { label: label.clone(), target: map[*target], controls: rc(controls), matrix: *matrix }
            }
            Op::Qft { qubits, inverse, controls } => {
                let lo = map[qubits.start];
                Op::Qft { qubits: lo..lo + qubits.len(), inverse: *inverse, controls: rc(controls) }
            }
            Op::GlobalPhase { angle } => Op::GlobalPhase { angle: *angle },
        }
    }
}

fn inverse_label(label: &str) -> String {
    match label.strip_suffix("_dg") {
        Some(base) => base.to_string(),
        None => format!("{label}_dg"),
    }
}

/// Named half-open range of op indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub name: String,
    pub ops: Range<usize>,
}

/// Ordered gate list on a fixed number of wires, with named sub-blocks.
///
/// Blocks nest: any two blocks are either disjoint or one contains the other.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Circuit {
    n_qubits: usize,
    ops: Vec<Op>,
    blocks: Vec<Block>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Result<Self> {
        if n_qubits > MAX_QUBITS {
            return Err(Error::QubitCount(n_qubits));
        }
        Ok(Circuit { n_qubits, ops: Vec::new(), blocks: Vec::new() })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn ops(&self) -> &[Op] {
        &self.ops
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    fn check_op(&self, op: &Op) -> Result<()> {
        let qs = op.qubits();
        for (i, &q) in qs.iter().enumerate() {
            if q >= self.n_qubits {
                return Err(Error::QubitOutOfRange { index: q, n_qubits: self.n_qubits });
            }
            if qs[..i].contains(&q) {
                return Err(Error::OverlappingQubits(q));
            }
        }
        match op {
            Op::Gate { label, matrix, .. } => {
                let dev = matrix::unitarity_deviation(matrix);
                if dev > matrix::UNITARY_TOL {
                    return Err(Error::NotUnitary(dev));
                }
                if label.is_empty() || label.chars().any(char::is_whitespace) {
                    return Err(Error::param(format!("gate label {label:?} must be a non-empty word")));
                }
            }
            Op::Qft { qubits, .. } if qubits.is_empty() => {
                return Err(Error::param("QFT on an empty range"));
            }
            _ => {}
        }
        Ok(())
    }

    pub fn push(&mut self, op: Op) -> Result<()> {
        self.check_op(&op)?;
        self.ops.push(op);
        Ok(())
    }

    pub fn gate(&mut self, label: &str, target: usize, matrix: Mat2) -> Result<()> {
        self.controlled_gate(label, &[], target, matrix)
    }

    pub fn controlled_gate(&mut self, label: &str, controls: &[Control], target: usize, matrix: Mat2) -> Result<()> {
        self.push(Op::Gate { label: label.to_string(), target, controls: controls.to_vec(), matrix })
    }

    pub fn qft(&mut self, qubits: Range<usize>, inverse: bool) -> Result<()> {
        self.push(Op::Qft { qubits, inverse, controls: Vec::new() })
    }

    pub fn global_phase(&mut self, angle: f64) {
        self.ops.push(Op::GlobalPhase { angle });
    }

    /// Appends `other`, acting on the same wires.
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        let map: Vec<usize> = (0..other.n_qubits).collect();
        self.append_mapped(other, &map)
    }

    /// Appends `other` with its wire `i` placed on `map[i]`.
    pub fn append_mapped(&mut self, other: &Circuit, map: &[usize]) -> Result<()> {
        if map.len() != other.n_qubits {
            return Err(Error::SizeMismatch(map.len(), other.n_qubits));
        }
        let offset = self.ops.len();
        for op in &other.ops {
            self.push(op.remap(map))?;
        }
        self.blocks.extend(
            other.blocks.iter().map(|b| Block { name: b.name.clone(), ops: b.ops.start + offset..b.ops.end + offset }),
        );
        Ok(())
    }

    /// Appends `other` as a named block on wires `map`.
    pub fn push_block(&mut self, name: &str, other: &Circuit, map: &[usize]) -> Result<()> {
        let start = self.ops.len();
        self.append_mapped(other, map)?;
        self.blocks.push(Block { name: name.to_string(), ops: start..self.ops.len() });
        Ok(())
    }

    /// Gate-wise inverse: reversed order, every op replaced by its adjoint.
    pub fn inverse(&self) -> Circuit {
        let n = self.ops.len();
        Circuit {
            n_qubits: self.n_qubits,
            ops: self.ops.iter().rev().map(Op::inverse).collect(),
            blocks: self
                .blocks
                .iter()
                .map(|b| Block { name: inverse_label(&b.name), ops: n - b.ops.end..n - b.ops.start })
                .collect(),
        }
    }

    /// Same circuit on a wider register, wire `i` moved to `map[i]`.
    pub fn embed(&self, n_qubits: usize, map: &[usize]) -> Result<Circuit> {
        let mut c = Circuit::new(n_qubits)?;
        c.append_mapped(self, map)?;
        Ok(c)
    }

    /// Adds `controls` to every op. A global phase becomes a phase gate on the last control.
    pub fn controlled(&self, controls: &[Control]) -> Result<Circuit> {
        let mut out = Circuit::new(self.n_qubits)?;
        for op in &self.ops {
            let op = match op {
                Op::Gate { label, target, controls: cs, matrix } => Op::Gate {
                    label: label.clone(),
                    target: *target,
                    controls: controls.iter().chain(cs).copied().collect(),
                    matrix: *matrix,
                },
                Op::Qft { qubits, inverse, controls: cs } => Op::Qft {
                    qubits: qubits.clone(),
                    inverse: *inverse,
                    controls: controls.iter().chain(cs).copied().collect(),
                },
                Op::GlobalPhase { angle } => match controls.split_last() {
                    None => Op::GlobalPhase { angle: *angle },
                    Some((last, rest)) => {
                        let z = Complex64::from_polar(1.0, *angle);
                        let one = Complex64::new(1.0, 0.0);
                        let zero = Complex64::new(0.0, 0.0);
                        let m = if last.on { [[one, zero], [zero, z]] } else { [[z, zero], [zero, one]] };
                        Op::Gate { label: "cphase".into(), target: last.qubit, controls: rest.to_vec(), matrix: m }
                    }
                },
            };
            out.push(op)?;
        }
        out.blocks = self.blocks.clone();
        Ok(out)
    }

    /// Ops inside blocks named `name`.
    pub fn block_ops(&self, name: &str) -> Vec<&Op> {
        let mut idx: Vec<usize> = self.blocks.iter().filter(|b| b.name == name).flat_map(|b| b.ops.clone()).collect();
        idx.sort_unstable();
        idx.dedup();
        idx.into_iter().map(|i| &self.ops[i]).collect()
    }

    /// Copy with every op inside blocks named `name` removed (and those blocks dropped).
    pub fn without_block(&self, name: &str) -> Circuit {
        let drop: Vec<bool> =
            (0..self.ops.len()).map(|i| self.blocks.iter().any(|b| b.name == name && b.ops.contains(&i))).collect();
        let mut new_index = Vec::with_capacity(self.ops.len() + 1);
        let mut k = 0;
        for &d in &drop {
            new_index.push(k);
            if !d {
                k += 1;
            }
        }
        new_index.push(k);
        Circuit {
            n_qubits: self.n_qubits,
            ops: self.ops.iter().zip(&drop).filter(|(_, &d)| !d).map(|(op, _)| op.clone()).collect(),
            blocks: self
                .blocks
                .iter()
                .filter(|b| b.name != name)
                .map(|b| Block { name: b.name.clone(), ops: new_index[b.ops.start]..new_index[b.ops.end] })
                .filter(|b| !b.ops.is_empty())
                .collect(),
        }
    }

    pub fn count_blocks(&self, name: &str) -> usize {
        self.blocks.iter().filter(|b| b.name == name).count()
    }

    pub(crate) fn set_blocks(&mut self, blocks: Vec<Block>) -> Result<()> {
        for b in &blocks {
            if b.ops.start > b.ops.end || b.ops.end > self.ops.len() {
                return Err(Error::param(format!("block {} out of range", b.name)));
            }
        }
        for (i, x) in blocks.iter().enumerate() {
            for y in &blocks[..i] {
                let disjoint = x.ops.end <= y.ops.start || y.ops.end <= x.ops.start;
                let nested = (x.ops.start >= y.ops.start && x.ops.end <= y.ops.end)
                    || (y.ops.start >= x.ops.start && y.ops.end <= x.ops.end);
                if !(disjoint || nested) {
                    return Err(Error::param(format!("blocks {} and {} overlap without nesting", x.name, y.name)));
                }
            }
        }
        self.blocks = blocks;
        Ok(())
    }

    pub fn apply_in_place(&self, state: &mut QuantumState) -> Result<()> {
        if state.n_qubits() != self.n_qubits {
            return Err(Error::SizeMismatch(state.n_qubits(), self.n_qubits));
        }
        for op in &self.ops {
            apply_op(op, state)?;
        }
        Ok(())
    }

    pub fn apply(&self, state: &QuantumState) -> Result<QuantumState> {
        let mut s = state.clone();
        self.apply_in_place(&mut s)?;
        Ok(s)
    }

    /// Runs the circuit on `|0…0⟩`.
    pub fn simulate(&self) -> Result<QuantumState> {
        let mut s = QuantumState::zero(self.n_qubits)?;
        self.apply_in_place(&mut s)?;
        Ok(s)
    }

    /// Dense unitary, column `j` = image of `|j⟩`. Intended for small registers.
    pub fn dense_unitary(&self) -> Result<Vec<Vec<Complex64>>> {
        if self.n_qubits > 12 {
            return Err(Error::QubitCount(self.n_qubits));
        }
        let dim = 1usize << self.n_qubits;
        let cols: Vec<Vec<Complex64>> = (0..dim)
            .map(|j| {
                let mut s = QuantumState::basis(self.n_qubits, j)?;
                self.apply_in_place(&mut s)?;
                Ok(s.into_amplitudes())
            })
            .collect::<Result<_>>()?;
        Ok((0..dim).map(|i| cols.iter().map(|c| c[i]).collect()).collect())
    }
}

pub(crate) fn apply_op(op: &Op, state: &mut QuantumState) -> Result<()> {
    match op {
        Op::Gate { target, controls, matrix, .. } => state.apply_controlled(controls, *target, matrix),
        Op::Qft { qubits, inverse, controls } => state.apply_controlled_qft(controls, qubits.clone(), *inverse),
        Op::GlobalPhase { angle } => {
            state.apply_global_phase(*angle);
            Ok(())
        }
    }
}

/// `min_φ max_ij |e^{iφ} a_ij − b_ij|`, with φ aligned on the overall overlap.
pub fn max_diff_up_to_phase(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch(a.len(), b.len()));
    }
    let overlap: Complex64 = a.iter().zip(b).flat_map(|(x, y)| x.iter().zip(y).map(|(p, q)| p.conj() * q)).sum();
    let phase = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { Complex64::new(1.0, 0.0) };
    let mut worst = 0.0f64;
    for (x, y) in a.iter().zip(b) {
        if x.len() != y.len() {
            return Err(Error::SizeMismatch(x.len(), y.len()));
        }
        for (p, q) in x.iter().zip(y) {
            worst = worst.max((p * phase - q).norm());
        }
    }
    Ok(worst)
}
