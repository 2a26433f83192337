//! Dense statevector simulation.
//!
//! Basis ordering is little-endian throughout the crate: qubit `q` contributes
//! `2^q` to a basis index, so qubit 0 is the least-significant bit.
//!
//! The quantum Fourier transform uses the `+` sign convention,
//! `F|j⟩ = N^{-1/2} Σ_k exp(+2πi jk/N) |k⟩`.

use std::ops::Range;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::matrix::{self, Mat2};
use crate::{Error, Result};

/// Desk-scale register cap (2^24 amplitudes).
pub const MAX_QUBITS: usize = 24;

/// Outcomes below this probability are reported as impossible.
pub const IMPOSSIBLE_PROBABILITY: f64 = 1e-14;

const PAR_THRESHOLD: usize = 1 << 14;

/// A control wire with its polarity. `on == false` is an anti-control.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Control {
    pub qubit: usize,
    pub on: bool,
}

impl Control {
    pub fn on(qubit: usize) -> Self {
        Control { qubit, on: true }
    }

    pub fn off(qubit: usize) -> Self {
        Control { qubit, on: false }
    }

    /// Controls selecting the integer `value` on `qubits` (bit `i` of `value` on `qubits[i]`).
    pub fn pattern(qubits: &[usize], value: usize) -> Vec<Control> {
        qubits.iter().enumerate().map(|(i, &q)| Control { qubit: q, on: (value >> i) & 1 == 1 }).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

/// Result of projecting some qubits onto a bit pattern.
#[derive(Debug, Clone)]
pub struct MeasurementOutcome {
    pub probability: f64,
    /// Renormalised conditional state on the full register.
    pub post_state: QuantumState,
    measured: Vec<usize>,
    pattern: Vec<bool>,
}

fn check_n_qubits(n: usize) -> Result<()> {
    if (1..=MAX_QUBITS).contains(&n) {
        Ok(())
    } else {
        Err(Error::QubitCount(n))
    }
}

impl QuantumState {
    /// `|0…0⟩` on `n_qubits` qubits.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::basis(n_qubits, 0)
    }

    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        check_n_qubits(n_qubits)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::param(format!("basis index {index} >= {dim}")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(QuantumState { n_qubits, amps })
    }

    /// Builds a state from arbitrary amplitudes, normalising them.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if !len.is_power_of_two() || len < 2 {
            return Err(Error::NotPowerOfTwo(len));
        }
        let n_qubits = len.trailing_zeros() as usize;
        check_n_qubits(n_qubits)?;
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 1e-150) || !norm.is_finite() {
            return Err(Error::ZeroNorm);
        }
        let amps = amps.into_iter().map(|a| a / norm).collect();
        Ok(QuantumState { n_qubits, amps })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::from_amplitudes(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q < self.n_qubits {
            Ok(())
        } else {
            Err(Error::QubitOutOfRange { index: q, n_qubits: self.n_qubits })
        }
    }

    fn control_mask(&self, controls: &[Control], exclude: &[usize]) -> Result<(usize, usize)> {
        let mut mask = 0usize;
        let mut value = 0usize;
        for c in controls {
            self.check_qubit(c.qubit)?;
            let bit = 1usize << c.qubit;
            if mask & bit != 0 || exclude.contains(&c.qubit) {
                return Err(Error::OverlappingQubits(c.qubit));
            }
            mask |= bit;
            if c.on {
                value |= bit;
            }
        }
        Ok((mask, value))
    }

    /// Applies a single-qubit unitary on `target`.
    pub fn apply_1q(&mut self, target: usize, u: &Mat2) -> Result<()> {
        self.apply_controlled(&[], target, u)
    }

    /// Applies `u` on `target` on the basis states whose control bits match every polarity.
    pub fn apply_controlled(&mut self, controls: &[Control], target: usize, u: &Mat2) -> Result<()> {
        self.check_qubit(target)?;
        let dev = matrix::unitarity_deviation(u);
        if dev > matrix::UNITARY_TOL {
            return Err(Error::NotUnitary(dev));
        }
        let (mask, value) = self.control_mask(controls, &[target])?;
        self.kernel_1q(target, mask, value, u);
        Ok(())
    }

    fn kernel_1q(&mut self, target: usize, mask: usize, value: usize, u: &Mat2) {
        let stride = 1usize << target;
        let block = stride << 1;
        let u = *u;
        let body = move |(k, chunk): (usize, &mut [Complex64])| {
            let base = k * block;
            for i in 0..stride {
                if (base + i) & mask != value {
                    continue;
                }
                let a = chunk[i];
                let b = chunk[i + stride];
                chunk[i] = u[0][0] * a + u[0][1] * b;
                chunk[i + stride] = u[1][0] * a + u[1][1] * b;
            }
        };
        if self.amps.len() >= PAR_THRESHOLD && self.amps.len() / block >= 2 {
            self.amps.par_chunks_mut(block).enumerate().for_each(body);
        } else {
            self.amps.chunks_mut(block).enumerate().for_each(body);
        }
    }

    /// Multiplies every amplitude by `exp(i·angle)`.
    pub fn apply_global_phase(&mut self, angle: f64) {
        let z = Complex64::from_polar(1.0, angle);
        self.amps.iter_mut().for_each(|a| *a *= z);
    }

    /// Applies the QFT (or its inverse) to the contiguous sub-register `qubits`.
    pub fn apply_qft(&mut self, qubits: Range<usize>, inverse: bool) -> Result<()> {
        self.apply_controlled_qft(&[], qubits, inverse)
    }

    /// QFT on `qubits`, applied only where all controls match.
    pub fn apply_controlled_qft(&mut self, controls: &[Control], qubits: Range<usize>, inverse: bool) -> Result<()> {
        if qubits.is_empty() || qubits.end > self.n_qubits {
            return Err(Error::param(format!("QFT range {qubits:?} invalid for a {}-qubit register", self.n_qubits)));
        }
        let inside: Vec<usize> = qubits.clone().collect();
        let (mask, value) = self.control_mask(controls, &inside)?;
        let lo = qubits.start;
        let m = qubits.len();
        let size = 1usize << m;
        let range_mask = (size - 1) << lo;
        let mut planner = FftPlanner::<f64>::new();
        // rustfft's forward kernel is exp(-2πi jk/N); ours is the opposite sign.
        let fft = if inverse { planner.plan_fft_forward(size) } else { planner.plan_fft_inverse(size) };
        let scale = 1.0 / (size as f64).sqrt();
        let mut buf = vec![Complex64::new(0.0, 0.0); size];
        let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
        for base in 0..self.amps.len() {
            if base & range_mask != 0 || base & mask != value {
                continue;
            }
            for (k, slot) in buf.iter_mut().enumerate() {
                *slot = self.amps[base | (k << lo)];
            }
            fft.process_with_scratch(&mut buf, &mut scratch);
            for (k, v) in buf.iter().enumerate() {
                self.amps[base | (k << lo)] = v * scale;
            }
        }
        Ok(())
    }

    /// Projects `ancillae` onto `pattern` (pattern[i] is the bit for ancillae[i]).
    pub fn project_ancilla(&self, ancillae: &[usize], pattern: &[bool]) -> Result<MeasurementOutcome> {
        if ancillae.len() != pattern.len() {
            return Err(Error::SizeMismatch(ancillae.len(), pattern.len()));
        }
        let controls: Vec<Control> = ancillae.iter().zip(pattern).map(|(&q, &on)| Control { qubit: q, on }).collect();
        let (mask, value) = self.control_mask(&controls, &[])?;
        let probability: f64 =
            self.amps.iter().enumerate().filter(|(i, _)| i & mask == value).map(|(_, a)| a.norm_sqr()).sum();
        if probability < IMPOSSIBLE_PROBABILITY {
            return Err(Error::ImpossibleOutcome(probability));
        }
        let norm = probability.sqrt();
        let amps = self
            .amps
            .iter()
            .enumerate()
            .map(|(i, a)| if i & mask == value { a / norm } else { Complex64::new(0.0, 0.0) })
            .collect();
        Ok(MeasurementOutcome {
            probability,
            post_state: QuantumState { n_qubits: self.n_qubits, amps },
            measured: ancillae.to_vec(),
            pattern: pattern.to_vec(),
        })
    }

    /// `|⟨a|b⟩|²`.
    pub fn fidelity(&self, other: &QuantumState) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &QuantumState) -> Result<Complex64> {
        if self.amps.len() != other.amps.len() {
            return Err(Error::SizeMismatch(self.amps.len(), other.amps.len()));
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    /// Largest `|ψ_i − φ_i|` between two equally sized states.
    pub fn max_abs_diff(&self, other: &QuantumState) -> Result<f64> {
        if self.amps.len() != other.amps.len() {
            return Err(Error::SizeMismatch(self.amps.len(), other.amps.len()));
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    /// Drops the qubits listed in `removed`, keeping only amplitudes where they read `pattern`.
    /// The remaining qubits keep their relative order.
    pub fn restrict(&self, removed: &[usize], pattern: &[bool]) -> Result<QuantumState> {
        if removed.len() != pattern.len() {
            return Err(Error::SizeMismatch(removed.len(), pattern.len()));
        }
        let kept: Vec<usize> = (0..self.n_qubits).filter(|q| !removed.contains(q)).collect();
        let mut base = 0usize;
        for (&q, &b) in removed.iter().zip(pattern) {
            self.check_qubit(q)?;
            if b {
                base |= 1 << q;
            }
        }
        let amps: Vec<Complex64> = (0..1usize << kept.len())
            .map(|r| {
                let mut idx = base;
                for (i, &q) in kept.iter().enumerate() {
                    if (r >> i) & 1 == 1 {
                        idx |= 1 << q;
                    }
                }
                self.amps[idx]
            })
            .collect();
        QuantumState::from_amplitudes(amps)
    }
}

impl MeasurementOutcome {
    /// Conditional state of the unmeasured qubits.
    pub fn remaining(&self) -> Result<QuantumState> {
        self.post_state.restrict(&self.measured, &self.pattern)
    }
}

pub fn zero_state(n_qubits: usize) -> Result<QuantumState> {
    QuantumState::zero(n_qubits)
}

pub fn fidelity(a: &QuantumState, b: &QuantumState) -> Result<f64> {
    a.fidelity(b)
}
