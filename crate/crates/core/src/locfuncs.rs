//! Discrete Slater and Lorentzian functions on a period-`N` grid, `N = 2^n_q`.
//!
//! Both families are normalised over one period and peak at the origin. The
//! Lorentzian of decay rate `a` is the QFT of the Slater function with the same
//! `a`, and the overlap between two displaced Lorentzians has a closed form, so
//! the normalisation of a linear combination costs `O(n_loc²)` independently of
//! the register size.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::statevector::{QuantumState, MAX_QUBITS};
use crate::{Error, Result};

fn grid_size(n_q: usize) -> usize {
    1usize << n_q
}

/// `j mod N` in `[0, N)`.
pub fn wrap(j: i64, n_q: usize) -> usize {
    j.rem_euclid(grid_size(n_q) as i64) as usize
}

fn check_rate(a: f64) -> Result<()> {
    if a > 0.0 && a.is_finite() {
        Ok(())
    } else {
        Err(Error::param(format!("decay rate must be positive and finite, got {a}")))
    }
}

fn check_register(n_q: usize) -> Result<()> {
    if (1..=MAX_QUBITS).contains(&n_q) {
        Ok(())
    } else {
        Err(Error::QubitCount(n_q))
    }
}

fn norm_const(n_q: usize, a: f64) -> f64 {
    let n = grid_size(n_q) as f64;
    let num = -(-2.0 * a).exp_m1();
    let den = (1.0 + (-2.0 * a).exp()) * -(-n * a).exp_m1();
    (num / den).sqrt()
}

/// Normalisation constant `C_S(n_q, a)` of the discrete Slater function.
pub fn slater_norm_const(n_q: usize, a: f64) -> Result<f64> {
    check_register(n_q)?;
    check_rate(a)?;
    Ok(norm_const(n_q, a))
}

/// Discrete Slater function at integer coordinate `j` (reduced mod `N`). Requires `a > 0`.
pub fn slater_value(n_q: usize, a: f64, j: i64) -> f64 {
    debug_assert!(a > 0.0);
    let n = grid_size(n_q);
    let jt = wrap(j, n_q);
    let dist = if jt < n / 2 { jt } else { n - jt };
    norm_const(n_q, a) * (-a * dist as f64).exp()
}

/// Discrete Lorentzian function at integer coordinate `j`. Requires `a > 0`.
pub fn lorentzian_value(n_q: usize, a: f64, j: i64) -> f64 {
    debug_assert!(a > 0.0);
    let n = grid_size(n_q);
    let jt = wrap(j, n_q);
    let sign = if jt.is_multiple_of(2) { 1.0 } else { -1.0 };
    let e1 = (-a).exp();
    let num = -(-2.0 * a).exp_m1() * (1.0 - sign * (-a * n as f64 / 2.0).exp());
    let den = 1.0 - 2.0 * e1 * (2.0 * PI * jt as f64 / n as f64).cos() + e1 * e1;
    norm_const(n_q, a) / (n as f64).sqrt() * num / den
}

/// Width `γ_L(a) = (N/π) sinh(a/2)` of the Lorentzian peak near the origin.
pub fn lorentz_width(n_q: usize, a: f64) -> f64 {
    grid_size(n_q) as f64 / PI * (a / 2.0).sinh()
}

/// Slater function table displaced to `k_c`.
pub fn sf_vector(n_q: usize, a: f64, k_c: i64) -> Vec<f64> {
    (0..grid_size(n_q) as i64).map(|j| slater_value(n_q, a, j - k_c)).collect()
}

/// Lorentzian function table displaced to `k_c`.
pub fn lf_vector(n_q: usize, a: f64, k_c: i64) -> Vec<f64> {
    (0..grid_size(n_q) as i64).map(|j| lorentzian_value(n_q, a, j - k_c)).collect()
}

/// One displaced basis function on an `n_q`-qubit register.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LorentzianSpec {
    pub a: f64,
    pub k_c: i64,
    pub n_q: usize,
}

impl LorentzianSpec {
    pub fn new(n_q: usize, a: f64, k_c: i64) -> Result<Self> {
        check_register(n_q)?;
        check_rate(a)?;
        let n = grid_size(n_q) as i64;
        if !(0..n).contains(&k_c) {
            return Err(Error::param(format!("center {k_c} outside [0, {}]", n - 1)));
        }
        Ok(LorentzianSpec { a, k_c, n_q })
    }
}

fn real_state(values: Vec<f64>) -> QuantumState {
    QuantumState::from_real(&values).expect("basis functions are normalised and nonzero")
}

/// `|L; a, k_c⟩`.
pub fn lf_state(spec: &LorentzianSpec) -> QuantumState {
    real_state(lf_vector(spec.n_q, spec.a, spec.k_c))
}

/// `|S; a, k_c⟩`.
pub fn sf_state(spec: &LorentzianSpec) -> QuantumState {
    real_state(sf_vector(spec.n_q, spec.a, spec.k_c))
}

/// Closed-form overlap `⟨L; a, k_c | L; a', 0⟩`.
pub fn lf_overlap(a: f64, a_prime: f64, k_c: i64, n_q: usize) -> f64 {
    let n = grid_size(n_q);
    let k = wrap(k_c, n_q);
    let s = a + a_prime;
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    norm_const(n_q, a) * norm_const(n_q, a_prime) * (1.0 - sign * (-s * n as f64 / 2.0).exp()) * s.sinh()
        / (s.cosh() - (2.0 * PI * k as f64 / n as f64).cos())
}

/// Decay rate and center of one factor of a product basis function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisParams {
    pub a: f64,
    pub k_c: i64,
}

/// A term `d_ℓ Π_μ L(a_ℓμ, k_cℓμ)` of a linear combination.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LcTerm {
    pub coeff: f64,
    pub axes: Vec<AxisParams>,
}

impl LcTerm {
    pub fn one_dim(coeff: f64, a: f64, k_c: i64) -> Self {
        LcTerm { coeff, axes: vec![AxisParams { a, k_c }] }
    }
}

/// Linear combination of (products of) displaced discrete Lorentzians.
///
/// A `D`-dimensional LC places one `n_q`-qubit register per axis; axis 0 is the
/// least-significant register, so the flat basis index is `Σ_μ j_μ N^μ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LcSpec {
    n_q: usize,
    terms: Vec<LcTerm>,
}

impl LcSpec {
    pub fn new(n_q: usize, terms: Vec<LcTerm>) -> Result<Self> {
        check_register(n_q)?;
        let first = terms.first().ok_or_else(|| Error::param("linear combination has no terms"))?;
        let dim = first.axes.len();
        if dim == 0 {
            return Err(Error::param("terms need at least one axis"));
        }
        if dim * n_q > MAX_QUBITS {
            return Err(Error::QubitCount(dim * n_q));
        }
        let n = grid_size(n_q) as i64;
        for t in &terms {
            if t.axes.len() != dim {
                return Err(Error::param("all terms must have the same dimension"));
            }
            if !t.coeff.is_finite() {
                return Err(Error::param("coefficients must be finite"));
            }
            for ax in &t.axes {
                check_rate(ax.a)?;
                if !(0..n).contains(&ax.k_c) {
                    return Err(Error::param(format!("center {} outside [0, {}]", ax.k_c, n - 1)));
                }
            }
        }
        Ok(LcSpec { n_q, terms })
    }

    /// One-dimensional LC from `(coeff, a, k_c)` triples.
    pub fn one_dim(n_q: usize, terms: &[(f64, f64, i64)]) -> Result<Self> {
        Self::new(n_q, terms.iter().map(|&(d, a, k)| LcTerm::one_dim(d, a, k)).collect())
    }

    pub fn n_q(&self) -> usize {
        self.n_q
    }

    pub fn dim(&self) -> usize {
        self.terms[0].axes.len()
    }

    pub fn terms(&self) -> &[LcTerm] {
        &self.terms
    }

    pub fn n_loc(&self) -> usize {
        self.terms.len()
    }

    pub fn coeffs(&self) -> Vec<f64> {
        self.terms.iter().map(|t| t.coeff).collect()
    }

    /// `λ = Σ_ℓ |d_ℓ|`.
    pub fn lambda(&self) -> f64 {
        self.terms.iter().map(|t| t.coeff.abs()).sum()
    }

    /// Number of qubits across all axis registers.
    pub fn data_qubits(&self) -> usize {
        self.n_q * self.dim()
    }

    pub fn with_coeffs(&self, coeffs: &[f64]) -> Result<Self> {
        if coeffs.len() != self.terms.len() {
            return Err(Error::SizeMismatch(coeffs.len(), self.terms.len()));
        }
        let terms = self.terms.iter().zip(coeffs).map(|(t, &d)| LcTerm { coeff: d, axes: t.axes.clone() }).collect();
        Self::new(self.n_q, terms)
    }
}

/// Overlap between two product basis functions.
pub fn term_overlap(x: &LcTerm, y: &LcTerm, n_q: usize) -> f64 {
    x.axes.iter().zip(&y.axes).map(|(p, q)| lf_overlap(p.a, q.a, p.k_c - q.k_c, n_q)).product()
}

/// `⟨ψ_lc|ψ_lc⟩ = Σ d_ℓ² + 2 Σ_{ℓ>ℓ'} d_ℓ d_ℓ' V_ℓℓ'`.
pub fn lc_norm_sqr(lc: &LcSpec) -> f64 {
    let t = lc.terms();
    let mut total = 0.0;
    for l in 0..t.len() {
        total += t[l].coeff * t[l].coeff;
        for lp in 0..l {
            total += 2.0 * t[l].coeff * t[lp].coeff * term_overlap(&t[l], &t[lp], lc.n_q);
        }
    }
    total
}

/// Rescales the coefficients so the LC has unit norm.
pub fn normalize_lc(lc: &LcSpec) -> Result<LcSpec> {
    let norm2 = lc_norm_sqr(lc);
    if !(norm2 > 1e-24) {
        return Err(Error::param(format!("linear combination has non-positive norm² {norm2:.3e}")));
    }
    let s = norm2.sqrt();
    lc.with_coeffs(&lc.coeffs().iter().map(|d| d / s).collect::<Vec<_>>())
}

/// Unnormalised amplitudes `Σ_ℓ d_ℓ Π_μ L_{j_μ − k_cℓμ}(a_ℓμ)`.
pub fn lc_amplitudes(lc: &LcSpec) -> Vec<f64> {
    let n_q = lc.n_q;
    let n = grid_size(n_q);
    let dim = lc.dim();
    let mut out = vec![0.0; n.pow(dim as u32)];
    for t in lc.terms() {
        let tables: Vec<Vec<f64>> = t.axes.iter().map(|ax| lf_vector(n_q, ax.a, ax.k_c)).collect();
        for (idx, slot) in out.iter_mut().enumerate() {
            let mut v = t.coeff;
            let mut rest = idx;
            for table in &tables {
                v *= table[rest % n];
                rest /= n;
            }
            *slot += v;
        }
    }
    out
}

/// Reference state `Σ_ℓ d_ℓ |L; a_ℓ, k_cℓ⟩` (renormalised to absorb rounding).
pub fn lc_target_state(lc: &LcSpec) -> Result<QuantumState> {
    QuantumState::from_real(&lc_amplitudes(lc))
}

/// Real and imaginary parts of a complex basis function, each a displaced Lorentzian.
///
/// The basis function is `L(a, k_c) + i·imag_weight·L(imag_a, k_c)`; with no imaginary
/// part it is a plain Lorentzian.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexTerm {
    pub coeff: Complex64,
    pub a: f64,
    pub k_c: i64,
    pub imag: Option<ImagPart>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImagPart {
    pub a: f64,
    pub weight: f64,
}

/// One-dimensional LC with complex coefficients and optionally complex basis functions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexLcSpec {
    n_q: usize,
    terms: Vec<ComplexTerm>,
}

impl ComplexLcSpec {
    pub fn new(n_q: usize, terms: Vec<ComplexTerm>) -> Result<Self> {
        check_register(n_q)?;
        if terms.is_empty() {
            return Err(Error::param("linear combination has no terms"));
        }
        if terms.iter().all(|t| t.coeff.norm() == 0.0) {
            return Err(Error::param("all coefficients are zero"));
        }
        let n = grid_size(n_q) as i64;
        for t in &terms {
            check_rate(t.a)?;
            if !(0..n).contains(&t.k_c) {
                return Err(Error::param(format!("center {} outside [0, {}]", t.k_c, n - 1)));
            }
            if let Some(im) = t.imag {
                check_rate(im.a)?;
                if !(im.weight >= 0.0 && im.weight.is_finite()) {
                    return Err(Error::param("imaginary-part weight must be non-negative"));
                }
            }
        }
        Ok(ComplexLcSpec { n_q, terms })
    }

    /// Complex coefficients over plain Lorentzians.
    pub fn from_coeffs(n_q: usize, terms: &[(Complex64, f64, i64)]) -> Result<Self> {
        Self::new(n_q, terms.iter().map(|&(coeff, a, k_c)| ComplexTerm { coeff, a, k_c, imag: None }).collect())
    }

    pub fn n_q(&self) -> usize {
        self.n_q
    }

    pub fn terms(&self) -> &[ComplexTerm] {
        &self.terms
    }
}

/// Reference state for a complex LC, normalised.
pub fn complex_lc_target_state(lc: &ComplexLcSpec) -> Result<QuantumState> {
    let n_q = lc.n_q;
    let mut amps = vec![Complex64::new(0.0, 0.0); grid_size(n_q)];
    for t in &lc.terms {
        let re = lf_vector(n_q, t.a, t.k_c);
        let im = t.imag.map(|p| (p.weight, lf_vector(n_q, p.a, t.k_c)));
        for (j, slot) in amps.iter_mut().enumerate() {
            let mut f = Complex64::new(re[j], 0.0);
            if let Some((w, ref v)) = im {
                f += Complex64::new(0.0, w * v[j]);
            }
            *slot += t.coeff * f;
        }
    }
    QuantumState::from_amplitudes(amps)
}
