//! LCU encoders: ancilla preparation, selected generators, un-preparation, one QFT.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::circuit::Circuit;
use super::encoding::{EncodingCircuit, RegisterLayout, TRAILING_QFT};
use super::primitives::{
    mcm1, shift_phases, slater_angles, slater_fanout, u_lorentzian, u_shift, u_slater, QftConvention,
};
use crate::locfuncs::{AxisParams, ComplexLcSpec, LcSpec};
use crate::matrix::{self, Mat2};
use crate::statevector::Control;
use crate::{Error, Result};

/// Number of selection qubits for `n` terms.
pub fn ancilla_count(n: usize) -> usize {
    n.next_power_of_two().trailing_zeros() as usize
}

/// Appends the binary rotation tree mapping `|0⟩` on `ancillae` to `Σ_ℓ √(w_ℓ/Σw) |ℓ⟩`.
///
/// Bit `i` of `ℓ` lives on `ancillae[i]`; the tree fixes the most significant bit first.
fn append_prepare(c: &mut Circuit, ancillae: &[usize], weights: &[f64]) -> Result<()> {
    let n_a = ancillae.len();
    let mut padded = weights.to_vec();
    padded.resize(1 << n_a, 0.0);
    for level in 0..n_a {
        let bit = n_a - 1 - level;
        for prefix in 0..1usize << level {
            let sub = |v: usize| -> f64 { padded[v << bit..(v + 1) << bit].iter().sum() };
            let (w0, w1) = (sub(2 * prefix), sub(2 * prefix + 1));
            if w0 + w1 <= 0.0 || w1 == 0.0 {
                continue;
            }
            let theta = w1.sqrt().atan2(w0.sqrt());
            let controls: Vec<Control> = (bit + 1..n_a)
                .map(|j| Control { qubit: ancillae[j], on: (prefix >> (j - bit - 1)) & 1 == 1 })
                .collect();
            c.controlled_gate("ry", &controls, ancillae[bit], matrix::ry(2.0 * theta))?;
        }
    }
    Ok(())
}

fn check_weights(weights: &[f64]) -> Result<()> {
    if weights.is_empty() || weights.iter().any(|w| !(*w >= 0.0 && w.is_finite())) {
        return Err(Error::param("selection weights must be finite and non-negative"));
    }
    if weights.iter().all(|&w| w == 0.0) {
        return Err(Error::param("all coefficients are zero"));
    }
    Ok(())
}

/// Ancilla preparation `|0⟩ ↦ Σ_ℓ √(|d_ℓ|/λ) |ℓ⟩` on `⌈log₂ n⌉` qubits (at least one).
pub fn lcu_prepare_ancillae(coeffs: &[f64]) -> Result<Circuit> {
    let weights: Vec<f64> = coeffs.iter().map(|d| d.abs()).collect();
    check_weights(&weights)?;
    let n_a = ancilla_count(weights.len()).max(1);
    let mut c = Circuit::new(n_a)?;
    append_prepare(&mut c, &(0..n_a).collect::<Vec<_>>(), &weights)?;
    Ok(c)
}

/// One branch of the selection: weight, phase folded into its unitary, per-axis Lorentzian.
#[derive(Debug, Clone)]
pub(crate) struct SelectTerm {
    pub weight: f64,
    pub phase: f64,
    pub axes: Vec<AxisParams>,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct LcuOptions {
    pub convention: QftConvention,
    pub theta_ar: Option<f64>,
    pub trailing_qft: bool,
    /// Controls every generator gate individually instead of sharing the fan-out.
    pub naive: bool,
}

impl Default for LcuOptions {
    fn default() -> Self {
        LcuOptions { convention: QftConvention::Forward, theta_ar: None, trailing_qft: true, naive: false }
    }
}

pub(crate) fn real_select_terms(lc: &LcSpec) -> Vec<SelectTerm> {
    lc.terms()
        .iter()
        .map(|t| SelectTerm {
            weight: t.coeff.abs(),
            phase: if t.coeff < 0.0 { PI } else { 0.0 },
            axes: t.axes.clone(),
        })
        .collect()
}

fn phase_targets(term: &SelectTerm, n_q: usize, conv: QftConvention) -> Vec<(usize, Mat2)> {
    let mut out = Vec::with_capacity(term.axes.len() * n_q);
    for (mu, ax) in term.axes.iter().enumerate() {
        for (m, phi) in shift_phases(conv.shift_sign() * ax.k_c, n_q).into_iter().enumerate() {
            out.push((mu * n_q + m, matrix::phase(phi)));
        }
    }
    out[0].1 = matrix::scale(&out[0].1, Complex64::from_polar(1.0, term.phase));
    out
}

/// Core LCU builder shared by every real and complex variant.
pub(crate) fn build_lcu(n_q: usize, dim: usize, terms: &[SelectTerm], opts: LcuOptions) -> Result<EncodingCircuit> {
    let weights: Vec<f64> = terms.iter().map(|t| t.weight).collect();
    check_weights(&weights)?;
    if let Some(th) = opts.theta_ar {
        if !(0.0..FRAC_PI_2).contains(&th) {
            return Err(Error::param(format!("reduction angle {th} outside [0, π/2)")));
        }
    }
    let layout = RegisterLayout::new(n_q, dim, ancilla_count(terms.len()), opts.theta_ar.is_some());
    let n = layout.n_qubits();
    let anc = layout.lcu_ancillae.clone();
    let data: Vec<usize> = layout.data_qubits().collect();
    let mut c = Circuit::new(n)?;

    if let (Some(th), Some(q)) = (opts.theta_ar, layout.ar_ancilla) {
        let mut ar = Circuit::new(1)?;
        ar.gate("ry", 0, matrix::ry(2.0 * th))?;
        c.push_block("reduction", &ar, &[q])?;
    }

    let mut prep = Circuit::new(anc.len())?;
    append_prepare(&mut prep, &(0..anc.len()).collect::<Vec<_>>(), &weights)?;
    c.push_block("prepare", &prep, &anc)?;

    let mut select = Circuit::new(n)?;
    let active = terms.iter().enumerate().filter(|(_, t)| t.weight > 0.0);
    if opts.naive {
        for (l, term) in active {
            let mut g = Circuit::new(data.len())?;
            for (mu, ax) in term.axes.iter().enumerate() {
                let mut axis = u_slater(ax.a, n_q)?;
                axis.append(&u_shift(opts.convention.shift_sign() * ax.k_c, n_q)?)?;
                g.append_mapped(&axis, &(mu * n_q..(mu + 1) * n_q).collect::<Vec<_>>())?;
            }
            g.global_phase(term.phase);
            let g = g.embed(n, &data)?;
            select.append(&g.controlled(&Control::pattern(&anc, l))?)?;
        }
    } else {
        let active: Vec<(usize, &SelectTerm)> = active.collect();
        for &(l, term) in &active {
            let targets: Vec<(usize, Mat2)> = term
                .axes
                .iter()
                .enumerate()
                .flat_map(|(mu, ax)| {
                    slater_angles(ax.a, n_q)
                        .into_iter()
                        .enumerate()
                        .map(move |(m, th)| (mu * n_q + m, matrix::ry(2.0 * th)))
                })
                .collect();
            select.append(&mcm1(n, &Control::pattern(&anc, l), &targets)?)?;
        }
        for mu in 0..dim {
            select.push_block("fanout", &slater_fanout(n_q)?, &layout.axis(mu).collect::<Vec<_>>())?;
        }
        for &(l, term) in &active {
            let targets = phase_targets(term, n_q, opts.convention);
            select.append(&mcm1(n, &Control::pattern(&anc, l), &targets)?)?;
        }
    }
    c.push_block("select", &select, &(0..n).collect::<Vec<_>>())?;
    c.push_block("unprepare", &prep.inverse(), &anc)?;

    if opts.trailing_qft {
        let mut f = Circuit::new(data.len())?;
        for mu in 0..dim {
            f.qft(layout.axis(mu), opts.convention.is_inverse())?;
        }
        c.push_block(TRAILING_QFT, &f, &data)?;
    }
    Ok(EncodingCircuit { circuit: c, layout, lambda: weights.iter().sum(), convention: opts.convention })
}

/// Probabilistic encoder of a real LC of (product) Lorentzians.
///
/// Success means every selection ancilla reads 0; the conditional data state is the LC
/// and, for a normalised LC, the success probability is `1/λ²`.
pub fn c_lc_lorentzian(lc: &LcSpec) -> Result<EncodingCircuit> {
    c_lc_lorentzian_with(lc, QftConvention::Forward)
}

pub fn c_lc_lorentzian_with(lc: &LcSpec, convention: QftConvention) -> Result<EncodingCircuit> {
    let opts = LcuOptions { convention, ..LcuOptions::default() };
    build_lcu(lc.n_q(), lc.dim(), &real_select_terms(lc), opts)
}

/// Reference encoder that controls every generator gate, CNOT blocks included.
pub fn c_lc_lorentzian_naive(lc: &LcSpec) -> Result<EncodingCircuit> {
    let opts = LcuOptions { naive: true, ..LcuOptions::default() };
    build_lcu(lc.n_q(), lc.dim(), &real_select_terms(lc), opts)
}

/// Encoder for a product-basis LC with two or three axes.
pub fn c_lc_product(lc: &LcSpec) -> Result<EncodingCircuit> {
    if !(2..=3).contains(&lc.dim()) {
        return Err(Error::param(format!("product encoder expects 2 or 3 axes, got {}", lc.dim())));
    }
    c_lc_lorentzian(lc)
}

/// Encoder for complex coefficients and complex basis functions.
///
/// Each term `d·(L(a) + i·w·L(a_I))` contributes a branch of weight `|d|` with phase
/// `arg d` and, when present, a branch of weight `|d|·w` with phase `arg d + π/2`.
pub fn c_lc_complex(lc: &ComplexLcSpec) -> Result<EncodingCircuit> {
    let mut terms = Vec::new();
    for t in lc.terms() {
        let axes = vec![AxisParams { a: t.a, k_c: t.k_c }];
        terms.push(SelectTerm { weight: t.coeff.norm(), phase: t.coeff.arg(), axes });
        if let Some(im) = t.imag {
            if im.weight > 0.0 {
                terms.push(SelectTerm {
                    weight: t.coeff.norm() * im.weight,
                    phase: t.coeff.arg() + FRAC_PI_2,
                    axes: vec![AxisParams { a: im.a, k_c: t.k_c }],
                });
            }
        }
    }
    build_lcu(lc.n_q(), 1, &terms, LcuOptions::default())
}

/// A circuit family producing a basis function centered at the origin from `|0⟩`.
pub trait BasisOracle {
    fn generator(&self, n_q: usize) -> Result<Circuit>;
}

/// `U^(S)`: Slater function of decay rate `a`.
#[derive(Debug, Clone, Copy)]
pub struct SlaterOracle {
    pub a: f64,
}

/// `U^(L) = F·U^(S)`: Lorentzian of decay rate `a`.
#[derive(Debug, Clone, Copy)]
pub struct LorentzianOracle {
    pub a: f64,
}

impl BasisOracle for SlaterOracle {
    fn generator(&self, n_q: usize) -> Result<Circuit> {
        u_slater(self.a, n_q)
    }
}

impl BasisOracle for LorentzianOracle {
    fn generator(&self, n_q: usize) -> Result<Circuit> {
        u_lorentzian(self.a, n_q)
    }
}

/// A term `coeff · T(k_c) f` of a generic LC.
pub struct OracleTerm<'a> {
    pub coeff: f64,
    pub oracle: &'a dyn BasisOracle,
    pub k_c: i64,
}

/// Generic encoder: controlled generators, then every translation realised as one
/// shared `F†`, controlled phase shifts and one shared `F`.
pub fn c_lc_generic(n_q: usize, terms: &[OracleTerm<'_>]) -> Result<EncodingCircuit> {
    let weights: Vec<f64> = terms.iter().map(|t| t.coeff.abs()).collect();
    check_weights(&weights)?;
    let layout = RegisterLayout::new(n_q, 1, ancilla_count(terms.len()), false);
    let n = layout.n_qubits();
    let anc = layout.lcu_ancillae.clone();
    let data: Vec<usize> = layout.data_qubits().collect();
    let mut c = Circuit::new(n)?;
    let mut prep = Circuit::new(anc.len())?;
    append_prepare(&mut prep, &(0..anc.len()).collect::<Vec<_>>(), &weights)?;
    c.push_block("prepare", &prep, &anc)?;
    for (l, t) in terms.iter().enumerate().filter(|(_, t)| t.coeff != 0.0) {
        let g = t.oracle.generator(n_q)?.embed(n, &data)?;
        c.append(&g.controlled(&Control::pattern(&anc, l))?)?;
    }
    c.qft(layout.data_qubits(), true)?;
    for (l, t) in terms.iter().enumerate().filter(|(_, t)| t.coeff != 0.0) {
        let term = SelectTerm {
            weight: t.coeff.abs(),
            phase: if t.coeff < 0.0 { PI } else { 0.0 },
            axes: vec![AxisParams { a: 1.0, k_c: t.k_c }],
        };
        let targets = phase_targets(&term, n_q, QftConvention::Forward);
        c.append(&mcm1(n, &Control::pattern(&anc, l), &targets)?)?;
    }
    c.push_block("unprepare", &prep.inverse(), &anc)?;
    let mut f = Circuit::new(n_q)?;
    f.qft(0..n_q, false)?;
    c.push_block(TRAILING_QFT, &f, &data)?;
    Ok(EncodingCircuit { circuit: c, layout, lambda: weights.iter().sum(), convention: QftConvention::Forward })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::locfuncs::{
        complex_lc_target_state, lc_target_state, normalize_lc, sf_vector, ComplexTerm, ImagPart, LcTerm,
    };
    use crate::statevector::QuantumState;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_lc(rng: &mut ChaCha8Rng, n_q: usize, n_loc: usize) -> LcSpec {
        let n = 1i64 << n_q;
        let terms: Vec<(f64, f64, i64)> =
            (0..n_loc).map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(0.1..2.5), rng.gen_range(0..n))).collect();
        normalize_lc(&LcSpec::one_dim(n_q, &terms).unwrap()).unwrap()
    }

    #[test]
    fn prepare_examples() {
        let c = lcu_prepare_ancillae(&[1.0, 1.0]).unwrap();
        assert_eq!(c.len(), 1);
        let s = c.simulate().unwrap();
        for a in s.amplitudes() {
            assert!((a.re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        }
        let c = lcu_prepare_ancillae(&[4.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(c.is_empty());
        assert_eq!(c.n_qubits(), 2);

        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let d: Vec<f64> = (0..8).map(|_| rng.gen_range(0.0..3.0)).collect();
        let lambda: f64 = d.iter().sum();
        let s = lcu_prepare_ancillae(&d).unwrap().simulate().unwrap();
        for (a, w) in s.amplitudes().iter().zip(&d) {
            assert!((a - Complex64::new((w / lambda).sqrt(), 0.0)).norm() < 1e-12);
        }
        let s = lcu_prepare_ancillae(&[1.0, -2.0, 0.5]).unwrap().simulate().unwrap();
        assert!((s.amplitudes()[1].re - (2.0f64 / 3.5).sqrt()).abs() < 1e-14);
        assert!(s.amplitudes()[3].norm() < 1e-15);
        assert!(lcu_prepare_ancillae(&[0.0, 0.0]).is_err());
    }

    #[test]
    fn single_term_is_deterministic() {
        let lc = LcSpec::one_dim(4, &[(1.0, 0.7, 5)]).unwrap();
        let enc = c_lc_lorentzian(&lc).unwrap();
        assert!(enc.layout.lcu_ancillae.is_empty());
        let out = enc.simulate_success().unwrap();
        assert!((out.probability - 1.0).abs() < 1e-12);
        assert!(out.data_state.fidelity(&lc_target_state(&lc).unwrap()).unwrap() > 1.0 - 1e-12);
    }

    #[test]
    fn mirrored_pair_matches_target() {
        let lc = normalize_lc(&LcSpec::one_dim(4, &[(1.0, 0.5, 0), (1.0, 0.5, 8)]).unwrap()).unwrap();
        let out = c_lc_lorentzian(&lc).unwrap().simulate_success().unwrap();
        let target = lc_target_state(&lc).unwrap();
        assert!(out.data_state.fidelity(&target).unwrap() > 1.0 - 1e-10);
        assert!((out.probability - 1.0 / lc.lambda().powi(2)).abs() < 1e-12);
    }

    #[test]
    fn random_lcs_encode_with_expected_probability() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..12 {
            let n_loc = 1 + trial % 5;
            let lc = random_lc(&mut rng, 3 + trial % 3, n_loc);
            for conv in [QftConvention::Forward, QftConvention::Dagger] {
                let enc = c_lc_lorentzian_with(&lc, conv).unwrap();
                let out = enc.simulate_success().unwrap();
                let target = lc_target_state(&lc).unwrap();
                assert!(out.data_state.fidelity(&target).unwrap() > 1.0 - 1e-10, "trial {trial} {conv:?}");
                assert!((out.probability - 1.0 / lc.lambda().powi(2)).abs() < 1e-12);
                let deferred = enc.simulate_success_deferred().unwrap();
                assert!((deferred.probability - out.probability).abs() < 1e-12);
                assert!(deferred.data_state.max_abs_diff(&out.data_state).unwrap() < 1e-12);
            }
        }
    }

    #[test]
    fn shared_fanout_equals_controlled_fanout() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for n_loc in [2, 3, 4] {
            let lc = random_lc(&mut rng, 3, n_loc);
            let fast = c_lc_lorentzian(&lc).unwrap().simulate_success().unwrap();
            let naive = c_lc_lorentzian_naive(&lc).unwrap().simulate_success().unwrap();
            assert!(fast.data_state.fidelity(&naive.data_state).unwrap() > 1.0 - 1e-12);
            assert!((fast.probability - naive.probability).abs() < 1e-12);
        }
    }

    #[test]
    fn product_basis_encodes() {
        let lc = LcSpec::new(
            3,
            vec![
                LcTerm { coeff: 0.8, axes: vec![AxisParams { a: 0.4, k_c: 1 }, AxisParams { a: 0.9, k_c: 6 }] },
                LcTerm { coeff: -0.5, axes: vec![AxisParams { a: 1.1, k_c: 3 }, AxisParams { a: 0.5, k_c: 2 }] },
            ],
        )
        .unwrap();
        let lc = normalize_lc(&lc).unwrap();
        let out = c_lc_product(&lc).unwrap().simulate_success().unwrap();
        assert!(out.data_state.fidelity(&lc_target_state(&lc).unwrap()).unwrap() > 1.0 - 1e-10);
        assert!((out.probability - 1.0 / lc.lambda().powi(2)).abs() < 1e-12);
        assert!(c_lc_product(&LcSpec::one_dim(3, &[(1.0, 0.5, 0)]).unwrap()).is_err());
    }

    #[test]
    fn complex_coefficients_encode() {
        let i = Complex64::new(0.0, 1.0);
        let one = Complex64::new(1.0, 0.0);
        let lc = ComplexLcSpec::from_coeffs(4, &[(one, 0.5, 2), (i, 0.8, 9)]).unwrap();
        let out = c_lc_complex(&lc).unwrap().simulate_success().unwrap();
        let target = complex_lc_target_state(&lc).unwrap();
        assert!(out.data_state.fidelity(&target).unwrap() > 1.0 - 1e-10);

        let with_imag = ComplexLcSpec::new(
            3,
            vec![
                ComplexTerm {
                    coeff: Complex64::new(0.6, -0.3),
                    a: 0.5,
                    k_c: 1,
                    imag: Some(ImagPart { a: 1.2, weight: 0.4 }),
                },
                ComplexTerm {
                    coeff: Complex64::new(-0.2, 0.5),
                    a: 0.9,
                    k_c: 6,
                    imag: Some(ImagPart { a: 0.3, weight: 1.5 }),
                },
            ],
        )
        .unwrap();
        let enc = c_lc_complex(&with_imag).unwrap();
        assert_eq!(enc.layout.lcu_ancillae.len(), 2);
        let out = enc.simulate_success().unwrap();
        assert!(out.data_state.fidelity(&complex_lc_target_state(&with_imag).unwrap()).unwrap() > 1.0 - 1e-10);

        let real = LcSpec::one_dim(3, &[(0.7, 0.5, 1), (-0.4, 1.0, 5)]).unwrap();
        let as_complex =
            ComplexLcSpec::from_coeffs(3, &[(Complex64::new(0.7, 0.0), 0.5, 1), (Complex64::new(-0.4, 0.0), 1.0, 5)])
                .unwrap();
        let a = c_lc_lorentzian(&real).unwrap().simulate_success().unwrap();
        let b = c_lc_complex(&as_complex).unwrap().simulate_success().unwrap();
        assert!(a.data_state.max_abs_diff(&b.data_state).unwrap() < 1e-12);

        let rotated = ComplexLcSpec::from_coeffs(3, &[(Complex64::from_polar(1.0, 1.0), 0.5, 1)]).unwrap();
        let r = c_lc_complex(&rotated).unwrap().simulate_success().unwrap();
        let plain = c_lc_lorentzian(&LcSpec::one_dim(3, &[(1.0, 0.5, 1)]).unwrap()).unwrap().simulate_success();
        assert!((r.data_state.fidelity(&plain.unwrap().data_state).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn generic_oracles_translate_basis_functions() {
        let sf = [SlaterOracle { a: 0.6 }, SlaterOracle { a: 1.4 }];
        let terms =
            [OracleTerm { coeff: 0.9, oracle: &sf[0], k_c: 3 }, OracleTerm { coeff: -0.5, oracle: &sf[1], k_c: 12 }];
        let out = c_lc_generic(4, &terms).unwrap().simulate_success().unwrap();
        let x = sf_vector(4, 0.6, 3);
        let y = sf_vector(4, 1.4, 12);
        let raw: Vec<f64> = x.iter().zip(&y).map(|(p, q)| 0.9 * p - 0.5 * q).collect();
        let expect = QuantumState::from_real(&raw).unwrap();
        assert!(out.data_state.fidelity(&expect).unwrap() > 1.0 - 1e-10);

        let lf = [LorentzianOracle { a: 0.5 }, LorentzianOracle { a: 0.5 }];
        let terms =
            [OracleTerm { coeff: 1.0, oracle: &lf[0], k_c: 0 }, OracleTerm { coeff: 1.0, oracle: &lf[1], k_c: 8 }];
        let out = c_lc_generic(4, &terms).unwrap().simulate_success().unwrap();
        let lc = LcSpec::one_dim(4, &[(1.0, 0.5, 0), (1.0, 0.5, 8)]).unwrap();
        assert!(out.data_state.fidelity(&lc_target_state(&lc).unwrap()).unwrap() > 1.0 - 1e-10);
    }

    #[test]
    fn encoders_are_reversible() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let lc = random_lc(&mut rng, 3, 3);
        let c = c_lc_lorentzian(&lc).unwrap().circuit;
        let amps =
            (0..1usize << c.n_qubits()).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let s = QuantumState::from_amplitudes(amps.collect()).unwrap();
        let back = c.inverse().apply(&c.apply(&s).unwrap()).unwrap();
        assert!(back.max_abs_diff(&s).unwrap() < 1e-10);
    }
}
