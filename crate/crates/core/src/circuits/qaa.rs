//! Amplitude reduction and amplification around the Lorentzian LCU encoder.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::circuit::Circuit;
use super::encoding::{EncodingCircuit, TRAILING_QFT};
use super::lcu::{build_lcu, real_select_terms, LcuOptions};
use super::primitives::{zero_reflection, QftConvention};
use crate::locfuncs::LcSpec;
use crate::qara::QaraPlan;
use crate::{Error, Result};

/// Which wires the inner reflection of `Q` acts on.
///
/// The outer reflection always marks success (all ancillae zero). The inner one must
/// reflect about the prepared state `U|0⟩`. `FullRegister` does this exactly;
/// `AncillaOnly` reflects about `U(I_d ⊗ |0⟩⟨0|)U†` instead, which only coincides when
/// the selected data operator is proportional to a unitary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ReflectionScope {
    #[default]
    FullRegister,
    AncillaOnly,
}

/// Probabilistic encoder with an extra `R_y(2θ_AR)` ancilla; success weight `w·cos²θ_AR`.
pub fn c_lc_ar(lc: &LcSpec, theta_ar: f64) -> Result<EncodingCircuit> {
    c_lc_ar_with(lc, theta_ar, QftConvention::Forward)
}

pub fn c_lc_ar_with(lc: &LcSpec, theta_ar: f64, convention: QftConvention) -> Result<EncodingCircuit> {
    let opts = LcuOptions { convention, theta_ar: Some(theta_ar), ..LcuOptions::default() };
    build_lcu(lc.n_q(), lc.dim(), &real_select_terms(lc), opts)
}

/// `U^(L,AR)`: the reduction encoder without its trailing QFT.
pub fn u_lorentzian_ar(lc: &LcSpec, theta_ar: f64, convention: QftConvention) -> Result<EncodingCircuit> {
    let opts = LcuOptions { convention, theta_ar: Some(theta_ar), trailing_qft: false, naive: false };
    build_lcu(lc.n_q(), lc.dim(), &real_select_terms(lc), opts)
}

fn q_from(u: &EncodingCircuit, scope: ReflectionScope) -> Result<Circuit> {
    let n = u.circuit.n_qubits();
    let success = u.layout.success_ancillae();
    let all: Vec<usize> = (0..n).collect();
    let inner = match scope {
        ReflectionScope::FullRegister => &all,
        ReflectionScope::AncillaOnly => &success,
    };
    let mut q = Circuit::new(n)?;
    q.append(&zero_reflection(n, &success)?)?;
    q.append(&u.circuit.inverse())?;
    q.append(&zero_reflection(n, inner)?)?;
    q.append(&u.circuit)?;
    q.global_phase(PI);
    Ok(q)
}

/// Amplification operator `Q = −U S₀ U† S₀` built from `U^(L,AR)`.
pub fn amplification_q(lc: &LcSpec, theta_ar: f64) -> Result<Circuit> {
    amplification_q_with(lc, theta_ar, QftConvention::Forward, ReflectionScope::default())
}

pub fn amplification_q_with(
    lc: &LcSpec,
    theta_ar: f64,
    convention: QftConvention,
    scope: ReflectionScope,
) -> Result<Circuit> {
    q_from(&u_lorentzian_ar(lc, theta_ar, convention)?, scope)
}

/// `U^(L,AR)`, then `m` applications of `Q`, then one QFT per data axis.
pub fn c_lc_amplified(lc: &LcSpec, theta_ar: f64, m: usize) -> Result<EncodingCircuit> {
    c_lc_amplified_with(lc, theta_ar, m, QftConvention::Forward, ReflectionScope::default())
}

pub fn c_lc_amplified_with(
    lc: &LcSpec,
    theta_ar: f64,
    m: usize,
    convention: QftConvention,
    scope: ReflectionScope,
) -> Result<EncodingCircuit> {
    let u = u_lorentzian_ar(lc, theta_ar, convention)?;
    let n = u.circuit.n_qubits();
    let all: Vec<usize> = (0..n).collect();
    let mut c = u.circuit.clone();
    if m > 0 {
        let q = q_from(&u, scope)?;
        for _ in 0..m {
            c.push_block("amplify", &q, &all)?;
        }
    }
    let mut f = Circuit::new(u.layout.data_qubits().len())?;
    for mu in 0..u.layout.dim {
        f.qft(u.layout.axis(mu), convention.is_inverse())?;
    }
    c.push_block(TRAILING_QFT, &f, &u.layout.data_qubits().collect::<Vec<_>>())?;
    Ok(EncodingCircuit { circuit: c, ..u })
}

fn check_plan(lc: &LcSpec, plan: &QaraPlan) -> Result<()> {
    let lambda = lc.lambda();
    match plan.lambda {
        Some(l) if (l - lambda).abs() <= 1e-9 * lambda => {}
        Some(l) => return Err(Error::InconsistentPlan(format!("plan λ = {l}, LC λ = {lambda}"))),
        None => {
            let w = lambda.powi(-2);
            if (plan.w - w).abs() > 1e-9 * w {
                return Err(Error::InconsistentPlan(format!("plan w = {}, LC w = {w}", plan.w)));
            }
        }
    }
    Ok(())
}

/// Deterministic encoder: reduction by `θ_AR,opt`, then `m_opt` rounds of `Q`.
pub fn c_lc_deterministic(lc: &LcSpec, plan: &QaraPlan) -> Result<EncodingCircuit> {
    c_lc_deterministic_with(lc, plan, QftConvention::Forward, ReflectionScope::default())
}

pub fn c_lc_deterministic_with(
    lc: &LcSpec,
    plan: &QaraPlan,
    convention: QftConvention,
    scope: ReflectionScope,
) -> Result<EncodingCircuit> {
    check_plan(lc, plan)?;
    c_lc_amplified_with(lc, plan.theta_ar_opt, plan.m_opt, convention, scope)
}
