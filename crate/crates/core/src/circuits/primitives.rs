use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::circuit::Circuit;
use crate::matrix::{self, Mat2};
use crate::statevector::Control;
use crate::{Error, Result};

/// Which transform maps Slater states to Lorentzian states at the end of a generator.
///
/// Both give the same Lorentzian because the Slater vector is real and symmetric; the
/// phase-shift signs flip with the choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum QftConvention {
    #[default]
    Forward,
    Dagger,
}

impl QftConvention {
    pub fn is_inverse(self) -> bool {
        self == QftConvention::Dagger
    }

    /// Multiplier applied to a center before it is turned into shift phases.
    pub(crate) fn shift_sign(self) -> i64 {
        match self {
            QftConvention::Forward => 1,
            QftConvention::Dagger => -1,
        }
    }
}

fn check_rate(a: f64) -> Result<()> {
    if a > 0.0 && a.is_finite() {
        Ok(())
    } else {
        Err(Error::param(format!("decay rate must be positive and finite, got {a}")))
    }
}

/// Phase angles `φ_m = −2πk·2^m/N` of the shift by `k`, reduced exactly mod `2π`.
pub fn shift_phases(k: i64, n_q: usize) -> Vec<f64> {
    let n = 1i64 << n_q;
    (0..n_q)
        .map(|m| {
            let r = (k.rem_euclid(n) << m) % n;
            -2.0 * PI * r as f64 / n as f64
        })
        .collect()
}

/// `U_shift(k)|j⟩ = e^{−2πi kj/N}|j⟩` as one layer of `Z(φ_m)` gates.
pub fn u_shift(k: i64, n_q: usize) -> Result<Circuit> {
    let mut c = Circuit::new(n_q)?;
    for (m, phi) in shift_phases(k, n_q).into_iter().enumerate() {
        c.gate("z", m, matrix::phase(phi))?;
    }
    Ok(c)
}

/// Modular addition `|j⟩ ↦ |j+k mod N⟩`, as `F · U_shift(k) · F†`.
pub fn translation(k: i64, n_q: usize) -> Result<Circuit> {
    translation_with(k, n_q, QftConvention::Forward)
}

/// Translation sandwiched by `F`/`F†` in the chosen order; both variants add `k`.
pub fn translation_with(k: i64, n_q: usize, conv: QftConvention) -> Result<Circuit> {
    let mut c = Circuit::new(n_q)?;
    c.qft(0..n_q, !conv.is_inverse())?;
    c.append(&u_shift(conv.shift_sign() * k, n_q)?)?;
    c.qft(0..n_q, conv.is_inverse())?;
    Ok(c)
}

/// Rotation angles `θ_m` of the Slater generator.
pub fn slater_angles(a: f64, n_q: usize) -> Vec<f64> {
    (0..n_q).map(|m| if m + 1 == n_q { (-a).exp().atan() } else { (-(a * (1u64 << m) as f64)).exp().atan() }).collect()
}

/// The `R_y(2θ_m)` layer of the Slater generator.
pub fn slater_rotations(a: f64, n_q: usize) -> Result<Circuit> {
    check_rate(a)?;
    let mut c = Circuit::new(n_q)?;
    for (m, th) in slater_angles(a, n_q).into_iter().enumerate() {
        c.gate("ry", m, matrix::ry(2.0 * th))?;
    }
    Ok(c)
}

/// Fan-out flipping the lower qubits when the top one is set; shared by every Slater generator on `n_q` qubits.
pub fn slater_fanout(n_q: usize) -> Result<Circuit> {
    let targets: Vec<usize> = (0..n_q.saturating_sub(1)).collect();
    if targets.is_empty() {
        return Circuit::new(n_q);
    }
    fanout_x(n_q, &[Control::on(n_q - 1)], &targets)
}

/// `U^(S)|0⟩ = |S; a, 0⟩`: a rotation layer followed by a top-qubit-controlled fan-out.
pub fn u_slater(a: f64, n_q: usize) -> Result<Circuit> {
    let mut c = slater_rotations(a, n_q)?;
    c.append(&slater_fanout(n_q)?)?;
    Ok(c)
}

/// `U^(L) = F · U^(S)`, producing `|L; a, 0⟩`.
pub fn u_lorentzian(a: f64, n_q: usize) -> Result<Circuit> {
    u_lorentzian_with(a, n_q, QftConvention::Forward)
}

pub fn u_lorentzian_with(a: f64, n_q: usize, conv: QftConvention) -> Result<Circuit> {
    let mut c = u_slater(a, n_q)?;
    c.qft(0..n_q, conv.is_inverse())?;
    Ok(c)
}

fn check_disjoint(n_qubits: usize, groups: &[&[usize]]) -> Result<()> {
    let mut seen = vec![false; n_qubits];
    for &q in groups.iter().flat_map(|g| g.iter()) {
        if q >= n_qubits {
            return Err(Error::QubitOutOfRange { index: q, n_qubits });
        }
        if seen[q] {
            return Err(Error::OverlappingQubits(q));
        }
        seen[q] = true;
    }
    Ok(())
}

/// `C^{m_c} X^{⊗m_t}`: a logarithmic CNOT tree spreading one multi-controlled X.
///
/// Layer `S_k` holds the CNOTs `t_j → t_{j+2^{k−1}}`. The sequence `S_K … S_1`,
/// `C^{m_c}X` on `t_0`, `S_1 … S_K` flips every target exactly when all controls match.
pub fn fanout_x(n_qubits: usize, controls: &[Control], targets: &[usize]) -> Result<Circuit> {
    if targets.is_empty() {
        return Err(Error::param("fan-out needs at least one target"));
    }
    let cq: Vec<usize> = controls.iter().map(|c| c.qubit).collect();
    check_disjoint(n_qubits, &[&cq, targets])?;
    let mut c = Circuit::new(n_qubits)?;
    if controls.is_empty() {
        for &t in targets {
            c.gate("x", t, matrix::pauli_x())?;
        }
        return Ok(c);
    }
    let m_t = targets.len();
    let k_max = m_t.next_power_of_two().trailing_zeros() as usize;
    let layer = |c: &mut Circuit, k: usize| -> Result<()> {
        let half = 1usize << (k - 1);
        for j in 0..half {
            if j + half < m_t {
                c.controlled_gate("x", &[Control::on(targets[j])], targets[j + half], matrix::pauli_x())?;
            }
        }
        Ok(())
    };
    for k in (1..=k_max).rev() {
        layer(&mut c, k)?;
    }
    c.controlled_gate("x", controls, targets[0], matrix::pauli_x())?;
    for k in 1..=k_max {
        layer(&mut c, k)?;
    }
    Ok(c)
}

/// Scalar-matrix test used to detect pure-phase unitaries.
const SCALAR_TOL: f64 = 1e-12;

/// `U = e^{iα} V R_z(θ) V†` with `V|0⟩` on the rotation axis.
#[derive(Debug, Clone, Copy)]
pub(crate) struct AxisDecomposition {
    pub alpha: f64,
    /// `None` for a scalar `U`.
    pub rotation: Option<(f64, f64, f64)>,
}

/// Splits a unitary into global phase, rotation angle and axis `(θ, ϑ, φ)`.
pub(crate) fn decompose(u: &Mat2) -> AxisDecomposition {
    if matrix::is_scalar(u, SCALAR_TOL) {
        return AxisDecomposition { alpha: u[0][0].arg(), rotation: None };
    }
    let det = u[0][0] * u[1][1] - u[0][1] * u[1][0];
    let alpha = det.arg() / 2.0;
    let w = matrix::scale(u, Complex64::from_polar(1.0, -alpha));
    let (a, b) = (w[0][0], w[0][1]);
    let s = (a.im * a.im + b.norm_sqr()).sqrt();
    let mut theta = 2.0 * s.atan2(a.re);
    let mut n = [-b.im / s, -b.re / s, -a.im / s];
    if n[2] < 0.0 {
        n = [-n[0], -n[1], -n[2]];
        theta = -theta;
    }
    let polar = n[2].clamp(-1.0, 1.0).acos();
    let azimuth = if polar < 1e-12 { PI } else { n[1].atan2(n[0]) };
    AxisDecomposition { alpha, rotation: Some((theta, polar, azimuth)) }
}

/// `V` with `V σ_z V† = n·σ` for the axis at polar angle `ϑ`, azimuth `φ`.
pub fn axis_frame(polar: f64, azimuth: f64) -> Mat2 {
    let (s, c) = (polar / 2.0).sin_cos();
    let e = Complex64::from_polar(1.0, azimuth);
    [[Complex64::new(c, 0.0), Complex64::new(s, 0.0)], [e * s, -e * c]]
}

/// Multiply-controlled multiple single-qubit unitaries.
///
/// Applies `u_t` on every listed target exactly when the controls match, compiled as
/// basis changes `V_t†`, two fan-outs around a `Z(θ/2)` ladder, and one
/// `C^{n_c−1}Z(Σα)` carrying the collected global phases. Scalar unitaries only
/// contribute their phase.
pub fn mcm1(n_qubits: usize, controls: &[Control], targets: &[(usize, Mat2)]) -> Result<Circuit> {
    let cq: Vec<usize> = controls.iter().map(|c| c.qubit).collect();
    let tq: Vec<usize> = targets.iter().map(|t| t.0).collect();
    check_disjoint(n_qubits, &[&cq, &tq])?;
    for (_, u) in targets {
        let dev = matrix::unitarity_deviation(u);
        if dev > matrix::UNITARY_TOL {
            return Err(Error::NotUnitary(dev));
        }
    }
    let mut c = Circuit::new(n_qubits)?;
    if controls.is_empty() {
        for (t, u) in targets {
            if !matrix::is_scalar(u, SCALAR_TOL) {
                c.gate("u", *t, *u)?;
            } else {
                c.global_phase(u[0][0].arg());
            }
        }
        return Ok(c);
    }

    let parts: Vec<(usize, AxisDecomposition)> = targets.iter().map(|(t, u)| (*t, decompose(u))).collect();
    let alpha_total = parts.iter().map(|p| p.1.alpha).sum::<f64>().rem_euclid(2.0 * PI);
    let phase_needed = alpha_total.min(2.0 * PI - alpha_total) > 1e-14;
    let rotated: Vec<(usize, f64, f64, f64)> =
        parts.iter().filter_map(|(t, d)| d.rotation.map(|(th, pol, az)| (*t, th, pol, az))).collect();
    if rotated.is_empty() && !phase_needed {
        return Ok(c);
    }

    let anti: Vec<usize> = controls.iter().filter(|c| !c.on).map(|c| c.qubit).collect();
    let positive: Vec<Control> = cq.iter().map(|&q| Control::on(q)).collect();
    for &q in &anti {
        c.gate("x", q, matrix::pauli_x())?;
    }
    if phase_needed {
        let (last, rest) = positive.split_last().expect("controls are non-empty");
        c.controlled_gate("p", rest, last.qubit, matrix::phase(alpha_total))?;
    }
    if !rotated.is_empty() {
        let frames: Vec<(usize, Mat2)> = rotated.iter().map(|&(t, _, pol, az)| (t, axis_frame(pol, az))).collect();
        let identity = matrix::identity();
        for (t, v) in &frames {
            if matrix::max_abs_diff(v, &identity) > 1e-15 {
                c.gate("v_dg", *t, matrix::dagger(v))?;
            }
        }
        let rt: Vec<usize> = rotated.iter().map(|r| r.0).collect();
        let fan = fanout_x(n_qubits, &positive, &rt)?;
        c.append(&fan)?;
        for &(t, th, _, _) in &rotated {
            c.gate("z_dg", t, matrix::phase(-th / 2.0))?;
        }
        c.append(&fan)?;
        for &(t, th, _, _) in &rotated {
            c.gate("z", t, matrix::phase(th / 2.0))?;
        }
        for (t, v) in &frames {
            if matrix::max_abs_diff(v, &identity) > 1e-15 {
                c.gate("v", *t, *v)?;
            }
        }
    }
    for &q in &anti {
        c.gate("x", q, matrix::pauli_x())?;
    }
    Ok(c)
}

/// Sign flip on the all-zero pattern of `qubits`; identity elsewhere.
pub fn zero_reflection(n_qubits: usize, qubits: &[usize]) -> Result<Circuit> {
    let (last, rest) = qubits.split_last().ok_or_else(|| Error::param("reflection needs a qubit"))?;
    check_disjoint(n_qubits, &[qubits])?;
    let mut c = Circuit::new(n_qubits)?;
    for &q in qubits {
        c.gate("x", q, matrix::pauli_x())?;
    }
    let controls: Vec<Control> = rest.iter().map(|&q| Control::on(q)).collect();
    c.controlled_gate("z", &controls, *last, matrix::pauli_z())?;
    for &q in qubits {
        c.gate("x", q, matrix::pauli_x())?;
    }
    Ok(c)
}
