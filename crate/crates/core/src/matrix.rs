//! Fixed-size 2×2 complex matrices used as single-qubit gate payloads.

use num_complex::Complex64;

pub type C64 = Complex64;

/// Row-major 2×2 complex matrix.
pub type Mat2 = [[C64; 2]; 2];

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

pub const UNITARY_TOL: f64 = 1e-10;

pub fn identity() -> Mat2 {
    [[ONE, ZERO], [ZERO, ONE]]
}

pub fn pauli_x() -> Mat2 {
    [[ZERO, ONE], [ONE, ZERO]]
}

pub fn pauli_y() -> Mat2 {
    [[ZERO, C64::new(0.0, -1.0)], [C64::new(0.0, 1.0), ZERO]]
}

pub fn pauli_z() -> Mat2 {
    [[ONE, ZERO], [ZERO, -ONE]]
}

pub fn hadamard() -> Mat2 {
    let s = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    [[s, s], [s, -s]]
}

/// `R_y(angle) = exp(-i angle Y / 2)`; `R_y(2θ)|0⟩ = cos θ|0⟩ + sin θ|1⟩`.
pub fn ry(angle: f64) -> Mat2 {
    let (s, c) = (angle / 2.0).sin_cos();
    [[C64::new(c, 0.0), C64::new(-s, 0.0)], [C64::new(s, 0.0), C64::new(c, 0.0)]]
}

/// Phase shift `Z(φ) = diag(1, e^{iφ})`.
pub fn phase(phi: f64) -> Mat2 {
    [[ONE, ZERO], [ZERO, C64::from_polar(1.0, phi)]]
}

/// `e^{iφ} I`.
pub fn global_phase(phi: f64) -> Mat2 {
    scale(&identity(), C64::from_polar(1.0, phi))
}

pub fn scale(m: &Mat2, s: C64) -> Mat2 {
    [[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]]
}

pub fn mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[ZERO; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn dagger(m: &Mat2) -> Mat2 {
    [[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]]
}

/// Max-abs entry of `u†u − I`.
pub fn unitarity_deviation(u: &Mat2) -> f64 {
    let p = mul(&dagger(u), u);
    let id = identity();
    let mut worst = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            worst = worst.max((p[i][j] - id[i][j]).norm());
        }
    }
    worst
}

pub fn is_unitary(u: &Mat2) -> bool {
    unitarity_deviation(u) <= UNITARY_TOL
}

/// True when `m` is a scalar multiple of the identity within `tol`.
pub fn is_scalar(m: &Mat2, tol: f64) -> bool {
    m[0][1].norm() <= tol && m[1][0].norm() <= tol && (m[0][0] - m[1][1]).norm() <= tol
}

pub fn max_abs_diff(a: &Mat2, b: &Mat2) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            worst = worst.max((a[i][j] - b[i][j]).norm());
        }
    }
    worst
}
