//! Complex coefficients on one axis and a product of Lorentzians on two axes.

use num_complex::Complex64;

use lorentz_encode::circuits::{c_lc_complex, c_lc_product};
use lorentz_encode::locfuncs::{
    complex_lc_target_state, lc_target_state, normalize_lc, AxisParams, ComplexLcSpec, LcSpec, LcTerm,
};

fn main() -> lorentz_encode::Result<()> {
    let s = 0.5f64.sqrt();
    let lc = ComplexLcSpec::from_coeffs(4, &[(Complex64::new(s, 0.0), 0.5, 0), (Complex64::new(0.0, s), 0.8, 5)])?;
    let out = c_lc_complex(&lc)?.simulate_success()?;
    println!(
        "complex LC: p = {:.6}, fidelity {:.15}",
        out.probability,
        out.data_state.fidelity(&complex_lc_target_state(&lc)?)?
    );

    let terms = vec![
        LcTerm { coeff: 1.0, axes: vec![AxisParams { a: 0.5, k_c: 1 }, AxisParams { a: 0.7, k_c: 4 }] },
        LcTerm { coeff: -0.6, axes: vec![AxisParams { a: 1.0, k_c: 5 }, AxisParams { a: 0.4, k_c: 2 }] },
    ];
    let lc2 = normalize_lc(&LcSpec::new(3, terms)?)?;
    let enc = c_lc_product(&lc2)?;
    let out = enc.simulate_success()?;
    println!(
        "2D product LC on {} qubits: p = {:.6}, fidelity {:.15}",
        enc.circuit.n_qubits(),
        out.probability,
        out.data_state.fidelity(&lc_target_state(&lc2)?)?
    );
    Ok(())
}
