//! Amplitude reduction followed by amplification makes the encoder succeed with
//! certainty. The plan is derived from the exact success weight `1/λ²`.

use lorentz_encode::circuits::{c_lc_deterministic, c_lc_deterministic_with, QftConvention, ReflectionScope};
use lorentz_encode::locfuncs::{lc_target_state, normalize_lc, LcSpec};
use lorentz_encode::qara::plan_for_lc;

fn main() -> lorentz_encode::Result<()> {
    let lc = normalize_lc(&LcSpec::one_dim(4, &[(0.9, 0.3, 2), (-0.6, 1.2, 7), (0.4, 0.6, 12)])?)?;
    let plan = plan_for_lc(&lc)?;
    println!("w = {:.6}, m_opt = {}, θ_AR,opt = {:.6}", plan.w, plan.m_opt, plan.theta_ar_opt);
    let enc = c_lc_deterministic(&lc, &plan)?;
    let out = enc.simulate_success()?;
    println!("success probability {:.15}", out.probability);
    println!("fidelity {:.15}", out.data_state.fidelity(&lc_target_state(&lc)?)?);
    println!("{:?}", enc.metrics());

    // Reflecting only the ancillae inside Q does not reproduce the exact rotation.
    let scoped = c_lc_deterministic_with(&lc, &plan, QftConvention::Forward, ReflectionScope::AncillaOnly)?;
    println!("ancilla-only inner reflection: probability {:.6}", scoped.simulate_success()?.probability);
    Ok(())
}
