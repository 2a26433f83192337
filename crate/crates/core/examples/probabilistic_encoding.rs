//! LCU encoding of two Lorentzians: success-conditioned output equals the target and
//! the success probability is `1/λ²`.

use lorentz_encode::circuits::c_lc_lorentzian;
use lorentz_encode::locfuncs::{lc_target_state, normalize_lc, LcSpec};

fn main() -> lorentz_encode::Result<()> {
    let lc = normalize_lc(&LcSpec::one_dim(4, &[(1.0, 0.5, 0), (1.0, 0.5, 8)])?)?;
    let enc = c_lc_lorentzian(&lc)?;
    let out = enc.simulate_success()?;
    let target = lc_target_state(&lc)?;
    println!("coefficients {:?}, λ = {:.6}", lc.coeffs(), lc.lambda());
    println!("success probability {:.12} (1/λ² = {:.12})", out.probability, lc.lambda().powi(-2));
    println!("fidelity {:.15}", out.data_state.fidelity(&target)?);
    let deferred = enc.simulate_success_deferred()?;
    println!("deferred-measurement ordering agrees: {:.2e}", deferred.data_state.max_abs_diff(&out.data_state)?);
    println!("{:?}", enc.metrics());
    Ok(())
}
