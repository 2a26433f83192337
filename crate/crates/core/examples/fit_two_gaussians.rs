//! Fits three displaced Lorentzians to a sum of two Gaussians on 32 points.

use lorentz_encode::fitter::{fit, FitConfig, TargetFunction};
use lorentz_encode::locfuncs::lc_target_state;

fn main() -> lorentz_encode::Result<()> {
    let target = TargetFunction::two_gaussians();
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let result = fit(&target, &FitConfig { seed, ..FitConfig::default() })?;
    println!("seed {seed}: F = {:.5}", result.f);
    println!("a   = {:.3?}\nk_c = {:?}\nd   = {:.3?}", result.a, result.k_c, result.d);
    let fitted = lc_target_state(&result.to_lc()?)?;
    for (j, (t, f)) in target.samples().iter().zip(fitted.amplitudes()).enumerate() {
        let bar = "#".repeat((f.re.max(0.0) * 60.0) as usize);
        println!("{j:2} {t:+.4} {:+.4} {bar}", f.re);
    }
    Ok(())
}
