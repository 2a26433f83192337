//! A Slater function and its Fourier dual: `U^(S)` prepares the Slater state and one
//! QFT turns it into the Lorentzian of the same decay rate.

use lorentz_encode::circuits::{metrics, u_lorentzian, u_slater};
use lorentz_encode::locfuncs::{lf_vector, lorentz_width, sf_vector};

fn main() -> lorentz_encode::Result<()> {
    let (n_q, a) = (4, 0.5);
    let slater = u_slater(a, n_q)?.simulate()?;
    let lorentz = u_lorentzian(a, n_q)?.simulate()?;
    println!("j    slater     lorentzian   (closed forms {:?}..)", &sf_vector(n_q, a, 0)[..2]);
    for (j, (s, l)) in slater.amplitudes().iter().zip(lorentz.amplitudes()).enumerate() {
        println!("{j:2}  {:+.6}  {:+.6}", s.re, l.re);
    }
    let err = lorentz.amplitudes().iter().zip(lf_vector(n_q, a, 0)).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    println!("max |circuit − closed form| = {err:.2e}");
    println!("Lorentzian width for a={a}: {:.4}", lorentz_width(n_q, a));
    println!("U^(S) depth {} for n_q={n_q}", metrics(&u_slater(a, n_q)?).depth);
    Ok(())
}
