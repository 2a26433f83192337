//! Compiles one multiply-controlled layer of distinct single-qubit gates into a shared
//! fan-out, checks it against the naive product of controlled gates, and prints the
//! text form of the compiled circuit.

use lorentz_encode::circuits::{max_diff_up_to_phase, mcm1, metrics, text, Circuit};
use lorentz_encode::matrix;
use lorentz_encode::statevector::Control;

fn main() -> lorentz_encode::Result<()> {
    let n = 5;
    let controls = [Control::on(3), Control::off(4)];
    let targets = [(0, matrix::hadamard()), (1, matrix::ry(0.7)), (2, matrix::phase(-1.1))];
    let fast = mcm1(n, &controls, &targets)?;
    let mut naive = Circuit::new(n)?;
    for (t, u) in targets {
        naive.controlled_gate("u", &controls, t, u)?;
    }
    let d = max_diff_up_to_phase(&fast.dense_unitary()?, &naive.dense_unitary()?)?;
    println!("max deviation up to global phase: {d:.2e}");
    println!("compiled {:?}\nnaive    {:?}", metrics(&fast), metrics(&naive));
    print!("{}", text::to_text(&fast));
    Ok(())
}
