//! Depth and gate counts of the generators and of the LCU encoder across sizes.

use lorentz_encode::circuits::{metrics, u_shift, u_slater};
use lorentz_encode::cli::{metrics_rows, Builder, MetricsConfig, RunOptions};

fn main() -> lorentz_encode::Result<()> {
    println!("n_q  depth(U^(S))  depth(U_shift)");
    for n_q in [2, 4, 8, 16] {
        println!("{n_q:3}  {:12}  {:14}", metrics(&u_slater(0.5, n_q)?).depth, metrics(&u_shift(3, n_q)?).depth);
    }
    let cfg =
        MetricsConfig { builder: Builder::CLc, n_q: vec![3, 5], n_loc: vec![2, 4, 8], ..MetricsConfig::default() };
    println!("\nn_q n_loc depth cx mcu");
    for r in metrics_rows(&cfg, &RunOptions::default())? {
        println!("{:3} {:5} {:5} {:3} {:3}", r.n_q, r.n_loc, r.depth, r.cx_count, r.mcu_count);
    }
    Ok(())
}
