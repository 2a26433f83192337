//! Failure weight when the reduction plan is built from a misestimated success weight,
//! compared with amplification alone and with the small-`w` limit.

use lorentz_encode::qara::{log_grid, sweep_fig1c, write_sweep_csv};

fn main() -> lorentz_encode::Result<()> {
    let rows = sweep_fig1c(&[0.1, 0.04, 0.01], &log_grid(1e-4, 0.5, 9)?)?;
    println!("{:>10} {:>6} {:>12} {:>12} {:>12}", "w", "Δw/w", "W_f QARA", "W_f QAA", "ε_QARA");
    for r in &rows {
        println!("{:>10.3e} {:>6} {:>12.3e} {:>12.3e} {:>12.3e}", r.w, r.delta_ratio, r.wf_qara, r.wf_qaa, r.eps_qara);
    }
    let mut csv = Vec::new();
    write_sweep_csv(&rows[..2], &mut csv)?;
    print!("\nCSV form:\n{}", String::from_utf8_lossy(&csv));
    Ok(())
}
