//! Amplitude reduction + amplification (QARA).
//!
//! Amplification by `m` rounds maps a success weight `w = sin²θ_w` to
//! `sin²((2m+1)θ_w)`, which reaches 1 only on the lattice `θ_w = π/(4m+2)`. QARA first
//! lowers the weight with an extra rotated ancilla, `w·cos²θ_AR`, onto the nearest
//! lattice point below `θ_w`, after which `m_opt` rounds land exactly on 1.
//!
//! When the planner is fed an estimate `w + Δw` instead of `w`, the residual failure
//! weight tends to `sin²(πΔw/(4w))` as `w → 0`. All quantities here use exact
//! trigonometry.

use std::f64::consts::{FRAC_PI_2, PI};
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::locfuncs::LcSpec;
use crate::{Error, Result};

/// Parameters that determinize amplification for a given success weight.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QaraPlan {
    /// Weight the plan was computed from.
    pub w: f64,
    pub theta_w: f64,
    pub m_opt: usize,
    pub theta_ar_opt: f64,
    /// `Σ|d_ℓ|` of the LC the plan belongs to, if any.
    pub lambda: Option<f64>,
}

/// An estimate `w_est = w_true + delta_w` with `|delta_w| < w_true`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErroneousEstimate {
    w_true: f64,
    delta_w: f64,
}

impl ErroneousEstimate {
    pub fn new(w_true: f64, delta_w: f64) -> Result<Self> {
        check_weight(w_true)?;
        if !(delta_w.abs() < w_true) {
            return Err(Error::param(format!("|Δw| = {} must be below w = {w_true}", delta_w.abs())));
        }
        check_weight(w_true + delta_w)?;
        Ok(ErroneousEstimate { w_true, delta_w })
    }

    /// Estimate with relative error `ratio = Δw/w`.
    pub fn relative(w_true: f64, ratio: f64) -> Result<Self> {
        Self::new(w_true, ratio * w_true)
    }

    pub fn w_true(&self) -> f64 {
        self.w_true
    }

    pub fn delta_w(&self) -> f64 {
        self.delta_w
    }

    pub fn w_est(&self) -> f64 {
        self.w_true + self.delta_w
    }
}

fn check_weight(w: f64) -> Result<()> {
    if w > 0.0 && w <= 1.0 {
        Ok(())
    } else {
        Err(Error::param(format!("success weight {w} outside (0, 1]")))
    }
}

/// `sin²((2m+1)·asin√w)`.
pub fn amplified_weight(w: f64, m: usize) -> f64 {
    ((2 * m + 1) as f64 * w.sqrt().asin()).sin().powi(2)
}

/// Smallest `m` with `π/(4m+2) ≤ θ_w`; 0 when `θ_w = π/2`.
fn iterations_for(theta_w: f64) -> usize {
    if theta_w >= FRAC_PI_2 {
        return 0;
    }
    (PI / (4.0 * theta_w) - 0.5).ceil().max(0.0) as usize
}

fn reduction_angle(w: f64, m: usize) -> f64 {
    let ratio = (PI / (4 * m + 2) as f64).sin() / w.sqrt();
    ratio.min(1.0).acos()
}

/// Exact determinization plan for weight `w`.
pub fn plan_exact(w: f64) -> Result<QaraPlan> {
    check_weight(w)?;
    let theta_w = w.sqrt().asin();
    let m_opt = iterations_for(theta_w);
    let theta_ar_opt = if m_opt == 0 { 0.0 } else { reduction_angle(w, m_opt) };
    Ok(QaraPlan { w, theta_w, m_opt, theta_ar_opt, lambda: None })
}

/// `1/λ²`, the success weight of the probabilistic encoder for a normalised LC.
pub fn analytic_success_weight(lc: &LcSpec) -> f64 {
    lc.lambda().powi(-2)
}

/// Plan for the deterministic encoder of `lc` (assumed normalised).
pub fn plan_for_lc(lc: &LcSpec) -> Result<QaraPlan> {
    let mut plan = plan_exact(analytic_success_weight(lc).min(1.0))?;
    plan.lambda = Some(lc.lambda());
    Ok(plan)
}

/// Plan computed from the estimate `w_est` in place of the true weight.
pub fn plan_erroneous(est: &ErroneousEstimate) -> Result<QaraPlan> {
    plan_exact(est.w_est())
}

/// `1 − W_ARA`: failure weight after running the plan built from `w_est` on the true `w`.
pub fn failure_weight_after_qara(est: &ErroneousEstimate) -> Result<f64> {
    let plan = plan_erroneous(est)?;
    let reduced = est.w_true * plan.theta_ar_opt.cos().powi(2);
    Ok(1.0 - amplified_weight(reduced, plan.m_opt))
}

/// Failure weight when the iteration count from `w_est` is applied without reduction.
pub fn qaa_only_failure(est: &ErroneousEstimate) -> Result<f64> {
    let plan = plan_erroneous(est)?;
    Ok(1.0 - amplified_weight(est.w_true, plan.m_opt))
}

/// Small-`w` limit of the QARA failure weight, `sin²(π·ratio/4)`.
pub fn epsilon_qara(delta_ratio: f64) -> f64 {
    (PI * delta_ratio / 4.0).sin().powi(2)
}

/// One point of the failure-weight sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub w: f64,
    pub delta_ratio: f64,
    pub wf_qara: f64,
    pub wf_qaa: f64,
    pub eps_qara: f64,
}

/// Relative errors used by default.
pub const DEFAULT_RATIOS: [f64; 3] = [0.1, 0.04, 0.01];

/// `n` points spaced evenly in `log w` over `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi >= lo) || n == 0 {
        return Err(Error::param("log grid needs 0 < lo ≤ hi and at least one point"));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    let (a, b) = (lo.ln(), hi.ln());
    Ok((0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect())
}

/// Default weight grid: 200 log-spaced points over `[1e-4, 0.5]`.
pub fn default_w_grid() -> Vec<f64> {
    log_grid(1e-4, 0.5, 200).expect("valid constants")
}

/// Failure weights of QARA and of QAA alone for every `(ratio, w)` pair, ratio-major.
pub fn sweep_fig1c(delta_ratios: &[f64], w_grid: &[f64]) -> Result<Vec<SweepRow>> {
    if delta_ratios.is_empty() || w_grid.is_empty() {
        return Err(Error::param("sweep grids must be non-empty"));
    }
    let pairs: Vec<(f64, f64)> = delta_ratios.iter().flat_map(|&r| w_grid.iter().map(move |&w| (r, w))).collect();
    pairs
        .par_iter()
        .map(|&(ratio, w)| {
            let est = ErroneousEstimate::relative(w, ratio)?;
            Ok(SweepRow {
                w,
                delta_ratio: ratio,
                wf_qara: failure_weight_after_qara(&est)?,
                wf_qaa: qaa_only_failure(&est)?,
                eps_qara: epsilon_qara(ratio),
            })
        })
        .collect()
}

/// Writes sweep rows as CSV with a header line.
pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], mut out: W) -> Result<()> {
    writeln!(out, "w,delta_ratio,wf_qara,wf_qaa,eps_qara")?;
    for r in rows {
        writeln!(out, "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}", r.w, r.delta_ratio, r.wf_qara, r.wf_qaa, r.eps_qara)?;
    }
    Ok(())
}
