//! Qubit encoding of linear combinations of discrete Lorentzian functions.
//!
//! The crate is organised bottom-up:
//!
//! - [`statevector`]: a dense little-endian statevector simulator (qubit 0 is the
//!   least-significant bit of a basis index).
//! - [`locfuncs`]: closed forms for discrete Slater and Lorentzian functions, their
//!   overlaps and the normalisation of linear combinations.
//! - [`circuits`]: circuit builders (phase shifts, translations, the Slater and
//!   Lorentzian generators, fan-out and multiply-controlled compilation, the LCU
//!   encoder and its amplitude reduction/amplification variants) plus depth and
//!   gate-count metrics.
//! - [`qara`]: planning of amplitude reduction + amplification and its error model
//!   under an inaccurate weight estimate.
//! - [`fitter`]: classical search for the linear combination that best overlaps a
//!   sampled target function.
//! - [`cli`]: file-based pipelines behind the `lorentz-encode` binary.
//!
//! ```
//! use lorentz_encode::circuits::c_lc_lorentzian;
//! use lorentz_encode::locfuncs::{lc_target_state, normalize_lc, LcSpec};
//!
//! let lc = normalize_lc(&LcSpec::one_dim(4, &[(1.0, 0.5, 0), (1.0, 0.5, 8)]).unwrap()).unwrap();
//! let enc = c_lc_lorentzian(&lc).unwrap();
//! let outcome = enc.simulate_success().unwrap();
//! let target = lc_target_state(&lc).unwrap();
//! assert!(outcome.data_state.fidelity(&target).unwrap() > 1.0 - 1e-10);
//! ```

// Guards are written `!(x > 0.0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod circuits;
pub mod cli;
mod error;
pub mod fitter;
pub mod locfuncs;
pub mod matrix;
pub mod qara;
pub mod statevector;

pub use error::{Error, Result};
