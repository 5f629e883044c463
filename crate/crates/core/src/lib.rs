//! Performance models for terahertz continuous-variable quantum links.
//!
//! The crate is organised by physical layer:
//!
//! * [`gaussian`] builds and analyses zero-mean two-mode Gaussian states
//!   (thermal occupation, squeezed thermal states, logarithmic negativity,
//!   von Neumann entropies).
//! * [`link`] models a diffraction-only free-space channel and a lossy,
//!   noisy homodyne detector.
//! * [`qkd`] computes reverse-reconciliation key rates, the repeaterless
//!   capacity bound and the accessible-frequency / minimum-aperture solvers.
//! * [`radar`] compares quantum illumination against coherent-state
//!   illumination through the quantum Chernoff exponent.
//! * [`sweep`] turns any of the above into deterministic CSV parameter sweeps.
//!
//! All variances are in shot-noise units (vacuum variance 1); all physical
//! quantities are SI (Hz, K, m).
//!
//! ```
//! use thzq::gaussian::{log_negativity, thermal_photon_number, tms_thermal_state, Squeezing};
//!
//! let nbar = thermal_photon_number(5e12, 30.0).unwrap();
//! let state = tms_thermal_state(Squeezing::from_db(10.0), nbar, nbar).unwrap();
//! let e_ln = log_negativity(&state).unwrap();
//! assert!((e_ln - 3.32).abs() < 0.01);
//! ```

pub mod constants;
mod error;
pub mod gaussian;
pub mod link;
pub mod qkd;
pub mod radar;
pub mod solve;
pub mod sweep;

pub use error::{Error, Result};
