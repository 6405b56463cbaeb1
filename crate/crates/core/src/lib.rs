//! End-to-end model of a suspended cylindrical nanowire-array FET receiver
//! for microfluidic molecular communication.
//!
//! The model chain is:
//!
//! 1. [`electromech`] — array stiffness, electrode capacitance and
//!    electrostatic force, the nonlinear semiconductor field, the
//!    self-consistent pre-capture equilibrium, pull-in search, and
//!    near-pull-in bias selection.
//! 2. [`channel`] — Taylor–Aris dispersion, Gaussian pulse propagation,
//!    peak sampling at the receiver, and surface mass transfer.
//! 3. [`binding`] — equilibrium ligand–receptor statistics plus a
//!    telegraph-process Monte Carlo oracle used for validation.
//! 4. [`transducer`] — bound-ligand density to stiffness change, gate
//!    displacement, surface-potential shift, sensitivity, and current.
//! 5. [`noise`] — binding (Lorentzian) and flicker (1/f) current PSDs and
//!    their band-limited variances.
//! 6. [`metrics`] — per-symbol SNR and closed-form channel capacity.
//!
//! All quantities are SI. [`config::SystemConfig`] is the single source of
//! truth for every parameter; it is immutable after load and safe to share
//! across parallel sweep workers. [`pipeline`] wires the stages together
//! for one operating point.

pub mod binding;
pub mod channel;
pub mod config;
pub mod consts;
pub mod electromech;
pub mod error;
pub mod metrics;
pub mod noise;
pub mod pipeline;
pub mod quad;
pub mod rootfind;
pub mod transducer;

pub use config::SystemConfig;
pub use error::{Error, Result};
pub use pipeline::LinkReport;
