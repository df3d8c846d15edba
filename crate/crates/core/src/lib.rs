//! Birkhoff sums of cotangent-type kernels along the golden rotation.
//!
//! The crate is organised bottom-up:
//!
//! * [`fibarith`] - Fibonacci numbers, Zeckendorf and beta expansions,
//!   exact arithmetic in `Z[alpha]`, high precision series for `alpha`.
//! * [`corefuncs`] - the kernels (cot, csc^2, sec, log-sine, sawtooth),
//!   their derivatives, Fourier and Euler partial sums, theta / eta values.
//! * [`birkhoff`] - rotation specs, compensated Birkhoff sums and graphs,
//!   the renormalisation operator and functional identities.
//! * [`tau_sigma`] - the rational limit function and the golden cotangent
//!   limit together with its Taylor table.
//! * [`goldengraph`] - the limiting graph at the golden rotation and the
//!   estimator for sums of astronomically many terms.
//! * [`related`] - neighbouring experiments (csc^2, sec, log bound, Hecke,
//!   modular behaviour).

pub mod birkhoff;
pub mod corefuncs;
mod error;
pub mod fibarith;
pub mod goldengraph;
pub mod numeric;
pub mod related;
pub mod tau_sigma;

pub use error::{Error, Result};

/// Version tag written into every JSON document.
pub const SCHEMA_VERSION: u32 = 1;
