//! Slow- and sudden-quench dynamics of two-band Chern insulators.
//!
//! The crate evolves momentum-space spinors through `+-g/t` ramps or sudden
//! quenches, forms the time-averaged spin polarization (TASP) and reads bulk
//! invariants of the initial and final phases off the rings where it vanishes.

// `!(x > 0.0)` guards are meant to reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod model;
pub mod state;

pub use error::{Error, Result};
pub use model::{FieldVector, ModelParams, Momentum, PhaseLabel, ProtocolSign, StartTime, Variant};
pub use state::QuantumState;

/// Version string stamped into reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
