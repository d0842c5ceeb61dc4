//! Vortex-coupled quantum cavitation.
//!
//! A superfluid vortex lattice superposed on the Abrikosov lattice of a
//! type-II superconductor is modelled as an Ising system on a triangular
//! lattice with quenched site-local fields. The crate provides:
//!
//! * [`vortex`]: closed-form vortex formulas and the lattice-matching constants,
//! * [`lattice`]: triangular-lattice topology, spins and field patterns,
//! * [`ising`]: reduced-unit energy, Metropolis sampling and an exact
//!   enumeration oracle for lattices of up to 20 sites,
//! * [`cavitation`]: nucleation rate and its vortex-coupling enhancement,
//! * [`cli`]: the `qcav` command-line front end.

// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cavitation;
pub mod cli;
pub mod config;
pub mod constants;
pub mod error;
pub mod ising;
pub mod lattice;
pub mod rng;
pub mod stats;
pub mod vortex;

pub use constants::PhysicalConstants;
pub use error::{Error, Result};
