//! Simulation and analysis of "interaction-free" bomb-detection protocols.
//!
//! The crate is organised around the pieces of the experiment:
//!
//! - [`quantum`]: single-photon mode amplitudes and the beam splitters, phase
//!   shifters and absorbers the photon passes through.
//! - [`mz`]: the Mach-Zehnder bomb tester built from those elements, with
//!   analytic outcome probabilities, seeded Monte Carlo trials, the
//!   repeat-until-conclusive strategy and a reflectivity optimiser.
//! - [`trigger`]: the bomb trigger as a momentum measurement on a
//!   minimum-uncertainty wave packet, and the sensitivity limit that follows.
//! - [`scatter`]: shadow scattering of a plane wave by a black strip on a 1-D
//!   transverse grid.
//! - [`well`]: a bomb held in the ground state of a harmonic well and kicked.
//!
//! Natural units with ħ = 1 are used everywhere. Momenta and wavevectors are
//! therefore interchangeable, and a position spread `Δx` corresponds to a
//! momentum scale `1/Δx`.

pub mod error;
pub mod golden;
pub mod mz;
pub mod normal;
pub mod quantum;
pub mod rng;
pub mod scatter;
pub mod trigger;
pub mod well;

pub use error::{Error, Result};
