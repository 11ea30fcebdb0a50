//! Continuous-time quantum walk on the infinite comb.
//!
//! Engines:
//! - [`comb`] lattice, windows and the Hamiltonian stencil;
//! - [`spectral`] closed-form eigenfunctions and completeness;
//! - [`evolution`] Chebyshev reference propagator;
//! - [`contour`] branch-cut kernel and contour-integral amplitudes;
//! - [`asymptotics`] saddle-point forms, profiles and the Airy function;
//! - [`escape`] asymptotic escape probabilities;
//! - [`stokes`] steepest-descent paths, saddle relevance and region atlas.

pub mod airy;
pub mod asymptotics;
pub mod cli;
pub mod comb;
pub mod contour;
pub mod error;
pub mod escape;
pub mod evolution;
pub mod quad;
pub mod report;
pub mod spectral;
pub mod stokes;

pub use comb::{apply_hamiltonian, degree, spectral_bound, Truncation, Vertex, WaveState};
pub use error::{Error, Result};
pub use evolution::{amplitude_exact, evolve, truncation_for};
