//! Energy spectra of a quantum particle on a one-dimensional lattice.
//!
//! Because the lattice momentum space is compact, the kinetic energy is
//! bounded from above as well as below, and repulsive steps bind states just
//! as wells do. This crate provides:
//!
//! - [`dispersion`]: the bounded kinetic band, complex wavenumber branches,
//!   and forbidden-region classification;
//! - [`duality`]: the staggered-sign correspondence between attractive and
//!   repulsive potentials;
//! - [`boundstates`]: the analytic quantization condition for the hard-wall
//!   plus step profile, with root counts, thresholds, and wavefunctions;
//! - [`oracle`]: an independent verification path through exact
//!   diagonalization of the truncated lattice Hamiltonian;
//! - [`kronig_penney`]: the continuum delta-comb band structure and the
//!   tuning schedule that collapses it to an effective single-band lattice.
//!
//! Lattice energies are dimensionless (units of the kinetic scale K0).

pub mod boundstates;
pub mod dispersion;
pub mod duality;
pub mod error;
pub mod kronig_penney;
pub mod oracle;
pub mod potential;
mod roots;
pub mod state;

pub use boundstates::{
    count_bound_states, emergence_thresholds, infinite_barrier_energies, solve_spectrum,
    BoundStateSummary, DiscreteSpectrum, QuantizationProblem, SpectrumResult, StepKind,
};
pub use dispersion::{ComplexWavenumber, Dispersion, Hopping, SiteClass, WavenumberBranch};
pub use duality::{dual_energy, dual_state, duality_applicable};
pub use error::{Error, Result};
pub use kronig_penney::{
    bloch_function, band0_dispersion, perturbative_band, solve_band, solve_band_sampled,
    tune_to_lattice, BandResult, KPModel,
};
pub use oracle::{
    classify_bound, default_ipr_threshold, positivity_check, BoundClassification, EigenpairSet,
    TruncatedHamiltonian,
};
pub use potential::{BandKind, EnergyBand, SitePotential, WallStepPotential};
pub use state::LatticeState;
