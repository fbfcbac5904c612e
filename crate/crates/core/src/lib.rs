//! Energy dissipated by two harmonic oscillators coupled through a
//! time-dependent bilinear interaction `q(t) y1 y2`, the minimal model of
//! Casimir friction between moving polarizable particles.
//!
//! At zero temperature the first-order result can be written either in the
//! time domain ([`dissipation::delta_e_barton`]) or as a transition sum over
//! unperturbed states with the Fourier transform of `q`
//! ([`dissipation::delta_e_hb`]). The [`oracle`] module solves the same
//! problem exactly, once through Bogoliubov coefficients of the normal modes
//! and once in a truncated number basis.
//!
//! With the default `parallel` feature, scans and long quadratures run on the
//! rayon pool; disabling it gives a purely sequential build with identical
//! numbers.

pub mod coupling;
pub mod dissipation;
pub mod error;
pub mod exec;
pub mod oracle;
pub mod params;
pub mod routes;
pub mod spectral;

pub use coupling::{coupling_from_separation, sample, CouplingProfile, CouplingSignal};
pub use dissipation::{
    adiabatic_scan, barton_amplitude, delta_e_barton, delta_e_hb, dissipation_from_transitions,
    hb_transition_coefficient, matrix_element_a1100, AdiabaticScan, DissipationReport, Level,
    ScanPoint, ScanSettings, TransitionAmplitude,
};
pub use error::{Error, Result};
pub use exec::Execution;
pub use oracle::{
    delta_e_fock, delta_e_modes, evolve_fock, evolve_mode, BogoliubovPair, FockStateVector,
    ModeFunctionState, ModeSign,
};
pub use params::{grid_times, ladder_factor, ComplexValue, PhysicalParams, TimeGrid};
pub use routes::{compare_routes, FockSettings, Route};
pub use spectral::{fourier_analytic, fourier_numeric, power_at, SpectralValue, Spectrum};
