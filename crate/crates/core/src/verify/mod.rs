//! Independent checks of the construction: KB residuals under step
//! refinement and forward scattering back to the prescribed spectrum.

pub mod residual;
pub mod scatter;
pub mod suites;

pub use residual::{
    convergence_study, exclusion_mask, pde_residual, pde_residual_masked, residual_at, ConvergenceStudy,
    ResidualReport, StencilOrder,
};
pub use scatter::{
    find_spectrum, forward_scatter, isospectrality_check, spectrum_from_samples, Contour, FnPotential,
    IsospectralReport, Potential, SampledPotential, ScatterConfig, ScatteringResult, SolitonPotential,
    SpectrumEstimate,
};
pub use suites::{
    algebra_suite, fields_suite, pde_suite, scatter_suite, AlgebraSampling, Check, FieldChecks, LocatedZeros,
    ScatterChecks, SuiteReport,
};
