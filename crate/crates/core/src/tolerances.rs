//! Default numerical tolerances.
//!
//! Every threshold used by the library, the CLI and the acceptance suite is
//! named here so that a run can be reproduced from its manifest.

/// Algebraic identities evaluated in f64 (determinants, 2x2 solves).
pub const ALGEBRA_RELATIVE: f64 = 1e-10;

/// Imaginary residue allowed in the complex evaluation of u and eta,
/// relative to the magnitude of the real part.
pub const REALITY_RELATIVE: f64 = 1e-10;

/// |Gamma| (scaled by its dominant exponential) below which a point is a
/// pole of N and of the discrete Jost vector.
pub const GAMMA_SINGULAR: f64 = 1e-9;

/// |Gamma N| (scaled by its dominant exponential) below which the fields
/// u and eta are treated as singular. Cancellation in the sum costs about
/// `-log10 |D|` digits, so below this the reality check can no longer hold.
pub const TAU_SINGULAR: f64 = 1e-6;

/// Scaled |Gamma N| below which a residual stencil is excluded.
pub const RESIDUAL_EXCLUSION: f64 = 1e-4;

/// Upper bound on the phase increment accepted by the charge unwrapper.
pub const UNWRAP_MAX_STEP: f64 = std::f64::consts::FRAC_PI_2;

/// Relative size of the field tail at the far-field cutoff.
pub const FAR_FIELD_DECAY: f64 = 1e-12;

/// Acceptance of the KB residual at h = 1e-3.
pub const PDE_RESIDUAL_MAX: f64 = 1e-5;

/// Admissible residual reduction per halving of the FD step (order 2).
pub const CONVERGENCE_FACTOR: (f64, f64) = (3.5, 4.5);

/// Finite-difference route checks (charge derivative, log second difference).
pub const ROUTE_CONSISTENCY: f64 = 1e-6;

/// Symmetry of the t = 0 profiles about x = 0.
pub const SYMMETRY: f64 = 1e-8;

/// Conservation of the far-left charge across times.
pub const CHARGE_CONSERVATION: f64 = 1e-6;

/// Location of the zeros of a(lambda) against the prescribed spectrum.
pub const SPECTRUM_LOCATION: f64 = 1e-3;

/// |b/a| on the real axis for the reflectionless check.
pub const REFLECTIONLESS: f64 = 1e-3;

/// Drift of the located zeros across times.
pub const ISOSPECTRAL_DRIFT: f64 = 1e-3;

/// |a| below which a secant iterate is accepted as a zero.
pub const SCATTERING_ZERO: f64 = 1e-6;

/// A-posteriori step-halving estimate of the error in a(lambda).
pub const INTEGRATOR_ERROR: f64 = 1e-6;

/// Bisection width used when refining singular locations.
pub const BISECTION_WIDTH: f64 = 1e-10;
