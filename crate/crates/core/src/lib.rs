//! Reflectionless two-pole soliton of the Kaup–Boussinesq system
//!
//! ```text
//! u_t + eta_x + u u_x = 0
//! eta_t - u_xxx / 4 + (u eta)_x = 0
//! ```
//!
//! The solution is built from the discrete scattering data
//! `{lambda_1, -conj(lambda_1)}` of the energy-dependent spectral problem
//! `Psi_xx = (-lambda^2 + sigma lambda u + w) Psi`, `w = -u^2/4 + eta`,
//! by solving the reflectionless Riemann–Hilbert problem in closed form.
//!
//! # Module Organization
//!
//! - **`spectrum`**: eigenvalue, norming constants and the real phases.
//! - **`rh_algebra`**: transfer matrices, the determinant `Gamma` and the
//!   discrete Jost vector (closed form and 2x2 linear solve).
//! - **`fields`**: `N(x, sigma)`, the velocity `u`, the elevation `eta`,
//!   the charge `omega_+` and grid sweeps.
//! - **`verify`**: KB residuals under step refinement and a forward
//!   scattering solver that recovers the discrete spectrum.
//! - **`cli`**: configuration, CSV/JSON export and the `eval`, `verify`,
//!   `singularities` commands behind the `kbsoliton` binary.
//!
//! # Example
//!
//! ```
//! use kb_soliton::fields::{elevation, velocity};
//! use kb_soliton::spectrum::{make_spectrum, normalize_phases};
//!
//! let s = make_spectrum(0.25, 0.5).unwrap();
//! let n0 = normalize_phases(&s);
//! let u = velocity(1.0, 1.0, &s, &n0).unwrap();
//! let eta = elevation(1.0, 1.0, &s, &n0).unwrap();
//! assert!(u.is_finite() && eta.is_finite());
//! ```

// `!(a < b)` is used on purpose throughout: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod fields;
pub mod linalg;
pub mod rh_algebra;
pub mod spectrum;
pub mod tolerances;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
