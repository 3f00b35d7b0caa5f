//! phaselab — a laboratory for forward symplectic integrators and the
//! long-time phase error of periodic motion.
//!
//! The crate is organized around operator-splitting integrators whose
//! kick stages may include a force-gradient term, which is what makes
//! all intermediate time steps positive ("forward"). It provides:
//!
//! - [`scheme`]: splitting schemes as explicit stage lists, the
//!   gradient-kick fourth-order family `4acb(t0, alpha)`, and the named
//!   members `C`, `Opt-C`, `TI`, `leapfrog`;
//! - [`coeffs`]: closed-form leading error coefficients of a scheme
//!   (second through fifth order) and the `alpha(t0)` correction that
//!   equalizes the fifth-order pair;
//! - [`integrate`] / [`force`] / [`state`]: the generic stepper over
//!   pluggable force models (harmonic oscillator, planar Kepler);
//! - [`oscillator`]: extended-precision extraction of frequency-error
//!   and one-period energy-error power series for the harmonic
//!   oscillator, where every stage map is an exact 2x2 matrix;
//! - [`brackets`]: nested Poisson brackets of T and V on a force model,
//!   and the truncated modified Hamiltonian they build;
//! - [`kepler`]: orbit setup from eccentricity, Laplace–Runge–Lenz
//!   precession per period, fourth-order-scaled energy and angle
//!   observables, and extended-precision one-period energy errors;
//! - [`scan`]: deterministic 1-D parameter scans with pole/zero/minimum
//!   refinement, plus golden-section tuning of `t0` against the
//!   measured Kepler precession;
//! - [`scheme_io`] / [`csvout`]: TOML scheme files, scheme selectors,
//!   and byte-reproducible CSV output.
//!
//! Extended-precision work (series extraction, tiny energy residuals)
//! runs on [`bigfloat::Ctx`], a thin arbitrary-precision context; the
//! default working precision is 60 decimal digits.

pub mod bigfloat;
pub mod brackets;
pub mod coeffs;
pub mod csvout;
pub mod error;
pub mod force;
pub mod integrate;
pub mod kepler;
pub mod oscillator;
pub mod scan;
pub mod scheme;
pub mod scheme_io;
pub mod state;

pub use error::{Error, Result};
pub use force::{ForceModel, Harmonic, Kepler2D};
pub use integrate::{integrate, step_once, Trajectory};
pub use scheme::{
    corrected_four_acb, four_acb, second_order, SplittingScheme, Stage, StageKind,
    FORWARD_T0_LIMIT,
};
pub use state::PhaseState;
