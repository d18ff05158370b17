//! Landau quantization from two sides, in natural units (ħ = c = 1):
//!
//! - [`dynamics`]: quantized relativistic cyclotron orbits of a negative
//!   charge in a uniform magnetic field, closed forms plus a proper-time
//!   Lorentz-force integrator that serves as an independent oracle;
//! - [`modes`]: separable solutions of the gauged Klein-Gordon equation in
//!   the same field (confluent-hypergeometric radial profiles), their
//!   quantized spectrum, and counterpropagating mode pairs tied together by
//!   a selection rule;
//! - [`transparency`]: the consistency suite matching the two pictures -
//!   phase/group decomposition on the orbit circle, guidance and de Broglie
//!   residuals, internal-clock synchronization, and the Landau-ladder
//!   comparison that works exactly when the field mass equals the particle's
//!   effective mass;
//! - [`specfun`]: the self-contained special-function kernel behind the
//!   radial profiles, with an independent series oracle;
//! - [`numerics`]: verification tools - RK4, derivative checks, and a
//!   finite-difference residual for the gauged field operator with
//!   gauge-covariance tests.
//!
//! The `examples/` directory contains one runnable program per capability;
//! the `landauq` binary exposes the same functionality as batch subcommands
//! driven by a flat `key = value` scenario file (see [`scenario`]).

pub mod commands;
pub mod dynamics;
pub mod error;
pub mod modes;
pub mod numerics;
pub mod scenario;
pub mod specfun;
pub mod transparency;

pub use error::{Error, Result};

pub use dynamics::{
    bohr_sommerfeld, effective_mass, integrate_worldline, landau_frequency, nonrel_energy,
    orbit_from_n, MediumParams, Orbit, WorldlineSample,
};
pub use modes::{
    canonical_pair, enumerate_mode_pairs, evaluate_mode, mode_frequency, pair_frequency,
    radial_profile, superpose_pair, weak_field_frequency, FieldMode, ModeIndex, ModePair,
    PairPolicy, SpacetimePoint,
};
pub use transparency::{
    debroglie_residuals, guidance_field_residual, guidance_identity_residual, holonomic_residual,
    landau_match_report, phase_group_decompose, transparency_report, InternalClock,
    PhaseGroupForm, Tolerances, TransparencyReport,
};
