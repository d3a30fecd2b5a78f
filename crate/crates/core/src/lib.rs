//! Numerical construction and verification of radially symmetric homothetic
//! soliton profiles of the inverse mean curvature flow.
//!
//! A hypercylinder expander is a rotationally symmetric hypersurface
//! `(r(y)·ω, y)` in `R^n × R` whose radius profile satisfies
//!
//! ```text
//! r''/(1 + r'^2) = (n-1)/r - (1 + r'^2) / (λ (r - y r'))
//! r(0) = μ, r'(0) = 0
//! ```
//!
//! This crate provides
//!
//! * the pointwise formulas of the profile equation and two independent
//!   residual checks ([`ode`]),
//! * a certified Picard fixed-point local solver with explicit contraction
//!   constants ([`picard`]),
//! * an adaptive embedded Runge-Kutta integrator with dense output and
//!   event detection that extends the local solution globally
//!   ([`integrator`]),
//! * measured verdicts for the qualitative structure of the solution:
//!   sign dichotomy of `r'`, the unique inflection point, asymptotic slope
//!   bracketing and a-priori bounds ([`analysis`]).
//!
//! All core math is generic over the scalar type through [`Real`]; the
//! `*64` aliases at the crate root pin `f64`, which is what the CLI and the
//! default pipeline use.

pub mod analysis;
pub mod error;
pub mod integrator;
pub mod ode;
pub mod params;
pub mod picard;
pub mod real;
pub mod state;

pub use error::{AnalysisError, DomainError, IntegrateError, PicardError};
pub use params::{Params, Regime};
pub use real::Real;
pub use state::{DerivedState, State};

/// `f64` problem parameters.
pub type Params64 = Params<f64>;
/// `f64` phase point.
pub type State64 = State<f64>;
/// `f64` derived quantities at a phase point.
pub type DerivedState64 = DerivedState<f64>;
/// `f64` certified contraction step data.
pub type ContractionConstants64 = picard::ContractionConstants<f64>;
/// `f64` sampled function pair on the Picard grid.
pub type GridPair64 = picard::GridPair<f64>;
/// `f64` integrated profile.
pub type Profile64 = integrator::Profile<f64>;
/// `f64` event thresholds.
pub type EventSpec64 = integrator::EventSpec<f64>;
/// `f64` invariant report.
pub type InvariantReport64 = analysis::InvariantReport<f64>;
