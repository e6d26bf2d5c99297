//! Core library for the `mihsim` heterogeneous-handover toolkit.
//!
//! The crate is organized around four subsystems:
//!
//! - [`codec`]: bit-exact encoding/decoding of the MIH message subset,
//!   including the extended handover-commit TLVs (codes 101-103) and the
//!   IANA-aligned handover status codes.
//! - [`protocol`]: binding-cache, packet-buffer and handover-context state
//!   used by the six executable handover schemes.
//! - [`sim`]: a deterministic discrete-event engine that runs the schemes
//!   over modeled wireless (ARQ) and wired links, producing timed
//!   transcripts and metrics.
//! - [`analytic`]: closed-form link-delay, handover-delay, mobility and
//!   signaling-cost models that the simulator is cross-validated against.
//!
//! Numeric routines in [`analytic`] are generic over the scalar type via
//! the [`Scalar`] trait (`f32` or `f64`); the signaling-cost path uses
//! exact rational arithmetic. The simulator always runs on [`Real`].

// Parameter validation uses `!(x > 0)` so NaN fails validation; the
// un-negated forms would accept it.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod codec;
pub mod config;
pub mod protocol;
pub mod sim;
pub mod validate;

mod scalar;

pub use scalar::Scalar;

/// Scalar type used by the simulator and the concrete model aliases.
pub type Real = f64;

/// Exact rational type used by the signaling-cost model.
pub type Rational = num_rational::Ratio<i64>;

/// Delay-model parameters instantiated at simulator precision.
pub type DelayParams = analytic::DelayParams<Real>;

/// Mobility-model parameters instantiated at simulator precision.
pub type MobilityParams = analytic::MobilityParams<Real>;
