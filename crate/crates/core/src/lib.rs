//! Spherical cone-manifolds over torus knots and links.
//!
//! For the torus link `t(p, q)` with equal cone angle `alpha` on every
//! component this crate computes the window of angles where a spherical
//! structure exists, the volume, and the length of each singular component,
//! all as exact rational multiples of `pi` or `pi^2`. [`verify`] checks the
//! formulas against each other and against floating-point oracles.
//!
//! The formulas are generic over [`Coefficient`]; [`ExactScalar`] is the
//! exact instantiation used throughout, [`FloatScalar`] a plain `f64` one.

pub mod error;
pub mod exact;
pub mod invariants;
pub mod scalar;
pub mod torus_link;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{rational_new, Grade, PiScalar};
pub use invariants::{
    admits_spherical, covering_residual, excess, existence_interval, schlafli_residual,
    strand_length, total_length, two_bridge_volume, volume, volume_derivative, AngleInterval,
    Evaluation, InvariantReport,
};
pub use scalar::Coefficient;
pub use torus_link::TorusLinkParams;

/// Arbitrary-precision rational, always in reduced form.
pub type Rational = num_rational::BigRational;

/// `r * pi^k` with exact rational `r`.
pub type ExactScalar = PiScalar<Rational>;

/// `x * pi^k` with double-precision `x`.
pub type FloatScalar = PiScalar<f64>;

/// Exact angle window.
pub type ExactInterval = AngleInterval<Rational>;
