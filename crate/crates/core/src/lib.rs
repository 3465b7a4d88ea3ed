#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Compilation and verification for the fault-tolerant basis `{H, T, CNOT}`
//! with `T = σz^{1/4}`.
//!
//! The numeric carriers ([`Unitary`], [`StateVector`]) are generic over the
//! scalar type; [`Unitary64`] and [`StateVector64`] are the double-precision
//! instances used throughout synthesis and verification. Exact gate
//! arithmetic lives in [`exact`], cyclotomic decisions in [`numtheory`].

pub mod error;
pub mod exact;
pub mod gadgets;
pub mod gates;
pub mod matrix;
pub mod numtheory;
pub mod random;
pub mod scalar;
pub mod sim;
pub mod su2;
pub mod suites;
pub mod synth;

pub use error::{Error, Result};
pub use exact::{ExactMatrix, ZOmega};
pub use gates::{Gate, GateApp, GateWord};
pub use matrix::Unitary;
pub use numtheory::RationalPolynomial;
pub use scalar::Real;
pub use sim::StateVector;

pub type Unitary64 = Unitary<f64>;
pub type Unitary32 = Unitary<f32>;
pub type StateVector64 = StateVector<f64>;
pub type StateVector32 = StateVector<f32>;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
