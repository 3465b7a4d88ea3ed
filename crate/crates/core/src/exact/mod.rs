//! Exact gate arithmetic over `Z[zeta_8]`.

mod matrix;
mod ring;

pub use matrix::{exact_gate, exact_mul, local_gate, ExactMatrix, ExactMatrixJson, LocalGate, MAX_EXACT_QUBITS};
pub use ring::ZOmega;
