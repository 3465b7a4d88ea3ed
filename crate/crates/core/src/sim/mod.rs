//! Seedable statevector simulation.

mod circuit;
mod state;

pub use circuit::{Circuit, CircuitGate, CircuitMeasurement, CircuitRun, OutcomeEntry};
pub use state::{MeasurementRecord, Outcome, Preparation, StateJson, StateVector, MAX_QUBITS, ZERO_BRANCH};
