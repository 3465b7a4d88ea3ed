//! Circuit files: gates in time order followed by measurements.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::state::{Outcome, StateJson, StateVector};
use crate::error::{invalid, Result};
use crate::gates::Gate;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitGate {
    pub name: String,
    pub targets: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "basis", rename_all = "lowercase", deny_unknown_fields)]
pub enum CircuitMeasurement {
    Z {
        qubit: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        force: Option<u8>,
    },
    Cat {
        block: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        force: Option<Outcome>,
    },
}

/// `{width, gates: [{name, targets}], measurements: [...]}`, optionally
/// with an initial state; the default input is `|0…0⟩`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Circuit {
    pub width: usize,
    #[serde(default)]
    pub gates: Vec<CircuitGate>,
    #[serde(default)]
    pub measurements: Vec<CircuitMeasurement>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<StateJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutcomeEntry {
    pub outcome: Outcome,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircuitRun {
    pub outcomes: Vec<OutcomeEntry>,
    #[serde(rename = "finalState")]
    pub final_state: StateJson,
}

impl Circuit {
    /// Resolves gate names and checks arities, naming the first bad entry.
    pub fn resolve(&self) -> Result<Vec<(Gate, Vec<usize>)>> {
        self.gates
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let gate: Gate =
                    g.name.parse().map_err(|_| invalid(format!("gates[{i}].name: unknown gate {:?}", g.name)))?;
                if gate.arity() != g.targets.len() {
                    return Err(invalid(format!(
                        "gates[{i}].targets: {gate} takes {} qubits, got {}",
                        gate.arity(),
                        g.targets.len()
                    )));
                }
                Ok((gate, g.targets.clone()))
            })
            .collect()
    }

    pub fn run<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<CircuitRun> {
        let gates = self.resolve()?;
        let mut state: StateVector<f64> = match &self.input {
            Some(j) => {
                let s = j.to_state()?;
                if s.n_qubits() != self.width {
                    return Err(invalid(format!("input: state has {} qubits, width is {}", s.n_qubits(), self.width)));
                }
                s
            }
            None => StateVector::zero(self.width)?,
        };
        for (i, (gate, targets)) in gates.iter().enumerate() {
            state = state.apply(&gate.matrix(), targets).map_err(|e| invalid(format!("gates[{i}].targets: {e}")))?;
        }
        let mut outcomes = Vec::with_capacity(self.measurements.len());
        for (i, m) in self.measurements.iter().enumerate() {
            let rec = match m {
                CircuitMeasurement::Z { qubit, force } => state.measure_z(*qubit, rng, *force),
                CircuitMeasurement::Cat { block, force } => state.measure_cat_basis(block, rng, *force),
            }
            .map_err(|e| invalid(format!("measurements[{i}]: {e}")))?;
            outcomes.push(OutcomeEntry { outcome: rec.outcome, probability: rec.probability });
            state = rec.post_state;
        }
        Ok(CircuitRun { outcomes, final_state: state.to_json() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bell_circuit() {
        let src = r#"{"width": 2,
            "gates": [{"name": "H", "targets": [0]}, {"name": "CNOT", "targets": [0, 1]}],
            "measurements": [{"basis": "z", "qubit": 0}, {"basis": "z", "qubit": 1}]}"#;
        let c: Circuit = serde_json::from_str(src).unwrap();
        let run = c.run(&mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        assert_eq!(run.outcomes.len(), 2);
        assert_eq!(run.outcomes[0].outcome, run.outcomes[1].outcome);
        assert!((run.outcomes[0].probability - 0.5).abs() < 1e-12);
        assert!((run.outcomes[1].probability - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bad_gate_is_named() {
        let c: Circuit = serde_json::from_str(r#"{"width": 1, "gates": [{"name": "Q", "targets": [0]}]}"#).unwrap();
        let e = c.run(&mut ChaCha8Rng::seed_from_u64(0)).unwrap_err().to_string();
        assert!(e.contains("gates[0].name"), "{e}");
        let c: Circuit = serde_json::from_str(r#"{"width": 1, "gates": [{"name": "H", "targets": [3]}]}"#).unwrap();
        let e = c.run(&mut ChaCha8Rng::seed_from_u64(0)).unwrap_err().to_string();
        assert!(e.contains("gates[0].targets"), "{e}");
    }

    #[test]
    fn seeded_runs_repeat() {
        let src = r#"{"width": 3,
            "gates": [{"name": "H", "targets": [0]}, {"name": "H", "targets": [1]}, {"name": "H", "targets": [2]}],
            "measurements": [{"basis": "z", "qubit": 0}, {"basis": "z", "qubit": 1}, {"basis": "z", "qubit": 2}]}"#;
        let c: Circuit = serde_json::from_str(src).unwrap();
        let a = c.run(&mut ChaCha8Rng::seed_from_u64(42)).unwrap();
        let b = c.run(&mut ChaCha8Rng::seed_from_u64(42)).unwrap();
        assert_eq!(a, b);
    }
}
