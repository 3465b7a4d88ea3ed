//! Measurement-based realization of `T` and eigenstate preparation with cat states.

use num_complex::Complex;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, validation, Error, Result};
use crate::gates::{Gate, GateWord};
use crate::matrix::Unitary;
use crate::sim::{MeasurementRecord, Outcome, Preparation, StateJson, StateVector};

/// Largest deviation from `U^2 = I` accepted by [`prepare_eigenstate`].
pub const INVOLUTION_TOL: f64 = 1e-10;

/// Default cat-state width for eigenstate preparation.
pub const DEFAULT_CAT_SIZE: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Protocol {
    TGadget,
    Eigenprep,
    ToffoliState,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GadgetRun {
    pub protocol: Protocol,
    pub inputs: Vec<StateVector<f64>>,
    pub outcome_trace: Vec<MeasurementRecord<f64>>,
    pub output: StateVector<f64>,
    pub corrections_applied: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MeasurementJson {
    pub outcome: Outcome,
    pub probability: f64,
    pub post_state: StateJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GadgetJson {
    pub protocol: Protocol,
    pub inputs: Vec<StateJson>,
    pub outcome_trace: Vec<MeasurementJson>,
    pub output: StateJson,
    pub corrections_applied: Vec<String>,
}

impl From<&GadgetRun> for GadgetJson {
    fn from(r: &GadgetRun) -> Self {
        GadgetJson {
            protocol: r.protocol,
            inputs: r.inputs.iter().map(StateVector::to_json).collect(),
            outcome_trace: r
                .outcome_trace
                .iter()
                .map(|m| MeasurementJson {
                    outcome: m.outcome,
                    probability: m.probability,
                    post_state: m.post_state.to_json(),
                })
                .collect(),
            output: r.output.to_json(),
            corrections_applied: r.corrections_applied.clone(),
        }
    }
}

/// Amplitudes of the qubits not in `fixed`, with each fixed qubit pinned to
/// its bit, renormalized.
fn restrict(state: &StateVector<f64>, fixed: &[(usize, u8)]) -> Result<StateVector<f64>> {
    let n = state.n_qubits();
    let keep: Vec<usize> = (0..n).filter(|q| fixed.iter().all(|(f, _)| f != q)).collect();
    let bit = |i: usize, q: usize| (i >> (n - 1 - q)) & 1;
    let mut amps = vec![Complex::new(0.0, 0.0); 1 << keep.len()];
    for (i, z) in state.amplitudes().iter().enumerate() {
        if fixed.iter().all(|&(q, b)| bit(i, q) == b as usize) {
            let j = keep.iter().fold(0, |acc, &q| acc << 1 | bit(i, q));
            amps[j] = *z;
        }
    }
    let norm: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
    if !(norm > 1e-24) {
        return Err(validation("restricted register has no weight"));
    }
    Ok(StateVector::from_amplitudes_normalized(amps))
}

fn check_normalized(psi: &StateVector<f64>) -> Result<()> {
    if !((psi.norm_sqr() - 1.0).abs() <= 1e-9) {
        return Err(validation("input state is not normalized"));
    }
    Ok(())
}

/// `|φ0⟩ = T H |0⟩ = (|0⟩ + e^{iπ/4}|1⟩)/√2`.
pub fn phi0() -> StateVector<f64> {
    let w = GateWord::single(&[Gate::T, Gate::H]).expect("single-qubit gates");
    StateVector::zero(1).and_then(|s| s.apply_word(&w, 0)).expect("one qubit")
}

/// `|φ1⟩ = σz |φ0⟩`.
pub fn phi1() -> StateVector<f64> {
    phi0().apply(&Gate::Z.matrix(), &[0]).expect("one qubit")
}

/// Applies `T` to a one-qubit `psi` by teleportation through `|φ0⟩`:
/// `Λ1(σx)` from `psi` onto the ancilla, measure the ancilla, and on `1`
/// correct with `S`.
pub fn t_gadget<R: Rng + ?Sized>(psi: &StateVector<f64>, rng: &mut R, forced: Option<u8>) -> Result<GadgetRun> {
    if psi.n_qubits() != 1 {
        return Err(Error::DimensionMismatch { expected: 2, found: psi.amplitudes().len() });
    }
    check_normalized(psi)?;
    let joint = psi.kron(&phi0())?.apply(&Gate::CNOT.matrix(), &[0, 1])?;
    let record = joint.measure_z(1, rng, forced)?;
    let bit = record.outcome.index();
    let mut output = restrict(&record.post_state, &[(1, bit)])?;
    let mut corrections = Vec::new();
    if bit == 1 {
        output = output.apply(&Gate::S.matrix(), &[0])?;
        corrections.push(Gate::S.name().to_string());
    }
    Ok(GadgetRun {
        protocol: Protocol::TGadget,
        inputs: vec![psi.clone(), phi0()],
        outcome_trace: vec![record],
        output,
        corrections_applied: corrections,
    })
}

/// `max |U^2 - I|`.
pub fn involution_defect(u: &Unitary<f64>) -> f64 {
    (u * u).max_abs_diff(&Unitary::identity(u.dim()))
}

/// Projects `psi` onto an eigenspace of the involution `u_eta`: a
/// `cat_size`-qubit cat state controls `u_eta` on `psi`, and a cat-basis
/// measurement reads `+` for the `+1` eigenspace, `-` for `-1`.
pub fn prepare_eigenstate<R: Rng + ?Sized>(
    u_eta: &Unitary<f64>,
    eta_qubits: usize,
    psi: &StateVector<f64>,
    cat_size: usize,
    rng: &mut R,
    forced: Option<Outcome>,
) -> Result<GadgetRun> {
    if u_eta.dim() != 1 << eta_qubits {
        return Err(Error::DimensionMismatch { expected: 1 << eta_qubits, found: u_eta.dim() });
    }
    if psi.n_qubits() != eta_qubits {
        return Err(Error::DimensionMismatch { expected: 1 << eta_qubits, found: psi.amplitudes().len() });
    }
    if cat_size == 0 {
        return Err(invalid("cat size must be at least 1"));
    }
    check_normalized(psi)?;
    let defect = involution_defect(u_eta);
    if !(defect <= INVOLUTION_TOL) {
        return Err(validation(format!("operator is not an involution: |U^2 - I| = {defect:e}")));
    }
    let cat = StateVector::prepare(Preparation::Cat(cat_size))?;
    let targets: Vec<usize> = (cat_size..cat_size + eta_qubits).collect();
    let joint = cat.kron(psi)?.apply_controlled(u_eta, &[0], &targets)?;
    let block: Vec<usize> = (0..cat_size).collect();
    let record = joint.measure_cat_basis(&block, rng, forced)?;
    let pins: Vec<(usize, u8)> = block.iter().map(|&q| (q, 0)).collect();
    let output = restrict(&record.post_state, &pins)?;
    Ok(GadgetRun {
        protocol: Protocol::Eigenprep,
        inputs: vec![cat, psi.clone()],
        outcome_trace: vec![record],
        output,
        corrections_applied: Vec::new(),
    })
}

/// `[S, X]`, equal to `T σx T†` up to the phase `e^{iπ/4}`.
pub fn uphi_word() -> GateWord {
    GateWord::single(&[Gate::S, Gate::X]).expect("single-qubit gates")
}

/// `T σx T†`, whose `+1` and `-1` eigenvectors are `|φ0⟩` and `|φ1⟩`.
pub fn uphi() -> Unitary<f64> {
    let t = Gate::T.matrix::<f64>();
    &(&t * &Gate::X.matrix()) * &t.adjoint()
}

/// `|φ0⟩` from `|+⟩` by eigenstate preparation, flipping a `-` result with `σz`.
pub fn prepare_phi0<R: Rng + ?Sized>(rng: &mut R, forced: Option<Outcome>) -> Result<GadgetRun> {
    let plus = StateVector::prepare(Preparation::Plus(1))?;
    let mut run = prepare_eigenstate(&uphi(), 1, &plus, DEFAULT_CAT_SIZE, rng, forced)?;
    if run.outcome_trace[0].outcome == Outcome::Minus {
        run.output = run.output.apply(&Gate::Z.matrix(), &[0])?;
        run.corrections_applied.push(Gate::Z.name().to_string());
    }
    Ok(run)
}

/// `Λ1(σz) ⊗ σz`, with `+1` eigenvector `|AND⟩` and `-1` eigenvector `|NAND⟩`
/// inside the span of `(H|0⟩)^{⊗3}`'s support.
pub fn toffoli_operator() -> Unitary<f64> {
    Gate::CZ.matrix::<f64>().kron(&Gate::Z.matrix())
}

/// `½(|000⟩ + |010⟩ + |100⟩ + |111⟩)`.
pub fn and_state() -> StateVector<f64> {
    basis_sum(&[0b000, 0b010, 0b100, 0b111])
}

/// `½(|001⟩ + |011⟩ + |101⟩ + |110⟩)`.
pub fn nand_state() -> StateVector<f64> {
    basis_sum(&[0b001, 0b011, 0b101, 0b110])
}

fn basis_sum(indices: &[usize]) -> StateVector<f64> {
    let mut amps = vec![Complex::new(0.0, 0.0); 8];
    for &i in indices {
        amps[i] = Complex::new(0.5, 0.0);
    }
    StateVector::from_amplitudes(amps).expect("normalized")
}

/// `|AND⟩` or `|NAND⟩` from `(H|0⟩)^{⊗3}` by eigenstate preparation.
pub fn toffoli_state<R: Rng + ?Sized>(rng: &mut R, forced: Option<Outcome>) -> Result<GadgetRun> {
    let plus = StateVector::prepare(Preparation::Plus(3))?;
    let mut run = prepare_eigenstate(&toffoli_operator(), 3, &plus, DEFAULT_CAT_SIZE, rng, forced)?;
    run.protocol = Protocol::ToffoliState;
    Ok(run)
}

/// `max |U v - λ v|` with `λ = +1` for outcome `+`, `-1` for `-`.
pub fn eigen_residual(u: &Unitary<f64>, v: &StateVector<f64>, outcome: Outcome) -> Result<f64> {
    let uv = v.apply(u, &(0..v.n_qubits()).collect::<Vec<_>>())?;
    let sign = if outcome.index() == 0 { 1.0 } else { -1.0 };
    Ok(uv.amplitudes().iter().zip(v.amplitudes()).map(|(a, b)| (a - b * sign).norm()).fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::haar_state;
    use crate::su2::proj_distance;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn t_gadget_on_plus_gives_phi0() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let plus = StateVector::prepare(Preparation::Plus(1)).unwrap();
        for b in [0, 1] {
            let run = t_gadget(&plus, &mut rng, Some(b)).unwrap();
            assert!(run.output.fidelity(&phi0()).unwrap() > 1.0 - 1e-12);
            assert_eq!(run.corrections_applied.is_empty(), b == 0);
            assert!((run.outcome_trace[0].probability - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn t_gadget_matches_direct_t() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let t = Gate::T.matrix::<f64>();
        for _ in 0..20 {
            let psi = haar_state(1, &mut rng);
            let want = psi.apply(&t, &[0]).unwrap();
            for b in [0, 1] {
                let run = t_gadget(&psi, &mut rng, Some(b)).unwrap();
                assert!(run.output.fidelity(&want).unwrap() > 1.0 - 1e-12);
            }
        }
    }

    #[test]
    fn uphi_word_matches() {
        let w = uphi_word().numeric::<f64>().unwrap();
        assert!(proj_distance(&w, &uphi()).unwrap() < 1e-14);
        assert!(eigen_residual(&uphi(), &phi0(), Outcome::Plus).unwrap() < 1e-14);
        assert!(eigen_residual(&uphi(), &phi1(), Outcome::Minus).unwrap() < 1e-14);
    }

    #[test]
    fn eigenprep_branches() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let plus = StateVector::prepare(Preparation::Plus(1)).unwrap();
        let minus = prepare_eigenstate(&uphi(), 1, &plus, 3, &mut rng, Some(Outcome::Minus)).unwrap();
        assert!(minus.output.fidelity(&phi1()).unwrap() > 1.0 - 1e-12);
        assert!((minus.outcome_trace[0].probability - (2.0 - 2f64.sqrt()) / 4.0).abs() < 1e-12);
        let zero = StateVector::zero(1).unwrap();
        let even = prepare_eigenstate(&uphi(), 1, &zero, 3, &mut rng, Some(Outcome::Plus)).unwrap();
        assert!((even.outcome_trace[0].probability - 0.5).abs() < 1e-12);
        let fixed = prepare_phi0(&mut rng, Some(Outcome::Minus)).unwrap();
        assert!(fixed.output.fidelity(&phi0()).unwrap() > 1.0 - 1e-12);
        assert_eq!(fixed.corrections_applied, ["Z"]);
        let again = prepare_eigenstate(&uphi(), 1, &phi0(), 3, &mut rng, None).unwrap();
        assert_eq!(again.outcome_trace[0].outcome, Outcome::Plus);
        assert!((again.outcome_trace[0].probability - 1.0).abs() < 1e-12);
        assert!(prepare_eigenstate(&uphi(), 1, &phi0(), 3, &mut rng, Some(Outcome::Minus)).is_err());
    }

    #[test]
    fn toffoli_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let and = toffoli_state(&mut rng, Some(Outcome::Plus)).unwrap();
        let nand = toffoli_state(&mut rng, Some(Outcome::Minus)).unwrap();
        for (run, want) in [(and, and_state()), (nand, nand_state())] {
            let d =
                run.output.amplitudes().iter().zip(want.amplitudes()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            assert!(d < 1e-12, "{d:e}");
        }
    }

    #[test]
    fn rejects_non_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let plus = StateVector::prepare(Preparation::Plus(1)).unwrap();
        let err = prepare_eigenstate(&Gate::T.matrix(), 1, &plus, 3, &mut rng, None);
        assert!(matches!(err, Err(Error::Validation(_))));
    }
}
