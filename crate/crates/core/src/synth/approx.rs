//! Euler-ladder synthesis of single-qubit unitaries over `{H, T, Tdag}`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::frame::{lambda_frame, LambdaFrame};
use super::ladder::phase_ladder;
use crate::error::{invalid, validation, Error, Result};
use crate::gates::{Gate, GateWord};
use crate::matrix::Unitary;
use crate::su2::{axis_angle_of, euler_invert, proj_distance, so3_of};

/// Smallest tolerance [`approx_su2`] accepts.
pub const SYNTH_EPS_FLOOR: f64 = 1e-4;

/// Longest word in the exact passthrough table.
pub const PASSTHROUGH_MAX_LEN: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct SynthResult {
    pub word: GateWord,
    /// `proj_distance(numeric(word), target)`.
    pub achieved_error: f64,
    /// Ladder exponents `(j, k1, k2)` of the three Euler factors; zero for passthrough hits.
    pub ladder_powers: (u64, u64, u64),
}

/// Serialized form `{word, error, powers}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthJson {
    pub word: Vec<String>,
    pub error: f64,
    pub powers: [u64; 3],
}

impl From<&SynthResult> for SynthJson {
    fn from(r: &SynthResult) -> Self {
        SynthJson {
            word: r.word.names().iter().map(|s| s.to_string()).collect(),
            error: r.achieved_error,
            powers: [r.ladder_powers.0, r.ladder_powers.1, r.ladder_powers.2],
        }
    }
}

fn rotation_key(u: &Unitary<f64>) -> [i64; 9] {
    let r = so3_of(u).expect("2x2");
    let mut k = [0i64; 9];
    for (slot, x) in k.iter_mut().zip(r.iter()) {
        *slot = (x * 1e8).round() as i64;
    }
    k
}

type PassthroughTable = HashMap<[i64; 9], (GateWord, Unitary<f64>)>;

/// Short words over `{H, T, Tdag}` keyed by their rotation, shortest first.
fn passthrough_table() -> &'static PassthroughTable {
    static TABLE: OnceLock<PassthroughTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = HashMap::new();
        let id = Unitary::identity(2);
        table.insert(rotation_key(&id), (GateWord::new(1), id.clone()));
        let mut frontier: Vec<(Vec<Gate>, Unitary<f64>)> = vec![(Vec::new(), id)];
        for _ in 0..PASSTHROUGH_MAX_LEN {
            let mut next = Vec::new();
            for (word, m) in &frontier {
                for g in [Gate::H, Gate::T, Gate::Tdag] {
                    let u = m * &g.matrix::<f64>();
                    let key = rotation_key(&u);
                    if table.contains_key(&key) {
                        continue;
                    }
                    let mut w = word.clone();
                    w.push(g);
                    table.insert(key, (GateWord::single(&w).expect("single-qubit gates"), u.clone()));
                    next.push((w, u));
                }
            }
            frontier = next;
        }
        table
    })
}

/// Exact short word for `target` up to global phase, if one exists.
pub fn passthrough(target: &Unitary<f64>) -> Option<GateWord> {
    let (word, u) = passthrough_table().get(&rotation_key(target))?;
    match proj_distance(target, u) {
        Ok(d) if d < 1e-12 => Some(word.clone()),
        _ => None,
    }
}

/// Cancels `H H` and `T Tdag`, and folds runs of `T`/`Tdag` modulo 8.
pub fn simplify(word: &GateWord) -> GateWord {
    // Stack of (gate, run), where a T-run stores its net exponent.
    let mut out: Vec<(Gate, i64)> = Vec::with_capacity(word.len());
    for g in &word.gates {
        match g.gate {
            Gate::H => {
                if matches!(out.last(), Some((Gate::H, _))) {
                    out.pop();
                } else {
                    out.push((Gate::H, 1));
                }
            }
            Gate::T | Gate::Tdag => {
                let k = if g.gate == Gate::T { 1 } else { -1 };
                if let Some((Gate::T, run)) = out.last_mut() {
                    *run = (*run + k).rem_euclid(8);
                    if *run == 0 {
                        out.pop();
                    }
                } else {
                    out.push((Gate::T, k.rem_euclid(8)));
                }
            }
            _ => unreachable!("simplify handles H, T and Tdag only"),
        }
    }
    let mut gates = Vec::with_capacity(out.len());
    for (g, run) in out {
        match g {
            Gate::H => gates.push(Gate::H),
            _ => {
                let (gate, n) = if run <= 4 { (Gate::T, run) } else { (Gate::Tdag, 8 - run) };
                gates.extend(std::iter::repeat_n(gate, n as usize));
            }
        }
    }
    GateWord::single(&gates).expect("single-qubit gates")
}

/// Ladder power for an Euler angle, allowing the `pi` shift that only
/// changes the global sign.
fn ladder_for(angle: f64, eps: f64) -> Result<u64> {
    let a = phase_ladder(angle, eps)?;
    let b = phase_ladder(angle + PI, eps)?;
    Ok(a.min(b))
}

fn check_target(target: &Unitary<f64>) -> Result<()> {
    if target.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: target.dim() });
    }
    if !(target.unitarity_defect() <= 1e-9) {
        return Err(validation("synthesis target is not unitary"));
    }
    Ok(())
}

/// Approximates `target` up to global phase by a word over `{H, T, Tdag}`.
pub fn approx_su2(target: &Unitary<f64>, eps: f64) -> Result<SynthResult> {
    approx_su2_in(&lambda_frame(), target, eps)
}

pub fn approx_su2_in(frame: &LambdaFrame, target: &Unitary<f64>, eps: f64) -> Result<SynthResult> {
    if !eps.is_finite() || eps <= 0.0 {
        return Err(invalid(format!("tolerance must be positive and finite, got {eps}")));
    }
    if eps < SYNTH_EPS_FLOOR {
        return Err(Error::UnsupportedPrecision { requested: eps, floor: SYNTH_EPS_FLOOR });
    }
    check_target(target)?;
    if let Some(word) = passthrough(target) {
        let achieved_error = proj_distance(&word.numeric::<f64>()?, target)?;
        return Ok(SynthResult { word, achieved_error, ladder_powers: (0, 0, 0) });
    }
    let aa = axis_angle_of(target)?.without_phase();
    let euler = euler_invert(&aa, &frame.axis1, &frame.axis2)?;
    let budget = eps / 4.0;
    let j = ladder_for(euler.alpha, budget)?;
    let k1 = ladder_for(euler.beta, budget)?;
    let k2 = ladder_for(euler.gamma, budget)?;
    let g1 = &frame.gen1_word;
    let middle = frame.conjugator.concat(&g1.repeat(k1 as usize))?.concat(&frame.conjugator.inverse())?;
    let raw = g1.repeat(j as usize).concat(&middle)?.concat(&g1.repeat(k2 as usize))?;
    let word = simplify(&raw);
    let achieved_error = proj_distance(&word.numeric::<f64>()?, target)?;
    if !(achieved_error < eps) {
        return Err(validation(format!("synthesis missed tolerance: {achieved_error:e} >= {eps:e}")));
    }
    Ok(SynthResult { word, achieved_error, ladder_powers: (j, k1, k2) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su2::{pauli_power, Axis};

    fn names(w: &GateWord) -> Vec<&'static str> {
        w.names()
    }

    #[test]
    fn generator_passthrough() {
        let h = approx_su2(&Gate::H.matrix(), 0.01).unwrap();
        assert_eq!(names(&h.word), ["H"]);
        assert!(h.achieved_error < 1e-15);
        let t = approx_su2(&Gate::T.matrix(), 0.01).unwrap();
        assert_eq!(names(&t.word), ["T"]);
        for g in [Gate::S, Gate::X, Gate::Y, Gate::Z, Gate::Sdag] {
            let r = approx_su2(&g.matrix(), 0.01).unwrap();
            assert!(r.achieved_error < 1e-12, "{g}");
            assert_eq!(r.ladder_powers, (0, 0, 0));
        }
    }

    #[test]
    fn eighth_root_of_z() {
        let target = pauli_power::<f64>(Axis::Z, 0.125);
        let r = approx_su2(&target, 0.05).unwrap();
        assert!(r.achieved_error < 0.05);
        assert!((proj_distance(&r.word.numeric::<f64>().unwrap(), &target).unwrap() - r.achieved_error).abs() < 1e-12);
        assert!(r.word.gates.iter().all(|g| matches!(g.gate, Gate::H | Gate::T | Gate::Tdag)));
    }

    #[test]
    fn floors_and_bad_targets() {
        assert!(matches!(
            approx_su2(&Gate::H.matrix(), 1e-5),
            Err(Error::UnsupportedPrecision { floor, .. }) if floor == SYNTH_EPS_FLOOR
        ));
        let bad =
            Unitary::from_matrix_unchecked(nalgebra::DMatrix::from_element(2, 2, num_complex::Complex::new(1.0, 0.0)));
        assert!(matches!(approx_su2(&bad, 0.1), Err(Error::Validation(_))));
    }

    #[test]
    fn simplify_cancels() {
        let w = GateWord::single(&[Gate::H, Gate::T, Gate::Tdag, Gate::H, Gate::T, Gate::T, Gate::T, Gate::T, Gate::T])
            .unwrap();
        assert_eq!(names(&simplify(&w)), ["Tdag", "Tdag", "Tdag"]);
        let w = GateWord::single(&[Gate::T; 8]).unwrap();
        assert!(simplify(&w).is_empty());
    }
}
