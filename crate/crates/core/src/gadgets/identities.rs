//! Circuit identities over the basis, checked exactly in `Z[ζ8]` and numerically.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{validation, Error, Result};
use crate::exact::{ExactMatrix, ZOmega};
use crate::gates::{Gate, GateWord};
use crate::su2::{axis_angle_of, proj_distance};

/// Numeric residual below which an identity holds.
pub const IDENTITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum IdentityId {
    XyzPhase,
    Fig3Cs,
    Fig4Toffoli,
    Swap,
    L2z,
    L2y,
    AppaCs,
    Cxhalf,
    En1Trace,
}

impl IdentityId {
    pub const ALL: [IdentityId; 9] = [
        IdentityId::XyzPhase,
        IdentityId::Fig3Cs,
        IdentityId::Fig4Toffoli,
        IdentityId::Swap,
        IdentityId::L2z,
        IdentityId::L2y,
        IdentityId::AppaCs,
        IdentityId::Cxhalf,
        IdentityId::En1Trace,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::XyzPhase => "XYZ_PHASE",
            IdentityId::Fig3Cs => "FIG3_CS",
            IdentityId::Fig4Toffoli => "FIG4_TOFFOLI",
            IdentityId::Swap => "SWAP",
            IdentityId::L2z => "L2Z",
            IdentityId::L2y => "L2Y",
            IdentityId::AppaCs => "APPA_CS",
            IdentityId::Cxhalf => "CXHALF",
            IdentityId::En1Trace => "EN1_TRACE",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_uppercase();
        let key = if key == "HZ_DEF" { "L2Z".to_string() } else { key };
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name() == key)
            .ok_or_else(|| validation(format!("unknown identity id {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    ExactRing,
    NumericUpToPhase,
}

/// What relates the two sides.
#[derive(Debug, Clone, PartialEq)]
pub enum Relation {
    /// `lhs = ζ^k · rhs` for the given `k`, or for some `k` when `None`.
    Equal { zeta_power: Option<u8> },
    /// Half the trace of `lhs` equals `(2 + √2)/4`; `rhs` is unused.
    HalfTrace,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCase {
    pub id: IdentityId,
    pub lhs_word: GateWord,
    pub rhs_word: GateWord,
    pub relation: Relation,
    pub mode: Mode,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct IdentityReport {
    pub id: IdentityId,
    pub holds: bool,
    /// Zero when every case agrees exactly in the ring, else the numeric residual.
    pub residual: f64,
    pub exact_zero: bool,
    pub numeric_residual: f64,
    pub mode: Mode,
    pub cases: usize,
}

fn word(width: usize, gates: &[(Gate, &[usize])]) -> GateWord {
    gates.iter().fold(GateWord::new(width), |w, (g, q)| w.with(*g, q))
}

/// `H σz^{-1/2} H σz^{1/2} H`, conjugating `σx` to `σy` up to sign.
pub fn hz_word(q: usize, width: usize) -> GateWord {
    word(width, &[(Gate::H, &[q]), (Gate::Sdag, &[q]), (Gate::H, &[q]), (Gate::S, &[q]), (Gate::H, &[q])])
}

fn eq(id: IdentityId, lhs: GateWord, rhs: GateWord, zeta_power: Option<u8>) -> IdentityCase {
    IdentityCase { id, lhs_word: lhs, rhs_word: rhs, relation: Relation::Equal { zeta_power }, mode: Mode::ExactRing }
}

/// The cases making up `id`; all are product-order words.
pub fn identity_cases(id: IdentityId) -> Vec<IdentityCase> {
    use IdentityId as I;
    match id {
        I::XyzPhase => {
            vec![eq(id, word(1, &[(Gate::X, &[0]), (Gate::Y, &[0]), (Gate::Z, &[0])]), GateWord::new(1), Some(2))]
        }
        I::Fig3Cs => vec![eq(
            id,
            word(3, &[(Gate::CS, &[0, 1])]),
            word(3, &[(Gate::TOFFOLI, &[0, 1, 2]), (Gate::CCY, &[0, 1, 2]), (Gate::CCZ, &[0, 1, 2])]),
            Some(0),
        )],
        I::Fig4Toffoli => vec![eq(
            id,
            word(3, &[(Gate::TOFFOLI, &[0, 1, 2])]),
            word(
                3,
                &[
                    (Gate::CSX, &[1, 2]),
                    (Gate::CNOT, &[0, 1]),
                    (Gate::CSXdag, &[1, 2]),
                    (Gate::CNOT, &[0, 1]),
                    (Gate::CSX, &[0, 2]),
                ],
            ),
            Some(0),
        )],
        I::Swap => vec![eq(id, word(2, &[(Gate::SWAP, &[0, 1])]), crate::synth::swap_word(), Some(0))],
        I::L2z => vec![
            eq(id, word(1, &[(Gate::Z, &[0])]), word(1, &[(Gate::H, &[0]), (Gate::X, &[0]), (Gate::H, &[0])]), Some(0)),
            eq(
                id,
                word(3, &[(Gate::CCZ, &[0, 1, 2])]),
                word(3, &[(Gate::H, &[2]), (Gate::TOFFOLI, &[0, 1, 2]), (Gate::H, &[2])]),
                Some(0),
            ),
        ],
        I::L2y => {
            let hz = hz_word(2, 3);
            vec![
                eq(
                    id,
                    word(1, &[(Gate::Y, &[0])]),
                    hz_word(0, 1).concat(&word(1, &[(Gate::X, &[0])])).unwrap().concat(&hz_word(0, 1)).unwrap(),
                    None,
                ),
                eq(
                    id,
                    word(3, &[(Gate::CCY, &[0, 1, 2])]),
                    hz.concat(&word(3, &[(Gate::TOFFOLI, &[0, 1, 2])])).unwrap().concat(&hz).unwrap(),
                    None,
                ),
            ]
        }
        I::AppaCs => vec![eq(
            id,
            word(2, &[(Gate::CS, &[0, 1])]),
            word(
                2,
                &[
                    (Gate::Tdag, &[1]),
                    (Gate::CNOT, &[0, 1]),
                    (Gate::Tdag, &[1]),
                    (Gate::CNOT, &[0, 1]),
                    (Gate::T, &[0]),
                    (Gate::S, &[1]),
                ],
            ),
            Some(0),
        )],
        I::Cxhalf => [(Gate::CSX, Gate::CS), (Gate::CSXdag, Gate::CSdag)]
            .into_iter()
            .map(|(x, z)| {
                eq(id, word(2, &[(x, &[0, 1])]), word(2, &[(Gate::H, &[1]), (z, &[0, 1]), (Gate::H, &[1])]), Some(0))
            })
            .collect(),
        I::En1Trace => vec![IdentityCase {
            id,
            lhs_word: word(1, &[(Gate::Tdag, &[0]), (Gate::H, &[0]), (Gate::T, &[0]), (Gate::H, &[0])]),
            rhs_word: GateWord::new(1),
            relation: Relation::HalfTrace,
            mode: Mode::ExactRing,
        }],
    }
}

/// `(2 + ζ - ζ^3) / √2^2`, i.e. `(2 + √2)/2`.
fn en1_trace() -> (ZOmega, u32) {
    (ZOmega::from_small([2, 1, 0, -1]), 2)
}

/// Brings `a / √2^ea` and `b / √2^eb` to a common exponent and compares numerators.
fn same_ring_value(a: &(ZOmega, u32), b: &(ZOmega, u32)) -> bool {
    let lift = |(z, e): &(ZOmega, u32), to: u32| (0..to - e).fold(z.clone(), |acc, _| acc.mul_sqrt2());
    let top = a.1.max(b.1);
    lift(a, top) == lift(b, top)
}

fn exact_relation(case: &IdentityCase) -> Result<bool> {
    let lhs = case.lhs_word.exact()?;
    match case.relation {
        Relation::HalfTrace => Ok(same_ring_value(&lhs.trace(), &en1_trace())),
        Relation::Equal { zeta_power } => {
            let rhs = case.rhs_word.exact()?;
            let powers: Vec<i64> = match zeta_power {
                Some(k) => vec![k as i64],
                None => (0..8).collect(),
            };
            for k in powers {
                let scaled = ExactMatrix::scalar_zeta(case.rhs_word.width, k).mul(&rhs)?.reduced();
                if scaled == lhs {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}

fn numeric_residual(case: &IdentityCase) -> Result<f64> {
    let lhs = case.lhs_word.numeric::<f64>()?;
    match case.relation {
        Relation::HalfTrace => {
            let cos = axis_angle_of(&lhs)?.angle.cos();
            Ok((cos - (2.0 + 2f64.sqrt()) / 4.0).abs())
        }
        Relation::Equal { .. } => proj_distance(&lhs, &case.rhs_word.numeric()?),
    }
}

pub fn verify_identity(id: IdentityId) -> Result<IdentityReport> {
    let cases = identity_cases(id);
    let mut exact_zero = true;
    let mut numeric: f64 = 0.0;
    for case in &cases {
        exact_zero &= exact_relation(case)?;
        numeric = numeric.max(numeric_residual(case)?);
    }
    let holds = exact_zero && numeric < IDENTITY_TOL;
    Ok(IdentityReport {
        id,
        holds,
        residual: if exact_zero { 0.0 } else { numeric },
        exact_zero,
        numeric_residual: numeric,
        mode: Mode::ExactRing,
        cases: cases.len(),
    })
}

/// Parses `id` and verifies it; an unknown id is a validation error.
pub fn verify_identity_named(id: &str) -> Result<IdentityReport> {
    verify_identity(id.parse()?)
}
