//! Dense statevectors with projective measurement.

use std::fmt;

use num_complex::Complex;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, validation, Error, Result};
use crate::gates::GateWord;
use crate::matrix::{check_targets, Unitary};
use crate::scalar::{c, modulus, norm_sqr, Real};

/// Largest register the simulator accepts.
pub const MAX_QUBITS: usize = 12;

/// Born weights at or below this are treated as impossible branches.
pub const ZERO_BRANCH: f64 = 1e-20;

/// Normalized amplitudes; qubit 0 is the most significant index bit.
#[derive(Clone, PartialEq)]
pub struct StateVector<T: Real> {
    n: usize,
    amps: Vec<Complex<T>>,
}

/// A measurement result: a computational-basis bit or a cat-basis sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Outcome {
    pub fn bit(b: u8) -> Result<Outcome> {
        match b {
            0 => Ok(Outcome::Zero),
            1 => Ok(Outcome::One),
            _ => Err(invalid(format!("measurement bit must be 0 or 1, got {b}"))),
        }
    }

    /// `0` for `Zero`/`Plus`, `1` for `One`/`Minus`.
    pub fn index(self) -> u8 {
        match self {
            Outcome::Zero | Outcome::Plus => 0,
            Outcome::One | Outcome::Minus => 1,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Zero => "0",
            Outcome::One => "1",
            Outcome::Plus => "+",
            Outcome::Minus => "-",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementRecord<T: Real> {
    pub outcome: Outcome,
    /// Born weight of the observed branch before measurement.
    pub probability: T,
    pub post_state: StateVector<T>,
}

/// Standard input states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "n")]
pub enum Preparation {
    Zero(usize),
    Cat(usize),
    Plus(usize),
}

fn check_width(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(validation(format!("qubit count {n} outside 1..={MAX_QUBITS}")));
    }
    Ok(())
}

impl<T: Real> StateVector<T> {
    /// `|0…0⟩` on `n` qubits.
    pub fn zero(n: usize) -> Result<Self> {
        Self::basis(n, 0)
    }

    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_width(n)?;
        if index >= 1 << n {
            return Err(invalid(format!("basis index {index} out of range for {n} qubits")));
        }
        let mut amps = vec![c(0.0, 0.0); 1 << n];
        amps[index] = c(1.0, 0.0);
        Ok(StateVector { n, amps })
    }

    pub fn prepare(kind: Preparation) -> Result<Self> {
        match kind {
            Preparation::Zero(n) => Self::zero(n),
            Preparation::Cat(n) => {
                check_width(n)?;
                let mut amps = vec![c(0.0, 0.0); 1 << n];
                let h = T::lit(std::f64::consts::FRAC_1_SQRT_2);
                amps[0] = Complex::new(h, T::zero());
                amps[(1 << n) - 1] += Complex::new(h, T::zero());
                Ok(StateVector { n, amps })
            }
            Preparation::Plus(n) => {
                check_width(n)?;
                let a = T::one() / T::lit((1u64 << n) as f64).sqrt();
                Ok(StateVector { n, amps: vec![Complex::new(a, T::zero()); 1 << n] })
            }
        }
    }

    /// Validates length and normalization.
    pub fn from_amplitudes(amps: Vec<Complex<T>>) -> Result<Self> {
        let n = Self::width_of(amps.len())?;
        let s = StateVector { n, amps };
        let dev = (s.norm_sqr() - T::one()).abs();
        if !(dev <= T::validation_tol()) {
            return Err(validation(format!("state is not normalized: |norm^2 - 1| = {:e}", dev.to_f64_lossy())));
        }
        Ok(s)
    }

    /// Rescales to unit norm; panics on a zero vector or a length that is not a power of two.
    pub fn from_amplitudes_normalized(amps: Vec<Complex<T>>) -> Self {
        let n = Self::width_of(amps.len()).expect("length is a power of two within range");
        let norm = amps.iter().fold(T::zero(), |acc, &z| acc + norm_sqr(z)).sqrt();
        assert!(norm > T::zero(), "cannot normalize the zero vector");
        StateVector { n, amps: amps.into_iter().map(|z| z / norm).collect() }
    }

    fn width_of(len: usize) -> Result<usize> {
        if len < 2 || !len.is_power_of_two() {
            return Err(invalid(format!("amplitude count {len} is not a power of two >= 2")));
        }
        let n = len.trailing_zeros() as usize;
        check_width(n)?;
        Ok(n)
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex<T> {
        self.amps[index]
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().fold(T::zero(), |acc, &z| acc + norm_sqr(z))
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(self.amps.iter().zip(&other.amps).fold(c(0.0, 0.0), |acc, (a, b)| acc + a.conj() * b))
    }

    /// `|⟨self|other⟩|`, insensitive to global phase.
    pub fn fidelity(&self, other: &Self) -> Result<T> {
        Ok(modulus(self.inner(other)?))
    }

    /// `self ⊗ other`; `self` occupies the leading qubits.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        check_width(self.n + other.n)?;
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Ok(StateVector { n: self.n + other.n, amps })
    }

    fn masks(&self, qubits: &[usize]) -> Vec<usize> {
        qubits.iter().map(|&q| 1 << (self.n - 1 - q)).collect()
    }

    /// Applies `gate` to `targets`; `targets[0]` is the gate's leading qubit.
    pub fn apply(&self, gate: &Unitary<T>, targets: &[usize]) -> Result<Self> {
        self.apply_controlled(gate, &[], targets)
    }

    /// Applies `gate` to `targets` on the subspace where every control is `|1⟩`.
    pub fn apply_controlled(&self, gate: &Unitary<T>, controls: &[usize], targets: &[usize]) -> Result<Self> {
        let k = targets.len();
        if gate.dim() != 1 << k {
            return Err(Error::DimensionMismatch { expected: 1 << k, found: gate.dim() });
        }
        let all: Vec<usize> = controls.iter().chain(targets).copied().collect();
        check_targets(&all, self.n).map_err(|e| validation(e.to_string()))?;
        let tmask = self.masks(targets);
        let cmask: usize = self.masks(controls).iter().sum();
        let tall: usize = tmask.iter().sum();
        let offsets: Vec<usize> = (0..1usize << k)
            .map(|local| {
                tmask
                    .iter()
                    .enumerate()
                    .fold(0, |acc, (i, &m)| if local >> (k - 1 - i) & 1 == 1 { acc | m } else { acc })
            })
            .collect();
        let mut out = self.amps.clone();
        let mut buf = vec![c(0.0, 0.0); 1 << k];
        for base in 0..self.amps.len() {
            if base & tall != 0 || base & cmask != cmask {
                continue;
            }
            for (slot, &off) in buf.iter_mut().zip(&offsets) {
                *slot = self.amps[base | off];
            }
            for (r, &off) in offsets.iter().enumerate() {
                let mut acc = c(0.0, 0.0);
                for (col, &x) in buf.iter().enumerate() {
                    acc += gate.entry(r, col) * x;
                }
                out[base | off] = acc;
            }
        }
        Ok(StateVector { n: self.n, amps: out })
    }

    /// Applies the operator of a product-order word: its last gate acts first.
    pub fn apply_word(&self, word: &GateWord, offset: usize) -> Result<Self> {
        let mut s = self.clone();
        for g in word.gates.iter().rev() {
            let qs: Vec<usize> = g.qubits.iter().map(|q| q + offset).collect();
            s = s.apply(&g.gate.matrix(), &qs)?;
        }
        Ok(s)
    }

    /// Born weight of `qubit` reading `1`.
    pub fn prob_one(&self, qubit: usize) -> Result<T> {
        check_targets(&[qubit], self.n).map_err(|e| validation(e.to_string()))?;
        let m = 1 << (self.n - 1 - qubit);
        Ok(self.amps.iter().enumerate().filter(|(i, _)| i & m != 0).fold(T::zero(), |acc, (_, &z)| acc + norm_sqr(z)))
    }

    /// Computational-basis measurement of one qubit. `forced` selects the
    /// branch instead of sampling; forcing a zero-weight branch is an error.
    pub fn measure_z<R: Rng + ?Sized>(
        &self,
        qubit: usize,
        rng: &mut R,
        forced: Option<u8>,
    ) -> Result<MeasurementRecord<T>> {
        let p1 = self.prob_one(qubit)?;
        let p0 = T::one() - p1;
        let bit = match forced {
            Some(b) => b,
            None => u8::from(rng.random::<f64>() >= p0.to_f64_lossy()),
        };
        let outcome = Outcome::bit(bit)?;
        let p = if bit == 1 { p1 } else { p0 };
        if !(p > T::lit(ZERO_BRANCH)) {
            return Err(validation(format!("branch {bit} has zero probability")));
        }
        let m = 1 << (self.n - 1 - qubit);
        let scale = T::one() / p.sqrt();
        let amps = self
            .amps
            .iter()
            .enumerate()
            .map(|(i, &z)| if (i & m != 0) == (bit == 1) { z * scale } else { c(0.0, 0.0) })
            .collect();
        Ok(MeasurementRecord { outcome, probability: p, post_state: StateVector { n: self.n, amps } })
    }

    /// Distinguishes `(|0…0⟩ ± |1…1⟩)/√2` on `block`. The block must be
    /// supported on those two strings within `1e-9`.
    pub fn measure_cat_basis<R: Rng + ?Sized>(
        &self,
        block: &[usize],
        rng: &mut R,
        forced: Option<Outcome>,
    ) -> Result<MeasurementRecord<T>> {
        if block.is_empty() {
            return Err(invalid("cat block is empty"));
        }
        check_targets(block, self.n).map_err(|e| validation(e.to_string()))?;
        let bmask: usize = self.masks(block).iter().sum();
        let mut leak = T::zero();
        for (i, &z) in self.amps.iter().enumerate() {
            let b = i & bmask;
            if b != 0 && b != bmask {
                leak += norm_sqr(z);
            }
        }
        if leak.sqrt() > T::lit(1e-9) {
            return Err(validation(format!("block leaves the cat subspace: weight {:e}", leak.to_f64_lossy())));
        }
        let half = T::lit(0.5);
        let branch_weight = |sign: T| {
            (0..self.amps.len())
                .filter(|i| i & bmask == 0)
                .fold(T::zero(), |acc, i| acc + norm_sqr(self.amps[i] + self.amps[i | bmask] * sign) * half)
        };
        let p_plus = branch_weight(T::one());
        let outcome = match forced {
            Some(o @ (Outcome::Plus | Outcome::Minus)) => o,
            Some(o) => return Err(invalid(format!("cat-basis outcome must be + or -, got {o}"))),
            None if rng.random::<f64>() < p_plus.to_f64_lossy() => Outcome::Plus,
            None => Outcome::Minus,
        };
        let sign = if outcome == Outcome::Plus { T::one() } else { -T::one() };
        let p = if outcome == Outcome::Plus { p_plus } else { branch_weight(sign) };
        if !(p > T::lit(ZERO_BRANCH)) {
            return Err(validation(format!("branch {outcome} has zero probability")));
        }
        let scale = half / p.sqrt();
        let mut amps = vec![c(0.0, 0.0); self.amps.len()];
        for i in (0..self.amps.len()).filter(|i| i & bmask == 0) {
            let v = (self.amps[i] + self.amps[i | bmask] * sign) * scale;
            amps[i] = v;
            amps[i | bmask] = v * sign;
        }
        Ok(MeasurementRecord { outcome, probability: p, post_state: StateVector { n: self.n, amps } })
    }

    /// Amplitudes as `[re, im]` pairs.
    pub fn to_json(&self) -> StateJson {
        StateJson(self.amps.iter().map(|z| [z.re.to_f64_lossy(), z.im.to_f64_lossy()]).collect())
    }
}

impl<T: Real> fmt::Debug for StateVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.amps.iter().map(|z| format!("{:+.6}{:+.6}i", z.re.to_f64_lossy(), z.im.to_f64_lossy())).collect();
        write!(f, "StateVector[{}]({})", self.n, parts.join(", "))
    }
}

/// Serialized state: a list of `[re, im]` pairs in basis order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateJson(pub Vec<[f64; 2]>);

impl StateJson {
    pub fn to_state<T: Real>(&self) -> Result<StateVector<T>> {
        StateVector::from_amplitudes(self.0.iter().map(|&[re, im]| c(re, im)).collect())
    }
}
