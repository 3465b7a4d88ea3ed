//! Named generators and gate words.
//!
//! A [`GateWord`] is written in operator-product order: the word
//! `[g0, g1, ..., gk]` denotes the matrix `g0 · g1 · ... · gk`, so the last
//! gate acts first on a state. Circuits fed to the simulator
//! ([`crate::sim::Circuit`]) list gates in time order instead.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::exact::ExactMatrix;
use crate::matrix::{check_targets, Unitary};
use crate::scalar::{c, Real};
use crate::su2::{hadamard, pauli_power, sigma_x, sigma_y, sigma_z, Axis};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gate {
    H,
    /// `sigma_z^{1/4}`.
    T,
    Tdag,
    /// `sigma_z^{1/2}`.
    S,
    Sdag,
    X,
    Y,
    Z,
    /// `Λ1(sigma_x)`, control first.
    CNOT,
    /// `Λ1(sigma_z)`.
    CZ,
    /// `Λ1(sigma_z^{1/2})`.
    CS,
    CSdag,
    /// `Λ1(sigma_x^{1/2})`.
    CSX,
    CSXdag,
    SWAP,
    /// `Λ2(sigma_x)`, controls first.
    TOFFOLI,
    /// `Λ2(sigma_z)`.
    CCZ,
    /// `Λ2(sigma_y)`.
    CCY,
}

impl Gate {
    pub const ALL: [Gate; 18] = [
        Gate::H,
        Gate::T,
        Gate::Tdag,
        Gate::S,
        Gate::Sdag,
        Gate::X,
        Gate::Y,
        Gate::Z,
        Gate::CNOT,
        Gate::CZ,
        Gate::CS,
        Gate::CSdag,
        Gate::CSX,
        Gate::CSXdag,
        Gate::SWAP,
        Gate::TOFFOLI,
        Gate::CCZ,
        Gate::CCY,
    ];

    pub fn arity(self) -> usize {
        use Gate::*;
        match self {
            H | T | Tdag | S | Sdag | X | Y | Z => 1,
            CNOT | CZ | CS | CSdag | CSX | CSXdag | SWAP => 2,
            TOFFOLI | CCZ | CCY => 3,
        }
    }

    pub fn inverse(self) -> Gate {
        use Gate::*;
        match self {
            T => Tdag,
            Tdag => T,
            S => Sdag,
            Sdag => S,
            CS => CSdag,
            CSdag => CS,
            CSX => CSXdag,
            CSXdag => CSX,
            g => g,
        }
    }

    pub fn name(self) -> &'static str {
        use Gate::*;
        match self {
            H => "H",
            T => "T",
            Tdag => "Tdag",
            S => "S",
            Sdag => "Sdag",
            X => "X",
            Y => "Y",
            Z => "Z",
            CNOT => "CNOT",
            CZ => "CZ",
            CS => "CS",
            CSdag => "CSdag",
            CSX => "CSX",
            CSXdag => "CSXdag",
            SWAP => "SWAP",
            TOFFOLI => "TOFFOLI",
            CCZ => "CCZ",
            CCY => "CCY",
        }
    }

    /// The gate's matrix on its own qubits.
    pub fn matrix<T: Real>(self) -> Unitary<T> {
        use Gate as G;
        let quarter = |a: f64| pauli_power::<T>(Axis::Z, T::lit(a));
        match self {
            G::H => hadamard(),
            G::T => quarter(0.25),
            G::Tdag => quarter(-0.25),
            G::S => quarter(0.5),
            G::Sdag => quarter(-0.5),
            G::X => sigma_x(),
            G::Y => sigma_y(),
            G::Z => sigma_z(),
            G::CNOT => controlled(&sigma_x()),
            G::CZ => controlled(&sigma_z()),
            G::CS => controlled(&quarter(0.5)),
            G::CSdag => controlled(&quarter(-0.5)),
            G::CSX => controlled(&pauli_power(Axis::X, T::lit(0.5))),
            G::CSXdag => controlled(&pauli_power(Axis::X, T::lit(-0.5))),
            G::SWAP => {
                let mut m = DMatrix::zeros(4, 4);
                for (r, col) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
                    m[(r, col)] = c(1.0, 0.0);
                }
                Unitary::from_matrix_unchecked(m)
            }
            G::TOFFOLI => controlled(&controlled(&sigma_x())),
            G::CCZ => controlled(&controlled(&sigma_z())),
            G::CCY => controlled(&controlled(&sigma_y())),
        }
    }

    /// The gate's exact matrix over `Z[zeta_8]` on its own qubits.
    pub fn exact(self) -> ExactMatrix {
        crate::exact::local_gate(self)
    }
}

/// `Λ1(U)`: block-diagonal `I ⊕ U` with the control as the leading qubit.
pub fn controlled<T: Real>(u: &Unitary<T>) -> Unitary<T> {
    let d = u.dim();
    let mut m = DMatrix::identity(2 * d, 2 * d);
    for i in 0..d {
        for j in 0..d {
            m[(d + i, d + j)] = u.entry(i, j);
        }
    }
    Unitary::from_matrix_unchecked(m)
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Gate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        let alias = match lower.as_str() {
            "t†" | "tdg" => "tdag",
            "s†" | "sdg" => "sdag",
            "cx" => "cnot",
            "ccx" => "toffoli",
            other => other,
        };
        Gate::ALL
            .iter()
            .copied()
            .find(|g| g.name().eq_ignore_ascii_case(alias))
            .ok_or_else(|| invalid(format!("unknown gate {s:?}")))
    }
}

/// One gate placed on specific qubits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateApp {
    pub gate: Gate,
    pub qubits: Vec<usize>,
}

impl GateApp {
    pub fn new(gate: Gate, qubits: &[usize]) -> Self {
        GateApp { gate, qubits: qubits.to_vec() }
    }

    pub fn inverse(&self) -> Self {
        GateApp { gate: self.gate.inverse(), qubits: self.qubits.clone() }
    }
}

/// A product of generators on a `width`-qubit register.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GateWord {
    pub width: usize,
    pub gates: Vec<GateApp>,
}

impl GateWord {
    pub fn new(width: usize) -> Self {
        GateWord { width, gates: Vec::new() }
    }

    /// Single-qubit word from a list of generators.
    pub fn single(gates: &[Gate]) -> Result<Self> {
        let mut w = GateWord::new(1);
        for &g in gates {
            w.push(g, &[0])?;
        }
        Ok(w)
    }

    pub fn push(&mut self, gate: Gate, qubits: &[usize]) -> Result<&mut Self> {
        if gate.arity() != qubits.len() {
            return Err(invalid(format!("{gate} takes {} qubits, got {}", gate.arity(), qubits.len())));
        }
        check_targets(qubits, self.width)?;
        self.gates.push(GateApp::new(gate, qubits));
        Ok(self)
    }

    /// Builder form of [`GateWord::push`] for words known to be well formed.
    pub fn with(mut self, gate: Gate, qubits: &[usize]) -> Self {
        self.push(gate, qubits).expect("well-formed gate application");
        self
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Concatenation: the matrix of `self.then(other)` is `self · other`.
    pub fn concat(&self, other: &GateWord) -> Result<GateWord> {
        if self.width != other.width {
            return Err(Error::DimensionMismatch { expected: self.width, found: other.width });
        }
        let mut gates = self.gates.clone();
        gates.extend(other.gates.iter().cloned());
        Ok(GateWord { width: self.width, gates })
    }

    /// Word for the inverse matrix.
    pub fn inverse(&self) -> GateWord {
        GateWord { width: self.width, gates: self.gates.iter().rev().map(GateApp::inverse).collect() }
    }

    pub fn repeat(&self, n: usize) -> GateWord {
        let mut gates = Vec::with_capacity(self.gates.len() * n);
        for _ in 0..n {
            gates.extend(self.gates.iter().cloned());
        }
        GateWord { width: self.width, gates }
    }

    /// Generator names in word order.
    pub fn names(&self) -> Vec<&'static str> {
        self.gates.iter().map(|g| g.gate.name()).collect()
    }

    /// Numeric realization `g0 · g1 · ... · gk`.
    pub fn numeric<T: Real>(&self) -> Result<Unitary<T>> {
        let dim = 1usize << self.width;
        if self.width == 1 {
            // Fast path for long synthesized words.
            let mats: Vec<Unitary<T>> =
                Gate::ALL.iter().map(|g| if g.arity() == 1 { g.matrix() } else { Unitary::identity(2) }).collect();
            let mut acc = Unitary::identity(2);
            for g in &self.gates {
                let idx = Gate::ALL.iter().position(|x| *x == g.gate).expect("gate listed in ALL");
                acc = &acc * &mats[idx];
            }
            return Ok(acc);
        }
        let mut acc = Unitary::identity(dim);
        for g in &self.gates {
            acc = &acc * &g.gate.matrix::<T>().embed(&g.qubits, self.width)?;
        }
        Ok(acc)
    }

    /// Exact realization over `Z[zeta_8]`, canonically reduced.
    pub fn exact(&self) -> Result<ExactMatrix> {
        let mut acc = ExactMatrix::identity(self.width);
        for g in self.gates.iter().rev() {
            acc.left_apply(g.gate, &g.qubits)?;
        }
        acc.reduce();
        Ok(acc)
    }
}

impl fmt::Display for GateWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .gates
            .iter()
            .map(|g| {
                if self.width == 1 {
                    g.gate.name().to_string()
                } else {
                    let q: Vec<String> = g.qubits.iter().map(|q| q.to_string()).collect();
                    format!("{}({})", g.gate, q.join(","))
                }
            })
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su2::proj_distance;

    #[test]
    fn parse_names_and_aliases() {
        for g in Gate::ALL {
            assert_eq!(g.name().parse::<Gate>().unwrap(), g);
        }
        assert_eq!("cx".parse::<Gate>().unwrap(), Gate::CNOT);
        assert_eq!("tdg".parse::<Gate>().unwrap(), Gate::Tdag);
        assert!("foo".parse::<Gate>().is_err());
    }

    #[test]
    fn inverses_multiply_to_identity() {
        for g in Gate::ALL {
            let m = g.matrix::<f64>();
            let p = &m * &g.inverse().matrix();
            assert!(p.max_abs_diff(&Unitary::identity(m.dim())) < 1e-14, "{g}");
        }
    }

    #[test]
    fn word_order_is_operator_product() {
        // [S, X] is S·X, which differs from X·S.
        let w = GateWord::single(&[Gate::S, Gate::X]).unwrap();
        let sx = &Gate::S.matrix::<f64>() * &Gate::X.matrix();
        assert!(w.numeric::<f64>().unwrap().max_abs_diff(&sx) < 1e-15);
    }

    #[test]
    fn push_validates_indices() {
        let mut w = GateWord::new(2);
        assert!(w.push(Gate::CNOT, &[0, 0]).is_err());
        assert!(w.push(Gate::CNOT, &[0, 2]).is_err());
        assert!(w.push(Gate::H, &[0, 1]).is_err());
        assert!(w.push(Gate::CNOT, &[1, 0]).is_ok());
    }

    #[test]
    fn inverse_word() {
        let w = GateWord::single(&[Gate::T, Gate::H, Gate::S, Gate::H]).unwrap();
        let p = w.concat(&w.inverse()).unwrap().numeric::<f64>().unwrap();
        assert!(proj_distance(&p, &Unitary::identity(2)).unwrap() < 1e-14);
    }
}
