//! Matrices over `Z[zeta_8]` with a shared `√2` denominator.

use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::ring::ZOmega;
use crate::error::{invalid, validation, Error, Result};
use crate::gates::Gate;
use crate::matrix::{check_targets, CMatrix, Unitary};
use crate::scalar::Real;

/// Widest register the exact carrier accepts.
pub const MAX_EXACT_QUBITS: usize = 3;

/// `numerators / √2^denom_exp`, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    dim: usize,
    denom_exp: u32,
    entries: Vec<ZOmega>,
}

/// A gate's local matrix with small-integer ring entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalGate {
    pub dim: usize,
    pub denom_exp: u32,
    pub entries: Vec<[i64; 4]>,
}

impl LocalGate {
    fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut entries = vec![[0; 4]; n * n];
        for (col, &row) in perm.iter().enumerate() {
            entries[row * n + col] = [1, 0, 0, 0];
        }
        LocalGate { dim: n, denom_exp: 0, entries }
    }

    fn diagonal(d: &[[i64; 4]]) -> Self {
        let n = d.len();
        let mut entries = vec![[0; 4]; n * n];
        for (i, &x) in d.iter().enumerate() {
            entries[i * n + i] = x;
        }
        LocalGate { dim: n, denom_exp: 0, entries }
    }

    /// `Λ(U)` with the control on the leading qubit.
    fn controlled(&self) -> Self {
        let d = self.dim;
        let n = 2 * d;
        // `1` scaled to the target's denominator: `√2^ℓ`.
        let mut unit = ZOmega::one();
        for _ in 0..self.denom_exp {
            unit = unit.mul_sqrt2();
        }
        let unit = small(&unit);
        let mut entries = vec![[0; 4]; n * n];
        for i in 0..d {
            entries[i * n + i] = unit;
            for j in 0..d {
                entries[(d + i) * n + d + j] = self.entries[i * d + j];
            }
        }
        LocalGate { dim: n, denom_exp: self.denom_exp, entries }
    }

    pub fn to_exact(&self) -> ExactMatrix {
        let mut m = ExactMatrix {
            dim: self.dim,
            denom_exp: self.denom_exp,
            entries: self.entries.iter().map(|&k| ZOmega::from_small(k)).collect(),
        };
        m.reduce();
        m
    }
}

fn small(x: &ZOmega) -> [i64; 4] {
    x.coefs.clone().map(|c| i64::try_from(c).expect("small coefficient"))
}

const Z0: [i64; 4] = [0, 0, 0, 0];
const ONE: [i64; 4] = [1, 0, 0, 0];
const NEG_ONE: [i64; 4] = [-1, 0, 0, 0];
const ZETA: [i64; 4] = [0, 1, 0, 0];
const I: [i64; 4] = [0, 0, 1, 0];
const NEG_I: [i64; 4] = [0, 0, -1, 0];
const NEG_ZETA3: [i64; 4] = [0, 0, 0, -1];

/// The exact local matrix of a named generator.
pub fn local_gate(gate: Gate) -> ExactMatrix {
    local_form(gate).to_exact()
}

pub(crate) fn local_form(gate: Gate) -> LocalGate {
    use Gate::*;
    let two = |a, b, c, d| LocalGate { dim: 2, denom_exp: 0, entries: vec![a, b, c, d] };
    match gate {
        H => LocalGate { dim: 2, denom_exp: 1, entries: vec![ONE, ONE, ONE, NEG_ONE] },
        T => LocalGate::diagonal(&[ONE, ZETA]),
        Tdag => LocalGate::diagonal(&[ONE, NEG_ZETA3]),
        S => LocalGate::diagonal(&[ONE, I]),
        Sdag => LocalGate::diagonal(&[ONE, NEG_I]),
        X => two(Z0, ONE, ONE, Z0),
        Y => two(Z0, NEG_I, I, Z0),
        Z => LocalGate::diagonal(&[ONE, NEG_ONE]),
        CNOT => local_form(X).controlled(),
        CZ => local_form(Z).controlled(),
        CS => local_form(S).controlled(),
        CSdag => local_form(Sdag).controlled(),
        CSX => LocalGate { dim: 2, denom_exp: 1, entries: vec![ZETA, NEG_ZETA3, NEG_ZETA3, ZETA] }.controlled(),
        CSXdag => LocalGate { dim: 2, denom_exp: 1, entries: vec![NEG_ZETA3, ZETA, ZETA, NEG_ZETA3] }.controlled(),
        SWAP => LocalGate::permutation(&[0, 2, 1, 3]),
        TOFFOLI => local_form(CNOT).controlled(),
        CCZ => local_form(CZ).controlled(),
        CCY => local_form(Y).controlled().controlled(),
    }
}

impl ExactMatrix {
    pub fn identity(width: usize) -> Self {
        let dim = 1usize << width;
        let mut entries = vec![ZOmega::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = ZOmega::one();
        }
        ExactMatrix { dim, denom_exp: 0, entries }
    }

    /// Builds from row-major numerators and a denominator exponent, then reduces.
    pub fn from_parts(dim: usize, denom_exp: u32, entries: Vec<ZOmega>) -> Result<Self> {
        if dim < 2 || !dim.is_power_of_two() {
            return Err(invalid(format!("dimension {dim} is not a power of two >= 2")));
        }
        if entries.len() != dim * dim {
            return Err(invalid(format!("expected {} entries, got {}", dim * dim, entries.len())));
        }
        let mut m = ExactMatrix { dim, denom_exp, entries };
        m.reduce();
        Ok(m)
    }

    /// `ζ^k · I` on `width` qubits.
    pub fn scalar_zeta(width: usize, k: i64) -> Self {
        let mut m = ExactMatrix::identity(width);
        for e in m.entries.iter_mut() {
            if !e.is_zero() {
                *e = ZOmega::zeta_pow(k);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_qubits(&self) -> usize {
        self.dim.trailing_zeros() as usize
    }

    pub fn denom_exp(&self) -> u32 {
        self.denom_exp
    }

    pub fn entry(&self, row: usize, col: usize) -> &ZOmega {
        &self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[ZOmega] {
        &self.entries
    }

    /// Cancels common `√2` factors until the form is canonical.
    pub fn reduce(&mut self) {
        while self.denom_exp > 0 && self.entries.iter().all(ZOmega::is_divisible_by_sqrt2) {
            for e in self.entries.iter_mut() {
                *e = e.div_sqrt2().expect("divisibility checked");
            }
            self.denom_exp -= 1;
        }
        if self.entries.iter().all(ZOmega::is_zero) {
            self.denom_exp = 0;
        }
    }

    pub fn reduced(mut self) -> Self {
        self.reduce();
        self
    }

    pub fn is_canonical(&self) -> bool {
        self.clone().reduced() == *self
    }

    /// Exact product, canonically reduced.
    pub fn mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: rhs.dim });
        }
        let n = self.dim;
        let mut entries = vec![ZOmega::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.entries[k * n + j];
                    if !b.is_zero() {
                        entries[i * n + j] += a * b;
                    }
                }
            }
        }
        let mut m = ExactMatrix { dim: n, denom_exp: self.denom_exp + rhs.denom_exp, entries };
        m.reduce();
        Ok(m)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ExactMatrix {
        let n = self.dim;
        let entries = (0..n * n).map(|idx| self.entries[(idx % n) * n + idx / n].conj()).collect();
        ExactMatrix { dim: n, denom_exp: self.denom_exp, entries }
    }

    /// `self ← G · self` for a generator placed on `qubits`, without a dense product.
    pub fn left_apply(&mut self, gate: Gate, qubits: &[usize]) -> Result<()> {
        let width = self.n_qubits();
        if gate.arity() != qubits.len() {
            return Err(invalid(format!("{gate} takes {} qubits, got {}", gate.arity(), qubits.len())));
        }
        check_targets(qubits, width).map_err(|e| validation(e.to_string()))?;
        let g = local_form(gate);
        let n = self.dim;
        let masks: Vec<usize> = qubits.iter().map(|&t| 1 << (width - 1 - t)).collect();
        let all: usize = masks.iter().sum();
        let spread = |local: usize| -> usize {
            masks
                .iter()
                .enumerate()
                .fold(0, |acc, (i, &m)| if local >> (masks.len() - 1 - i) & 1 == 1 { acc | m } else { acc })
        };
        let rows_of: Vec<usize> = (0..g.dim).map(spread).collect();
        let mut next = vec![ZOmega::zero(); n * n];
        for base in (0..n).filter(|r| r & all == 0) {
            for (li, &ri) in rows_of.iter().enumerate() {
                let out_row = base | ri;
                for (lj, &rj) in rows_of.iter().enumerate() {
                    let k = &g.entries[li * g.dim + lj];
                    if *k == Z0 {
                        continue;
                    }
                    let src_row = base | rj;
                    for col in 0..n {
                        let x = &self.entries[src_row * n + col];
                        if x.is_zero() {
                            continue;
                        }
                        let term = if *k == ONE { x.clone() } else { x.mul_small(k) };
                        next[out_row * n + col] += term;
                    }
                }
            }
        }
        self.entries = next;
        self.denom_exp += g.denom_exp;
        if self.denom_exp >= 16 {
            self.reduce();
        }
        Ok(())
    }

    /// `(sum of diagonal numerators, denom_exp)`.
    pub fn trace(&self) -> (ZOmega, u32) {
        let mut t = ZOmega::zero();
        for i in 0..self.dim {
            t += self.entries[i * self.dim + i].clone();
        }
        (t, self.denom_exp)
    }

    /// Admits the form `(1/√2)^k · M` with `M` over the Gaussian integers.
    pub fn gaussian_obstruction(&self) -> bool {
        let c = self.clone().reduced();
        c.entries.iter().all(ZOmega::is_gaussian)
            || c.entries.iter().all(|e| e.coefs[0] == BigInt::ZERO && e.coefs[2] == BigInt::ZERO)
    }

    pub fn to_cmatrix(&self) -> CMatrix<f64> {
        let n = self.dim;
        DMatrix::from_fn(n, n, |i, j| self.entries[i * n + j].to_complex(self.denom_exp))
    }

    /// Numeric realization, validated as unitary.
    pub fn numeric<T: Real>(&self) -> Result<Unitary<T>> {
        let m = self.to_cmatrix().map(|z: Complex<f64>| Complex::new(T::lit(z.re), T::lit(z.im)));
        Unitary::new(m)
    }
}

/// Exact, canonically reduced embedding of a generator into a `width`-qubit register.
pub fn exact_gate(gate: Gate, targets: &[usize], width: usize) -> Result<ExactMatrix> {
    if width == 0 || width > MAX_EXACT_QUBITS {
        return Err(validation(format!("exact width {width} outside 1..={MAX_EXACT_QUBITS}")));
    }
    let mut m = ExactMatrix::identity(width);
    m.left_apply(gate, targets)?;
    m.reduce();
    Ok(m)
}

pub fn exact_mul(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    a.mul(b).map_err(|e| validation(e.to_string()))
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix({}x{}, 1/√2^{})", self.dim, self.dim, self.denom_exp)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| self.entry(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Serialized form: integers as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExactMatrixJson {
    pub dim: usize,
    pub denom_exp: u32,
    pub entries: Vec<[String; 4]>,
}

impl From<&ExactMatrix> for ExactMatrixJson {
    fn from(m: &ExactMatrix) -> Self {
        ExactMatrixJson {
            dim: m.dim,
            denom_exp: m.denom_exp,
            entries: m.entries.iter().map(ZOmega::to_strings).collect(),
        }
    }
}

impl TryFrom<&ExactMatrixJson> for ExactMatrix {
    type Error = Error;

    fn try_from(j: &ExactMatrixJson) -> Result<Self> {
        let entries = j
            .entries
            .iter()
            .map(|e| {
                let mut coefs: [BigInt; 4] = Default::default();
                for (c, s) in coefs.iter_mut().zip(e) {
                    *c = s.parse().map_err(|_| invalid(format!("bad integer {s:?}")))?;
                }
                Ok(ZOmega { coefs })
            })
            .collect::<Result<Vec<_>>>()?;
        ExactMatrix::from_parts(j.dim, j.denom_exp, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hadamard_form() {
        let h = exact_gate(Gate::H, &[0], 1).unwrap();
        assert_eq!(h.denom_exp(), 1);
        let expect: Vec<ZOmega> = [1, 1, 1, -1].iter().map(|&x| ZOmega::from(x)).collect();
        assert_eq!(h.entries(), &expect[..]);
    }

    #[test]
    fn t_and_cnot_forms() {
        let t = exact_gate(Gate::T, &[0], 1).unwrap();
        assert_eq!(t.denom_exp(), 0);
        assert_eq!(*t.entry(1, 1), ZOmega::zeta_pow(1));
        let cx = exact_gate(Gate::CNOT, &[0, 1], 2).unwrap();
        assert_eq!(cx.denom_exp(), 0);
        assert_eq!(*cx.entry(3, 2), ZOmega::one());
        assert_eq!(*cx.entry(2, 2), ZOmega::zero());
    }

    #[test]
    fn products_reduce() {
        let h = exact_gate(Gate::H, &[0], 1).unwrap();
        assert_eq!(exact_mul(&h, &h).unwrap(), ExactMatrix::identity(1));
        let t = exact_gate(Gate::T, &[0], 1).unwrap();
        assert_eq!(exact_mul(&t, &t).unwrap(), exact_gate(Gate::S, &[0], 1).unwrap());
    }

    #[test]
    fn rejects_bad_indices() {
        assert!(matches!(exact_gate(Gate::CNOT, &[0, 2], 2), Err(Error::Validation(_))));
        assert!(exact_gate(Gate::CNOT, &[1, 1], 2).is_err());
        assert!(exact_gate(Gate::H, &[0], 4).is_err());
        let a = ExactMatrix::identity(1);
        assert!(exact_mul(&a, &ExactMatrix::identity(2)).is_err());
    }

    #[test]
    fn local_gates_match_numeric() {
        for g in Gate::ALL {
            let e = g.exact().numeric::<f64>().unwrap();
            assert!(e.max_abs_diff(&g.matrix()) < 1e-14, "{g}");
        }
    }

    #[test]
    fn left_apply_matches_dense_product() {
        let mut m = exact_gate(Gate::H, &[2], 3).unwrap();
        m.left_apply(Gate::TOFFOLI, &[2, 0, 1]).unwrap();
        m.left_apply(Gate::CSX, &[1, 2]).unwrap();
        m.reduce();
        let dense = exact_mul(
            &exact_gate(Gate::CSX, &[1, 2], 3).unwrap(),
            &exact_mul(&exact_gate(Gate::TOFFOLI, &[2, 0, 1], 3).unwrap(), &exact_gate(Gate::H, &[2], 3).unwrap())
                .unwrap(),
        )
        .unwrap();
        assert_eq!(m, dense);
    }

    #[test]
    fn obstruction_separates_h_and_t() {
        assert!(exact_gate(Gate::H, &[0], 1).unwrap().gaussian_obstruction());
        assert!(!exact_gate(Gate::T, &[0], 1).unwrap().gaussian_obstruction());
        // √2·ζ = 1 + i, so ζ·I passes.
        assert!(ExactMatrix::scalar_zeta(1, 1).gaussian_obstruction());
    }

    #[test]
    fn json_round_trip() {
        let m = exact_gate(Gate::CSX, &[0, 1], 2).unwrap();
        let j = ExactMatrixJson::from(&m);
        let s = serde_json::to_string(&j).unwrap();
        assert!(s.contains("\"denomExp\":1"));
        let back: ExactMatrixJson = serde_json::from_str(&s).unwrap();
        assert_eq!(ExactMatrix::try_from(&back).unwrap(), m);
    }
}
