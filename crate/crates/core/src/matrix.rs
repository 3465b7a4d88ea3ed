//! Dense complex unitaries on a handful of qubits.

use std::fmt;
use std::ops::Mul;

use nalgebra::DMatrix;
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, validation, Error, Result};
use crate::scalar::{c, modulus, Real};

pub type CMatrix<T> = DMatrix<Complex<T>>;

/// A square unitary matrix whose dimension is a power of two.
///
/// Rows and columns are indexed by computational basis states with qubit 0
/// as the most significant bit.
#[derive(Clone, PartialEq)]
pub struct Unitary<T: Real> {
    m: CMatrix<T>,
}

impl<T: Real> fmt::Debug for Unitary<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Unitary({}x{})", self.dim(), self.dim())?;
        for i in 0..self.dim() {
            let row: Vec<String> = (0..self.dim())
                .map(|j| {
                    let z = self.m[(i, j)];
                    format!("{:+.6}{:+.6}i", z.re.to_f64_lossy(), z.im.to_f64_lossy())
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<T: Real> Unitary<T> {
    /// Validates `m` as unitary within the scalar's validation tolerance.
    pub fn new(m: CMatrix<T>) -> Result<Self> {
        let n = m.nrows();
        if n != m.ncols() {
            return Err(invalid(format!("matrix is {}x{}, not square", n, m.ncols())));
        }
        if n < 2 || !n.is_power_of_two() {
            return Err(invalid(format!("dimension {n} is not a power of two >= 2")));
        }
        let u = Unitary { m };
        let dev = u.unitarity_defect();
        if !(dev <= T::validation_tol()) {
            return Err(validation(format!("matrix is not unitary: max |U^dag U - I| = {:e}", dev.to_f64_lossy())));
        }
        Ok(u)
    }

    /// Wraps a matrix known to be unitary by construction.
    pub(crate) fn from_matrix_unchecked(m: CMatrix<T>) -> Self {
        debug_assert!(m.is_square());
        Unitary { m }
    }

    /// Builds from row-major entries.
    pub fn from_rows(rows: &[Vec<Complex<T>>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(invalid("rows have inconsistent lengths"));
        }
        Self::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn identity(dim: usize) -> Self {
        assert!(dim.is_power_of_two() && dim >= 2, "dimension must be a power of two");
        Unitary { m: DMatrix::identity(dim, dim) }
    }

    /// Diagonal unitary with the given unit-modulus entries.
    pub fn diagonal(entries: &[Complex<T>]) -> Result<Self> {
        let n = entries.len();
        Self::new(DMatrix::from_fn(n, n, |i, j| if i == j { entries[i] } else { c(0.0, 0.0) }))
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn n_qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex<T> {
        self.m[(row, col)]
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.m
    }

    pub fn into_matrix(self) -> CMatrix<T> {
        self.m
    }

    pub fn adjoint(&self) -> Self {
        Unitary { m: self.m.adjoint() }
    }

    pub fn transpose(&self) -> Self {
        Unitary { m: self.m.transpose() }
    }

    pub fn trace(&self) -> Complex<T> {
        self.m.trace()
    }

    /// Determinant, computed by LU.
    pub fn det(&self) -> Complex<T> {
        self.m.clone().determinant()
    }

    /// Multiplies by a unit-modulus scalar.
    pub fn scaled(&self, phase: Complex<T>) -> Self {
        Unitary { m: self.m.map(|z| z * phase) }
    }

    /// Kronecker product `self ⊗ other`; `self` occupies the leading qubits.
    pub fn kron(&self, other: &Self) -> Self {
        Unitary { m: self.m.kronecker(&other.m) }
    }

    /// Checked multiplication.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: rhs.dim() });
        }
        Ok(Unitary { m: &self.m * &rhs.m })
    }

    /// Integer power by repeated squaring; negative powers use the adjoint.
    pub fn pow(&self, n: i64) -> Self {
        let mut base = if n < 0 { self.adjoint() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Unitary::identity(self.dim());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Largest entrywise modulus of `U^dag U - I`.
    pub fn unitarity_defect(&self) -> T {
        let p = self.m.adjoint() * &self.m;
        let n = self.dim();
        let mut worst = T::zero();
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) };
                worst = worst.max(modulus(p[(i, j)] - target));
            }
        }
        worst
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.m.iter().zip(other.m.iter()).fold(T::zero(), |acc, (a, b)| acc.max(modulus(*a - *b)))
    }

    /// Embeds a gate acting on `targets` into a `width`-qubit register.
    ///
    /// `targets[0]` is the most significant qubit of the gate's own index.
    pub fn embed(&self, targets: &[usize], width: usize) -> Result<Self> {
        let k = targets.len();
        if self.dim() != 1 << k {
            return Err(Error::DimensionMismatch { expected: 1 << k, found: self.dim() });
        }
        check_targets(targets, width)?;
        if k == width && targets.iter().enumerate().all(|(i, &t)| i == t) {
            return Ok(self.clone());
        }
        let dim = 1usize << width;
        let masks: Vec<usize> = targets.iter().map(|&t| 1 << (width - 1 - t)).collect();
        let all: usize = masks.iter().sum();
        let local = |i: usize| -> usize { masks.iter().fold(0, |acc, &m| (acc << 1) | usize::from(i & m != 0)) };
        let m = DMatrix::from_fn(dim, dim, |r, col| {
            if r & !all != col & !all {
                c(0.0, 0.0)
            } else {
                self.m[(local(r), local(col))]
            }
        });
        Ok(Unitary { m })
    }
}

impl<T: Real> Mul for &Unitary<T> {
    type Output = Unitary<T>;

    fn mul(self, rhs: &Unitary<T>) -> Unitary<T> {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch in unitary product");
        Unitary { m: &self.m * &rhs.m }
    }
}

impl<T: Real> Mul for Unitary<T> {
    type Output = Unitary<T>;

    fn mul(self, rhs: Unitary<T>) -> Unitary<T> {
        &self * &rhs
    }
}

pub(crate) fn check_targets(targets: &[usize], width: usize) -> Result<()> {
    for (i, &t) in targets.iter().enumerate() {
        if t >= width {
            return Err(invalid(format!("qubit index {t} out of range for width {width}")));
        }
        if targets[..i].contains(&t) {
            return Err(invalid(format!("qubit index {t} repeated")));
        }
    }
    Ok(())
}

/// Serialized form of a numeric matrix: rows of `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson(pub Vec<Vec<[f64; 2]>>);

impl<T: Real> From<&Unitary<T>> for MatrixJson {
    fn from(u: &Unitary<T>) -> Self {
        MatrixJson(
            (0..u.dim())
                .map(|i| {
                    (0..u.dim())
                        .map(|j| {
                            let z = u.entry(i, j);
                            [z.re.to_f64_lossy(), z.im.to_f64_lossy()]
                        })
                        .collect()
                })
                .collect(),
        )
    }
}

impl MatrixJson {
    pub fn to_unitary<T: Real>(&self) -> Result<Unitary<T>> {
        let rows: Vec<Vec<Complex<T>>> = self.0.iter().map(|r| r.iter().map(|&[re, im]| c(re, im)).collect()).collect();
        Unitary::from_rows(&rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Unitary<f64> {
        Unitary::from_rows(&[vec![c(0., 0.), c(1., 0.)], vec![c(1., 0.), c(0., 0.)]]).unwrap()
    }

    #[test]
    fn rejects_non_unitary() {
        let r = Unitary::<f64>::from_rows(&[vec![c(1., 0.), c(1., 0.)], vec![c(0., 0.), c(1., 0.)]]);
        assert!(matches!(r, Err(Error::Validation(_))));
        let r = Unitary::<f64>::from_rows(&[vec![c(1., 0.)]]);
        assert!(matches!(r, Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn embed_uses_msb_convention() {
        // X on qubit 0 of two flips the high bit: |00> -> |10>.
        let e = x().embed(&[0], 2).unwrap();
        assert_eq!(e.entry(2, 0), c(1., 0.));
        let e = x().embed(&[1], 2).unwrap();
        assert_eq!(e.entry(1, 0), c(1., 0.));
        assert!(x().embed(&[2], 2).is_err());
    }

    #[test]
    fn pow_matches_repeated_product() {
        let h = Unitary::<f64>::from_rows(&[vec![c(0.6, 0.0), c(0.0, 0.8)], vec![c(0.0, 0.8), c(0.6, 0.0)]]).unwrap();
        let mut acc = Unitary::identity(2);
        for _ in 0..7 {
            acc = &acc * &h;
        }
        assert!(h.pow(7).max_abs_diff(&acc) < 1e-14);
        assert!((h.pow(-3) * h.pow(3)).max_abs_diff(&Unitary::identity(2)) < 1e-14);
    }
}
