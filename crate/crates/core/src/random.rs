//! Haar-distributed samples for tests, benchmarks and verification suites.

use nalgebra::DMatrix;
use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::gates::{Gate, GateWord};
use crate::matrix::Unitary;
use crate::scalar::Real;
use crate::sim::StateVector;

fn gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(T::lit(re), T::lit(im))
}

/// Haar-random `dim × dim` unitary via QR of a Ginibre matrix with the
/// phases of `R`'s diagonal folded back into `Q`.
fn haar_matrix<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DMatrix<Complex<T>> {
    let g = DMatrix::from_fn(dim, dim, |_, _| gaussian::<T, R>(rng));
    let (q, r) = g.qr().unpack();
    let mut q = q;
    for j in 0..dim {
        let d = r[(j, j)];
        let n = (d.re * d.re + d.im * d.im).sqrt();
        let phase = if n > T::zero() { d / n } else { Complex::new(T::one(), T::zero()) };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    q
}

pub fn haar_unitary<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Unitary<T> {
    Unitary::from_matrix_unchecked(haar_matrix(dim, rng))
}

/// A random element of SU(2).
pub fn haar_su2<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Unitary<T> {
    let u: Unitary<T> = haar_unitary(2, rng);
    let det = u.det();
    let half = det.im.atan2(det.re) / T::lit(2.0);
    u.scaled(Complex::new(half.cos(), -half.sin()))
}

/// A random 4×4 unitary fixing `|00>` with a Haar SU(3) block on the rest.
pub fn haar_sigma<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Unitary<T> {
    let b = haar_matrix::<T, R>(3, rng);
    let det = b.clone().determinant();
    let third = det.im.atan2(det.re) / T::lit(3.0);
    let fix = Complex::new(third.cos(), -third.sin());
    let mut m = DMatrix::identity(4, 4);
    for i in 0..3 {
        for j in 0..3 {
            m[(i + 1, j + 1)] = b[(i, j)] * fix;
        }
    }
    Unitary::from_matrix_unchecked(m)
}

/// A Haar-random pure state on `n` qubits.
pub fn haar_state<T: Real, R: Rng + ?Sized>(n: usize, rng: &mut R) -> StateVector<T> {
    let amps: Vec<Complex<T>> = (0..1usize << n).map(|_| gaussian::<T, R>(rng)).collect();
    StateVector::from_amplitudes_normalized(amps)
}

/// Word of `len` gates drawn uniformly from `alphabet`, each on uniformly
/// chosen distinct qubits of a `width`-qubit register.
pub fn random_word<R: Rng + ?Sized>(alphabet: &[Gate], width: usize, len: usize, rng: &mut R) -> GateWord {
    let usable: Vec<Gate> = alphabet.iter().copied().filter(|g| g.arity() <= width).collect();
    assert!(!usable.is_empty(), "no gate in the alphabet fits {width} qubits");
    let mut w = GateWord::new(width);
    for _ in 0..len {
        let g = usable[rng.random_range(0..usable.len())];
        let qubits = rand::seq::index::sample(rng, width, g.arity()).into_vec();
        w.push(g, &qubits).expect("distinct in-range qubits");
    }
    w
}
