//! SU(2) algebra: real powers of Pauli matrices, axis-angle form, Euler
//! composition about two orthogonal axes, and the projective distance.
//!
//! Angles follow the exponent convention `e^{i phi n·sigma}`: an
//! [`AxisAngle`] with angle `phi` is a rotation by `2 phi` in SO(3).

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, Matrix3, Vector3};
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, validation, Error, Result};
use crate::matrix::Unitary;
use crate::scalar::{arg, c, cis, modulus, wrap_angle, Real};

/// Axis tag for [`pauli_power`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
    /// The Hadamard axis `(x + z)/sqrt 2`.
    H,
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "x" => Ok(Axis::X),
            "y" => Ok(Axis::Y),
            "z" => Ok(Axis::Z),
            "h" => Ok(Axis::H),
            _ => Err(invalid(format!("unknown axis tag {s:?}; expected one of x, y, z, h"))),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
            Axis::H => "h",
        };
        f.write_str(s)
    }
}

pub fn identity2<T: Real>() -> Unitary<T> {
    Unitary::identity(2)
}

pub fn sigma_x<T: Real>() -> Unitary<T> {
    Unitary::from_matrix_unchecked(DMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]))
}

pub fn sigma_y<T: Real>() -> Unitary<T> {
    Unitary::from_matrix_unchecked(DMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]))
}

pub fn sigma_z<T: Real>() -> Unitary<T> {
    Unitary::from_matrix_unchecked(DMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]))
}

pub fn hadamard<T: Real>() -> Unitary<T> {
    let s = T::lit(std::f64::consts::FRAC_1_SQRT_2);
    let p = Complex::new(s, T::zero());
    Unitary::from_matrix_unchecked(DMatrix::from_row_slice(2, 2, &[p, p, p, -p]))
}

/// `n·sigma` for a real 3-vector (not necessarily unit).
pub fn n_dot_sigma<T: Real>(n: &Vector3<T>) -> nalgebra::DMatrix<Complex<T>> {
    let z = Complex::new(n.z, T::zero());
    let off = Complex::new(n.x, -n.y);
    DMatrix::from_row_slice(2, 2, &[z, off, off.conj(), -z])
}

/// `e^{i phi n·sigma} = cos phi I + i sin phi (n·sigma)` for a unit axis.
pub fn su2_exp<T: Real>(phi: T, axis: &Vector3<T>) -> Unitary<T> {
    let (s, co) = (phi.sin(), phi.cos());
    let ns = n_dot_sigma(axis);
    let m = DMatrix::from_fn(2, 2, |i, j| {
        let id = if i == j { Complex::new(co, T::zero()) } else { c(0., 0.) };
        id + Complex::new(T::zero(), s) * ns[(i, j)]
    });
    Unitary::from_matrix_unchecked(m)
}

/// `sigma_axis^alpha = e^{i pi alpha/2} e^{-i pi alpha/2 sigma_axis}`.
///
/// The Hadamard power is defined by similarity, `H^alpha = sigma_y^{1/4}
/// sigma_z^alpha sigma_y^{-1/4}`, which reproduces `H` at `alpha = 1`.
pub fn pauli_power<T: Real>(axis: Axis, alpha: T) -> Unitary<T> {
    let half = T::pi() * alpha / T::lit(2.0);
    let direction = match axis {
        Axis::X => Vector3::x(),
        Axis::Y => Vector3::y(),
        Axis::Z => Vector3::z(),
        Axis::H => {
            let q = pauli_power(Axis::Y, T::lit(0.25));
            let inner = pauli_power(Axis::Z, alpha);
            return &(&q * &inner) * &q.adjoint();
        }
    };
    su2_exp(-half, &direction).scaled(cis(half))
}

/// A 2×2 unitary written as `e^{i delta} e^{i phi n·sigma}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisAngle<T: Real> {
    pub global_phase: T,
    /// In `[0, pi]`.
    pub angle: T,
    /// Unit vector; `z` when the angle is 0 or pi.
    pub axis: Vector3<T>,
}

impl<T: Real> AxisAngle<T> {
    pub fn new(global_phase: T, angle: T, axis: Vector3<T>) -> Self {
        AxisAngle { global_phase, angle, axis }
    }

    pub fn reconstruct(&self) -> Unitary<T> {
        su2_exp(self.angle, &self.axis).scaled(cis(self.global_phase))
    }

    /// The same rotation with the global phase dropped.
    pub fn without_phase(&self) -> Self {
        AxisAngle { global_phase: T::zero(), ..*self }
    }
}

/// Decomposes a 2×2 unitary into global phase, angle and axis.
///
/// The global phase is taken from `det U = e^{2 i delta}` with `delta` in
/// `[-pi/2, pi/2)`; this fixes the sign ambiguity `(delta, phi, n) ~
/// (delta + pi, pi - phi, -n)`.
pub fn axis_angle_of<T: Real>(u: &Unitary<T>) -> Result<AxisAngle<T>> {
    if u.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: u.dim() });
    }
    if !(u.unitarity_defect() <= T::validation_tol()) {
        return Err(validation("axis_angle_of: input is not unitary"));
    }
    let det = u.entry(0, 0) * u.entry(1, 1) - u.entry(0, 1) * u.entry(1, 0);
    let mut delta = arg(det) / T::lit(2.0);
    if delta >= T::frac_pi_2() - T::lit(1e-12) {
        delta -= T::pi();
    }
    let unphase = cis(-delta);
    let a = u.entry(0, 0) * unphase;
    let b = u.entry(0, 1) * unphase;
    // V = [[cos + i nz sin, sin (ny + i nx)], ...]
    let d = u.entry(1, 1) * unphase;
    let cos_phi = (a.re + d.re) / T::lit(2.0);
    let v = Vector3::new(b.im, b.re, (a.im - d.im) / T::lit(2.0));
    let sin_phi = v.norm();
    let angle = sin_phi.atan2(cos_phi);
    let axis = if sin_phi <= T::lit(1e-12) { Vector3::z() } else { v / sin_phi };
    Ok(AxisAngle { global_phase: delta, angle, axis })
}

/// The SO(3) rotation `R` with `U (n·sigma) U^dag = (R n)·sigma`.
pub fn so3_of<T: Real>(u: &Unitary<T>) -> Result<Matrix3<T>> {
    if u.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: u.dim() });
    }
    let paulis = [sigma_x::<T>(), sigma_y(), sigma_z()];
    let ud = u.adjoint();
    let mut r = Matrix3::zeros();
    for (j, sj) in paulis.iter().enumerate() {
        let conj = &(u * sj) * &ud;
        for (i, si) in paulis.iter().enumerate() {
            r[(i, j)] = (si * &conj).trace().re / T::lit(2.0);
        }
    }
    Ok(r)
}

/// `e^{i alpha n1·sigma} e^{i beta n2·sigma} e^{i gamma n1·sigma}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerTriple<T: Real> {
    pub alpha: T,
    pub beta: T,
    pub gamma: T,
    pub axis1: Vector3<T>,
    pub axis2: Vector3<T>,
}

fn check_axes<T: Real>(axis1: &Vector3<T>, axis2: &Vector3<T>) -> Result<()> {
    let tol = T::validation_tol();
    for (name, a) in [("axis1", axis1), ("axis2", axis2)] {
        if !((a.norm() - T::one()).abs() <= tol) {
            return Err(validation(format!("{name} is not a unit vector")));
        }
    }
    if !(axis1.dot(axis2).abs() <= tol) {
        return Err(validation(format!(
            "axes are not orthogonal: axis1·axis2 = {:e}",
            axis1.dot(axis2).to_f64_lossy()
        )));
    }
    Ok(())
}

pub fn euler_compose<T: Real>(t: &EulerTriple<T>) -> Result<Unitary<T>> {
    check_axes(&t.axis1, &t.axis2)?;
    let a = su2_exp(t.alpha, &t.axis1);
    let b = su2_exp(t.beta, &t.axis2);
    let g = su2_exp(t.gamma, &t.axis1);
    Ok(&(&a * &b) * &g)
}

/// Inverts the Euler expansion
///
/// ```text
/// cos phi   = cos b cos(g + a)
/// n sin phi = n1 cos b sin(g + a) + n2 sin b cos(g - a) + (n1 × n2) sin b sin(g - a)
/// ```
///
/// for `(a, b, g)`, with `b` in `[0, pi/2]`. When `sin b = 0` (or `cos b =
/// 0`) only the sum (difference) is determined and `gamma = 0` is chosen.
/// The target's global phase is ignored.
pub fn euler_invert<T: Real>(target: &AxisAngle<T>, axis1: &Vector3<T>, axis2: &Vector3<T>) -> Result<EulerTriple<T>> {
    check_axes(axis1, axis2)?;
    let axis3 = axis1.cross(axis2);
    let w = target.angle.cos();
    let v = target.axis * target.angle.sin();
    let (v1, v2, v3) = (v.dot(axis1), v.dot(axis2), v.dot(&axis3));
    let cb = (w * w + v1 * v1).sqrt();
    let sb = (v2 * v2 + v3 * v3).sqrt();
    let beta = sb.atan2(cb);
    let eps = T::lit(1e-13);
    let (alpha, gamma) = if sb <= eps {
        (v1.atan2(w), T::zero())
    } else if cb <= eps {
        (-v3.atan2(v2), T::zero())
    } else {
        let sum = v1.atan2(w);
        let diff = v3.atan2(v2);
        ((sum - diff) / T::lit(2.0), (sum + diff) / T::lit(2.0))
    };
    Ok(EulerTriple {
        alpha: wrap_angle(alpha),
        beta: wrap_angle(beta),
        gamma: wrap_angle(gamma),
        axis1: *axis1,
        axis2: *axis2,
    })
}

/// Eigenphases of the unitary `w`, in `(-pi, pi]`.
fn eigenphases<T: Real>(w: &Unitary<T>) -> Vec<T> {
    if w.dim() == 2 {
        // Closed form through the axis-angle decomposition; the quadratic
        // formula loses half the digits for nearly degenerate eigenvalues.
        let aa = axis_angle_of(w).expect("product of unitaries is unitary");
        return vec![wrap_angle(aa.global_phase + aa.angle), wrap_angle(aa.global_phase - aa.angle)];
    }
    let ev = w.matrix().clone().eigenvalues().expect("complex Schur decomposition always yields eigenvalues");
    ev.iter().map(|z| arg(*z)).collect()
}

/// Length of the shortest arc of the unit circle containing all `phases`.
fn covering_arc<T: Real>(mut phases: Vec<T>) -> T {
    phases.sort_by(|a, b| a.partial_cmp(b).expect("finite phases"));
    let two_pi = T::two_pi();
    let mut largest_gap = phases[0] + two_pi - *phases.last().unwrap();
    for w in phases.windows(2) {
        largest_gap = largest_gap.max(w[1] - w[0]);
    }
    (two_pi - largest_gap).max(T::zero())
}

/// `min_theta || U - e^{i theta} V ||_2`.
///
/// For unitaries the spectral norm of `U - e^{i theta} V` is the largest
/// chord from `e^{i theta}` to an eigenvalue of `U V^dag`, so the minimum is
/// `2 sin(arc/4)` where `arc` is the shortest arc covering the spectrum.
pub fn proj_distance<T: Real>(u: &Unitary<T>, v: &Unitary<T>) -> Result<T> {
    let w = u.try_mul(&v.adjoint())?;
    let arc = covering_arc(eigenphases(&w));
    Ok(T::lit(2.0) * (arc / T::lit(4.0)).sin())
}

/// A two-level factor acting on basis states `indices.0` and `indices.1` of
/// the 4-dimensional space.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoLevel<T: Real> {
    pub indices: (usize, usize),
    pub block: Unitary<T>,
}

impl<T: Real> TwoLevel<T> {
    pub fn embed(&self, dim: usize) -> Unitary<T> {
        let (p, q) = self.indices;
        let mut m = DMatrix::identity(dim, dim);
        m[(p, p)] = self.block.entry(0, 0);
        m[(p, q)] = self.block.entry(0, 1);
        m[(q, p)] = self.block.entry(1, 0);
        m[(q, q)] = self.block.entry(1, 1);
        Unitary::from_matrix_unchecked(m)
    }
}

/// SU(2) rotation `G` with `G (x, y)^T = (r, 0)^T`, `r = |(x, y)|`.
fn givens<T: Real>(x: Complex<T>, y: Complex<T>) -> Unitary<T> {
    let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
    let m = DMatrix::from_row_slice(2, 2, &[x.conj() / r, y.conj() / r, -y / r, x / r]);
    Unitary::from_matrix_unchecked(m)
}

fn is_identity<T: Real>(u: &Unitary<T>) -> bool {
    u.max_abs_diff(&Unitary::identity(u.dim())) <= T::lit(1e-12)
}

/// Factors a 4×4 unitary that fixes `|00>` into at most three two-level
/// unitaries on the remaining three basis states: `U = F1 F2 F3`.
pub fn su3_two_level_decompose<T: Real>(u: &Unitary<T>) -> Result<Vec<TwoLevel<T>>> {
    if u.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, found: u.dim() });
    }
    let tol = T::validation_tol();
    for k in 0..4 {
        let expect = if k == 0 { c(1., 0.) } else { c(0., 0.) };
        if !(modulus(u.entry(k, 0) - expect) <= tol && modulus(u.entry(0, k) - expect) <= tol) {
            return Err(validation("su3_two_level_decompose: input does not fix |00>"));
        }
    }
    let tiny = T::lit(1e-14);
    let mut factors = Vec::new();
    let mut rest = u.clone();

    // Clear entry (3, 1) with a rotation on (2, 3).
    let (x, y) = (rest.entry(2, 1), rest.entry(3, 1));
    if modulus(y) > tiny {
        let g = TwoLevel { indices: (2, 3), block: givens(x, y) };
        rest = &g.embed(4) * &rest;
        factors.push(TwoLevel { indices: (2, 3), block: g.block.adjoint() });
    }
    // Map column 1 onto |01> with a rotation on (1, 2).
    let (x, y) = (rest.entry(1, 1), rest.entry(2, 1));
    if modulus(y) > tiny || modulus(x - c(1., 0.)) > tiny {
        let g = TwoLevel { indices: (1, 2), block: givens(x, y) };
        rest = &g.embed(4) * &rest;
        factors.push(TwoLevel { indices: (1, 2), block: g.block.adjoint() });
    }
    let last = Unitary::from_matrix_unchecked(DMatrix::from_row_slice(
        2,
        2,
        &[rest.entry(2, 2), rest.entry(2, 3), rest.entry(3, 2), rest.entry(3, 3)],
    ));
    if !is_identity(&last) {
        factors.push(TwoLevel { indices: (2, 3), block: last });
    }
    factors.retain(|f| !is_identity(&f.block));
    Ok(factors)
}

/// Multiplies two-level factors back together.
pub fn compose_two_level<T: Real>(factors: &[TwoLevel<T>], dim: usize) -> Unitary<T> {
    factors.iter().fold(Unitary::identity(dim), |acc, f| &acc * &f.embed(dim))
}
