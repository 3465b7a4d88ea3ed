//! Spectral checks on the two-qubit generator set
//! `G = {Λ1(σx^{1/2}), Λ1(σz^{1/2}), Λ1(σx), H⊗H, swap}`.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::ladder::ladder_power;
use crate::error::Result;
use crate::gates::{Gate, GateWord};
use crate::matrix::{CMatrix, Unitary};

type C64 = Complex<f64>;

/// The six composites `rx, ry, rz, r1, r2, r3` as two-qubit words.
#[derive(Debug, Clone, PartialEq)]
pub struct RhoSet {
    pub rx: GateWord,
    pub ry: GateWord,
    pub rz: GateWord,
    pub r1: GateWord,
    pub r2: GateWord,
    pub r3: GateWord,
}

/// `Λ1(σx)(H⊗H)Λ1(σx)(H⊗H)Λ1(σx)`.
pub fn swap_word() -> GateWord {
    let mut w = GateWord::new(2);
    for i in 0..3 {
        w = w.with(Gate::CNOT, &[0, 1]);
        if i < 2 {
            w = w.with(Gate::H, &[0]).with(Gate::H, &[1]);
        }
    }
    w
}

fn cat(words: &[&GateWord]) -> GateWord {
    words.iter().fold(GateWord::new(2), |acc, w| acc.concat(w).expect("two-qubit words"))
}

pub fn rho_words() -> RhoSet {
    let cx = GateWord::new(2).with(Gate::CNOT, &[0, 1]);
    let cz_half = GateWord::new(2).with(Gate::CS, &[0, 1]);
    let cx_half = GateWord::new(2).with(Gate::CSX, &[0, 1]);
    let swap = swap_word();
    let rx = cat(&[&cx_half, &cz_half.inverse()]);
    let ry = cat(&[&swap, &rx.inverse(), &swap]);
    let rz = cat(&[&cx, &ry.inverse(), &cx]);
    let r1 = cat(&[&rz.inverse(), &cx, &cz_half, &rz]);
    let r2 = cat(&[&rx, &ry]);
    let r3 = cat(&[&r1, &r2, &r1.inverse()]);
    RhoSet { rx, ry, rz, r1, r2, r3 }
}

/// Numeric matrices keyed `rx, ry, rz, r1, r2, r3`.
pub fn rho_generators() -> BTreeMap<&'static str, Unitary<f64>> {
    let s = rho_words();
    [("rx", &s.rx), ("ry", &s.ry), ("rz", &s.rz), ("r1", &s.r1), ("r2", &s.r2), ("r3", &s.r3)]
        .into_iter()
        .map(|(k, w)| (k, w.numeric().expect("well-formed word")))
        .collect()
}

/// Unnormalized states fixed by `r1`, `r2`, `r3`.
pub fn fixed_states() -> [[f64; 4]; 3] {
    [[0.0, 1.0, -1.0, 0.0], [0.0, 1.0, 1.0, 1.0], [0.0, -1.0, -1.0, 2.0]]
}

/// `max |U f − f|` for a unit-normalized `f`.
pub fn fixed_state_residual(u: &Unitary<f64>, f: &[f64; 4]) -> f64 {
    let n = f.iter().map(|x| x * x).sum::<f64>().sqrt();
    let v: Vec<C64> = f.iter().map(|&x| C64::new(x / n, 0.0)).collect();
    (0..4)
        .map(|i| {
            let mut acc = C64::new(0.0, 0.0);
            for (j, x) in v.iter().enumerate() {
                acc += u.entry(i, j) * x;
            }
            (acc - v[i]).norm()
        })
        .fold(0.0, f64::max)
}

/// Orthonormal frame `(|00>, f1, f2, f3)` as columns; real orthogonal.
pub fn fixed_frame() -> CMatrix<f64> {
    let fs = fixed_states();
    let mut m = DMatrix::from_element(4, 4, C64::new(0.0, 0.0));
    m[(0, 0)] = C64::new(1.0, 0.0);
    for (col, f) in fs.iter().enumerate() {
        let n = f.iter().map(|x| x * x).sum::<f64>().sqrt();
        for (row, x) in f.iter().enumerate() {
            m[(row, col + 1)] = C64::new(x / n, 0.0);
        }
    }
    m
}

/// `F^dag U F` in the fixed-state frame.
pub fn in_fixed_frame(u: &Unitary<f64>) -> CMatrix<f64> {
    let f = fixed_frame();
    f.adjoint() * u.matrix() * f
}

/// Characteristic polynomial `det(xI − A)` by Faddeev–LeVerrier, constant term first.
pub fn char_poly(a: &CMatrix<f64>) -> Vec<C64> {
    let n = a.nrows();
    let mut coefs = vec![C64::new(0.0, 0.0); n + 1];
    coefs[n] = C64::new(1.0, 0.0);
    let id = DMatrix::<C64>::identity(n, n);
    let mut m = DMatrix::<C64>::zeros(n, n);
    for k in 1..=n {
        m = a * &m + &id * coefs[n - k + 1];
        let am = a * &m;
        coefs[n - k] = -am.trace() / C64::new(k as f64, 0.0);
    }
    coefs
}

pub fn eigenvalues(u: &Unitary<f64>) -> Vec<C64> {
    let mut ev: Vec<C64> = u.matrix().clone().eigenvalues().expect("Schur decomposition").iter().copied().collect();
    ev.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap().then(a.re.partial_cmp(&b.re).unwrap()));
    ev
}

/// Largest distance from `got` to the multiset `want`, matched greedily.
pub fn spectrum_distance(got: &[C64], want: &[C64]) -> f64 {
    let mut pool: Vec<C64> = want.to_vec();
    let mut worst: f64 = 0.0;
    for g in got {
        let (idx, d) = pool
            .iter()
            .enumerate()
            .map(|(i, w)| (i, (g - w).norm()))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .expect("equal lengths");
        worst = worst.max(d);
        pool.swap_remove(idx);
    }
    worst
}

/// `{1, 1, (1 ± i√15)/4}`.
pub fn expected_spectrum() -> [C64; 4] {
    let s = 15f64.sqrt() / 4.0;
    [C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::new(0.25, s), C64::new(0.25, -s)]
}

/// `(1 + 2i)/√5`.
pub fn alpha_const() -> C64 {
    C64::new(1.0, 2.0) / 5f64.sqrt()
}

/// `(1 + 3i)/√10`.
pub fn beta_const() -> C64 {
    C64::new(1.0, 3.0) / 10f64.sqrt()
}

/// Rotation block of `ρ̂2` (indices 1, 3, constant at `[1, 3]`) or `ρ̂3`
/// (indices 1, 2, constant at `[2, 1]`).
#[derive(Debug, Clone, Copy, PartialEq)]
struct BlockShape {
    p: usize,
    q: usize,
    fixed: usize,
    /// `true` when the constant multiplies the upper off-diagonal entry.
    upper: bool,
}

const R2_SHAPE: BlockShape = BlockShape { p: 1, q: 3, fixed: 2, upper: true };
const R3_SHAPE: BlockShape = BlockShape { p: 1, q: 2, fixed: 3, upper: false };

impl BlockShape {
    /// The ideal 4×4 form at angle `theta` with constant `g`.
    fn ideal(&self, g: C64, theta: f64) -> CMatrix<f64> {
        let (s, co) = theta.sin_cos();
        let mut m = DMatrix::<C64>::zeros(4, 4);
        m[(0, 0)] = C64::new(1.0, 0.0);
        m[(self.fixed, self.fixed)] = C64::new(1.0, 0.0);
        m[(self.p, self.p)] = C64::new(co, 0.0);
        m[(self.q, self.q)] = C64::new(co, 0.0);
        if self.upper {
            m[(self.p, self.q)] = g * s;
            m[(self.q, self.p)] = -g.conj() * s;
        } else {
            m[(self.q, self.p)] = g * s;
            m[(self.p, self.q)] = -g.conj() * s;
        }
        m
    }

    /// Step angle and constant read off `m`, choosing the sign of the
    /// angle so the constant has positive real part; `M_g(θ) = M_{-g}(-θ)`.
    fn extract(&self, m: &CMatrix<f64>) -> (f64, C64) {
        let co = m[(self.p, self.p)].re;
        let off = if self.upper { m[(self.p, self.q)] } else { m[(self.q, self.p)] };
        let s = off.norm();
        let mut theta = s.atan2(co);
        let mut g = off / s;
        if g.re < 0.0 {
            theta = -theta;
            g = -g;
        }
        (theta, g)
    }
}

fn max_abs(a: &CMatrix<f64>, b: &CMatrix<f64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// One grid point of the power ladder in the fixed frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RhoGridPoint {
    pub generator: String,
    pub theta: f64,
    pub power: u64,
    /// Distance of `ρ̂^n` from the ideal block at the achieved angle `nθ`.
    pub block_form_residual: f64,
    /// Distance of `ρ̂^n` from the ideal block at the requested angle.
    pub target_residual: f64,
    /// Constant re-extracted from `ρ̂^n`, deviation from the paper's value.
    pub constant_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RhoBasisReport {
    pub alpha_const: [f64; 2],
    pub beta_const: [f64; 2],
    pub step_angle_r2: f64,
    pub step_angle_r3: f64,
    pub residuals: BTreeMap<String, f64>,
    pub grid: Vec<RhoGridPoint>,
}

/// Ladder tolerance used for the grid in [`rho_basis_forms`].
pub const RHO_LADDER_EPS: f64 = 1e-7;

/// Extracts `α`, `β` from `ρ̂2`, `ρ̂3` and checks powers selected by the
/// ladder over a grid of target angles.
pub fn rho_basis_forms() -> Result<RhoBasisReport> {
    let gens = rho_generators();
    let mut residuals = BTreeMap::new();
    let mut grid = Vec::new();
    let mut extracted = Vec::new();
    let grid_thetas = [0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, -0.75, -2.25];
    for (name, shape, paper) in [("r2", R2_SHAPE, alpha_const()), ("r3", R3_SHAPE, beta_const())] {
        let hat = in_fixed_frame(&gens[name]);
        let (step, g) = shape.extract(&hat);
        extracted.push((step, g));
        residuals.insert(format!("{name}.constant"), (g - paper).norm());
        residuals.insert(format!("{name}.blockForm"), max_abs(&hat, &shape.ideal(g, step)));
        for &theta in &grid_thetas {
            let n = ladder_power(step, theta, RHO_LADDER_EPS)?;
            let powered = in_fixed_frame(&gens[name].pow(n as i64));
            let achieved = (n as f64 * step).rem_euclid(TAU);
            let block_form_residual = max_abs(&powered, &shape.ideal(paper, achieved));
            let target_residual = max_abs(&powered, &shape.ideal(paper, theta));
            let constant_residual = if n == 0 {
                0.0
            } else {
                let s = achieved.sin();
                let off = if shape.upper { powered[(shape.p, shape.q)] } else { powered[(shape.q, shape.p)] };
                (off / s - paper).norm()
            };
            grid.push(RhoGridPoint {
                generator: name.to_string(),
                theta,
                power: n,
                block_form_residual,
                target_residual,
                constant_residual,
            });
        }
    }
    let worst = |f: fn(&RhoGridPoint) -> f64| grid.iter().map(f).fold(0.0, f64::max);
    residuals.insert("grid.blockForm".into(), worst(|p| p.block_form_residual));
    residuals.insert("grid.target".into(), worst(|p| p.target_residual));
    residuals.insert("grid.constant".into(), worst(|p| p.constant_residual));
    Ok(RhoBasisReport {
        alpha_const: [extracted[0].1.re, extracted[0].1.im],
        beta_const: [extracted[1].1.re, extracted[1].1.im],
        step_angle_r2: extracted[0].0,
        step_angle_r3: extracted[1].0,
        residuals,
        grid,
    })
}

/// `max |numeric(reverse(w)) − numeric(w)^T|`: every generator in `G` is
/// symmetric, so reversing a word transposes its matrix.
pub fn transpose_residual(w: &GateWord) -> f64 {
    let rev = GateWord { width: w.width, gates: w.gates.iter().rev().cloned().collect() };
    let a = rev.numeric::<f64>().expect("well-formed word");
    let b = w.numeric::<f64>().expect("well-formed word").transpose();
    a.max_abs_diff(&b)
}
