//! Numeric roots of real-coefficient polynomials (Durand–Kerner).

use num_complex::Complex;

use crate::error::{validation, Result};

const MAX_ITERS: usize = 2000;

/// All complex roots of `Σ coefs[i] x^i`, constant term first.
pub fn complex_roots(coefs: &[f64]) -> Result<Vec<Complex<f64>>> {
    let lead = match coefs.iter().rposition(|&c| c != 0.0) {
        Some(i) if i >= 1 => i,
        _ => return Err(validation("polynomial has no roots to locate")),
    };
    let monic: Vec<f64> = coefs[..=lead].iter().map(|c| c / coefs[lead]).collect();
    let eval = |z: Complex<f64>| monic.iter().rev().fold(Complex::new(0.0, 0.0), |acc, &c| acc * z + c);
    let seed = Complex::new(0.4, 0.9);
    let mut roots: Vec<Complex<f64>> = (0..lead).map(|k| seed.powi(k as i32)).collect();
    for _ in 0..MAX_ITERS {
        let mut delta: f64 = 0.0;
        for i in 0..lead {
            let zi = roots[i];
            let denom = roots
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(Complex::new(1.0, 0.0), |acc, (_, &zj)| acc * (zi - zj));
            let step = eval(zi) / denom;
            roots[i] = zi - step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    Ok(roots)
}
