//! Approximating a phase by multiples of an irrational step.

use std::f64::consts::{PI, TAU};

use crate::error::{invalid, validation, Error, Result};
use crate::scalar::circle_distance;

/// Smallest tolerance [`phase_ladder`] accepts.
pub const LADDER_EPS_FLOOR: f64 = 1e-6;

/// Hard cap on the number of ladder steps considered.
pub const LADDER_N_CAP: u64 = 100_000_000;

fn frac_distance(x: f64) -> f64 {
    let f = x - x.round();
    f.abs()
}

/// Denominators `q_k` of the continued-fraction convergents of `x`.
pub fn convergent_denominators(x: f64, max_q: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let (mut q_prev, mut q) = (0u64, 1u64);
    let mut r = x - x.floor();
    out.push(q);
    while r > 0.0 && out.len() < 64 {
        let inv = 1.0 / r;
        let a = inv.floor();
        r = inv - a;
        let Some(next) = (a as u64).checked_mul(q).and_then(|v| v.checked_add(q_prev)) else { break };
        if next > max_q {
            break;
        }
        q_prev = q;
        q = next;
        out.push(q);
        if r < 1e-15 {
            break;
        }
    }
    out
}

/// Step count `N` such that every phase lies within `eps` of some
/// `n · step`, `0 <= n < N`.
///
/// With `x = step / 2pi` and a convergent denominator `q_k`, the points
/// `n x mod 1` for `n < q_k` split the circle into gaps no longer than
/// `||q_{k-1} x|| + ||q_k x||`.
pub fn ladder_bound(step: f64, eps: f64) -> Result<u64> {
    let x = (step / TAU).rem_euclid(1.0);
    let qs = convergent_denominators(x, LADDER_N_CAP);
    for w in qs.windows(2) {
        let gap = frac_distance(w[0] as f64 * x) + frac_distance(w[1] as f64 * x);
        if TAU * gap / 2.0 < eps {
            return Ok(w[1]);
        }
    }
    Ok(LADDER_N_CAP)
}

/// Smallest `n` with `|n · step - theta| < eps` on the circle.
///
/// Baby-step giant-step over `0..=N`: the phases `j · step`, `j < B`, are
/// sorted once, and each block `m B + j` is a window lookup around
/// `theta - m B step`. Hits are confirmed with the direct phase `n · step`.
pub fn ladder_power(step: f64, theta: f64, eps: f64) -> Result<u64> {
    if !eps.is_finite() || eps <= 0.0 {
        return Err(invalid(format!("tolerance must be positive and finite, got {eps}")));
    }
    if !theta.is_finite() || !step.is_finite() {
        return Err(invalid("angles must be finite"));
    }
    let n_max = ladder_bound(step, eps)?;
    let hit = |n: u64| circle_distance((n as f64 * step).rem_euclid(TAU), theta) < eps;
    let b = ((n_max + 1) as f64).sqrt().ceil() as u64;
    let mut baby: Vec<(f64, u64)> = (0..b).map(|j| ((j as f64 * step).rem_euclid(TAU), j)).collect();
    baby.sort_by(|x, y| x.0.total_cmp(&y.0));
    let slack = eps + 1e-9;
    for m in 0..=n_max / b {
        let base = m * b;
        let centre = (theta - base as f64 * step).rem_euclid(TAU);
        let (lo, hi) = (centre - slack, centre + slack);
        let mut best: Option<u64> = None;
        let mut scan = |from: f64, to: f64| {
            let start = baby.partition_point(|e| e.0 < from);
            for &(p, j) in &baby[start..] {
                if p > to {
                    break;
                }
                let n = base + j;
                if n <= n_max && best.is_none_or(|k| n < k) && hit(n) {
                    best = Some(n);
                }
            }
        };
        scan(lo.max(0.0), hi.min(TAU));
        if lo < 0.0 {
            scan(lo + TAU, TAU);
        }
        if hi > TAU {
            scan(0.0, hi - TAU);
        }
        if let Some(n) = best {
            return Ok(n);
        }
    }
    Err(validation(format!("no ladder power below {n_max} reaches tolerance {eps:e}")))
}

/// Smallest `n` with `|n lambda pi - theta| < eps` on the circle.
pub fn phase_ladder(theta: f64, eps: f64) -> Result<u64> {
    if eps.is_finite() && eps > 0.0 && eps < LADDER_EPS_FLOOR {
        return Err(Error::UnsupportedPrecision { requested: eps, floor: LADDER_EPS_FLOOR });
    }
    ladder_power(super::frame::lambda() * PI, theta, eps)
}
