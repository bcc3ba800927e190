//! Hermite polynomials, unit-norm oscillator eigenfunctions and
//! log-space combinatorial factors.
//!
//! The eigenfunctions are normalized so that
//!
//! ```text
//! φ_n(z) = (√π 2ⁿ n!)^{-1/2} H_n(z) e^{-z²/2},   ∫ φ_m φ_n dz = δ_mn
//! ```
//!
//! and are evaluated with the normalized three-term recurrence, which never
//! forms `H_n` or `n!` explicitly and so stays finite for large `n`.

use std::f64::consts::PI;

/// Oscillator excitation level.
pub type ModeIndex = usize;

/// Physicists' Hermite polynomial `H_n(z)` by upward recurrence.
pub fn hermite(n: ModeIndex, z: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * z;
    for k in 1..n {
        let next = 2.0 * z * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `φ_0(z) = π^{-1/4} e^{-z²/2}`.
#[inline]
pub fn phi0(z: f64) -> f64 {
    PI.powf(-0.25) * (-0.5 * z * z).exp()
}

/// Unit-norm oscillator eigenfunction `φ_n(z)`.
pub fn phi(n: ModeIndex, z: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = phi0(z);
    for k in 0..n {
        let next = step(k, z, cur, prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// `[φ_0(z), …, φ_max(z)]` in one recurrence pass.
pub fn phi_all(max: ModeIndex, z: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(max + 1);
    phi_fill(z, &mut out, max);
    out
}

/// Same as [`phi_all`] but reuses the caller's buffer.
pub fn phi_fill(z: f64, out: &mut Vec<f64>, max: ModeIndex) {
    out.clear();
    let mut prev = 0.0;
    let mut cur = phi0(z);
    out.push(cur);
    for k in 0..max {
        let next = step(k, z, cur, prev);
        out.push(next);
        prev = cur;
        cur = next;
    }
}

// φ_{k+1} = z √(2/(k+1)) φ_k − √(k/(k+1)) φ_{k−1}
#[inline]
fn step(k: usize, z: f64, cur: f64, prev: f64) -> f64 {
    let kp1 = (k + 1) as f64;
    z * (2.0 / kp1).sqrt() * cur - (k as f64 / kp1).sqrt() * prev
}

/// `ln n!` via log-gamma.
#[inline]
pub fn ln_factorial(n: ModeIndex) -> f64 {
    if n < 2 {
        0.0
    } else {
        libm::lgamma(n as f64 + 1.0)
    }
}

/// `ln √((n+k)! / (n! k!))`.
pub fn log_sqrt_binomial(n: ModeIndex, k: ModeIndex) -> f64 {
    if n == 0 || k == 0 {
        return 0.0;
    }
    0.5 * (ln_factorial(n + k) - ln_factorial(n) - ln_factorial(k))
}
