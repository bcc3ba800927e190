//! Gauss–Hermite quadrature and grid specifications.
//!
//! Rules integrate `∫ f(x) e^{-x²} dx`; the `integrate_*` helpers are
//! weight-compensated so callers always pass the full integrand. Squeezed
//! integrands are handled by mapping the rule onto rotated and rescaled axes
//! (light-cone frame) whose widths follow the integrand's Gaussian envelope.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::special_functions::phi_fill;

pub const MAX_ORDER: usize = 200;

/// Nodes and weights of an `order`-point Gauss–Hermite rule.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    // w_i e^{x_i²}, kept separately so it never over/underflows
    scaled_weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Strictly increasing nodes.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Weights for the `e^{-x²}` measure.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `w_i e^{x_i²}`: weights for integrating a full (unweighted) integrand.
    pub fn scaled_weights(&self) -> &[f64] {
        &self.scaled_weights
    }

    fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes
            .iter()
            .copied()
            .zip(self.scaled_weights.iter().copied())
    }
}

/// Builds the Gauss–Hermite rule of the given order by Newton iteration on
/// the normalized recurrence.
///
/// Weights come from `λ_i = 1 / (n φ_{n-1}(x_i)²)`, which is `w_i e^{x_i²}`
/// and is evaluated without overflow at every order up to [`MAX_ORDER`].
pub fn gauss_hermite(order: usize) -> Result<QuadratureRule> {
    if order == 0 || order > MAX_ORDER {
        return Err(Error::InvalidOrder(order));
    }
    let n = order;
    let nf = n as f64;
    let half = n.div_ceil(2);
    let mut roots: Vec<f64> = Vec::with_capacity(half);

    let mut z = 0.0;
    for i in 0..half {
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-1.0 / 6.0),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * roots[0],
            3 => 1.91 * z - 0.91 * roots[1],
            _ => 2.0 * z - roots[i - 2],
        };
        for _ in 0..100 {
            let (p, pp) = weighted_with_derivative(n, z);
            let dz = p / pp;
            z -= dz;
            if dz.abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        roots.push(z);
    }

    let mut nodes = Vec::with_capacity(n);
    let mut scaled = Vec::with_capacity(n);
    let mut buf = Vec::with_capacity(n);
    let mut push = |x: f64, nodes: &mut Vec<f64>, scaled: &mut Vec<f64>| {
        phi_fill(x, &mut buf, n - 1);
        let prev = buf[n - 1];
        nodes.push(x);
        scaled.push(1.0 / (nf * prev * prev));
    };
    // roots are largest-first; emit negative half then positive half
    for &r in &roots {
        push(-r, &mut nodes, &mut scaled);
    }
    let mirrored = if n % 2 == 1 { half - 1 } else { half };
    for &r in roots[..mirrored].iter().rev() {
        push(r, &mut nodes, &mut scaled);
    }
    if n % 2 == 1 {
        // the middle root is exactly zero by symmetry
        let mid = half - 1;
        nodes[mid] = 0.0;
        phi_fill(0.0, &mut buf, n - 1);
        scaled[mid] = 1.0 / (nf * buf[n - 1] * buf[n - 1]);
    }
    let weights = nodes
        .iter()
        .zip(&scaled)
        .map(|(x, l)| l * (-x * x).exp())
        .collect();
    Ok(QuadratureRule {
        nodes,
        weights,
        scaled_weights: scaled,
    })
}

// φ_n(x) and φ_n'(x) = √(2n) φ_{n-1}(x) − x φ_n(x); same roots as H_n but
// bounded, so Newton steps stay well scaled at high order.
fn weighted_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut cur = PI.powf(-0.25) * (-0.5 * x * x).exp();
    let mut prev = 0.0;
    for j in 1..=n {
        let jf = j as f64;
        let next = x * (2.0 / jf).sqrt() * cur - ((jf - 1.0) / jf).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    (cur, (2.0 * n as f64).sqrt() * prev - x * cur)
}

fn check(value: f64, at: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::IntegrationFailure(at))
    }
}

/// `∫ f(x) dx ≈ Σ w_i e^{x_i²} f(x_i)`.
pub fn integrate_1d<F: Fn(f64) -> f64>(f: F, rule: &QuadratureRule) -> Result<f64> {
    integrate_1d_scaled(f, rule, 0.0, 1.0)
}

/// `∫ f(x) dx` with the rule mapped to `x = center + scale·ξ`.
///
/// Exact for `poly(x)·exp(-((x-center)/scale)²)` up to the rule's degree.
pub fn integrate_1d_scaled<F: Fn(f64) -> f64>(
    f: F,
    rule: &QuadratureRule,
    center: f64,
    scale: f64,
) -> Result<f64> {
    let mut acc = 0.0;
    for (xi, lam) in rule.points() {
        let x = center + scale * xi;
        acc += lam * check(f(x), x)?;
    }
    check(scale * acc, center)
}

/// Tensor-product `∫∫ f(z, t) dz dt` on the unscaled rule.
pub fn integrate_2d<F: Fn(f64, f64) -> f64>(f: F, rule: &QuadratureRule) -> Result<f64> {
    let mut acc = 0.0;
    for (z, lz) in rule.points() {
        let mut row = 0.0;
        for (t, lt) in rule.points() {
            row += lt * check(f(z, t), z)?;
        }
        acc += lz * row;
    }
    check(acc, 0.0)
}

/// `∫∫ f(z, t) dz dt` evaluated on the light-cone axes
/// `u = (z+t)/√2`, `v = (z−t)/√2`, with the rule stretched to
/// `u = scale_u·ξ`, `v = scale_v·ζ`.
///
/// The map `(z,t) → (u,v)` is a rotation, so the measure is unchanged. A
/// rule with `scale_u = e^{η}`, `scale_v = e^{-η}` integrates the squared
/// boosted oscillator states exactly.
pub fn integrate_2d_lightcone<F: Fn(f64, f64) -> f64>(
    f: F,
    rule: &QuadratureRule,
    scale_u: f64,
    scale_v: f64,
) -> Result<f64> {
    let mut acc = 0.0;
    for (a, la) in rule.points() {
        let u = scale_u * a;
        let mut row = 0.0;
        for (b, lb) in rule.points() {
            let v = scale_v * b;
            let z = (u + v) * FRAC_1_SQRT_2;
            let t = (u - v) * FRAC_1_SQRT_2;
            row += lb * check(f(z, t), z)?;
        }
        acc += la * row;
    }
    check(scale_u * scale_v * acc, 0.0)
}

/// Squeeze-aware 2D integration for integrands whose envelope is that of a
/// boosted oscillator state at rapidity `eta` (e.g. `|ψⁿ_η|²`).
pub fn integrate_2d_squeezed<F: Fn(f64, f64) -> f64>(
    f: F,
    rule: &QuadratureRule,
    eta: f64,
) -> Result<f64> {
    integrate_2d_lightcone(f, rule, eta.exp(), (-eta).exp())
}

/// One axis of a rectangular sampling grid: `count` points from `lo` to `hi`
/// inclusive. Text form is `lo:hi:count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn new(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
            return Err(Error::InvalidGrid(format!(
                "need finite lo < hi, got {lo}:{hi}"
            )));
        }
        if count < 2 {
            return Err(Error::InvalidGrid(format!(
                "count must be >= 2, got {count}"
            )));
        }
        Ok(Self { lo, hi, count })
    }

    pub fn spacing(&self) -> f64 {
        (self.hi - self.lo) / (self.count - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        if i + 1 == self.count {
            self.hi
        } else {
            self.lo + i as f64 * self.spacing()
        }
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(|i| self.point(i))
    }
}

impl FromStr for GridSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        if parts.len() != 3 {
            return Err(Error::InvalidGrid(format!(
                "expected lo:hi:count, got {s:?}"
            )));
        }
        let num = |p: &str| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidGrid(format!("bad number {p:?} in {s:?}")))
        };
        let count = parts[2]
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::InvalidGrid(format!("bad count {:?} in {s:?}", parts[2])))?;
        GridSpec::new(num(parts[0])?, num(parts[1])?, count)
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.lo, self.hi, self.count)
    }
}

/// Two comma-joined axes, `lo:hi:count,lo:hi:count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2 {
    pub first: GridSpec,
    pub second: GridSpec,
}

impl FromStr for Grid2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s.split_once(',').ok_or_else(|| {
            Error::InvalidGrid(format!("expected two comma-joined axes, got {s:?}"))
        })?;
        if b.contains(',') {
            return Err(Error::InvalidGrid(format!(
                "expected exactly two axes, got {s:?}"
            )));
        }
        Ok(Self {
            first: a.parse()?,
            second: b.parse()?,
        })
    }
}

impl fmt::Display for Grid2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.first, self.second)
    }
}
