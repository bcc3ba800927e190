//! Rest-frame and boosted covariant oscillator wave functions in the
//! longitudinal/time-like plane `(z, t)`.
//!
//! Boosts act on light-cone coordinates as a squeeze, `u → e^{η} u`,
//! `v → e^{-η} v`. The boosted state is the rest-frame state evaluated at the
//! inversely boosted point:
//!
//! ```text
//! ψⁿ_η(z, t) = φ_n((e^{-η}u + e^{η}v)/√2) · φ_0((e^{-η}u − e^{η}v)/√2)
//! ```
//!
//! The transverse `(x, y)` factors are spectators and are only attached on
//! request by [`psi_boosted_with_transverse`].

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::quadrature::GridSpec;
use crate::special_functions::{phi, phi0, phi_fill, ModeIndex};

/// Largest |η| for which boosted states are handled.
pub const MAX_RAPIDITY: f64 = 10.0;

/// Boost parameter `η`, with velocity `β = tanh η`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Rapidity(f64);

impl Rapidity {
    pub const ZERO: Rapidity = Rapidity(0.0);

    pub fn new(eta: f64) -> Result<Self> {
        if !eta.is_finite() || eta.abs() > MAX_RAPIDITY {
            return Err(Error::RapidityOutOfRange {
                eta,
                limit: MAX_RAPIDITY,
            });
        }
        Ok(Self(eta))
    }

    /// From the velocity `β = v/c`.
    pub fn from_beta(beta: f64) -> Result<Self> {
        if !beta.is_finite() || beta.abs() >= 1.0 {
            return Err(Error::VelocityOutOfRange(beta));
        }
        Self::new(beta.atanh())
    }

    pub fn eta(self) -> f64 {
        self.0
    }

    pub fn beta(self) -> f64 {
        self.0.tanh()
    }

    pub fn cosh(self) -> f64 {
        self.0.cosh()
    }

    pub fn sinh(self) -> f64 {
        self.0.sinh()
    }
}

impl std::ops::Neg for Rapidity {
    type Output = Rapidity;
    fn neg(self) -> Rapidity {
        Rapidity(-self.0)
    }
}

/// Longitudinal and time-like separation `(z, t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacetimePoint {
    pub z: f64,
    pub t: f64,
}

impl SpacetimePoint {
    pub fn new(z: f64, t: f64) -> Self {
        Self { z, t }
    }

    /// `z² − t²`, invariant under boosts.
    pub fn interval(&self) -> f64 {
        self.z * self.z - self.t * self.t
    }
}

/// Light-cone coordinates `(u, v)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LightConePoint {
    pub u: f64,
    pub v: f64,
}

impl LightConePoint {
    pub fn new(u: f64, v: f64) -> Self {
        Self { u, v }
    }
}

/// `u = (z+t)/√2`, `v = (z−t)/√2`.
pub fn to_lightcone(p: SpacetimePoint) -> LightConePoint {
    LightConePoint {
        u: (p.z + p.t) * FRAC_1_SQRT_2,
        v: (p.z - p.t) * FRAC_1_SQRT_2,
    }
}

/// Inverse of [`to_lightcone`].
pub fn from_lightcone(p: LightConePoint) -> SpacetimePoint {
    SpacetimePoint {
        z: (p.u + p.v) * FRAC_1_SQRT_2,
        t: (p.u - p.v) * FRAC_1_SQRT_2,
    }
}

/// Active boost of a point: `(z cosh η + t sinh η, z sinh η + t cosh η)`.
pub fn apply_boost(eta: Rapidity, p: SpacetimePoint) -> SpacetimePoint {
    let (ch, sh) = (eta.cosh(), eta.sinh());
    SpacetimePoint {
        z: p.z * ch + p.t * sh,
        t: p.z * sh + p.t * ch,
    }
}

/// The same boost written as a squeeze of light-cone coordinates.
pub fn squeeze_lightcone(eta: Rapidity, p: LightConePoint) -> LightConePoint {
    LightConePoint {
        u: eta.eta().exp() * p.u,
        v: (-eta.eta()).exp() * p.v,
    }
}

/// Rest-frame state `φ_n(z) φ_0(t)`.
pub fn psi_rest(n: ModeIndex, p: SpacetimePoint) -> f64 {
    phi(n, p.z) * phi0(p.t)
}

/// Boosted state `ψⁿ_η(z, t)`, unit-normalized for every `η`.
pub fn psi_boosted(n: ModeIndex, eta: Rapidity, p: SpacetimePoint) -> f64 {
    psi_rest(n, apply_boost(-eta, p))
}

/// Full four-dimensional state with transverse excitations `(n_x, n_y)`.
pub fn psi_boosted_with_transverse(
    (nx, ny): (ModeIndex, ModeIndex),
    n: ModeIndex,
    eta: Rapidity,
    (x, y): (f64, f64),
    p: SpacetimePoint,
) -> f64 {
    phi(nx, x) * phi(ny, y) * psi_boosted(n, eta, p)
}

/// Largest grid spacing accepted by [`oscillator_residual`].
pub const MAX_RESIDUAL_SPACING: f64 = 0.05;

/// Maximum of `|Op ψ − n ψ|` over the interior of a square grid, where
///
/// ```text
/// Op = ½ { (z² − t²) − ∂²/∂z² + ∂²/∂t² }
/// ```
///
/// is the oscillator operator restricted to the `(z, t)` plane and the
/// derivatives are second-order central differences. `grid` is used for
/// both axes.
pub fn oscillator_residual(n: ModeIndex, eta: Rapidity, grid: &GridSpec) -> Result<f64> {
    let h = grid.spacing();
    if h > MAX_RESIDUAL_SPACING {
        return Err(Error::GridTooCoarse {
            spacing: h,
            limit: MAX_RESIDUAL_SPACING,
        });
    }
    if grid.count < 3 {
        return Err(Error::InvalidGrid("need at least 3 points per axis".into()));
    }
    let m = grid.count;
    let axis: Vec<f64> = grid.points().collect();
    let (ch, sh) = (eta.cosh(), eta.sinh());

    // psi[i * m + j] = ψ(z_i, t_j)
    let mut psi = vec![0.0; m * m];
    let mut buf = Vec::with_capacity(n + 1);
    for (i, &z) in axis.iter().enumerate() {
        for (j, &t) in axis.iter().enumerate() {
            let zr = z * ch - t * sh;
            let tr = -z * sh + t * ch;
            phi_fill(zr, &mut buf, n);
            psi[i * m + j] = buf[n] * phi0(tr);
        }
    }

    let inv_h2 = 1.0 / (h * h);
    let eigen = n as f64;
    let mut worst = 0.0f64;
    for i in 1..m - 1 {
        for j in 1..m - 1 {
            let c = psi[i * m + j];
            let d_zz = (psi[(i + 1) * m + j] - 2.0 * c + psi[(i - 1) * m + j]) * inv_h2;
            let d_tt = (psi[i * m + j + 1] - 2.0 * c + psi[i * m + j - 1]) * inv_h2;
            let (z, t) = (axis[i], axis[j]);
            let op = 0.5 * ((z * z - t * t) * c - d_zz + d_tt);
            worst = worst.max((op - eigen * c).abs());
        }
    }
    Ok(worst)
}
