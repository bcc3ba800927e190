//! Matrix realization of the Lorentz algebra on `(x, y, z, t)`.
//!
//! Conventions: `(J_i)_{jk} = -i ε_{ijk}` on the spatial block and `K_i` has
//! `+i` at `(i, t)` and `(t, i)`. With these,
//!
//! ```text
//! [J_i, J_j] = i ε_ijk J_k,   [J_i, K_j] = i ε_ijk K_k,   [K_i, K_j] = -i ε_ijk J_k
//! ```
//!
//! and `exp(-iη K_3)` is the boost whose `(z, t)` block is
//! `[[cosh η, sinh η], [sinh η, cosh η]]`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{Matrix4, T, X, Y, Z};

/// A Lorentz-algebra element acting on `(x, y, z, t)` column vectors.
pub type GeneratorMatrix = Matrix4;

/// Largest rapidity accepted by [`boost_matrix`].
pub const MAX_BOOST_RAPIDITY: f64 = 20.0;

/// Spatial axis label `1 | 2 | 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    One,
    Two,
    Three,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::One, Axis::Two, Axis::Three];

    /// Row/column of this axis in `(x, y, z, t)` ordering.
    pub fn index(self) -> usize {
        match self {
            Axis::One => X,
            Axis::Two => Y,
            Axis::Three => Z,
        }
    }

    pub fn label(self) -> u8 {
        self.index() as u8 + 1
    }
}

impl TryFrom<i64> for Axis {
    type Error = Error;
    fn try_from(v: i64) -> Result<Self> {
        match v {
            1 => Ok(Axis::One),
            2 => Ok(Axis::Two),
            3 => Ok(Axis::Three),
            _ => Err(Error::InvalidAxis(v)),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Levi-Civita symbol on spatial indices `0..3`.
pub fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// Rotation generator `J_axis`.
pub fn rotation_generator(axis: Axis) -> GeneratorMatrix {
    let i = axis.index();
    let mut m = Matrix4::zero();
    for j in 0..3 {
        for k in 0..3 {
            let e = levi_civita(i, j, k);
            if e != 0.0 {
                m[(j, k)] = Complex64::new(0.0, -e);
            }
        }
    }
    m
}

/// Boost generator `K_axis`.
pub fn boost_generator(axis: Axis) -> GeneratorMatrix {
    let i = axis.index();
    let mut m = Matrix4::zero();
    m[(i, T)] = Complex64::new(0.0, 1.0);
    m[(T, i)] = Complex64::new(0.0, 1.0);
    m
}

/// `AB − BA`.
pub fn commutator(a: &GeneratorMatrix, b: &GeneratorMatrix) -> GeneratorMatrix {
    *a * *b - *b * *a
}

/// Real boost along the third axis, with its rapidity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoostMatrix {
    entries: [[f64; 4]; 4],
    rapidity: f64,
}

impl BoostMatrix {
    pub fn entries(&self) -> &[[f64; 4]; 4] {
        &self.entries
    }

    pub fn rapidity(&self) -> f64 {
        self.rapidity
    }

    pub fn to_complex(&self) -> Matrix4 {
        Matrix4::from_real(self.entries)
    }

    /// The inverse boost, `B(−η)`.
    pub fn inverse(&self) -> Self {
        let mut inv = *self;
        inv.rapidity = -self.rapidity;
        inv.entries[Z][T] = -self.entries[Z][T];
        inv.entries[T][Z] = -self.entries[T][Z];
        inv
    }

    pub fn apply(&self, v: [f64; 4]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (r, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|c| self.entries[r][c] * v[c]).sum();
        }
        out
    }

    pub fn compose(&self, other: &BoostMatrix) -> [[f64; 4]; 4] {
        let mut m = [[0.0; 4]; 4];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, e) in row.iter_mut().enumerate() {
                *e = (0..4)
                    .map(|k| self.entries[r][k] * other.entries[k][c])
                    .sum();
            }
        }
        m
    }
}

/// Minkowski metric `diag(1, 1, 1, −1)`.
pub const METRIC: [f64; 4] = [1.0, 1.0, 1.0, -1.0];

/// Closed-form boost `exp(−iη K_3)`.
pub fn boost_matrix(eta: f64) -> Result<BoostMatrix> {
    if !eta.is_finite() || eta.abs() > MAX_BOOST_RAPIDITY {
        return Err(Error::RapidityOutOfRange {
            eta,
            limit: MAX_BOOST_RAPIDITY,
        });
    }
    let (ch, sh) = (eta.cosh(), eta.sinh());
    let mut entries = [[0.0; 4]; 4];
    entries[X][X] = 1.0;
    entries[Y][Y] = 1.0;
    entries[Z][Z] = ch;
    entries[Z][T] = sh;
    entries[T][Z] = sh;
    entries[T][T] = ch;
    Ok(BoostMatrix {
        entries,
        rapidity: eta,
    })
}

/// Boosted little-group generator `J′_i = B_3(η) J_i B_3(η)^{-1}`.
///
/// These leave the boosted four-momentum `m(0, 0, sinh η, cosh η)` invariant
/// and obey the same commutation relations as `J_i`.
pub fn little_group_generator(axis: Axis, eta: f64) -> Result<GeneratorMatrix> {
    let b = boost_matrix(eta)?;
    Ok(b.to_complex() * rotation_generator(axis) * b.inverse().to_complex())
}

/// `(N_1, N_2) = (K_1 − J_2, K_2 + J_1)`, the translation-like generators of
/// the E(2)-like little group of a massless particle moving along `z`.
pub fn e2_generators() -> (GeneratorMatrix, GeneratorMatrix) {
    let n1 = boost_generator(Axis::One) - rotation_generator(Axis::Two);
    let n2 = boost_generator(Axis::Two) + rotation_generator(Axis::One);
    (n1, n2)
}

/// Distance of the rescaled boosted generators from their E(2) limits:
///
/// ```text
/// ‖e^{-η} J′_2(η) + N_1/2‖_F + ‖e^{-η} J′_1(η) − N_2/2‖_F  =  2 e^{-2η}
/// ```
///
/// so the residual vanishes as `η → ∞` and the O(3)-like algebra contracts
/// to E(2).
pub fn contraction_residual(eta: f64) -> Result<f64> {
    let (n1, n2) = e2_generators();
    let damp = (-eta).exp();
    let j1 = little_group_generator(Axis::One, eta)?.scale_real(damp);
    let j2 = little_group_generator(Axis::Two, eta)?.scale_real(damp);
    Ok((j2 + n1.scale_real(0.5)).frobenius_norm() + (j1 - n2.scale_real(0.5)).frobenius_norm())
}
