//! Small fixed-size complex matrices acting on `(x, y, z, t)` column vectors.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

pub const X: usize = 0;
pub const Y: usize = 1;
pub const Z: usize = 2;
pub const T: usize = 3;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// A 4×4 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix4(pub [[Complex64; 4]; 4]);

impl Matrix4 {
    pub fn zero() -> Self {
        Self([[Complex64::new(0.0, 0.0); 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for k in 0..4 {
            m.0[k][k] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_real(rows: [[f64; 4]; 4]) -> Self {
        let mut m = Self::zero();
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m.0[r][c] = Complex64::new(v, 0.0);
            }
        }
        m
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|e| *e *= s);
        m
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    /// Multiplies by `i`.
    pub fn times_i(&self) -> Self {
        self.scale(I)
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|k| self.0[k][k]).sum()
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zero();
        for r in 0..4 {
            for c in 0..4 {
                m.0[r][c] = self.0[c][r].conj();
            }
        }
        m
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|e| e.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|e| e.norm())
            .fold(0.0, f64::max)
    }

    /// Largest absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        self.0
            .iter()
            .map(|row| row.iter().map(|e| e.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn apply(&self, v: [Complex64; 4]) -> [Complex64; 4] {
        let mut out = [Complex64::new(0.0, 0.0); 4];
        for (r, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|c| self.0[r][c] * v[c]).sum();
        }
        out
    }

    pub fn apply_real(&self, v: [f64; 4]) -> [Complex64; 4] {
        self.apply(v.map(|x| Complex64::new(x, 0.0)))
    }
}

impl Index<(usize, usize)> for Matrix4 {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.0[r][c]
    }
}

impl IndexMut<(usize, usize)> for Matrix4 {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.0[r][c]
    }
}

impl Add for Matrix4 {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for r in 0..4 {
            for c in 0..4 {
                self.0[r][c] += rhs.0[r][c];
            }
        }
        self
    }
}

impl Sub for Matrix4 {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for r in 0..4 {
            for c in 0..4 {
                self.0[r][c] -= rhs.0[r][c];
            }
        }
        self
    }
}

impl Neg for Matrix4 {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale_real(-1.0)
    }
}

impl Mul for Matrix4 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zero();
        for r in 0..4 {
            for c in 0..4 {
                m.0[r][c] = (0..4).map(|k| self.0[r][k] * rhs.0[k][c]).sum();
            }
        }
        m
    }
}

/// Matrix exponential by scaling and squaring of a Taylor series.
///
/// Independent of any closed form; used to pin generator conventions.
pub fn expm(a: &Matrix4) -> Matrix4 {
    let norm = a.norm_inf();
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a.scale_real(0.5f64.powi(squarings as i32));

    let mut sum = Matrix4::identity();
    let mut term = Matrix4::identity();
    for k in 1..=30 {
        term = (term * scaled).scale_real(1.0 / k as f64);
        sum = sum + term;
        if term.max_abs() < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expm_of_zero_is_identity() {
        assert_eq!(expm(&Matrix4::zero()), Matrix4::identity());
    }

    #[test]
    fn expm_of_diagonal() {
        let a = Matrix4::from_real([
            [1.0, 0.0, 0.0, 0.0],
            [0.0, -2.0, 0.0, 0.0],
            [0.0, 0.0, 3.5, 0.0],
            [0.0, 0.0, 0.0, 0.0],
        ]);
        let e = expm(&a);
        for (k, v) in [1.0f64, -2.0, 3.5, 0.0].iter().enumerate() {
            assert!((e[(k, k)].re - v.exp()).abs() < 1e-13 * v.exp());
        }
    }

    #[test]
    fn expm_of_rotation_generator() {
        // exp(θ [[0,-1],[1,0]]) = [[cos,-sin],[sin,cos]]
        let th = 2.2;
        let mut a = Matrix4::zero();
        a[(X, Y)] = Complex64::new(-th, 0.0);
        a[(Y, X)] = Complex64::new(th, 0.0);
        let e = expm(&a);
        assert!((e[(X, X)].re - th.cos()).abs() < 1e-14);
        assert!((e[(X, Y)].re + th.sin()).abs() < 1e-14);
        assert!((e[(Y, X)].re - th.sin()).abs() < 1e-14);
        assert!((e[(Z, Z)].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn algebra_basics() {
        let a = Matrix4::from_real([
            [1.0, 2.0, 0.0, 0.0],
            [0.0; 4],
            [0.0; 4],
            [0.0, 0.0, 0.0, 4.0],
        ]);
        assert_eq!(a * Matrix4::identity(), a);
        assert_eq!((a - a).max_abs(), 0.0);
        assert_eq!(a.trace().re, 5.0);
        assert_eq!(a.adjoint()[(Y, X)].re, 2.0);
        assert_eq!((-a)[(T, T)].re, -4.0);
        assert_eq!(a.times_i()[(X, Y)], Complex64::new(0.0, 2.0));
        assert!((a.frobenius_norm() - 21f64.sqrt()).abs() < 1e-15);
    }
}
