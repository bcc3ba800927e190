//! Density matrices of the boosted ground state and the reduced state left
//! after tracing out the time-like separation `t`.
//!
//! The reduced kernel is diagonal in the Fock basis,
//!
//! ```text
//! ρ_η(z, z′) = (1 − β²) Σ_k β^{2k} φ_k(z) φ_k(z′)
//!            = (π cosh 2η)^{-1/2} exp{−¼[(z+z′)²/cosh 2η + (z−z′)² cosh 2η]},
//! ```
//!
//! so its eigenvalues are `p_k = (1 − β²) β^{2k}`, its purity is
//! `(1 − β²)/(1 + β²) = 1/cosh 2η`, and its entropy is
//! `2[cosh²η ln cosh η − sinh²η ln |sinh η|]`.

use std::f64::consts::PI;

use crate::error::Result;
use crate::oscillator::{psi_boosted, Rapidity, SpacetimePoint};
use crate::quadrature::{integrate_1d_scaled, integrate_2d_lightcone, QuadratureRule};
use crate::special_functions::phi_all;

/// Eigenvalue distribution `p_k = (1 − β²) β^{2k}` of the reduced state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockDistribution {
    beta: f64,
    truncation: usize,
}

impl FockDistribution {
    /// Distribution truncated at the smallest `K` whose geometric tail
    /// `β^{2(K+1)}` is below `tol` (or at `K = 0` for `β = 0`).
    pub fn new(eta: Rapidity, tol: f64) -> Self {
        let beta = eta.beta();
        let b2 = beta * beta;
        let truncation = if b2 == 0.0 || tol >= 1.0 {
            0
        } else {
            ((tol.ln() / b2.ln()).ceil() as usize).saturating_sub(1)
        };
        Self { beta, truncation }
    }

    pub fn with_truncation(eta: Rapidity, truncation: usize) -> Self {
        Self {
            beta: eta.beta(),
            truncation,
        }
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// `p_k`, defined for every `k` regardless of truncation.
    pub fn probability(&self, k: usize) -> f64 {
        let b2 = self.beta * self.beta;
        if k == 0 {
            1.0 - b2
        } else {
            (1.0 - b2) * b2.powi(k as i32)
        }
    }

    /// Exact mass beyond the truncation, `β^{2(K+1)}`.
    pub fn tail(&self) -> f64 {
        (self.beta * self.beta).powi(self.truncation as i32 + 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.truncation).map(|k| self.probability(k))
    }

    /// `−Σ_{k≤K} p_k ln p_k`.
    pub fn entropy(&self) -> f64 {
        self.iter().filter(|&p| p > 0.0).map(|p| -p * p.ln()).sum()
    }

    /// `Σ_{k≤K} p_k²`.
    pub fn purity(&self) -> f64 {
        self.iter().map(|p| p * p).sum()
    }
}

/// Parameters of the closed Gaussian form of the reduced kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianKernelParams {
    pub eta: f64,
    /// `(π cosh 2η)^{-1/2}`
    pub prefactor: f64,
    /// `1/(4 cosh 2η)`, multiplies `(z + z′)²`
    pub plus_coeff: f64,
    /// `cosh 2η / 4`, multiplies `(z − z′)²`
    pub minus_coeff: f64,
}

impl GaussianKernelParams {
    pub fn new(eta: Rapidity) -> Self {
        let c = (2.0 * eta.eta()).cosh();
        Self {
            eta: eta.eta(),
            prefactor: (PI * c).sqrt().recip(),
            plus_coeff: 0.25 / c,
            minus_coeff: 0.25 * c,
        }
    }

    pub fn evaluate(&self, z: f64, zp: f64) -> f64 {
        let s = z + zp;
        let d = z - zp;
        self.prefactor * (-(self.plus_coeff * s * s + self.minus_coeff * d * d)).exp()
    }
}

/// Pure-state density `ψ_η(p1) ψ_η(p2)` of the boosted ground state.
pub fn pure_density(eta: Rapidity, p1: SpacetimePoint, p2: SpacetimePoint) -> f64 {
    psi_boosted(0, eta, p1) * psi_boosted(0, eta, p2)
}

/// Closed Gaussian reduced kernel `ρ_η(z, z′)`.
pub fn reduced_density_closed(eta: Rapidity, z: f64, zp: f64) -> f64 {
    GaussianKernelParams::new(eta).evaluate(z, zp)
}

/// Fock sum `(1 − β²) Σ_{k≤K} β^{2k} φ_k(z) φ_k(z′)`.
pub fn reduced_density_series(eta: Rapidity, truncation: usize, z: f64, zp: f64) -> f64 {
    let dist = FockDistribution::with_truncation(eta, truncation);
    let a = phi_all(truncation, z);
    let b = phi_all(truncation, zp);
    dist.iter()
        .zip(a.iter().zip(&b))
        .map(|(p, (x, y))| p * x * y)
        .sum()
}

/// `∫ ψ_η(z, t) ψ_η(z′, t) dt` by Gauss–Hermite quadrature centred on the
/// integrand's Gaussian peak.
pub fn reduced_density_by_trace(
    eta: Rapidity,
    z: f64,
    zp: f64,
    rule: &QuadratureRule,
) -> Result<f64> {
    // t-dependence: exp(−cosh2η t² + sinh2η (z + z′) t)
    let c = (2.0 * eta.eta()).cosh();
    let s = (2.0 * eta.eta()).sinh();
    let center = s * (z + zp) / (2.0 * c);
    let scale = c.sqrt().recip();
    integrate_1d_scaled(
        |t| pure_density(eta, SpacetimePoint::new(z, t), SpacetimePoint::new(zp, t)),
        rule,
        center,
        scale,
    )
}

/// `∫ ρ_η(z, z) dz` of the closed kernel by quadrature.
pub fn trace_by_quadrature(eta: Rapidity, rule: &QuadratureRule) -> Result<f64> {
    let params = GaussianKernelParams::new(eta);
    let scale = (0.25 / params.plus_coeff).sqrt();
    integrate_1d_scaled(|z| params.evaluate(z, z), rule, 0.0, scale)
}

/// `Tr ρ²`, closed form `(1 − β²)/(1 + β²)`, evaluated as `1/cosh 2η`.
pub fn purity(eta: Rapidity) -> f64 {
    (2.0 * eta.eta()).cosh().recip()
}

/// `Tr ρ² = ∫∫ ρ_η(z, z′)² dz dz′` by 2D quadrature of the closed kernel.
///
/// The rule is laid on the axes `(z ± z′)/√2`, where the squared kernel is
/// a product of Gaussians of widths `√cosh 2η` and `1/√cosh 2η`.
pub fn purity_by_quadrature(eta: Rapidity, rule: &QuadratureRule) -> Result<f64> {
    let params = GaussianKernelParams::new(eta);
    let c = (2.0 * eta.eta()).cosh();
    // the light-cone rotation is exactly (z ± z′)/√2
    integrate_2d_lightcone(
        |z, zp| params.evaluate(z, zp).powi(2),
        rule,
        c.sqrt(),
        c.sqrt().recip(),
    )
}

/// Below this |sinh η| the entropy uses its small-η asymptote.
pub const SMALL_SINH: f64 = 1e-8;

/// Von Neumann entropy `S(η) = 2[cosh²η ln cosh η − sinh²η ln |sinh η|]`.
pub fn entropy(eta: Rapidity) -> f64 {
    let sh = eta.sinh().abs();
    if sh == 0.0 {
        return 0.0;
    }
    if sh < SMALL_SINH {
        // S ≈ η²(1 − ln η²)
        let e2 = eta.eta() * eta.eta();
        return e2 * (1.0 - e2.ln());
    }
    let s2 = sh * sh;
    let c2 = 1.0 + s2;
    c2 * s2.ln_1p() - s2 * s2.ln()
}

/// The same entropy in terms of the velocity,
/// `[1/(1−β²)] ln[1/(1−β²)] − [β²/(1−β²)] ln[β²/(1−β²)]`.
pub fn entropy_beta_form(beta: f64) -> f64 {
    let b2 = beta * beta;
    let one_minus = 1.0 - b2;
    let a = one_minus.recip();
    let first = a * a.ln();
    if b2 == 0.0 {
        return first;
    }
    let r = b2 / one_minus;
    first - r * r.ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::gauss_hermite;
    use crate::special_functions::phi;

    fn r(eta: f64) -> Rapidity {
        Rapidity::new(eta).unwrap()
    }

    #[test]
    fn kernel_params_product_is_constant() {
        for eta in [0.0, 0.4, 1.0, 3.0, -2.0] {
            let p = GaussianKernelParams::new(r(eta));
            assert!(p.prefactor > 0.0);
            assert!((p.plus_coeff * p.minus_coeff - 1.0 / 16.0).abs() < 1e-17);
        }
    }

    #[test]
    fn rest_kernel_is_pure_ground_state() {
        for &(z, zp) in &[(0.0, 0.0), (0.3, -1.1), (2.0, 1.5)] {
            let k = reduced_density_closed(Rapidity::ZERO, z, zp);
            assert!((k - phi(0, z) * phi(0, zp)).abs() < 1e-15);
            let s = reduced_density_series(Rapidity::ZERO, 0, z, zp);
            assert!((s - phi(0, z) * phi(0, zp)).abs() < 1e-15);
        }
    }

    #[test]
    fn pure_density_basics() {
        let o = SpacetimePoint::new(0.0, 0.0);
        assert!((pure_density(Rapidity::ZERO, o, o) - 1.0 / PI).abs() < 1e-16);
        let a = SpacetimePoint::new(0.3, 0.8);
        let b = SpacetimePoint::new(-1.0, 0.2);
        assert_eq!(pure_density(r(0.7), a, b), pure_density(r(0.7), b, a));
    }

    #[test]
    fn trace_is_one() {
        let rule = gauss_hermite(16).unwrap();
        for eta in [-3.0, 0.0, 1.2, 3.0] {
            let tr = trace_by_quadrature(r(eta), &rule).unwrap();
            assert!((tr - 1.0).abs() < 1e-12, "eta={eta}: {tr}");
        }
    }

    #[test]
    fn closed_kernel_matches_t_integral() {
        let rule = gauss_hermite(32).unwrap();
        for &(z, zp) in &[(0.0, 0.0), (0.5, -0.4), (1.3, 2.0), (-2.0, 0.7)] {
            let a = reduced_density_closed(r(1.0), z, zp);
            let b = reduced_density_by_trace(r(1.0), z, zp, &rule).unwrap();
            assert!((a - b).abs() < 1e-12, "({z},{zp}): {a} vs {b}");
        }
    }

    #[test]
    fn series_kernel_converges_to_closed() {
        for eta in [0.5, 1.0, 2.0] {
            let dist = FockDistribution::new(r(eta), 1e-14);
            for &(z, zp) in &[(0.0, 0.0), (0.5, -0.4), (1.3, 2.0)] {
                let s = reduced_density_series(r(eta), dist.truncation(), z, zp);
                let c = reduced_density_closed(r(eta), z, zp);
                assert!((s - c).abs() < 1e-10, "eta={eta} ({z},{zp}): {s} vs {c}");
            }
        }
    }

    #[test]
    fn series_diagonal_positive() {
        for z in [-3.0, -1.0, 0.0, 0.4, 2.5] {
            assert!(reduced_density_series(r(1.0), 40, z, z) > 0.0);
        }
    }

    #[test]
    fn distribution_tail_is_exact() {
        let d = FockDistribution::with_truncation(r(0.9), 12);
        let sum: f64 = d.iter().sum();
        assert!((sum + d.tail() - 1.0).abs() < 1e-15);
        let b2 = d.beta().powi(2);
        for k in 0..10 {
            assert!((d.probability(k + 1) / d.probability(k) - b2).abs() < 1e-14);
        }
        let auto = FockDistribution::new(Rapidity::from_beta(0.6).unwrap(), 1e-10);
        assert_eq!(auto.truncation(), 22);
    }

    #[test]
    fn purity_values() {
        assert_eq!(purity(Rapidity::ZERO), 1.0);
        let beta: f64 = 0.5;
        let eta = Rapidity::from_beta(beta).unwrap();
        assert!((purity(eta) - 0.6).abs() < 1e-15);
        let series = FockDistribution::new(eta, 1e-17).purity();
        assert!((series - 0.6).abs() < 1e-15);
        let rule = gauss_hermite(16).unwrap();
        let q = purity_by_quadrature(r(1.0), &rule).unwrap();
        assert!((q - purity(r(1.0))).abs() < 1e-12);
        for eta in [0.1, 1.0, 3.0] {
            let p = purity(r(eta));
            assert!(p > 0.0 && p < 1.0);
        }
    }

    #[test]
    fn entropy_matches_fock_sum() {
        assert_eq!(entropy(Rapidity::ZERO), 0.0);
        for eta in [0.5, 1.0, 2.0] {
            let dist = FockDistribution::new(r(eta), 1e-18);
            let fock = dist.entropy();
            let closed = entropy(r(eta));
            assert!(
                (fock - closed).abs() < 1e-12,
                "eta={eta}: {fock} vs {closed}"
            );
        }
    }

    #[test]
    fn entropy_is_even_and_increasing() {
        let mut prev = -1.0;
        for i in 0..=300 {
            let eta = 0.01 * i as f64;
            let s = entropy(r(eta));
            assert!(s > prev, "eta={eta}");
            assert_eq!(s, entropy(r(-eta)));
            prev = s;
        }
    }

    #[test]
    fn entropy_small_rapidity_branch_is_continuous() {
        let below = entropy(r(0.99e-8));
        let above = entropy(r(1.01e-8));
        assert!(below > 0.0 && above > below);
        assert!((above - below) / above < 0.1);
    }

    #[test]
    fn beta_form_agrees() {
        assert_eq!(entropy_beta_form(0.0), 0.0);
        for beta in [0.3, 0.6, 0.9] {
            let a = entropy_beta_form(beta);
            let b = entropy(Rapidity::from_beta(beta).unwrap());
            assert!((a - b).abs() < 1e-12, "beta={beta}");
        }
        let mut prev = 0.0;
        for k in 1..12 {
            let s = entropy_beta_form(1.0 - 10f64.powi(-k));
            assert!(s > prev);
            prev = s;
        }
        assert!(prev > 20.0);
    }
}
