//! Fock-series representation of boosted oscillator states.
//!
//! ```text
//! ψⁿ_η(z, t) = Σ_k c_k φ_{n+k}(z) φ_k(t),
//! c_k = (cosh η)^{-(n+1)} √((n+k)!/(n! k!)) (tanh η)^k
//! ```
//!
//! The squared coefficients form a negative-binomial distribution, so
//! `Σ c_k² = (1−β²)^{n+1} Σ C(n+k, k) β^{2k} = 1` exactly; truncation is
//! certified against that total.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::oscillator::{psi_boosted, Rapidity, SpacetimePoint};
use crate::quadrature::{gauss_hermite, MAX_ORDER};
use crate::special_functions::{log_sqrt_binomial, phi_all, phi_fill, ModeIndex};

/// Largest number of terms [`expand`] will generate.
pub const MAX_TERMS: usize = 1_000_000;

/// Largest `n + k` handled by the quadrature overlap oracle.
pub const MAX_OVERLAP_MODE: usize = 40;

/// `ln cosh η`, stable for large |η|.
fn ln_cosh(eta: f64) -> f64 {
    let a = eta.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

/// `ln |tanh η|` for η ≠ 0.
fn ln_abs_tanh(eta: f64) -> f64 {
    let e = (-2.0 * eta.abs()).exp();
    (-e).ln_1p() - e.ln_1p()
}

/// Expansion coefficient `c_k` of the boosted state `ψⁿ_η`, computed in log
/// space. Negative rapidities give `c_k` the sign `(−1)^k`.
pub fn coefficient(n: ModeIndex, k: ModeIndex, eta: Rapidity) -> f64 {
    let eta = eta.eta();
    if eta == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    let mut log = -((n + 1) as f64) * ln_cosh(eta) + log_sqrt_binomial(n, k);
    if k > 0 {
        log += k as f64 * ln_abs_tanh(eta);
    }
    let sign = if eta < 0.0 && k % 2 == 1 { -1.0 } else { 1.0 };
    sign * log.exp()
}

/// Truncated coefficient sequence `c_0..c_K` with its certified tail.
#[derive(Debug, Clone, PartialEq)]
pub struct FockCoefficients {
    pub base_n: ModeIndex,
    pub eta: Rapidity,
    pub coeffs: Vec<f64>,
    /// `1 − Σ_{k≤K} c_k²`.
    pub tail_bound: f64,
}

impl FockCoefficients {
    /// Index `K` of the last retained coefficient.
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Running sums `Σ_{j≤k} c_j²`.
    pub fn cumulative_norm(&self) -> Vec<f64> {
        let mut sum = NeumaierSum::default();
        self.coeffs
            .iter()
            .map(|c| {
                sum.add(c * c);
                sum.value()
            })
            .collect()
    }

    pub fn norm_squared(&self) -> f64 {
        self.cumulative_norm().last().copied().unwrap_or(0.0)
    }
}

// Compensated summation; partial sums of c_k² approach 1 from below.
#[derive(Debug, Default, Clone, Copy)]
struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Expands `ψⁿ_η` up to the smallest `K` with `1 − Σ_{k≤K} c_k² < tol`.
pub fn expand(n: ModeIndex, eta: Rapidity, tol: f64) -> Result<FockCoefficients> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::InvalidTolerance(tol));
    }
    let mut coeffs = Vec::new();
    let mut sum = NeumaierSum::default();
    for k in 0..MAX_TERMS {
        let c = coefficient(n, k, eta);
        coeffs.push(c);
        sum.add(c * c);
        let tail = 1.0 - sum.value();
        if tail < tol {
            return Ok(FockCoefficients {
                base_n: n,
                eta,
                coeffs,
                tail_bound: tail,
            });
        }
    }
    Err(Error::NonConvergence {
        cap: MAX_TERMS,
        tail: 1.0 - sum.value(),
    })
}

/// Evaluates the truncated series `Σ_{k≤K} c_k φ_{n+k}(z) φ_k(t)`.
pub fn reconstruct(coeffs: &FockCoefficients, p: SpacetimePoint) -> f64 {
    let n = coeffs.base_n;
    let kmax = coeffs.truncation();
    let pz = phi_all(n + kmax, p.z);
    let pt = phi_all(kmax, p.t);
    coeffs
        .coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| c * pz[n + k] * pt[k])
        .sum()
}

/// Projections `⟨φ_a(z) φ_b(t) | ψⁿ_η⟩` for `a ≤ max_z_mode`,
/// `b ≤ max_t_mode`, by 2D Gauss–Hermite quadrature.
///
/// The rule is laid on light-cone axes with widths matched to the product of
/// the squeezed and unsqueezed Gaussian envelopes, which makes it exact for
/// these polynomial-times-Gaussian integrands. Returned as `table[a][b]`.
pub fn overlap_table(
    n: ModeIndex,
    eta: Rapidity,
    max_z_mode: ModeIndex,
    max_t_mode: ModeIndex,
) -> Result<Vec<Vec<f64>>> {
    overlap_table_of(|p| psi_boosted(n, eta, p), n, eta, max_z_mode, max_t_mode)
}

/// [`overlap_table`] for an arbitrary state `psi` with the envelope of an
/// `n`-th boosted state at `eta`.
pub fn overlap_table_of<F: Fn(SpacetimePoint) -> f64>(
    psi: F,
    n: ModeIndex,
    eta: Rapidity,
    max_z_mode: ModeIndex,
    max_t_mode: ModeIndex,
) -> Result<Vec<Vec<f64>>> {
    let degree = n + max_z_mode + max_t_mode;
    let order = (degree / 2 + 12).clamp(24, MAX_ORDER);
    let rule = gauss_hermite(order)?;
    let e2 = (2.0 * eta.eta()).exp();
    let scale_u = (2.0 / (1.0 + 1.0 / e2)).sqrt();
    let scale_v = (2.0 / (1.0 + e2)).sqrt();

    let mut table = vec![vec![0.0; max_t_mode + 1]; max_z_mode + 1];
    let mut pz = Vec::with_capacity(max_z_mode + 1);
    let mut pt = Vec::with_capacity(max_t_mode + 1);
    for (&a, &la) in rule.nodes().iter().zip(rule.scaled_weights()) {
        let u = scale_u * a;
        for (&b, &lb) in rule.nodes().iter().zip(rule.scaled_weights()) {
            let v = scale_v * b;
            let z = (u + v) * FRAC_1_SQRT_2;
            let t = (u - v) * FRAC_1_SQRT_2;
            let w = la * lb * psi(SpacetimePoint::new(z, t));
            if !w.is_finite() {
                return Err(Error::IntegrationFailure(z));
            }
            if w == 0.0 {
                continue;
            }
            phi_fill(z, &mut pz, max_z_mode);
            phi_fill(t, &mut pt, max_t_mode);
            for (row, &fz) in table.iter_mut().zip(&pz) {
                let wz = w * fz;
                for (cell, &ft) in row.iter_mut().zip(&pt) {
                    *cell += wz * ft;
                }
            }
        }
    }
    let jac = scale_u * scale_v;
    table.iter_mut().flatten().for_each(|c| *c *= jac);
    Ok(table)
}

fn check_overlap_range(n: ModeIndex, k: ModeIndex, j: ModeIndex) -> Result<()> {
    if n + k > MAX_OVERLAP_MODE || j > MAX_OVERLAP_MODE {
        return Err(Error::InvalidArgument(format!(
            "overlap modes must satisfy n+k <= {MAX_OVERLAP_MODE}"
        )));
    }
    Ok(())
}

/// `∫∫ ψⁿ_η(z,t) φ_{n+k}(z) φ_k(t) dz dt`; the quadrature counterpart of
/// [`coefficient`].
pub fn overlap_coefficient_numeric(n: ModeIndex, k: ModeIndex, eta: Rapidity) -> Result<f64> {
    cross_overlap(n, k, k, eta)
}

/// `∫∫ ψⁿ_η(z,t) φ_{n+k}(z) φ_j(t) dz dt`; vanishes unless `j = k`.
pub fn cross_overlap(n: ModeIndex, k: ModeIndex, j: ModeIndex, eta: Rapidity) -> Result<f64> {
    check_overlap_range(n, k, j)?;
    Ok(overlap_table(n, eta, n + k, j)?[n + k][j])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(eta: f64) -> Rapidity {
        Rapidity::new(eta).unwrap()
    }

    #[test]
    fn ground_state_coefficients_are_geometric() {
        let beta: f64 = 0.6;
        let eta = Rapidity::from_beta(beta).unwrap();
        for k in 0..30 {
            let expect = (1.0 - beta * beta).sqrt() * beta.powi(k as i32);
            assert!((coefficient(0, k, eta) - expect).abs() < 1e-15, "k={k}");
        }
    }

    #[test]
    fn rest_frame_is_a_single_term() {
        for n in [0, 3, 10] {
            assert_eq!(coefficient(n, 0, Rapidity::ZERO), 1.0);
            assert_eq!(coefficient(n, 1, Rapidity::ZERO), 0.0);
            let f = expand(n, Rapidity::ZERO, 1e-10).unwrap();
            assert_eq!(f.coeffs, vec![1.0]);
            assert_eq!(f.tail_bound, 0.0);
        }
    }

    #[test]
    fn coefficient_direct_arithmetic() {
        let eta = Rapidity::from_beta(0.5).unwrap();
        let expect = 0.75 * 2f64.sqrt() * 0.5;
        assert!((coefficient(1, 1, eta) - expect).abs() < 1e-15);
        assert!((expect - 0.530_330_085_889_910_6).abs() < 1e-15);
    }

    #[test]
    fn negative_rapidity_alternates_sign() {
        for k in 0..6 {
            let pos = coefficient(2, k, r(0.8));
            let neg = coefficient(2, k, r(-0.8));
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            assert!((neg - sign * pos).abs() < 1e-16);
        }
    }

    #[test]
    fn coefficients_finite_at_extreme_rapidity() {
        for k in [0, 10, 10_000] {
            let c = coefficient(64, k, r(10.0));
            assert!(c.is_finite() && c >= 0.0);
        }
    }

    #[test]
    fn truncation_matches_geometric_bound() {
        let beta: f64 = 0.6;
        let f = expand(0, Rapidity::from_beta(beta).unwrap(), 1e-10).unwrap();
        let k_analytic = ((1e-10f64).ln() / (beta * beta).ln()).ceil() as usize - 1;
        assert_eq!(k_analytic, 22);
        assert_eq!(f.truncation(), 22);
        assert!(f.tail_bound < 1e-10 && f.tail_bound >= 0.0);
        let exact_tail = (beta * beta).powi(23);
        assert!((f.tail_bound - exact_tail).abs() < 1e-15);
    }

    #[test]
    fn expand_rejects_bad_tolerance() {
        for tol in [0.0, 1.0, -1e-3, f64::NAN] {
            assert!(matches!(
                expand(0, r(1.0), tol),
                Err(Error::InvalidTolerance(_))
            ));
        }
    }

    #[test]
    fn expand_reports_non_convergence_near_light_speed() {
        assert!(matches!(
            expand(0, r(10.0), 1e-10),
            Err(Error::NonConvergence { .. })
        ));
    }

    #[test]
    fn partial_sums_monotone_and_bounded() {
        for n in [0, 1, 4, 9] {
            for eta in [0.3, 1.0, 2.0] {
                let f = expand(n, r(eta), 1e-12).unwrap();
                let cum = f.cumulative_norm();
                assert!(cum.windows(2).all(|w| w[1] >= w[0]));
                assert!(cum.iter().all(|&s| s <= 1.0 + 1e-12));
                assert!(*cum.last().unwrap() + f.tail_bound >= 1.0 - 1e-15);
                assert!(f.coeffs.iter().all(|&c| c >= 0.0));
            }
        }
    }

    #[test]
    fn ratio_test() {
        let (n, eta) = (3usize, r(1.1));
        let beta = eta.beta();
        for k in 0..50usize {
            let ratio = coefficient(n, k + 1, eta) / coefficient(n, k, eta);
            let expect = beta * (((n + k + 1) as f64) / ((k + 1) as f64)).sqrt();
            assert!((ratio - expect).abs() < 1e-12 * expect);
        }
    }

    #[test]
    fn reconstruct_at_rest_is_exact() {
        let f = expand(3, Rapidity::ZERO, 1e-10).unwrap();
        let p = SpacetimePoint::new(0.4, -0.9);
        assert_eq!(reconstruct(&f, p), psi_boosted(3, Rapidity::ZERO, p));
    }

    #[test]
    fn reconstruct_within_tail_bound() {
        let eta = Rapidity::from_beta(0.5).unwrap();
        let f = expand(0, eta, 1e-6).unwrap();
        let p = SpacetimePoint::new(0.7, -0.3);
        let err = (reconstruct(&f, p) - psi_boosted(0, eta, p)).abs();
        assert!(err < 10.0 * f.tail_bound, "{err} vs {}", f.tail_bound);
    }

    #[test]
    fn reconstruct_converges_on_grid() {
        let eta = r(0.8);
        let mut prev = f64::INFINITY;
        for tol in [1e-2, 1e-5, 1e-9, 1e-13] {
            let f = expand(2, eta, tol).unwrap();
            let mut worst = 0.0f64;
            for i in 0..41 {
                for j in 0..41 {
                    let p = SpacetimePoint::new(-4.0 + 0.2 * i as f64, -4.0 + 0.2 * j as f64);
                    worst = worst.max((reconstruct(&f, p) - psi_boosted(2, eta, p)).abs());
                }
            }
            assert!(worst < prev, "tol={tol}");
            prev = worst;
        }
        assert!(prev < 1e-6);
    }

    #[test]
    fn overlap_oracle_matches_coefficients() {
        for n in [0, 2] {
            for eta in [0.5, 1.5] {
                for k in [0, 3, 7] {
                    let num = overlap_coefficient_numeric(n, k, r(eta)).unwrap();
                    let ana = coefficient(n, k, r(eta));
                    assert!(
                        (num - ana).abs() < 1e-8,
                        "n={n} eta={eta} k={k}: {num} vs {ana}"
                    );
                }
            }
        }
        let v = overlap_coefficient_numeric(0, 0, Rapidity::ZERO).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cross_overlaps_vanish() {
        for (k, j) in [(2, 0), (2, 3), (5, 1)] {
            let v = cross_overlap(1, k, j, r(1.0)).unwrap();
            assert!(v.abs() < 1e-8, "k={k} j={j}: {v}");
        }
    }

    #[test]
    fn time_factor_pairs_with_k_not_n() {
        // with φ_n(t) in place of φ_k(t) the projections would be nonzero
        // for j = n; they are not.
        let n = 2;
        let eta = r(1.0);
        for k in [0, 1, 3, 4] {
            let with_n = cross_overlap(n, k, n, eta).unwrap();
            if k != n {
                assert!(with_n.abs() < 1e-8);
            }
        }
    }

    #[test]
    fn overlap_range_checked() {
        assert!(overlap_coefficient_numeric(30, 11, r(1.0)).is_err());
    }
}
