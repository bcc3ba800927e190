//! Cross-checks of every closed form against an independent route.
//!
//! Checks run against a [`Model`], the set of primitive formulas the rest
//! of the crate is built from. A model may carry a [`Mutation`] (a flipped
//! generator sign or a perturbed normalization constant) so the harness
//! itself can be shown to catch such errors.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::density::{entropy, entropy_beta_form, FockDistribution};
use crate::error::{Error, Result};
use crate::lorentz::{
    boost_generator, boost_matrix, levi_civita, rotation_generator, Axis, GeneratorMatrix,
};
use crate::matrix::{expm, Matrix4};
use crate::oscillator::{apply_boost, oscillator_residual, to_lightcone, Rapidity, SpacetimePoint};
use crate::quadrature::{
    gauss_hermite, integrate_1d_scaled, integrate_2d_lightcone, integrate_2d_squeezed, GridSpec,
};
use crate::special_functions::{log_sqrt_binomial, phi, phi_all, ModeIndex};
use crate::squeeze::overlap_table_of;

/// A deliberate defect injected into a [`Model`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    FlipRotation(Axis),
    FlipBoost(Axis),
    /// Drops the `√π` from the basis-function normalization.
    PhiNormalization,
    /// Uses `(cosh η)^{-n}` instead of `(cosh η)^{-(n+1)}`.
    CoefficientNormalization,
    /// Drops `cosh 2η` from the reduced-kernel prefactor.
    KernelNormalization,
    /// Uses `(1 − β²)` instead of `(1 − β²)²` as the purity prefactor.
    PurityNormalization,
}

impl Mutation {
    pub const ALL: [Mutation; 10] = [
        Mutation::FlipRotation(Axis::One),
        Mutation::FlipRotation(Axis::Two),
        Mutation::FlipRotation(Axis::Three),
        Mutation::FlipBoost(Axis::One),
        Mutation::FlipBoost(Axis::Two),
        Mutation::FlipBoost(Axis::Three),
        Mutation::PhiNormalization,
        Mutation::CoefficientNormalization,
        Mutation::KernelNormalization,
        Mutation::PurityNormalization,
    ];
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mutation::FlipRotation(a) => write!(f, "flip-j{a}"),
            Mutation::FlipBoost(a) => write!(f, "flip-k{a}"),
            Mutation::PhiNormalization => f.write_str("phi-norm"),
            Mutation::CoefficientNormalization => f.write_str("coeff-norm"),
            Mutation::KernelNormalization => f.write_str("kernel-norm"),
            Mutation::PurityNormalization => f.write_str("purity-norm"),
        }
    }
}

impl FromStr for Mutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Mutation::ALL
            .into_iter()
            .find(|m| m.to_string() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown mutation {s:?}")))
    }
}

/// The primitive formulas under test.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Model {
    pub mutation: Option<Mutation>,
}

impl Model {
    pub fn mutated(m: Mutation) -> Self {
        Self { mutation: Some(m) }
    }

    pub fn rotation(&self, a: Axis) -> GeneratorMatrix {
        let j = rotation_generator(a);
        if self.mutation == Some(Mutation::FlipRotation(a)) {
            -j
        } else {
            j
        }
    }

    pub fn boost(&self, a: Axis) -> GeneratorMatrix {
        let k = boost_generator(a);
        if self.mutation == Some(Mutation::FlipBoost(a)) {
            -k
        } else {
            k
        }
    }

    pub fn phi(&self, n: ModeIndex, z: f64) -> f64 {
        let v = phi(n, z);
        if self.mutation == Some(Mutation::PhiNormalization) {
            v * PI.powf(0.25)
        } else {
            v
        }
    }

    pub fn psi_boosted(&self, n: ModeIndex, eta: Rapidity, p: SpacetimePoint) -> f64 {
        let r = apply_boost(-eta, p);
        self.phi(n, r.z) * self.phi(0, r.t)
    }

    pub fn coefficient(&self, n: ModeIndex, k: ModeIndex, eta: Rapidity) -> f64 {
        let exponent = match self.mutation {
            Some(Mutation::CoefficientNormalization) => n as f64,
            _ => (n + 1) as f64,
        };
        let (ch, th) = (eta.cosh(), eta.beta());
        (-exponent * ch.ln() + log_sqrt_binomial(n, k)).exp() * th.powi(k as i32)
    }

    pub fn kernel_closed(&self, eta: Rapidity, z: f64, zp: f64) -> f64 {
        let c = (2.0 * eta.eta()).cosh();
        let pre = match self.mutation {
            Some(Mutation::KernelNormalization) => PI.sqrt().recip(),
            _ => (PI * c).sqrt().recip(),
        };
        pre * (-0.25 * ((z + zp).powi(2) / c + (z - zp).powi(2) * c)).exp()
    }

    pub fn kernel_series(&self, eta: Rapidity, truncation: usize, z: f64, zp: f64) -> f64 {
        let b2 = eta.beta().powi(2);
        let a = phi_all(truncation, z);
        let b = phi_all(truncation, zp);
        let mut w = 1.0 - b2;
        let mut sum = 0.0;
        for k in 0..=truncation {
            sum += w * a[k] * b[k];
            w *= b2;
        }
        sum
    }

    /// Series value `(1 − β²)² Σ β^{4k}`, summed in closed form.
    pub fn purity_series(&self, eta: Rapidity) -> f64 {
        let b2 = eta.beta().powi(2);
        let pre = match self.mutation {
            Some(Mutation::PurityNormalization) => 1.0 - b2,
            _ => (1.0 - b2) * (1.0 - b2),
        };
        pre / (1.0 - b2 * b2)
    }
}

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, residual: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            residual,
            threshold,
            passed: residual.is_finite() && residual <= threshold,
        }
    }

    fn failed(name: impl Into<String>, err: &Error) -> Self {
        Self {
            name: format!("{} ({err})", name.into()),
            residual: f64::INFINITY,
            threshold: 0.0,
            passed: false,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:<40} residual {:.3e} (threshold {:.1e})",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.residual,
            self.threshold
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
    pub notes: Vec<&'static str>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Convention notes printed with every report.
pub const NOTES: [&str; 5] = [
    "basis functions carry (sqrt(pi) 2^n n!)^(-1/2); without sqrt(pi) they integrate to 1/sqrt(pi)",
    "the series time factor is phi_k(t) (paired with phi_(n+k)(z)); cross projections onto phi_j(t), j != k, vanish",
    "purity of the reduced state is (1-beta^2)/(1+beta^2); the shorter 1/(1+beta^2) disagrees with the Fock series",
    "boosted little-group generators are B J_i B^-1 for each axis i",
    "the velocity form of the entropy uses beta^2/(1-beta^2) in its second term",
];

pub const EXACT_TOL: f64 = 1e-14;
pub const LITTLE_GROUP_TOL: f64 = 1e-12;
pub const CONTRACTION_RATE_TOL: f64 = 0.05;
pub const SQUEEZE_TOL: f64 = 1e-13;
pub const NORMALIZATION_TOL: f64 = 1e-8;
pub const OVERLAP_TOL: f64 = 1e-8;
pub const DEFAULT_COMPLETENESS_TOL: f64 = 1e-10;
pub const KERNEL_TOL: f64 = 1e-7;
pub const TRACE_TOL: f64 = 1e-9;
pub const PURITY_TOL: f64 = 1e-7;
pub const ENTROPY_TOL: f64 = 1e-12;
pub const RESIDUAL_SPACING: f64 = 0.02;

/// Threshold for the finite-difference oscillator residual at spacing `h`.
pub fn residual_threshold(h: f64) -> f64 {
    5.0 * h * h * 10.0
}

fn i() -> Complex64 {
    Complex64::new(0.0, 1.0)
}

fn r(eta: f64) -> Rapidity {
    Rapidity::new(eta).expect("rapidity within range")
}

/// The nine commutator families `[J_a, J_b]`, `[J_a, K_b]`, `[K_a, K_b]`,
/// each checked over all axis pairs; one residual per family and first axis.
#[allow(clippy::needless_range_loop)]
pub fn lorentz_commutators(model: &Model) -> Vec<(String, f64)> {
    let j = Axis::ALL.map(|a| model.rotation(a));
    let k = Axis::ALL.map(|a| model.boost(a));
    let mut out = Vec::new();
    for (label, lhs_a, lhs_b, rhs, sign) in [
        ("[J_a,J_b] = i e_abc J_c", &j, &j, &j, 1.0),
        ("[J_a,K_b] = i e_abc K_c", &j, &k, &k, 1.0),
        ("[K_a,K_b] = -i e_abc J_c", &k, &k, &j, -1.0),
    ] {
        for a in 0..3 {
            let mut worst = 0.0f64;
            for b in 0..3 {
                let mut expect = Matrix4::zero();
                for c in 0..3 {
                    expect = expect + rhs[c].scale(i() * (sign * levi_civita(a, b, c)));
                }
                let got = lhs_a[a] * lhs_b[b] - lhs_b[b] * lhs_a[a];
                worst = worst.max((got - expect).max_abs());
            }
            out.push((format!("{label}, a={}", a + 1), worst));
        }
    }
    out
}

fn little_group(model: &Model, eta: f64) -> Result<[GeneratorMatrix; 3]> {
    let b = boost_matrix(eta)?;
    let (bm, binv) = (b.to_complex(), b.inverse().to_complex());
    Ok(Axis::ALL.map(|a| bm * model.rotation(a) * binv))
}

/// Closure `[J′_a, J′_b] = i ε J′_c` and annihilation of the boosted
/// momentum, worst residual over both.
pub fn little_group_residual(model: &Model, eta: f64) -> Result<f64> {
    let jp = little_group(model, eta)?;
    let mut worst = 0.0f64;
    for (a, b, c) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        let comm = jp[a] * jp[b] - jp[b] * jp[a];
        worst = worst.max((comm - jp[c].times_i()).max_abs());
    }
    let p = [0.0, 0.0, eta.sinh(), eta.cosh()];
    for g in &jp {
        for e in g.apply_real(p) {
            worst = worst.max(e.norm());
        }
    }
    Ok(worst)
}

pub fn e2_algebra_residual(model: &Model) -> f64 {
    let n1 = model.boost(Axis::One) - model.rotation(Axis::Two);
    let n2 = model.boost(Axis::Two) + model.rotation(Axis::One);
    let j3 = model.rotation(Axis::Three);
    let comm = |a: &Matrix4, b: &Matrix4| *a * *b - *b * *a;
    [
        comm(&n1, &n2).max_abs(),
        (comm(&j3, &n1) - n2.times_i()).max_abs(),
        (comm(&j3, &n2) + n1.times_i()).max_abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max)
}

pub fn contraction_residual_for(model: &Model, eta: f64) -> Result<f64> {
    let n1 = model.boost(Axis::One) - model.rotation(Axis::Two);
    let n2 = model.boost(Axis::Two) + model.rotation(Axis::One);
    let jp = little_group(model, eta)?;
    let d = (-eta).exp();
    Ok((jp[1].scale_real(d) + n1.scale_real(0.5)).frobenius_norm()
        + (jp[0].scale_real(d) - n2.scale_real(0.5)).frobenius_norm())
}

/// Worst relative deviation of `r(η_{i+1})/r(η_i)` from `e^{-2Δη}` over
/// `η ∈ {2, 4, 6}`.
pub fn contraction_rate_deviation(model: &Model) -> Result<f64> {
    let etas = [2.0, 4.0, 6.0];
    let vals: Vec<f64> = etas
        .iter()
        .map(|&e| contraction_residual_for(model, e))
        .collect::<Result<_>>()?;
    let mut worst = 0.0f64;
    for w in 0..etas.len() - 1 {
        let ratio = vals[w + 1] / vals[w];
        let expect = (-2.0 * (etas[w + 1] - etas[w])).exp();
        worst = worst.max((ratio / expect - 1.0).abs());
    }
    Ok(worst)
}

/// Light-cone squeeze against the matrix boost on random points, plus the
/// boost matrix against `exp(−iη K_3)`.
pub fn boost_squeeze_residual(model: &Model, samples: usize, seed: u64) -> Result<f64> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let eta: f64 = rng.gen_range(-3.0..=3.0);
        let p = SpacetimePoint::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
        let b = boost_matrix(eta)?.apply([0.0, 0.0, p.z, p.t]);
        let boosted = to_lightcone(SpacetimePoint::new(b[2], b[3]));
        let lc = to_lightcone(p);
        let (u, v) = (eta.exp() * lc.u, (-eta).exp() * lc.v);
        let scale = u.abs().max(v.abs()).max(1.0);
        worst = worst.max((boosted.u - u).abs() / scale);
        worst = worst.max((boosted.v - v).abs() / scale);
    }
    for eta in [-2.0, 0.5, 1.0, 3.0] {
        let oracle = expm(&model.boost(Axis::Three).scale(-i() * eta));
        let closed = boost_matrix(eta)?.to_complex();
        worst = worst.max((oracle - closed).max_abs() / eta.cosh());
    }
    Ok(worst)
}

pub fn normalization_residual(model: &Model, n: ModeIndex, eta: f64) -> Result<f64> {
    let rule = gauss_hermite(n + 16)?;
    let rap = r(eta);
    let norm = integrate_2d_squeezed(
        |z, t| model.psi_boosted(n, rap, SpacetimePoint::new(z, t)).powi(2),
        &rule,
        eta,
    )?;
    Ok((norm - 1.0).abs())
}

/// Worst `|coefficient − overlap|` for `k ≤ max_k` and worst cross
/// projection `j ≠ k, j ≤ max_k`.
pub fn overlap_residuals(
    model: &Model,
    n: ModeIndex,
    eta: f64,
    max_k: usize,
) -> Result<(f64, f64)> {
    let rap = r(eta);
    let table = overlap_table_of(|p| model.psi_boosted(n, rap, p), n, rap, n + max_k, max_k)?;
    let mut diag = 0.0f64;
    let mut cross = 0.0f64;
    for k in 0..=max_k {
        diag = diag.max((table[n + k][k] - model.coefficient(n, k, rap)).abs());
        for j in (0..=max_k).filter(|&j| j != k) {
            cross = cross.max(table[n + k][j].abs());
        }
    }
    Ok((diag, cross))
}

/// Smallest `K` with `1 − Σ_{k≤K} c_k² < tol`, and the partial sum there.
pub fn completeness(model: &Model, n: ModeIndex, eta: f64, tol: f64) -> Result<(usize, f64)> {
    let rap = r(eta);
    let mut sum = 0.0;
    for k in 0..crate::squeeze::MAX_TERMS {
        let c = model.coefficient(n, k, rap);
        sum += c * c;
        if 1.0 - sum < tol {
            return Ok((k, sum));
        }
    }
    Err(Error::NonConvergence {
        cap: crate::squeeze::MAX_TERMS,
        tail: 1.0 - sum,
    })
}

/// `max |closed − series|`, `max |closed − ∫ψψ dt|`, `max |series − ∫ψψ dt|`
/// over a 5×5 grid of `(z, z′)` in `[−2, 2]²`.
pub fn kernel_triangle(model: &Model, eta: f64) -> Result<[f64; 3]> {
    let rap = r(eta);
    let truncation = FockDistribution::new(rap, 1e-16).truncation();
    let c2 = (2.0 * eta).cosh();
    let s2 = (2.0 * eta).sinh();
    let rule = gauss_hermite(24)?;
    let mut worst = [0.0f64; 3];
    for a in 0..5 {
        for b in 0..5 {
            let (z, zp) = (-2.0 + a as f64, -2.0 + b as f64);
            let closed = model.kernel_closed(rap, z, zp);
            let series = model.kernel_series(rap, truncation, z, zp);
            let traced = integrate_1d_scaled(
                |t| {
                    model.psi_boosted(0, rap, SpacetimePoint::new(z, t))
                        * model.psi_boosted(0, rap, SpacetimePoint::new(zp, t))
                },
                &rule,
                s2 * (z + zp) / (2.0 * c2),
                c2.sqrt().recip(),
            )?;
            worst[0] = worst[0].max((closed - series).abs());
            worst[1] = worst[1].max((closed - traced).abs());
            worst[2] = worst[2].max((series - traced).abs());
        }
    }
    Ok(worst)
}

pub fn trace_residual(model: &Model, eta: f64) -> Result<f64> {
    let rap = r(eta);
    let c2 = (2.0 * eta).cosh();
    let rule = gauss_hermite(16)?;
    let tr = integrate_1d_scaled(|z| model.kernel_closed(rap, z, z), &rule, 0.0, c2.sqrt())?;
    Ok((tr - 1.0).abs())
}

pub fn purity_residual(model: &Model, eta: f64) -> Result<f64> {
    let rap = r(eta);
    let c2 = (2.0 * eta).cosh();
    let rule = gauss_hermite(16)?;
    let quad = integrate_2d_lightcone(
        |z, zp| model.kernel_closed(rap, z, zp).powi(2),
        &rule,
        c2.sqrt(),
        c2.sqrt().recip(),
    )?;
    Ok((quad - model.purity_series(rap)).abs())
}

/// `max(|S_closed − S_fock|, |S_beta − S_closed|)`.
pub fn entropy_residual(eta: f64) -> f64 {
    let rap = r(eta);
    let closed = entropy(rap);
    let fock = FockDistribution::new(rap, 1e-18).entropy();
    let beta = entropy_beta_form(rap.beta());
    (closed - fock).abs().max((beta - closed).abs())
}

/// Runs every check. `completeness_tol` sets the truncation target of the
/// completeness check.
pub fn run(model: &Model, completeness_tol: f64) -> Report {
    let mut checks = Vec::new();
    let mut push = |name: String, res: Result<f64>, threshold: f64| {
        checks.push(match res {
            Ok(v) => Check::new(name, v, threshold),
            Err(e) => Check::failed(name, &e),
        });
    };

    // 1
    let worst = lorentz_commutators(model)
        .into_iter()
        .map(|(_, v)| v)
        .fold(0.0, f64::max);
    push("1 lorentz commutators".into(), Ok(worst), EXACT_TOL);

    // 2
    for eta in [0.5, 1.0, 2.0] {
        push(
            format!("2 little group eta={eta}"),
            little_group_residual(model, eta),
            LITTLE_GROUP_TOL,
        );
    }

    // 3
    push(
        "3 e2 algebra".into(),
        Ok(e2_algebra_residual(model)),
        EXACT_TOL,
    );
    push(
        "3 contraction rate e^-2eta".into(),
        contraction_rate_deviation(model),
        CONTRACTION_RATE_TOL,
    );

    // 4
    push(
        "4 boost = squeeze".into(),
        boost_squeeze_residual(model, 1000, 0x5eed),
        SQUEEZE_TOL,
    );

    // 5
    let norm = (0..=8)
        .flat_map(|n| [0.0, 0.5, 1.0, 2.0, 3.0].map(move |e| (n, e)))
        .map(|(n, e)| normalization_residual(model, n, e))
        .try_fold(0.0f64, |acc, v| v.map(|v| acc.max(v)));
    push("5 normalization invariance".into(), norm, NORMALIZATION_TOL);

    // 6
    let mut diag = Ok(0.0f64);
    let mut cross = Ok(0.0f64);
    'outer: for n in 0..=4 {
        for eta in [0.0, 0.5, 1.0, 1.5, 2.0] {
            match overlap_residuals(model, n, eta, 10) {
                Ok((d, c)) => {
                    diag = diag.map(|v| v.max(d));
                    cross = cross.map(|v| v.max(c));
                }
                Err(e) => {
                    diag = Err(e.clone());
                    cross = Err(e);
                    break 'outer;
                }
            }
        }
    }
    push("6 coefficients = overlaps".into(), diag, OVERLAP_TOL);
    push("6 cross projections vanish".into(), cross, OVERLAP_TOL);

    // 7
    let mut worst = Ok(0.0f64);
    for n in 0..=4 {
        for eta in [0.5, 1.0, 2.0] {
            worst = worst.and_then(|w| {
                completeness(model, n, eta, completeness_tol)
                    .map(|(_, sum)| w.max((sum - 1.0).max(0.0)))
            });
        }
    }
    push("7 completeness (no overshoot)".into(), worst, 1e-12);
    let beta: f64 = 0.6;
    let k_geom = ((completeness_tol.ln() / (beta * beta).ln()).ceil() as usize).saturating_sub(1);
    let k_found = completeness(model, 0, beta.atanh(), completeness_tol)
        .map(|(k, _)| k.abs_diff(k_geom) as f64);
    push(
        format!("7 truncation K = {k_geom} at beta=0.6"),
        k_found,
        0.0,
    );

    // 8
    for eta in [0.5, 1.0, 2.0] {
        push(
            format!("8 kernel triangle eta={eta}"),
            kernel_triangle(model, eta).map(|w| w.into_iter().fold(0.0, f64::max)),
            KERNEL_TOL,
        );
    }
    let tr = [0.5, 1.0, 2.0, 3.0]
        .into_iter()
        .map(|e| trace_residual(model, e))
        .try_fold(0.0f64, |acc, v| v.map(|v| acc.max(v)));
    push("8 trace".into(), tr, TRACE_TOL);

    // 9
    let pur = [0.5, 1.0, 2.0]
        .into_iter()
        .map(|e| purity_residual(model, e))
        .try_fold(0.0f64, |acc, v| v.map(|v| acc.max(v)));
    push("9 purity series = quadrature".into(), pur, PURITY_TOL);

    // 10
    let ent = [0.5, 1.0, 2.0]
        .into_iter()
        .map(entropy_residual)
        .fold(entropy(Rapidity::ZERO).abs(), f64::max);
    push("10 entropy forms".into(), Ok(ent), ENTROPY_TOL);

    // 11
    let h = RESIDUAL_SPACING;
    for eta in [0.0, 1.0] {
        let half = 6.0 + 6.0 * eta;
        let count = (2.0 * half / h).round() as usize + 1;
        let res = GridSpec::new(-half, half, count).and_then(|g| {
            (0..=2)
                .map(|n| oscillator_residual(n, r(eta), &g))
                .try_fold(0.0f64, |acc, v| v.map(|v| acc.max(v)))
        });
        push(
            format!("11 oscillator equation eta={eta}"),
            res,
            residual_threshold(h),
        );
    }

    Report {
        checks,
        notes: NOTES.to_vec(),
    }
}
