//! Data-producing commands behind the CLI. Each returns an
//! [`OutputDocument`] ready to be written as CSV or JSON.

use serde_json::json;

use crate::density::{
    entropy, purity, reduced_density_closed, reduced_density_series, FockDistribution,
};
use crate::error::{Error, Result};
use crate::lorentz::Axis;
use crate::matrix::Matrix4;
use crate::oscillator::{psi_boosted, Rapidity, SpacetimePoint, MAX_RAPIDITY};
use crate::output::{Meta, OutputDocument, Table};
use crate::quadrature::Grid2;
use crate::special_functions::ModeIndex;
use crate::squeeze;
use crate::verify::{self, Model, CONTRACTION_RATE_TOL, EXACT_TOL, LITTLE_GROUP_TOL};

/// Largest number of grid points a single command will emit.
pub const MAX_GRID_POINTS: usize = 4_000_000;

fn check_size(grid: &Grid2) -> Result<()> {
    let total = grid.first.count.saturating_mul(grid.second.count);
    if total > MAX_GRID_POINTS {
        return Err(Error::InvalidGrid(format!(
            "{total} points exceeds the limit of {MAX_GRID_POINTS}"
        )));
    }
    Ok(())
}

fn base_meta(command: &str, eta: Rapidity) -> Meta {
    Meta::new(command)
        .param("eta", eta.eta())
        .param("beta", eta.beta())
}

/// `ψⁿ_η(z, t)` on a rectangular grid; first axis is `z`, second `t`.
pub fn wavefunction(n: ModeIndex, eta: Rapidity, grid: Grid2) -> Result<OutputDocument> {
    check_size(&grid)?;
    let mut table = Table::new(&["z", "t", "psi"]);
    for z in grid.first.points() {
        for t in grid.second.points() {
            let v = psi_boosted(n, eta, SpacetimePoint::new(z, t));
            table.push(vec![z.into(), t.into(), v.into()]);
        }
    }
    let meta = base_meta("wavefunction", eta)
        .param("n", n)
        .param("grid", grid.to_string());
    Ok(OutputDocument::new(meta, table))
}

/// Fock coefficients of `ψⁿ_η` truncated at tolerance `tol`.
pub fn expand(n: ModeIndex, eta: Rapidity, tol: f64) -> Result<OutputDocument> {
    let fc = squeeze::expand(n, eta, tol)?;
    let mut table = Table::new(&["k", "c_k", "cumulative"]);
    for (k, (c, cum)) in fc.coeffs.iter().zip(fc.cumulative_norm()).enumerate() {
        table.push(vec![k.into(), (*c).into(), cum.into()]);
    }
    let mut meta = base_meta("expand", eta).param("n", n).tolerance("tol", tol);
    meta.results
        .insert("tail_bound".into(), json!(fc.tail_bound));
    meta.results
        .insert("truncation".into(), json!(fc.truncation()));
    Ok(OutputDocument::new(meta, table))
}

/// Reduced density kernel `ρ(z, z′)` in closed form and as a truncated Fock
/// series; first axis is `z`, second `z′`.
pub fn density(eta: Rapidity, grid: Grid2, tol: f64) -> Result<OutputDocument> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::InvalidTolerance(tol));
    }
    check_size(&grid)?;
    let truncation = FockDistribution::new(eta, tol).truncation();
    let mut table = Table::new(&["z", "zp", "rho_closed", "rho_series"]);
    for z in grid.first.points() {
        for zp in grid.second.points() {
            table.push(vec![
                z.into(),
                zp.into(),
                reduced_density_closed(eta, z, zp).into(),
                reduced_density_series(eta, truncation, z, zp).into(),
            ]);
        }
    }
    let mut meta = base_meta("density", eta)
        .param("grid", grid.to_string())
        .tolerance("tol", tol);
    meta.results.insert("truncation".into(), json!(truncation));
    meta.results.insert("purity".into(), json!(purity(eta)));
    meta.results.insert("entropy".into(), json!(entropy(eta)));
    Ok(OutputDocument::new(meta, table))
}

/// Entropy and purity on `steps` equally spaced rapidities in `[0, eta_max]`.
pub fn entropy_curve(eta_max: f64, steps: usize) -> Result<OutputDocument> {
    if !(eta_max > 0.0 && eta_max <= MAX_RAPIDITY) {
        return Err(Error::RapidityOutOfRange {
            eta: eta_max,
            limit: MAX_RAPIDITY,
        });
    }
    if steps < 2 {
        return Err(Error::InvalidArgument(format!(
            "steps must be >= 2, got {steps}"
        )));
    }
    let mut table = Table::new(&["eta", "beta", "entropy", "purity"]);
    for i in 0..steps {
        let e = if i + 1 == steps {
            eta_max
        } else {
            eta_max * i as f64 / (steps - 1) as f64
        };
        let r = Rapidity::new(e)?;
        table.push(vec![
            e.into(),
            r.beta().into(),
            entropy(r).into(),
            purity(r).into(),
        ]);
    }
    let meta = Meta::new("entropy-curve")
        .param("eta_max", eta_max)
        .param("steps", steps);
    Ok(OutputDocument::new(meta, table))
}

/// One row per algebraic identity with its worst residual.
pub fn algebra_check() -> Result<OutputDocument> {
    algebra_check_for(&Model::default())
}

pub fn algebra_check_for(model: &Model) -> Result<OutputDocument> {
    let mut table = Table::new(&["identity", "residual", "threshold", "pass"]);
    let mut row = |name: String, residual: f64, threshold: f64| {
        table.push(vec![
            name.into(),
            residual.into(),
            threshold.into(),
            (residual <= threshold).into(),
        ]);
    };

    for (name, r) in verify::lorentz_commutators(model) {
        row(name, r, EXACT_TOL);
    }

    let n1 = model.boost(Axis::One) - model.rotation(Axis::Two);
    let n2 = model.boost(Axis::Two) + model.rotation(Axis::One);
    let j3 = model.rotation(Axis::Three);
    let comm = |a: &Matrix4, b: &Matrix4| *a * *b - *b * *a;
    row("[N1,N2] = 0".into(), comm(&n1, &n2).max_abs(), EXACT_TOL);
    row(
        "[J3,N1] = i N2".into(),
        (comm(&j3, &n1) - n2.times_i()).max_abs(),
        EXACT_TOL,
    );
    row(
        "[J3,N2] = -i N1".into(),
        (comm(&j3, &n2) + n1.times_i()).max_abs(),
        EXACT_TOL,
    );

    for eta in [0.5, 1.0, 2.0] {
        row(
            format!("little group closure eta={eta}"),
            verify::little_group_residual(model, eta)?,
            LITTLE_GROUP_TOL,
        );
    }

    let etas = [2.0, 4.0, 6.0];
    let mut prev: Option<(f64, f64)> = None;
    for eta in etas {
        let r = verify::contraction_residual_for(model, eta)?;
        // residual must stay within the rate bound 2 e^{-2η}
        row(
            format!("contraction residual eta={eta}"),
            r,
            2.0 * (-2.0 * eta).exp() * (1.0 + CONTRACTION_RATE_TOL),
        );
        if let Some((pe, pr)) = prev {
            let dev = (r / pr / (-2.0 * (eta - pe)).exp() - 1.0).abs();
            row(
                format!("contraction rate r({eta})/r({pe}) vs e^-2deta"),
                dev,
                CONTRACTION_RATE_TOL,
            );
        }
        prev = Some((eta, r));
    }

    Ok(OutputDocument::new(
        Meta::new("algebra")
            .tolerance("exact", EXACT_TOL)
            .tolerance("little_group", LITTLE_GROUP_TOL)
            .tolerance("contraction_rate", CONTRACTION_RATE_TOL),
        table,
    ))
}
