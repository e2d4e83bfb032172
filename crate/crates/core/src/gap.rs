//! Gap-condition analysis for the information-criterion estimators.
//!
//! For a method `m`, selection consistency holds exactly when the
//! method's threshold `beta_m` separates the log-likelihood gains of the
//! weakest signal and the strongest noise:
//! `g(b/mu_H) < beta_m < g(psi_r0/mu_H)`, with `beta_m` replaced by the
//! rank-adaptive `2 kappa(u)` for GIC. Thresholds are evaluated at the
//! finite `(n, p)` of a setting with `c = p/n`.

#[cfg(not(feature = "std"))]
use crate::fmath::F64Ext as _;

use crate::rmt::{kappa, mean_h, psi, upper_edge, MpModel};
use crate::{Error, Method, Result};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

/// `g(u) = u - 1 - ln u`: the per-rank log-likelihood gain of the spiked
/// working model. Nonnegative, zero only at `u = 1`.
pub fn g(u: f64) -> Result<f64> {
    if u <= 0.0 {
        return Err(Error::domain(format!("g is defined for u > 0, got {u}")));
    }
    Ok(u - 1.0 - u.ln())
}

/// The method threshold `beta_m(u)` at finite `(n, p)` with `c = p/n`.
/// Constant in `u` for every method except GIC.
pub fn beta(method: Method, n: usize, p: usize, model: &MpModel, u: f64) -> Result<f64> {
    let (nf, pf) = (n as f64, p as f64);
    let c = pf / nf;
    match method {
        Method::Aic => Ok(2.0 * c),
        Method::Bic => Ok(c * nf.ln()),
        Method::Gic => Ok(2.0 * kappa(model, u)?),
        Method::Pc1 | Method::Ic1 => g((1.0 + c) * (pf / (1.0 + c)).ln()),
        Method::Pc2 | Method::Ic2 => g((1.0 + c) * nf.min(pf).ln()),
        Method::Pc3 | Method::Ic3 => g(c.max(1.0) * nf.min(pf).ln()),
        other => Err(Error::UnsupportedMethod(format!(
            "{other} has no gap-condition threshold"
        ))),
    }
}

/// Outcome of the two gap conditions for one method and setting.
#[derive(Debug, Clone, PartialEq)]
pub struct GapReport {
    pub method: Method,
    /// `beta_m(psi_r0/mu) < g(psi_r0/mu)`: the signal is strong enough.
    pub first_ok: bool,
    /// `g(b/mu) < beta_m(b/mu)`: the noise edge is tolerated.
    pub second_ok: bool,
    pub g_psi: f64,
    pub g_b: f64,
    pub beta_at_psi: f64,
    pub beta_at_b: f64,
    pub psi_r0: f64,
    pub b: f64,
    pub mu_h: f64,
}

impl GapReport {
    pub fn satisfied(&self) -> bool {
        self.first_ok && self.second_ok
    }
}

/// Evaluate both gap conditions for one method.
pub fn check_gap(
    method: Method,
    model: &MpModel,
    lambda_r0: f64,
    n: usize,
    p: usize,
) -> Result<GapReport> {
    let mu_h = mean_h(model.h());
    let psi_r0 = psi(model, lambda_r0)?;
    let b = upper_edge(model)?.edge;
    let g_psi = g(psi_r0 / mu_h)?;
    let g_b = g(b / mu_h)?;
    let beta_at_psi = beta(method, n, p, model, psi_r0 / mu_h)?;
    let beta_at_b = beta(method, n, p, model, b / mu_h)?;
    Ok(GapReport {
        method,
        first_ok: beta_at_psi < g_psi,
        second_ok: g_b < beta_at_b,
        g_psi,
        g_b,
        beta_at_psi,
        beta_at_b,
        psi_r0,
        b,
        mu_h,
    })
}

/// One setting of a gap table: a population model at finite `(n, p)` with
/// the weakest signal eigenvalue.
#[derive(Debug, Clone)]
pub struct GapSetting {
    pub id: u32,
    pub n: usize,
    pub p: usize,
    pub lambda_r0: f64,
    pub model: MpModel,
}

/// The numeric columns of one gap-table row.
#[derive(Debug, Clone, PartialEq)]
pub struct GapRowValues {
    pub psi_r0: f64,
    pub b: f64,
    pub mu_h: f64,
    pub g_psi: f64,
    pub g_b: f64,
    pub beta_aic: f64,
    pub beta_bic: f64,
    pub two_kappa_psi: f64,
    pub two_kappa_b: f64,
    pub beta_pc1: f64,
    pub beta_pc2: f64,
    pub beta_pc3: f64,
}

/// Compute the numeric columns for one model. Exposed so callers can
/// average the values of realized finite-`p` population draws.
pub fn gap_row_values(model: &MpModel, lambda_r0: f64, n: usize, p: usize) -> Result<GapRowValues> {
    let mu_h = mean_h(model.h());
    let psi_r0 = psi(model, lambda_r0)?;
    let b = upper_edge(model)?.edge;
    Ok(GapRowValues {
        psi_r0,
        b,
        mu_h,
        g_psi: g(psi_r0 / mu_h)?,
        g_b: g(b / mu_h)?,
        beta_aic: beta(Method::Aic, n, p, model, 1.0)?,
        beta_bic: beta(Method::Bic, n, p, model, 1.0)?,
        two_kappa_psi: beta(Method::Gic, n, p, model, psi_r0 / mu_h)?,
        two_kappa_b: beta(Method::Gic, n, p, model, b / mu_h)?,
        beta_pc1: beta(Method::Pc1, n, p, model, 1.0)?,
        beta_pc2: beta(Method::Pc2, n, p, model, 1.0)?,
        beta_pc3: beta(Method::Pc3, n, p, model, 1.0)?,
    })
}

/// One gap-table row: setting coordinates, numeric columns and the
/// per-method satisfaction flags.
#[derive(Debug, Clone)]
pub struct GapTableRow {
    pub id: u32,
    pub n: usize,
    pub p: usize,
    pub c: f64,
    pub lambda_r0: f64,
    pub values: GapRowValues,
    pub flags: Vec<(Method, bool)>,
}

/// Evaluate a table of settings analytically. Per-cell errors abort the
/// row; methods outside the criterion family are rejected.
pub fn gap_table(settings: &[GapSetting], methods: &[Method]) -> Result<Vec<GapTableRow>> {
    settings
        .iter()
        .map(|s| {
            let values = gap_row_values(&s.model, s.lambda_r0, s.n, s.p)?;
            let flags = methods
                .iter()
                .map(|&m| check_gap(m, &s.model, s.lambda_r0, s.n, s.p).map(|r| (m, r.satisfied())))
                .collect::<Result<Vec<_>>>()?;
            Ok(GapTableRow {
                id: s.id,
                n: s.n,
                p: s.p,
                c: s.p as f64 / s.n as f64,
                lambda_r0: s.lambda_r0,
                values,
                flags,
            })
        })
        .collect()
}

/// A named series of `(lambda, y)` points.
#[derive(Debug, Clone)]
pub struct CurveSeries {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

/// The curve bundle behind a gap-condition figure.
#[derive(Debug, Clone)]
pub struct CurveBundle {
    pub series: Vec<CurveSeries>,
    /// Grid points that fell inside the support of `H` and were skipped.
    pub skipped: Vec<f64>,
}

/// Default curve grid: 200 points from just above the larger of the
/// support edge and the stationary point up to `max_lambda`.
pub fn default_grid(model: &MpModel, max_lambda: f64) -> Result<Vec<f64>> {
    let upper = upper_edge(model)?;
    let start = (model.h().support().1 * 1.01).max(upper.lambda_star * 1.001);
    if max_lambda <= start {
        return Err(Error::config(format!(
            "grid maximum {max_lambda} must exceed the start {start}"
        )));
    }
    let count = 200;
    Ok((0..count)
        .map(|i| start + (max_lambda - start) * i as f64 / (count - 1) as f64)
        .collect())
}

/// Sample the gap-condition curves over a grid of signal eigenvalues.
pub fn gap_curves(
    model: &MpModel,
    lambda_grid: &[f64],
    n: usize,
    p: usize,
    methods: &[Method],
) -> Result<CurveBundle> {
    let mu_h = mean_h(model.h());
    let b = upper_edge(model)?.edge;
    let g_b = g(b / mu_h)?;
    let mut grid = Vec::new();
    let mut skipped = Vec::new();
    for &lam in lambda_grid {
        match psi(model, lam) {
            Ok(v) => grid.push((lam, v)),
            Err(Error::Domain(_)) => skipped.push(lam),
            Err(e) => return Err(e),
        }
    }
    let mut series = Vec::new();
    let mut g_psi_points = Vec::with_capacity(grid.len());
    for &(lam, psi_v) in &grid {
        g_psi_points.push((lam, g(psi_v / mu_h)?));
    }
    series.push(CurveSeries {
        name: "g_psi_over_mu".into(),
        points: g_psi_points,
    });
    series.push(CurveSeries {
        name: "g_b_over_mu".into(),
        points: grid.iter().map(|&(lam, _)| (lam, g_b)).collect(),
    });
    for &m in methods {
        if m == Method::Gic {
            let mut pts = Vec::with_capacity(grid.len());
            for &(lam, psi_v) in &grid {
                pts.push((lam, beta(Method::Gic, n, p, model, psi_v / mu_h)?));
            }
            series.push(CurveSeries {
                name: "two_kappa_psi".into(),
                points: pts,
            });
            let edge = beta(Method::Gic, n, p, model, b / mu_h)?;
            series.push(CurveSeries {
                name: "two_kappa_b".into(),
                points: grid.iter().map(|&(lam, _)| (lam, edge)).collect(),
            });
        } else {
            let v = beta(m, n, p, model, 1.0)?;
            series.push(CurveSeries {
                name: format!("beta_{m}"),
                points: grid.iter().map(|&(lam, _)| (lam, v)).collect(),
            });
        }
    }
    Ok(CurveBundle { series, skipped })
}
