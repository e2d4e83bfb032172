//! The nine information-criterion rank estimators: AIC, BIC, GIC and the
//! PC/IC families. Each minimizes a penalized criterion over candidate
//! ranks `r <= q` and reports the argmin together with the full curve.

#[cfg(not(feature = "std"))]
use crate::fmath::F64Ext as _;

use crate::spectra::{tail_mean, EigenSpectrum};
use crate::{Error, Method, Result};
use alloc::format;
use alloc::vec::Vec;

/// Search configuration shared by all criterion estimators.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorConfig {
    /// Upper bound of the candidate rank range.
    pub q: usize,
    /// External noise variance for the PC family; when absent it is
    /// estimated as the tail mean beyond `q`.
    pub noise_variance: Option<f64>,
    /// Whether `r = 0` is a candidate.
    pub include_zero: bool,
}

impl EstimatorConfig {
    pub fn new(q: usize) -> Self {
        EstimatorConfig {
            q,
            noise_variance: None,
            include_zero: true,
        }
    }

    /// The default search bound `floor(2 sqrt(min(n, p)))`.
    pub fn default_q(n: usize, p: usize) -> usize {
        (2.0 * (n.min(p) as f64).sqrt()) as usize
    }

    fn validate(&self, spec: &EigenSpectrum) -> Result<()> {
        let m = spec.n().min(spec.p());
        if self.q < 1 || 2 * self.q >= m {
            return Err(Error::config(format!(
                "search bound q = {} must satisfy 1 <= q < min(n, p)/2 = {}",
                self.q,
                m / 2
            )));
        }
        if let Some(s) = self.noise_variance {
            if !(s > 0.0 && s.is_finite()) {
                return Err(Error::config("noise variance must be positive"));
            }
        }
        Ok(())
    }

    fn first_candidate(&self) -> usize {
        usize::from(!self.include_zero)
    }
}

/// Estimator metadata carried alongside a result.
#[derive(Debug, Clone, PartialEq)]
pub struct RankMeta {
    /// Noise variance used by the PC family, when applicable.
    pub sigma_sq: Option<f64>,
    pub n: usize,
    pub p: usize,
    /// False only when an iterative calibration hit its iteration limit.
    pub converged: bool,
}

/// A chosen rank with the criterion curve that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct RankEstimate {
    pub method: Method,
    pub r_hat: usize,
    /// `(r, criterion value)` for every candidate rank.
    pub curve: Vec<(usize, f64)>,
    pub q: usize,
    pub meta: RankMeta,
}

impl RankEstimate {
    pub(crate) fn from_curve(
        method: Method,
        curve: Vec<(usize, f64)>,
        q: usize,
        meta: RankMeta,
    ) -> RankEstimate {
        let mut best = 0;
        for (i, &(_, v)) in curve.iter().enumerate() {
            if v < curve[best].1 {
                best = i;
            }
        }
        RankEstimate {
            method,
            r_hat: curve[best].0,
            curve,
            q,
            meta,
        }
    }
}

/// Number of free parameters of the rank-`r` spiked working model. Odd
/// `r` gives a half-integer; only the penalized product matters, so the
/// value is kept real.
pub fn free_params(r: usize, p: usize) -> f64 {
    let (r, p) = (r as f64, p as f64);
    p * r - r * (r + 2.0) / 2.0 + r + 1.0 + p
}

/// `sum_{j<=r} ln lambda_j + (p - r) ln(tail mean)`: the log determinant
/// of the rank-`r` spiked covariance estimate.
pub fn loglik_term(spec: &EigenSpectrum, r: usize) -> Result<f64> {
    let p = spec.p();
    if r >= p {
        return Err(Error::Range(format!("rank {r} out of range for p = {p}")));
    }
    let ev = spec.eigenvalues();
    let mut acc = 0.0;
    for &v in &ev[..r] {
        if v <= 0.0 {
            return Err(Error::domain(
                "log likelihood needs positive leading eigenvalues",
            ));
        }
        acc += v.ln();
    }
    let tail = tail_mean(spec, r)?;
    if tail <= 0.0 {
        return Err(Error::domain("log likelihood needs a positive tail mean"));
    }
    Ok(acc + (p - r) as f64 * tail.ln())
}

/// The adaptive GIC penalty at rank `r`.
pub fn gic_penalty(spec: &EigenSpectrum, r: usize) -> Result<f64> {
    let p = spec.p();
    if r >= p {
        return Err(Error::Range(format!("rank {r} out of range for p = {p}")));
    }
    let ev = spec.eigenvalues();
    let sigma = tail_mean(spec, r)?;
    if sigma <= 0.0 {
        return Err(Error::domain("GIC penalty needs a positive tail mean"));
    }
    let binom = (r * r.saturating_sub(1)) as f64 / 2.0;
    let mut cross = 0.0;
    for &lj in &ev[..r] {
        for &ll in &ev[r..] {
            if lj == ll {
                // 0/0 when the spike also equals the tail mean (flat
                // spectrum); the limiting contribution is zero there.
                if lj == sigma {
                    continue;
                }
                return Err(Error::DegenerateSpectrum(format!(
                    "spiked and bulk eigenvalues coincide at {lj}"
                )));
            }
            cross += ll * (lj - sigma) / (sigma * (lj - ll));
        }
    }
    let m2 = ev[r..].iter().map(|v| v * v).sum::<f64>() / (p - r) as f64;
    Ok(binom + cross + r as f64 + m2 / (sigma * sigma))
}

fn penalized_curve(
    spec: &EigenSpectrum,
    cfg: &EstimatorConfig,
    method: Method,
    mut penalty: impl FnMut(usize) -> Result<f64>,
) -> Result<RankEstimate> {
    cfg.validate(spec)?;
    let mut curve = Vec::with_capacity(cfg.q + 1);
    for r in cfg.first_candidate()..=cfg.q {
        curve.push((r, loglik_term(spec, r)? + penalty(r)?));
    }
    Ok(RankEstimate::from_curve(
        method,
        curve,
        cfg.q,
        RankMeta {
            sigma_sq: None,
            n: spec.n(),
            p: spec.p(),
            converged: true,
        },
    ))
}

/// AIC: log determinant plus `(2/n) b_r`.
pub fn aic(spec: &EigenSpectrum, cfg: &EstimatorConfig) -> Result<RankEstimate> {
    let n = spec.n() as f64;
    let p = spec.p();
    penalized_curve(spec, cfg, Method::Aic, |r| Ok(2.0 / n * free_params(r, p)))
}

/// BIC: log determinant plus `(ln n / n) b_r`.
pub fn bic(spec: &EigenSpectrum, cfg: &EstimatorConfig) -> Result<RankEstimate> {
    let n = spec.n() as f64;
    let p = spec.p();
    penalized_curve(spec, cfg, Method::Bic, |r| {
        Ok(n.ln() / n * free_params(r, p))
    })
}

/// GIC: log determinant plus `(2/n)` times the adaptive penalty.
pub fn gic(spec: &EigenSpectrum, cfg: &EstimatorConfig) -> Result<RankEstimate> {
    let n = spec.n() as f64;
    penalized_curve(spec, cfg, Method::Gic, |r| {
        Ok(2.0 / n * gic_penalty(spec, r)?)
    })
}

/// Penalty factor variants shared by the PC and IC families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PenaltyVariant {
    One,
    Two,
    Three,
}

impl PenaltyVariant {
    pub fn factor(self, n: usize, p: usize) -> f64 {
        let (nf, pf) = (n as f64, p as f64);
        let m = nf.min(pf);
        match self {
            PenaltyVariant::One => (nf + pf) / (nf * pf) * ((nf * pf) / (nf + pf)).ln(),
            PenaltyVariant::Two => (nf + pf) / (nf * pf) * m.ln(),
            PenaltyVariant::Three => m.ln() / m,
        }
    }

    fn pc_method(self) -> Method {
        match self {
            PenaltyVariant::One => Method::Pc1,
            PenaltyVariant::Two => Method::Pc2,
            PenaltyVariant::Three => Method::Pc3,
        }
    }

    fn ic_method(self) -> Method {
        match self {
            PenaltyVariant::One => Method::Ic1,
            PenaltyVariant::Two => Method::Ic2,
            PenaltyVariant::Three => Method::Ic3,
        }
    }
}

fn residual_mean(spec: &EigenSpectrum, r: usize) -> f64 {
    spec.eigenvalues()[r..].iter().sum::<f64>() / spec.p() as f64
}

/// PC family: residual variance plus `sigma^2 r` times the variant factor.
pub fn pc(
    spec: &EigenSpectrum,
    cfg: &EstimatorConfig,
    variant: PenaltyVariant,
) -> Result<RankEstimate> {
    cfg.validate(spec)?;
    let sigma = match cfg.noise_variance {
        Some(s) => s,
        None => tail_mean(spec, cfg.q)?,
    };
    let factor = variant.factor(spec.n(), spec.p());
    let curve: Vec<(usize, f64)> = (cfg.first_candidate()..=cfg.q)
        .map(|r| (r, residual_mean(spec, r) + sigma * r as f64 * factor))
        .collect();
    Ok(RankEstimate::from_curve(
        variant.pc_method(),
        curve,
        cfg.q,
        RankMeta {
            sigma_sq: Some(sigma),
            n: spec.n(),
            p: spec.p(),
            converged: true,
        },
    ))
}

/// IC family: log residual variance plus `r` times the variant factor.
pub fn ic(
    spec: &EigenSpectrum,
    cfg: &EstimatorConfig,
    variant: PenaltyVariant,
) -> Result<RankEstimate> {
    cfg.validate(spec)?;
    let factor = variant.factor(spec.n(), spec.p());
    let mut curve = Vec::with_capacity(cfg.q + 1);
    for r in cfg.first_candidate()..=cfg.q {
        let v = residual_mean(spec, r);
        if v <= 0.0 {
            return Err(Error::domain("IC criterion needs a positive residual mean"));
        }
        curve.push((r, v.ln() + r as f64 * factor));
    }
    Ok(RankEstimate::from_curve(
        variant.ic_method(),
        curve,
        cfg.q,
        RankMeta {
            sigma_sq: None,
            n: spec.n(),
            p: spec.p(),
            converged: true,
        },
    ))
}

/// Dispatch one criterion method.
pub fn estimate(
    spec: &EigenSpectrum,
    cfg: &EstimatorConfig,
    method: Method,
) -> Result<RankEstimate> {
    match method {
        Method::Aic => aic(spec, cfg),
        Method::Bic => bic(spec, cfg),
        Method::Gic => gic(spec, cfg),
        Method::Pc1 => pc(spec, cfg, PenaltyVariant::One),
        Method::Pc2 => pc(spec, cfg, PenaltyVariant::Two),
        Method::Pc3 => pc(spec, cfg, PenaltyVariant::Three),
        Method::Ic1 => ic(spec, cfg, PenaltyVariant::One),
        Method::Ic2 => ic(spec, cfg, PenaltyVariant::Two),
        Method::Ic3 => ic(spec, cfg, PenaltyVariant::Three),
        other => Err(Error::UnsupportedMethod(format!(
            "{other} is not an information criterion"
        ))),
    }
}

/// Run every requested criterion method; failures are collected per
/// method instead of aborting the batch.
pub fn estimate_all(
    spec: &EigenSpectrum,
    cfg: &EstimatorConfig,
    methods: &[Method],
) -> Vec<(Method, Result<RankEstimate>)> {
    methods
        .iter()
        .map(|&m| (m, estimate(spec, cfg, m)))
        .collect()
}
