//! Comparison rank estimators: bulk-edge methods (ACT, DPA, BEMA) and
//! eigenvalue-gap methods (ED, ON, ER, GR).

#[cfg(not(feature = "std"))]
use crate::fmath::F64Ext as _;

use crate::criteria::{RankEstimate, RankMeta};
use crate::linalg::{sym_eigenvalues, Mat};
use crate::rmt::{upper_edge, MpModel, SpectralDistribution};
use crate::spectra::EigenSpectrum;
use crate::{seed, Error, Method, Result};
use alloc::format;
use alloc::vec::Vec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};

fn meta(spec: &EigenSpectrum, converged: bool) -> RankMeta {
    RankMeta {
        sigma_sq: None,
        n: spec.n(),
        p: spec.p(),
        converged,
    }
}

fn estimate_with_threshold(
    method: Method,
    spec: &EigenSpectrum,
    r_hat: usize,
    curve: Vec<(usize, f64)>,
    q: usize,
    threshold: f64,
    converged: bool,
) -> RankEstimate {
    RankEstimate {
        method,
        r_hat,
        curve,
        q,
        meta: RankMeta {
            sigma_sq: Some(threshold),
            ..meta(spec, converged)
        },
    }
}

/// ACT: de-biases each leading correlation eigenvalue through a finite
/// sample companion Stieltjes transform and thresholds the corrected
/// values at `1 + sqrt(p / (n - 1))`.
pub fn act(spec_corr: &EigenSpectrum) -> Result<RankEstimate> {
    let ev = spec_corr.eigenvalues();
    let (n, p) = (spec_corr.n(), spec_corr.p());
    if n < 2 || p < 2 {
        return Err(Error::config("ACT needs n >= 2 and p >= 2"));
    }
    let c_hat = p as f64 / (n - 1) as f64;
    let threshold = 1.0 + c_hat.sqrt();
    let mut curve = Vec::new();
    let mut r_hat = 0;
    for j in 1..p {
        let lam = ev[j - 1];
        if ev[j] <= 0.0 {
            // zero-padded tail: the transform is undefined from here on
            break;
        }
        if lam == 0.0 {
            return Err(Error::domain("ACT needs positive eigenvalues"));
        }
        let blend = 0.75 * lam + 0.25 * ev[j] - lam;
        if blend == 0.0 {
            return Err(Error::domain(format!(
                "ACT interpolation denominator vanished at j = {j}"
            )));
        }
        let mut sum = 1.0 / blend;
        for &l in &ev[j..] {
            if l == lam {
                return Err(Error::domain(format!(
                    "ACT encountered a tied eigenvalue at j = {j}"
                )));
            }
            sum += 1.0 / (l - lam);
        }
        let ratio = (p - j) as f64 / (n - 1) as f64;
        let m_nj = sum / (p - j) as f64;
        let companion = -(1.0 - ratio) / lam + ratio * m_nj;
        if companion == 0.0 {
            return Err(Error::domain(format!(
                "ACT companion transform vanished at j = {j}"
            )));
        }
        let corrected = -1.0 / companion;
        curve.push((j, corrected));
        if corrected > threshold {
            r_hat = j;
        }
    }
    Ok(estimate_with_threshold(
        Method::Act,
        spec_corr,
        r_hat,
        curve,
        p - 1,
        threshold,
        true,
    ))
}

/// DPA: deterministic parallel analysis. The bulk edge of the model
/// `(p/n, H)` with `H` the empirical law of the covariance diagonal is
/// used as the detection threshold.
pub fn dpa(spec: &EigenSpectrum, diag_values: &[f64]) -> Result<RankEstimate> {
    let (n, p) = (spec.n(), spec.p());
    if diag_values.len() != p {
        return Err(Error::config(format!(
            "diagonal has {} entries, expected p = {p}",
            diag_values.len()
        )));
    }
    if diag_values.iter().any(|&v| v < 0.0 || !v.is_finite()) {
        return Err(Error::config(
            "diagonal entries must be finite and nonnegative",
        ));
    }
    let h = SpectralDistribution::from_values(diag_values)?;
    let model = MpModel::new(p as f64 / n as f64, h)?;
    let b_hat = upper_edge(&model)?.edge;
    let r_hat = spec.eigenvalues().iter().filter(|&&v| v > b_hat).count();
    Ok(estimate_with_threshold(
        Method::Dpa,
        spec,
        r_hat,
        Vec::new(),
        p,
        b_hat,
        true,
    ))
}

/// BEMA configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct BemaConfig {
    /// Bulk trimming fraction.
    pub alpha: f64,
    /// Quantile level for the detection threshold.
    pub beta: f64,
    /// Monte-Carlo repetitions for the threshold.
    pub m_draws: usize,
    /// Candidate Gamma shape parameters.
    pub theta_grid: Vec<f64>,
    /// Pure-noise draws per grid point when building reference quantiles.
    pub reference_draws: usize,
}

impl Default for BemaConfig {
    fn default() -> Self {
        // 40 log-spaced shapes over [0.1, 100]
        let theta_grid = (0..40)
            .map(|i| {
                let t = i as f64 / 39.0;
                10f64.powf(-1.0 + 3.0 * t)
            })
            .collect();
        BemaConfig {
            alpha: 0.2,
            beta: 0.1,
            m_draws: 500,
            theta_grid,
            reference_draws: 50,
        }
    }
}

impl BemaConfig {
    fn validate(&self, n: usize, p: usize) -> Result<()> {
        let m = n.min(p) as f64;
        if !(self.alpha > 0.0 && self.alpha < 0.5) {
            return Err(Error::config("bulk trimming fraction must be in (0, 0.5)"));
        }
        if self.alpha * m < 1.0 {
            return Err(Error::config("alpha * min(n, p) must be at least 1"));
        }
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return Err(Error::config("quantile level must be in (0, 1)"));
        }
        if self.m_draws < 50 {
            return Err(Error::config("Monte-Carlo repetitions must be at least 50"));
        }
        if self.theta_grid.is_empty() || self.theta_grid.iter().any(|&t| !t.is_finite() || t <= 0.0)
        {
            return Err(Error::config("theta grid must be nonempty and positive"));
        }
        if self.reference_draws == 0 {
            return Err(Error::config("reference draws must be positive"));
        }
        Ok(())
    }

    /// Bulk window (0-based, half-open) on a descending spectrum.
    fn bulk_window(&self, n: usize, p: usize) -> (usize, usize) {
        let m = n.min(p) as f64;
        let lo = libm::ceil(self.alpha * m) as usize;
        let hi = libm::floor((1.0 - self.alpha) * m) as usize;
        (lo - 1, hi.min(p))
    }
}

/// Precomputed reference quantiles of pure Gamma-variance noise spectra,
/// one averaged bulk window per candidate shape. Building one is the
/// expensive part of BEMA; reuse it across spectra sharing `(n, p)`.
#[derive(Debug, Clone)]
pub struct BemaReference {
    n: usize,
    p: usize,
    window: (usize, usize),
    /// Per theta-grid entry, the averaged bulk eigenvalues at unit scale.
    quantiles: Vec<Vec<f64>>,
}

/// Largest-eigenvalue list of `(1/n) X^T X` for `X` with iid standard
/// normal entries column-scaled by `sqrt(d_j)`.
fn gamma_noise_spectrum(n: usize, p: usize, d: &[f64], rng: &mut impl Rng) -> Result<Vec<f64>> {
    let mut x = Mat::zeros(n, p);
    for v in x.data.iter_mut() {
        *v = rng.sample::<f64, _>(StandardNormal);
    }
    let scales: Vec<f64> = d.iter().map(|&v| v.sqrt()).collect();
    x.scale_columns(&scales);
    let mut g = if p <= n {
        x.gram_t(1.0 / n as f64)
    } else {
        x.gram(1.0 / n as f64)
    };
    let side = g.rows;
    let mut ev = sym_eigenvalues(&mut g.data, side)?;
    ev.sort_by(|a, b| b.total_cmp(a));
    Ok(ev)
}

/// Build the reference table for `(n, p)` under `cfg`. The random draws
/// use a fixed internal seed so the table is a pure function of its
/// arguments.
pub fn bema_reference(n: usize, p: usize, cfg: &BemaConfig) -> Result<BemaReference> {
    cfg.validate(n, p)?;
    let window = cfg.bulk_window(n, p);
    if window.0 >= window.1 {
        return Err(Error::config("empty bulk window"));
    }
    let width = window.1 - window.0;
    let mut quantiles = Vec::with_capacity(cfg.theta_grid.len());
    for (ti, &theta) in cfg.theta_grid.iter().enumerate() {
        let gamma = Gamma::new(theta, 1.0 / theta)
            .map_err(|e| Error::config(format!("invalid Gamma shape {theta}: {e}")))?;
        let mut acc = alloc::vec![0.0f64; width];
        for draw in 0..cfg.reference_draws {
            let mut rng = ChaCha8Rng::seed_from_u64(seed::mix(&[
                0xBE3A_u64,
                n as u64,
                p as u64,
                ti as u64,
                draw as u64,
            ]));
            let d: Vec<f64> = (0..p).map(|_| gamma.sample(&mut rng)).collect();
            let ev = gamma_noise_spectrum(n, p, &d, &mut rng)?;
            for (a, &v) in acc.iter_mut().zip(&ev[window.0..window.1]) {
                *a += v;
            }
        }
        for a in acc.iter_mut() {
            *a /= cfg.reference_draws as f64;
        }
        quantiles.push(acc);
    }
    Ok(BemaReference {
        n,
        p,
        window,
        quantiles,
    })
}

/// BEMA with a prebuilt reference table. The returned estimate carries
/// the detection threshold in `meta.sigma_sq` and the fitted grid point
/// as the single `(index, theta)` entry of `curve`.
pub fn bema_with_reference(
    spec: &EigenSpectrum,
    cfg: &BemaConfig,
    reference: &BemaReference,
    rng: &mut impl Rng,
) -> Result<RankEstimate> {
    let (n, p) = (spec.n(), spec.p());
    cfg.validate(n, p)?;
    if reference.n != n || reference.p != p {
        return Err(Error::config(format!(
            "reference table is for ({}, {}), spectrum is ({n}, {p})",
            reference.n, reference.p
        )));
    }
    let (lo, hi) = reference.window;
    let observed = &spec.eigenvalues()[lo..hi];

    // Profile the scale per shape by least squares, pick the best shape.
    let mut best: Option<(usize, f64, f64)> = None; // (index, sigma^2, residual)
    for (ti, q) in reference.quantiles.iter().enumerate() {
        let qq: f64 = q.iter().map(|v| v * v).sum();
        if qq <= 0.0 {
            continue;
        }
        let qy: f64 = q.iter().zip(observed).map(|(a, b)| a * b).sum();
        let sigma2 = qy / qq;
        if !(sigma2 > 0.0 && sigma2.is_finite()) {
            continue;
        }
        let resid: f64 = q
            .iter()
            .zip(observed)
            .map(|(a, b)| {
                let d = b - sigma2 * a;
                d * d
            })
            .sum();
        if best.is_none_or(|(_, _, r)| resid < r) {
            best = Some((ti, sigma2, resid));
        }
    }
    let (theta_idx, sigma2, _) =
        best.ok_or_else(|| Error::Fit("no usable shape in the theta grid".into()))?;
    let theta = cfg.theta_grid[theta_idx];

    // Monte-Carlo null distribution of the largest eigenvalue.
    let gamma = Gamma::new(theta, sigma2 / theta)
        .map_err(|e| Error::Fit(format!("fitted Gamma is invalid: {e}")))?;
    let mut tops = Vec::with_capacity(cfg.m_draws);
    for _ in 0..cfg.m_draws {
        let d: Vec<f64> = (0..p).map(|_| gamma.sample(rng)).collect();
        let ev = gamma_noise_spectrum(n, p, &d, rng)?;
        tops.push(ev[0]);
    }
    tops.sort_by(|a, b| a.total_cmp(b));
    let rank = libm::ceil((1.0 - cfg.beta) * cfg.m_draws as f64) as usize;
    let b_hat = tops[rank.clamp(1, cfg.m_draws) - 1];

    let r_hat = spec.eigenvalues().iter().filter(|&&v| v > b_hat).count();
    let mut est = estimate_with_threshold(Method::Bema, spec, r_hat, Vec::new(), p, b_hat, true);
    est.curve.push((theta_idx, theta));
    Ok(est)
}

/// BEMA: fit `(theta, sigma^2)` on the trimmed bulk, then threshold at a
/// Monte-Carlo quantile of the largest pure-noise eigenvalue. Builds a
/// fresh reference table; use [`bema_reference`] plus
/// [`bema_with_reference`] to amortize that cost across spectra.
pub fn bema(spec: &EigenSpectrum, cfg: &BemaConfig, rng: &mut impl Rng) -> Result<RankEstimate> {
    let reference = bema_reference(spec.n(), spec.p(), cfg)?;
    bema_with_reference(spec, cfg, &reference, rng)
}

/// ED configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct EdConfig {
    pub q: usize,
    pub max_iterations: usize,
}

impl EdConfig {
    pub fn new(q: usize) -> Self {
        EdConfig {
            q,
            max_iterations: 50,
        }
    }
}

/// ED: thresholds eigenvalue gaps at twice the slope of a local
/// regression calibrated on the spectrum just past the current rank
/// estimate, iterating until the estimate stabilizes.
pub fn ed(spec: &EigenSpectrum, cfg: &EdConfig) -> Result<RankEstimate> {
    let ev = spec.eigenvalues();
    let p = spec.p();
    if cfg.q < 5 {
        return Err(Error::config("ED needs a search bound of at least 5"));
    }
    if p < cfg.q + 5 {
        return Err(Error::config(format!(
            "ED needs p >= q + 5, got p = {p}, q = {}",
            cfg.q
        )));
    }
    let gaps: Vec<f64> = (0..cfg.q).map(|j| ev[j] - ev[j + 1]).collect();
    let mut j = cfg.q + 1;
    let mut r_hat = usize::MAX;
    let mut delta = 0.0;
    let mut converged = false;
    for _ in 0..cfg.max_iterations {
        // regress the five eigenvalues starting at j on (j-1)^(2/3) ...
        let xs: Vec<f64> = (0..5)
            .map(|k| (((j - 1) + k) as f64).powf(2.0 / 3.0))
            .collect();
        let ys = &ev[j - 1..j + 4];
        let x_mean = xs.iter().sum::<f64>() / 5.0;
        let y_mean = ys.iter().sum::<f64>() / 5.0;
        let mut sxx = 0.0;
        let mut sxy = 0.0;
        for (x, y) in xs.iter().zip(ys) {
            sxx += (x - x_mean) * (x - x_mean);
            sxy += (x - x_mean) * (y - y_mean);
        }
        delta = 2.0 * (sxy / sxx).abs();
        let next = (1..=cfg.q)
            .rev()
            .find(|&jj| {
                let g = gaps[jj - 1];
                if delta == 0.0 {
                    g > 0.0
                } else {
                    g >= delta
                }
            })
            .unwrap_or(0);
        if next == r_hat {
            converged = true;
            break;
        }
        r_hat = next;
        j = r_hat + 1;
    }
    if r_hat == usize::MAX {
        r_hat = 0;
    }
    let curve = gaps.iter().enumerate().map(|(i, &g)| (i + 1, g)).collect();
    Ok(estimate_with_threshold(
        Method::Ed,
        spec,
        r_hat,
        curve,
        cfg.q,
        delta,
        converged,
    ))
}

fn argmax_estimate(
    method: Method,
    spec: &EigenSpectrum,
    q: usize,
    values: Vec<(usize, f64)>,
) -> Result<RankEstimate> {
    let best =
        values
            .iter()
            .filter(|(_, v)| v.is_finite())
            .fold(None::<(usize, f64)>, |acc, &(j, v)| match acc {
                Some((_, bv)) if bv >= v => acc,
                _ => Some((j, v)),
            });
    let (r_hat, _) = best.ok_or_else(|| {
        Error::domain(format!(
            "{method}: no candidate index has a finite statistic"
        ))
    })?;
    Ok(RankEstimate {
        method,
        r_hat,
        curve: values,
        q,
        meta: meta(spec, true),
    })
}

fn check_ratio_bounds(spec: &EigenSpectrum, q: usize, lookahead: usize) -> Result<()> {
    if q < 1 {
        return Err(Error::config("search bound must be at least 1"));
    }
    if q + lookahead > spec.p() {
        return Err(Error::config(format!(
            "search bound q = {q} needs p >= {}, got p = {}",
            q + lookahead,
            spec.p()
        )));
    }
    Ok(())
}

/// ON: argmax of the ratio of successive eigenvalue gaps.
pub fn on(spec: &EigenSpectrum, q: usize) -> Result<RankEstimate> {
    check_ratio_bounds(spec, q, 2)?;
    let ev = spec.eigenvalues();
    let values = (1..=q)
        .map(|j| {
            let num = ev[j - 1] - ev[j];
            let den = ev[j] - ev[j + 1];
            let v = if den == 0.0 {
                f64::NEG_INFINITY
            } else {
                num / den
            };
            (j, v)
        })
        .collect();
    argmax_estimate(Method::On, spec, q, values)
}

/// ER: argmax of the ratio of successive eigenvalues.
pub fn er(spec: &EigenSpectrum, q: usize) -> Result<RankEstimate> {
    check_ratio_bounds(spec, q, 1)?;
    let ev = spec.eigenvalues();
    let values = (1..=q)
        .map(|j| {
            let v = if ev[j] == 0.0 {
                f64::NEG_INFINITY
            } else {
                ev[j - 1] / ev[j]
            };
            (j, v)
        })
        .collect();
    argmax_estimate(Method::Er, spec, q, values)
}

/// GR: argmax of the ratio of successive log growth rates of the
/// eigenvalue tail sums.
pub fn gr(spec: &EigenSpectrum, q: usize) -> Result<RankEstimate> {
    check_ratio_bounds(spec, q, 2)?;
    let ev = spec.eigenvalues();
    let mut tail_sums = alloc::vec![0.0f64; spec.p() + 1];
    for j in (0..spec.p()).rev() {
        tail_sums[j] = tail_sums[j + 1] + ev[j];
    }
    let values = (1..=q)
        .map(|j| {
            // tail_sums[j] = sum of eigenvalues after the j-th (1-based)
            let (t1, t2) = (tail_sums[j], tail_sums[j + 1]);
            let v = if t1 <= 0.0 || t2 <= 0.0 {
                f64::NEG_INFINITY
            } else {
                (ev[j - 1] / t1).ln_1p() / (ev[j] / t2).ln_1p()
            };
            (j, v)
        })
        .collect();
    argmax_estimate(Method::Gr, spec, q, values)
}
