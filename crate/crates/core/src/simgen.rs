//! Deterministic simulation engine: synthetic spiked populations, data
//! generation under several noise laws, and replicated accuracy studies.
//!
//! Reproducibility contract: every replication derives its own generator
//! from `(master_seed, setting_id, replication_index)` through a
//! splitmix64 chain seeding ChaCha8, and aggregation is an
//! order-independent reduction, so results are identical across thread
//! counts and run-to-run.

#[cfg(not(feature = "std"))]
use crate::fmath::F64Ext as _;

use crate::alt::{self, BemaConfig, BemaReference, EdConfig};
use crate::criteria::{self, EstimatorConfig};
use crate::gap::{check_gap, gap_row_values, GapReport, GapRowValues};
use crate::linalg::{orthonormalize_qr, sym_eigenvalues, Mat};
use crate::rmt::{MpModel, SpectralDistribution};
use crate::spectra::{
    corr_eigenvalues, cov_diagonal, cov_eigenvalues, CovDivisor, DataMatrix, EigenSpectrum,
    SpectrumSource,
};
use crate::{seed, Error, Method, Result};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution, Exp, LogNormal, Pareto, Poisson, StandardNormal, StudentT};

/// The four bulk spectral laws used by the studies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HKind {
    /// Beta(3, 3) on `[0, 1]`.
    H1,
    /// `min((X + 1)/50, 1)` for Poisson(24) `X`.
    H2,
    /// `min(X, 1)` for exponential `X` with mean 0.63.
    H3,
    /// Point mass at 1.
    H4,
}

impl HKind {
    pub const ALL: [HKind; 4] = [HKind::H1, HKind::H2, HKind::H3, HKind::H4];

    pub fn name(self) -> &'static str {
        match self {
            HKind::H1 => "h1",
            HKind::H2 => "h2",
            HKind::H3 => "h3",
            HKind::H4 => "h4",
        }
    }

    pub fn parse(s: &str) -> Result<HKind> {
        match s.trim().to_lowercase().as_str() {
            "h1" => Ok(HKind::H1),
            "h2" => Ok(HKind::H2),
            "h3" => Ok(HKind::H3),
            "h4" => Ok(HKind::H4),
            other => Err(Error::UnknownDistribution(other.into())),
        }
    }

    /// The analytic law as a quadrature-plus-atoms model.
    pub fn model(self) -> Result<SpectralDistribution> {
        match self {
            HKind::H1 => SpectralDistribution::beta(3.0, 3.0),
            HKind::H2 => SpectralDistribution::trunc_poisson(24.0, 50.0, 1.0),
            HKind::H3 => SpectralDistribution::trunc_exp(0.63, 1.0),
            HKind::H4 => SpectralDistribution::point(1.0),
        }
    }

    /// Upper support edge of the law.
    pub fn support_upper(self) -> f64 {
        1.0
    }

    fn sample_one(self, rng: &mut impl Rng) -> f64 {
        match self {
            HKind::H1 => Beta::new(3.0, 3.0).unwrap().sample(rng),
            HKind::H2 => {
                let draws: f64 = Poisson::new(24.0).unwrap().sample(rng);
                ((draws + 1.0) / 50.0).min(1.0)
            }
            HKind::H3 => {
                let x: f64 = Exp::new(1.0 / 0.63).unwrap().sample(rng);
                x.min(1.0)
            }
            HKind::H4 => 1.0,
        }
    }
}

/// `count` iid draws from the named law.
pub fn sample_h(h: HKind, count: usize, rng: &mut impl Rng) -> Vec<f64> {
    (0..count).map(|_| h.sample_one(rng)).collect()
}

/// How the leading (spiked) population eigenvalues are generated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpikeScheme {
    /// `lambda_j = U_j + lambda_r0` for `j < r0`, sorted descending.
    UniformShift,
    /// Fixed top eigenvalue; the middle ones follow the uniform shift.
    ExplicitLambda1(f64),
    /// `lambda_j = lambda_r0 * alpha^(r0 - j)` with ratio `alpha > 1`.
    Geometric(f64),
}

/// How the population eigenvector matrix is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaScheme {
    /// Uniform over the orthogonal group.
    Haar,
    /// Block diagonal with `K` independent Haar blocks.
    Block(usize),
}

/// Distribution of the standardized noise entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NoiseLaw {
    Gaussian,
    /// Student t with 5 degrees of freedom, scaled to unit variance.
    StudentT5,
    /// Pareto with shape 5 and scale 1, standardized.
    Pareto51,
    /// Log-normal(0, 1), standardized.
    LogNormal01,
}

impl NoiseLaw {
    pub fn name(self) -> &'static str {
        match self {
            NoiseLaw::Gaussian => "gaussian",
            NoiseLaw::StudentT5 => "t5",
            NoiseLaw::Pareto51 => "pareto",
            NoiseLaw::LogNormal01 => "lognormal",
        }
    }

    fn fill_standardized(self, out: &mut [f64], rng: &mut impl Rng) {
        match self {
            NoiseLaw::Gaussian => {
                for v in out.iter_mut() {
                    *v = rng.sample::<f64, _>(StandardNormal);
                }
            }
            NoiseLaw::StudentT5 => {
                let t = StudentT::new(5.0).unwrap();
                let scale = (3.0f64 / 5.0).sqrt(); // Var[t_5] = 5/3
                for v in out.iter_mut() {
                    *v = t.sample(rng) * scale;
                }
            }
            NoiseLaw::Pareto51 => {
                let p = Pareto::new(1.0, 5.0).unwrap();
                let mean = 5.0 / 4.0;
                let sd = (5.0f64 / 48.0).sqrt();
                for v in out.iter_mut() {
                    *v = (p.sample(rng) - mean) / sd;
                }
            }
            NoiseLaw::LogNormal01 => {
                let l = LogNormal::new(0.0, 1.0).unwrap();
                let e = core::f64::consts::E;
                let mean = e.sqrt();
                let sd = ((e - 1.0) * e).sqrt();
                for v in out.iter_mut() {
                    *v = (l.sample(rng) - mean) / sd;
                }
            }
        }
    }
}

/// Noise variance used by the PC criteria.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sigma2Policy {
    /// Substitute the analytic mean of the bulk law.
    MuH,
    /// Estimate as the tail mean beyond the search bound.
    TailEstimate,
    Fixed(f64),
}

/// One simulation cell.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub setting_id: u64,
    pub n: usize,
    pub p: usize,
    pub h: HKind,
    pub r0: usize,
    pub lambda_r0: f64,
    pub spike_scheme: SpikeScheme,
    pub gamma_scheme: GammaScheme,
    pub noise_law: NoiseLaw,
    /// Number of replications.
    pub t: usize,
    pub master_seed: u64,
    /// Search bound; defaults to `floor(2 sqrt(min(n, p)))`.
    pub q: Option<usize>,
    pub sigma2: Sigma2Policy,
}

impl ScenarioConfig {
    pub fn new(n: usize, p: usize, h: HKind, r0: usize, lambda_r0: f64) -> ScenarioConfig {
        ScenarioConfig {
            setting_id: 0,
            n,
            p,
            h,
            r0,
            lambda_r0,
            spike_scheme: SpikeScheme::UniformShift,
            gamma_scheme: GammaScheme::Haar,
            noise_law: NoiseLaw::Gaussian,
            t: 1,
            master_seed: 0,
            q: None,
            sigma2: Sigma2Policy::MuH,
        }
    }

    pub fn q(&self) -> usize {
        self.q
            .unwrap_or_else(|| EstimatorConfig::default_q(self.n, self.p))
    }

    pub fn validate(&self) -> Result<()> {
        let q = self.q();
        if self.t < 1 {
            return Err(Error::config("at least one replication is required"));
        }
        if self.r0 > 0 && (!self.lambda_r0.is_finite() || self.lambda_r0 <= 0.0) {
            return Err(Error::config("lambda_r0 must be positive"));
        }
        if !(self.r0 < q.min(self.n.min(self.p)) && q < self.n.min(self.p)) {
            return Err(Error::config(format!(
                "need r0 < q < min(n, p), got r0 = {}, q = {q}, min = {}",
                self.r0,
                self.n.min(self.p)
            )));
        }
        if self.r0 >= self.p {
            return Err(Error::config("r0 must be smaller than p"));
        }
        if let SpikeScheme::Geometric(alpha) = self.spike_scheme {
            if alpha <= 1.0 {
                return Err(Error::config("geometric spike ratio must exceed 1"));
            }
        }
        if let GammaScheme::Block(k) = self.gamma_scheme {
            if k == 0 || k > self.p {
                return Err(Error::config("block count must be in [1, p]"));
            }
        }
        if let Sigma2Policy::Fixed(v) = self.sigma2 {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::config("fixed noise variance must be positive"));
            }
        }
        Ok(())
    }

    /// The generator for one replication of this scenario.
    pub fn replication_rng(&self, index: usize) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed::mix(&[
            self.master_seed,
            self.setting_id,
            index as u64,
        ]))
    }

    fn estimator_config(&self) -> Result<EstimatorConfig> {
        let mut cfg = EstimatorConfig::new(self.q());
        cfg.noise_variance = match self.sigma2 {
            Sigma2Policy::MuH => Some(self.h.model()?.mean()),
            Sigma2Policy::TailEstimate => None,
            Sigma2Policy::Fixed(v) => Some(v),
        };
        Ok(cfg)
    }
}

/// The spiked part of the population spectrum, descending.
pub fn build_spikes(cfg: &ScenarioConfig, rng: &mut impl Rng) -> Result<Vec<f64>> {
    let r0 = cfg.r0;
    if r0 == 0 {
        return Ok(Vec::new());
    }
    let lam = cfg.lambda_r0;
    let mut spikes = match cfg.spike_scheme {
        SpikeScheme::UniformShift => {
            let mut s: Vec<f64> = (0..r0 - 1).map(|_| lam + rng.random::<f64>()).collect();
            s.sort_by(|a, b| b.total_cmp(a));
            s.push(lam);
            s
        }
        SpikeScheme::ExplicitLambda1(top) => {
            if r0 == 1 {
                vec![top]
            } else {
                let mut s: Vec<f64> = (0..r0 - 2).map(|_| lam + rng.random::<f64>()).collect();
                s.sort_by(|a, b| b.total_cmp(a));
                let mut out = vec![top];
                out.extend(s);
                out.push(lam);
                out
            }
        }
        SpikeScheme::Geometric(alpha) => (0..r0)
            .map(|j| lam * alpha.powi((r0 - 1 - j) as i32))
            .collect(),
    };
    // descending by construction except for an explicit top below the rest
    spikes.sort_by(|a, b| b.total_cmp(a));
    Ok(spikes)
}

/// A population eigenvector matrix, dense or block diagonal.
#[derive(Debug, Clone)]
pub struct GammaMatrix {
    /// `(column offset, block)`; a single block at offset 0 is dense.
    blocks: Vec<(usize, Mat)>,
    p: usize,
}

impl GammaMatrix {
    pub fn p(&self) -> usize {
        self.p
    }

    /// Materialize as a dense row-major matrix.
    pub fn to_dense(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.p * self.p];
        for (off, b) in &self.blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(off + i) * self.p + (off + j)] = b.at(i, j);
                }
            }
        }
        out
    }

    /// `x * Gamma` or `x * Gamma^T`, block by block.
    fn apply_right(&self, x: &Mat, transpose: bool) -> Mat {
        let mut out = Mat::zeros(x.rows, self.p);
        for (off, b) in &self.blocks {
            let width = b.rows;
            // gemm on the column slice [off, off + width)
            unsafe {
                let (rsb, csb) = if transpose {
                    (1, width as isize)
                } else {
                    (width as isize, 1)
                };
                matrixmultiply::dgemm(
                    x.rows,
                    width,
                    width,
                    1.0,
                    x.data.as_ptr().add(*off),
                    x.cols as isize,
                    1,
                    b.data.as_ptr(),
                    rsb,
                    csb,
                    0.0,
                    out.data.as_mut_ptr().add(*off),
                    out.cols as isize,
                    1,
                );
            }
        }
        out
    }
}

/// A Haar-distributed orthogonal matrix.
pub fn haar_orthogonal(p: usize, rng: &mut impl Rng) -> GammaMatrix {
    let mut a = Mat::zeros(p, p);
    for v in a.data.iter_mut() {
        *v = rng.sample::<f64, _>(StandardNormal);
    }
    let q = orthonormalize_qr(&mut a);
    GammaMatrix {
        blocks: vec![(0, q)],
        p,
    }
}

/// Block-diagonal orthogonal matrix with `k` independent Haar blocks of
/// size `floor(p/k)`; the last block absorbs the remainder.
pub fn block_orthogonal(p: usize, k: usize, rng: &mut impl Rng) -> Result<GammaMatrix> {
    if k == 0 || k > p {
        return Err(Error::config("block count must be in [1, p]"));
    }
    let base = p / k;
    let mut blocks = Vec::with_capacity(k);
    let mut off = 0;
    for i in 0..k {
        let size = if i + 1 == k { p - off } else { base };
        let mut a = Mat::zeros(size, size);
        for v in a.data.iter_mut() {
            *v = rng.sample::<f64, _>(StandardNormal);
        }
        blocks.push((off, orthonormalize_qr(&mut a)));
        off += size;
    }
    Ok(GammaMatrix { blocks, p })
}

/// Block sizes produced by [`block_orthogonal`].
pub fn block_sizes(p: usize, k: usize) -> Vec<usize> {
    let base = p / k;
    let mut sizes = vec![base; k - 1];
    sizes.push(p - base * (k - 1));
    sizes
}

/// A synthetic population: eigenvalues plus (optionally) the eigenvector
/// matrix. The covariance square root is kept in the factored form
/// `Gamma diag(sqrt(lambda)) Gamma^T`.
#[derive(Debug, Clone)]
pub struct PopulationModel {
    pub gamma: Option<GammaMatrix>,
    /// Descending population eigenvalues.
    pub eigvals: Vec<f64>,
    pub r0: usize,
    pub h: HKind,
}

impl PopulationModel {
    /// Materialize the symmetric square root (identity eigenvectors give
    /// a diagonal root). Intended for small-`p` checks.
    pub fn sigma_root_dense(&self) -> Vec<f64> {
        let p = self.eigvals.len();
        let sq: Vec<f64> = self.eigvals.iter().map(|v| v.sqrt()).collect();
        match &self.gamma {
            None => {
                let mut out = vec![0.0; p * p];
                for j in 0..p {
                    out[j * p + j] = sq[j];
                }
                out
            }
            Some(g) => {
                let mut gd = Mat {
                    data: g.to_dense(),
                    rows: p,
                    cols: p,
                };
                gd.scale_columns(&sq);
                let dense = Mat {
                    data: g.to_dense(),
                    rows: p,
                    cols: p,
                };
                gd.mul(&dense.transpose()).data
            }
        }
    }
}

/// Build the population for one replication. `with_gamma` controls
/// whether the eigenvector matrix is drawn; spectra of Gaussian data are
/// rotation invariant, so spectrum-only pipelines skip it.
pub fn build_population(
    cfg: &ScenarioConfig,
    with_gamma: bool,
    rng: &mut impl Rng,
) -> Result<PopulationModel> {
    let spikes = build_spikes(cfg, rng)?;
    let mut bulk = sample_h(cfg.h, cfg.p - cfg.r0, rng);
    bulk.sort_by(|a, b| b.total_cmp(a));
    let mut eigvals = spikes;
    eigvals.extend(bulk);
    let gamma = if with_gamma {
        Some(match cfg.gamma_scheme {
            GammaScheme::Haar => haar_orthogonal(cfg.p, rng),
            GammaScheme::Block(k) => block_orthogonal(cfg.p, k, rng)?,
        })
    } else {
        None
    };
    Ok(PopulationModel {
        gamma,
        eigvals,
        r0: cfg.r0,
        h: cfg.h,
    })
}

/// Draw `n` observations `x_i = Sigma^(1/2) z_i` with standardized noise.
pub fn draw_data(
    model: &PopulationModel,
    n: usize,
    noise_law: NoiseLaw,
    rng: &mut impl Rng,
) -> Result<DataMatrix> {
    let p = model.eigvals.len();
    let mut z = Mat::zeros(n, p);
    noise_law.fill_standardized(&mut z.data, rng);
    let sq: Vec<f64> = model.eigvals.iter().map(|v| v.sqrt()).collect();
    let x = match &model.gamma {
        None => {
            z.scale_columns(&sq);
            z
        }
        Some(g) => {
            let mut y = g.apply_right(&z, false);
            y.scale_columns(&sq);
            g.apply_right(&y, true)
        }
    };
    DataMatrix::new(n, p, x.data)
}

/// Covariance spectrum without materializing the data matrix, valid for
/// Gaussian noise by rotation invariance.
fn spectrum_fast(
    cfg: &ScenarioConfig,
    eigvals: &[f64],
    rng: &mut impl Rng,
) -> Result<EigenSpectrum> {
    let (n, p) = (cfg.n, cfg.p);
    let mut z = Mat::zeros(n, p);
    NoiseLaw::Gaussian.fill_standardized(&mut z.data, rng);
    z.center_columns();
    let sq: Vec<f64> = eigvals.iter().map(|v| v.sqrt()).collect();
    z.scale_columns(&sq);
    let div = (n - 1) as f64;
    let mut m = if p <= n {
        z.gram_t(1.0 / div)
    } else {
        z.gram(1.0 / div)
    };
    let side = m.rows;
    let mut ev = sym_eigenvalues(&mut m.data, side)?;
    ev.sort_by(|a, b| b.total_cmp(a));
    for v in ev.iter_mut() {
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    ev.truncate(p);
    while ev.len() < p {
        ev.push(0.0);
    }
    EigenSpectrum::new(ev, n, p, SpectrumSource::Covariance)
}

/// The per-method outcomes of one replication (`None` records a
/// per-method failure).
#[derive(Debug, Clone, PartialEq)]
pub struct ReplicationOutcome {
    pub index: usize,
    pub results: Vec<(Method, Option<usize>)>,
}

/// Options for methods that need extra machinery during a study.
#[derive(Debug, Clone, Default)]
pub struct StudyOptions {
    /// BEMA configuration; the reference table is built once per study.
    pub bema: Option<BemaConfig>,
}

/// Execute one replication: generate the population and data, then run
/// every requested method. Deterministic in `(cfg, methods, index)`.
pub fn run_replication(
    cfg: &ScenarioConfig,
    methods: &[Method],
    bema: Option<(&BemaConfig, &BemaReference)>,
    index: usize,
) -> Result<ReplicationOutcome> {
    cfg.validate()?;
    let mut rng = cfg.replication_rng(index);
    let needs_data =
        cfg.noise_law != NoiseLaw::Gaussian || methods.iter().any(|m| !m.spectrum_only());
    let est_cfg = cfg.estimator_config()?;

    let (spec, diag, corr) = if needs_data {
        let model = build_population(cfg, true, &mut rng)?;
        let data = draw_data(&model, cfg.n, cfg.noise_law, &mut rng)?;
        let spec = cov_eigenvalues(&data, true, CovDivisor::NMinusOne)?;
        let diag = if methods.contains(&Method::Dpa) {
            Some(cov_diagonal(&data, true, CovDivisor::NMinusOne))
        } else {
            None
        };
        let corr = if methods.contains(&Method::Act) {
            Some(corr_eigenvalues(&data)?)
        } else {
            None
        };
        (spec, diag, corr)
    } else {
        let model = build_population(cfg, false, &mut rng)?;
        (spectrum_fast(cfg, &model.eigvals, &mut rng)?, None, None)
    };

    let q = cfg.q();
    let results = methods
        .iter()
        .map(|&m| {
            let r_hat = match m {
                Method::Aic
                | Method::Bic
                | Method::Gic
                | Method::Pc1
                | Method::Pc2
                | Method::Pc3
                | Method::Ic1
                | Method::Ic2
                | Method::Ic3 => criteria::estimate(&spec, &est_cfg, m).ok().map(|e| e.r_hat),
                Method::Act => corr
                    .as_ref()
                    .and_then(|c| alt::act(c).ok())
                    .map(|e| e.r_hat),
                Method::Dpa => diag
                    .as_ref()
                    .and_then(|d| alt::dpa(&spec, d).ok())
                    .map(|e| e.r_hat),
                Method::Bema => bema.and_then(|(bcfg, bref)| {
                    alt::bema_with_reference(&spec, bcfg, bref, &mut rng)
                        .ok()
                        .map(|e| e.r_hat)
                }),
                Method::Ed => alt::ed(&spec, &EdConfig::new(q)).ok().map(|e| e.r_hat),
                Method::On => alt::on(&spec, q).ok().map(|e| e.r_hat),
                Method::Er => alt::er(&spec, q).ok().map(|e| e.r_hat),
                Method::Gr => alt::gr(&spec, q).ok().map(|e| e.r_hat),
            };
            (m, r_hat)
        })
        .collect();
    Ok(ReplicationOutcome { index, results })
}

/// Accuracy of one method over a study.
#[derive(Debug, Clone)]
pub struct MethodAccuracy {
    pub method: Method,
    pub hits: usize,
    pub total: usize,
    pub failures: usize,
    pub mean_r_hat: Option<f64>,
    /// Gap-condition evaluation for criterion methods with spikes.
    pub gap: Option<GapReport>,
}

impl MethodAccuracy {
    /// Failures count as misses.
    pub fn hit_rate(&self) -> f64 {
        self.hits as f64 / self.total as f64
    }
}

/// Aggregated accuracy for one scenario.
#[derive(Debug, Clone)]
pub struct AccuracyTable {
    pub setting_id: u64,
    pub n: usize,
    pub p: usize,
    pub h: HKind,
    pub r0: usize,
    pub lambda_r0: f64,
    pub t: usize,
    pub rows: Vec<MethodAccuracy>,
}

/// Order-independent reduction of replication outcomes.
pub fn aggregate(
    cfg: &ScenarioConfig,
    methods: &[Method],
    outcomes: &[ReplicationOutcome],
) -> Result<AccuracyTable> {
    let gap_model = if cfg.r0 > 0 {
        Some(MpModel::new(cfg.p as f64 / cfg.n as f64, cfg.h.model()?)?)
    } else {
        None
    };
    let rows = methods
        .iter()
        .map(|&m| {
            let mut hits = 0;
            let mut failures = 0;
            let mut sum = 0.0;
            let mut got = 0usize;
            for o in outcomes {
                match o.results.iter().find(|(mm, _)| *mm == m) {
                    Some((_, Some(r))) => {
                        if *r == cfg.r0 {
                            hits += 1;
                        }
                        sum += *r as f64;
                        got += 1;
                    }
                    _ => failures += 1,
                }
            }
            let gap = match (&gap_model, m.is_criterion()) {
                (Some(model), true) => check_gap(m, model, cfg.lambda_r0, cfg.n, cfg.p).ok(),
                _ => None,
            };
            MethodAccuracy {
                method: m,
                hits,
                total: outcomes.len(),
                failures,
                mean_r_hat: (got > 0).then(|| sum / got as f64),
                gap,
            }
        })
        .collect();
    Ok(AccuracyTable {
        setting_id: cfg.setting_id,
        n: cfg.n,
        p: cfg.p,
        h: cfg.h,
        r0: cfg.r0,
        lambda_r0: cfg.lambda_r0,
        t: outcomes.len(),
        rows,
    })
}

/// Run all `T` replications sequentially and aggregate.
pub fn run_study(
    cfg: &ScenarioConfig,
    methods: &[Method],
    opts: &StudyOptions,
) -> Result<AccuracyTable> {
    cfg.validate()?;
    let bema_cfg = opts.bema.clone().unwrap_or_default();
    let bema_pair = if methods.contains(&Method::Bema) {
        Some((
            bema_cfg.clone(),
            alt::bema_reference(cfg.n, cfg.p, &bema_cfg)?,
        ))
    } else {
        None
    };
    let outcomes: Vec<ReplicationOutcome> = (0..cfg.t)
        .map(|i| run_replication(cfg, methods, bema_pair.as_ref().map(|(c, r)| (c, r)), i))
        .collect::<Result<_>>()?;
    aggregate(cfg, methods, &outcomes)
}

/// Gap-table columns evaluated the way a finite-`(n, p)` study sees them.
///
/// The spike map `psi` and the bulk mean are insensitive to which `p - r0`
/// bulk eigenvalues were realized (the dependence is a smooth integral),
/// so those columns come from the analytic model. The support edge `b` is
/// different: it is pinned by the largest realized bulk eigenvalue, so at
/// finite `p` the observed noise edge is the edge of the *realized*
/// population, not of the limit law. The `b` column (and its gain, and
/// the kappa pair that integrates up to the edge) is therefore averaged
/// over `reps` realized populations drawn from `H`.
pub fn realized_gap_values(
    n: usize,
    p: usize,
    r0: usize,
    lambda_r0: f64,
    h: HKind,
    reps: usize,
    seed_value: u64,
) -> Result<GapRowValues> {
    if reps == 0 {
        return Err(Error::config("at least one replication is required"));
    }
    let analytic_model = MpModel::new(p as f64 / n as f64, h.model()?)?;
    let analytic = gap_row_values(&analytic_model, lambda_r0, n, p)?;
    let (mut b_acc, mut kp_acc, mut kb_acc) = (0.0, 0.0, 0.0);
    for rep in 0..reps {
        let mut rng = ChaCha8Rng::seed_from_u64(seed::mix(&[
            0x6A9_u64, seed_value, n as u64, p as u64, rep as u64,
        ]));
        let bulk = sample_h(h, p - r0, &mut rng);
        let model = MpModel::new(
            p as f64 / n as f64,
            SpectralDistribution::from_values(&bulk)?,
        )?;
        let v = gap_row_values(&model, lambda_r0, n, p)?;
        b_acc += v.b;
        kp_acc += v.two_kappa_psi;
        kb_acc += v.two_kappa_b;
    }
    let k = reps as f64;
    let b = b_acc / k;
    Ok(GapRowValues {
        b,
        g_b: crate::gap::g(b / analytic.mu_h)?,
        two_kappa_psi: kp_acc / k,
        two_kappa_b: kb_acc / k,
        ..analytic
    })
}
