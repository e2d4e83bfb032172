//! Population-side random-matrix machinery.
//!
//! A [`SpectralDistribution`] is a probability law on `[lower, upper]`
//! stored as exact atoms plus quadrature-weighted density nodes. Pairing
//! one with an aspect ratio `c = p/n` gives an [`MpModel`], the
//! generalized Marchenko-Pastur limit of sample covariance spectra. From
//! the model we evaluate the spike map `psi`, its derivative, the support
//! edges of the limiting law, its Stieltjes transform and bulk density,
//! and the penalty limit `kappa`.

#[cfg(not(feature = "std"))]
use crate::fmath::F64Ext as _;

use crate::fmath::ln_gamma;
use crate::quad::gauss_legendre_on;
use crate::{Error, Result};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;

/// Number of quadrature nodes used to discretize each smooth density piece.
pub const QUAD_NODES: usize = 2000;

const MASS_TOL: f64 = 1e-12;

/// A probability law on `[lower, upper]`: exact atoms plus a quadrature
/// representation of the continuous part.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDistribution {
    /// `(location, mass)`, sorted by location, locations distinct.
    atoms: Vec<(f64, f64)>,
    /// `(location, weight)`, sorted by location.
    density_nodes: Vec<(f64, f64)>,
    support_lower: f64,
    support_upper: f64,
}

impl SpectralDistribution {
    /// Build from raw parts and validate the invariants.
    pub fn from_parts(
        mut atoms: Vec<(f64, f64)>,
        density_nodes: Vec<(f64, f64)>,
        support_lower: f64,
        support_upper: f64,
    ) -> Result<Self> {
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        let dist = SpectralDistribution {
            atoms,
            density_nodes,
            support_lower,
            support_upper,
        };
        dist.validate()?;
        Ok(dist)
    }

    /// Point mass at `loc`.
    pub fn point(loc: f64) -> Result<Self> {
        Self::from_parts(vec![(loc, 1.0)], vec![], loc, loc)
    }

    /// Beta(alpha, beta) on `[0, 1]`.
    pub fn beta(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0 && beta > 0.0) {
            return Err(Error::config("beta shapes must be positive"));
        }
        let ln_b = ln_gamma(alpha) + ln_gamma(beta) - ln_gamma(alpha + beta);
        let (x, w) = gauss_legendre_on(QUAD_NODES, 0.0, 1.0);
        let nodes = x
            .into_iter()
            .zip(w)
            .map(|(t, wi)| {
                let pdf = ((alpha - 1.0) * t.ln() + (beta - 1.0) * (1.0 - t).ln() - ln_b).exp();
                (t, wi * pdf)
            })
            .collect();
        Self::from_parts(vec![], nodes, 0.0, 1.0)
    }

    /// `min(X, cap)` for exponential `X` with the given mean: a density on
    /// `[0, cap)` plus an atom of the tail mass at `cap`.
    pub fn trunc_exp(mean: f64, cap: f64) -> Result<Self> {
        if !(mean > 0.0 && cap > 0.0) {
            return Err(Error::config("trunc_exp needs positive mean and cap"));
        }
        let (x, w) = gauss_legendre_on(QUAD_NODES, 0.0, cap);
        let nodes = x
            .into_iter()
            .zip(w)
            .map(|(t, wi)| (t, wi * (-t / mean).exp() / mean))
            .collect();
        let tail = (-cap / mean).exp();
        Self::from_parts(vec![(cap, tail)], nodes, 0.0, cap)
    }

    /// `min((X + 1) / scale, cap)` for Poisson `X` with the given rate.
    /// Atoms are enumerated until the residual tail mass drops below
    /// 1e-12; the tail is merged into the capped location.
    pub fn trunc_poisson(rate: f64, scale: f64, cap: f64) -> Result<Self> {
        if !(rate > 0.0 && scale > 0.0 && cap > 0.0) {
            return Err(Error::config("trunc_poisson needs positive parameters"));
        }
        let mut atoms: Vec<(f64, f64)> = Vec::new();
        let mut mass_at_cap = 0.0;
        let mut pmf = (-rate).exp();
        let mut cum = 0.0;
        let mut k = 0u64;
        while cum < 1.0 - MASS_TOL {
            let loc = ((k as f64 + 1.0) / scale).min(cap);
            if loc >= cap {
                mass_at_cap += pmf;
            } else {
                atoms.push((loc, pmf));
            }
            cum += pmf;
            k += 1;
            pmf *= rate / k as f64;
            if k > 100_000 {
                return Err(Error::config("trunc_poisson enumeration did not terminate"));
            }
        }
        mass_at_cap += 1.0 - cum;
        if mass_at_cap > 0.0 {
            atoms.push((cap, mass_at_cap));
        }
        let lower = atoms.first().map(|a| a.0).unwrap_or(0.0);
        let upper = atoms.last().map(|a| a.0).unwrap_or(cap);
        Self::from_parts(atoms, vec![], lower, upper)
    }

    /// Empirical law: one atom of mass `1/len` per value (equal values merge).
    pub fn from_values(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::config("empty value set"));
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(|a, b| a.total_cmp(b));
        let mass = 1.0 / values.len() as f64;
        let mut atoms: Vec<(f64, f64)> = Vec::new();
        for v in sorted {
            match atoms.last_mut() {
                Some(last) if last.0 == v => last.1 += mass,
                _ => atoms.push((v, mass)),
            }
        }
        let lower = atoms[0].0;
        let upper = atoms[atoms.len() - 1].0;
        Self::from_parts(atoms, vec![], lower, upper)
    }

    /// Weighted mixture of component laws.
    pub fn mixture(components: Vec<(f64, SpectralDistribution)>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::config("empty mixture"));
        }
        let total: f64 = components.iter().map(|(w, _)| w).sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::config(format!(
                "mixture weights sum to {total}, expected 1"
            )));
        }
        let mut atoms: Vec<(f64, f64)> = Vec::new();
        let mut nodes: Vec<(f64, f64)> = Vec::new();
        let mut lower = f64::INFINITY;
        let mut upper = f64::NEG_INFINITY;
        for (w, comp) in components {
            if w <= 0.0 {
                return Err(Error::config("mixture weights must be positive"));
            }
            for &(t, m) in &comp.atoms {
                atoms.push((t, w * m));
            }
            for &(t, m) in &comp.density_nodes {
                nodes.push((t, w * m));
            }
            lower = lower.min(comp.support_lower);
            upper = upper.max(comp.support_upper);
        }
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::new();
        for (t, m) in atoms {
            match merged.last_mut() {
                Some(last) if last.0 == t => last.1 += m,
                _ => merged.push((t, m)),
            }
        }
        nodes.sort_by(|a, b| a.0.total_cmp(&b.0));
        Self::from_parts(merged, nodes, lower, upper)
    }

    /// The same law with every location multiplied by `s > 0`.
    pub fn scaled(&self, s: f64) -> Result<Self> {
        if s <= 0.0 {
            return Err(Error::config("scale factor must be positive"));
        }
        Self::from_parts(
            self.atoms.iter().map(|&(t, m)| (s * t, m)).collect(),
            self.density_nodes
                .iter()
                .map(|&(t, m)| (s * t, m))
                .collect(),
            s * self.support_lower,
            s * self.support_upper,
        )
    }

    pub fn validate(&self) -> Result<()> {
        let mass = self.total_mass();
        if (mass - 1.0).abs() > MASS_TOL {
            return Err(Error::config(format!(
                "total mass {mass} differs from 1 by more than {MASS_TOL:e}"
            )));
        }
        if self.support_lower < 0.0 || self.support_lower > self.support_upper {
            return Err(Error::config("support must satisfy 0 <= lower <= upper"));
        }
        let slack = 1e-12 * self.support_upper.max(1.0);
        for &(t, m) in self.atoms.iter().chain(&self.density_nodes) {
            if !(t >= self.support_lower - slack && t <= self.support_upper + slack) {
                return Err(Error::config(format!("location {t} outside support")));
            }
            if m <= 0.0 {
                return Err(Error::config("masses and weights must be positive"));
            }
        }
        if self.atoms.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::config("atom locations must be distinct"));
        }
        if self.density_nodes.windows(2).any(|w| w[0].0 > w[1].0) {
            return Err(Error::config("density nodes must be sorted"));
        }
        Ok(())
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.1).sum::<f64>()
            + self.density_nodes.iter().map(|n| n.1).sum::<f64>()
    }

    /// First moment of the law.
    pub fn mean(&self) -> f64 {
        self.sum_weighted(|t| t)
    }

    pub fn support(&self) -> (f64, f64) {
        (self.support_lower, self.support_upper)
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn density_nodes(&self) -> &[(f64, f64)] {
        &self.density_nodes
    }

    /// Largest location carrying mass.
    pub(crate) fn max_location(&self) -> f64 {
        let a = self.atoms.last().map(|a| a.0).unwrap_or(f64::NEG_INFINITY);
        let n = self
            .density_nodes
            .last()
            .map(|n| n.0)
            .unwrap_or(f64::NEG_INFINITY);
        a.max(n)
    }

    /// Smallest strictly positive location carrying mass.
    pub(crate) fn min_positive_location(&self) -> Option<f64> {
        self.atoms
            .iter()
            .chain(&self.density_nodes)
            .map(|&(t, _)| t)
            .filter(|&t| t > 0.0)
            .fold(None, |acc, t| Some(acc.map_or(t, |a: f64| a.min(t))))
    }

    #[inline]
    pub(crate) fn sum_weighted(&self, f: impl Fn(f64) -> f64) -> f64 {
        let mut acc = 0.0;
        for &(t, m) in &self.atoms {
            acc += m * f(t);
        }
        for &(t, w) in &self.density_nodes {
            acc += w * f(t);
        }
        acc
    }

    #[inline]
    fn sum_weighted_c(&self, f: impl Fn(f64) -> Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(t, m) in &self.atoms {
            acc += f(t) * m;
        }
        for &(t, w) in &self.density_nodes {
            acc += f(t) * w;
        }
        acc
    }
}

/// Mean of `H`; the normalizer in every gap-condition argument.
pub fn mean_h(h: &SpectralDistribution) -> f64 {
    h.mean()
}

/// A generalized Marchenko-Pastur model `(c, H)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MpModel {
    c: f64,
    h: SpectralDistribution,
}

/// Which support edge an [`EdgeResult`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeSide {
    Lower,
    Upper,
}

/// A stationary point of `psi` and the support edge it maps to.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeResult {
    /// Stationary point of `psi` outside the support of `H`.
    pub lambda_star: f64,
    /// The support edge `psi(lambda_star)` (0 for the lower edge when `c > 1`).
    pub edge: f64,
    pub side: EdgeSide,
    /// Mass of the limiting law at zero, present when `c > 1`.
    pub mass_at_zero: Option<f64>,
}

impl MpModel {
    pub fn new(c: f64, h: SpectralDistribution) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::config("aspect ratio c must be finite and positive"));
        }
        h.validate()?;
        Ok(MpModel { c, h })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn h(&self) -> &SpectralDistribution {
        &self.h
    }

    /// Guard distance around the support of `H` inside which the
    /// quadrature sums for `psi` blow up.
    fn domain_guard(&self) -> f64 {
        1e-10 * self.h.support_upper.max(f64::MIN_POSITIVE)
    }

    fn check_outside_support(&self, lam: f64) -> Result<()> {
        let (lo, hi) = self.h.support();
        let guard = self.domain_guard();
        if lam > lo - guard && lam < hi + guard {
            return Err(Error::domain(format!(
                "lambda {lam} is inside or too close to the support [{lo}, {hi}] of H"
            )));
        }
        Ok(())
    }

    #[inline]
    fn psi_raw(&self, lam: f64) -> f64 {
        lam * (1.0 + self.c * self.h.sum_weighted(|t| t / (lam - t)))
    }

    #[inline]
    fn psi_prime_raw(&self, lam: f64) -> f64 {
        1.0 - self.c
            * self.h.sum_weighted(|t| {
                let r = t / (lam - t);
                r * r
            })
    }
}

/// The spike map `psi(lambda) = lambda (1 + c \int t/(lambda-t) dH)`,
/// defined outside the support of `H`.
pub fn psi(model: &MpModel, lam: f64) -> Result<f64> {
    model.check_outside_support(lam)?;
    Ok(model.psi_raw(lam))
}

/// Derivative `psi'(lambda) = 1 - c \int t^2/(lambda-t)^2 dH`.
pub fn psi_prime(model: &MpModel, lam: f64) -> Result<f64> {
    model.check_outside_support(lam)?;
    Ok(model.psi_prime_raw(lam))
}

fn bisect(mut lo: f64, mut hi: f64, mut f: impl FnMut(f64) -> f64, rising: bool) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let v = f(mid);
        if v.abs() < 1e-12 {
            return mid;
        }
        if (v < 0.0) == rising {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo).abs() <= 1e-15 * hi.abs().max(lo.abs()).max(1e-300) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Upper support edge `b` of the limiting law: the unique stationary point
/// of `psi` above the support of `H`, found by bisection on the monotone
/// `psi'`.
pub fn upper_edge(model: &MpModel) -> Result<EdgeResult> {
    let hi_support = model.h.support_upper;
    let mut lo = hi_support * (1.0 + 1e-8);
    let f = |lam: f64| model.psi_prime_raw(lam);
    if f(lo) >= 0.0 {
        // The stationary point sits between the topmost mass location and
        // the stated support edge (possible when the density vanishes at
        // the edge); bisect downward toward the singularity instead.
        let top = model.h.max_location();
        let inner = top * (1.0 + 1e-12);
        if f(inner) >= 0.0 {
            let lam = lo;
            return Ok(EdgeResult {
                lambda_star: lam,
                edge: model.psi_raw(lam),
                side: EdgeSide::Upper,
                mass_at_zero: None,
            });
        }
        let lam = bisect(inner, lo, f, true);
        return Ok(EdgeResult {
            lambda_star: lam,
            edge: model.psi_raw(lam),
            side: EdgeSide::Upper,
            mass_at_zero: None,
        });
    }
    let mut hi = hi_support * (1.0 + model.c.sqrt()) * 10.0;
    let mut doublings = 0;
    while f(hi) < 0.0 {
        hi *= 2.0;
        doublings += 1;
        if doublings >= 60 {
            return Err(Error::convergence(
                "no sign change of psi' while expanding the upper bracket",
            ));
        }
    }
    let lam = bisect(lo.max(hi_support * (1.0 + 1e-8)), hi, f, true);
    lo = lam; // silence unused assignment lint path
    let _ = lo;
    Ok(EdgeResult {
        lambda_star: lam,
        edge: model.psi_raw(lam),
        side: EdgeSide::Upper,
        mass_at_zero: None,
    })
}

/// Lower support edge. For `c > 1` the limiting law has an atom at zero of
/// mass `1 - 1/c` and the reported edge is 0; the stationary point of
/// `psi` below the support is still returned.
pub fn lower_edge(model: &MpModel) -> Result<EdgeResult> {
    let t_min = model
        .h
        .min_positive_location()
        .ok_or_else(|| Error::config("H has no positive mass location; lower edge undefined"))?;
    let f = |lam: f64| model.psi_prime_raw(lam);
    let hi = t_min * (1.0 - 1e-12);
    let mut lo = -model.h.support_upper.max(1.0);
    let mut doublings = 0;
    while f(lo) < 0.0 {
        lo *= 2.0;
        doublings += 1;
        if doublings >= 60 {
            return Err(Error::convergence(
                "no sign change of psi' while expanding the lower bracket",
            ));
        }
    }
    let lam = bisect(lo, hi, f, false);
    let mass_at_zero = if model.c > 1.0 {
        Some(1.0 - 1.0 / model.c)
    } else {
        None
    };
    let edge = if model.c > 1.0 {
        0.0
    } else {
        model.psi_raw(lam).max(0.0)
    };
    Ok(EdgeResult {
        lambda_star: lam,
        edge,
        side: EdgeSide::Lower,
        mass_at_zero,
    })
}

const STIELTJES_TOL: f64 = 1e-12;
const STIELTJES_MAX_ITER: usize = 50_000;
const STIELTJES_DAMPING: f64 = 0.5;

fn stieltjes_fixed_point(model: &MpModel, z: Complex64) -> Result<Complex64> {
    let c = model.c;
    let mut s = -1.0 / z;
    for _ in 0..STIELTJES_MAX_ITER {
        let w = Complex64::new(1.0 - c, 0.0) - z * s * c;
        let next = model.h.sum_weighted_c(|t| 1.0 / (w * t - z));
        let s_new = s * (1.0 - STIELTJES_DAMPING) + next * STIELTJES_DAMPING;
        if (s_new - s).norm() < STIELTJES_TOL {
            return Ok(s_new);
        }
        s = s_new;
    }
    Err(Error::convergence(format!(
        "Stieltjes fixed point did not converge at z = {z}"
    )))
}

/// Stieltjes transform `s(z)` of the limiting law, computed as the damped
/// fixed point of its defining equation. `z` must lie in the upper half
/// plane or on the real axis outside the support of the limiting law.
pub fn stieltjes(model: &MpModel, z: Complex64) -> Result<Complex64> {
    if z.im < 0.0 {
        return Err(Error::domain("z must satisfy Im z >= 0"));
    }
    stieltjes_fixed_point(model, z)
}

/// Newton refinement of the fixed point, warm-started from `s0`. The
/// damped iteration can be captured by the non-physical root near the
/// lower bulk edge, so the density path refines by Newton instead.
fn stieltjes_newton(model: &MpModel, z: Complex64, s0: Complex64) -> Option<Complex64> {
    let c = model.c;
    let mut s = s0;
    for _ in 0..200 {
        let w = Complex64::new(1.0 - c, 0.0) - z * s * c;
        let g = s - model.h.sum_weighted_c(|t| 1.0 / (w * t - z));
        let dt = model.h.sum_weighted_c(|t| {
            let den = w * t - z;
            z * (c * t) / (den * den)
        });
        let gp = Complex64::new(1.0, 0.0) - dt;
        if gp.norm() < 1e-300 {
            return None;
        }
        let step = g / gp;
        s -= step;
        if step.norm() < 1e-14 * s.norm().max(1.0) {
            return Some(s);
        }
    }
    None
}

/// Solve for `s(x + i eps)` by continuation in the imaginary offset,
/// staying on the physical (upper half plane) branch.
fn stieltjes_in_bulk(model: &MpModel, x: f64, eps_target: f64, scale: f64) -> Result<Complex64> {
    let mut eps = 0.5 * scale;
    let z0 = Complex64::new(x, eps);
    let mut s = stieltjes_fixed_point(model, z0)?;
    loop {
        let z = Complex64::new(x, eps);
        s = match stieltjes_newton(model, z, s) {
            Some(v) => v,
            None => stieltjes_fixed_point(model, z)?,
        };
        if s.im < 0.0 {
            s = s.conj();
            if let Some(v) = stieltjes_newton(model, z, s) {
                s = v;
            }
        }
        if eps <= eps_target {
            break;
        }
        eps = (eps * 0.25).max(eps_target);
    }
    Ok(s)
}

/// Bulk density of the limiting law at `x`, by Stieltjes inversion with
/// linear extrapolation of the imaginary offset to zero.
pub fn mp_density(model: &MpModel, x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::domain("density is evaluated at x > 0"));
    }
    let b = upper_edge(model)?.edge;
    let eps1 = 1e-3 * b;
    let eps2 = 1e-4 * b;
    let f1 = stieltjes_in_bulk(model, x, eps1, b)?.im / PI;
    let f2 = stieltjes_in_bulk(model, x, eps2, b)?.im / PI;
    Ok((f2 + (f2 - f1) * eps2 / (eps1 - eps2)).max(0.0))
}

/// `kappa(u) = c (u - 1) \int (t/mu) / (u - t/mu) dF(t)` for `u >= b/mu`.
///
/// The integral over the limiting law `F` is reduced to sums over `H`
/// through the fixed point: with `w = 1 - c - c z s(z)` one has
/// `\int t/(z - t) dF = w \int t/(z - t w) dH`, which avoids the
/// catastrophic cancellation in `-1 - z s(z)` for large `z`. At the edge
/// `u = b/mu` the value is the Richardson limit in `sqrt(delta)` of
/// evaluations at `z = b (1 + delta)`.
pub fn kappa(model: &MpModel, u: f64) -> Result<f64> {
    let mu = model.h.mean();
    let b = upper_edge(model)?.edge;
    let z = u * mu;
    let edge_tol = 1e-9 * b;
    if z < b - edge_tol {
        return Err(Error::domain(format!(
            "u*mu = {z} is below the upper edge b = {b}"
        )));
    }
    if z <= b * (1.0 + 1e-6) {
        // Richardson extrapolation in sqrt(delta) through three offsets.
        let deltas = [1e-2, 1e-3, 1e-4];
        let mut xs = [0.0; 3];
        let mut ys = [0.0; 3];
        for (i, &d) in deltas.iter().enumerate() {
            let zd = b * (1.0 + d);
            xs[i] = d.sqrt();
            ys[i] = kappa_at(model, mu, zd)?;
        }
        let mut v = 0.0;
        for i in 0..3 {
            let mut li = 1.0;
            for j in 0..3 {
                if i != j {
                    li *= -xs[j] / (xs[i] - xs[j]);
                }
            }
            v += li * ys[i];
        }
        return Ok(v);
    }
    kappa_at(model, mu, z)
}

fn kappa_at(model: &MpModel, mu: f64, z: f64) -> Result<f64> {
    let c = model.c;
    let zc = Complex64::new(z, 0.0);
    let s = stieltjes_fixed_point(model, zc)?;
    let w = Complex64::new(1.0 - c, 0.0) - zc * s * c;
    let integral = w * model.h.sum_weighted_c(|t| t / (zc - w * t));
    let u = z / mu;
    Ok(c * (u - 1.0) * integral.re)
}

/// The identifiable rank: the number of leading population eigenvalues
/// that separate from the bulk, i.e. lie above the support of `H` with
/// `psi' > 0` there.
pub fn rank_r0(model: &MpModel, spikes: &[f64]) -> Result<usize> {
    if spikes.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::config("spikes must be in descending order"));
    }
    let hi = model.h.support_upper;
    let guard = model.domain_guard();
    let mut rank = 0;
    for (j, &lam) in spikes.iter().enumerate() {
        if lam > hi + guard && model.psi_prime_raw(lam) > 0.0 {
            rank = j + 1;
        } else {
            // psi' is increasing above the support, so once a spike fails
            // every later (smaller) spike fails as well.
            break;
        }
    }
    Ok(rank)
}
