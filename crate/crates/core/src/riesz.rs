//! Finite-range oscillation diagnostics for Riesz-weighted sums of μ, λ
//! and d²: exact weighted sums, zero-sum predictions, sign-change counts,
//! δ-moment sums over the zeros, and a simultaneous-approximation search.
//!
//! Nothing here certifies a limit; the traces are evidence over a window.

use std::f64::consts::PI;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::ArithTable;
use crate::error::{Error, Result};
use crate::specfun::{digamma, gamma_r, ln_gamma, tetragamma, trigamma};
use crate::sum::det_sum;
use crate::zeta::{residue_constants, zeta, ZeroTable};
use crate::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RieszKind {
    Mu,
    Lambda,
    D2,
}

impl RieszKind {
    /// Exponent of (1 − n/y): δ for μ and λ, 1 + δ for d².
    pub fn weight_exponent(self, delta: f64) -> f64 {
        match self {
            RieszKind::D2 => 1.0 + delta,
            _ => delta,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RieszKind::Mu => "mu",
            RieszKind::Lambda => "lambda",
            RieszKind::D2 => "d2",
        }
    }
}

impl std::str::FromStr for RieszKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mu" => Ok(RieszKind::Mu),
            "lambda" => Ok(RieszKind::Lambda),
            "d2" => Ok(RieszKind::D2),
            _ => Err(Error::Domain(format!(
                "unknown trace kind '{s}' (mu, lambda, d2)"
            ))),
        }
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta.is_finite() {
        Ok(())
    } else {
        Err(Error::ParameterDomain(format!(
            "delta must be positive, got {delta}"
        )))
    }
}

/// Σ_{n≤y} a(n)(1 − n/y)^k from the sieve, k per [`RieszKind::weight_exponent`].
pub fn weighted_sum(table: &ArithTable, kind: RieszKind, y: f64, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    if !(y >= 1.0) {
        return Err(Error::ParameterDomain(format!(
            "y must be at least 1, got {y}"
        )));
    }
    let top = y.floor() as usize;
    if top > table.limit() {
        return Err(Error::SieveLimit {
            y,
            limit: table.limit(),
        });
    }
    let k = kind.weight_exponent(delta);
    let w = |n: usize| (1.0 - n as f64 / y).max(0.0).powf(k);
    Ok(match kind {
        RieszKind::Mu => {
            let mu = table.moebius_slice();
            det_sum(
                1,
                top,
                |n| if mu[n] == 0 { 0.0 } else { mu[n] as f64 * w(n) },
            )
        }
        RieszKind::Lambda => {
            let lam = table.lambda_slice();
            det_sum(1, top, |n| lam[n] as f64 * w(n))
        }
        RieszKind::D2 => {
            let d = table.d_slice();
            det_sum(1, top, |n| (d[n] as f64).powi(2) * w(n))
        }
    })
}

/// ∫₀¹(1−u)^k log^i u du for i = 0..3, from derivatives of B(a, k+1) at a = 1.
fn beta_log_moments(k: f64) -> [f64; 4] {
    let b = 1.0 / (k + 1.0);
    let l1 = digamma(1.0) - digamma(k + 2.0);
    let l2 = trigamma(1.0) - trigamma(k + 2.0);
    let l3 = tetragamma(1.0) - tetragamma(k + 2.0);
    [
        b,
        b * l1,
        b * (l1 * l1 + l2),
        b * (l1.powi(3) + 3.0 * l1 * l2 + l3),
    ]
}

/// Per-j pieces of the d² main term g(y) = Σ_j y·A_j·∫₀¹(1−u)^{1+δ}(log y + log u)^j du;
/// piece 0 is A₀·y/(2+δ).
pub fn d2_main_term_parts(y: f64, delta: f64) -> [f64; 4] {
    let rc = residue_constants();
    let a = [rc.a0, rc.a1, rc.a2, rc.a3];
    let m = beta_log_moments(1.0 + delta);
    let ly = y.ln();
    let binom = [
        [1.0, 0.0, 0.0, 0.0],
        [1.0, 1.0, 0.0, 0.0],
        [1.0, 2.0, 1.0, 0.0],
        [1.0, 3.0, 3.0, 1.0],
    ];
    let mut out = [0.0; 4];
    for j in 0..4 {
        let mut s = 0.0;
        for i in 0..=j {
            s += binom[j][i] * ly.powi((j - i) as i32) * m[i];
        }
        out[j] = y * a[j] * s;
    }
    out
}

/// g(y): the smooth main term of Σ_{n≤y}d²(n)(1 − n/y)^{1+δ}.
pub fn d2_main_term(y: f64, delta: f64) -> f64 {
    d2_main_term_parts(y, delta).iter().sum()
}

/// A truncated zero sum together with an estimate of what was left out.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroMainTerm {
    pub value: f64,
    /// Number of zeros (upper half-plane) included.
    pub truncation_index: usize,
    /// Heuristic size of the omitted zeros: |terms| ~ γ^{−1−δ} against the
    /// zero density log(γ/2π)/2π, fitted on the last ten included terms.
    pub tail_bound: f64,
}

/// y-independent factor of each zero's contribution, and the power of y it
/// multiplies (ρ for μ, λ; ρ/2 for d²).
fn zero_coefficients(
    kind: RieszKind,
    delta: f64,
    table: &ZeroTable,
) -> Result<Vec<(Complex64, Complex64)>> {
    let k = kind.weight_exponent(delta);
    let lgk = ln_gamma(Complex64::new(k + 1.0, 0.0));
    table
        .zeros
        .iter()
        .map(|z| {
            // Γ(k+1)Γ(s)/Γ(s+k+1) at the pole location s
            let kernel = |s: Complex64| (lgk + ln_gamma(s) - ln_gamma(s + k + 1.0)).exp();
            Ok(match kind {
                RieszKind::Mu => (kernel(z.rho) / z.zeta_prime, z.rho),
                RieszKind::Lambda => (zeta(2.0 * z.rho)? * kernel(z.rho) / z.zeta_prime, z.rho),
                RieszKind::D2 => {
                    let h = z.rho * 0.5;
                    (zeta(h)?.powi(4) * kernel(h) / (2.0 * z.zeta_prime), h)
                }
            })
        })
        .collect()
}

/// Contributions of the non-zeta-zero poles (raw, not normalized).
fn trivial_terms(kind: RieszKind, y: f64, delta: f64) -> f64 {
    let k = kind.weight_exponent(delta);
    match kind {
        // s = 0: 1/ζ(0)
        RieszKind::Mu => -2.0,
        // s = 1/2 from ζ(2s), s = 0 from Γ(s)
        RieszKind::Lambda => {
            let zh = zeta(Complex64::new(0.5, 0.0))
                .map(|z| z.re)
                .unwrap_or(f64::NAN);
            y.sqrt() * gamma_r(k + 1.0) * PI.sqrt() / (2.0 * zh * gamma_r(1.5 + k)) + 1.0
        }
        // s = 0: ζ(0)³
        RieszKind::D2 => -0.125,
    }
}

fn normalizer(kind: RieszKind, y: f64) -> f64 {
    match kind {
        RieszKind::D2 => y.powf(0.25),
        _ => y.sqrt(),
    }
}

fn tail_estimate(coeffs: &[(Complex64, Complex64)], table: &ZeroTable, delta: f64) -> f64 {
    let m = coeffs.len();
    if m == 0 {
        return 0.0;
    }
    let p = 1.0 + delta;
    let lo = m.saturating_sub(10);
    // C = mean of |term|·γ^p over the last terms
    let c: f64 = (lo..m)
        .map(|i| coeffs[i].0.norm() * table.zeros[i].gamma.powf(p))
        .sum::<f64>()
        / (m - lo) as f64;
    let g = table.zeros[m - 1].gamma;
    let l = (g / (2.0 * PI)).ln().max(1.0);
    // 2·∫_g^∞ C t^{−p}·log(t/2π)/(2π) dt, the 2 for conjugate zeros
    2.0 * c / (2.0 * PI) * g.powf(-delta) * (l / delta + 1.0 / (delta * delta))
}

/// Normalized zero-sum prediction for the trace at y: the zero contributions
/// plus the trivial poles, divided by √y (μ, λ) or y^{1/4} (d²).
pub fn zero_main_term(
    kind: RieszKind,
    y: f64,
    delta: f64,
    table: &ZeroTable,
) -> Result<ZeroMainTerm> {
    check_delta(delta)?;
    let coeffs = zero_coefficients(kind, delta, table)?;
    Ok(assemble(kind, y, delta, &coeffs, table))
}

fn assemble(
    kind: RieszKind,
    y: f64,
    delta: f64,
    coeffs: &[(Complex64, Complex64)],
    table: &ZeroTable,
) -> ZeroMainTerm {
    let ly = y.ln();
    let zs: f64 = coeffs
        .iter()
        .map(|(c, e)| 2.0 * (c * (e * ly).exp()).re)
        .sum();
    let norm = normalizer(kind, y);
    // every zero term carries y^{Re ρ} or y^{Re ρ/2}, which the normalizer removes
    ZeroMainTerm {
        value: (zs + trivial_terms(kind, y, delta)) / norm,
        truncation_index: coeffs.len(),
        tail_bound: tail_estimate(coeffs, table, delta),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub y: f64,
    pub normalized_sum: f64,
    pub predicted: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RieszTrace {
    pub kind: RieszKind,
    pub delta: f64,
    pub zero_count: usize,
    /// Largest per-point tail estimate of the truncated zero sum.
    pub tail_bound: f64,
    pub points: Vec<TracePoint>,
}

impl RieszTrace {
    /// CSV with header `y,normalized_sum,predicted`, 15 significant digits.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let io = |e: csv::Error| Error::Io(e.to_string());
        out.write_record(["y", "normalized_sum", "predicted"])
            .map_err(io)?;
        for p in &self.points {
            out.write_record([
                format!("{:.14e}", p.y),
                format!("{:.14e}", p.normalized_sum),
                format!("{:.14e}", p.predicted),
            ])
            .map_err(io)?;
        }
        out.flush()?;
        Ok(())
    }

    /// RMS of normalized_sum over RMS of predicted.
    pub fn amplitude_ratio(&self) -> f64 {
        let rms = |f: &dyn Fn(&TracePoint) -> f64| {
            (self.points.iter().map(|p| f(p).powi(2)).sum::<f64>()
                / self.points.len().max(1) as f64)
                .sqrt()
        };
        rms(&|p| p.normalized_sum) / rms(&|p| p.predicted)
    }
}

/// n log-spaced points in [lo, hi].
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::ParameterDomain(
            "grid needs at least one point".into(),
        ));
    }
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::ParameterDomain(format!(
            "need 0 < ymin < ymax, got [{lo}, {hi}]"
        )));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    let (a, b) = (lo.ln(), hi.ln());
    Ok((0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect())
}

/// Weighted sums against zero-sum predictions along `grid`.
pub fn trace(
    table: &ArithTable,
    kind: RieszKind,
    grid: &[f64],
    delta: f64,
    zeros: &ZeroTable,
) -> Result<RieszTrace> {
    check_delta(delta)?;
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::ParameterDomain(
            "y grid must be strictly increasing".into(),
        ));
    }
    let coeffs = zero_coefficients(kind, delta, zeros)?;
    let points: Vec<(TracePoint, f64)> = grid
        .par_iter()
        .map(|&y| {
            let s = weighted_sum(table, kind, y, delta)?;
            let normalized_sum = match kind {
                RieszKind::D2 => (s - d2_main_term(y, delta)) / y.powf(0.25),
                _ => s / y.sqrt(),
            };
            let m = assemble(kind, y, delta, &coeffs, zeros);
            Ok((
                TracePoint {
                    y,
                    normalized_sum,
                    predicted: m.value,
                },
                m.tail_bound,
            ))
        })
        .collect::<Result<_>>()?;
    Ok(RieszTrace {
        kind,
        delta,
        zero_count: zeros.len(),
        tail_bound: points.iter().map(|p| p.1).fold(0.0, f64::max),
        points: points.into_iter().map(|p| p.0).collect(),
    })
}

/// Strict sign alternations of normalized_sum; exact zeros are skipped.
pub fn sign_changes(trace: &RieszTrace) -> usize {
    let mut last = 0.0f64;
    let mut count = 0;
    for p in &trace.points {
        let v = p.normalized_sum;
        if v == 0.0 || v.is_nan() {
            continue;
        }
        if last != 0.0 && (v > 0.0) != (last > 0.0) {
            count += 1;
        }
        last = v;
    }
    count
}

/// Truncated δ-moments over the zeros (upper half-plane only):
/// A = Σ1/(|ζ′(ρ)||ρ|^{1+δ}), B = Σ|ζ(2ρ)|/(|ζ′(ρ)||ρ|^{1+δ}),
/// C = Σ|ζ(ρ/2)|⁴/(|ζ′(ρ)||ρ|^{2+δ}). Each grows like 1/δ only in the full
/// sum; a finite table cannot show that.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroMoments {
    pub delta: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub zero_count: usize,
    /// Always false: the 1/δ growth is outside the reach of a finite table.
    pub asymptotic_checkable: bool,
}

pub fn zero_moment_sums(delta: f64, table: &ZeroTable) -> Result<ZeroMoments> {
    check_delta(delta)?;
    let (mut a, mut b, mut c) = (0.0, 0.0, 0.0);
    for z in &table.zeros {
        let r = z.rho.norm();
        let zp = z.zeta_prime.norm();
        a += 1.0 / (zp * r.powf(1.0 + delta));
        b += zeta(2.0 * z.rho)?.norm() / (zp * r.powf(1.0 + delta));
        c += zeta(z.rho * 0.5)?.norm().powi(4) / (zp * r.powf(2.0 + delta));
    }
    Ok(ZeroMoments {
        delta,
        a,
        b,
        c,
        zero_count: table.len(),
        asymptotic_checkable: false,
    })
}

/// max_n distance of (α_n t − β_n)/2π to the nearest integer.
pub fn torus_distance(alphas: &[f64], betas: &[f64], t: f64) -> f64 {
    alphas
        .iter()
        .zip(betas)
        .map(|(a, b)| {
            let u = (a * t - b) / (2.0 * PI);
            (u - u.round()).abs()
        })
        .fold(0.0, f64::max)
}

/// Smallest grid t in [0, t_max] with torus distance below eps/2π.
pub fn kronecker_search(alphas: &[f64], betas: &[f64], eps: f64, t_max: f64) -> Result<f64> {
    kronecker_search_from(alphas, betas, eps, 0.0, t_max)
}

/// As [`kronecker_search`] over [t_min, t_max]: a grid fine enough that no
/// coordinate moves more than a quarter of the target per step, then a
/// local refinement minimizing the worst coordinate.
pub fn kronecker_search_from(
    alphas: &[f64],
    betas: &[f64],
    eps: f64,
    t_min: f64,
    t_max: f64,
) -> Result<f64> {
    if alphas.is_empty() || alphas.len() != betas.len() {
        return Err(Error::ParameterDomain(
            "alphas and betas must be non-empty and of equal length".into(),
        ));
    }
    if !(eps > 0.0) || !(t_max >= t_min) {
        return Err(Error::ParameterDomain(
            "need eps > 0 and t_min ≤ t_max".into(),
        ));
    }
    for (i, a) in alphas.iter().enumerate() {
        if alphas[i + 1..].iter().any(|b| b == a) {
            return Err(Error::ParameterDomain(
                "alphas must be pairwise distinct".into(),
            ));
        }
    }
    let target = eps / (2.0 * PI);
    let amax = alphas
        .iter()
        .fold(0.0f64, |m, a| m.max(a.abs()))
        .max(1e-300);
    let h = 0.25 * eps / amax;
    let steps = ((t_max - t_min) / h).ceil() as u64;
    let dist = |t: f64| torus_distance(alphas, betas, t);
    for j in 0..=steps {
        let t = (t_min + j as f64 * h).min(t_max);
        if dist(t) < target {
            // golden-section polish inside the neighbouring cells
            let (mut lo, mut hi) = ((t - h).max(t_min), (t + h).min(t_max));
            let g = 0.5 * (5f64.sqrt() - 1.0);
            for _ in 0..60 {
                let x1 = hi - g * (hi - lo);
                let x2 = lo + g * (hi - lo);
                if dist(x1) < dist(x2) {
                    hi = x2;
                } else {
                    lo = x1;
                }
            }
            let best = 0.5 * (lo + hi);
            return Ok(if dist(best) < dist(t) { best } else { t });
        }
    }
    Err(Error::NotFound(t_max))
}
