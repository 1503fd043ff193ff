//! Riemann zeta machinery: ζ(s) by Euler–Maclaurin, ζ′ by a Cauchy circle,
//! the χ-factor, refined non-trivial zeros and bracketed zero sums, plus the
//! Stieltjes/Glaisher constants used in residue terms.

use std::f64::consts::PI;
use std::path::Path;
use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::laurent_coefficients;
use crate::specfun::{digamma, ln_gamma, rgamma};

/// Seeds bundled with the library: 100 ordinates, refined before use.
pub const BUNDLED_SEEDS: &str = include_str!("../data/zeros100.txt");

// B_{2k}/(2k)! for k = 1..6.
const EM_COEFFS: [f64; 6] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
];

fn ln_table() -> &'static [f64] {
    static T: OnceLock<Vec<f64>> = OnceLock::new();
    T.get_or_init(|| {
        (0..4096)
            .map(|n| if n == 0 { 0.0 } else { (n as f64).ln() })
            .collect()
    })
}

fn npow(n: usize, s: Complex64) -> Complex64 {
    let l = ln_table()
        .get(n)
        .copied()
        .unwrap_or_else(|| (n as f64).ln());
    (-s * l).exp()
}

/// ζ(s) for s ≠ 1.
pub fn zeta(s: Complex64) -> Result<Complex64> {
    if (s - 1.0).norm() < 1e-12 {
        return Err(Error::PoleAtOne);
    }
    if s.re < 0.0 {
        return Ok(chi_factor(s)? * zeta(1.0 - s)?);
    }
    let n = 20usize.max((1.3 * s.im.abs()).ceil() as usize);
    let mut sum = Complex64::new(0.0, 0.0);
    for k in (1..n).rev() {
        sum += npow(k, s);
    }
    let nf = n as f64;
    let nps = npow(n, s);
    sum += nps * nf / (s - 1.0) + nps * 0.5;
    // Bernoulli corrections: B_{2k}/(2k)! · s(s+1)…(s+2k−2) · N^{−s−2k+1}
    let mut rising = s;
    let mut pw = nps / nf;
    for (k, c) in EM_COEFFS.iter().enumerate() {
        sum += rising * pw * *c;
        let j = 2.0 * k as f64;
        rising *= (s + j + 1.0) * (s + j + 2.0);
        pw /= nf * nf;
    }
    Ok(sum)
}

/// ζ′(s) by the trapezoidal rule on a small circle around s.
pub fn zeta_prime(s: Complex64) -> Result<Complex64> {
    let dist = (s - 1.0).norm();
    if dist < 1e-3 {
        return Err(Error::PoleTooClose);
    }
    let r = 1e-3f64.min(dist / 8.0);
    const M: usize = 16;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..M {
        let w = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / M as f64);
        acc += zeta(s + w * r)? / w;
    }
    Ok(acc / (M as f64 * r))
}

/// χ(s) = π^{s−1/2} Γ((1−s)/2)/Γ(s/2), so that ζ(s) = χ(s)ζ(1−s).
pub fn chi_factor(s: Complex64) -> Result<Complex64> {
    let h = (1.0 - s) * 0.5;
    if h.im == 0.0 && h.re <= 0.0 && h.re == h.re.round() {
        return Err(Error::GammaPole(h.re));
    }
    let num = (ln_gamma(h) + (s - 0.5) * PI.ln()).exp();
    Ok(num * rgamma(s * 0.5))
}

// ------------------------------------------------------------------ zeros

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaZero {
    pub index: usize,
    pub gamma: f64,
    pub rho: Complex64,
    pub zeta_prime: Complex64,
    /// |ζ(ρ)| after refinement.
    pub residual: f64,
}

impl ZetaZero {
    /// The conjugate zero 1/2 − iγ.
    pub fn conjugate(&self) -> ZetaZero {
        ZetaZero {
            gamma: -self.gamma,
            rho: self.rho.conj(),
            zeta_prime: self.zeta_prime.conj(),
            ..*self
        }
    }
}

/// Newton refinement of a zero from an ordinate seed.
pub fn refine_zero(seed: f64) -> Result<ZetaZero> {
    let mut s = Complex64::new(0.5, seed);
    let mut converged = false;
    for _ in 0..50 {
        let z = zeta(s)?;
        let dz = zeta_prime(s)?;
        if dz.norm() == 0.0 {
            break;
        }
        let step = z / dz;
        s -= step;
        if !(s.re.is_finite() && s.im.is_finite()) || (s.im - seed).abs() > 5.0 {
            break;
        }
        if step.norm() < 1e-13 * s.norm() {
            converged = true;
            break;
        }
    }
    if !converged || (s.im - seed).abs() > 0.4 {
        return Err(Error::NoConvergence { seed });
    }
    if (s.re - 0.5).abs() > 1e-8 {
        return Err(Error::StrayedOffLine { seed, re: s.re });
    }
    let rho = Complex64::new(0.5, s.im);
    let residual = zeta(rho)?.norm();
    if residual > 1e-10 {
        return Err(Error::NoConvergence { seed });
    }
    Ok(ZetaZero {
        index: 0,
        gamma: s.im,
        rho,
        zeta_prime: zeta_prime(rho)?,
        residual,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BracketMode {
    SingletonChecked,
    ExplicitBrackets,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BracketPolicy {
    pub c: f64,
    pub mode: BracketMode,
}

impl Default for BracketPolicy {
    fn default() -> Self {
        BracketPolicy {
            c: 1.0,
            mode: BracketMode::SingletonChecked,
        }
    }
}

/// Whether two consecutive ordinates are far enough apart to sit in
/// separate brackets.
pub fn gap_ok(g1: f64, g2: f64, c: f64) -> bool {
    let w = |g: f64| (-c * g / g.ln()).exp();
    (g1 - g2).abs() >= w(g1) + w(g2)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroTable {
    pub zeros: Vec<ZetaZero>,
    pub source: String,
}

/// Parses `<index> <gamma>` records; `#` starts a comment.
pub fn parse_seeds(text: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let bad = |reason: &str| Error::SeedFormat {
            line: i + 1,
            reason: reason.to_string(),
        };
        let idx: usize = it
            .next()
            .ok_or_else(|| bad("missing index"))?
            .parse()
            .map_err(|_| bad("bad index"))?;
        let g: f64 = it
            .next()
            .ok_or_else(|| bad("missing ordinate"))?
            .parse()
            .map_err(|_| bad("bad ordinate"))?;
        if idx != out.len() + 1 {
            return Err(bad("indices must run 1, 2, 3, …"));
        }
        if !(g > 0.0) {
            return Err(bad("ordinate must be positive"));
        }
        out.push(g);
    }
    Ok(out)
}

pub fn load_seeds(path: &Path) -> Result<Vec<f64>> {
    parse_seeds(&std::fs::read_to_string(path)?)
}

/// Refines the first `count` bundled seeds.
pub fn zero_table(count: usize) -> Result<ZeroTable> {
    ZeroTable::from_seeds(&parse_seeds(BUNDLED_SEEDS)?, count, "bundled seeds")
}

/// Cached 100-zero table from the bundled seeds.
pub fn default_zero_table() -> Result<&'static ZeroTable> {
    static T: OnceLock<std::result::Result<ZeroTable, Error>> = OnceLock::new();
    T.get_or_init(|| zero_table(100))
        .as_ref()
        .map_err(Clone::clone)
}

impl ZeroTable {
    pub fn from_seeds(seeds: &[f64], count: usize, label: &str) -> Result<ZeroTable> {
        if count == 0 || count > seeds.len() {
            return Err(Error::Domain(format!(
                "count must be in 1..={}, got {count}",
                seeds.len()
            )));
        }
        let refined: Vec<Result<ZetaZero>> =
            seeds[..count].par_iter().map(|&g| refine_zero(g)).collect();
        let mut zeros = Vec::with_capacity(count);
        for (i, z) in refined.into_iter().enumerate() {
            zeros.push(ZetaZero { index: i + 1, ..z? });
        }
        if !(14.0..=14.3).contains(&zeros[0].gamma) {
            return Err(Error::Domain(format!(
                "first ordinate {} outside 14.0–14.3",
                zeros[0].gamma
            )));
        }
        if let Some(w) = zeros.windows(2).find(|w| w[1].gamma <= w[0].gamma) {
            return Err(Error::Domain(format!(
                "ordinates not strictly increasing at index {} (duplicate or misordered seed)",
                w[1].index
            )));
        }
        let max_res = zeros.iter().map(|z| z.residual).fold(0.0, f64::max);
        Ok(ZeroTable {
            zeros,
            source: format!(
                "{label}: {count} zeros, Newton-refined to |ζ(ρ)| ≤ 1e-10 (max {max_res:.1e})"
            ),
        })
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    /// The first `count` zeros (or all, if fewer).
    pub fn truncated(&self, count: usize) -> ZeroTable {
        let n = count.min(self.zeros.len());
        ZeroTable {
            zeros: self.zeros[..n].to_vec(),
            source: format!("{} [first {n}]", self.source),
        }
    }

    pub fn max_residual(&self) -> f64 {
        self.zeros.iter().map(|z| z.residual).fold(0.0, f64::max)
    }

    /// Brackets (half-open index ranges) under the given policy.
    pub fn brackets(&self, policy: &BracketPolicy) -> Result<Vec<(usize, usize)>> {
        let mut out = Vec::new();
        let mut start = 0;
        for m in 0..self.zeros.len() {
            let last = m + 1 == self.zeros.len();
            if last || gap_ok(self.zeros[m].gamma, self.zeros[m + 1].gamma, policy.c) {
                out.push((start, m + 1));
                start = m + 1;
            } else if policy.mode == BracketMode::SingletonChecked {
                return Err(Error::Domain(format!(
                    "bracket gap condition fails between zeros {} and {}",
                    m + 1,
                    m + 2
                )));
            }
        }
        Ok(out)
    }

    /// Seed-file text of the refined ordinates, with a residual header.
    pub fn to_seed_text(&self) -> String {
        let mut s = String::new();
        s.push_str("# refined non-trivial zeros of zeta: <index> <gamma>\n");
        s.push_str(&format!(
            "# {} zeros; max |zeta(rho)| = {:.3e}; mean |zeta(rho)| = {:.3e}\n",
            self.len(),
            self.max_residual(),
            self.zeros.iter().map(|z| z.residual).sum::<f64>() / self.len().max(1) as f64
        ));
        for z in &self.zeros {
            s.push_str(&format!("{} {:.15}\n", z.index, z.gamma));
        }
        s
    }
}

/// Σ over brackets of 2·Re(term(ρ)) — conjugate zeros paired analytically.
pub fn bracketed_zero_sum<F>(
    term: F,
    table: &ZeroTable,
    policy: &BracketPolicy,
) -> Result<Complex64>
where
    F: Fn(&ZetaZero) -> Complex64,
{
    let mut total = 0.0;
    for (a, b) in table.brackets(policy)? {
        let inner: f64 = table.zeros[a..b].iter().map(|z| 2.0 * term(z).re).sum();
        total += inner;
    }
    Ok(Complex64::new(total, 0.0))
}

/// Real zero sum under the default singleton policy (already checked at
/// table construction for the bundled seeds).
pub fn zero_sum<F>(term: F, table: &ZeroTable) -> Result<f64>
where
    F: Fn(&ZetaZero) -> Complex64,
{
    Ok(bracketed_zero_sum(term, table, &BracketPolicy::default())?.re)
}

/// Σ term(ρ) + term(ρ̄) with both members evaluated explicitly; used to
/// confirm that pairing leaves no imaginary part.
pub fn zero_sum_unpaired<F>(term: F, table: &ZeroTable) -> Complex64
where
    F: Fn(&ZetaZero) -> Complex64,
{
    table
        .zeros
        .iter()
        .map(|z| term(z) + term(&z.conjugate()))
        .sum()
}

// ------------------------------------------------------ residue constants

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidueConstants {
    pub euler_gamma: f64,
    pub stieltjes1: f64,
    pub stieltjes2: f64,
    pub zeta_d1_2: f64,
    pub zeta_d2_2: f64,
    pub zeta_d3_2: f64,
    pub zeta_prime_m1: f64,
    pub zeta_d2_m1: f64,
    /// log A (Glaisher–Kinkelin).
    pub log_glaisher: f64,
    /// 12·log A.
    pub glaisher_log12: f64,
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    /// Differences between the Laurent extractions at radii 0.1 and 0.05.
    pub stieltjes_radius_gap: f64,
    pub zeta_d2_m1_radius_gap: f64,
}

fn euler_gamma_em() -> f64 {
    let n = 100usize;
    let nf = n as f64;
    let h: f64 = (1..=n).rev().map(|k| 1.0 / k as f64).sum();
    // H_N − ln N − 1/(2N) + Σ B_{2k}/(2k N^{2k})
    let n2 = nf * nf;
    h - nf.ln() - 0.5 / nf + 1.0 / (12.0 * n2) - 1.0 / (120.0 * n2 * n2)
        + 1.0 / (252.0 * n2 * n2 * n2)
}

/// ζ^{(k)}(2) from Σ(−log n)^k n^{−2} with an Euler–Maclaurin tail.
fn zeta_deriv_at_2(k: u32) -> f64 {
    let n = 100_000usize;
    let sign = if k % 2 == 1 { -1.0 } else { 1.0 };
    let f = |x: f64| sign * x.ln().powi(k as i32) / (x * x);
    let head = crate::sum::det_sum(1, n - 1, |m| f(m as f64));
    let nf = n as f64;
    let l = nf.ln();
    // ∫_N^∞ log^k x / x² dx = Σ_j k!/j! · log^j N / N
    let mut integral = 0.0;
    let mut fact_ratio = 1.0; // k!/j!
    for j in (0..=k).rev() {
        integral += fact_ratio * l.powi(j as i32) / nf;
        fact_ratio *= j as f64;
    }
    // f′(x) = sign·(k log^{k−1}x − 2 log^k x)/x³
    let fprime =
        sign * ((k as f64) * l.powi(k as i32 - 1) - 2.0 * l.powi(k as i32)) / (nf * nf * nf);
    head + sign * integral + 0.5 * f(nf) - fprime / 12.0
}

/// Computes every constant from scratch.
pub fn stieltjes_and_local_derivatives() -> Result<ResidueConstants> {
    let g = euler_gamma_em();
    let z = |s: Complex64| zeta(s).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
    let one = Complex64::new(1.0, 0.0);
    let regular = |s: Complex64| z(s) - 1.0 / (s - 1.0);
    let e1 = laurent_coefficients(regular, one, 0.1, 0, 2)?;
    let e2 = laurent_coefficients(regular, one, 0.05, 0, 2)?;
    let stieltjes1 = -e1[1].re;
    let stieltjes2 = 2.0 * e1[2].re;
    let stieltjes_radius_gap = (e1[1].re - e2[1].re)
        .abs()
        .max((e1[2].re - e2[2].re).abs() * 2.0);

    let (d1, d2, d3) = (zeta_deriv_at_2(1), zeta_deriv_at_2(2), zeta_deriv_at_2(3));
    // ζ′(−1) from the functional equation: ζ′(−1) = χ(−1)[(χ′/χ)(−1)ζ(2) − ζ′(2)]
    let chi_m1 = -1.0 / (2.0 * PI * PI);
    let log_deriv = PI.ln() - 0.5 * digamma(1.0) - 0.5 * digamma(-0.5);
    let zeta2 = PI * PI / 6.0;
    let zeta_prime_m1 = chi_m1 * (log_deriv * zeta2 - d1);
    let log_glaisher = 1.0 / 12.0 - zeta_prime_m1;

    let m1 = Complex64::new(-1.0, 0.0);
    let c1 = laurent_coefficients(z, m1, 0.5, 2, 2)?;
    let c2 = laurent_coefficients(z, m1, 0.25, 2, 2)?;
    let zeta_d2_m1 = 2.0 * c1[0].re;

    let pi = PI;
    let (p2, p4, p6, p8) = (pi.powi(2), pi.powi(4), pi.powi(6), pi.powi(8));
    let a0 = (24.0 * g.powi(3) * p6 - 72.0 * g * p6 * stieltjes1 + 12.0 * p6 * stieltjes2
        - 432.0 * g * g * p4 * d1
        + 288.0 * p4 * stieltjes1 * d1
        + 3456.0 * g * p2 * d1 * d1
        - 10368.0 * d1.powi(3)
        - 288.0 * g * p4 * d2
        + 1728.0 * p2 * d1 * d2
        - 48.0 * p4 * d3)
        / p8;
    let a1 = (36.0 * g * g * p6 - 24.0 * p6 * stieltjes1 - 288.0 * g * p4 * d1
        + 864.0 * p2 * d1 * d1
        - 72.0 * p4 * d2)
        / p8;
    let a2 = (12.0 * g * p6 - 36.0 * p4 * d1) / p8;
    let a3 = 1.0 / p2;

    Ok(ResidueConstants {
        euler_gamma: g,
        stieltjes1,
        stieltjes2,
        zeta_d1_2: d1,
        zeta_d2_2: d2,
        zeta_d3_2: d3,
        zeta_prime_m1,
        zeta_d2_m1,
        log_glaisher,
        glaisher_log12: 12.0 * log_glaisher,
        a0,
        a1,
        a2,
        a3,
        stieltjes_radius_gap,
        zeta_d2_m1_radius_gap: 2.0 * (c1[0].re - c2[0].re).abs(),
    })
}

/// Process-wide cached constants.
pub fn residue_constants() -> &'static ResidueConstants {
    static C: OnceLock<ResidueConstants> = OnceLock::new();
    C.get_or_init(|| stieltjes_and_local_derivatives().expect("residue constants"))
}
