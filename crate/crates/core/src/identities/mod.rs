//! Identity verifiers. Each computes both sides of one identity along
//! independent code paths and returns an [`IdentityReport`].
//!
//! Left-hand sides draw their arithmetic from the sieve in [`ArithTable`];
//! right-hand sides use the single-value functions (`c_value`, `b_value`,
//! `cab_value`) or the separate Möbius sieve behind `c_table`.

mod divisor;
mod lambda;
mod lemmas;
mod testfn;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::arith::{build_tables, c_table, smoothed_sum, ArithTable, SmoothingScheme};
use crate::error::{Error, Result};
use crate::specfun::{ln_gamma, EULER_GAMMA};
use crate::zeta::{default_zero_table, load_seeds, zero_sum, ZeroTable, ZetaZero};
use crate::Complex64;

pub use divisor::{
    experimental_d2_kernel, koshliakov, verify_baselines, verify_cohen_d2, verify_cohen_sigma,
    verify_d2_residue_constants, verify_rg_d2, verify_rg_sigma, voronoi_d,
};
pub use lambda::{
    gamma_ratio_closed, gamma_ratio_contour, gauss_kernel, k0_hypergeometric, riesz_bracket_excess,
    verify_cohen_lambda, verify_lambda_exp, verify_lambda_gauss, verify_lambda_k0,
    verify_lambda_riesz, verify_mu_ramanujan, verify_rg_lambda,
};
pub use lemmas::verify_lemmas;
pub use testfn::{TestFunction, TestKind};

/// Registered identities, in registry (and output) order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityId {
    LambdaExp,
    LambdaGauss,
    LambdaK0,
    LambdaRiesz,
    CohenLambda,
    RgLambda,
    MuRamanujan,
    CohenSigma,
    RgSigma,
    CohenD2,
    RgD2,
    CnSums,
    D2Residues,
    Lemmas,
    Baselines,
}

impl IdentityId {
    pub const ALL: [IdentityId; 15] = [
        IdentityId::LambdaExp,
        IdentityId::LambdaGauss,
        IdentityId::LambdaK0,
        IdentityId::LambdaRiesz,
        IdentityId::CohenLambda,
        IdentityId::RgLambda,
        IdentityId::MuRamanujan,
        IdentityId::CohenSigma,
        IdentityId::RgSigma,
        IdentityId::CohenD2,
        IdentityId::RgD2,
        IdentityId::CnSums,
        IdentityId::D2Residues,
        IdentityId::Lemmas,
        IdentityId::Baselines,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityId::LambdaExp => "lambda-exp",
            IdentityId::LambdaGauss => "lambda-gauss",
            IdentityId::LambdaK0 => "lambda-k0",
            IdentityId::LambdaRiesz => "lambda-riesz",
            IdentityId::CohenLambda => "cohen-lambda",
            IdentityId::RgLambda => "rg-lambda",
            IdentityId::MuRamanujan => "mu-ramanujan",
            IdentityId::CohenSigma => "cohen-sigma",
            IdentityId::RgSigma => "rg-sigma",
            IdentityId::CohenD2 => "cohen-d2",
            IdentityId::RgD2 => "rg-d2",
            IdentityId::CnSums => "cn-sums",
            IdentityId::D2Residues => "d2-residues",
            IdentityId::Lemmas => "lemmas",
            IdentityId::Baselines => "baselines",
        }
    }

    /// The RHS constant perturbed by the mutation control.
    pub fn mutation_key(self) -> &'static str {
        match self {
            IdentityId::LambdaExp
            | IdentityId::LambdaGauss
            | IdentityId::LambdaK0
            | IdentityId::LambdaRiesz
            | IdentityId::CohenLambda
            | IdentityId::RgLambda => "zeta_half_term",
            IdentityId::MuRamanujan => "rhs_prefactor",
            IdentityId::CohenSigma | IdentityId::RgSigma => "residue_sum",
            IdentityId::CohenD2 => "r0",
            IdentityId::RgD2 => "res1",
            IdentityId::CnSums => "target",
            IdentityId::D2Residues => "closed_form",
            IdentityId::Lemmas => "closed_form",
            IdentityId::Baselines => "gamma_term",
        }
    }

    /// Reference parameter point (also the default when flags are absent).
    pub fn reference_params(self) -> Params {
        let p = Params::default();
        match self {
            IdentityId::LambdaExp | IdentityId::LambdaGauss | IdentityId::LambdaK0 => {
                Params { y: Some(1.0), ..p }
            }
            IdentityId::LambdaRiesz => Params { y: Some(10.5), ..p },
            IdentityId::CohenLambda => Params { x: Some(1.3), ..p },
            IdentityId::RgLambda => Params { x: Some(1.0), ..p },
            IdentityId::MuRamanujan => Params {
                alpha: Some(1.0),
                ..p
            },
            IdentityId::CohenSigma => Params {
                a: Some(0.3),
                b: Some(0.2),
                x: Some(2.5),
                ..p
            },
            IdentityId::RgSigma => Params {
                a: Some(0.4),
                b: Some(0.1),
                x: Some(1.0),
                ..p
            },
            IdentityId::CohenD2 => Params { x: Some(2.5), ..p },
            IdentityId::RgD2 => Params { x: Some(1.0), ..p },
            _ => p,
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::Domain(format!("unknown identity '{s}'")))
    }
}

/// Optional identity parameters; absent entries take the reference point.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub x: Option<f64>,
    pub y: Option<f64>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub alpha: Option<f64>,
}

impl Params {
    /// Fills unset entries from `other`.
    pub fn or(self, other: Params) -> Params {
        Params {
            x: self.x.or(other.x),
            y: self.y.or(other.y),
            a: self.a.or(other.a),
            b: self.b.or(other.b),
            alpha: self.alpha.or(other.alpha),
        }
    }

    fn need(v: Option<f64>, name: &str) -> Result<f64> {
        v.ok_or_else(|| Error::ParameterDomain(format!("parameter {name} is required")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mutation {
    pub key: String,
    pub factor: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifierConfig {
    pub series_terms: usize,
    pub zero_count: usize,
    pub quad_tol: f64,
    pub smoothing: SmoothingScheme,
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mutation: Option<Mutation>,
}

impl VerifierConfig {
    /// Per-identity defaults, chosen from each identity's truncation model.
    pub fn default_for(id: IdentityId) -> VerifierConfig {
        let abel = SmoothingScheme::AbelExponential { scale: 1e6 };
        let base = VerifierConfig {
            series_terms: 1_000_000,
            zero_count: 100,
            quad_tol: 1e-12,
            smoothing: abel,
            tolerance: 1e-8,
            mutation: None,
        };
        match id {
            IdentityId::LambdaExp | IdentityId::LambdaGauss => VerifierConfig {
                zero_count: 50,
                tolerance: 5e-4,
                ..base
            },
            IdentityId::LambdaK0 => VerifierConfig {
                zero_count: 50,
                tolerance: 1e-3,
                ..base
            },
            IdentityId::LambdaRiesz => VerifierConfig {
                zero_count: 50,
                tolerance: 5e-3,
                ..base
            },
            IdentityId::CohenLambda => VerifierConfig {
                series_terms: 200_000,
                zero_count: 40,
                ..base
            },
            IdentityId::RgLambda => VerifierConfig {
                series_terms: 80,
                zero_count: 40,
                ..base
            },
            IdentityId::MuRamanujan => VerifierConfig {
                tolerance: 1e-9,
                ..base
            },
            IdentityId::CohenSigma => VerifierConfig {
                tolerance: 5e-3,
                ..base
            },
            IdentityId::RgSigma => VerifierConfig {
                series_terms: 8,
                tolerance: 1e-6,
                ..base
            },
            IdentityId::CohenD2 => VerifierConfig {
                tolerance: 1e-3,
                ..base
            },
            IdentityId::RgD2 => VerifierConfig {
                series_terms: 8,
                tolerance: 1e-6,
                ..base
            },
            IdentityId::CnSums => VerifierConfig {
                tolerance: 2e-3,
                ..base
            },
            IdentityId::D2Residues => VerifierConfig {
                tolerance: 1e-8,
                ..base
            },
            IdentityId::Lemmas => VerifierConfig {
                tolerance: 1e-8,
                ..base
            },
            IdentityId::Baselines => VerifierConfig {
                tolerance: 1e-10,
                ..base
            },
        }
    }

    pub fn with_mutation(mut self, key: &str, factor: f64) -> Self {
        self.mutation = Some(Mutation {
            key: key.to_string(),
            factor,
        });
        self
    }

    /// Mutation factor for `key` (1 unless this key is being perturbed).
    pub fn m(&self, key: &str) -> f64 {
        match &self.mutation {
            Some(m) if m.key == key => m.factor,
            _ => 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Truncation {
    pub series_terms: usize,
    pub zero_count: usize,
    pub quad_tol: f64,
    pub smoothing: Option<SmoothingScheme>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity_id: String,
    pub params: BTreeMap<String, f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub rhs_components: BTreeMap<String, f64>,
    pub residual_abs: f64,
    pub residual_rel: f64,
    pub tolerance: f64,
    pub truncation: Truncation,
    pub pass: bool,
    pub wall_time_ms: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Incremental construction of a report.
pub(crate) struct Builder {
    id: String,
    start: Instant,
    params: BTreeMap<String, f64>,
    components: BTreeMap<String, f64>,
    notes: Vec<String>,
}

impl Builder {
    pub(crate) fn new(id: &str) -> Self {
        Builder {
            id: id.to_string(),
            start: Instant::now(),
            params: BTreeMap::new(),
            components: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub(crate) fn param(mut self, k: &str, v: f64) -> Self {
        self.params.insert(k.to_string(), v);
        self
    }

    pub(crate) fn comp(&mut self, k: &str, v: f64) -> f64 {
        self.components.insert(k.to_string(), v);
        v
    }

    pub(crate) fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub(crate) fn finish(
        self,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
        truncation: Truncation,
    ) -> IdentityReport {
        let residual_abs = (lhs - rhs).abs();
        let scale = lhs.abs().max(rhs.abs());
        IdentityReport {
            identity_id: self.id,
            params: self.params,
            lhs,
            rhs,
            rhs_components: self.components,
            residual_abs,
            residual_rel: if scale > 0.0 {
                residual_abs / scale
            } else {
                0.0
            },
            tolerance,
            truncation,
            pass: residual_abs <= tolerance,
            wall_time_ms: self.start.elapsed().as_millis() as u64,
            notes: self.notes,
        }
    }
}

pub(crate) fn trunc(
    cfg: &VerifierConfig,
    series_terms: usize,
    zero_count: usize,
    smoothed: bool,
) -> Truncation {
    Truncation {
        series_terms,
        zero_count,
        quad_tol: cfg.quad_tol,
        smoothing: if smoothed { Some(cfg.smoothing) } else { None },
    }
}

/// e^{lnΓ(z)} — complex Γ without pole checks (callers stay off poles).
pub(crate) fn cgamma(z: Complex64) -> Complex64 {
    ln_gamma(z).exp()
}

/// Shared, lazily built state: zero table, sieve tables, smoothed sums.
pub struct Lab {
    zeros: ZeroTable,
    arith: Mutex<Option<Arc<ArithTable>>>,
    c_cache: Mutex<Option<Arc<Vec<i32>>>>,
    abel: Mutex<BTreeMap<u64, (f64, f64)>>,
}

impl Lab {
    /// Lab over the bundled 100-zero table.
    pub fn new() -> Result<Lab> {
        Ok(Lab::with_zero_table(default_zero_table()?.clone()))
    }

    pub fn with_zero_table(zeros: ZeroTable) -> Lab {
        Lab {
            zeros,
            arith: Mutex::new(None),
            c_cache: Mutex::new(None),
            abel: Mutex::new(BTreeMap::new()),
        }
    }

    /// Uses the seed file named by `ZQLAB_SEEDS` if set, else bundled seeds.
    pub fn from_env() -> Result<Lab> {
        match std::env::var_os("ZQLAB_SEEDS") {
            Some(path) => {
                let path = std::path::PathBuf::from(path);
                let seeds = load_seeds(&path)?;
                let t = ZeroTable::from_seeds(&seeds, seeds.len(), &path.display().to_string())?;
                t.brackets(&Default::default())?;
                Ok(Lab::with_zero_table(t))
            }
            None => Lab::new(),
        }
    }

    pub fn zero_table(&self) -> &ZeroTable {
        &self.zeros
    }

    pub(crate) fn zeros(&self, count: usize) -> Result<ZeroTable> {
        if count == 0 || count > self.zeros.len() {
            return Err(Error::ParameterDomain(format!(
                "zero count must be in 1..={}, got {count}",
                self.zeros.len()
            )));
        }
        Ok(self.zeros.truncated(count))
    }

    /// Σ over the first `count` zeros of 2·Re(term(ρ)).
    pub(crate) fn zsum<F>(&self, count: usize, term: F) -> Result<f64>
    where
        F: Fn(&ZetaZero) -> Result<Complex64>,
    {
        let t = self.zeros(count)?;
        let values: Vec<Complex64> = t.zeros.iter().map(&term).collect::<Result<_>>()?;
        zero_sum(|z| values[z.index - 1], &t)
    }

    /// Sieve tables covering at least 1..=limit.
    pub fn arith(&self, limit: usize) -> Result<Arc<ArithTable>> {
        let mut g = self.arith.lock().unwrap();
        if let Some(t) = g.as_ref() {
            if t.limit() >= limit {
                return Ok(t.clone());
            }
        }
        let t = Arc::new(build_tables(limit.max(1000))?);
        *g = Some(t.clone());
        Ok(t)
    }

    /// c(n) from the standalone Möbius sieve, covering at least 1..=limit.
    pub fn c_table(&self, limit: usize) -> Arc<Vec<i32>> {
        let mut g = self.c_cache.lock().unwrap();
        if let Some(t) = g.as_ref() {
            if t.len() > limit {
                return t.clone();
            }
        }
        let t = Arc::new(c_table(limit.max(1000)));
        *g = Some(t.clone());
        t
    }

    /// Abel-smoothed (Σc(n)/n, Σc(n)log n/n) at scale X.
    pub fn abel_c_sums(&self, scale: f64) -> Result<(f64, f64)> {
        if let Some(v) = self.abel.lock().unwrap().get(&scale.to_bits()) {
            return Ok(*v);
        }
        let scheme = SmoothingScheme::abel(scale)?;
        let cut = SmoothingScheme::abel_cutoff(scale);
        let c = self.c_table(cut);
        let s1 = smoothed_sum(|n| c[n] as f64, 1.0, scheme, cut);
        let sl = smoothed_sum(|n| c[n] as f64 * (n as f64).ln(), 1.0, scheme, cut);
        self.abel.lock().unwrap().insert(scale.to_bits(), (s1, sl));
        Ok((s1, sl))
    }

    /// The smoothed c(n) sums under `scheme`: Abel or Cesàro.
    pub fn c_sums(&self, scheme: SmoothingScheme) -> Result<(f64, f64)> {
        match scheme {
            SmoothingScheme::AbelExponential { scale } => self.abel_c_sums(scale),
            SmoothingScheme::Cesaro { scale, .. } => {
                let n = scale as usize;
                let c = self.c_table(n);
                Ok((
                    smoothed_sum(|k| c[k] as f64, 1.0, scheme, n),
                    smoothed_sum(|k| c[k] as f64 * (k as f64).ln(), 1.0, scheme, n),
                ))
            }
        }
    }
}

/// Σc(n)/n → 1/2 and Σc(n)log n/n → −γ/2 under smoothing; two reports.
pub fn verify_cn_sums(lab: &Lab, cfg: &VerifierConfig) -> Result<Vec<IdentityReport>> {
    let scale = match cfg.smoothing {
        SmoothingScheme::AbelExponential { scale } | SmoothingScheme::Cesaro { scale, .. } => scale,
    };
    let mut out = Vec::new();
    let (s1, sl) = lab.c_sums(cfg.smoothing)?;
    let (c1, cl) = lab.c_sums(SmoothingScheme::abel(1e3)?)?;
    let cross = lab.c_sums(SmoothingScheme::cesaro(2, scale.min(1e6))?)?;
    let targets = [0.5, -EULER_GAMMA / 2.0];
    let tols = [cfg.tolerance, cfg.tolerance * 2.5];
    let names = ["c_over_n", "c_log_over_n"];
    for (k, (&value, &coarse)) in [s1, sl].iter().zip(&[c1, cl]).enumerate() {
        let mut b = Builder::new("cn-sums")
            .param("scale", scale)
            .param("weight", k as f64);
        b.comp("target", targets[k] * cfg.m("target"));
        b.comp("error_at_1e3", (coarse - targets[k]).abs());
        b.comp(
            "cesaro2_cross_check",
            if k == 0 { cross.0 } else { cross.1 },
        );
        b.note(format!(
            "{}: X^(-1/2) tolerance model is a heuristic",
            names[k]
        ));
        out.push(b.finish(
            value,
            targets[k] * cfg.m("target"),
            tols[k],
            trunc(cfg, SmoothingScheme::abel_cutoff(scale), 0, true),
        ));
    }
    Ok(out)
}

/// Runs one registered identity at `params` (missing entries take the
/// reference point).
pub fn run_identity(
    lab: &Lab,
    id: IdentityId,
    params: Params,
    cfg: &VerifierConfig,
) -> Result<Vec<IdentityReport>> {
    let p = params.or(id.reference_params());
    let one = |r: Result<IdentityReport>| r.map(|r| vec![r]);
    match id {
        IdentityId::LambdaExp => one(verify_lambda_exp(lab, Params::need(p.y, "y")?, cfg)),
        IdentityId::LambdaGauss => one(verify_lambda_gauss(lab, Params::need(p.y, "y")?, cfg)),
        IdentityId::LambdaK0 => one(verify_lambda_k0(lab, Params::need(p.y, "y")?, cfg)),
        IdentityId::LambdaRiesz => one(verify_lambda_riesz(lab, Params::need(p.y, "y")?, cfg)),
        IdentityId::CohenLambda => one(verify_cohen_lambda(lab, Params::need(p.x, "x")?, cfg)),
        IdentityId::RgLambda => one(verify_rg_lambda(lab, Params::need(p.x, "x")?, cfg)),
        IdentityId::MuRamanujan => one(verify_mu_ramanujan(
            lab,
            Params::need(p.alpha, "alpha")?,
            cfg,
        )),
        IdentityId::CohenSigma => one(verify_cohen_sigma(
            lab,
            Params::need(p.a, "a")?,
            Params::need(p.b, "b")?,
            Params::need(p.x, "x")?,
            cfg,
        )),
        IdentityId::RgSigma => one(verify_rg_sigma(
            lab,
            Params::need(p.a, "a")?,
            Params::need(p.b, "b")?,
            Params::need(p.x, "x")?,
            cfg,
        )),
        IdentityId::CohenD2 => one(verify_cohen_d2(lab, Params::need(p.x, "x")?, cfg)),
        IdentityId::RgD2 => one(verify_rg_d2(lab, Params::need(p.x, "x")?, cfg)),
        IdentityId::CnSums => verify_cn_sums(lab, cfg),
        IdentityId::D2Residues => verify_d2_residue_constants(cfg),
        IdentityId::Lemmas => verify_lemmas(cfg),
        IdentityId::Baselines => verify_baselines(lab, params.x, cfg),
    }
}

/// The parameter points exercised by `verify all` and the acceptance suite.
pub fn acceptance_plan() -> Vec<(IdentityId, Params)> {
    use IdentityId::*;
    let x = |v: f64| Params {
        x: Some(v),
        ..Params::default()
    };
    let y = |v: f64| Params {
        y: Some(v),
        ..Params::default()
    };
    let alpha = |v: f64| Params {
        alpha: Some(v),
        ..Params::default()
    };
    let mut plan = vec![];
    for v in [0.7, 1.3, 2.9] {
        plan.push((CohenLambda, x(v)));
    }
    for v in [0.5, 1.0, 2.0] {
        plan.push((RgLambda, x(v)));
    }
    plan.push((LambdaExp, y(1.0)));
    plan.push((LambdaGauss, y(1.0)));
    plan.push((LambdaK0, y(1.0)));
    plan.push((LambdaRiesz, y(10.5)));
    for v in [1.0, 2.0, std::f64::consts::PI.sqrt()] {
        plan.push((MuRamanujan, alpha(v)));
    }
    plan.push((CnSums, Params::default()));
    plan.push((
        CohenSigma,
        Params {
            a: Some(0.3),
            b: Some(0.2),
            x: Some(2.5),
            ..Params::default()
        },
    ));
    plan.push((
        RgSigma,
        Params {
            a: Some(0.4),
            b: Some(0.1),
            x: Some(1.0),
            ..Params::default()
        },
    ));
    plan.push((CohenD2, x(2.5)));
    plan.push((RgD2, x(1.0)));
    plan.push((RgD2, x(2.0)));
    plan.push((D2Residues, Params::default()));
    plan.push((Lemmas, Params::default()));
    plan.push((Baselines, Params::default()));
    plan
}
