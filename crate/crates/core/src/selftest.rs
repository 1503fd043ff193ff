//! Module invariant suites, runnable outside the test harness (`zqlab selftest`).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::arith::{build_tables, c_table, dirichlet_convolve, DerivedTables};
use crate::error::Result;
use crate::identities::{
    run_identity, IdentityId, Lab, Params, TestFunction, TestKind, VerifierConfig,
};
use crate::specfun::{bessel_i, bessel_j, bessel_k, bessel_y, gamma};
use crate::zeta::{chi_factor, zeta, BracketPolicy};
use crate::Complex64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    fn new(name: &str, value: f64, tolerance: f64) -> Check {
        Check {
            name: name.to_string(),
            value,
            tolerance,
            pass: value <= tolerance,
        }
    }
}

/// Identities whose reports rest on the 10⁶-term smoothed sums.
pub fn is_smoothed(id: IdentityId) -> bool {
    matches!(
        id,
        IdentityId::LambdaExp
            | IdentityId::LambdaGauss
            | IdentityId::LambdaK0
            | IdentityId::LambdaRiesz
            | IdentityId::CnSums
    )
}

/// Number of n ≤ limit where a sieve identity fails.
pub fn sieve_mismatches(limit: usize) -> Result<usize> {
    let t = build_tables(limit)?;
    let mut mu_sum = vec![0i64; limit + 1];
    let mut divs = vec![0u32; limit + 1];
    for d in 1..=limit {
        let m = t.moebius(d)? as i64;
        for k in (d..=limit).step_by(d) {
            mu_sum[k] += m;
            divs[k] += 1;
        }
    }
    let d4 = dirichlet_convolve(|n| divs[n] as f64, |n| divs[n] as f64, limit);
    let dt = DerivedTables::build(&t, 0.0, 0.0);
    let c = c_table(limit);
    let mut bad = 0;
    for n in 1..=limit {
        let omega: u32 = t.factorize(n)?.iter().map(|f| f.1).sum();
        let lambda = if omega % 2 == 0 { 1 } else { -1 };
        let ok = mu_sum[n] == (n == 1) as i64
            && t.d(n)? == divs[n]
            && t.d4(n)? as f64 == d4[n]
            && t.lambda(n)? as i32 == lambda
            && c[n] as i64 == dt.c[n]
            && dt.cab[n] == dt.b[n] as f64;
        if !ok {
            bad += 1;
        }
    }
    Ok(bad)
}

/// Largest deviation of the J/Y and I/K Wronskians from 2/(πx) and −1/x.
pub fn wronskian_error() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for x in [0.5, 1.0, 2.0, 5.0, 12.0, 40.0] {
        for nu in [0.0, 0.25, 0.5, 1.0] {
            let j = bessel_j(nu, x)?;
            let y = bessel_y(nu, x)?;
            let jp = nu / x * j - bessel_j(nu + 1.0, x)?;
            let yp = nu / x * y - bessel_y(nu + 1.0, x)?;
            worst = worst.max(((j * yp - jp * y) * PI * x / 2.0 - 1.0).abs());
            let i = bessel_i(nu, x)?;
            let k = bessel_k(nu, x)?;
            let ip = bessel_i(nu + 1.0, x)? + nu / x * i;
            let kp = nu / x * k - bessel_k(nu + 1.0, x)?;
            worst = worst.max(((i * kp - ip * k) * x + 1.0).abs());
        }
    }
    Ok(worst)
}

/// Largest relative error of Γ reflection and duplication on a fixed grid.
pub fn gamma_identity_error() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &(re, im) in &[
        (0.3, 0.0),
        (0.25, 3.0),
        (-1.7, 0.4),
        (2.5, -7.0),
        (0.1, 40.0),
        (-3.3, -12.0),
    ] {
        let s = Complex64::new(re, im);
        let dup = gamma(s)? * gamma(s + 0.5)?;
        let rhs = Complex64::new(2.0, 0.0).powc(1.0 - 2.0 * s) * PI.sqrt() * gamma(2.0 * s)?;
        worst = worst.max((dup - rhs).norm() / rhs.norm());
        let refl = gamma(s)? * gamma(1.0 - s)? * (s * PI).sin();
        worst = worst.max((refl - PI).norm() / PI.max(refl.norm()));
    }
    Ok(worst)
}

/// max |ζ(s) − χ(s)ζ(1−s)| over a 5×4 grid in −1 ≤ σ ≤ 2, 1 ≤ t ≤ 60.
pub fn functional_equation_error() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for k in 0..20 {
        let s = Complex64::new(
            -1.0 + 3.0 * (k % 5) as f64 / 4.0,
            1.0 + 59.0 * (k / 5) as f64 / 3.0,
        );
        worst = worst.max((zeta(s)? - chi_factor(s)? * zeta(1.0 - s)?).norm());
    }
    Ok(worst)
}

/// Worst Mellin-pair residual over the four test-function kinds at s = 1.5, 2.5.
pub fn mellin_pair_error() -> Result<f64> {
    let mut worst: f64 = 0.0;
    let kinds = [
        TestFunction::exp(1.0)?,
        TestFunction::gauss(1.0)?,
        TestFunction::k0(1.0)?,
        TestFunction::new(TestKind::Riesz { y: 10.5, k: 0.5 })?,
    ];
    for f in &kinds {
        for s in [1.5, 2.5] {
            worst = worst.max(f.mellin_residual(s, 1e-12)?);
        }
    }
    Ok(worst)
}

/// Largest change of a passing residual when the zero count goes 40 → 80,
/// over the absolutely convergent verifiers.
pub fn zero_count_stability(lab: &Lab) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for id in [
        IdentityId::CohenLambda,
        IdentityId::RgLambda,
        IdentityId::RgSigma,
        IdentityId::RgD2,
        IdentityId::CohenD2,
    ] {
        let run = |n: usize| -> Result<f64> {
            let cfg = VerifierConfig {
                zero_count: n,
                ..VerifierConfig::default_for(id)
            };
            Ok(run_identity(lab, id, Params::default(), &cfg)?[0].residual_abs)
        };
        worst = worst.max((run(40)? - run(80)?).abs());
    }
    Ok(worst)
}

/// Identities whose reference point does NOT flip to fail under a
/// 1% perturbation of its mutation constant.
pub fn mutation_survivors(lab: &Lab, fast: bool) -> Result<Vec<IdentityId>> {
    let mut out = Vec::new();
    for id in IdentityId::ALL {
        if fast && is_smoothed(id) {
            continue;
        }
        let cfg = VerifierConfig::default_for(id).with_mutation(id.mutation_key(), 1.01);
        let reports = run_identity(lab, id, Params::default(), &cfg)?;
        if reports.iter().all(|r| r.pass) {
            out.push(id);
        }
    }
    Ok(out)
}

/// All suites. `fast` skips the work built on the 10⁶-term smoothed sums.
pub fn run(lab: &Lab, fast: bool) -> Result<Vec<Check>> {
    let zeros = lab.zero_table();
    let mut out = vec![
        Check::new(
            "sieve identities n <= 1e5 (mismatches)",
            sieve_mismatches(100_000)? as f64,
            0.0,
        ),
        Check::new("bessel wronskians (relative)", wronskian_error()?, 1e-9),
        Check::new(
            "gamma reflection/duplication (relative)",
            gamma_identity_error()?,
            1e-11,
        ),
        Check::new(
            "zeta functional equation grid",
            functional_equation_error()?,
            1e-10,
        ),
        Check::new("test-function mellin pairs", mellin_pair_error()?, 1e-8),
        Check::new(
            "zero refinement max |zeta(rho)|",
            zeros.max_residual(),
            1e-10,
        ),
        Check::new(
            "singleton brackets at c = 1 (failures)",
            zeros.brackets(&BracketPolicy::default()).is_err() as u8 as f64,
            0.0,
        ),
        Check::new(
            "zero-sum stability 40 -> 80 zeros",
            zero_count_stability(lab)?,
            1e-10,
        ),
    ];
    let survivors = mutation_survivors(lab, fast)?;
    out.push(Check::new(
        "mutation controls (identities not flipped)",
        survivors.len() as f64,
        0.0,
    ));
    if !fast {
        for id in IdentityId::ALL.into_iter().filter(|&id| is_smoothed(id)) {
            let reports =
                run_identity(lab, id, Params::default(), &VerifierConfig::default_for(id))?;
            let worst = reports
                .iter()
                .map(|r| r.residual_abs / r.tolerance)
                .fold(0.0, f64::max);
            out.push(Check::new(
                &format!("{id} (residual / tolerance)"),
                worst,
                1.0,
            ));
        }
    }
    Ok(out)
}
