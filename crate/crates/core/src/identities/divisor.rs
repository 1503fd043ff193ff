//! σ_a(n)σ_b(n) and d²(n) identities of Cohen and Ramanujan–Guinand type,
//! the Laurent constants A₀–A₃, and the classical d(n) baselines.

use std::f64::consts::PI;

use super::{cgamma, trunc, Builder, IdentityReport, Lab, VerifierConfig};
use crate::arith::{b_value, cab_value, sigma_pow};
use crate::error::{Error, Result};
use crate::quad::{integrate_semi_infinite, integrate_vertical_line, laurent_coefficients};
use crate::specfun::{
    bessel_k, bessel_k_scaled, gamma_r, ln_gamma, meijer_g04_42, meijer_g24_kbessel,
};
use crate::sum::det_sum;
use crate::zeta::{residue_constants, zeta, ZetaZero};
use crate::Complex64;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn zr(s: f64) -> f64 {
    zeta(c(s)).map(|z| z.re).unwrap_or(f64::NAN)
}

/// Γ(s)ζ(s) on the real line.
fn f_real(s: f64) -> f64 {
    gamma_r(s) * zr(s)
}

/// Γ(s/2)ζ(s) on the real line.
fn g_real(s: f64) -> f64 {
    gamma_r(0.5 * s) * zr(s)
}

fn check_ab(a: f64, b: f64) -> Result<()> {
    for (name, v) in [("a", a), ("b", b), ("a+b", a + b), ("a-b", a - b)] {
        if !(v.abs() < 1.0) {
            return Err(Error::ParameterDomain(format!(
                "|{name}| < 1 required, got {v}"
            )));
        }
    }
    Ok(())
}

fn positive_nonint(x: f64) -> Result<()> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::ParameterDomain(format!(
            "x must be positive, got {x}"
        )));
    }
    if (x - x.round()).abs() < 1e-9 {
        return Err(Error::ParameterDomain(format!(
            "x must not be an integer, got {x}"
        )));
    }
    Ok(())
}

/// Σ_{n≤N} a(n)f(n) + ∫_{N+1/2}^∞ f(t)·density(t) dt.
fn sum_with_tail<F, D>(coeff: &[f64], n: usize, f: F, density: D, tol: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64 + Sync,
    D: Fn(f64) -> f64,
{
    let head = det_sum(1, n, |k| coeff[k] * f(k as f64));
    let tail = integrate_semi_infinite(|t| f(t) * density(t), n as f64 + 0.5, tol)?;
    Ok((head, tail.value.re))
}

/// Σσ_aσ_b·x(x^{−a}−n^{−a})(x^{−b}−n^{−b})/(x²−n²).
pub fn verify_cohen_sigma(
    lab: &Lab,
    a: f64,
    b: f64,
    x: f64,
    cfg: &VerifierConfig,
) -> Result<IdentityReport> {
    check_ab(a, b)?;
    if a == 0.0 || b == 0.0 {
        return Err(Error::ParameterDomain(
            "a = 0 or b = 0: use cohen-d2 for the d² case".into(),
        ));
    }
    positive_nonint(x)?;
    let mut rep = Builder::new("cohen-sigma")
        .param("a", a)
        .param("b", b)
        .param("x", x);
    let n = cfg.series_terms;
    let t = lab.arith(n)?;
    let sa: Vec<f64> =
        t.multiplicative(|p, e| (0..=e).map(|j| (p as f64).powf(j as f64 * a)).sum::<f64>());
    let sb: Vec<f64> =
        t.multiplicative(|p, e| (0..=e).map(|j| (p as f64).powf(j as f64 * b)).sum::<f64>());
    let coeff: Vec<f64> = sa.iter().zip(&sb).map(|(u, v)| u * v).collect();
    let f = |m: f64| x * (x.powf(-a) - m.powf(-a)) * (x.powf(-b) - m.powf(-b)) / (x * x - m * m);
    // Σσ_aσ_b n^{−s} has simple poles at 1, 1+a, 1+b, 1+a+b
    let res = [
        (
            1.0,
            zr(1.0 - a) * zr(1.0 - b) * zr(1.0 - a - b) / zr(2.0 - a - b),
        ),
        (
            1.0 + a,
            zr(1.0 + a) * zr(1.0 + a - b) * zr(1.0 - b) / zr(2.0 + a - b),
        ),
        (
            1.0 + b,
            zr(1.0 + b) * zr(1.0 + b - a) * zr(1.0 - a) / zr(2.0 + b - a),
        ),
        (
            1.0 + a + b,
            zr(1.0 + a + b) * zr(1.0 + a) * zr(1.0 + b) / zr(2.0 + a + b),
        ),
    ];
    let density = |u: f64| res.iter().map(|(p, r)| r * u.powf(p - 1.0)).sum::<f64>();
    let (head, tail) = sum_with_tail(&coeff[..=n], n, f, density, 1e-13)?;
    rep.comp("lhs_tail_integral", tail);
    let lhs = head + tail;

    // dual series: C_{a,b}(n) against the G^{4,0}_{2,4} kernel
    let m = ((45.0 / (4.0 * PI)).powi(2) / x).ceil() as u64 + 5;
    let mut series = 0.0;
    for k in 1..=m {
        let kf = k as f64;
        let w = 4.0 * PI * (kf * x).sqrt();
        let bracket = PI.sqrt() * meijer_g24_kbessel(a, b, w * w)? * w.powf(a + b - 1.0);
        series += cab_value(k, a, b) * kf.powf(-(a + b - 1.0) / 2.0) * bracket;
    }
    let sines = (PI * a / 2.0).sin() * (PI * b / 2.0).sin();
    let series = rep.comp(
        "series",
        32.0 * PI * x.powf((1.0 - a - b) / 2.0) * sines * series,
    );

    let xx = 4.0 * PI * PI * x;
    let r = [
        -f_real(-a) * f_real(-b) * f_real(-a - b) / (2.0 * f_real(-a - b - 1.0)),
        -f_real(a) * f_real(a - b) * f_real(-b) / (2.0 * f_real(a - b - 1.0)) * xx.powf(-a),
        -f_real(b) * f_real(b - a) * f_real(-a) / (2.0 * f_real(b - a - 1.0)) * xx.powf(-b),
        -f_real(a + b) * f_real(a) * f_real(b) / (2.0 * f_real(a + b - 1.0)) * xx.powf(-a - b),
        f_real(1.0 - a) * f_real(1.0 - b) / xx,
        f_real(1.0 + a) * f_real(1.0 - b) * xx.powf(-1.0 - a),
        f_real(1.0 + b) * f_real(1.0 - a) * xx.powf(-1.0 - b),
        f_real(1.0 + a) * f_real(1.0 + b) * xx.powf(-1.0 - a - b),
    ];
    let residues = rep.comp("residue_sum", r.iter().sum::<f64>() * cfg.m("residue_sum"));
    let lx = xx.ln();
    let zs = rep.comp(
        "zero_sum",
        lab.zsum(cfg.zero_count, |z: &ZetaZero| {
            let rho = z.rho;
            let args = [
                (1.0 + rho + a + b) * 0.5,
                (1.0 + rho - a + b) * 0.5,
                (1.0 + rho + a - b) * 0.5,
                (1.0 + rho - a - b) * 0.5,
            ];
            let mut lg = -ln_gamma(rho) - (rho + 1.0 + a + b) * 0.5 * lx;
            let mut zp = Complex64::new(1.0, 0.0);
            for s in args {
                lg += ln_gamma(s);
                zp *= zeta(s)?;
            }
            Ok(lg.exp() * zp / (2.0 * z.zeta_prime))
        })?,
    );
    let rhs = series - 2.0 * (2.0 * PI).powf(a + b) * sines * (residues + zs);
    Ok(rep.finish(
        lhs,
        rhs,
        cfg.tolerance,
        trunc(cfg, n, cfg.zero_count, false),
    ))
}

/// 8x^{−(a+b)/2}Σσ_aσ_b n^{−(a+b)/2}K_{a/2}(2nx)K_{b/2}(2nx).
pub fn verify_rg_sigma(
    lab: &Lab,
    a: f64,
    b: f64,
    x: f64,
    cfg: &VerifierConfig,
) -> Result<IdentityReport> {
    for (name, v) in [("a", a), ("b", b), ("a+b", a + b), ("a-b", a - b)] {
        if v.abs() < 1e-12 {
            return Err(Error::DegenerateParameters(format!(
                "{name} = 0 merges poles; use rg-d2"
            )));
        }
    }
    check_ab(a, b)?;
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::ParameterDomain(format!(
            "x must be positive, got {x}"
        )));
    }
    let mut rep = Builder::new("rg-sigma")
        .param("a", a)
        .param("b", b)
        .param("x", x);
    let lhs_terms = (40.0 / x).ceil() as usize + 2;
    let t = lab.arith(lhs_terms)?;
    let sa: Vec<f64> =
        t.multiplicative(|p, e| (0..=e).map(|j| (p as f64).powf(j as f64 * a)).sum::<f64>());
    let sb: Vec<f64> =
        t.multiplicative(|p, e| (0..=e).map(|j| (p as f64).powf(j as f64 * b)).sum::<f64>());
    let mut lhs = 0.0;
    for k in 1..=lhs_terms {
        let kf = k as f64;
        lhs += sa[k]
            * sb[k]
            * kf.powf(-(a + b) / 2.0)
            * bessel_k(a / 2.0, 2.0 * kf * x)?
            * bessel_k(b / 2.0, 2.0 * kf * x)?;
    }
    let lhs = 8.0 * x.powf(-(a + b) / 2.0) * lhs;

    let m = cfg.series_terms as u64;
    let ga = [0.5, (1.0 - a) / 2.0, (1.0 - b) / 2.0, (1.0 - a - b) / 2.0];
    let gb = [(1.0 - a - b) / 4.0, (3.0 - a - b) / 4.0];
    let mut series = 0.0;
    for k in 1..=m {
        let kf = k as f64;
        let g = meijer_g04_42(ga, gb, x * x / (4.0 * kf * kf * PI.powi(4)))?;
        series += cab_value(k, -a, -b) / kf * g.value.re;
    }
    let series = rep.comp(
        "series",
        2f64.powf((3.0 - a - b) / 2.0) / PI.powf(a + b + 1.0) * series,
    );
    let sp = PI.sqrt();
    let r = [
        -g_real(-a) * g_real(-b),
        -g_real(a) * g_real(-b) * x.powf(-a),
        -g_real(b) * g_real(-a) * x.powf(-b),
        -g_real(a) * g_real(b) * x.powf(-a - b),
        sp * g_real(1.0 - a) * g_real(1.0 - b) * g_real(1.0 - a - b) / (g_real(2.0 - a - b) * x),
        sp * g_real(1.0 + a) * g_real(1.0 + a - b) * g_real(1.0 - b)
            / (g_real(2.0 + a - b) * x.powf(1.0 + a)),
        sp * g_real(1.0 + b) * g_real(1.0 + b - a) * g_real(1.0 - a)
            / (g_real(2.0 + b - a) * x.powf(1.0 + b)),
        sp * g_real(1.0 + a + b) * g_real(1.0 + a) * g_real(1.0 + b)
            / (g_real(2.0 + a + b) * x.powf(1.0 + a + b)),
    ];
    let residues = rep.comp("residue_sum", r.iter().sum::<f64>() * cfg.m("residue_sum"));
    let lx = x.ln();
    let zs = rep.comp(
        "zero_sum",
        lab.zsum(cfg.zero_count, |z: &ZetaZero| {
            let rho = z.rho;
            let args = [
                (rho + a + b) * 0.5,
                (rho - a + b) * 0.5,
                (rho + a - b) * 0.5,
                (rho - a - b) * 0.5,
            ];
            let mut lg = -ln_gamma(rho * 0.5) - (rho + a + b) * 0.5 * lx;
            let mut zp = Complex64::new(1.0, 0.0);
            for s in args {
                lg += ln_gamma(s * 0.5);
                zp *= zeta(s)?;
            }
            Ok(lg.exp() * zp / (2.0 * z.zeta_prime))
        })?,
    );
    let rhs = series + residues + zs;
    Ok(rep.finish(
        lhs,
        rhs,
        cfg.tolerance,
        trunc(cfg, m as usize, cfg.zero_count, false),
    ))
}

/// A₀ + A₁L + A₂L² + A₃L³ with L = log t: the smooth density of Σd²(n).
fn d2_density(t: f64) -> f64 {
    let rc = residue_constants();
    let l = t.ln();
    rc.a0 + l * (rc.a1 + l * (rc.a2 + l * rc.a3))
}

/// Σd²(n)·x log²(x/n)/(x²−n²).
pub fn verify_cohen_d2(lab: &Lab, x: f64, cfg: &VerifierConfig) -> Result<IdentityReport> {
    positive_nonint(x)?;
    let mut rep = Builder::new("cohen-d2").param("x", x);
    let n = cfg.series_terms;
    let t = lab.arith(n)?;
    let d = t.d_slice();
    let coeff: Vec<f64> = (0..=n)
        .map(|k| if k == 0 { 0.0 } else { (d[k] as f64).powi(2) })
        .collect();
    let f = |m: f64| x * (x / m).ln().powi(2) / (x * x - m * m);
    let (head, tail) = sum_with_tail(&coeff, n, f, d2_density, 1e-13)?;
    rep.comp("lhs_tail_integral", tail);
    let lhs = head + tail;

    let m = ((45.0 / (4.0 * PI)).powi(2) / x).ceil() as u64 + 5;
    let mut series = 0.0;
    for k in 1..=m {
        let kf = k as f64;
        let w = 4.0 * PI * (kf * x).sqrt();
        let k0 = bessel_k_scaled(0.0, w)?;
        let k1 = bessel_k_scaled(1.0, w)?;
        series += kf.sqrt() * b_value(k) as f64 * (2.0 * k0 * k1 - k0 * k0 / w) * (-2.0 * w).exp();
    }
    let series = rep.comp("series", 8.0 * PI.powi(3) * x.sqrt() * series);

    let rc = residue_constants();
    let (g, la, l2, lp) = (rc.euler_gamma, rc.log_glaisher, 2f64.ln(), PI.ln());
    let lx = x.ln();
    let l2p = (2.0 * PI).ln();
    let r0 = PI * PI / 4.0 + 3.0 * l2 * l2 - 72.0 * la
        + 6.0 * (g + 12.0 * la) * (12.0 * la - l2p)
        + lp * (64.0 * PI.powi(3)).ln()
        + 0.75 * lx * (4.0 * g + 48.0 * la - 4.0 * l2p + lx)
        - 6.0 * rc.stieltjes1
        + 36.0 * rc.zeta_d2_m1;
    let r0 = rep.comp("r0", r0 * cfg.m("r0"));
    let xx = 4.0 * PI * PI * x;
    let r1 = rep.comp("r1", xx.ln().powi(2) / xx);
    let lxx = xx.ln();
    let zs = rep.comp(
        "zero_sum",
        lab.zsum(cfg.zero_count, |z: &ZetaZero| {
            let h = (1.0 + z.rho) * 0.5;
            let lg = 4.0 * ln_gamma(h) - ln_gamma(z.rho) - h * lxx;
            Ok(lg.exp() * zeta(h)?.powi(4) / (2.0 * z.zeta_prime))
        })?,
    );
    rep.comp("stieltjes_radius_gap", rc.stieltjes_radius_gap);
    rep.comp("zeta_d2_m1_radius_gap", rc.zeta_d2_m1_radius_gap);
    let rhs = series - PI * PI / 2.0 * (r0 + r1 + zs);
    Ok(rep.finish(
        lhs,
        rhs,
        cfg.tolerance,
        trunc(cfg, n, cfg.zero_count, false),
    ))
}

/// Res_{s=1} Γ⁴(s/2)ζ⁴(s)/(Γ(s)ζ(2s))·x^{−s} by a circle integral.
fn rg_d2_residue(x: f64, radius: f64) -> Result<f64> {
    let lx = x.ln();
    let f = |s: Complex64| {
        let z = zeta(s).unwrap_or(Complex64::new(f64::NAN, 0.0));
        let z2 = zeta(2.0 * s).unwrap_or(Complex64::new(f64::NAN, 0.0));
        (4.0 * ln_gamma(s * 0.5) - ln_gamma(s) - s * lx).exp() * z.powi(4) / z2
    };
    Ok(laurent_coefficients(f, c(1.0), radius, -1, -1)?[0].re)
}

/// (γ − log(4π²/x))² + 8Σd²(n)K₀²(2nx).
pub fn verify_rg_d2(lab: &Lab, x: f64, cfg: &VerifierConfig) -> Result<IdentityReport> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::ParameterDomain(format!(
            "x must be positive, got {x}"
        )));
    }
    let mut rep = Builder::new("rg-d2").param("x", x);
    let lhs_terms = (40.0 / x).ceil() as usize + 2;
    let t = lab.arith(lhs_terms)?;
    let d = t.d_slice();
    let rc = residue_constants();
    let mut sum = 0.0;
    for k in 1..=lhs_terms {
        sum += (d[k] as f64).powi(2) * bessel_k(0.0, 2.0 * k as f64 * x)?.powi(2);
    }
    let lhs = (rc.euler_gamma - (4.0 * PI * PI / x).ln()).powi(2) + 8.0 * sum;

    let m = cfg.series_terms as u64;
    let mut series = 0.0;
    for k in 1..=m {
        let kf = k as f64;
        let g = meijer_g04_42([0.5; 4], [0.25, 0.75], x * x / (4.0 * kf * kf * PI.powi(4)))?;
        series += b_value(k) as f64 / kf * g.value.re;
    }
    let series = rep.comp("series", 2f64.powf(1.5) / PI * series);
    let res1 = rg_d2_residue(x, 0.1)?;
    let gap = (res1 - rg_d2_residue(x, 0.05)?).abs();
    rep.comp("res1_radius_gap", gap);
    if gap > 1e-9 {
        rep.note(format!("residue extraction radii disagree by {gap:e}"));
    }
    let res1 = rep.comp("res1", res1 * cfg.m("res1"));
    let lx = x.ln();
    let zs = rep.comp(
        "zero_sum",
        lab.zsum(cfg.zero_count, |z: &ZetaZero| {
            let lg = 4.0 * ln_gamma(z.rho * 0.25) - ln_gamma(z.rho * 0.5) - z.rho * 0.5 * lx;
            Ok(lg.exp() * zeta(z.rho * 0.5)?.powi(4) / (2.0 * z.zeta_prime))
        })?,
    );
    Ok(rep.finish(
        lhs,
        series + res1 + zs,
        cfg.tolerance,
        trunc(cfg, m as usize, cfg.zero_count, false),
    ))
}

/// A_j = e_{−1−j}/j! of ζ⁴(s)/ζ(2s) at s = 1 against the closed forms; four
/// reports, j = 0..3.
pub fn verify_d2_residue_constants(cfg: &VerifierConfig) -> Result<Vec<IdentityReport>> {
    let f = |s: Complex64| {
        let z = zeta(s).unwrap_or(Complex64::new(f64::NAN, 0.0));
        let z2 = zeta(2.0 * s).unwrap_or(Complex64::new(f64::NAN, 0.0));
        z.powi(4) / z2
    };
    let e = laurent_coefficients(f, c(1.0), 0.1, -4, -1)?;
    let e2 = laurent_coefficients(f, c(1.0), 0.05, -4, -1)?;
    let rc = residue_constants();
    let closed = [rc.a0, rc.a1, rc.a2, rc.a3];
    let fact = [1.0, 1.0, 2.0, 6.0];
    let mut out = Vec::new();
    for j in 0..4 {
        let mut rep = Builder::new("d2-residues").param("j", j as f64);
        // e is indexed from k = −4: A_j sits at k = −1−j
        let idx = 3 - j;
        let value = e[idx].re / fact[j];
        rep.comp("radius_gap", (e[idx].re - e2[idx].re).abs() / fact[j]);
        let target = rep.comp("closed_form", closed[j] * cfg.m("closed_form"));
        // A₀ and A₁ carry γ₁, γ₂ and three ζ-derivatives at 2
        let tol = if j < 2 {
            cfg.tolerance * 10.0
        } else {
            cfg.tolerance
        };
        out.push(rep.finish(value, target, tol, trunc(cfg, 0, 0, false)));
    }
    Ok(out)
}

/// Koshliakov's formula at x (default 1.3) and Voronoi's d(n) identity at
/// x (default 0.6).
pub fn verify_baselines(
    lab: &Lab,
    x: Option<f64>,
    cfg: &VerifierConfig,
) -> Result<Vec<IdentityReport>> {
    Ok(vec![
        koshliakov(x.unwrap_or(1.3), cfg)?,
        voronoi_d(lab, x.unwrap_or(0.6), cfg)?,
    ])
}

/// γ − log(4π/x) + 4Σd(n)K₀(2πnx) = (1/x)(γ − log(4πx) + 4Σd(n)K₀(2πn/x)).
pub fn koshliakov(x: f64, cfg: &VerifierConfig) -> Result<IdentityReport> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::ParameterDomain(format!(
            "x must be positive, got {x}"
        )));
    }
    let mut rep = Builder::new("baselines:koshliakov").param("x", x);
    let g = residue_constants().euler_gamma;
    let side = |arg: f64, m: f64| -> Result<f64> {
        let terms = (45.0 / (2.0 * PI * arg)).ceil() as u64 + 2;
        let mut s = 0.0;
        for k in 1..=terms {
            s += sigma_pow(k, 0.0) * bessel_k(0.0, 2.0 * PI * k as f64 * arg)?;
        }
        Ok(g * m - (4.0 * PI / arg).ln() + 4.0 * s)
    };
    let lhs = side(x, 1.0)?;
    let rhs = side(1.0 / x, cfg.m("gamma_term"))? / x;
    rep.comp("gamma_term", g * cfg.m("gamma_term"));
    let tol = if (x - 1.0).abs() < 1e-15 {
        cfg.tolerance.min(1e-12)
    } else {
        cfg.tolerance
    };
    Ok(rep.finish(lhs, rhs, tol, trunc(cfg, 0, 0, false)))
}

/// 2Σd(n)K₀(4π√(nx)) = (x/π²)Σd(n)log(x/n)/(x²−n²) − γ/2 − (1/4 + 1/(4π²x))log x − log(2π)/(2π²x).
pub fn voronoi_d(lab: &Lab, x: f64, cfg: &VerifierConfig) -> Result<IdentityReport> {
    positive_nonint(x)?;
    let mut rep = Builder::new("baselines:voronoi").param("x", x);
    let g = residue_constants().euler_gamma;
    let terms = ((45.0 / (4.0 * PI)).powi(2) / x).ceil() as u64 + 2;
    let mut lhs = 0.0;
    for k in 1..=terms {
        lhs += sigma_pow(k, 0.0) * bessel_k(0.0, 4.0 * PI * (k as f64 * x).sqrt())?;
    }
    let lhs = 2.0 * lhs;
    let n = cfg.series_terms;
    let t = lab.arith(n)?;
    let d: Vec<f64> = t.d_slice()[..=n].iter().map(|&v| v as f64).collect();
    let f = |m: f64| (x / m).ln() / (x * x - m * m);
    let (head, tail) = sum_with_tail(&d, n, f, |u| u.ln() + 2.0 * g, 1e-15)?;
    let series = rep.comp("series", x / (PI * PI) * (head + tail));
    let gt = rep.comp("gamma_term", -g / 2.0 * cfg.m("gamma_term"));
    let rest = -(0.25 + 1.0 / (4.0 * PI * PI * x)) * x.ln() - (2.0 * PI).ln() / (2.0 * PI * PI * x);
    Ok(rep.finish(
        lhs,
        series + gt + rest,
        cfg.tolerance.max(1e-6),
        trunc(cfg, n, 0, false),
    ))
}

/// Coarse Voronoi check of Σd²(n)e^{−n}; the dual kernel is evaluated as a
/// Mellin–Barnes integral per n instead of the triple integral. Experimental,
/// tolerance 0.1, never part of acceptance.
pub fn experimental_d2_kernel(lab: &Lab, cfg: &VerifierConfig) -> Result<IdentityReport> {
    let mut rep = Builder::new("experimental-d2-kernel");
    rep.note("experimental: coarse run, not an acceptance criterion");
    let t = lab.arith(1000)?;
    let d = t.d_slice();
    let lhs = det_sum(1, 60, |k| (d[k] as f64).powi(2) * (-(k as f64)).exp());

    let rc = residue_constants();
    let g = rc.euler_gamma;
    let z3 = zr(3.0);
    let p2 = PI * PI;
    let main = rep.comp(
        "main",
        rc.a0 - rc.a1 * g + rc.a2 * (g * g + p2 / 6.0)
            - rc.a3 * (g.powi(3) + g * p2 / 2.0 + 2.0 * z3),
    );
    let pole0 = rep.comp("pole_at_zero", zr(0.0).powi(3));
    let zs = rep.comp(
        "zero_sum",
        lab.zsum(
            cfg.zero_count.min(lab.zero_table().len()),
            |z: &ZetaZero| {
                let h = z.rho * 0.5;
                Ok(zeta(h)?.powi(4) * cgamma(h) / (2.0 * z.zeta_prime))
            },
        )?,
    );

    // Γ(s)χ⁴(s)/χ(2s) sampled once on Re s = −0.9; n^s applied per term
    let line = -0.9;
    let height = 60.0;
    let steps = 12_000usize;
    let h = 2.0 * height / steps as f64;
    let lpi = PI.ln();
    let log_chi = |s: Complex64| (s - 0.5) * lpi + ln_gamma((1.0 - s) * 0.5) - ln_gamma(s * 0.5);
    let samples: Vec<(Complex64, Complex64)> = (0..=steps)
        .map(|j| {
            let s = Complex64::new(line, -height + j as f64 * h);
            let w = if j == 0 || j == steps { 0.5 } else { 1.0 };
            let v = (ln_gamma(s) + 4.0 * log_chi(s) - log_chi(2.0 * s)).exp() * w;
            (s, v)
        })
        .collect();
    let terms = 2000u64;
    let mut dual = 0.0;
    for k in 1..=terms {
        let bk = b_value(k) as f64;
        if bk == 0.0 {
            continue;
        }
        let ln_k = (k as f64).ln();
        let kernel: Complex64 = samples.iter().map(|(s, v)| v * (s * ln_k).exp()).sum();
        dual += bk / k as f64 * kernel.re * h / (2.0 * PI);
    }
    let dual = rep.comp("dual_series", dual);
    // sanity of the sampled line integral against the direct rule at n = 1
    let direct = integrate_vertical_line(
        |s| (ln_gamma(s) + 4.0 * log_chi(s) - log_chi(2.0 * s)).exp(),
        line,
        height,
        steps,
    )?;
    rep.comp("kernel_n1_direct", direct.value.re);
    Ok(rep.finish(
        lhs,
        main + pole0 + zs + dual,
        0.1,
        trunc(cfg, terms as usize, cfg.zero_count, false),
    ))
}
