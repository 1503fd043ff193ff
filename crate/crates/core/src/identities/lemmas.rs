//! Contour and integral identities behind the kernels: each is checked at
//! three sample points, one report per point.

use std::f64::consts::PI;

use super::lambda::{gamma_ratio_closed, gamma_ratio_contour};
use super::{trunc, Builder, IdentityReport, VerifierConfig};
use crate::error::Result;
use crate::quad::{
    integrate_adaptive, integrate_oscillatory, integrate_tanh_sinh, integrate_vertical_line,
};
use crate::specfun::{
    bessel_k, bessel_y, gamma_r, meijer_g24_kbessel, mellin_barnes, GammaFactor, MellinBarnesSpec,
};
use crate::Complex64;

fn report(
    name: &str,
    param: (&str, f64),
    value: f64,
    closed: f64,
    cfg: &VerifierConfig,
) -> IdentityReport {
    let mut b = Builder::new(&format!("lemmas:{name}")).param(param.0, param.1);
    let closed = b.comp("closed_form", closed * cfg.m("closed_form"));
    b.finish(value, closed, cfg.tolerance, trunc(cfg, 0, 0, false))
}

/// Γ(1/2−s)/Γ((1−s)/2)·t^{−s} on Re s = 0.2 against the K_{1/4} + K_{3/4} form.
pub fn gamma_ratio_bessel(t: f64, cfg: &VerifierConfig) -> Result<IdentityReport> {
    let v = gamma_ratio_contour(t)?.value.re;
    Ok(report(
        "gamma-ratio-bessel",
        ("t", t),
        v,
        gamma_ratio_closed(t)?,
        cfg,
    ))
}

/// ∫₀^∞ 4u^{4w−1}((2/π)K₀(4u) − Y₀(4u)) du = Γ²(w)/Γ²(1/2−w), 0 < w < 1/8.
pub fn ky_mellin(w: f64, cfg: &VerifierConfig) -> Result<IdentityReport> {
    let h = |u: f64| {
        2.0 / PI * bessel_k(0.0, 4.0 * u).unwrap_or(0.0) - bessel_y(0.0, 4.0 * u).unwrap_or(0.0)
    };
    // Y₀(4u) vanishes near u = (k − 1/4)π/4; start the panels past a few of them
    let zero = |k: usize| (k as f64 + 2.75) * PI / 4.0;
    let u0 = zero(0);
    // on [0, u0] put v = u^{4w}: 4u^{4w−1}du = dv/w and the singularity flattens
    let p = 1.0 / (4.0 * w);
    let head = integrate_tanh_sinh(
        |v| if v <= 0.0 { 0.0 } else { h(v.powf(p)) / w },
        0.0,
        u0.powf(4.0 * w),
        1e-14,
    )?;
    let tail = integrate_oscillatory(
        |u| 4.0 * u.powf(4.0 * w - 1.0) * h(u),
        u0,
        |k| zero(k + 1),
        1e-13,
    )?;
    let value = head.value.re + tail.value.re;
    let closed = (gamma_r(w) / gamma_r(0.5 - w)).powi(2);
    Ok(report("ky-mellin", ("w", w), value, closed, cfg))
}

/// Γ(1/2−w)²Γ(1−w)/(2Γ(w−1/4)Γ(w+1/4))·x^{−w} on Re w = 0 against
/// 2/√(2πx)·∫₀^∞ e^{−u^{−4}}cos(4u/x^{1/4})/u du.
pub fn gauss_cosine(x: f64, cfg: &VerifierConfig) -> Result<IdentityReport> {
    let spec = MellinBarnesSpec::new(
        vec![
            GammaFactor::new(0.5, -1.0),
            GammaFactor::new(0.5, -1.0),
            GammaFactor::new(1.0, -1.0),
        ],
        vec![GammaFactor::new(-0.25, 1.0), GammaFactor::new(0.25, 1.0)],
        x,
        0.0,
    );
    let contour = 0.5 * mellin_barnes(&spec)?.value.re;
    let a = 4.0 / x.powf(0.25);
    let f = |u: f64| {
        if u <= 0.05 {
            0.0
        } else {
            (-u.powi(-4)).exp() * (a * u).cos() / u
        }
    };
    let zero = |k: usize| (k as f64 + 0.5) * PI / a;
    let head = integrate_adaptive(f, 0.0, zero(0), 1e-15)?;
    let tail = integrate_oscillatory(f, zero(0), |k| zero(k + 1), 1e-14)?;
    let value = 2.0 / (2.0 * PI * x).sqrt() * (head.value.re + tail.value.re);
    Ok(report("gauss-cosine", ("x", x), contour, value, cfg))
}

/// sec-product Mellin integral on Re s = 0.2 against its elementary closed form.
pub fn secant_product(x: f64, a: f64, b: f64, cfg: &VerifierConfig) -> Result<IdentityReport> {
    let half_pi = Complex64::new(PI / 2.0, 0.0);
    let lx = x.ln();
    let f = |s: Complex64| {
        let cs = |z: Complex64| (half_pi * z).cos();
        cs(2.0 * s - a - b - 1.0) / (cs(s) * cs(s - a) * cs(s - b) * cs(s - a - b))
            * (-s * lx).exp()
    };
    let v = integrate_vertical_line(f, 0.2, 30.0, 4000)?.value.re;
    let closed = 2.0 / PI / ((PI * a / 2.0).sin() * (PI * b / 2.0).sin())
        * x
        * (x.powf(-a) - 1.0)
        * (x.powf(-b) - 1.0)
        / (x * x - 1.0);
    let mut r = report("secant-product", ("x", x), v, closed, cfg);
    r.params.insert("a".into(), a);
    r.params.insert("b".into(), b);
    Ok(r)
}

/// G^{4,0}_{2,4} by its Mellin–Barnes integral against the K-Bessel closed form.
pub fn meijer_kbessel(a: f64, b: f64, z: f64, cfg: &VerifierConfig) -> Result<IdentityReport> {
    let spec = MellinBarnesSpec::new(
        vec![
            GammaFactor::new(0.0, 1.0),
            GammaFactor::new(-a, 1.0),
            GammaFactor::new(-b, 1.0),
            GammaFactor::new(-a - b, 1.0),
        ],
        vec![
            GammaFactor::new(-(a + b + 1.0) / 2.0, 1.0),
            GammaFactor::new(-(a + b) / 2.0, 1.0),
        ],
        z,
        1.0,
    );
    let v = mellin_barnes(&spec)?.value.re;
    let mut r = report(
        "meijer-kbessel",
        ("z", z),
        v,
        meijer_g24_kbessel(a, b, z)?,
        cfg,
    );
    r.params.insert("a".into(), a);
    r.params.insert("b".into(), b);
    Ok(r)
}

/// All five families at three points each.
pub fn verify_lemmas(cfg: &VerifierConfig) -> Result<Vec<IdentityReport>> {
    let mut out = Vec::new();
    for t in [0.5, 1.0, 2.0] {
        out.push(gamma_ratio_bessel(t, cfg)?);
    }
    for w in [0.03, 0.06, 0.1] {
        out.push(ky_mellin(w, cfg)?);
    }
    for x in [1.0, 2.0, 4.0] {
        out.push(gauss_cosine(x, cfg)?);
    }
    for x in [0.5, 0.8, 2.0] {
        out.push(secant_product(x, 0.3, 0.2, cfg)?);
    }
    for z in [0.5, 1.5, 4.0] {
        out.push(meijer_kbessel(0.3, 0.2, z, cfg)?);
    }
    Ok(out)
}
