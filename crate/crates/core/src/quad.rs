//! Quadrature engines: adaptive Gauss–Kronrod, double-exponential
//! semi-infinite rule, oscillatory panels with Wynn-ε acceleration,
//! vertical-line contour integrals and Laurent-coefficient extraction.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

impl QuadratureResult {
    fn real(value: f64, error_estimate: f64, evaluations: usize) -> Self {
        QuadratureResult {
            value: Complex64::new(value, 0.0),
            error_estimate,
            evaluations,
        }
    }
}

// 21-point Kronrod extension of the 10-point Gauss rule.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689,
    0.973_906_528_517_171_720_077_964_012_084,
    0.930_157_491_355_708_226_001_207_180_059,
    0.865_063_366_688_984_510_732_096_688_423,
    0.780_817_726_586_416_897_063_717_578_345,
    0.679_409_568_299_024_406_234_327_365_114,
    0.562_757_134_668_604_683_339_000_099_272,
    0.433_395_394_129_247_190_799_265_943_165,
    0.294_392_862_701_460_198_131_126_603_103,
    0.148_874_338_981_631_210_884_826_001_129,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062,
    0.032_558_162_307_964_727_478_818_972_459,
    0.054_755_896_574_351_996_031_381_300_244,
    0.075_039_674_810_919_952_767_043_140_916,
    0.093_125_454_583_697_605_535_065_465_083,
    0.109_387_158_802_297_641_899_210_590_325,
    0.123_491_976_262_065_851_077_600_525_478,
    0.134_709_217_311_473_325_928_054_001_771,
    0.142_775_938_577_060_080_797_094_273_138,
    0.147_739_104_901_338_491_374_841_515_972,
    0.149_445_554_002_916_905_664_936_468_389,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893,
    0.149_451_349_150_580_593_145_776_339_657,
    0.219_086_362_515_982_043_995_534_934_228,
    0.269_266_719_309_996_355_091_226_921_569,
    0.295_524_224_714_752_870_173_892_994_651,
];

const MAX_SUBDIVISIONS: usize = 2000;

fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    // nodes that round onto an endpoint are dropped (integrable endpoint
    // singularities may be infinite there)
    let g = |x: f64| if x <= a || x >= b { 0.0 } else { f(x) };
    let fc = g(c);
    let mut kron = fc * WGK[10];
    let mut gauss = 0.0;
    for j in 0..10 {
        let dx = h * XGK[j];
        let s = g(c - dx) + g(c + dx);
        kron += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    (kron * h, ((kron - gauss) * h).abs())
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Globally adaptive Gauss–Kronrod (10/21) quadrature on [a, b].
///
/// `tol` is an absolute tolerance on the summed error estimate. Endpoint
/// singularities of the form x^α (α > −1) are handled by repeated bisection.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    if a == b {
        return Ok(QuadratureResult::real(0.0, 0.0, 1));
    }
    if a > b {
        let r = integrate_adaptive(f, b, a, tol)?;
        return Ok(QuadratureResult {
            value: -r.value,
            ..r
        });
    }
    let (v, e) = gk21(&f, a, b);
    let mut evaluations = 21;
    let mut heap = BinaryHeap::new();
    heap.push(Panel {
        a,
        b,
        value: v,
        error: e,
    });
    let mut total = v;
    let mut err = e;
    let mut frozen_value = 0.0;
    let mut frozen_err = 0.0;
    let mut splits = 0;
    while err + frozen_err > tol {
        if splits >= MAX_SUBDIVISIONS {
            return Err(Error::MaxSubdivisions {
                value: total + frozen_value,
                error: err + frozen_err,
            });
        }
        let Some(p) = heap.pop() else { break };
        let m = 0.5 * (p.a + p.b);
        if m <= p.a || m >= p.b {
            // cannot split further in floating point; accept as is
            frozen_value += p.value;
            frozen_err += p.error;
            total -= p.value;
            err -= p.error;
            if frozen_err > tol {
                return Err(Error::MaxSubdivisions {
                    value: total + frozen_value,
                    error: err + frozen_err,
                });
            }
            continue;
        }
        let (v1, e1) = gk21(&f, p.a, m);
        let (v2, e2) = gk21(&f, m, p.b);
        evaluations += 42;
        splits += 1;
        total += v1 + v2 - p.value;
        err += e1 + e2 - p.error;
        heap.push(Panel {
            a: p.a,
            b: m,
            value: v1,
            error: e1,
        });
        heap.push(Panel {
            a: m,
            b: p.b,
            value: v2,
            error: e2,
        });
        if splits % 64 == 0 {
            // re-accumulate to limit drift from incremental updates
            total = heap.iter().map(|q| q.value).sum();
            err = heap.iter().map(|q| q.error).sum();
        }
    }
    let value: f64 = heap.iter().map(|q| q.value).sum::<f64>() + frozen_value;
    let error: f64 = heap.iter().map(|q| q.error).sum::<f64>() + frozen_err;
    if !value.is_finite() {
        return Err(Error::Domain(
            "integrand produced a non-finite value".into(),
        ));
    }
    Ok(QuadratureResult::real(value, error, evaluations))
}

/// ∫_a^∞ f(x) dx by the exp-sinh rule x = a + s·exp(π/2·sinh t), with the
/// scale s = max(1, |a|) so that tails starting far out are resolved.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    let scale = a.abs().max(1.0);
    let node = |t: f64| -> Option<f64> {
        let e = (0.5 * PI * t.sinh()).exp();
        let x = a + scale * e;
        if !x.is_finite() || x == a {
            return Some(0.0);
        }
        let w = scale * 0.5 * PI * t.cosh() * e;
        let v = f(x) * w;
        if v.is_finite() {
            Some(v)
        } else {
            None
        }
    };
    let mut evaluations = 0usize;
    let mut h = 1.0f64;
    // level 0
    let mut sum = node(0.0).ok_or(Error::NonconvergentTail)?;
    evaluations += 1;
    let walk = |start: f64, step: f64, sum: &mut f64, evals: &mut usize| -> Result<()> {
        for dir in [1.0, -1.0] {
            let mut k = 0usize;
            let mut small = 0;
            loop {
                let t = dir * (start + step * k as f64);
                if t.abs() > 6.5 {
                    break;
                }
                let v = node(t).ok_or(Error::NonconvergentTail)?;
                *evals += 1;
                *sum += v;
                if v.abs() <= 1e-18 * sum.abs().max(1e-300) {
                    small += 1;
                    if small >= 3 {
                        break;
                    }
                } else {
                    small = 0;
                }
                k += 1;
            }
        }
        Ok(())
    };
    walk(1.0, 1.0, &mut sum, &mut evaluations)?;
    let mut prev = sum * h;
    let mut err = f64::INFINITY;
    for level in 1..=10 {
        h *= 0.5;
        // new nodes at odd multiples of h
        walk(h, 2.0 * h, &mut sum, &mut evaluations)?;
        let cur = sum * h;
        err = (cur - prev).abs();
        prev = cur;
        if level >= 3 && err <= tol.max(1e-15 * cur.abs()) {
            return Ok(QuadratureResult::real(cur, err, evaluations));
        }
    }
    if err <= 1e3 * tol {
        Ok(QuadratureResult::real(prev, err, evaluations))
    } else {
        Err(Error::NonconvergentTail)
    }
}

/// ∫_a^b f(x) dx by the tanh-sinh rule; robust for integrable endpoint
/// singularities of either sign.
pub fn integrate_tanh_sinh<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    let half = 0.5 * (b - a);
    // node pair at ±t, with endpoint distances computed without cancellation
    let pair = |t: f64| -> f64 {
        let u = 0.5 * PI * t.sinh();
        let e = (-2.0 * u).exp();
        let d = half * 2.0 * e / (1.0 + e); // distance to the nearer endpoint
        if d <= 0.0 {
            return 0.0;
        }
        let ch = u.cosh();
        let w = half * 0.5 * PI * t.cosh() / (ch * ch);
        let left = f(a + d);
        let right = f(b - d);
        let v = w * (left + right);
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    let mut evaluations = 1usize;
    let mut sum = f(a + half) * half * 0.5 * PI;
    let mut h = 1.0f64;
    let mut k = 1;
    while (k as f64) * h <= 4.0 {
        sum += pair(k as f64 * h);
        evaluations += 2;
        k += 1;
    }
    let mut prev = sum * h;
    let mut err = f64::INFINITY;
    for level in 1..=12 {
        h *= 0.5;
        let mut k = 1;
        while (k as f64) * h <= 4.0 {
            sum += pair(k as f64 * h);
            evaluations += 2;
            k += 2;
        }
        let cur = sum * h;
        err = (cur - prev).abs();
        prev = cur;
        if level >= 3 && err <= tol.max(1e-15 * cur.abs()) {
            return Ok(QuadratureResult::real(cur, err, evaluations));
        }
    }
    Err(Error::MaxSubdivisions {
        value: prev,
        error: err,
    })
}

/// Wynn ε-algorithm applied to a sequence of partial sums; returns the
/// accelerated limit and the difference of the last two estimates.
pub fn wynn_epsilon(partials: &[f64]) -> (f64, f64) {
    let n = partials.len();
    if n < 3 {
        let last = partials.last().copied().unwrap_or(0.0);
        return (last, f64::INFINITY);
    }
    // `cur` holds the newest antidiagonal ε_k^{(i−k)}, `prev` the one before.
    let mut estimates = Vec::new();
    let mut prev: Vec<f64> = Vec::new();
    for (i, &s) in partials.iter().enumerate() {
        let mut cur = vec![s];
        for k in 0..prev.len().min(i) {
            let diff = cur[k] - prev[k];
            let below = if k == 0 { 0.0 } else { prev[k - 1] };
            let next = below + 1.0 / diff;
            if !next.is_finite() {
                break;
            }
            cur.push(next);
        }
        // best estimate: highest even column
        let top = if (cur.len() - 1) % 2 == 0 {
            cur.len() - 1
        } else {
            cur.len() - 2
        };
        estimates.push(cur[top]);
        prev = cur;
    }
    let m = estimates.len();
    (
        estimates[m - 1],
        (estimates[m - 1] - estimates[m - 2]).abs(),
    )
}

/// ∫_a^∞ f for slowly decaying oscillatory integrands. `breakpoints(k)` must
/// return the k-th zero of the oscillation (increasing, first one > a); the
/// partial integrals between them are summed with Wynn-ε acceleration.
pub fn integrate_oscillatory<F, B>(
    f: F,
    a: f64,
    breakpoints: B,
    tol: f64,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
    B: Fn(usize) -> f64,
{
    let mut evaluations = 0;
    let first = breakpoints(0);
    let head = integrate_adaptive(&f, a, first, tol * 0.1)?;
    evaluations += head.evaluations;
    let mut partials = Vec::new();
    let mut acc = head.value.re;
    let mut lo = first;
    let mut last_est = f64::NAN;
    let mut stable = 0;
    for k in 1..400 {
        let hi = breakpoints(k);
        let r = integrate_adaptive(&f, lo, hi, tol * 0.01)?;
        evaluations += r.evaluations;
        acc += r.value.re;
        partials.push(acc);
        lo = hi;
        if partials.len() >= 12 && partials.len() % 2 == 0 {
            let window = &partials[partials.len().saturating_sub(40)..];
            let (est, _) = wynn_epsilon(window);
            if (est - last_est).abs() <= tol {
                stable += 1;
                if stable >= 2 {
                    return Ok(QuadratureResult::real(
                        est,
                        (est - last_est).abs().max(1e-16),
                        evaluations,
                    ));
                }
            } else {
                stable = 0;
            }
            last_est = est;
        }
    }
    Err(Error::NonconvergentTail)
}

/// (1/2πi)∫_{c−iT}^{c+iT} f(s) ds by the trapezoidal rule with `steps` panels.
///
/// The error estimate combines the halved-step difference with the size of
/// the integrand at the truncation height.
pub fn integrate_vertical_line<F>(
    f: F,
    c: f64,
    height: f64,
    steps: usize,
) -> Result<QuadratureResult>
where
    F: Fn(Complex64) -> Complex64,
{
    let steps = steps.max(4) & !1;
    let h = 2.0 * height / steps as f64;
    let mut full = Complex64::new(0.0, 0.0);
    let mut half = Complex64::new(0.0, 0.0);
    let mut peak = 0.0f64;
    let mut edge = 0.0f64;
    for j in 0..=steps {
        let t = -height + j as f64 * h;
        let v = f(Complex64::new(c, t));
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::Domain(format!(
                "contour integrand not finite at {c}+{t}i"
            )));
        }
        let w = if j == 0 || j == steps { 0.5 } else { 1.0 };
        full += v * w;
        if j % 2 == 0 {
            let w2 = if j == 0 || j == steps { 0.5 } else { 1.0 };
            half += v * w2;
        }
        peak = peak.max(v.norm());
        if j == 0 || j == steps {
            edge = edge.max(v.norm());
        }
    }
    if peak > 0.0 && edge > 1e-14 * peak {
        return Err(Error::InsufficientDecay { ratio: edge / peak });
    }
    let value = full * (h / (2.0 * PI));
    let coarse = half * (2.0 * h / (2.0 * PI));
    let err = (value - coarse).norm() + edge * height / PI;
    Ok(QuadratureResult {
        value,
        error_estimate: err,
        evaluations: steps + 1,
    })
}

/// Laurent coefficients e_k, k ∈ [lowest, highest], of f about s0 from an
/// M-point trapezoidal rule on |s − s0| = radius.
pub fn laurent_coefficients<F>(
    f: F,
    s0: Complex64,
    radius: f64,
    lowest: i32,
    highest: i32,
) -> Result<Vec<Complex64>>
where
    F: Fn(Complex64) -> Complex64,
{
    laurent_coefficients_m(f, s0, radius, lowest, highest, 128)
}

pub fn laurent_coefficients_m<F>(
    f: F,
    s0: Complex64,
    radius: f64,
    lowest: i32,
    highest: i32,
    points: usize,
) -> Result<Vec<Complex64>>
where
    F: Fn(Complex64) -> Complex64,
{
    let values: Vec<(Complex64, Complex64)> = (0..points)
        .map(|j| {
            let u = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / points as f64);
            (u, f(s0 + u * radius))
        })
        .collect();
    if values
        .iter()
        .any(|(_, v)| !(v.re.is_finite() && v.im.is_finite()))
    {
        return Err(Error::RadiusHitsSingularity);
    }
    Ok((lowest..=highest)
        .map(|k| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (u, v) in &values {
                acc += v * u.powi(-k);
            }
            acc / points as f64 * radius.powi(-k)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronrod_is_exact_for_polynomials() {
        for k in 0..30 {
            let r = integrate_adaptive(|x: f64| x.powi(k), 0.0, 1.0, 1e-14).unwrap();
            assert!((r.value.re - 1.0 / (k as f64 + 1.0)).abs() < 1e-14, "k={k}");
        }
    }

    #[test]
    fn wynn_accelerates_alternating_harmonic() {
        let mut s = 0.0;
        let partials: Vec<f64> = (1..=20)
            .map(|k| {
                s += if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
                s
            })
            .collect();
        let (v, _) = wynn_epsilon(&partials);
        assert!((v - 2f64.ln()).abs() < 1e-12);
    }
}
