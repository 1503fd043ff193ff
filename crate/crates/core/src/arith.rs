//! Arithmetic-function tables (λ, μ, d, d₄ and derived c, b, κ, C_{a,b}),
//! Dirichlet convolution utilities and smoothed sums.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sum::det_sum;

/// Hard ceiling on sieve size regardless of budget.
pub const MAX_LIMIT: usize = 100_000_000;
/// Default memory budget for [`build_tables`].
pub const DEFAULT_BUDGET: usize = 2 << 30;

// spf u32, rest u32, d u32, d4 u64, exponent u8, λ i8, μ i8
const BYTES_PER_ENTRY: usize = 4 + 4 + 4 + 8 + 1 + 1 + 1;

/// Sieved multiplicative tables on 1..=limit (index 0 unused).
#[derive(Debug, Clone)]
pub struct ArithTable {
    limit: usize,
    spf: Vec<u32>,
    // n = spf^exp · rest with gcd(spf, rest) = 1
    exp: Vec<u8>,
    rest: Vec<u32>,
    lambda: Vec<i8>,
    moebius: Vec<i8>,
    d: Vec<u32>,
    d4: Vec<u64>,
}

fn binom3(n: u64) -> u64 {
    // C(n, 3)
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

pub fn build_tables(limit: usize) -> Result<ArithTable> {
    build_tables_with_budget(limit, DEFAULT_BUDGET)
}

pub fn build_tables_with_budget(limit: usize, budget: usize) -> Result<ArithTable> {
    let bytes = (limit + 1).saturating_mul(BYTES_PER_ENTRY);
    if limit == 0 {
        return Err(Error::Domain("table limit must be ≥ 1".into()));
    }
    if limit > MAX_LIMIT || bytes > budget {
        return Err(Error::LimitTooLarge {
            limit,
            bytes,
            budget,
        });
    }
    let n1 = limit + 1;
    let mut spf = vec![0u32; n1];
    let mut primes: Vec<u32> = Vec::new();
    for i in 2..n1 {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u32);
        }
        let si = spf[i];
        for &p in &primes {
            let m = i * p as usize;
            if p > si || m > limit {
                break;
            }
            spf[m] = p;
        }
    }
    let mut exp = vec![0u8; n1];
    let mut rest = vec![1u32; n1];
    let mut lambda = vec![1i8; n1];
    let mut moebius = vec![1i8; n1];
    let mut d = vec![1u32; n1];
    let mut d4 = vec![1u64; n1];
    for n in 2..n1 {
        let p = spf[n] as usize;
        let m = n / p;
        let (e, r) = if m % p == 0 {
            (exp[m] + 1, rest[m])
        } else {
            (1, m as u32)
        };
        exp[n] = e;
        rest[n] = r;
        let r = r as usize;
        let e64 = e as u64;
        lambda[n] = -lambda[m];
        moebius[n] = if e == 1 { -moebius[r] } else { 0 };
        d[n] = (e as u32 + 1) * d[r];
        d4[n] = binom3(e64 + 3) * d4[r];
    }
    Ok(ArithTable {
        limit,
        spf,
        exp,
        rest,
        lambda,
        moebius,
        d,
        d4,
    })
}

impl ArithTable {
    pub fn limit(&self) -> usize {
        self.limit
    }

    fn check(&self, n: usize) -> Result<()> {
        if n == 0 || n > self.limit {
            Err(Error::OutOfRange {
                index: n,
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }

    pub fn lambda(&self, n: usize) -> Result<i8> {
        self.check(n).map(|_| self.lambda[n])
    }

    pub fn moebius(&self, n: usize) -> Result<i8> {
        self.check(n).map(|_| self.moebius[n])
    }

    pub fn d(&self, n: usize) -> Result<u32> {
        self.check(n).map(|_| self.d[n])
    }

    pub fn d4(&self, n: usize) -> Result<u64> {
        self.check(n).map(|_| self.d4[n])
    }

    pub fn spf(&self, n: usize) -> Result<u32> {
        self.check(n).map(|_| if n == 1 { 1 } else { self.spf[n] })
    }

    /// Raw slices, index 0 unused.
    pub fn lambda_slice(&self) -> &[i8] {
        &self.lambda
    }

    pub fn moebius_slice(&self) -> &[i8] {
        &self.moebius
    }

    pub fn d_slice(&self) -> &[u32] {
        &self.d
    }

    pub fn d4_slice(&self) -> &[u64] {
        &self.d4
    }

    /// Prime factorisation from the sieve.
    pub fn factorize(&self, n: usize) -> Result<Vec<(u64, u32)>> {
        self.check(n)?;
        let mut out = Vec::new();
        let mut m = n;
        while m > 1 {
            out.push((self.spf[m] as u64, self.exp[m] as u32));
            m = self.rest[m] as usize;
        }
        Ok(out)
    }

    /// Tabulates the multiplicative function with prime-power values f(p, e).
    pub fn multiplicative<T, F>(&self, f: F) -> Vec<T>
    where
        T: Copy + Default + std::ops::Mul<Output = T> + From<u8>,
        F: Fn(u64, u32) -> T,
    {
        let mut out = vec![T::default(); self.limit + 1];
        out[1] = T::from(1u8);
        for n in 2..=self.limit {
            out[n] = f(self.spf[n] as u64, self.exp[n] as u32) * out[self.rest[n] as usize];
        }
        out
    }

    /// c(n) = m·μ(k) for n = m²k, via the sieve.
    pub fn c(&self, n: usize) -> Result<i64> {
        Ok(c_from_factors(&self.factorize(n)?))
    }
}

// --------------------------------------------------------- single values

/// Trial-division factorisation.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut e = 1u64;
    while e * e <= n {
        if n % e == 0 {
            small.push(e);
            if e * e != n {
                large.push(n / e);
            }
        }
        e += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// σ_s(n) = Σ_{e|n} e^s.
pub fn sigma_pow(n: u64, s: f64) -> f64 {
    divisors(n).into_iter().map(|e| (e as f64).powf(s)).sum()
}

fn c_from_factors(f: &[(u64, u32)]) -> i64 {
    f.iter()
        .map(|&(p, e)| {
            let m = p.pow(e / 2) as i64;
            if e % 2 == 1 {
                -m
            } else {
                m
            }
        })
        .product()
}

/// c(n) = m·μ(k) where n = m²k, k squarefree.
pub fn c_value(n: u64) -> i64 {
    c_from_factors(&factorize(n))
}

fn b_prime_power(p: u64, k: u32) -> i64 {
    let k = k as u64;
    binom3(k + 3) as i64 - (p * binom3(k + 1)) as i64
}

/// b(n): multiplicative with b(p^k) = C(k+3,3) − p·C(k+1,3).
pub fn b_value(n: u64) -> i64 {
    factorize(n)
        .into_iter()
        .map(|(p, k)| b_prime_power(p, k))
        .product()
}

fn totient(n: u64) -> f64 {
    factorize(n)
        .into_iter()
        .map(|(p, e)| (p.pow(e - 1) * (p - 1)) as f64)
        .product()
}

/// f⁻¹(n) by the recursive divisor formula.
fn dirichlet_inverse_at(f: &dyn Fn(u64) -> f64, n: u64) -> f64 {
    let divs = divisors(n);
    let mut inv = vec![0.0; divs.len()];
    let f1 = f(1);
    for (i, &m) in divs.iter().enumerate() {
        if m == 1 {
            inv[i] = 1.0 / f1;
            continue;
        }
        let mut acc = 0.0;
        for (j, &e) in divs[..i].iter().enumerate() {
            if m % e == 0 {
                acc += f(m / e) * inv[j];
            }
        }
        inv[i] = -acc / f1;
    }
    inv[divs.len() - 1]
}

/// κ_{a,b}(n) = m^{a+b}·φ⁻¹(m) if n = m², else 0.
pub fn kappa_value(n: u64, a: f64, b: f64) -> f64 {
    let m = (n as f64).sqrt().round() as u64;
    if m * m != n {
        return 0.0;
    }
    (m as f64).powf(a + b) * dirichlet_inverse_at(&totient, m)
}

/// C_{a,b}(n) = (σ_aσ_b ∗ κ_{a,b})(n).
pub fn cab_value(n: u64, a: f64, b: f64) -> f64 {
    divisors(n)
        .into_iter()
        .map(|e| sigma_pow(e, a) * sigma_pow(e, b) * kappa_value(n / e, a, b))
        .sum()
}

// ------------------------------------------------------ Dirichlet tools

/// h = f ∗ g on 1..=n (index 0 unused), multiples loop.
pub fn dirichlet_convolve<F, G>(f: F, g: G, n: usize) -> Vec<f64>
where
    F: Fn(usize) -> f64,
    G: Fn(usize) -> f64,
{
    let gv: Vec<f64> = (0..=n).map(|k| if k == 0 { 0.0 } else { g(k) }).collect();
    let mut h = vec![0.0; n + 1];
    for d in 1..=n {
        let fd = f(d);
        if fd == 0.0 {
            continue;
        }
        for (q, m) in (d..=n).step_by(d).enumerate() {
            h[m] += fd * gv[q + 1];
        }
    }
    h
}

/// Dirichlet inverse of a table (index 0 unused, f[1] ≠ 0).
pub fn dirichlet_inverse(f: &[f64]) -> Vec<f64> {
    let n = f.len() - 1;
    let mut acc = vec![0.0; n + 1];
    let mut h = vec![0.0; n + 1];
    for d in 1..=n {
        h[d] = (if d == 1 { 1.0 } else { 0.0 } - acc[d]) / f[1];
        if h[d] == 0.0 {
            continue;
        }
        for (q, m) in (2 * d..=n).step_by(d).enumerate() {
            acc[m] += h[d] * f[q + 2];
        }
    }
    h
}

/// |Σ_{n≤N} coeff(n) n^{−s} − closed_form(s)|.
pub fn dirichlet_series_check<F, C>(coeff: F, closed_form: C, s: Complex64, n: usize) -> f64
where
    F: Fn(usize) -> f64 + Sync,
    C: Fn(Complex64) -> Complex64,
{
    let re = det_sum(1, n, |k| coeff(k) * (-s * (k as f64).ln()).exp().re);
    let im = det_sum(1, n, |k| coeff(k) * (-s * (k as f64).ln()).exp().im);
    (Complex64::new(re, im) - closed_form(s)).norm()
}

// ------------------------------------------------------- derived tables

#[derive(Debug, Clone)]
pub struct DerivedTables {
    pub limit: usize,
    pub a: f64,
    pub b_param: f64,
    pub c: Vec<i64>,
    pub b: Vec<i64>,
    pub kappa: Vec<f64>,
    pub cab: Vec<f64>,
}

impl DerivedTables {
    pub fn build(t: &ArithTable, a: f64, b: f64) -> DerivedTables {
        let n = t.limit;
        let mut c = vec![0i64; n + 1];
        let mut d = 1usize;
        while d * d <= n {
            for k in 1..=n / (d * d) {
                c[d * d * k] += d as i64 * t.moebius[k] as i64;
            }
            d += 1;
        }
        let bt: Vec<i64> = t.multiplicative(|p, e| b_prime_power(p, e));
        let phi: Vec<f64> = t.multiplicative(|p, e| (p.pow(e - 1) * (p - 1)) as f64);
        let phi_inv = dirichlet_inverse(&phi);
        let mut kappa = vec![0.0; n + 1];
        let mut m = 1usize;
        while m * m <= n {
            kappa[m * m] = (m as f64).powf(a + b) * phi_inv[m];
            m += 1;
        }
        let sig = |s: f64| {
            t.multiplicative(move |p, e| {
                (0..=e).map(|j| (p as f64).powf(j as f64 * s)).sum::<f64>()
            })
        };
        let (sa, sb) = (sig(a), sig(b));
        let cab = dirichlet_convolve(|k| sa[k] * sb[k], |k| kappa[k], n);
        DerivedTables {
            limit: n,
            a,
            b_param: b,
            c,
            b: bt,
            kappa,
            cab,
        }
    }
}

/// μ on 1..=limit (index 0 unused) without the full table — for long sums.
pub fn moebius_table(limit: usize) -> Vec<i8> {
    let mut mu = vec![1i8; limit + 1];
    let mut composite = vec![false; limit + 1];
    for p in 2..=limit {
        if composite[p] {
            continue;
        }
        for m in (p..=limit).step_by(p) {
            if m > p {
                composite[m] = true;
            }
            mu[m] = -mu[m];
        }
        if let Some(pp) = p.checked_mul(p) {
            for m in (pp..=limit).step_by(pp) {
                mu[m] = 0;
            }
        }
    }
    mu[0] = 0;
    mu
}

/// c(n) on 1..=limit via c(d²k) = d·μ(k).
pub fn c_table(limit: usize) -> Vec<i32> {
    let mu = moebius_table(limit);
    let mut c = vec![0i32; limit + 1];
    let mut d = 1usize;
    while d * d <= limit {
        for k in 1..=limit / (d * d) {
            c[d * d * k] += d as i32 * mu[k] as i32;
        }
        d += 1;
    }
    c
}

// ------------------------------------------------------------ smoothing

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum SmoothingScheme {
    AbelExponential { scale: f64 },
    Cesaro { order: u8, scale: f64 },
}

impl SmoothingScheme {
    pub fn abel(scale: f64) -> Result<Self> {
        if !(scale >= 1.0) {
            return Err(Error::ParameterDomain(format!(
                "smoothing scale must be ≥ 1, got {scale}"
            )));
        }
        Ok(SmoothingScheme::AbelExponential { scale })
    }

    pub fn cesaro(order: u8, scale: f64) -> Result<Self> {
        if !(1..=3).contains(&order) || !(scale >= 1.0) {
            return Err(Error::ParameterDomain(format!(
                "Cesàro order must be 1–3 and scale ≥ 1, got ({order}, {scale})"
            )));
        }
        Ok(SmoothingScheme::Cesaro { order, scale })
    }

    /// Terms needed so the Abel weight falls below 1e-16.
    pub fn abel_cutoff(scale: f64) -> usize {
        (scale * 16.0 * std::f64::consts::LN_10).ceil() as usize
    }
}

/// Σ coeff(n)·w(n)·n^{−p}, with w the Abel weight e^{−n/X} (summed to the
/// 1e-16 cutoff or N, whichever is smaller) or the (C,k) Cesàro weight at N.
pub fn smoothed_sum<F>(coeff: F, weight_exponent: f64, scheme: SmoothingScheme, n: usize) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    let pw = |k: usize| {
        if weight_exponent == 0.0 {
            1.0
        } else {
            (k as f64).powf(-weight_exponent)
        }
    };
    match scheme {
        SmoothingScheme::AbelExponential { scale } => {
            let top = n.min(SmoothingScheme::abel_cutoff(scale));
            det_sum(1, top, |k| {
                let c = coeff(k);
                if c == 0.0 {
                    0.0
                } else {
                    c * pw(k) * (-(k as f64) / scale).exp()
                }
            })
        }
        SmoothingScheme::Cesaro { order, .. } => {
            // (C,k) mean of partial sums: Σ a_n Π_{j=1..k} (N−n+j)/(N+j)
            let nf = n as f64;
            det_sum(1, n, |k| {
                let c = coeff(k);
                if c == 0.0 {
                    return 0.0;
                }
                let mut w = 1.0;
                for j in 1..=order as usize {
                    w *= (nf - k as f64 + j as f64) / (nf + j as f64);
                }
                c * pw(k) * w
            })
        }
    }
}
