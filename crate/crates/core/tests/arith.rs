use num_complex::Complex64;
use proptest::prelude::*;
use zqlab::arith::*;
use zqlab::zeta::zeta;
use zqlab::Error;

fn z(s: f64) -> f64 {
    zeta(Complex64::new(s, 0.0)).unwrap().re
}

#[test]
fn small_table_examples() {
    let t = build_tables(10).unwrap();
    let mu: Vec<i8> = (1..=10).map(|n| t.moebius(n).unwrap()).collect();
    assert_eq!(mu, [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
    assert!(matches!(
        t.lambda(12),
        Err(Error::OutOfRange {
            index: 12,
            limit: 10
        })
    ));
    assert!(t.lambda(0).is_err());
    assert!(matches!(
        build_tables(200_000_000),
        Err(Error::LimitTooLarge { .. })
    ));
    assert!(matches!(
        build_tables_with_budget(1000, 100),
        Err(Error::LimitTooLarge { .. })
    ));
}

fn brute_factor(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = vec![];
    let mut p = 2;
    while n > 1 {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    out
}

#[test]
fn sieve_identities_to_1e5() {
    const N: usize = 100_000;
    let t = build_tables(N).unwrap();
    // Σ_{d|n} μ(d) = [n = 1] and d(n) by a divisor loop
    let mut mu_sum = vec![0i64; N + 1];
    let mut divs = vec![0u32; N + 1];
    for d in 1..=N {
        for m in (d..=N).step_by(d) {
            mu_sum[m] += t.moebius(d).unwrap() as i64;
            divs[m] += 1;
        }
    }
    let d4 = dirichlet_convolve(|n| divs[n] as f64, |n| divs[n] as f64, N);
    let dt = DerivedTables::build(&t, 0.0, 0.0);
    let a = |n: usize| {
        let m = (n as f64).sqrt().round() as usize;
        if m * m == n {
            m as f64 * t.moebius(m).unwrap() as f64
        } else {
            0.0
        }
    };
    let b_conv = dirichlet_convolve(a, |n| t.d4(n).unwrap() as f64, N);
    for n in 1..=N {
        assert_eq!(mu_sum[n], (n == 1) as i64, "mu sum at {n}");
        assert_eq!(t.d(n).unwrap(), divs[n]);
        assert_eq!(t.d4(n).unwrap() as f64, d4[n], "d4 at {n}");
        let omega: u32 = brute_factor(n).iter().map(|f| f.1).sum();
        assert_eq!(
            t.lambda(n).unwrap() as i32,
            if omega % 2 == 0 { 1 } else { -1 }
        );
        let c_div: i64 = (1..)
            .take_while(|d| d * d <= n)
            .filter(|d| n % (d * d) == 0)
            .map(|d| d as i64 * t.moebius(n / (d * d)).unwrap() as i64)
            .sum();
        assert_eq!(dt.c[n], c_div);
        assert!((dt.c[n].abs() as f64) <= (n as f64).sqrt() + 1e-9);
        assert_eq!(dt.b[n] as f64, b_conv[n], "b at {n}");
        assert_eq!(dt.cab[n], dt.b[n] as f64, "C00 at {n}");
    }
    let c = c_table(N);
    assert!((1..=N).all(|n| c[n] as i64 == dt.c[n]));
}

#[test]
fn value_examples() {
    assert_eq!(sigma_pow(6, 1.0), 12.0);
    assert_eq!(sigma_pow(6, 0.0), 4.0);
    let want: f64 = [1.0f64, 2.0, 3.0, 4.0, 6.0, 12.0]
        .iter()
        .map(|e| e.powf(-0.5))
        .sum();
    assert!((sigma_pow(12, -0.5) - want).abs() < 1e-15);
    assert_eq!(c_value(1), 1);
    assert_eq!(c_value(12), -2);
    assert_eq!(c_value(360), 6);
    assert_eq!(b_value(2), 4);
    assert_eq!(b_value(4), 8);
    assert_eq!(b_value(6), 16);
    assert_eq!(kappa_value(2, 0.3, 0.7), 0.0);
    assert_eq!(kappa_value(1, 0.0, 0.0), 1.0);
    assert_eq!(kappa_value(4, 0.0, 0.0), -1.0);
    assert_eq!(cab_value(1, 0.0, 0.0), 1.0);
    assert_eq!(cab_value(2, 0.0, 0.0), 4.0);
    assert_eq!(cab_value(4, 0.0, 0.0), 8.0);
}

#[test]
fn table_and_single_values_agree() {
    let t = build_tables(5000).unwrap();
    let dt = DerivedTables::build(&t, 0.3, -0.2);
    for n in (1..=5000u64).step_by(7) {
        assert_eq!(t.c(n as usize).unwrap(), c_value(n));
        assert_eq!(dt.b[n as usize], b_value(n));
        assert!((dt.kappa[n as usize] - kappa_value(n, 0.3, -0.2)).abs() < 1e-12);
        assert!(
            (dt.cab[n as usize] - cab_value(n, 0.3, -0.2)).abs()
                < 1e-9 * (1.0 + dt.cab[n as usize].abs())
        );
    }
}

#[test]
fn convolution_examples() {
    let t = build_tables(1000).unwrap();
    let h = dirichlet_convolve(|n| t.moebius(n).unwrap() as f64, |_| 1.0, 1000);
    assert!((1..=1000).all(|n| h[n] == (n == 1) as i32 as f64));
    let h = dirichlet_convolve(|_| 1.0, |_| 1.0, 1000);
    assert!((1..=1000).all(|n| h[n] == t.d(n).unwrap() as f64));
    let ones = vec![1.0; 1001];
    let inv = dirichlet_inverse(&ones);
    assert!((1..=1000).all(|n| inv[n] == t.moebius(n).unwrap() as f64));
}

#[test]
fn dirichlet_series_examples() {
    const N: usize = 100_000;
    let t = build_tables(N).unwrap();
    let dt = DerivedTables::build(&t, 0.0, 0.0);
    let s = Complex64::new(3.0, 0.0);
    let r = dirichlet_series_check(
        |n| dt.c[n] as f64,
        |_| Complex64::new(z(5.0) / z(3.0), 0.0),
        s,
        N,
    );
    assert!(r < 1e-6, "c: {r}");
    // tail ≤ Σ_{n>N} √n n^{−3} ≈ 2/(3 N^{3/2})
    assert!(r <= 2.0 * 2.0 / (3.0 * (N as f64).powf(1.5)));
    let r = dirichlet_series_check(
        |n| dt.b[n] as f64,
        |_| Complex64::new(z(3.0).powi(4) / z(5.0), 0.0),
        s,
        N,
    );
    assert!(r < 1e-4, "b: {r}");
    let r = dirichlet_series_check(
        |n| dt.c[n].abs() as f64,
        |_| Complex64::new(z(3.0) * z(5.0) / z(6.0), 0.0),
        s,
        N,
    );
    assert!(r < 1e-6, "|c|: {r}");
    let lam = |n: usize| t.lambda(n).unwrap() as f64;
    let r = dirichlet_series_check(lam, |_| Complex64::new(z(6.0) / z(3.0), 0.0), s, N);
    assert!(r < 1e-9, "lambda: {r}");
}

#[test]
fn smoothing_examples() {
    assert_eq!(
        smoothed_sum(|_| 0.0, 1.0, SmoothingScheme::abel(1e3).unwrap(), 1000),
        0.0
    );
    assert!(SmoothingScheme::cesaro(4, 10.0).is_err());
    assert!(SmoothingScheme::abel(0.5).is_err());
    // Cesàro (C,1) of 1 − 1 + 1 − … is 1/2.
    let grandi = smoothed_sum(
        |n| if n % 2 == 1 { 1.0 } else { -1.0 },
        0.0,
        SmoothingScheme::cesaro(1, 1.0).unwrap(),
        10_000,
    );
    assert!((grandi - 0.5).abs() < 1e-3);
    // Abel Σ(−1)^{n+1}/n → log 2
    let x = 1e4;
    let cut = SmoothingScheme::abel_cutoff(x);
    let alt = smoothed_sum(
        |n| if n % 2 == 1 { 1.0 } else { -1.0 },
        1.0,
        SmoothingScheme::abel(x).unwrap(),
        cut,
    );
    assert!((alt - 2f64.ln()).abs() < 1e-4);
}

#[test]
fn c_over_n_abel_sums() {
    let g = zqlab::specfun::EULER_GAMMA;
    let mut errs = vec![];
    for x in [1e3, 1e6] {
        let cut = SmoothingScheme::abel_cutoff(x);
        let c = c_table(cut);
        let sch = SmoothingScheme::abel(x).unwrap();
        let s1 = smoothed_sum(|n| c[n] as f64, 1.0, sch, cut);
        let sl = smoothed_sum(|n| c[n] as f64 * (n as f64).ln(), 1.0, sch, cut);
        errs.push(((s1 - 0.5).abs(), (sl + g / 2.0).abs()));
    }
    assert!(errs[1].0 <= 2e-3 && errs[1].1 <= 5e-3, "{errs:?}");
    assert!(errs[1].0 < errs[0].0 && errs[1].1 < errs[0].1, "{errs:?}");
}

proptest! {
    #[test]
    fn c_bounded_and_multiplicative(m in 1u64..5000, n in 1u64..5000) {
        prop_assert!((c_value(m).abs() as f64) <= (m as f64).sqrt());
        if gcd(m, n) == 1 {
            prop_assert_eq!(c_value(m * n), c_value(m) * c_value(n));
            prop_assert_eq!(b_value(m * n), b_value(m) * b_value(n));
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
