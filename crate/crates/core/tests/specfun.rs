use std::f64::consts::PI;

use zqlab::specfun::*;
use zqlab::Complex64;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

#[test]
fn bessel_reference_table() {
    let data = include_str!("data/bessel_ref.txt");
    let mut worst = [0.0f64; 4];
    for line in data.lines().filter(|l| !l.starts_with('#')) {
        let v: Vec<f64> = line
            .split_whitespace()
            .map(|t| t.parse().unwrap())
            .collect();
        let (nu, x) = (v[0], v[1]);
        let got = [
            bessel_j(nu, x).unwrap(),
            bessel_y(nu, x).unwrap(),
            bessel_i_scaled(nu, x).unwrap(),
            bessel_k_scaled(nu, x).unwrap(),
        ];
        for k in 0..4 {
            // J and Y oscillate: compare absolutely against the envelope
            let err = if k < 2 {
                (got[k] - v[2 + k]).abs() / (1.0 / x.sqrt()).min(1.0).max(v[2 + k].abs())
            } else {
                rel(got[k], v[2 + k])
            };
            assert!(
                err < 1e-10,
                "kind {k} nu={nu} x={x}: got {} want {} (err {err:e})",
                got[k],
                v[2 + k]
            );
            worst[k] = worst[k].max(err);
        }
    }
    eprintln!("worst relative errors J,Y,I,K: {worst:?}");
}

#[test]
fn bessel_examples() {
    let k = bessel_k(0.5, 1.0).unwrap();
    assert!((k - (PI / 2.0).sqrt() * (-1f64).exp()).abs() < 1e-14);
    assert!((k - 0.4610685044).abs() < 1e-10);
    assert!((bessel_k(0.0, 1.0).unwrap() - 0.421_024_438_240_708_3).abs() < 1e-10);
    assert_eq!(bessel_k(-0.25, 2.0).unwrap(), bessel_k(0.25, 2.0).unwrap());
    assert!(bessel_k(0.0, 0.0).is_err());
    assert!(bessel_j(0.0, -1.0).is_err());
    assert!(bessel_y(5.0, 1.0).is_err());
}

#[test]
fn bessel_seams_agree() {
    // both sides of each regime boundary
    for nu in [0.0, 0.25, 0.5, 1.0, 2.5] {
        for seam in [2.0f64, 30.0] {
            let lo = f64::from_bits(seam.to_bits() - 1);
            for f in [bessel_j, bessel_y, bessel_k_scaled, bessel_i_scaled] {
                let a = f(nu, lo).unwrap();
                let b = f(nu, seam).unwrap();
                assert!(
                    (a - b).abs() < 1e-10 * a.abs().max(1e-3),
                    "nu={nu} seam={seam}: {a} vs {b}"
                );
            }
        }
    }
}

#[test]
fn wronskians() {
    for x in [0.5, 1.0, 2.0, 5.0] {
        for nu in [0.0, 0.25, 0.5, 1.0] {
            let j = bessel_j(nu, x).unwrap();
            let y = bessel_y(nu, x).unwrap();
            let jp = nu / x * j - bessel_j(nu + 1.0, x).unwrap();
            let yp = nu / x * y - bessel_y(nu + 1.0, x).unwrap();
            assert!((j * yp - jp * y - 2.0 / (PI * x)).abs() < 1e-9);
            let i = bessel_i(nu, x).unwrap();
            let k = bessel_k(nu, x).unwrap();
            let ip = bessel_i(nu + 1.0, x).unwrap() + nu / x * i;
            let kp = nu / x * k - bessel_k(nu + 1.0, x).unwrap();
            assert!((i * kp - ip * k + 1.0 / x).abs() < 1e-9);
        }
    }
}

#[test]
fn gamma_values_and_identities() {
    let g = gamma(Complex64::new(0.5, 0.0)).unwrap();
    assert!((g.re - PI.sqrt()).abs() < 1e-13);
    assert!((gamma(Complex64::new(5.0, 0.0)).unwrap().re - 24.0).abs() < 1e-12);
    assert!(gamma(Complex64::new(-2.0, 0.0)).is_err());
    let g = gamma(Complex64::new(0.5, 30.0)).unwrap().norm();
    let stirling = (2.0 * PI).sqrt() * (-PI * 15.0).exp();
    assert!((g / stirling - 1.0).abs() < 0.01);
    for &(re, im) in &[
        (0.3, 0.0),
        (0.25, 3.0),
        (-1.7, 0.4),
        (2.5, -7.0),
        (0.1, 40.0),
        (-3.3, -12.0),
    ] {
        let s = Complex64::new(re, im);
        let dup = gamma(s).unwrap() * gamma(s + 0.5).unwrap();
        let rhs =
            Complex64::new(2.0, 0.0).powc(1.0 - 2.0 * s) * PI.sqrt() * gamma(2.0 * s).unwrap();
        assert!(
            (dup - rhs).norm() <= 1e-11 * rhs.norm(),
            "duplication at {s}"
        );
        let refl = gamma(s).unwrap() * gamma(1.0 - s).unwrap() * (s * PI).sin();
        assert!(
            (refl - PI).norm() < 1e-11 * PI.max(refl.norm()),
            "reflection at {s}: {refl}"
        );
    }
    // high on the critical line, against the Stirling modulus
    let s = Complex64::new(0.25, 236.0);
    let g = gamma(s).unwrap().norm();
    let m = (2.0 * PI).sqrt() * 236f64.powf(-0.25) * (-PI * 118.0).exp();
    assert!((g / m - 1.0).abs() < 1e-3);
}

#[test]
fn real_gamma_and_polygamma() {
    assert!((gamma_r(0.5) - PI.sqrt()).abs() < 1e-13);
    assert!((gamma_r(-0.5) + 2.0 * PI.sqrt()).abs() < 1e-13);
    assert!((gamma_r(1.25) - 0.906_402_477_055_477).abs() < 1e-13);
    assert!((digamma(1.0) + EULER_GAMMA).abs() < 1e-14);
    assert!((digamma(-0.5) - (2.0 - EULER_GAMMA - 2.0 * 2f64.ln())).abs() < 1e-13);
    assert!((trigamma(1.0) - PI * PI / 6.0).abs() < 1e-14);
    assert!((tetragamma(1.0) + 2.0 * 1.202_056_903_159_594_3).abs() < 1e-13);
}

#[test]
fn hyp2f1_examples() {
    assert_eq!(hyp2f1(0.3, 0.7, 1.1, 0.0).unwrap(), 1.0);
    assert!(hyp2f1(0.5, 0.5, 1.0, 1.0).is_err());
    // 2F1(1/2,1/2;1;1/2) = Γ(1/4)²/(2π^{3/2}) (complete elliptic integral K(1/√2)·2/π)
    let v = hyp2f1(0.5, 0.5, 1.0, 0.5).unwrap();
    let want = gamma_r(0.25).powi(2) / (2.0 * PI.powf(1.5));
    assert!((v - want).abs() < 1e-12, "{v} vs {want}");
    // z just below and above the 1/2 switch
    let a = hyp2f1(0.5, 0.5, 1.0, 0.5 - 1e-13).unwrap();
    assert!((a - v).abs() < 1e-11);
    // logarithmic singularity K(m) ≈ ½ ln(16/(1−m))
    let w = 1e-10;
    let k = hyp2f1_complement(0.5, 0.5, 1.0, w).unwrap() * PI / 2.0;
    assert!((k - 0.5 * (16.0 / w).ln()).abs() < 1e-8);
    // Pfaff branch: 2F1(1,1;2;−1) = ln 2
    assert!((hyp2f1(1.0, 1.0, 2.0, -1.0).unwrap() - 2f64.ln()).abs() < 1e-13);
    // non-log connection: 2F1(1/3,1/5;7/4;0.9) via series at 0.9 (slow but convergent)
    let mut t = 1.0;
    let mut s = 1.0;
    for n in 0..20000 {
        let nf = n as f64;
        t *= (1.0 / 3.0 + nf) * (0.2 + nf) / ((1.75 + nf) * (nf + 1.0)) * 0.9;
        s += t;
    }
    assert!((hyp2f1(1.0 / 3.0, 0.2, 1.75, 0.9).unwrap() - s).abs() < 1e-12);
}

#[test]
fn hyp1f1_examples() {
    assert_eq!(
        hyp1f1(0.5, 2.0, Complex64::new(0.0, 0.0)).unwrap(),
        Complex64::new(1.0, 0.0)
    );
    let x = 1.3;
    let lhs = hyp1f1(0.5, 2.0, Complex64::new(2.0 * x, 0.0)).unwrap().re * (-x as f64).exp();
    let rhs = bessel_i(0.0, x).unwrap() - bessel_i(1.0, x).unwrap();
    assert!((lhs - rhs).abs() < 1e-9);
    // imaginary argument: 1F1(1/2;1;2ix) = e^{ix} J0(x)
    for x in [0.7, 3.0, 12.0, 40.0] {
        let v = hyp1f1(0.5, 1.0, Complex64::new(0.0, 2.0 * x)).unwrap();
        let want = Complex64::from_polar(bessel_j(0.0, x).unwrap(), x);
        assert!((v - want).norm() < 1e-9, "x={x}: {v} vs {want}");
    }
}

#[test]
fn meijer_closed_form_example() {
    let v = meijer_g24_kbessel(0.0, 0.0, 1.0).unwrap();
    let k0 = bessel_k(0.0, 1.0).unwrap();
    let k1 = bessel_k(1.0, 1.0).unwrap();
    assert!((v - (2.0 * k1 * k0 - k0 * k0) / PI.sqrt()).abs() < 1e-14);
}

#[test]
fn mellin_barnes_exp_pair() {
    let spec = MellinBarnesSpec::new(vec![GammaFactor::new(0.0, 1.0)], vec![], 1.0, 0.5);
    let r = mellin_barnes(&spec).unwrap();
    assert!((r.value.re - (-1f64).exp()).abs() < 1e-9);
    assert!(r.value.im.abs() < 1e-12);
}

#[test]
fn kernel_ky_components() {
    let v = kernel_ky(1.0).unwrap();
    let want = 2.0 / PI * bessel_k(0.0, 4.0).unwrap() - bessel_y(0.0, 4.0).unwrap();
    assert_eq!(v, want);
    // Y0(4) = −0.016940739325064992, K0(4) = 0.011159676085853024
    assert!((v - (2.0 / PI * 0.011_159_676_085_853_024 + 0.016_940_739_325_064_992)).abs() < 1e-13);
    assert!(kernel_ky(0.0).is_err());
}
