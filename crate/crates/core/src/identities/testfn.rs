//! Built-in Mellin pairs (φ, Φ) used by the λ(n) Voronoi corollaries.

use serde::{Deserialize, Serialize};

use super::cgamma;
use crate::error::{Error, Result};
use crate::quad::{integrate_semi_infinite, integrate_tanh_sinh};
use crate::specfun::{bessel_k, gamma_r};
use crate::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum TestKind {
    Exp { y: f64 },
    Gauss { y: f64 },
    K0 { y: f64 },
    Riesz { y: f64, k: f64 },
}

/// φ(x) with its Mellin transform Φ(s) = ∫₀^∞ x^{s−1}φ(x)dx.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestFunction {
    pub kind: TestKind,
    /// δ in Φ(σ+it) ≪ |t|^{−1−δ}; infinite for exponentially decaying Φ.
    pub decay_exponent: f64,
}

impl TestFunction {
    pub fn new(kind: TestKind) -> Result<TestFunction> {
        let (y, decay) = match kind {
            TestKind::Exp { y } | TestKind::Gauss { y } | TestKind::K0 { y } => (y, f64::INFINITY),
            TestKind::Riesz { y, k } => {
                if !(k > 0.0) {
                    return Err(Error::ParameterDomain(format!(
                        "Riesz order must be positive, got {k}"
                    )));
                }
                (y, k)
            }
        };
        if !(y > 0.0) {
            return Err(Error::ParameterDomain(format!(
                "y must be positive, got {y}"
            )));
        }
        Ok(TestFunction {
            kind,
            decay_exponent: decay,
        })
    }

    pub fn exp(y: f64) -> Result<Self> {
        Self::new(TestKind::Exp { y })
    }
    pub fn gauss(y: f64) -> Result<Self> {
        Self::new(TestKind::Gauss { y })
    }
    pub fn k0(y: f64) -> Result<Self> {
        Self::new(TestKind::K0 { y })
    }
    pub fn riesz(y: f64, k: f64) -> Result<Self> {
        Self::new(TestKind::Riesz { y, k })
    }

    pub fn phi(&self, x: f64) -> f64 {
        match self.kind {
            TestKind::Exp { y } => (-x * y).exp(),
            TestKind::Gauss { y } => (-x * x * y).exp(),
            TestKind::K0 { y } => bessel_k(0.0, x * y).unwrap_or(0.0),
            TestKind::Riesz { y, k } => {
                if x < y {
                    (1.0 - x / y).powf(k)
                } else {
                    0.0
                }
            }
        }
    }

    pub fn mellin(&self, s: Complex64) -> Complex64 {
        match self.kind {
            TestKind::Exp { y } => cgamma(s) * (-s * y.ln()).exp(),
            TestKind::Gauss { y } => cgamma(s * 0.5) * 0.5 * (-s * 0.5 * y.ln()).exp(),
            TestKind::K0 { y } => {
                let g = cgamma(s * 0.5);
                g * g * ((s - 2.0) * 2f64.ln() - s * y.ln()).exp()
            }
            TestKind::Riesz { y, k } => {
                (s * y.ln()).exp() * cgamma(s) * gamma_r(k + 1.0) / cgamma(s + k + 1.0)
            }
        }
    }

    /// |∫x^{s−1}φ − Φ(s)| at real s by direct quadrature.
    pub fn mellin_residual(&self, s: f64, tol: f64) -> Result<f64> {
        let f = |x: f64| x.powf(s - 1.0) * self.phi(x);
        let direct = match self.kind {
            TestKind::Riesz { y, .. } => integrate_tanh_sinh(f, 0.0, y, tol)?,
            _ => integrate_semi_infinite(f, 0.0, tol)?,
        };
        Ok((direct.value.re - self.mellin(Complex64::new(s, 0.0)).re).abs())
    }

    /// Short label for reports.
    pub fn label(&self) -> String {
        match self.kind {
            TestKind::Exp { y } => format!("exp(y={y})"),
            TestKind::Gauss { y } => format!("gauss(y={y})"),
            TestKind::K0 { y } => format!("k0(y={y})"),
            TestKind::Riesz { y, k } => format!("riesz(y={y}, k={k})"),
        }
    }
}
