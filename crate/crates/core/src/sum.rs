//! Deterministic summation helpers.
//!
//! Long sums are split into fixed-size chunks; chunk partials may be computed
//! in parallel but are always combined by the same pairwise tree, so results
//! are bit-identical regardless of the thread count.

use rayon::prelude::*;

const CHUNK: usize = 1 << 12;

/// Pairwise (cascade) summation of a slice.
pub fn pairwise(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        n if n <= 8 => xs.iter().sum(),
        n => {
            let (l, r) = xs.split_at(n / 2);
            pairwise(l) + pairwise(r)
        }
    }
}

/// Σ_{n=lo}^{hi} f(n) with a fixed reduction order.
pub fn det_sum<F>(lo: usize, hi: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    if hi < lo {
        return 0.0;
    }
    let count = hi - lo + 1;
    let chunks = count.div_ceil(CHUNK);
    let partials: Vec<f64> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let a = lo + k * CHUNK;
            let b = (a + CHUNK - 1).min(hi);
            let mut acc = 0.0;
            for n in a..=b {
                acc += f(n);
            }
            acc
        })
        .collect();
    pairwise(&partials)
}

/// Kahan–Babuška compensated accumulator for short sequential sums.
#[derive(Debug, Default, Clone, Copy)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}
