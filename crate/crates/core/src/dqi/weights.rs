use serde::Serialize;

use crate::error::{Error, Result};

const TOLERANCE: f64 = 1e-12;
const MAX_ITERATIONS: usize = 100_000;

/// Shell weights `w_0..w_l`: the positive unit-norm principal eigenvector of
/// the symmetric tridiagonal matrix with zero diagonal and off-diagonal
/// entries `a_k = sqrt(k (m - k + 1))`, `k = 1..l`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DickeWeights {
    pub m: usize,
    pub l: usize,
    pub w: Vec<f64>,
    pub lambda_max: f64,
}

fn off_diagonal(m: usize, l: usize) -> Vec<f64> {
    (1..=l).map(|k| ((k * (m - k + 1)) as f64).sqrt()).collect()
}

/// `A v` for the tridiagonal matrix given by its off-diagonal `a`.
fn apply(a: &[f64], v: &[f64], out: &mut [f64]) {
    let n = v.len();
    for i in 0..n {
        let left = if i > 0 { a[i - 1] * v[i - 1] } else { 0.0 };
        let right = if i + 1 < n { a[i] * v[i + 1] } else { 0.0 };
        out[i] = left + right;
    }
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= norm);
}

impl DickeWeights {
    /// `||A w - lambda_max w||_inf`.
    pub fn residual(&self) -> f64 {
        let a = off_diagonal(self.m, self.l);
        let mut aw = vec![0.0; self.w.len()];
        apply(&a, &self.w, &mut aw);
        aw.iter()
            .zip(&self.w)
            .map(|(x, w)| (x - self.lambda_max * w).abs())
            .fold(0.0, f64::max)
    }
}

/// Power iteration on `A + cI`.
///
/// The spectrum of `A` is symmetric about zero, so plain power iteration
/// would oscillate between `+lambda` and `-lambda`. Shifting by the
/// Gershgorin bound `c` makes the matrix nonnegative with a unique dominant
/// eigenvalue `lambda + c`. `l = 0` gives the trivial weight vector `(1)`.
pub fn dicke_weights(m: usize, l: usize) -> Result<DickeWeights> {
    if l > m {
        return Err(Error::InvalidArgument(format!(
            "degree l={l} must not exceed m={m}"
        )));
    }
    if l == 0 {
        return Ok(DickeWeights {
            m,
            l,
            w: vec![1.0],
            lambda_max: 0.0,
        });
    }
    let a = off_diagonal(m, l);
    let shift = (0..=l)
        .map(|i| {
            let left = if i > 0 { a[i - 1] } else { 0.0 };
            let right = if i < l { a[i] } else { 0.0 };
            left + right
        })
        .fold(0.0, f64::max);

    let mut w = vec![1.0; l + 1];
    normalize(&mut w);
    let mut aw = vec![0.0; l + 1];
    let mut lambda_max = 0.0;
    let mut converged = false;
    for _ in 0..MAX_ITERATIONS {
        apply(&a, &w, &mut aw);
        lambda_max = aw.iter().zip(&w).map(|(a, b)| a * b).sum();
        let residual = aw
            .iter()
            .zip(&w)
            .map(|(a, b)| (a - lambda_max * b).abs())
            .fold(0.0, f64::max);
        if residual < TOLERANCE {
            converged = true;
            break;
        }
        w.iter_mut().zip(&aw).for_each(|(x, a)| *x = a + shift * *x);
        normalize(&mut w);
    }
    if !converged {
        return Err(Error::Capacity(format!(
            "power iteration for m={m}, l={l} did not converge in {MAX_ITERATIONS} steps"
        )));
    }
    // Perron vector: fix the sign so that all entries are positive.
    if w.iter().sum::<f64>() < 0.0 {
        w.iter_mut().for_each(|x| *x = -*x);
    }
    Ok(DickeWeights {
        m,
        l,
        w,
        lambda_max,
    })
}
