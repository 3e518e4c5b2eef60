//! Measurement probabilities of the post-selected DQI state.

use serde::Serialize;

use super::profile::{FailureProfile, ProfileMode};
use super::shell::{binomial_f64, shell_sum_ratio};
use super::weights::DickeWeights;
use crate::bits::Bits;
use crate::encoding::XorsatInstance;
use crate::error::{Error, Result};

/// Largest `n` for which the full amplitude vector is built.
pub const AMPLITUDE_MAX_VARS: usize = 20;

fn check_compat(weights: &DickeWeights, profile: &FailureProfile, m: usize) -> Result<()> {
    if weights.m != m || profile.m != m {
        return Err(Error::InvalidArgument(format!(
            "weights (m={}) and profile (m={}) must match the instance (m={m})",
            weights.m, profile.m
        )));
    }
    if weights.l > profile.l() {
        return Err(Error::InvalidArgument(format!(
            "profile covers shells up to {} but the degree is {}",
            profile.l(),
            weights.l
        )));
    }
    Ok(())
}

fn decoded_sets(profile: &FailureProfile) -> Result<&[Vec<super::profile::DecodedError>]> {
    match (&profile.mode, &profile.decoded_sets) {
        (ProfileMode::Exact, Some(sets)) => Ok(sets),
        _ => Err(Error::ProfileMode(
            "exact probabilities need an exact profile with decoded sets".into(),
        )),
    }
}

/// Post-selection normalization `sum_k w_k^2 (1 - eps_k)`.
pub fn normalization(weights: &DickeWeights, profile: &FailureProfile) -> f64 {
    weights
        .w
        .iter()
        .zip(&profile.eps)
        .map(|(w, e)| w * w * (1.0 - e))
        .sum()
}

/// Probability of measuring `assign`:
///
/// `p(x) = 1/R * 2^-n * sum_k w_k^2 / C(m,k) * (sum_{y in D_k} (-1)^(v.y + (B^T y).x))^2`.
pub fn p_exact(
    x: &XorsatInstance,
    assign: &Bits,
    weights: &DickeWeights,
    profile: &FailureProfile,
) -> Result<f64> {
    check_compat(weights, profile, x.m())?;
    let sets = decoded_sets(profile)?;
    if assign.len() != x.n_vars() {
        return Err(Error::InvalidArgument(format!(
            "assignment has length {}, expected {}",
            assign.len(),
            x.n_vars()
        )));
    }
    let m = x.m();
    let mut acc = 0.0;
    for (k, w) in weights.w.iter().enumerate() {
        let signed: i64 = sets[k]
            .iter()
            .map(|d| {
                if d.target_parity ^ d.syndrome.dot(assign) {
                    -1
                } else {
                    1
                }
            })
            .sum();
        acc += w * w / binomial_f64(m, k) * (signed as f64).powi(2);
    }
    let r = normalization(weights, profile);
    Ok(acc / r * (-(x.n_vars() as f64)).exp2())
}

/// Approximate probability of an assignment satisfying `s` constraints,
/// assuming decoding failures are spread uniformly over each shell:
///
/// `1/R~ * 2^-n * sum_k w_k^2 / C(m,k) * ((1 - eps_k) A_{k,s})^2`.
pub fn p_approx(
    s: usize,
    weights: &DickeWeights,
    profile: &FailureProfile,
    n: usize,
) -> Result<f64> {
    let m = weights.m;
    check_compat(weights, profile, m)?;
    if s > m {
        return Err(Error::InvalidArgument(format!("s={s} exceeds m={m}")));
    }
    let mut acc = 0.0;
    for (k, w) in weights.w.iter().enumerate() {
        // w^2 / C * (c A)^2 = w^2 * C * (c A / C)^2
        let ratio = (1.0 - profile.eps[k]) * shell_sum_ratio(k, s, m)?;
        acc += w * w * binomial_f64(m, k) * ratio * ratio;
    }
    let r = normalization(weights, profile);
    Ok(acc / r * (-(n as f64)).exp2())
}

/// Shell-resolved amplitudes: entry `[k][x]` is the amplitude of basis
/// state `x` (bit `i` is variable `i`) in the branch of shell `k`.
///
/// Each shell's state is built on the syndrome register, one term per
/// decoded error with coefficient `w_k / sqrt(C(m,k))` and sign
/// `(-1)^(v.y)`, and mapped by a normalized Walsh-Hadamard transform.
/// Branches are kept apart, so the probability of `x` is
/// `sum_k amp[k][x]^2`. Adding the branches coherently instead would give
/// cross-shell terms that the probability density `p_exact` does not have.
pub fn amplitude_oracle(
    x: &XorsatInstance,
    weights: &DickeWeights,
    profile: &FailureProfile,
) -> Result<Vec<Vec<f64>>> {
    check_compat(weights, profile, x.m())?;
    let sets = decoded_sets(profile)?;
    let n = x.n_vars();
    if n > AMPLITUDE_MAX_VARS {
        return Err(Error::Capacity(format!(
            "amplitude vector over {n} variables exceeds the limit of {AMPLITUDE_MAX_VARS}"
        )));
    }
    let scale = (-(n as f64) / 2.0).exp2() / normalization(weights, profile).sqrt();
    let mut shells = Vec::with_capacity(weights.w.len());
    for (k, w) in weights.w.iter().enumerate() {
        let coeff = w / binomial_f64(x.m(), k).sqrt();
        let mut state = vec![0.0f64; 1 << n];
        for d in &sets[k] {
            let z = d.syndrome.as_mask() as usize;
            state[z] += if d.target_parity { -coeff } else { coeff };
        }
        walsh_hadamard(&mut state);
        state.iter_mut().for_each(|a| *a *= scale);
        shells.push(state);
    }
    Ok(shells)
}

/// Probability of every basis state from shell-resolved amplitudes.
pub fn oracle_probabilities(amplitudes: &[Vec<f64>]) -> Vec<f64> {
    let len = amplitudes.first().map_or(0, Vec::len);
    (0..len)
        .map(|x| amplitudes.iter().map(|shell| shell[x] * shell[x]).sum())
        .collect()
}

fn walsh_hadamard(state: &mut [f64]) {
    let mut h = 1;
    while h < state.len() {
        for block in state.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (s, t) = (*a + *b, *a - *b);
                *a = s;
                *b = t;
            }
        }
        h *= 2;
    }
}

/// Success probability and cost of finding an optimum.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DqiEstimate {
    pub p_opt: f64,
    /// Expected number of runs, `1 / p_opt`.
    pub c_opt: f64,
    /// Gate cost of one run.
    pub c_dqi: f64,
    pub c_total: f64,
    pub l: usize,
    pub normalization: f64,
    /// `p_opt` is zero, so the costs are infinite.
    pub infinite_cost: bool,
}

impl DqiEstimate {
    pub(crate) fn new(p_opt: f64, c_dqi: f64, l: usize, normalization: f64) -> Self {
        let infinite_cost = p_opt <= 0.0;
        let c_opt = if infinite_cost {
            f64::INFINITY
        } else {
            1.0 / p_opt
        };
        DqiEstimate {
            p_opt,
            c_opt,
            c_dqi,
            c_total: c_opt * c_dqi,
            l,
            normalization,
            infinite_cost,
        }
    }
}

/// `p_opt` as the sum of `p_exact` over all optimal assignments.
pub fn p_opt_exact(
    x: &XorsatInstance,
    s_opt: &[Bits],
    weights: &DickeWeights,
    profile: &FailureProfile,
    c_dqi: f64,
) -> Result<DqiEstimate> {
    if s_opt.is_empty() {
        return Err(Error::InvalidArgument("the set of optima is empty".into()));
    }
    let p = s_opt
        .iter()
        .map(|a| p_exact(x, a, weights, profile))
        .sum::<Result<f64>>()?;
    Ok(DqiEstimate::new(
        p,
        c_dqi,
        weights.l,
        normalization(weights, profile),
    ))
}

/// `p_opt ~ |S_opt| * p_approx(s_opt)`.
pub fn p_opt_approx(
    count: usize,
    s_opt: usize,
    n: usize,
    weights: &DickeWeights,
    profile: &FailureProfile,
    c_dqi: f64,
) -> Result<DqiEstimate> {
    if count == 0 {
        return Err(Error::InvalidArgument("the set of optima is empty".into()));
    }
    let p = count as f64 * p_approx(s_opt, weights, profile, n)?;
    Ok(DqiEstimate::new(
        p,
        c_dqi,
        weights.l,
        normalization(weights, profile),
    ))
}

/// `max(1, floor(2n/5))`, clamped to `min(n, m)`.
pub fn default_degree(n: usize, m: usize) -> usize {
    (2 * n / 5).max(1).min(n.min(m))
}
