//! Decoder failure rates per Hamming shell.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::seq::index::sample;
use rayon::prelude::*;
use serde::Serialize;

use super::shell::binomial;
use crate::bits::{Bits, Combinations};
use crate::decoder::Decoder;
use crate::encoding::{syndrome, XorsatInstance};
use crate::error::{Error, Result};
use crate::rng::{derive_seed, rng_from_seed};

pub const DEFAULT_ENUMERATION_BUDGET: u64 = 10_000_000;
pub const DEFAULT_SAMPLES: usize = 2000;

const CHUNK: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileMode {
    Exact,
    MonteCarlo,
}

/// A correctly decoded error, kept for the signed sums of exact benchmarking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodedError {
    pub support: Vec<u32>,
    /// `v . y` mod 2.
    pub target_parity: bool,
    /// `B^T y`.
    pub syndrome: Bits,
}

#[derive(Clone, Debug)]
pub struct FailureProfile {
    pub mode: ProfileMode,
    pub decoder: String,
    pub m: usize,
    /// `eps[k]` for `k = 0..=l`.
    pub eps: Vec<f64>,
    pub failures: Vec<u64>,
    pub trials: Vec<u64>,
    /// `C(m, k)`.
    pub shell_sizes: Vec<BigUint>,
    /// Exact mode only: the correctly decoded errors of each shell.
    pub decoded_sets: Option<Vec<Vec<DecodedError>>>,
    pub samples_per_shell: Option<usize>,
}

impl FailureProfile {
    pub fn l(&self) -> usize {
        self.eps.len() - 1
    }

    /// The profile restricted to shells `0..=l`.
    pub fn truncated(&self, l: usize) -> FailureProfile {
        let keep = (l + 1).min(self.eps.len());
        FailureProfile {
            mode: self.mode,
            decoder: self.decoder.clone(),
            m: self.m,
            eps: self.eps[..keep].to_vec(),
            failures: self.failures[..keep].to_vec(),
            trials: self.trials[..keep].to_vec(),
            shell_sizes: self.shell_sizes[..keep].to_vec(),
            decoded_sets: self.decoded_sets.as_ref().map(|d| d[..keep].to_vec()),
            samples_per_shell: self.samples_per_shell,
        }
    }

    /// Replaces the failure rates, e.g. to model perfect decoding.
    pub fn with_eps(m: usize, eps: Vec<f64>) -> FailureProfile {
        let l = eps.len() - 1;
        FailureProfile {
            mode: ProfileMode::MonteCarlo,
            decoder: "given".into(),
            m,
            failures: vec![0; l + 1],
            trials: vec![0; l + 1],
            shell_sizes: (0..=l).map(|k| binomial(m, k)).collect(),
            eps,
            decoded_sets: None,
            samples_per_shell: None,
        }
    }
}

fn check_degree(m: usize, l: usize) -> Result<()> {
    if l > m {
        return Err(Error::InvalidArgument(format!(
            "degree l={l} exceeds m={m}"
        )));
    }
    Ok(())
}

/// Decodes a batch of errors in parallel, preserving order.
fn decode_batch(decoder: &dyn Decoder, batch: &[Vec<usize>], m: usize) -> Result<Vec<bool>> {
    batch
        .par_iter()
        .map(|support| Ok(decoder.decode(&Bits::from_support(m, support))?.success))
        .collect()
}

/// Number of errors of weight `<= l`, all of which an exact profile decodes.
pub fn exact_profile_size(m: usize, l: usize) -> BigUint {
    (0..=l.min(m)).map(|k| binomial(m, k)).sum()
}

/// Decodes every error of weight `<= l` and keeps the decoded ones.
pub fn failure_profile_exact(
    decoder: &dyn Decoder,
    x: &XorsatInstance,
    l: usize,
) -> Result<FailureProfile> {
    failure_profile_exact_with_budget(decoder, x, l, DEFAULT_ENUMERATION_BUDGET)
}

pub fn failure_profile_exact_with_budget(
    decoder: &dyn Decoder,
    x: &XorsatInstance,
    l: usize,
    budget: u64,
) -> Result<FailureProfile> {
    let m = x.m();
    check_degree(m, l)?;
    let shell_sizes: Vec<BigUint> = (0..=l).map(|k| binomial(m, k)).collect();
    let total = exact_profile_size(m, l);
    if total > BigUint::from(budget) {
        return Err(Error::Capacity(format!(
            "{total} errors of weight <= {l} exceed the enumeration budget {budget}; use Monte Carlo mode"
        )));
    }
    let targets = x.target_bits();
    let mut eps = Vec::with_capacity(l + 1);
    let mut failures = Vec::with_capacity(l + 1);
    let mut trials = Vec::with_capacity(l + 1);
    let mut decoded_sets = Vec::with_capacity(l + 1);
    for k in 0..=l {
        let mut combos = Combinations::new(m, k);
        let mut decoded = Vec::new();
        let mut count = 0u64;
        loop {
            let batch: Vec<Vec<usize>> = combos.by_ref().take(CHUNK).collect();
            if batch.is_empty() {
                break;
            }
            let ok = decode_batch(decoder, &batch, m)?;
            count += batch.len() as u64;
            for (support, success) in batch.into_iter().zip(ok) {
                if success {
                    let y = Bits::from_support(m, &support);
                    decoded.push(DecodedError {
                        target_parity: y.dot(&targets),
                        syndrome: syndrome(x, &y)?,
                        support: support.into_iter().map(|j| j as u32).collect(),
                    });
                }
            }
        }
        let fail = count - decoded.len() as u64;
        eps.push(fail as f64 / count as f64);
        failures.push(fail);
        trials.push(count);
        decoded_sets.push(decoded);
    }
    Ok(FailureProfile {
        mode: ProfileMode::Exact,
        decoder: decoder.name().into(),
        m,
        eps,
        failures,
        trials,
        shell_sizes,
        decoded_sets: Some(decoded_sets),
        samples_per_shell: None,
    })
}

/// The `index`-th random error of weight `k` for a run seed.
///
/// Depends only on `(seed, k, index)`, so every decoder and every worker
/// schedule sees the same errors.
pub fn sample_error(m: usize, k: usize, seed: u64, index: u64) -> Bits {
    let mut rng = rng_from_seed(derive_seed(seed, &[k as u64, index]));
    Bits::from_support(m, &sample(&mut rng, m, k).into_vec())
}

/// Monte Carlo failure rates.
///
/// Shells with at most `samples` members are enumerated exactly; larger
/// shells get `samples` independent uniform draws.
pub fn failure_profile_mc(
    decoder: &dyn Decoder,
    x: &XorsatInstance,
    l: usize,
    samples: usize,
    seed: u64,
) -> Result<FailureProfile> {
    let m = x.m();
    check_degree(m, l)?;
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let shell_sizes: Vec<BigUint> = (0..=l).map(|k| binomial(m, k)).collect();
    let mut eps = Vec::with_capacity(l + 1);
    let mut failures = Vec::with_capacity(l + 1);
    let mut trials = Vec::with_capacity(l + 1);
    for (k, size) in shell_sizes.iter().enumerate() {
        let (fail, count) = match size.to_usize().filter(|&s| s <= samples) {
            Some(size) => {
                let all: Vec<Vec<usize>> = Combinations::new(m, k).collect();
                let ok = decode_batch(decoder, &all, m)?;
                (ok.iter().filter(|&&s| !s).count() as u64, size as u64)
            }
            None => {
                let ok: Vec<bool> = (0..samples as u64)
                    .into_par_iter()
                    .map(|i| Ok(decoder.decode(&sample_error(m, k, seed, i))?.success))
                    .collect::<Result<_>>()?;
                (ok.iter().filter(|&&s| !s).count() as u64, samples as u64)
            }
        };
        eps.push(fail as f64 / count as f64);
        failures.push(fail);
        trials.push(count);
    }
    Ok(FailureProfile {
        mode: ProfileMode::MonteCarlo,
        decoder: decoder.name().into(),
        m,
        eps,
        failures,
        trials,
        shell_sizes,
        decoded_sets: None,
        samples_per_shell: Some(samples),
    })
}
