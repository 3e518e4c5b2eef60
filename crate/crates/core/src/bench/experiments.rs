//! End-to-end pipelines: instance preparation, benchmarking, degree sweeps,
//! decoder comparisons and the scaling studies.

use std::ops::RangeInclusive;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::optima::{enumerate_optima, Optima};
use super::report::{mean_std, BenchmarkReport, ReportRow};
use crate::decoder::{gate_cost, DecoderKind, DecodingContext};
use crate::dqi::{
    default_degree, dicke_weights, failure_profile_exact_with_budget, failure_profile_mc,
    p_opt_approx, p_opt_exact, FailureProfile, DEFAULT_ENUMERATION_BUDGET, DEFAULT_SAMPLES,
};
use crate::encoding::{
    code_distance, encode_icc, reduce, CodeDistance, ReductionRecord, XorsatInstance,
    DEFAULT_DISTANCE_CAP,
};
use crate::error::{Error, Result};
use crate::instances::{generate_instance, BpspInstance};
use crate::rng::derive_seed;

/// A BPSP instance after ICC encoding and reduction, ready for decoding.
#[derive(Clone, Debug)]
pub struct PreparedInstance {
    pub bpsp: BpspInstance,
    pub digest: String,
    pub record: ReductionRecord,
    pub ctx: DecodingContext,
    pub distance: CodeDistance,
}

impl PreparedInstance {
    pub fn new(bpsp: BpspInstance, distance_cap: usize) -> Result<Self> {
        let (reduced, record) = reduce(&encode_icc(&bpsp), &bpsp)?;
        let distance = code_distance(&reduced, distance_cap);
        let ctx = DecodingContext::new(reduced)?;
        Ok(PreparedInstance {
            digest: bpsp.digest(),
            bpsp,
            record,
            ctx,
            distance,
        })
    }

    pub fn reduced(&self) -> &XorsatInstance {
        &self.ctx.instance
    }

    pub fn n(&self) -> usize {
        self.ctx.instance.n_vars()
    }

    pub fn m(&self) -> usize {
        self.ctx.instance.m()
    }

    /// No constraints survive the reduction, so the forced swaps are optimal.
    pub fn is_trivial(&self) -> bool {
        self.m() == 0
    }

    /// Gate cost of one DQI run with the given decoder: the leading-order
    /// count for the greedy circuit, `n^4` for a minimum-length decoder.
    pub fn c_dqi(&self, kind: DecoderKind) -> f64 {
        match kind {
            DecoderKind::Greedy => gate_cost(&self.ctx.paths).leading_order as f64,
            DecoderKind::MinLength => (self.n() as f64).powi(4),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EvalMode {
    /// Exhaustive failure profile and the exact probability sum.
    Exact,
    /// Monte Carlo failure profile and the shell-sum approximation.
    Approx,
}

impl EvalMode {
    pub fn as_str(self) -> &'static str {
        match self {
            EvalMode::Exact => "exact",
            EvalMode::Approx => "approx",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeRule {
    /// A fixed degree, clamped to `m`.
    Fixed(usize),
    /// `max(1, floor(2n/5))`, clamped to `min(n, m)`.
    TwoFifths,
    /// The argmax of a Monte Carlo sweep over `1..=min(n, m)`.
    Sweep,
}

impl DegreeRule {
    pub fn as_str(self) -> &'static str {
        match self {
            DegreeRule::Fixed(_) => "fixed",
            DegreeRule::TwoFifths => "two-fifths",
            DegreeRule::Sweep => "sweep",
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub decoders: Vec<DecoderKind>,
    pub mode: EvalMode,
    pub degree: DegreeRule,
    pub samples: usize,
    pub seed: u64,
    pub distance_cap: usize,
    pub enumeration_budget: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            decoders: vec![DecoderKind::Greedy],
            mode: EvalMode::Approx,
            degree: DegreeRule::TwoFifths,
            samples: DEFAULT_SAMPLES,
            seed: 0,
            distance_cap: DEFAULT_DISTANCE_CAP,
            enumeration_budget: DEFAULT_ENUMERATION_BUDGET,
        }
    }
}

/// Seeds `N` random instances per car count, each from `(seed, N, index)`.
pub fn generate_batch(n_list: &[usize], per_n: usize, seed: u64) -> Result<Vec<BpspInstance>> {
    let mut out = Vec::with_capacity(n_list.len() * per_n);
    for &n_cars in n_list {
        for i in 0..per_n {
            out.push(generate_instance(
                n_cars,
                derive_seed(seed, &[n_cars as u64, i as u64]),
            )?);
        }
    }
    Ok(out)
}

/// Failure profile of the decoder up to degree `l` in the given mode.
pub fn profile_for(
    prep: &PreparedInstance,
    kind: DecoderKind,
    l: usize,
    mode: EvalMode,
    samples: usize,
    seed: u64,
    budget: u64,
) -> Result<FailureProfile> {
    let decoder = prep.ctx.decoder(kind);
    match mode {
        EvalMode::Exact => failure_profile_exact_with_budget(&*decoder, prep.reduced(), l, budget),
        EvalMode::Approx => failure_profile_mc(&*decoder, prep.reduced(), l, samples, seed),
    }
}

fn trivial_row(prep: &PreparedInstance, kind: DecoderKind, mode: EvalMode, seed: u64) -> ReportRow {
    ReportRow {
        digest: prep.digest.clone(),
        n_cars: prep.bpsp.n_cars(),
        n: prep.n(),
        m: 0,
        code_distance: prep.distance,
        l: 0,
        decoder: kind.as_str().into(),
        mode: mode.as_str().into(),
        p_opt: 1.0,
        c_opt: 1.0,
        c_dqi: 0.0,
        c_total: 0.0,
        eps: Vec::new(),
        seed,
        forced_swaps: prep.record.forced_swaps,
        wall_time_ms: 0.0,
    }
}

/// Benchmarks one decoder at degree `l`, using `optima` when given.
pub fn evaluate(
    prep: &PreparedInstance,
    kind: DecoderKind,
    l: usize,
    cfg: &BenchConfig,
    seed: u64,
    optima: Option<&Optima>,
) -> Result<ReportRow> {
    if prep.is_trivial() {
        return Ok(trivial_row(prep, kind, cfg.mode, seed));
    }
    let start = Instant::now();
    let owned;
    let optima = match optima {
        Some(o) => o,
        None => {
            owned = enumerate_optima(prep.reduced())?;
            &owned
        }
    };
    let profile = profile_for(
        prep,
        kind,
        l,
        cfg.mode,
        cfg.samples,
        seed,
        cfg.enumeration_budget,
    )?;
    let weights = dicke_weights(prep.m(), l)?;
    let c_dqi = prep.c_dqi(kind);
    let est = match cfg.mode {
        EvalMode::Exact => p_opt_exact(
            prep.reduced(),
            &optima.assignments,
            &weights,
            &profile,
            c_dqi,
        )?,
        EvalMode::Approx => p_opt_approx(
            optima.assignments.len(),
            optima.s_opt,
            prep.n(),
            &weights,
            &profile,
            c_dqi,
        )?,
    };
    Ok(ReportRow {
        digest: prep.digest.clone(),
        n_cars: prep.bpsp.n_cars(),
        n: prep.n(),
        m: prep.m(),
        code_distance: prep.distance,
        l,
        decoder: kind.as_str().into(),
        mode: cfg.mode.as_str().into(),
        p_opt: est.p_opt,
        c_opt: est.c_opt,
        c_dqi: est.c_dqi,
        c_total: est.c_total,
        eps: profile.eps,
        seed,
        forced_swaps: prep.record.forced_swaps,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeSweep {
    pub decoder: String,
    /// `(l, p~_opt)` for every swept degree.
    pub series: Vec<(usize, f64)>,
    /// Smallest degree attaining the maximum.
    pub l_star: usize,
}

impl DegreeSweep {
    pub fn best(&self) -> f64 {
        self.series
            .iter()
            .find(|(l, _)| *l == self.l_star)
            .map_or(f64::NAN, |(_, p)| *p)
    }
}

/// Approximate `p_opt` for every degree in the range, all read off one
/// failure profile computed up to the largest.
pub fn sweep_degree(
    prep: &PreparedInstance,
    kind: DecoderKind,
    degrees: RangeInclusive<usize>,
    mode: EvalMode,
    samples: usize,
    seed: u64,
    optima: &Optima,
) -> Result<DegreeSweep> {
    let (l_min, l_max) = (*degrees.start(), *degrees.end());
    let cap = prep.n().min(prep.m());
    if l_min < 1 || l_min > l_max || l_max > cap {
        return Err(Error::InvalidArgument(format!(
            "degree range {l_min}..={l_max} is not inside 1..={cap}"
        )));
    }
    let profile = profile_for(
        prep,
        kind,
        l_max,
        mode,
        samples,
        seed,
        DEFAULT_ENUMERATION_BUDGET,
    )?;
    let mut series = Vec::with_capacity(l_max - l_min + 1);
    for l in l_min..=l_max {
        let weights = dicke_weights(prep.m(), l)?;
        let est = p_opt_approx(
            optima.assignments.len(),
            optima.s_opt,
            prep.n(),
            &weights,
            &profile.truncated(l),
            prep.c_dqi(kind),
        )?;
        series.push((l, est.p_opt));
    }
    let mut l_star = l_min;
    let mut best = f64::NEG_INFINITY;
    for &(l, p) in &series {
        if p > best {
            best = p;
            l_star = l;
        }
    }
    Ok(DegreeSweep {
        decoder: kind.as_str().into(),
        series,
        l_star,
    })
}

/// The degree the rule picks for an instance.
pub fn choose_degree(
    prep: &PreparedInstance,
    kind: DecoderKind,
    rule: DegreeRule,
    samples: usize,
    seed: u64,
    optima: &Optima,
) -> Result<usize> {
    let cap = prep.n().min(prep.m());
    Ok(match rule {
        DegreeRule::Fixed(l) => l.min(prep.m()),
        DegreeRule::TwoFifths => default_degree(prep.n(), prep.m()),
        DegreeRule::Sweep if cap == 0 => 0,
        DegreeRule::Sweep => {
            sweep_degree(prep, kind, 1..=cap, EvalMode::Approx, samples, seed, optima)?.l_star
        }
    })
}

/// Rows for every instance and decoder of the config, in input order.
///
/// The sampling seed of instance `i` is derived from `(seed, i)` and shared
/// by all decoders, so paired rows see identical error samples.
pub fn run_benchmark(instances: &[BpspInstance], cfg: &BenchConfig) -> Result<BenchmarkReport> {
    let per_instance: Vec<Vec<ReportRow>> = instances
        .par_iter()
        .enumerate()
        .map(|(i, inst)| {
            let prep = PreparedInstance::new(inst.clone(), cfg.distance_cap)?;
            let seed = derive_seed(cfg.seed, &[i as u64]);
            if prep.is_trivial() {
                return Ok(cfg
                    .decoders
                    .iter()
                    .map(|&k| trivial_row(&prep, k, cfg.mode, seed))
                    .collect());
            }
            let optima = enumerate_optima(prep.reduced())?;
            cfg.decoders
                .iter()
                .map(|&kind| {
                    let l = choose_degree(&prep, kind, cfg.degree, cfg.samples, seed, &optima)?;
                    evaluate(&prep, kind, l, cfg, seed, Some(&optima))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(BenchmarkReport {
        rows: per_instance.into_iter().flatten().collect(),
    })
}

/// Greedy and minimum-length rows at the same degree, sampled with the same
/// seed.
pub fn compare_decoders(
    prep: &PreparedInstance,
    l: usize,
    mode: EvalMode,
    samples: usize,
    seed: u64,
) -> Result<[ReportRow; 2]> {
    let cfg = BenchConfig {
        mode,
        samples,
        ..BenchConfig::default()
    };
    let optima = if prep.is_trivial() {
        None
    } else {
        Some(enumerate_optima(prep.reduced())?)
    };
    Ok([
        evaluate(prep, DecoderKind::Greedy, l, &cfg, seed, optima.as_ref())?,
        evaluate(prep, DecoderKind::MinLength, l, &cfg, seed, optima.as_ref())?,
    ])
}

/// Ratios outside this band are flagged in validation tables.
pub const RATIO_FLAG_BAND: (f64, f64) = (0.05, 3.0);

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationRow {
    pub n_cars: usize,
    pub index: usize,
    pub digest: String,
    pub n: usize,
    pub m: usize,
    pub l: usize,
    pub p_opt: f64,
    pub p_opt_approx: f64,
    pub ratio: f64,
    pub flagged: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationSummary {
    pub n_cars: usize,
    pub instances: usize,
    /// Mean of `ln(p~/p)` over instances with a finite positive ratio.
    pub log_geo_mean_ratio: f64,
    pub geo_mean_ratio: f64,
    pub flagged: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationTable {
    pub rows: Vec<ValidationRow>,
    pub summaries: Vec<ValidationSummary>,
}

/// Exact and approximate `p_opt` side by side on random instances.
///
/// Both pipelines use the same decoder and degree; the approximate one
/// samples its failure rates.
pub fn validate_approximation(
    n_list: &[usize],
    per_n: usize,
    rule: DegreeRule,
    kind: DecoderKind,
    samples: usize,
    seed: u64,
) -> Result<ValidationTable> {
    let jobs: Vec<(usize, usize)> = n_list
        .iter()
        .flat_map(|&n| (0..per_n).map(move |i| (n, i)))
        .collect();
    let rows: Vec<ValidationRow> = jobs
        .par_iter()
        .map(|&(n_cars, index)| {
            let inst_seed = derive_seed(seed, &[n_cars as u64, index as u64]);
            let prep =
                PreparedInstance::new(generate_instance(n_cars, inst_seed)?, DEFAULT_DISTANCE_CAP)?;
            let mc_seed = derive_seed(inst_seed, &[1]);
            let (l, p, q) = if prep.is_trivial() {
                (0, 1.0, 1.0)
            } else {
                let optima = enumerate_optima(prep.reduced())?;
                let l = choose_degree(&prep, kind, rule, samples, mc_seed, &optima)?;
                let mut cfg = BenchConfig {
                    mode: EvalMode::Exact,
                    samples,
                    ..BenchConfig::default()
                };
                let exact = evaluate(&prep, kind, l, &cfg, mc_seed, Some(&optima))?;
                cfg.mode = EvalMode::Approx;
                let approx = evaluate(&prep, kind, l, &cfg, mc_seed, Some(&optima))?;
                (l, exact.p_opt, approx.p_opt)
            };
            let ratio = q / p;
            Ok(ValidationRow {
                n_cars,
                index,
                digest: prep.digest.clone(),
                n: prep.n(),
                m: prep.m(),
                l,
                p_opt: p,
                p_opt_approx: q,
                ratio,
                flagged: !(RATIO_FLAG_BAND.0..=RATIO_FLAG_BAND.1).contains(&ratio),
            })
        })
        .collect::<Result<_>>()?;
    let summaries = n_list
        .iter()
        .map(|&n_cars| {
            let group: Vec<&ValidationRow> = rows.iter().filter(|r| r.n_cars == n_cars).collect();
            let logs: Vec<f64> = group
                .iter()
                .filter(|r| r.ratio.is_finite() && r.ratio > 0.0)
                .map(|r| r.ratio.ln())
                .collect();
            let log_mean = mean_std(&logs).0;
            ValidationSummary {
                n_cars,
                instances: group.len(),
                log_geo_mean_ratio: log_mean,
                geo_mean_ratio: log_mean.exp(),
                flagged: group.iter().filter(|r| r.flagged).count(),
            }
        })
        .collect();
    Ok(ValidationTable { rows, summaries })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingRow {
    pub n_cars: usize,
    pub index: usize,
    pub n: usize,
    pub m: usize,
    pub code_distance: CodeDistance,
    pub paths: usize,
    pub leading_order: u64,
}

/// Reduced size, code distance and leading-order gate cost of random
/// instances.
pub fn scaling_study(
    n_list: &[usize],
    per_n: usize,
    seed: u64,
    distance_cap: usize,
) -> Result<Vec<ScalingRow>> {
    let jobs: Vec<(usize, usize)> = n_list
        .iter()
        .flat_map(|&n| (0..per_n).map(move |i| (n, i)))
        .collect();
    jobs.par_iter()
        .map(|&(n_cars, index)| {
            let inst =
                generate_instance(n_cars, derive_seed(seed, &[n_cars as u64, index as u64]))?;
            let prep = PreparedInstance::new(inst, distance_cap)?;
            Ok(ScalingRow {
                n_cars,
                index,
                n: prep.n(),
                m: prep.m(),
                code_distance: prep.distance,
                paths: prep.ctx.paths.len(),
                leading_order: gate_cost(&prep.ctx.paths).leading_order,
            })
        })
        .collect()
}

/// Least-squares slope of `ln y` against `ln x`; points with a
/// non-positive coordinate are skipped.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = logs.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = logs.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    sxy / sxx
}
