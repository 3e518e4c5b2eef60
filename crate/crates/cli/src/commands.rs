use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dqi_bpsp::bench::{
    enumerate_optima, export_lp, generate_batch, profile_for, run_benchmark, sweep_degree,
    validate_approximation, BenchConfig, DegreeRule, EvalMode, PreparedInstance,
};
use dqi_bpsp::decoder::{emit_circuit, gate_cost, DecoderKind};
use dqi_bpsp::dqi::{
    default_degree, exact_profile_size, DEFAULT_ENUMERATION_BUDGET, DEFAULT_SAMPLES,
};
use dqi_bpsp::encoding::{
    code_distance, describe_rows, encode_icc, encode_non_icc, non_icc_distance_bound, read_xorsat,
    reduce, write_xorsat, Encoding, XorsatInstance, DEFAULT_DISTANCE_CAP,
};
use dqi_bpsp::instances::{generate_instance, read_instance, write_instance, BpspInstance};
use dqi_bpsp::Error;

#[derive(Parser, Debug)]
#[command(
    name = "dqi-bench",
    version,
    about = "Benchmark decoded quantum interferometry on binary paint shop instances"
)]
pub struct Cli {
    /// Worker threads; results do not depend on it
    #[arg(long, global = true, env = "DQI_BENCH_JOBS")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a random instance
    Gen(GenArgs),
    /// Encode an instance as a max-XORSAT system
    Encode(EncodeArgs),
    /// Code distance of an encoded instance
    Distance(DistanceArgs),
    /// Per-shell decoder failure rates
    DecodeStats(DecodeStatsArgs),
    /// Emit the reversible greedy decoding circuit
    Circuit(CircuitArgs),
    /// Benchmark instances and write a CSV report
    Bench(BenchArgs),
    /// Sweep the polynomial degree
    Sweep(SweepArgs),
    /// Compare exact and approximate success probabilities
    ValidateApprox(ValidateArgs),
    /// Write the max-XORSAT system as a 0/1 program in LP format
    ExportLp(ExportLpArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EncodingArg {
    Icc,
    NonIcc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DecoderArg {
    Greedy,
    MinLength,
    Both,
}

impl DecoderArg {
    fn kinds(self) -> Vec<DecoderKind> {
        match self {
            DecoderArg::Greedy => vec![DecoderKind::Greedy],
            DecoderArg::MinLength => vec![DecoderKind::MinLength],
            DecoderArg::Both => vec![DecoderKind::Greedy, DecoderKind::MinLength],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Approx,
}

impl From<ModeArg> for EvalMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exact => EvalMode::Exact,
            ModeArg::Approx => EvalMode::Approx,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LRuleArg {
    Fixed,
    TwoFifths,
    Sweep,
}

#[derive(Args, Debug)]
struct GenArgs {
    /// Number of distinct cars
    #[arg(long)]
    n_cars: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Instance JSON to write
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args, Debug)]
struct SystemArgs {
    /// Instance JSON
    #[arg(
        short,
        long,
        required_unless_present = "xorsat",
        conflicts_with = "xorsat"
    )]
    input: Option<PathBuf>,
    /// Previously encoded system instead of an instance
    #[arg(long)]
    xorsat: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "icc")]
    encoding: EncodingArg,
    /// Eliminate constraints forced by short repeats
    #[arg(long)]
    reduce: bool,
}

#[derive(Args, Debug)]
struct EncodeArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// System JSON to write
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args, Debug)]
struct DistanceArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// Largest distance searched for
    #[arg(long, default_value_t = DEFAULT_DISTANCE_CAP)]
    cap: usize,
}

/// Degree, decoder and sampling options shared by the DQI commands.
#[derive(Args, Debug)]
struct DqiArgs {
    #[arg(long, value_enum, default_value = "greedy")]
    decoder: DecoderArg,
    /// Fixed polynomial degree (implies --l-rule fixed)
    #[arg(long)]
    l: Option<usize>,
    #[arg(long, value_enum, default_value = "two-fifths")]
    l_rule: LRuleArg,
    #[arg(long, value_enum, default_value = "approx")]
    mode: ModeArg,
    /// Random errors per Hamming shell in approximate mode
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Most errors decoded by one exact profile
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
    budget: u64,
    /// Allow exact mode beyond the enumeration budget
    #[arg(long)]
    force: bool,
}

impl DqiArgs {
    fn degree(&self) -> Result<DegreeRule> {
        Ok(match (self.l, self.l_rule) {
            (Some(l), LRuleArg::Fixed | LRuleArg::TwoFifths) => DegreeRule::Fixed(l),
            (Some(_), LRuleArg::Sweep) => {
                return Err(
                    Error::InvalidArgument("--l conflicts with --l-rule sweep".into()).into(),
                )
            }
            (None, LRuleArg::Fixed) => {
                return Err(Error::InvalidArgument("--l-rule fixed needs --l".into()).into())
            }
            (None, LRuleArg::TwoFifths) => DegreeRule::TwoFifths,
            (None, LRuleArg::Sweep) => DegreeRule::Sweep,
        })
    }

    fn config(&self) -> Result<BenchConfig> {
        if self.samples == 0 {
            return Err(Error::InvalidArgument("--samples must be at least 1".into()).into());
        }
        Ok(BenchConfig {
            decoders: self.decoder.kinds(),
            mode: self.mode.into(),
            degree: self.degree()?,
            samples: self.samples,
            seed: self.seed,
            distance_cap: DEFAULT_DISTANCE_CAP,
            enumeration_budget: if self.force { u64::MAX } else { self.budget },
        })
    }

    /// Exact mode decodes every error up to the degree; refuse runs that
    /// would exceed the budget unless forced.
    fn check_exact(&self, prep: &PreparedInstance, l: usize) -> Result<()> {
        if self.mode != ModeArg::Exact || self.force {
            return Ok(());
        }
        let total = exact_profile_size(prep.m(), l);
        if total > self.budget.into() {
            return Err(Error::Validation(format!(
                "exact mode at N={} (m={}, l={l}) decodes {total} errors, above the budget of {}; \
                 pass --force or use --mode approx",
                prep.bpsp.n_cars(),
                prep.m(),
                self.budget
            ))
            .into());
        }
        Ok(())
    }
}

#[derive(Args, Debug)]
struct DecodeStatsArgs {
    /// Instance JSON
    #[arg(short, long)]
    input: PathBuf,
    #[command(flatten)]
    dqi: DqiArgs,
    /// CSV of failure rates per shell
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CircuitArgs {
    /// Instance JSON
    #[arg(short, long)]
    input: PathBuf,
    /// Gate list to write
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Instance JSON; may be repeated
    #[arg(short, long, conflicts_with = "n_cars")]
    input: Vec<PathBuf>,
    /// Car counts of generated instances, comma separated
    #[arg(long, value_delimiter = ',', required_unless_present = "input")]
    n_cars: Vec<usize>,
    /// Generated instances per car count
    #[arg(long, default_value_t = 10)]
    instances: usize,
    /// Seed of the generated instances
    #[arg(long, default_value_t = 0)]
    instance_seed: u64,
    #[command(flatten)]
    dqi: DqiArgs,
    /// Report CSV to write
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Aggregate CSV to write
    #[arg(long)]
    aggregates: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Instance JSON
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "greedy")]
    decoder: DecoderArg,
    #[arg(long, default_value_t = 1)]
    l_min: usize,
    /// Largest degree; defaults to min(n, m)
    #[arg(long)]
    l_max: Option<usize>,
    #[arg(long, value_enum, default_value = "approx")]
    mode: ModeArg,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV of the swept series
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    /// Car counts, comma separated
    #[arg(long, value_delimiter = ',', default_value = "5,7,9")]
    n_cars: Vec<usize>,
    /// Instances per car count
    #[arg(long, default_value_t = 10)]
    instances: usize,
    #[arg(long, value_enum, default_value = "greedy")]
    decoder: DecoderArg,
    /// Fixed degree instead of the two-fifths rule
    #[arg(long)]
    l: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV of the paired probabilities
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ExportLpArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// LP file to write
    #[arg(short, long)]
    output: PathBuf,
}

pub fn run(cli: Cli) -> Result<Value> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(Error::InvalidArgument("--jobs must be at least 1".into()).into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("configuring the worker pool")?;
    }
    match cli.command {
        Command::Gen(a) => gen(a),
        Command::Encode(a) => encode(a),
        Command::Distance(a) => distance(a),
        Command::DecodeStats(a) => decode_stats(a),
        Command::Circuit(a) => circuit(a),
        Command::Bench(a) => bench(a),
        Command::Sweep(a) => sweep(a),
        Command::ValidateApprox(a) => validate(a),
        Command::ExportLp(a) => export(a),
    }
}

fn load(path: &Path) -> Result<BpspInstance> {
    read_instance(path).with_context(|| format!("reading {}", path.display()))
}

fn prepare(path: &Path) -> Result<PreparedInstance> {
    Ok(PreparedInstance::new(load(path)?, DEFAULT_DISTANCE_CAP)?)
}

fn writing(p: &Path) -> String {
    format!("writing {}", p.display())
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

fn gen(a: GenArgs) -> Result<Value> {
    let inst = generate_instance(a.n_cars, a.seed)?;
    write_instance(&inst, &a.output).with_context(|| writing(&a.output))?;
    Ok(json!({
        "command": "gen",
        "n_cars": a.n_cars,
        "seed": a.seed,
        "digest": inst.digest(),
        "output": path_str(&a.output),
    }))
}

/// The system selected by the flags, with the instance and reduction
/// summary when it was encoded here.
fn load_system(a: &SystemArgs) -> Result<(XorsatInstance, Value)> {
    if let Some(path) = &a.xorsat {
        let x = read_xorsat(path).with_context(|| format!("reading {}", path.display()))?;
        return Ok((x, Value::Null));
    }
    let path = a.input.as_ref().expect("clap requires an input");
    let inst = load(path)?;
    let x = match a.encoding {
        EncodingArg::Icc => encode_icc(&inst),
        EncodingArg::NonIcc => encode_non_icc(&inst),
    };
    if !a.reduce {
        return Ok((x, json!({ "digest": inst.digest(), "reduced": false })));
    }
    let (r, rec) = reduce(&x, &inst)?;
    let info = json!({
        "digest": inst.digest(),
        "reduced": true,
        "forced_swaps": rec.forced_swaps,
        "removed_constraints": rec.removed_constraints.iter().map(|j| j + 1).collect::<Vec<_>>(),
        "removed_variables": rec.removed_variables.iter().map(|i| i + 1).collect::<Vec<_>>(),
    });
    Ok((r, info))
}

fn encoding_name(x: &XorsatInstance) -> &'static str {
    x.encoding().map_or("generic", Encoding::as_str)
}

fn encode(a: EncodeArgs) -> Result<Value> {
    let (x, info) = load_system(&a.system)?;
    write_xorsat(&x, &a.output).with_context(|| writing(&a.output))?;
    Ok(json!({
        "command": "encode",
        "encoding": encoding_name(&x),
        "n_vars": x.n_vars(),
        "m": x.m(),
        "degenerate": x.is_degenerate(),
        "instance": info,
        "rows": describe_rows(&x),
        "output": path_str(&a.output),
    }))
}

fn distance(a: DistanceArgs) -> Result<Value> {
    let (x, info) = load_system(&a.system)?;
    let d = if x.m() == 0 {
        Value::Null
    } else {
        json!(code_distance(&x, a.cap).to_string())
    };
    let mut out = json!({
        "command": "distance",
        "encoding": encoding_name(&x),
        "n_vars": x.n_vars(),
        "m": x.m(),
        "cap": a.cap,
        "code_distance": d,
        "instance": info,
    });
    if let (EncodingArg::NonIcc, Some(path)) = (a.system.encoding, &a.system.input) {
        let inst = load(path)?;
        let b = non_icc_distance_bound(&inst, a.system.reduce);
        out["non_icc_bound"] = json!({ "value": b.value, "lower_bound": b.lower_bound });
    }
    Ok(out)
}

fn decode_stats(a: DecodeStatsArgs) -> Result<Value> {
    let prep = prepare(&a.input)?;
    let cfg = a.dqi.config()?;
    let mut profiles = Vec::new();
    let mut csv_rows = Vec::new();
    if !prep.is_trivial() {
        let optima = matches!(cfg.degree, DegreeRule::Sweep)
            .then(|| enumerate_optima(prep.reduced()))
            .transpose()?;
        for &kind in &cfg.decoders {
            let l = match (&optima, cfg.degree) {
                (Some(o), DegreeRule::Sweep) => {
                    let cap = prep.n().min(prep.m());
                    sweep_degree(
                        &prep,
                        kind,
                        1..=cap,
                        EvalMode::Approx,
                        cfg.samples,
                        cfg.seed,
                        o,
                    )?
                    .l_star
                }
                (_, DegreeRule::Fixed(l)) => l,
                _ => default_degree(prep.n(), prep.m()),
            };
            a.dqi.check_exact(&prep, l)?;
            let prof = profile_for(
                &prep,
                kind,
                l,
                cfg.mode,
                cfg.samples,
                cfg.seed,
                cfg.enumeration_budget,
            )?;
            for k in 0..=prof.l() {
                csv_rows.push([
                    kind.as_str().to_string(),
                    k.to_string(),
                    prof.eps[k].to_string(),
                    prof.failures[k].to_string(),
                    prof.trials[k].to_string(),
                    prof.shell_sizes[k].to_string(),
                ]);
            }
            profiles.push(json!({
                "decoder": kind.as_str(),
                "l": prof.l(),
                "eps": prof.eps,
            }));
        }
    }
    if let Some(path) = &a.output {
        let mut w = csv::Writer::from_path(path).with_context(|| writing(path))?;
        w.write_record(["decoder", "k", "eps", "failures", "trials", "shell_size"])?;
        for row in csv_rows {
            w.write_record(row)?;
        }
        w.flush()?;
    }
    Ok(json!({
        "command": "decode-stats",
        "digest": prep.digest,
        "n": prep.n(),
        "m": prep.m(),
        "mode": EvalMode::from(a.dqi.mode).as_str(),
        "seed": a.dqi.seed,
        "profiles": profiles,
        "output": a.output.as_deref().map(path_str),
    }))
}

fn circuit(a: CircuitArgs) -> Result<Value> {
    let prep = prepare(&a.input)?;
    let gl = emit_circuit(&prep.ctx.paths, &prep.ctx.graph);
    fs::write(&a.output, gl.to_text()).with_context(|| writing(&a.output))?;
    let cost = gate_cost(&prep.ctx.paths);
    Ok(json!({
        "command": "circuit",
        "digest": prep.digest,
        "n": prep.n(),
        "m": prep.m(),
        "paths": prep.ctx.paths.len(),
        "ccx": cost.ccx,
        "cx": cost.cx,
        "leading_order": cost.leading_order,
        "output": path_str(&a.output),
    }))
}

fn bench(a: BenchArgs) -> Result<Value> {
    let cfg = a.dqi.config()?;
    let instances = if a.input.is_empty() {
        generate_batch(&a.n_cars, a.instances, a.instance_seed)?
    } else {
        a.input.iter().map(|p| load(p)).collect::<Result<_>>()?
    };
    if cfg.mode == EvalMode::Exact {
        for inst in &instances {
            let prep = PreparedInstance::new(inst.clone(), cfg.distance_cap)?;
            let l = match cfg.degree {
                DegreeRule::Fixed(l) => l,
                DegreeRule::TwoFifths => default_degree(prep.n(), prep.m()),
                DegreeRule::Sweep => prep.n().min(prep.m()),
            };
            a.dqi.check_exact(&prep, l)?;
        }
    }
    let report = run_benchmark(&instances, &cfg)?;
    if let Some(path) = &a.output {
        report.save_csv(path).with_context(|| writing(path))?;
    }
    if let Some(path) = &a.aggregates {
        report
            .save_aggregates_csv(path)
            .with_context(|| writing(path))?;
    }
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|r| {
            json!({
                "digest": r.digest,
                "n_cars": r.n_cars,
                "n": r.n,
                "m": r.m,
                "code_distance": r.code_distance.to_string(),
                "l": r.l,
                "decoder": r.decoder,
                "mode": r.mode,
                "p_opt": r.p_opt,
                "c_opt": finite_or_null(r.c_opt),
                "c_dqi": r.c_dqi,
                "c_total": finite_or_null(r.c_total),
                "eps": r.eps,
                "seed": r.seed,
                "wall_time_ms": r.wall_time_ms,
            })
        })
        .collect();
    Ok(json!({
        "command": "bench",
        "instances": instances.len(),
        "mode": cfg.mode.as_str(),
        "l_rule": cfg.degree.as_str(),
        "rows": rows,
        "output": a.output.as_deref().map(path_str),
        "aggregates": a.aggregates.as_deref().map(path_str),
    }))
}

fn finite_or_null(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::Null
    }
}

fn sweep(a: SweepArgs) -> Result<Value> {
    let prep = prepare(&a.input)?;
    if prep.is_trivial() {
        return Err(Error::InvalidArgument(
            "the reduced system has no constraints to sweep".into(),
        )
        .into());
    }
    let l_max = a.l_max.unwrap_or_else(|| prep.n().min(prep.m()));
    let optima = enumerate_optima(prep.reduced())?;
    let mut sweeps = Vec::new();
    for kind in a.decoder.kinds() {
        sweeps.push(sweep_degree(
            &prep,
            kind,
            a.l_min..=l_max,
            a.mode.into(),
            a.samples,
            a.seed,
            &optima,
        )?);
    }
    if let Some(path) = &a.output {
        let mut w = csv::Writer::from_path(path).with_context(|| writing(path))?;
        w.write_record(["decoder", "l", "p_opt"])?;
        for s in &sweeps {
            for (l, p) in &s.series {
                w.write_record([s.decoder.clone(), l.to_string(), p.to_string()])?;
            }
        }
        w.flush()?;
    }
    Ok(json!({
        "command": "sweep",
        "digest": prep.digest,
        "n": prep.n(),
        "m": prep.m(),
        "l_min": a.l_min,
        "l_max": l_max,
        "l_star": sweeps.iter().map(|s| json!({ "decoder": s.decoder, "l_star": s.l_star, "p_opt": s.best() })).collect::<Vec<_>>(),
        "output": a.output.as_deref().map(path_str),
    }))
}

fn validate(a: ValidateArgs) -> Result<Value> {
    let kinds = a.decoder.kinds();
    if kinds.len() != 1 {
        return Err(Error::InvalidArgument("validate-approx takes a single decoder".into()).into());
    }
    let rule = a.l.map_or(DegreeRule::TwoFifths, DegreeRule::Fixed);
    let table = validate_approximation(&a.n_cars, a.instances, rule, kinds[0], a.samples, a.seed)?;
    if let Some(path) = &a.output {
        let mut w = csv::Writer::from_path(path).with_context(|| writing(path))?;
        w.write_record([
            "n_cars",
            "index",
            "n",
            "m",
            "l",
            "p_opt",
            "p_opt_approx",
            "ratio",
            "flagged",
        ])?;
        for r in &table.rows {
            w.write_record([
                r.n_cars.to_string(),
                r.index.to_string(),
                r.n.to_string(),
                r.m.to_string(),
                r.l.to_string(),
                r.p_opt.to_string(),
                r.p_opt_approx.to_string(),
                r.ratio.to_string(),
                r.flagged.to_string(),
            ])?;
        }
        w.flush()?;
    }
    Ok(json!({
        "command": "validate-approx",
        "decoder": kinds[0].as_str(),
        "samples": a.samples,
        "seed": a.seed,
        "summaries": table.summaries,
        "output": a.output.as_deref().map(path_str),
    }))
}

fn export(a: ExportLpArgs) -> Result<Value> {
    let (x, info) = load_system(&a.system)?;
    export_lp(&x, &a.output).with_context(|| writing(&a.output))?;
    Ok(json!({
        "command": "export-lp",
        "encoding": encoding_name(&x),
        "n_vars": x.n_vars(),
        "m": x.m(),
        "binaries": x.n_vars() + x.m(),
        "instance": info,
        "output": path_str(&a.output),
    }))
}
