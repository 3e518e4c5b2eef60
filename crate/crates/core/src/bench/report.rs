use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::encoding::CodeDistance;
use crate::error::Result;

pub const REPORT_HEADER: [&str; 13] = [
    "n_cars",
    "n",
    "m",
    "code_distance",
    "l",
    "decoder",
    "mode",
    "p_opt",
    "c_opt",
    "c_dqi",
    "c_total",
    "eps_json",
    "seed",
];

pub const AGGREGATE_HEADER: [&str; 4] = ["n_cars", "metric", "mean", "std"];

/// One benchmarked (instance, decoder, degree) combination.
#[derive(Clone, Debug, Serialize)]
pub struct ReportRow {
    pub digest: String,
    pub n_cars: usize,
    pub n: usize,
    pub m: usize,
    pub code_distance: CodeDistance,
    pub l: usize,
    pub decoder: String,
    pub mode: String,
    pub p_opt: f64,
    pub c_opt: f64,
    pub c_dqi: f64,
    pub c_total: f64,
    pub eps: Vec<f64>,
    pub seed: u64,
    pub forced_swaps: usize,
    /// Not written to CSV, which stays byte-identical across runs.
    pub wall_time_ms: f64,
}

impl ReportRow {
    fn csv_record(&self) -> Vec<String> {
        vec![
            self.n_cars.to_string(),
            self.n.to_string(),
            self.m.to_string(),
            self.code_distance.to_string(),
            self.l.to_string(),
            self.decoder.clone(),
            self.mode.clone(),
            fmt_f64(self.p_opt),
            fmt_f64(self.c_opt),
            fmt_f64(self.c_dqi),
            fmt_f64(self.c_total),
            serde_json::to_string(&self.eps).expect("finite rates serialize"),
            self.seed.to_string(),
        ]
    }
}

fn fmt_f64(v: f64) -> String {
    if v.is_infinite() {
        "inf".into()
    } else {
        v.to_string()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AggregateRow {
    pub n_cars: usize,
    /// `decoder/mode/quantity`.
    pub metric: String,
    pub mean: f64,
    /// Sample standard deviation; zero for a single value.
    pub std: f64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct BenchmarkReport {
    pub rows: Vec<ReportRow>,
}

impl BenchmarkReport {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(REPORT_HEADER)?;
        for row in &self.rows {
            w.write_record(row.csv_record())?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)
            .expect("writing to memory cannot fail");
        String::from_utf8(buf).expect("csv output is utf-8")
    }

    pub fn save_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        self.write_csv(std::fs::File::create(path)?)
    }

    /// Mean and spread per car count of `p_opt`, `log10 c_total`, `l` and
    /// `m`. Rows with infinite cost are left out of the cost metric.
    pub fn aggregates(&self) -> Vec<AggregateRow> {
        let mut groups: BTreeMap<(usize, String), Vec<f64>> = BTreeMap::new();
        for row in &self.rows {
            let prefix = format!("{}/{}", row.decoder, row.mode);
            let mut push = |name: &str, v: f64| {
                groups
                    .entry((row.n_cars, format!("{prefix}/{name}")))
                    .or_default()
                    .push(v);
            };
            push("p_opt", row.p_opt);
            if row.c_total.is_finite() && row.c_total > 0.0 {
                push("log10_c_total", row.c_total.log10());
            }
            push("l", row.l as f64);
            push("m", row.m as f64);
        }
        groups
            .into_iter()
            .map(|((n_cars, metric), values)| {
                let (mean, std) = mean_std(&values);
                AggregateRow {
                    n_cars,
                    metric,
                    mean,
                    std,
                }
            })
            .collect()
    }

    pub fn write_aggregates_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(AGGREGATE_HEADER)?;
        for a in self.aggregates() {
            w.write_record([
                a.n_cars.to_string(),
                a.metric,
                fmt_f64(a.mean),
                fmt_f64(a.std),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn save_aggregates_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        self.write_aggregates_csv(std::fs::File::create(path)?)
    }
}

pub(crate) fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n;
    if values.len() == 1 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}
