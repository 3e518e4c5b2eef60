//! Max-2-XORSAT encodings of paint shop instances.
//!
//! Two encodings are provided. The position encoding ([`Encoding::NonIcc`])
//! has one variable per sequence position, `2N-1` adjacency constraints with
//! target 0 and one target-1 constraint per car. The initial-car-color
//! encoding ([`Encoding::Icc`]) has one variable per car holding the color of
//! its first occurrence and `2N-1` adjacency constraints whose targets absorb
//! the forced color flip of second occurrences.
//!
//! Variables and rows are 0-based in memory; the JSON file format is 1-based.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bits::{Bits, Combinations};
use crate::error::{Error, Result};
use crate::instances::{BpspInstance, Coloring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Encoding {
    /// One variable per car (initial car color).
    Icc,
    /// One variable per sequence position.
    NonIcc,
}

impl Encoding {
    pub fn as_str(self) -> &'static str {
        match self {
            Encoding::Icc => "icc",
            Encoding::NonIcc => "non-icc",
        }
    }
}

/// A max-XORSAT system in which every constraint involves two variables.
///
/// A row `[a, a]` stands for `x_a + x_a = v`, whose left side is always 0.
/// The ICC encoding produces one for every car painted twice in a row; the
/// reduction removes all of them, and the decoders reject them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XorsatInstance {
    n_vars: usize,
    rows: Vec<[usize; 2]>,
    targets: Vec<bool>,
    /// Car id (ICC) or 1-based position (non-ICC) per variable.
    labels: Vec<u32>,
    /// Index of each row in the unreduced encoding.
    origins: Vec<usize>,
    encoding: Option<Encoding>,
    degenerate: bool,
}

impl XorsatInstance {
    /// A generic system with labels `1..=n_vars`.
    pub fn new(n_vars: usize, rows: Vec<[usize; 2]>, targets: Vec<bool>) -> Result<Self> {
        let labels = (1..=n_vars as u32).collect();
        Self::from_parts(n_vars, rows, targets, labels, None)
    }

    fn from_parts(
        n_vars: usize,
        rows: Vec<[usize; 2]>,
        targets: Vec<bool>,
        labels: Vec<u32>,
        encoding: Option<Encoding>,
    ) -> Result<Self> {
        if rows.len() != targets.len() {
            return Err(Error::Validation(format!(
                "{} rows but {} targets",
                rows.len(),
                targets.len()
            )));
        }
        if labels.len() != n_vars {
            return Err(Error::Validation(format!(
                "{} labels for {n_vars} variables",
                labels.len()
            )));
        }
        for (j, &[a, b]) in rows.iter().enumerate() {
            if a >= n_vars || b >= n_vars {
                return Err(Error::Validation(format!(
                    "row {} references a variable outside 1..={n_vars}",
                    j + 1
                )));
            }
        }
        let origins = (0..rows.len()).collect();
        Ok(XorsatInstance {
            n_vars,
            rows,
            targets,
            labels,
            origins,
            encoding,
            degenerate: false,
        })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// Number of constraints.
    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[[usize; 2]] {
        &self.rows
    }

    pub fn targets(&self) -> &[bool] {
        &self.targets
    }

    pub fn target_bits(&self) -> Bits {
        self.targets.iter().copied().collect()
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn origins(&self) -> &[usize] {
        &self.origins
    }

    pub fn encoding(&self) -> Option<Encoding> {
        self.encoding
    }

    /// Set for the single-car ICC encoding, whose only constraint would be a
    /// self-loop and is therefore left out.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// Row `j` as a bit vector over the variables.
    pub fn row_bits(&self, j: usize) -> Bits {
        let [a, b] = self.rows[j];
        if a == b {
            return Bits::zeros(self.n_vars);
        }
        Bits::from_support(self.n_vars, &[a, b])
    }

    pub fn to_json_value(&self) -> Value {
        let labels: serde_json::Map<String, Value> = self
            .labels
            .iter()
            .enumerate()
            .map(|(i, &l)| ((i + 1).to_string(), json!(l)))
            .collect();
        let mut v = json!({
            "n_vars": self.n_vars,
            "rows": self.rows.iter().map(|&[a, b]| [a + 1, b + 1]).collect::<Vec<_>>(),
            "targets": self.targets.iter().map(|&t| u8::from(t)).collect::<Vec<_>>(),
            "labels": labels,
        });
        if let Some(e) = self.encoding {
            v["encoding"] = json!(e.as_str());
        }
        v
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("xorsat serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| Error::parse("<document>", e.to_string()))?;
        let obj = value
            .as_object()
            .ok_or_else(|| Error::parse("<document>", "expected a JSON object"))?;
        let n_vars = obj
            .get("n_vars")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::parse("n_vars", "missing or not a nonnegative integer"))?
            as usize;
        let rows = obj
            .get("rows")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::parse("rows", "missing or not an array"))?
            .iter()
            .enumerate()
            .map(|(j, r)| {
                let pair = r.as_array().filter(|p| p.len() == 2).ok_or_else(|| {
                    Error::parse(format!("rows[{j}]"), "expected a pair of variable indices")
                })?;
                let mut out = [0usize; 2];
                for (slot, v) in out.iter_mut().zip(pair) {
                    *slot = v.as_u64().filter(|&i| i >= 1).ok_or_else(|| {
                        Error::parse(
                            format!("rows[{j}]"),
                            "variable indices are 1-based integers",
                        )
                    })? as usize
                        - 1;
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        let targets = obj
            .get("targets")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::parse("targets", "missing or not an array"))?
            .iter()
            .enumerate()
            .map(|(j, t)| match t.as_u64() {
                Some(0) => Ok(false),
                Some(1) => Ok(true),
                _ => Err(Error::parse(format!("targets[{j}]"), "expected 0 or 1")),
            })
            .collect::<Result<Vec<_>>>()?;
        let mut labels: Vec<u32> = (1..=n_vars as u32).collect();
        if let Some(l) = obj.get("labels") {
            let map = l
                .as_object()
                .ok_or_else(|| Error::parse("labels", "expected an object"))?;
            for (k, v) in map {
                let idx: usize = k
                    .parse()
                    .ok()
                    .filter(|&i| i >= 1 && i <= n_vars)
                    .ok_or_else(|| Error::parse("labels", format!("bad variable key `{k}`")))?;
                labels[idx - 1] = v
                    .as_u64()
                    .and_then(|x| u32::try_from(x).ok())
                    .ok_or_else(|| Error::parse(format!("labels.{k}"), "expected an integer"))?;
            }
        }
        let encoding = match obj.get("encoding") {
            None => None,
            Some(Value::String(s)) if s == "icc" => Some(Encoding::Icc),
            Some(Value::String(s)) if s == "non-icc" => Some(Encoding::NonIcc),
            Some(_) => return Err(Error::parse("encoding", "expected \"icc\" or \"non-icc\"")),
        };
        Self::from_parts(n_vars, rows, targets, labels, encoding)
    }
}

pub fn read_xorsat(path: impl AsRef<Path>) -> Result<XorsatInstance> {
    XorsatInstance::from_json(&fs::read_to_string(path)?)
}

pub fn write_xorsat(x: &XorsatInstance, path: impl AsRef<Path>) -> Result<()> {
    let mut text = x.to_json();
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

/// Position encoding with `3N-1` constraints: adjacency rows first (by
/// position), then one target-1 row per car (by car id).
pub fn encode_non_icc(inst: &BpspInstance) -> XorsatInstance {
    let len = inst.len();
    let mut rows: Vec<[usize; 2]> = (0..len - 1).map(|j| [j, j + 1]).collect();
    let mut targets = vec![false; len - 1];
    for (p, q) in inst.occurrences() {
        rows.push([p, q]);
        targets.push(true);
    }
    let labels = (1..=len as u32).collect();
    XorsatInstance::from_parts(len, rows, targets, labels, Some(Encoding::NonIcc))
        .expect("position encoding is well formed")
}

/// Initial-car-color encoding with `2N-1` constraints over `N` variables.
///
/// Row `j` links the cars at positions `j` and `j+1`; its target is the XOR
/// of the two positions' "already seen" flags. For a single car the only row
/// would be a self-loop, so the result is empty and flagged degenerate.
pub fn encode_icc(inst: &BpspInstance) -> XorsatInstance {
    let n = inst.n_cars();
    let labels: Vec<u32> = (1..=n as u32).collect();
    if n == 1 {
        let mut x = XorsatInstance::from_parts(1, vec![], vec![], labels, Some(Encoding::Icc))
            .expect("empty system is well formed");
        x.degenerate = true;
        return x;
    }
    let seen = inst.repeat_flags();
    let seq = inst.sequence();
    let (rows, targets) = (0..inst.len() - 1)
        .map(|j| {
            (
                [seq[j] as usize - 1, seq[j + 1] as usize - 1],
                seen[j] ^ seen[j + 1],
            )
        })
        .unzip();
    XorsatInstance::from_parts(n, rows, targets, labels, Some(Encoding::Icc))
        .expect("rows reference cars 1..=N")
}

/// Bookkeeping of constraint and variable elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionRecord {
    pub encoding: Encoding,
    /// Original (unreduced) row indices that were removed.
    pub removed_constraints: BTreeSet<usize>,
    /// Original variable indices that no longer occur in any row.
    pub removed_variables: BTreeSet<usize>,
    /// One per applied elimination event.
    pub forced_swaps: usize,
    /// Original variable index to reduced index.
    pub var_map: Vec<Option<usize>>,
    pub reduced_n_vars: usize,
}

/// Removes adjacency constraints whose swap count is fixed by the sequence.
///
/// Scanning `j` upward: a car repeated at `j, j+1` removes row `j`; a car
/// repeated at `j, j+2` removes rows `j` and `j+1`. Each applied event
/// contributes one forced swap. An event that would touch an already removed
/// row is not applied and its rows stay. Variables left without rows are
/// dropped and the rest re-indexed in ascending order.
pub fn reduce(
    x: &XorsatInstance,
    inst: &BpspInstance,
) -> Result<(XorsatInstance, ReductionRecord)> {
    let encoding = x.encoding.ok_or_else(|| {
        Error::InvalidArgument(
            "reduce needs a system produced by encode_icc or encode_non_icc".into(),
        )
    })?;
    let expected_vars = match encoding {
        Encoding::Icc => inst.n_cars(),
        Encoding::NonIcc => inst.len(),
    };
    let unreduced = x.origins.iter().enumerate().all(|(i, &o)| i == o);
    if x.n_vars != expected_vars || !unreduced {
        return Err(Error::InvalidArgument(
            "system does not match an unreduced encoding of this instance".into(),
        ));
    }

    let seq = inst.sequence();
    let len = seq.len();
    let mut removed = BTreeSet::new();
    let mut forced_swaps = 0;
    for j in 0..len - 1 {
        if seq[j] == seq[j + 1] && !removed.contains(&j) {
            removed.insert(j);
            forced_swaps += 1;
        }
        if j + 2 < len
            && seq[j] == seq[j + 2]
            && !removed.contains(&j)
            && !removed.contains(&(j + 1))
        {
            removed.insert(j);
            removed.insert(j + 1);
            forced_swaps += 1;
        }
    }

    let kept: Vec<usize> = (0..x.m())
        .filter(|&j| !removed.contains(&x.origins[j]))
        .collect();
    let mut used = vec![false; x.n_vars];
    for &j in &kept {
        let [a, b] = x.rows[j];
        used[a] = true;
        used[b] = true;
    }
    let mut var_map = vec![None; x.n_vars];
    let mut next = 0;
    for (v, slot) in var_map.iter_mut().enumerate() {
        if used[v] {
            *slot = Some(next);
            next += 1;
        }
    }
    let removed_variables = (0..x.n_vars).filter(|&v| !used[v]).collect();
    let rows = kept
        .iter()
        .map(|&j| {
            let [a, b] = x.rows[j];
            [var_map[a].unwrap(), var_map[b].unwrap()]
        })
        .collect();
    let targets = kept.iter().map(|&j| x.targets[j]).collect();
    let labels = (0..x.n_vars)
        .filter(|&v| used[v])
        .map(|v| x.labels[v])
        .collect();
    let mut reduced = XorsatInstance::from_parts(next, rows, targets, labels, Some(encoding))?;
    reduced.origins = kept.iter().map(|&j| x.origins[j]).collect();

    let record = ReductionRecord {
        encoding,
        removed_constraints: removed,
        removed_variables,
        forced_swaps,
        var_map,
        reduced_n_vars: next,
    };
    Ok((reduced, record))
}

/// Maps a reduced assignment back to a coloring of the whole sequence.
///
/// Dropped variables are set to 0. In the ICC encoding every assignment
/// yields a feasible coloring with `violations + forced_swaps` swaps. In the
/// position encoding the assignment is the coloring itself; it is feasible
/// exactly when all car-pair rows are satisfied, and the swap identity holds
/// for those assignments.
pub fn lift_solution(
    reduced_x: &Bits,
    rec: &ReductionRecord,
    inst: &BpspInstance,
) -> Result<Coloring> {
    if reduced_x.len() != rec.reduced_n_vars {
        return Err(Error::InvalidArgument(format!(
            "assignment has {} bits, reduced system has {} variables",
            reduced_x.len(),
            rec.reduced_n_vars
        )));
    }
    let full: Vec<bool> = rec
        .var_map
        .iter()
        .map(|m| m.is_some_and(|r| reduced_x.get(r)))
        .collect();
    let bits = match rec.encoding {
        Encoding::Icc => {
            if full.len() != inst.n_cars() {
                return Err(Error::InvalidArgument(
                    "record does not belong to this instance".into(),
                ));
            }
            let seen = inst.repeat_flags();
            inst.sequence()
                .iter()
                .zip(seen)
                .map(|(&car, rep)| full[car as usize - 1] ^ rep)
                .collect()
        }
        Encoding::NonIcc => {
            if full.len() != inst.len() {
                return Err(Error::InvalidArgument(
                    "record does not belong to this instance".into(),
                ));
            }
            full.into_iter().collect()
        }
    };
    Ok(Coloring::new(bits))
}

/// `B^T y`: component `k` is the parity of the selected rows touching variable `k`.
pub fn syndrome(x: &XorsatInstance, y: &Bits) -> Result<Bits> {
    if y.len() != x.m() {
        return Err(Error::InvalidArgument(format!(
            "error vector has length {}, expected m = {}",
            y.len(),
            x.m()
        )));
    }
    let mut s = Bits::zeros(x.n_vars);
    for j in y.ones() {
        let [a, b] = x.rows[j];
        s.flip(a);
        s.flip(b);
    }
    Ok(s)
}

/// Number of rows with `assign[a] ^ assign[b] == target`.
pub fn satisfied_count(x: &XorsatInstance, assign: &Bits) -> Result<usize> {
    if assign.len() != x.n_vars {
        return Err(Error::InvalidArgument(format!(
            "assignment has length {}, expected n = {}",
            assign.len(),
            x.n_vars
        )));
    }
    Ok(x.rows
        .iter()
        .zip(&x.targets)
        .filter(|(&[a, b], &t)| (assign.get(a) ^ assign.get(b)) == t)
        .count())
}

pub const DEFAULT_DISTANCE_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CodeDistance {
    Exact(usize),
    /// No nonzero codeword of weight at most the cap exists.
    ExceedsCap(usize),
}

impl CodeDistance {
    pub fn value(self) -> Option<usize> {
        match self {
            CodeDistance::Exact(d) => Some(d),
            CodeDistance::ExceedsCap(_) => None,
        }
    }
}

impl std::fmt::Display for CodeDistance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CodeDistance::Exact(d) => write!(f, "{d}"),
            CodeDistance::ExceedsCap(c) => write!(f, ">{c}"),
        }
    }
}

/// Minimum weight of a nonzero `y` with `B^T y = 0`.
///
/// With two variables per row a codeword is an edge set in which every
/// vertex has even degree, and the lightest nonzero one is a shortest cycle
/// of the constraint multigraph (parallel rows form a 2-cycle). The girth is
/// found by a breadth-first search from every vertex.
pub fn code_distance(x: &XorsatInstance, cap: usize) -> CodeDistance {
    // a zero row is a codeword on its own
    if x.rows.iter().any(|&[a, b]| a == b) {
        return if cap >= 1 {
            CodeDistance::Exact(1)
        } else {
            CodeDistance::ExceedsCap(cap)
        };
    }
    let mut adj = vec![Vec::new(); x.n_vars];
    for (e, &[a, b]) in x.rows.iter().enumerate() {
        adj[a].push((b, e));
        adj[b].push((a, e));
    }
    let mut girth = usize::MAX;
    let mut dist = vec![usize::MAX; x.n_vars];
    let mut parent_edge = vec![usize::MAX; x.n_vars];
    let mut queue = VecDeque::new();
    for root in 0..x.n_vars {
        dist.fill(usize::MAX);
        dist[root] = 0;
        parent_edge[root] = usize::MAX;
        queue.clear();
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            // nothing shorter can be closed from here on
            if 2 * dist[u] >= girth {
                break;
            }
            for &(w, e) in &adj[u] {
                if e == parent_edge[u] {
                    continue;
                }
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent_edge[w] = e;
                    queue.push_back(w);
                } else {
                    girth = girth.min(dist[u] + dist[w] + 1);
                }
            }
        }
    }
    if girth <= cap {
        CodeDistance::Exact(girth)
    } else {
        CodeDistance::ExceedsCap(cap)
    }
}

/// Code distance by enumerating error vectors of increasing weight.
///
/// Exponential in the cap; meant for small systems and cross-checks.
pub fn code_distance_exhaustive(x: &XorsatInstance, cap: usize) -> CodeDistance {
    let m = x.m();
    let cols: Vec<Bits> = (0..m).map(|j| x.row_bits(j)).collect();
    for w in 1..=cap.min(m) {
        for combo in Combinations::new(m, w) {
            let mut s = Bits::zeros(x.n_vars);
            for &j in &combo {
                s.xor_assign(&cols[j]);
            }
            if s.is_zero() {
                return CodeDistance::Exact(w);
            }
        }
    }
    CodeDistance::ExceedsCap(cap)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceBound {
    pub value: usize,
    /// `value` is only a lower bound on the distance.
    pub lower_bound: bool,
}

/// Distance of the position encoding.
///
/// Before elimination it is `min(k + 1)` over the gaps `k` between the two
/// occurrences of a car. After elimination every remaining repeat has gap at
/// least 3, giving the bound `d >= 4`.
pub fn non_icc_distance_bound(inst: &BpspInstance, after_elimination: bool) -> DistanceBound {
    if after_elimination {
        return DistanceBound {
            value: 4,
            lower_bound: true,
        };
    }
    let min_gap = inst
        .occurrences()
        .iter()
        .map(|&(p, q)| q - p)
        .min()
        .expect("instances have at least one car");
    DistanceBound {
        value: min_gap + 1,
        lower_bound: false,
    }
}

/// Human-readable listing of the rows, e.g. `x1 + x3 = 1`, using labels.
pub fn describe_rows(x: &XorsatInstance) -> Vec<String> {
    x.rows
        .iter()
        .zip(&x.targets)
        .map(|(&[a, b], &t)| format!("x{} + x{} = {}", x.labels[a], x.labels[b], u8::from(t)))
        .collect()
}

/// Per-variable label map as used in the JSON format.
pub fn label_map(x: &XorsatInstance) -> BTreeMap<usize, u32> {
    x.labels
        .iter()
        .enumerate()
        .map(|(i, &l)| (i + 1, l))
        .collect()
}
