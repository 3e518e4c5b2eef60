//! Binary paint shop instances: generation, validation, scoring and files.
//!
//! Car identifiers are dense and 1-based (`1..=n_cars`). Positions inside the
//! sequence are 0-based in the API; files store only the car identifiers.

use std::fs;
use std::path::Path;

use rand::Rng;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::rng::rng_from_seed;

pub type CarId = u32;

/// A car sequence of length `2N` in which each of the `N` cars occurs twice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BpspInstance {
    n_cars: usize,
    sequence: Vec<CarId>,
}

impl BpspInstance {
    pub fn new(n_cars: usize, sequence: Vec<CarId>) -> Result<Self> {
        if n_cars == 0 {
            return Err(Error::Validation("n_cars must be positive".into()));
        }
        if sequence.len() != 2 * n_cars {
            return Err(Error::Validation(format!(
                "sequence has length {} but n_cars={} requires length {}",
                sequence.len(),
                n_cars,
                2 * n_cars
            )));
        }
        let mut counts = vec![0usize; n_cars + 1];
        for (pos, &car) in sequence.iter().enumerate() {
            if car == 0 || car as usize > n_cars {
                return Err(Error::Validation(format!(
                    "car id {car} at position {} is outside 1..={n_cars}",
                    pos + 1
                )));
            }
            counts[car as usize] += 1;
        }
        if let Some((car, &c)) = counts.iter().enumerate().skip(1).find(|(_, &c)| c != 2) {
            return Err(Error::Validation(format!(
                "car {car} appears {c} times, expected exactly twice"
            )));
        }
        Ok(BpspInstance { n_cars, sequence })
    }

    pub fn n_cars(&self) -> usize {
        self.n_cars
    }

    pub fn sequence(&self) -> &[CarId] {
        &self.sequence
    }

    /// Length of the sequence, `2N`.
    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn car_at(&self, pos: usize) -> CarId {
        self.sequence[pos]
    }

    /// Whether `pos` holds the second occurrence of its car.
    pub fn is_repeat(&self, pos: usize) -> bool {
        let car = self.sequence[pos];
        self.sequence[..pos].contains(&car)
    }

    /// Flags, per position, whether the car has already been seen.
    pub fn repeat_flags(&self) -> Vec<bool> {
        let mut seen = vec![false; self.n_cars + 1];
        self.sequence
            .iter()
            .map(|&c| std::mem::replace(&mut seen[c as usize], true))
            .collect()
    }

    /// The two positions of each car, indexed by `car - 1`.
    pub fn occurrences(&self) -> Vec<(usize, usize)> {
        let mut first = vec![usize::MAX; self.n_cars];
        let mut out = vec![(0, 0); self.n_cars];
        for (pos, &car) in self.sequence.iter().enumerate() {
            let c = car as usize - 1;
            if first[c] == usize::MAX {
                first[c] = pos;
            } else {
                out[c] = (first[c], pos);
            }
        }
        out
    }

    /// Canonical JSON text, `{"n_cars":N,"sequence":[...]}` without whitespace.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instance serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| Error::parse("<document>", e.to_string()))?;
        let obj = value
            .as_object()
            .ok_or_else(|| Error::parse("<document>", "expected a JSON object"))?;
        let n_cars = obj
            .get("n_cars")
            .ok_or_else(|| Error::parse("n_cars", "missing"))?
            .as_u64()
            .ok_or_else(|| Error::parse("n_cars", "expected a nonnegative integer"))?;
        let seq = obj
            .get("sequence")
            .ok_or_else(|| Error::parse("sequence", "missing"))?
            .as_array()
            .ok_or_else(|| Error::parse("sequence", "expected an array"))?;
        let sequence = seq
            .iter()
            .enumerate()
            .map(|(i, v)| {
                v.as_u64()
                    .and_then(|c| CarId::try_from(c).ok())
                    .ok_or_else(|| {
                        Error::parse(format!("sequence[{i}]"), "expected a car id integer")
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        BpspInstance::new(n_cars as usize, sequence)
    }

    /// Hex SHA-256 of the canonical JSON.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_json().as_bytes()))
    }
}

/// Uniformly shuffles the multiset `{1,1,2,2,...,N,N}`.
///
/// Uses a Fisher–Yates pass driven by ChaCha8 seeded directly with `seed`.
pub fn generate_instance(n_cars: usize, seed: u64) -> Result<BpspInstance> {
    if n_cars == 0 {
        return Err(Error::InvalidArgument("n_cars must be at least 1".into()));
    }
    let mut seq: Vec<CarId> = (1..=n_cars as CarId).flat_map(|c| [c, c]).collect();
    let mut rng = rng_from_seed(seed);
    for i in (1..seq.len()).rev() {
        let j = rng.random_range(0..=i);
        seq.swap(i, j);
    }
    BpspInstance::new(n_cars, seq)
}

/// A color bit per sequence position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub bits: Bits,
}

impl Coloring {
    pub fn new(bits: Bits) -> Self {
        Coloring { bits }
    }

    pub fn from_u8s(bits: &[u8]) -> Self {
        Coloring {
            bits: Bits::from_u8s(bits),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PaintScore {
    pub swaps: usize,
    /// Both occurrences of every car received opposite colors.
    pub feasible: bool,
}

/// Counts color changes between neighbours and checks the hard constraints.
pub fn paint_swaps(inst: &BpspInstance, col: &Coloring) -> Result<PaintScore> {
    if col.bits.len() != inst.len() {
        return Err(Error::InvalidArgument(format!(
            "coloring has length {} but the instance has {} positions",
            col.bits.len(),
            inst.len()
        )));
    }
    let b = &col.bits;
    let swaps = (0..inst.len().saturating_sub(1))
        .filter(|&j| b.get(j) != b.get(j + 1))
        .count();
    let feasible = inst
        .occurrences()
        .iter()
        .all(|&(p, q)| b.get(p) != b.get(q));
    Ok(PaintScore { swaps, feasible })
}

pub fn read_instance(path: impl AsRef<Path>) -> Result<BpspInstance> {
    let text = fs::read_to_string(path)?;
    BpspInstance::from_json(&text)
}

pub fn write_instance(inst: &BpspInstance, path: impl AsRef<Path>) -> Result<()> {
    let mut text = inst.to_json();
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}
