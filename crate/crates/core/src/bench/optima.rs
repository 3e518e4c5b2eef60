use rayon::prelude::*;
use serde::Serialize;

use crate::bits::Bits;
use crate::encoding::XorsatInstance;
use crate::error::{Error, Result};

/// Largest system solved by exhaustive enumeration.
pub const MAX_ENUMERATION_VARS: usize = 26;

const BLOCK: u64 = 1 << 14;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Optima {
    /// All maximizing assignments, in increasing binary order.
    pub assignments: Vec<Bits>,
    /// Their common number of satisfied constraints.
    pub s_opt: usize,
}

/// Every assignment maximizing the number of satisfied constraints.
pub fn enumerate_optima(x: &XorsatInstance) -> Result<Optima> {
    let n = x.n_vars();
    if n > MAX_ENUMERATION_VARS {
        return Err(Error::Capacity(format!(
            "exhaustive search over {n} variables exceeds the limit of {MAX_ENUMERATION_VARS}"
        )));
    }
    let rows: Vec<(u32, u32, u64)> = x
        .rows()
        .iter()
        .zip(x.targets())
        .map(|(&[a, b], &t)| (a as u32, b as u32, u64::from(t)))
        .collect();
    let score = |mask: u64| {
        rows.iter()
            .filter(|&&(a, b, t)| ((mask >> a) ^ (mask >> b)) & 1 == t)
            .count()
    };
    let total = 1u64 << n;
    let blocks = total.div_ceil(BLOCK);
    let per_block: Vec<(usize, Vec<u64>)> = (0..blocks)
        .into_par_iter()
        .map(|blk| {
            let mut best = 0;
            let mut hits = Vec::new();
            for mask in blk * BLOCK..((blk + 1) * BLOCK).min(total) {
                let s = score(mask);
                if s > best {
                    best = s;
                    hits.clear();
                }
                if s == best {
                    hits.push(mask);
                }
            }
            (best, hits)
        })
        .collect();
    let s_opt = per_block.iter().map(|(b, _)| *b).max().unwrap_or(0);
    let assignments = per_block
        .into_iter()
        .filter(|(b, _)| *b == s_opt)
        .flat_map(|(_, hits)| hits)
        .map(|mask| Bits::from_mask(n, mask))
        .collect();
    Ok(Optima { assignments, s_opt })
}
