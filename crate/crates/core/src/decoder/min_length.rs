use super::paths::PathList;
use super::{DecodeOutcome, Decoder};
use crate::bits::Bits;
use crate::encoding::{syndrome, XorsatInstance};
use crate::error::{Error, Result};

/// Largest syndrome set handled by the subset dynamic program.
pub const DEFAULT_T_CAP: usize = 22;

const INF: u32 = u32::MAX;

/// Minimum-weight perfect matching of the vertices in `t` under graph
/// distance, as `(i, j)` index pairs into `t`.
///
/// `best[mask]` is the lightest perfect matching of the subset `mask`,
/// obtained by pairing its lowest member with each other member in turn.
/// Reconstruction takes the smallest partner achieving the optimum, which
/// gives the lexicographically smallest pair list among optimal matchings.
fn min_weight_matching(t: &[usize], p: &PathList) -> Option<Vec<(usize, usize)>> {
    let k = t.len();
    let w = |i: usize, j: usize| p.distance(t[i], t[j]).unwrap_or(INF);
    let full = (1usize << k) - 1;
    let mut best = vec![INF; 1 << k];
    best[0] = 0;
    for mask in 1..=full {
        if mask.count_ones() % 2 == 1 {
            continue;
        }
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let mut bits = rest;
        let mut b = INF;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let (wij, sub) = (w(i, j), best[rest & !(1 << j)]);
            if wij != INF && sub != INF {
                b = b.min(wij + sub);
            }
        }
        best[mask] = b;
    }
    if best[full] == INF {
        return None;
    }
    let mut pairs = Vec::with_capacity(k / 2);
    let mut mask = full;
    while mask != 0 {
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let j = (0..k)
            .filter(|&j| rest >> j & 1 == 1)
            .find(|&j| {
                let (wij, sub) = (w(i, j), best[rest & !(1 << j)]);
                wij != INF && sub != INF && wij + sub == best[mask]
            })
            .expect("an optimal partner exists");
        pairs.push((i, j));
        mask = rest & !(1 << j);
    }
    Some(pairs)
}

/// Exact minimum-length decoding: match the syndrome vertices with minimum
/// total distance and XOR the matched shortest paths together.
///
/// Fails with a capacity error when `|T| > t_cap`.
pub fn min_length_decode(
    p: &PathList,
    x: &XorsatInstance,
    y: &Bits,
    t_cap: usize,
) -> Result<DecodeOutcome> {
    let t: Vec<usize> = syndrome(x, y)?.ones().collect();
    if t.len() > t_cap {
        return Err(Error::Capacity(format!(
            "syndrome has {} vertices, matching cap is {t_cap}",
            t.len()
        )));
    }
    let pairs = min_weight_matching(&t, p).ok_or_else(|| {
        Error::InvalidArgument("syndrome vertices cannot be paired within components".into())
    })?;
    let mut decoded = Bits::zeros(x.m());
    for (i, j) in pairs {
        let path = p.path(t[i], t[j]).expect("matched pairs are connected");
        for &e in &path.edges {
            decoded.flip(e);
        }
    }
    let residual = y.xor(&decoded);
    Ok(DecodeOutcome::from_residual(y, residual))
}

pub struct MinLengthDecoder<'a> {
    paths: &'a PathList,
    instance: &'a XorsatInstance,
    t_cap: usize,
}

impl<'a> MinLengthDecoder<'a> {
    pub fn new(paths: &'a PathList, instance: &'a XorsatInstance, t_cap: usize) -> Self {
        MinLengthDecoder {
            paths,
            instance,
            t_cap,
        }
    }
}

impl Decoder for MinLengthDecoder<'_> {
    fn name(&self) -> &'static str {
        "min-length"
    }

    fn m(&self) -> usize {
        self.instance.m()
    }

    fn decode(&self, y: &Bits) -> Result<DecodeOutcome> {
        min_length_decode(self.paths, self.instance, y, self.t_cap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoder::tests::ex1_reduced;
    use crate::decoder::{greedy_decode, DecodingContext};
    use crate::encoding::XorsatInstance;

    #[test]
    fn zero_and_parallel_edge() {
        let ctx = DecodingContext::new(ex1_reduced()).unwrap();
        let out = min_length_decode(&ctx.paths, &ctx.instance, &Bits::zeros(5), 22).unwrap();
        assert!(out.success);
        let out = min_length_decode(
            &ctx.paths,
            &ctx.instance,
            &Bits::from_u8s(&[0, 0, 0, 0, 1]),
            22,
        )
        .unwrap();
        assert!(!out.success);
        assert_eq!(out.decoded_error.to_u8s(), vec![0, 1, 0, 0, 0]);
    }

    #[test]
    fn matching_succeeds_where_greedy_fails() {
        // a=0 and b=1 adjacent, c=2 hangs off a, d=3 off b, and c-4-d closes
        // a 5-cycle. y = {a-c, b-d}: greedy pairs (a,b) first, then joins c
        // and d through vertex 4.
        let x = XorsatInstance::new(
            5,
            vec![[0, 1], [0, 2], [1, 3], [2, 4], [4, 3]],
            vec![false; 5],
        )
        .unwrap();
        let ctx = DecodingContext::new(x).unwrap();
        let y = Bits::from_support(5, &[1, 2]);
        let g = greedy_decode(&ctx.paths, &ctx.instance, &y).unwrap();
        assert!(!g.success);
        assert_eq!(g.decoded_error.ones().collect::<Vec<_>>(), vec![0, 3, 4]);
        let ml = min_length_decode(&ctx.paths, &ctx.instance, &y, 22).unwrap();
        assert!(ml.success);
    }

    #[test]
    fn capacity_error() {
        let ctx = DecodingContext::new(ex1_reduced()).unwrap();
        let y = Bits::from_u8s(&[1, 0, 0, 0, 0]);
        assert!(matches!(
            min_length_decode(&ctx.paths, &ctx.instance, &y, 1),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn matching_prefers_smallest_partner_on_ties() {
        // 4-cycle: T = all four vertices, matchings {01,23} and {03,12}
        // both weigh 2; the first is lexicographically smaller.
        let x =
            XorsatInstance::new(4, vec![[0, 1], [1, 2], [2, 3], [3, 0]], vec![false; 4]).unwrap();
        let ctx = DecodingContext::new(x).unwrap();
        let pairs = min_weight_matching(&[0, 1, 2, 3], &ctx.paths).unwrap();
        assert_eq!(pairs, vec![(0, 1), (2, 3)]);
    }
}
