use super::paths::PathList;
use super::{DecodeOutcome, Decoder};
use crate::bits::Bits;
use crate::encoding::{syndrome, XorsatInstance};
use crate::error::Result;

/// Greedy `T`-join: walk the ordered path list once and, whenever both
/// endpoints of a path are still in `T`, flip the path's edges in `y'` and
/// drop the endpoints from `T`.
pub fn greedy_decode(p: &PathList, x: &XorsatInstance, y: &Bits) -> Result<DecodeOutcome> {
    let mut t = syndrome(x, y)?;
    let mut residual = y.clone();
    let mut remaining = t.count_ones();
    for path in p.entries() {
        if remaining == 0 {
            break;
        }
        if t.get(path.u) && t.get(path.v) {
            for &e in &path.edges {
                residual.flip(e);
            }
            t.flip(path.u);
            t.flip(path.v);
            remaining -= 2;
        }
    }
    Ok(DecodeOutcome::from_residual(y, residual))
}

pub struct GreedyDecoder<'a> {
    paths: &'a PathList,
    instance: &'a XorsatInstance,
}

impl<'a> GreedyDecoder<'a> {
    pub fn new(paths: &'a PathList, instance: &'a XorsatInstance) -> Self {
        GreedyDecoder { paths, instance }
    }
}

impl Decoder for GreedyDecoder<'_> {
    fn name(&self) -> &'static str {
        "greedy"
    }

    fn m(&self) -> usize {
        self.instance.m()
    }

    fn decode(&self, y: &Bits) -> Result<DecodeOutcome> {
        greedy_decode(self.paths, self.instance, y)
    }
}
