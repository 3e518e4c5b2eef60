//! Syndrome decoding on the constraint graph.
//!
//! Every row of a max-2-XORSAT system touches two variables, so an error
//! vector is an edge set of the constraint graph and its syndrome is the set
//! `T` of odd-degree vertices. Decoding means finding a `T`-join. Two
//! decoders are provided: a greedy scan over a precomputed ordered path list
//! and an exact minimum-weight matching of `T`. The greedy scan is also
//! compiled into a reversible CX/CCX circuit in [`circuit`].

mod circuit;
mod graph;
mod greedy;
mod min_length;
mod paths;

pub use circuit::{
    emit_circuit, gate_cost, simulate_circuit, CircuitState, Gate, GateCost, GateList, Wire,
};
pub use graph::{build_graph, ConstraintGraph};
pub use greedy::{greedy_decode, GreedyDecoder};
pub use min_length::{min_length_decode, MinLengthDecoder, DEFAULT_T_CAP};
pub use paths::{build_path_list, PathEntry, PathList, UNREACHABLE};

use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::encoding::XorsatInstance;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeOutcome {
    /// `y'`, what is left in the error register.
    pub residual: Bits,
    /// `y ^ y'`, the edge set the decoder produced.
    pub decoded_error: Bits,
    /// The residual is exactly zero.
    pub success: bool,
}

impl DecodeOutcome {
    pub(crate) fn from_residual(y: &Bits, residual: Bits) -> Self {
        DecodeOutcome {
            decoded_error: y.xor(&residual),
            success: residual.is_zero(),
            residual,
        }
    }
}

/// A syndrome decoder for one fixed instance.
pub trait Decoder: Sync {
    fn name(&self) -> &'static str;

    /// Number of constraints, i.e. the error length.
    fn m(&self) -> usize;

    fn decode(&self, y: &Bits) -> Result<DecodeOutcome>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecoderKind {
    Greedy,
    MinLength,
}

impl DecoderKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DecoderKind::Greedy => "greedy",
            DecoderKind::MinLength => "min-length",
        }
    }
}

impl std::fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Graph and path list of an instance, shared by both decoders and the
/// circuit emitter.
#[derive(Clone, Debug)]
pub struct DecodingContext {
    pub instance: XorsatInstance,
    pub graph: ConstraintGraph,
    pub paths: PathList,
}

impl DecodingContext {
    pub fn new(instance: XorsatInstance) -> Result<Self> {
        let graph = build_graph(&instance)?;
        let paths = build_path_list(&graph);
        Ok(DecodingContext {
            instance,
            graph,
            paths,
        })
    }

    pub fn decoder(&self, kind: DecoderKind) -> Box<dyn Decoder + '_> {
        match kind {
            DecoderKind::Greedy => Box::new(GreedyDecoder::new(&self.paths, &self.instance)),
            DecoderKind::MinLength => Box::new(MinLengthDecoder::new(
                &self.paths,
                &self.instance,
                DEFAULT_T_CAP,
            )),
        }
    }
}
