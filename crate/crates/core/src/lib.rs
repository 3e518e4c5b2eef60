//! Classical benchmarking of Decoded Quantum Interferometry on the Binary
//! Paint Shop Problem.
//!
//! The pipeline encodes a car sequence as a max-2-XORSAT system
//! ([`encoding`]), builds the constraint graph and its ordered shortest-path
//! table ([`decoder`]), measures decoder failure rates per Hamming shell and
//! turns them into probabilities of measuring an optimum ([`dqi`]), and runs
//! whole experiments with CSV reports ([`bench`]).

pub mod bench;
pub mod bits;
pub mod decoder;
pub mod dqi;
pub mod encoding;
pub mod error;
pub mod instances;
pub mod rng;

pub use bits::Bits;
pub use error::{Error, Result};
