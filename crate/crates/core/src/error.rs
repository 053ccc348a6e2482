// Copyright 2026 The flyqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised anywhere in the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error
{
    #[error("domain error: {0}")]
    Domain(String),

    #[error("zero wavenumber inside region (V/E = 1 exactly); transfer matrix is degenerate")]
    NumericalDegeneracy,

    #[error("energy scan range is empty")]
    EmptyScan,

    #[error("phase {target} is unreachable; achievable range is {range}")]
    UnreachableTarget { target: f64, range: String },

    #[error("coupler is not a 50/50 splitter (L_c/L_t = {ratio}); fidelity with H is {fidelity}")]
    NotAHadamard { ratio: f64, fidelity: f64 },

    #[error("matrix is not unitary (deviation {0:e})")]
    NotUnitary(f64),

    #[error("qubit count {0} out of range (1..={1})")]
    QubitCount(usize, usize),

    #[error("qubit index {index} out of range for {num_qubits} qubits")]
    QubitIndex { index: usize, num_qubits: usize },

    #[error("two-qubit gate on non-adjacent qubits {0} and {1}")]
    NonAdjacent(usize, usize),

    #[error("gate acts on {expected} qubits but {got} targets were given")]
    ArityMismatch { expected: usize, got: usize },

    #[error("repeated target qubit {0}")]
    RepeatedTarget(usize),

    #[error("instruction {position}: {source}")]
    Instruction { position: usize, source: Box<Error> },

    #[error("invalid Bell input label {0:?}; expected one of 00, 01, 10, 11")]
    InvalidLabel(String),

    #[error("no physical length assigned to gate kind {0}")]
    MissingLength(&'static str),

    #[error("dimension mismatch: {0} vs {1} qubits")]
    DimensionMismatch(usize, usize),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid wave packet: {0}")]
    InvalidPacket(String),

    #[error("wave packet reached the grid boundary at step {step} (edge probability {edge_prob:e})")]
    BoundaryReached { step: usize, edge_prob: f64 },
}

impl Error
{
    pub(crate) fn domain(msg: impl Into<String>) -> Self
    {
        Error::Domain(msg.into())
    }

    /// True for errors caused by malformed text input rather than by the
    /// meaning of a well-formed circuit.
    pub fn is_parse(&self) -> bool
    {
        matches!(self, Error::Parse { .. })
    }
}
