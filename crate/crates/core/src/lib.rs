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

//! Simulator for a quantum computer built from ballistic single electrons
//! travelling as flying qubits through pairs of 1D quantum wires.
//!
//! The crate is organized bottom-up:
//!
//! * [`device`] turns physical gate parameters (potential heights, region
//!   widths, coupler lengths) into phases, transmission amplitudes and
//!   resonance energies, with a transfer-matrix solver as independent check.
//! * [`gates`] builds the logical gate unitaries `{H, P(φ), CP(φ)}` and the
//!   composites CNOT and SWAP.
//! * [`simulator`] runs dual-rail circuits on a state vector and samples
//!   measurement outcomes.
//! * [`compiler`] lowers arbitrary circuits to the native gate set on a
//!   linear wire array.
//! * [`wavepacket`] propagates Gaussian packets through gate potentials to
//!   check the plane-wave phase formulas.

// Domain guards are written `!(x >= 0.0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod circuit;
pub mod compiler;
pub mod device;
pub mod error;
pub mod gates;
pub mod linalg;
pub mod simulator;
pub mod units;
pub mod wavepacket;

pub use error::{Error, Result};
pub use circuit::{Circuit, Instruction};
pub use gates::{GateUnitary, Provenance};
pub use simulator::StateVector;
