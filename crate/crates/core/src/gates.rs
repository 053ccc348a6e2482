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

//! Logical gate unitaries: the universal set `{H, P(φ), CP(φ)}`, the
//! composites built from it, and the device-derived variants.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use ndarray::array;

use crate::device::{coupler_unitary, CouplerSpec};
use crate::error::{Error, Result};
use crate::linalg::{cis, diag, identity, kron, unitarity_deviation, CMatrix, C64, ONE, ZERO};

/// Tolerance for accepting a matrix as unitary.
pub const UNITARITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance
{
    /// Exact textbook matrix.
    Ideal,
    /// Derived from physical device parameters.
    Device,
}

/// A one- or two-qubit gate.
#[derive(Debug, Clone, PartialEq)]
pub struct GateUnitary
{
    matrix: CMatrix,
    provenance: Provenance,
    /// Length of wire the gate occupies, in µm (0 for ideal gates).
    physical_length: f64,
}

impl GateUnitary
{
    /// Wraps a matrix, checking dimension and unitarity.
    pub fn new(matrix: CMatrix, provenance: Provenance, physical_length: f64) -> Result<Self>
    {
        let dim = matrix.nrows();
        if matrix.ncols() != dim || !(dim == 2 || dim == 4)
        {
            return Err(Error::domain(format!("gate matrix must be 2x2 or 4x4, got {:?}", matrix.dim())));
        }
        let dev = unitarity_deviation(&matrix);
        if !(dev <= UNITARITY_TOL)
        {
            return Err(Error::NotUnitary(dev));
        }
        if !(physical_length >= 0.0)
        {
            return Err(Error::domain(format!("physical length must be >= 0, got {physical_length}")));
        }
        Ok(GateUnitary { matrix, provenance, physical_length })
    }

    fn ideal(matrix: CMatrix) -> Self
    {
        debug_assert!(unitarity_deviation(&matrix) <= UNITARITY_TOL);
        GateUnitary { matrix, provenance: Provenance::Ideal, physical_length: 0.0 }
    }

    pub fn matrix(&self) -> &CMatrix
    {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix
    {
        self.matrix
    }

    /// Number of qubits acted on.
    pub fn arity(&self) -> usize
    {
        if self.matrix.nrows() == 2 { 1 } else { 2 }
    }

    pub fn provenance(&self) -> Provenance
    {
        self.provenance
    }

    pub fn physical_length(&self) -> f64
    {
        self.physical_length
    }

    /// Product `self · other` (apply `other` first).
    pub fn compose(&self, other: &GateUnitary) -> GateUnitary
    {
        assert_eq!(self.arity(), other.arity(), "cannot compose gates of different arity");
        let provenance = if self.provenance == Provenance::Device || other.provenance == Provenance::Device
        {
            Provenance::Device
        }
        else
        {
            Provenance::Ideal
        };
        GateUnitary {
            matrix: self.matrix.dot(&other.matrix),
            provenance,
            physical_length: self.physical_length + other.physical_length,
        }
    }
}

pub fn hadamard() -> GateUnitary
{
    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    GateUnitary::ideal(array![[h, h], [h, -h]])
}

/// `diag(1, e^{iφ})`
pub fn phase_gate(phi: f64) -> GateUnitary
{
    GateUnitary::ideal(diag(&[ONE, cis(phi)]))
}

/// `diag(1, 1, 1, e^{iφ})`
pub fn controlled_phase(phi: f64) -> GateUnitary
{
    GateUnitary::ideal(diag(&[ONE, ONE, ONE, cis(phi)]))
}

/// A Hadamard assembled from a 50/50 waveguide coupler plus the phase
/// shifters that turn the symmetric splitter `(1 i; i 1)/√2` into `H`.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplerHadamard
{
    pub gate: GateUnitary,
    /// Phase shifts applied before and after the coupler, in radians.
    pub input_phase: f64,
    pub output_phase: f64,
}

/// Relative tolerance on `L_c = L_t/2`.
pub const SPLITTER_RATIO_TOL: f64 = 1e-9;

/// `P(−π/2) · coupler · P(−π/2)`, which equals `H` for a 50/50 coupler.
pub fn hadamard_from_coupler(spec: &CouplerSpec) -> Result<CouplerHadamard>
{
    let ratio = spec.coupling_length / spec.transfer_length;
    let corr = phase_gate(-FRAC_PI_2);
    let bs = coupler_unitary(spec);
    let composite = corr.matrix().dot(&bs).dot(corr.matrix());
    if (ratio - 0.5).abs() > 0.5 * SPLITTER_RATIO_TOL
    {
        let overlap: C64 = hadamard().matrix().iter().zip(composite.iter()).map(|(h, u)| h.conj() * u).sum();
        return Err(Error::NotAHadamard { ratio, fidelity: overlap.norm() / 2.0 });
    }
    let gate = GateUnitary::new(composite, Provenance::Device, spec.coupling_length)?;
    Ok(CouplerHadamard { gate, input_phase: -FRAC_PI_2, output_phase: -FRAC_PI_2 })
}

/// Coulomb coupler between two adjacent electrons: `H = ħχ N_A N_B`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct CoulombCouplerSpec
{
    /// Coupling constant (inverse time).
    pub chi: f64,
    pub interaction_time: f64,
    /// µm
    pub physical_length: f64,
}

impl CoulombCouplerSpec
{
    pub fn new(chi: f64, interaction_time: f64, physical_length: f64) -> Result<Self>
    {
        if !(chi >= 0.0 && interaction_time >= 0.0 && physical_length >= 0.0)
        {
            return Err(Error::domain("Coulomb coupler parameters must be non-negative"));
        }
        Ok(CoulombCouplerSpec { chi, interaction_time, physical_length })
    }
}

/// Only `|11⟩` picks up a phase, `e^{−2iχt}`.
pub fn coulomb_phase(spec: &CoulombCouplerSpec) -> GateUnitary
{
    let mut gate = controlled_phase(-2.0 * spec.chi * spec.interaction_time);
    gate.provenance = Provenance::Device;
    gate.physical_length = spec.physical_length;
    gate
}

fn on_first(m: &CMatrix) -> CMatrix
{
    kron(m, &identity(2))
}

fn on_second(m: &CMatrix) -> CMatrix
{
    kron(&identity(2), m)
}

/// CNOT with qubit 0 (the more significant) as control:
/// `(I⊗H)·CP(π)·(I⊗H)`.
pub fn cnot() -> GateUnitary
{
    let ih = on_second(hadamard().matrix());
    GateUnitary::ideal(ih.dot(controlled_phase(PI).matrix()).dot(&ih))
}

/// CNOT with qubit 1 as control.
pub fn cnot_reversed() -> GateUnitary
{
    let hi = on_first(hadamard().matrix());
    GateUnitary::ideal(hi.dot(controlled_phase(PI).matrix()).dot(&hi))
}

/// Three alternating CNOTs.
pub fn swap() -> GateUnitary
{
    let c01 = cnot();
    let c10 = cnot_reversed();
    c01.compose(&c10).compose(&c01)
}

/// Pauli X as `H·P(π)·H`, the rail exchange of a dual-rail qubit.
pub fn not_gate() -> GateUnitary
{
    hadamard().compose(&phase_gate(PI)).compose(&hadamard())
}

/// Exchange permutation, built directly for comparison.
pub fn exchange_permutation() -> CMatrix
{
    array![[ONE, ZERO, ZERO, ZERO], [ZERO, ZERO, ONE, ZERO], [ZERO, ONE, ZERO, ZERO], [ZERO, ZERO, ZERO, ONE]]
}
