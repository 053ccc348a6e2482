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

//! Gate physics: closed-form phase shifts of potential steps and wells,
//! the transfer-matrix scattering solver used to check them, resonant
//! tunneling through double barriers and the waveguide coupler.
//!
//! Lengths are in units of the incident wavelength and potentials are ratios
//! to the incident energy, see [`crate::units`].

mod coupler;
mod csv;
mod phase;
mod transfer;

pub use coupler::{coupler_unitary, CouplerSpec};
pub use csv::write_csv;
pub use phase::{calibrate_phase, phase_curve, phase, phase_step, phase_well, resonance_width, PhaseKind};
pub use transfer::{
    double_barrier_transmission, find_resonances, scatter, tunneling_suppression, EnergyScan, ScatterResult,
    DEFAULT_SCAN_POINTS,
};

use crate::error::{Error, Result};

/// Shape of a piecewise-constant gate potential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionKind
{
    /// Plateau of height `V < E` (a finite-width step up and back down).
    Step,
    /// Plateau of depth `V` below the wire's band edge.
    Well,
    /// Single barrier; `V > E` is the tunneling regime.
    Barrier,
    /// Two identical barriers separated by `well_gap`.
    DoubleBarrier,
}

/// A 1D gate region placed at `x = 0` in an otherwise free wire.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ScatteringRegion
{
    pub kind: RegionKind,
    /// Potential height (or well depth) over the incident energy.
    pub v_over_e: f64,
    /// Region width, or width of each barrier for a double barrier.
    pub length: f64,
    /// Spacing between the two barriers (double barrier only, else 0).
    pub well_gap: f64,
}

impl ScatteringRegion
{
    pub fn step(v_over_e: f64, length: f64) -> Result<Self>
    {
        Self::new(RegionKind::Step, v_over_e, length, 0.0)
    }

    pub fn well(v_over_e: f64, length: f64) -> Result<Self>
    {
        Self::new(RegionKind::Well, v_over_e, length, 0.0)
    }

    pub fn barrier(v_over_e: f64, length: f64) -> Result<Self>
    {
        Self::new(RegionKind::Barrier, v_over_e, length, 0.0)
    }

    pub fn double_barrier(v_over_e: f64, barrier_width: f64, well_gap: f64) -> Result<Self>
    {
        Self::new(RegionKind::DoubleBarrier, v_over_e, barrier_width, well_gap)
    }

    pub fn new(kind: RegionKind, v_over_e: f64, length: f64, well_gap: f64) -> Result<Self>
    {
        let region = ScatteringRegion { kind, v_over_e, length, well_gap };
        region.validate()?;
        Ok(region)
    }

    pub fn validate(&self) -> Result<()>
    {
        if !(self.length > 0.0 && self.length.is_finite())
        {
            return Err(Error::domain(format!("region length must be positive, got {}", self.length)));
        }
        if !self.v_over_e.is_finite() || self.v_over_e < 0.0
        {
            return Err(Error::domain(format!("V/E must be finite and non-negative, got {}", self.v_over_e)));
        }
        match self.kind
        {
            RegionKind::Step if self.v_over_e >= 1.0 =>
            {
                Err(Error::domain(format!("step requires V/E < 1, got {}", self.v_over_e)))
            }
            RegionKind::DoubleBarrier if !(self.well_gap >= 0.0 && self.well_gap.is_finite()) =>
            {
                Err(Error::domain(format!("well gap must be non-negative, got {}", self.well_gap)))
            }
            RegionKind::Step | RegionKind::Well | RegionKind::Barrier if self.well_gap != 0.0 =>
            {
                Err(Error::domain("well gap is only meaningful for a double barrier"))
            }
            _ => Ok(()),
        }
    }

    /// Total extent of the region along the wire.
    pub fn extent(&self) -> f64
    {
        match self.kind
        {
            RegionKind::DoubleBarrier => 2.0 * self.length + self.well_gap,
            _ => self.length,
        }
    }

    /// Potential layers `(V/E₀, width)` from left to right.
    pub fn layers(&self) -> Vec<(f64, f64)>
    {
        match self.kind
        {
            RegionKind::Step | RegionKind::Barrier => vec![(self.v_over_e, self.length)],
            RegionKind::Well => vec![(-self.v_over_e, self.length)],
            RegionKind::DoubleBarrier =>
            {
                let mut layers = vec![(self.v_over_e, self.length)];
                if self.well_gap > 0.0
                {
                    layers.push((0.0, self.well_gap));
                }
                layers.push((self.v_over_e, self.length));
                layers
            }
        }
    }

    /// Potential ratio at position `x` (region starting at 0).
    pub fn potential_at(&self, x: f64) -> f64
    {
        let mut start = 0.0;
        for (v, w) in self.layers()
        {
            if x >= start && x < start + w
            {
                return v;
            }
            start += w;
        }
        0.0
    }
}
