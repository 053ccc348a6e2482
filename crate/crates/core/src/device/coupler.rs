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

use ndarray::array;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64};

/// Two parallel electron waveguides coupled over a length `coupling_length`.
///
/// Population oscillates between the wires; after `transfer_length` an
/// electron launched in one wire has moved entirely to the other.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct CouplerSpec
{
    /// `L_c` in µm.
    pub coupling_length: f64,
    /// `L_t` in µm.
    pub transfer_length: f64,
}

impl CouplerSpec
{
    pub fn new(coupling_length: f64, transfer_length: f64) -> Result<Self>
    {
        if !(coupling_length >= 0.0 && coupling_length.is_finite())
        {
            return Err(Error::domain(format!("coupling length must be >= 0, got {coupling_length}")));
        }
        if !(transfer_length > 0.0 && transfer_length.is_finite())
        {
            return Err(Error::domain(format!("transfer length must be > 0, got {transfer_length}")));
        }
        Ok(CouplerSpec { coupling_length, transfer_length })
    }

    /// Symmetric 50/50 splitter, `L_c = L_t/2`.
    pub fn beam_splitter(transfer_length: f64) -> Result<Self>
    {
        Self::new(0.5 * transfer_length, transfer_length)
    }

    /// Mixing angle `θ = (π/2)·L_c/L_t`.
    pub fn mixing_angle(&self) -> f64
    {
        std::f64::consts::FRAC_PI_2 * self.coupling_length / self.transfer_length
    }
}

/// `[[cos θ, i sin θ], [i sin θ, cos θ]]`
pub fn coupler_unitary(spec: &CouplerSpec) -> CMatrix
{
    let theta = spec.mixing_angle();
    let c = C64::new(theta.cos(), 0.0);
    let s = C64::new(0.0, theta.sin());
    array![[c, s], [s, c]]
}
