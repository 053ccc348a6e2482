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

//! Dimensionless unit convention and SI conversion for reports.
//!
//! All scattering and propagation code works with the incident energy
//! `E = 1`, the incident wavelength `λ = 1`, `ħ = 1` and therefore a free
//! wavenumber `k = 2π`. A potential of height `V` enters only as the ratio
//! `V/E`. With `E = ħ²k²/2m` this fixes `2m = 4π²`.

use std::f64::consts::PI;

/// Free-space wavenumber of the incident electron.
pub const K0: f64 = 2.0 * PI;

/// `ħ²/2m` in internal units, so that `E = K0² · KINETIC = 1`.
pub const KINETIC: f64 = 1.0 / (4.0 * PI * PI);

const PLANCK_J_S: f64 = 6.626_070_15e-34;
const ELECTRON_MASS_KG: f64 = 9.109_383_701_5e-31;
const ELEMENTARY_CHARGE_C: f64 = 1.602_176_634e-19;

/// Wavenumber (internal units) of a wave with energy ratio `e` in a region
/// of potential ratio `v`, i.e. `2π·√(e − v)`. Negative kinetic energy gives
/// an imaginary result, returned here as `None`.
pub fn propagating_wavenumber(e: f64, v: f64) -> Option<f64>
{
    let kin = e - v;
    (kin > 0.0).then(|| K0 * kin.sqrt())
}

/// Electron wavelength `λ = h/√(2m*E)` in µm for an energy given in meV and
/// an effective mass given as a multiple of the free electron mass.
pub fn wavelength_um(energy_mev: f64, mstar: f64) -> f64
{
    let energy_j = energy_mev * 1e-3 * ELEMENTARY_CHARGE_C;
    let mass = mstar * ELECTRON_MASS_KG;
    PLANCK_J_S / (2.0 * mass * energy_j).sqrt() * 1e6
}

/// Converts a length in units of `λ` to µm.
pub fn lambda_to_um(length: f64, energy_mev: f64, mstar: f64) -> f64
{
    length * wavelength_um(energy_mev, mstar)
}

#[cfg(test)]
mod tests
{
    use super::*;

    #[test]
    fn free_electron_at_one_ev()
    {
        // de Broglie wavelength of a 1 eV free electron is 1.2264 nm.
        let lam = wavelength_um(1000.0, 1.0);
        assert!((lam * 1e3 - 1.226_426).abs() < 1e-5, "{lam}");
    }

    #[test]
    fn gaas_effective_mass_lengthens_wavelength()
    {
        let free = wavelength_um(10.0, 1.0);
        let gaas = wavelength_um(10.0, 0.067);
        assert!((gaas / free - (1.0f64 / 0.067).sqrt()).abs() < 1e-12);
        assert_eq!(lambda_to_um(2.0, 10.0, 0.067), 2.0 * gaas);
    }

    #[test]
    fn unit_energy_has_wavenumber_two_pi()
    {
        assert!((K0 * K0 * KINETIC - 1.0).abs() < 1e-15);
        assert_eq!(propagating_wavenumber(1.0, 0.0), Some(K0));
        assert_eq!(propagating_wavenumber(1.0, 1.5), None);
    }
}
