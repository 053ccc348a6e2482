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

//! Closed-form phase shifts of reflectionless steps and wells.
//!
//! A plateau whose width is a whole number of half wavelengths (measured with
//! the local wavelength inside it) transmits with `|t| = 1`; the only effect on
//! the electron is a phase relative to free propagation.

use std::f64::consts::PI;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhaseKind
{
    Step,
    Well,
}

impl std::fmt::Display for PhaseKind
{
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result
    {
        f.write_str(match self
        {
            PhaseKind::Step => "step",
            PhaseKind::Well => "well",
        })
    }
}

impl std::str::FromStr for PhaseKind
{
    type Err = Error;

    fn from_str(s: &str) -> Result<Self>
    {
        match s
        {
            "step" => Ok(PhaseKind::Step),
            "well" => Ok(PhaseKind::Well),
            other => Err(Error::domain(format!("unknown phase element {other:?} (expected step or well)"))),
        }
    }
}

fn check_order(n: u32) -> Result<()>
{
    if n == 0
    {
        return Err(Error::domain("resonance order n must be at least 1"));
    }
    Ok(())
}

fn check_v(kind: PhaseKind, v_over_e: f64) -> Result<()>
{
    if !(v_over_e >= 0.0) || !v_over_e.is_finite()
    {
        return Err(Error::domain(format!("V/E must be finite and non-negative, got {v_over_e}")));
    }
    if kind == PhaseKind::Step && v_over_e >= 1.0
    {
        return Err(Error::domain(format!("step phase diverges at V/E >= 1, got {v_over_e}")));
    }
    Ok(())
}

/// Phase `nπ(1 − 1/√(1 − V/E))` acquired crossing a step of width `n·λ′/2`.
/// Always `≤ 0`, diverging as `V/E → 1`.
pub fn phase_step(v_over_e: f64, n: u32) -> Result<f64>
{
    check_order(n)?;
    check_v(PhaseKind::Step, v_over_e)?;
    Ok(n as f64 * PI * (1.0 - 1.0 / (1.0 - v_over_e).sqrt()))
}

/// Phase `nπ(1 − 1/√(1 + V/E))` acquired crossing a well of width `n·λ′/2`.
/// Lies in `[0, nπ)` and saturates at `nπ` for deep wells.
pub fn phase_well(v_over_e: f64, n: u32) -> Result<f64>
{
    check_order(n)?;
    check_v(PhaseKind::Well, v_over_e)?;
    Ok(n as f64 * PI * (1.0 - 1.0 / (1.0 + v_over_e).sqrt()))
}

pub fn phase(kind: PhaseKind, v_over_e: f64, n: u32) -> Result<f64>
{
    match kind
    {
        PhaseKind::Step => phase_step(v_over_e, n),
        PhaseKind::Well => phase_well(v_over_e, n),
    }
}

/// Width (in `λ`) of the `n`-th reflectionless plateau: `n/2` local
/// wavelengths, where the local wavelength is `λ/√(1 ∓ V/E)`.
pub fn resonance_width(v_over_e: f64, kind: PhaseKind, n: u32) -> Result<f64>
{
    check_order(n)?;
    check_v(kind, v_over_e)?;
    let local = match kind
    {
        PhaseKind::Step => 1.0 / (1.0 - v_over_e).sqrt(),
        PhaseKind::Well => 1.0 / (1.0 + v_over_e).sqrt(),
    };
    Ok(0.5 * n as f64 * local)
}

/// Achievable phase interval for a kind and order, as `(lo, hi)` with the
/// open end marked by infinity or by `nπ`.
fn achievable(kind: PhaseKind, n: u32) -> (f64, f64, String)
{
    let top = n as f64 * PI;
    match kind
    {
        PhaseKind::Step => (f64::NEG_INFINITY, 0.0, "(-inf, 0]".to_string()),
        PhaseKind::Well => (0.0, top, format!("[0, {top})")),
    }
}

/// Inverts [`phase_step`] / [`phase_well`]: the `V/E` that produces `target`.
pub fn calibrate_phase(target: f64, kind: PhaseKind, n: u32) -> Result<f64>
{
    check_order(n)?;
    let (lo, hi, range) = achievable(kind, n);
    let reachable = match kind
    {
        PhaseKind::Step => target.is_finite() && target <= hi,
        PhaseKind::Well => target >= lo && target < hi,
    };
    if !reachable
    {
        return Err(Error::UnreachableTarget { target, range });
    }
    let s = 1.0 - target / (n as f64 * PI);
    let v = match kind
    {
        PhaseKind::Step => 1.0 - 1.0 / (s * s),
        PhaseKind::Well => 1.0 / (s * s) - 1.0,
    };
    Ok(v.max(0.0))
}

/// Uniformly sampled `(V/E, phase)` curve over `[v_min, v_max]`.
pub fn phase_curve(kind: PhaseKind, n: u32, v_min: f64, v_max: f64, samples: usize) -> Result<Vec<(f64, f64)>>
{
    check_order(n)?;
    if samples == 0
    {
        return Err(Error::domain("curve needs at least one sample"));
    }
    if !(v_min <= v_max)
    {
        return Err(Error::domain(format!("empty range [{v_min}, {v_max}]")));
    }
    if samples == 1 && v_min != v_max
    {
        return Err(Error::domain("a single sample requires v_min == v_max"));
    }
    check_v(kind, v_min)?;
    check_v(kind, v_max)?;

    let step = if samples > 1 { (v_max - v_min) / (samples - 1) as f64 } else { 0.0 };
    (0..samples)
        .map(|i| {
            let v = if i + 1 == samples { v_max } else { v_min + step * i as f64 };
            phase(kind, v, n).map(|p| (v, p))
        })
        .collect()
}
