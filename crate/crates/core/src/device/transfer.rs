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

//! Piecewise-constant transfer-matrix scattering.
//!
//! Each layer of constant potential maps `(ψ, ψ′)` at its left edge to
//! `(ψ, ψ′)` at its right edge by a real 2×2 matrix with unit determinant.
//! Continuity of `ψ` and `ψ′` makes the interface matrices the identity, so
//! the whole region is the ordered product of its layer matrices. Matching
//! `e^{ikx} + r e^{−ikx}` on the left and `t e^{ikx}` on the right then gives
//! `t` and `r`. Because the outgoing wave is written as `t e^{ikx}` with the
//! same origin as the incident one, `t = 1` for an empty region and `arg t` is
//! directly the phase relative to free propagation.

use crate::device::{RegionKind, ScatteringRegion};
use crate::error::{Error, Result};
use crate::linalg::{C64, I};
use crate::units::K0;

/// Default number of points in a uniform energy scan.
pub const DEFAULT_SCAN_POINTS: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterResult
{
    /// Transmission amplitude, referenced to the free wave.
    pub t: C64,
    /// Reflection amplitude at the left edge of the region.
    pub r: C64,
    pub transmission_prob: f64,
    pub reflection_prob: f64,
}

impl ScatterResult
{
    /// Transmitted phase relative to free propagation over the same length.
    pub fn phase(&self) -> f64
    {
        self.t.arg()
    }
}

type Real2 = [[f64; 2]; 2];

fn mul(a: &Real2, b: &Real2) -> Real2
{
    [
        [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
        [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
    ]
}

fn layer_matrix(kinetic: f64, width: f64) -> Result<Real2>
{
    if kinetic > 0.0
    {
        let q = K0 * kinetic.sqrt();
        let (s, c) = (q * width).sin_cos();
        Ok([[c, s / q], [-q * s, c]])
    }
    else if kinetic < 0.0
    {
        let kappa = K0 * (-kinetic).sqrt();
        let (s, c) = ((kappa * width).sinh(), (kappa * width).cosh());
        Ok([[c, s / kappa], [kappa * s, c]])
    }
    else
    {
        Err(Error::NumericalDegeneracy)
    }
}

/// Scatters a plane wave of energy `e_ratio` (in units of the reference
/// energy the region's `V/E` is quoted against) off `region`.
pub fn scatter(region: &ScatteringRegion, e_ratio: f64) -> Result<ScatterResult>
{
    region.validate()?;
    if !(e_ratio > 0.0 && e_ratio.is_finite())
    {
        return Err(Error::domain(format!("incident energy must be positive, got {e_ratio}")));
    }
    let k = K0 * e_ratio.sqrt();

    let mut m: Real2 = [[1.0, 0.0], [0.0, 1.0]];
    let mut extent = 0.0;
    for (v, w) in region.layers()
    {
        m = mul(&layer_matrix(e_ratio - v, w)?, &m);
        extent += w;
    }

    // M·(1 + r, ik(1 − r)) = τ·(1, ik), τ = t·e^{ikX}
    let ik = I * k;
    let a = m[0][0] + ik * m[0][1];
    let b = m[0][0] - ik * m[0][1];
    let c = m[1][0] + ik * m[1][1];
    let d = m[1][0] - ik * m[1][1];
    let denom = d - ik * b;
    let r = (ik * a - c) / denom;
    // τ = a + r·b = (ad − bc)/denom, and ad − bc = −2ik·det M = −2ik
    let tau = -2.0 * ik / denom;
    let t = tau * C64::from_polar(1.0, -k * extent);

    Ok(ScatterResult { t, r, transmission_prob: t.norm_sqr(), reflection_prob: r.norm_sqr() })
}

/// Amplitude suppression `exp(−κL)` for tunneling through a barrier of
/// width `length` and height `V/E > 1`, with `κ = 2π√(V/E − 1)`.
pub fn tunneling_suppression(length: f64, v_over_e: f64) -> Result<f64>
{
    if !(v_over_e > 1.0) || !v_over_e.is_finite()
    {
        return Err(Error::domain(format!("tunneling requires V/E > 1, got {v_over_e}")));
    }
    if !(length >= 0.0) || !length.is_finite()
    {
        return Err(Error::domain(format!("barrier width must be >= 0, got {length}")));
    }
    Ok((-K0 * (v_over_e - 1.0).sqrt() * length).exp())
}

/// Uniform energy scan from `start` to `end` inclusive (either direction).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyScan
{
    pub start: f64,
    pub end: f64,
    pub points: usize,
}

impl EnergyScan
{
    pub fn new(start: f64, end: f64, points: usize) -> Self
    {
        EnergyScan { start, end, points }
    }

    pub fn with_default_density(start: f64, end: f64) -> Self
    {
        Self::new(start, end, DEFAULT_SCAN_POINTS)
    }

    fn energies(&self) -> Result<Vec<f64>>
    {
        if self.points < 2 || !(self.start != self.end) || !self.start.is_finite() || !self.end.is_finite()
        {
            return Err(Error::EmptyScan);
        }
        let h = (self.end - self.start) / (self.points - 1) as f64;
        Ok((0..self.points)
            .map(|i| if i + 1 == self.points { self.end } else { self.start + h * i as f64 })
            .collect())
    }
}

fn check_double_barrier(region: &ScatteringRegion, scan: &EnergyScan) -> Result<Vec<f64>>
{
    if region.kind != RegionKind::DoubleBarrier
    {
        return Err(Error::domain("resonance scan requires a double-barrier region"));
    }
    region.validate()?;
    let energies = scan.energies()?;
    let (lo, hi) = (scan.start.min(scan.end), scan.start.max(scan.end));
    if !(lo > 0.0 && hi < region.v_over_e)
    {
        return Err(Error::domain(format!(
            "scan [{lo}, {hi}] must lie strictly inside (0, {})",
            region.v_over_e
        )));
    }
    Ok(energies)
}

fn transmission(region: &ScatteringRegion, e: f64) -> Result<f64>
{
    scatter(region, e).map(|s| s.transmission_prob)
}

/// Transmission probability of a double barrier over an energy scan, as
/// `(E/E₀, T)` rows in scan order.
pub fn double_barrier_transmission(region: &ScatteringRegion, scan: &EnergyScan) -> Result<Vec<(f64, f64)>>
{
    check_double_barrier(region, scan)?
        .into_iter()
        .map(|e| transmission(region, e).map(|t| (e, t)))
        .collect()
}

fn reflection_magnitude(region: &ScatteringRegion, e: f64) -> Result<f64>
{
    scatter(region, e).map(|s| s.r.norm())
}

/// Locates the maximum of `T` inside `[lo, hi]` by bisecting on the sign of
/// a central-difference derivative. Since `T = 1 − |r|²`, the sign of `dT/dE`
/// is taken from `|r|`, which falls linearly into a transmission peak and so
/// keeps its slope resolvable where `T` itself is flat to round-off.
fn refine_peak(region: &ScatteringRegion, mut lo: f64, mut hi: f64) -> Result<f64>
{
    for _ in 0..200
    {
        let width = hi - lo;
        let mid = 0.5 * (lo + hi);
        if width <= 4.0 * f64::EPSILON * mid.abs().max(1e-300)
        {
            break;
        }
        let h = 0.25 * width;
        let rising = reflection_magnitude(region, mid + h)? < reflection_magnitude(region, mid - h)?;
        if rising
        {
            lo = mid;
        }
        else
        {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Resonance energies of a double barrier inside the scan window, sorted
/// ascending and capped at `max_count`. No resonance is not an error.
pub fn find_resonances(region: &ScatteringRegion, scan: &EnergyScan, max_count: usize) -> Result<Vec<f64>>
{
    let mut energies = check_double_barrier(region, scan)?;
    // Scan direction must not matter: sample in ascending order always.
    if energies[0] > energies[energies.len() - 1]
    {
        energies.reverse();
    }
    let t: Vec<f64> = energies.iter().map(|&e| transmission(region, e)).collect::<Result<_>>()?;

    let mut peaks = Vec::new();
    for i in 1..energies.len() - 1
    {
        if t[i] > t[i - 1] && t[i] >= t[i + 1]
        {
            let e = refine_peak(region, energies[i - 1], energies[i + 1])?;
            // 3-point stencil, again read through |r| = √(1 − T)
            let stencil = 1e-6 * (energies[i + 1] - energies[i - 1]);
            let r = reflection_magnitude(region, e)?;
            if r <= reflection_magnitude(region, e - stencil)? && r <= reflection_magnitude(region, e + stencil)?
            {
                peaks.push(e);
            }
        }
    }
    peaks.sort_by(|a, b| a.total_cmp(b));
    peaks.dedup_by(|a, b| (*a - *b).abs() <= 1e-9 * b.abs().max(1.0));
    peaks.truncate(max_count);
    Ok(peaks)
}

#[cfg(test)]
mod tests
{
    use super::*;
    use crate::device::{phase_step, phase_well, resonance_width, PhaseKind};
    use crate::linalg::wrap_angle;
    use std::f64::consts::PI;

    #[test]
    fn resonant_step_matches_closed_form()
    {
        let s = scatter(&ScatteringRegion::step(0.75, 1.0).unwrap(), 1.0).unwrap();
        assert!((s.t.norm() - 1.0).abs() < 1e-10);
        assert!(wrap_angle(s.phase() + PI).abs() < 1e-10);
    }

    #[test]
    fn resonant_well_matches_closed_form()
    {
        let s = scatter(&ScatteringRegion::well(3.0, 0.25).unwrap(), 1.0).unwrap();
        assert!((s.t.norm() - 1.0).abs() < 1e-10);
        assert!(wrap_angle(s.phase() - PI / 2.0).abs() < 1e-10);
    }

    #[test]
    fn second_order_resonances()
    {
        for (kind, v) in [(PhaseKind::Step, 0.5), (PhaseKind::Well, 7.0)]
        {
            let n = 2;
            let l = resonance_width(v, kind, n).unwrap();
            let (region, expect) = match kind
            {
                PhaseKind::Step => (ScatteringRegion::step(v, l).unwrap(), phase_step(v, n).unwrap()),
                PhaseKind::Well => (ScatteringRegion::well(v, l).unwrap(), phase_well(v, n).unwrap()),
            };
            let s = scatter(&region, 1.0).unwrap();
            assert!(s.reflection_prob < 1e-20);
            assert!(wrap_angle(s.phase() - expect).abs() < 1e-10);
        }
    }

    #[test]
    fn vanishing_barrier_is_transparent()
    {
        let s = scatter(&ScatteringRegion::barrier(2.0, 1e-9).unwrap(), 1.0).unwrap();
        assert!((s.t - C64::new(1.0, 0.0)).norm() < 1e-7);
        assert!(s.r.norm() < 1e-7);
    }

    #[test]
    fn flux_is_conserved_in_tunneling_regime()
    {
        let s = scatter(&ScatteringRegion::barrier(3.0, 0.4).unwrap(), 1.0).unwrap();
        assert!((s.transmission_prob + s.reflection_prob - 1.0).abs() < 1e-12);
        // thick barrier transmission tracks the squared suppression factor
        let f = tunneling_suppression(0.4, 3.0).unwrap();
        assert!(s.transmission_prob < 20.0 * f * f);
        assert!(s.transmission_prob > 0.05 * f * f);
    }

    #[test]
    fn exact_barrier_top_is_degenerate()
    {
        let region = ScatteringRegion::barrier(1.0, 0.5).unwrap();
        assert_eq!(scatter(&region, 1.0), Err(Error::NumericalDegeneracy));
    }

    #[test]
    fn suppression_examples()
    {
        assert_eq!(tunneling_suppression(0.0, 5.0).unwrap(), 1.0);
        let v = 1.0 + 1.0 / (4.0 * PI * PI);
        assert!((tunneling_suppression(1.0, v).unwrap() - (-1f64).exp()).abs() < 1e-15);
        assert!((tunneling_suppression(2.0, v).unwrap() - (-2f64).exp()).abs() < 1e-15);
        assert!(tunneling_suppression(1.0, 1.0).is_err());
        assert!(tunneling_suppression(-1.0, 2.0).is_err());
    }

    #[test]
    fn empty_scan_is_rejected()
    {
        let db = ScatteringRegion::double_barrier(5.0, 0.1, 1.0).unwrap();
        assert_eq!(double_barrier_transmission(&db, &EnergyScan::new(0.5, 0.5, 10)), Err(Error::EmptyScan));
        assert_eq!(double_barrier_transmission(&db, &EnergyScan::new(0.1, 0.5, 0)), Err(Error::EmptyScan));
        assert!(double_barrier_transmission(&db, &EnergyScan::new(0.1, 5.5, 10)).is_err());
    }

    #[test]
    fn resonance_reaches_unit_transmission()
    {
        let db = ScatteringRegion::double_barrier(5.0, 0.1, 1.0).unwrap();
        let peaks = find_resonances(&db, &EnergyScan::with_default_density(0.01, 4.99), 10).unwrap();
        assert!(!peaks.is_empty());
        for e in peaks
        {
            let t = scatter(&db, e).unwrap().transmission_prob;
            assert!(t >= 1.0 - 1e-6, "T({e}) = {t}");
        }
    }

    #[test]
    fn wider_gap_hosts_more_resonances()
    {
        let scan = EnergyScan::with_default_density(0.01, 4.99);
        let narrow = find_resonances(&ScatteringRegion::double_barrier(5.0, 0.1, 0.5).unwrap(), &scan, 100).unwrap();
        let wide = find_resonances(&ScatteringRegion::double_barrier(5.0, 0.1, 2.0).unwrap(), &scan, 100).unwrap();
        assert!(wide.len() > narrow.len(), "{} vs {}", wide.len(), narrow.len());
    }

    #[test]
    fn scan_direction_does_not_matter()
    {
        let db = ScatteringRegion::double_barrier(5.0, 0.1, 1.5).unwrap();
        let up = find_resonances(&db, &EnergyScan::with_default_density(0.01, 4.99), 100).unwrap();
        let down = find_resonances(&db, &EnergyScan::with_default_density(4.99, 0.01), 100).unwrap();
        assert_eq!(up.len(), down.len(), "{up:?} vs {down:?}");
        for (a, b) in up.iter().zip(&down)
        {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn closed_gap_has_no_resonance()
    {
        let db = ScatteringRegion::double_barrier(5.0, 0.1, 0.0).unwrap();
        let peaks = find_resonances(&db, &EnergyScan::with_default_density(0.01, 4.99), 100).unwrap();
        assert!(peaks.is_empty(), "{peaks:?}");
    }

    #[test]
    fn far_below_resonance_is_suppressed()
    {
        let db = ScatteringRegion::double_barrier(5.0, 0.2, 1.0).unwrap();
        let peaks = find_resonances(&db, &EnergyScan::with_default_density(0.001, 4.99), 1).unwrap();
        let e = 0.1 * peaks[0];
        let t = scatter(&db, e).unwrap().transmission_prob;
        // suppression over the total barrier width at this energy
        // lengths rescale to the local wavelength at energy e
        let supp = tunneling_suppression(2.0 * 0.2 * e.sqrt(), 5.0 / e).unwrap();
        let bound = (supp * supp) * 100.0;
        assert!(t <= bound, "T = {t}, bound {bound}");
    }

    #[test]
    fn thin_barriers_are_transparent()
    {
        let db = ScatteringRegion::double_barrier(5.0, 1e-10, 1.0).unwrap();
        for (_, t) in double_barrier_transmission(&db, &EnergyScan::new(0.1, 4.9, 50)).unwrap()
        {
            assert!((t - 1.0).abs() < 1e-8);
        }
    }
}
