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

//! Wave-packet check of the plane-wave gate phases.
//!
//! A Gaussian packet is propagated through a gate potential with the
//! Crank–Nicolson scheme `(1 + iΔt·H/2) ψⁿ⁺¹ = (1 − iΔt·H/2) ψⁿ`, whose
//! one-step operator is unitary, so the norm only drifts by round-off. The
//! same packet is propagated without the potential; the phase of the overlap
//! between the transmitted part and this reference is the gate phase.

use std::f64::consts::PI;

use crate::device::{phase, resonance_width, PhaseKind, RegionKind, ScatteringRegion};
use crate::error::{Error, Result};
use crate::linalg::{C64, I, ZERO};
use crate::units::{K0, KINETIC};

/// Group velocity of the carrier, `dE/dk = 2·KINETIC·k₀ = 1/π` (λ per time unit).
pub const GROUP_VELOCITY: f64 = 2.0 * KINETIC * K0;

/// Probability allowed in the outer 1% of the grid before a run is aborted.
pub const EDGE_TOL: f64 = 1e-6;

/// Default spatial resolution, λ/50.
pub const DEFAULT_DX: f64 = 0.02;

/// Fraction of a grid cell the packet centre may move per step.
pub const DEFAULT_COURANT: f64 = 0.9;

const EDGE_CHECK_EVERY: usize = 64;

/// Uniform grid on `[x_min, x_max]` with time step `dt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D
{
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
    pub dt: f64,
}

impl Grid1D
{
    pub fn new(x_min: f64, x_max: f64, points: usize, dt: f64) -> Result<Self>
    {
        let g = Grid1D { x_min, x_max, points, dt };
        g.validate()?;
        Ok(g)
    }

    /// Grid covering `[x_min, x_max]` with spacing at most `dx` and a time
    /// step moving the packet `courant·dx` per step.
    pub fn with_spacing(x_min: f64, x_max: f64, dx: f64, courant: f64) -> Result<Self>
    {
        let points = ((x_max - x_min) / dx).ceil() as usize + 1;
        let actual = (x_max - x_min) / (points - 1) as f64;
        Self::new(x_min, x_max, points, courant * actual / GROUP_VELOCITY)
    }

    pub fn dx(&self) -> f64
    {
        (self.x_max - self.x_min) / (self.points - 1) as f64
    }

    pub fn x(&self, j: usize) -> f64
    {
        self.x_min + self.dx() * j as f64
    }

    pub fn validate(&self) -> Result<()>
    {
        if self.points < 1024
        {
            return Err(Error::InvalidGrid(format!("need at least 1024 points, got {}", self.points)));
        }
        if !(self.x_max > self.x_min)
        {
            return Err(Error::InvalidGrid("x_max must exceed x_min".into()));
        }
        if self.dx() > 0.05
        {
            return Err(Error::InvalidGrid(format!("dx = {} does not resolve λ/20", self.dx())));
        }
        if !(self.dt > 0.0) || self.dt * GROUP_VELOCITY > self.dx() * (1.0 + 1e-12)
        {
            return Err(Error::InvalidGrid(format!(
                "dt = {} moves the packet more than one cell per step",
                self.dt
            )));
        }
        Ok(())
    }
}

/// `ψ(x) ∝ exp(−(x − x₀)²/4σ² + i k₀ x)`, so `|ψ|²` has standard deviation σ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPacket
{
    pub center: f64,
    pub sigma: f64,
}

impl GaussianPacket
{
    pub fn new(center: f64, sigma: f64) -> Result<Self>
    {
        if !(sigma >= 5.0) || !sigma.is_finite()
        {
            return Err(Error::InvalidPacket(format!("σ = {sigma} is below the quasi-monoenergetic limit 5λ")));
        }
        Ok(GaussianPacket { center, sigma })
    }

    fn check_on(&self, grid: &Grid1D) -> Result<()>
    {
        if self.center - 5.0 * self.sigma < grid.x_min || self.center + 5.0 * self.sigma > grid.x_max
        {
            return Err(Error::InvalidPacket("packet must start at least 5σ from both grid edges".into()));
        }
        Ok(())
    }

    fn sample(&self, grid: &Grid1D) -> Vec<C64>
    {
        let mut psi: Vec<C64> = (0..grid.points)
            .map(|j| {
                let x = grid.x(j);
                let u = (x - self.center) / self.sigma;
                C64::from_polar((-0.25 * u * u).exp(), K0 * x)
            })
            .collect();
        let norm = (psi.iter().map(|z| z.norm_sqr()).sum::<f64>() * grid.dx()).sqrt();
        psi.iter_mut().for_each(|z| *z /= norm);
        psi
    }
}

/// A gate region occupying `[start, start + extent]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlacedRegion
{
    pub region: ScatteringRegion,
    pub start: f64,
}

impl PlacedRegion
{
    pub fn end(&self) -> f64
    {
        self.start + self.region.extent()
    }

    /// Cell-averaged potential, so region edges between grid points are
    /// represented by fractional coverage.
    fn sample(&self, grid: &Grid1D) -> Vec<f64>
    {
        let dx = grid.dx();
        let mut v = vec![0.0; grid.points];
        let mut left = self.start;
        for (height, width) in self.region.layers()
        {
            let right = left + width;
            let first = (((left - grid.x_min) / dx - 0.5).floor().max(0.0)) as usize;
            let last = ((((right - grid.x_min) / dx + 0.5).ceil()) as usize).min(grid.points - 1);
            for (j, vj) in v.iter_mut().enumerate().take(last + 1).skip(first)
            {
                let x = grid.x(j);
                let overlap = (right.min(x + 0.5 * dx) - left.max(x - 0.5 * dx)).max(0.0);
                *vj += height * overlap / dx;
            }
            left = right;
        }
        v
    }
}

/// Outcome of one propagation.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct PropagationResult
{
    pub transmitted_prob: f64,
    pub reflected_prob: f64,
    /// Phase of the transmitted packet relative to the free reference run.
    pub transmitted_phase: f64,
    pub final_norm: f64,
    /// Largest `|norm − 1|` seen at any step of either run.
    pub max_norm_drift: f64,
}

/// Crank–Nicolson stepper with the left-hand tridiagonal system factored once.
struct CrankNicolson
{
    /// `i·Δt/2 · KINETIC/dx²`, the off-diagonal coupling.
    off: C64,
    /// Right-hand-side diagonal `1 − iΔt/2·(2·KINETIC/dx² + V)`.
    rhs_diag: Vec<C64>,
    /// Thomas factors of the left-hand side.
    upper: Vec<C64>,
    inv_pivot: Vec<C64>,
    scratch: Vec<C64>,
}

impl CrankNicolson
{
    fn new(grid: &Grid1D, potential: &[f64]) -> Self
    {
        let n = grid.points;
        let coupling = KINETIC / (grid.dx() * grid.dx());
        let half = 0.5 * grid.dt;
        let off = I * (half * coupling);
        // lhs: diag 1 + iΔt/2(2c + V), off-diagonals −i·Δt/2·c
        let lhs_off = -off;
        let lhs_diag: Vec<C64> = potential.iter().map(|&v| C64::new(1.0, half * (2.0 * coupling + v))).collect();
        let rhs_diag: Vec<C64> = potential.iter().map(|&v| C64::new(1.0, -half * (2.0 * coupling + v))).collect();

        let mut upper = vec![ZERO; n];
        let mut inv_pivot = vec![ZERO; n];
        let mut prev_upper = ZERO;
        for j in 0..n
        {
            let pivot = lhs_diag[j] - lhs_off * prev_upper;
            inv_pivot[j] = pivot.inv();
            upper[j] = lhs_off * inv_pivot[j];
            prev_upper = upper[j];
        }
        CrankNicolson { off, rhs_diag, upper, inv_pivot, scratch: vec![ZERO; n] }
    }

    fn step(&mut self, psi: &mut [C64])
    {
        let n = psi.len();
        let lhs_off = -self.off;
        // right-hand side, then forward sweep in one pass
        let mut prev = ZERO;
        for j in 0..n
        {
            let left = if j > 0 { psi[j - 1] } else { ZERO };
            let right = if j + 1 < n { psi[j + 1] } else { ZERO };
            let d = self.rhs_diag[j] * psi[j] + self.off * (left + right);
            prev = (d - lhs_off * prev) * self.inv_pivot[j];
            self.scratch[j] = prev;
        }
        psi[n - 1] = self.scratch[n - 1];
        for j in (0..n - 1).rev()
        {
            psi[j] = self.scratch[j] - self.upper[j] * psi[j + 1];
        }
    }
}

fn norm(psi: &[C64], dx: f64) -> f64
{
    psi.iter().map(|z| z.norm_sqr()).sum::<f64>() * dx
}

fn edge_probability(psi: &[C64], dx: f64) -> f64
{
    let band = (psi.len() / 100).max(1);
    let head = &psi[..band];
    let tail = &psi[psi.len() - band..];
    (norm(head, dx) + norm(tail, dx)).max(0.0)
}

/// Propagates `steps` steps; returns the final wavefunction and the norm
/// after every step (entry 0 is the initial norm).
fn propagate(grid: &Grid1D, potential: &[f64], packet: &GaussianPacket, steps: usize) -> Result<(Vec<C64>, Vec<f64>)>
{
    let dx = grid.dx();
    let mut psi = packet.sample(grid);
    let mut cn = CrankNicolson::new(grid, potential);
    let mut norms = Vec::with_capacity(steps + 1);
    norms.push(norm(&psi, dx));
    for step in 1..=steps
    {
        cn.step(&mut psi);
        norms.push(norm(&psi, dx));
        if step % EDGE_CHECK_EVERY == 0 || step == steps
        {
            let edge_prob = edge_probability(&psi, dx);
            if edge_prob > EDGE_TOL
            {
                return Err(Error::BoundaryReached { step, edge_prob });
            }
        }
    }
    Ok((psi, norms))
}

fn check_inputs(grid: &Grid1D, region: Option<&PlacedRegion>, packet: &GaussianPacket) -> Result<()>
{
    grid.validate()?;
    packet.check_on(grid)?;
    if let Some(r) = region
    {
        r.region.validate()?;
        if r.start < grid.x_min || r.end() > grid.x_max
        {
            return Err(Error::InvalidGrid("gate region lies outside the grid".into()));
        }
        if packet.center + 5.0 * packet.sigma > r.start
        {
            return Err(Error::InvalidPacket("packet must start at least 5σ before the gate region".into()));
        }
    }
    Ok(())
}

fn max_drift(norms: &[f64]) -> f64
{
    norms.iter().map(|n| (n - norms[0]).abs()).fold(0.0, f64::max)
}

/// Propagates the packet through `region` (or through free space when
/// `None`, splitting transmitted and reflected parts at `x = 0`) and through
/// a free reference, and compares the two.
pub fn evolve(grid: &Grid1D, region: Option<&PlacedRegion>, packet: &GaussianPacket, steps: usize)
    -> Result<PropagationResult>
{
    check_inputs(grid, region, packet)?;
    let free = vec![0.0; grid.points];
    let potential = region.map(|r| r.sample(grid)).unwrap_or_else(|| free.clone());

    let (gate_run, ref_run) = std::thread::scope(|s| {
        let gate = s.spawn(|| propagate(grid, &potential, packet, steps));
        let reference = propagate(grid, &free, packet, steps);
        (gate.join().expect("propagation thread panicked"), reference)
    });
    let (psi, norms) = gate_run?;
    let (reference, ref_norms) = ref_run?;

    let dx = grid.dx();
    let (start, end) = region.map(|r| (r.start, r.end())).unwrap_or((0.0, 0.0));
    let (mut transmitted, mut reflected, mut overlap) = (0.0, 0.0, ZERO);
    for (j, z) in psi.iter().enumerate()
    {
        let x = grid.x(j);
        if x > end
        {
            transmitted += z.norm_sqr() * dx;
            overlap += reference[j].conj() * z * dx;
        }
        else if x < start
        {
            reflected += z.norm_sqr() * dx;
        }
    }

    Ok(PropagationResult {
        transmitted_prob: transmitted,
        reflected_prob: reflected,
        transmitted_phase: overlap.arg(),
        final_norm: norms[norms.len() - 1],
        max_norm_drift: max_drift(&norms).max(max_drift(&ref_norms)),
    })
}

/// Norm after every step of a single propagation.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct NormHistory
{
    pub norms: Vec<f64>,
    pub max_deviation: f64,
}

impl NormHistory
{
    pub fn write_csv<W: std::io::Write>(&self, mut out: W) -> std::io::Result<()>
    {
        writeln!(out, "step,norm")?;
        for (i, n) in self.norms.iter().enumerate()
        {
            writeln!(out, "{i},{n:.12e}")?;
        }
        out.flush()
    }
}

pub fn norm_history(grid: &Grid1D, region: Option<&PlacedRegion>, packet: &GaussianPacket, steps: usize)
    -> Result<NormHistory>
{
    check_inputs(grid, region, packet)?;
    let potential = region.map(|r| r.sample(grid)).unwrap_or_else(|| vec![0.0; grid.points]);
    let (_, norms) = propagate(grid, &potential, packet, steps)?;
    let max_deviation = norms.iter().map(|n| (n - 1.0).abs()).fold(0.0, f64::max);
    Ok(NormHistory { norms, max_deviation })
}

/// Grid, packet and step count sized so the packet starts 6σ before the
/// region and ends with its transmitted part 6σ past it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Setup
{
    pub grid: Grid1D,
    pub packet: GaussianPacket,
    pub placed: PlacedRegion,
    pub steps: usize,
}

impl Setup
{
    pub fn around(region: ScatteringRegion, sigma: f64, dx: f64, courant: f64) -> Result<Self>
    {
        let packet = GaussianPacket::new(-6.0 * sigma, sigma)?;
        let extent = region.extent();
        let grid = Grid1D::with_spacing(-13.0 * sigma - extent, extent + 13.0 * sigma, dx, courant)?;
        let travel = 12.0 * sigma + extent;
        let steps = (travel / (GROUP_VELOCITY * grid.dt)).ceil() as usize;
        Ok(Setup { grid, packet, placed: PlacedRegion { region, start: 0.0 }, steps })
    }

    pub fn run(&self) -> Result<PropagationResult>
    {
        evolve(&self.grid, Some(&self.placed), &self.packet, self.steps)
    }
}

/// Reflectionless gate region of order `n`, with its width scaled by
/// `width_scale` (1 for the resonant design).
pub fn gate_region(kind: PhaseKind, v_over_e: f64, n: u32, width_scale: f64) -> Result<ScatteringRegion>
{
    let width = resonance_width(v_over_e, kind, n)? * width_scale;
    ScatteringRegion::new(
        match kind
        {
            PhaseKind::Step => RegionKind::Step,
            PhaseKind::Well => RegionKind::Well,
        },
        v_over_e,
        width,
        0.0,
    )
}

/// Plane-wave phase compared with a wave-packet run.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct GateCheck
{
    pub sigma: f64,
    pub expected_phase: f64,
    pub result: PropagationResult,
}

impl GateCheck
{
    pub fn phase_error(&self) -> f64
    {
        let d = self.result.transmitted_phase - self.expected_phase;
        (d - 2.0 * PI * (d / (2.0 * PI)).round()).abs()
    }

    pub fn relative_phase_error(&self) -> f64
    {
        self.phase_error() / self.expected_phase.abs()
    }
}

pub fn check_gate(kind: PhaseKind, v_over_e: f64, n: u32, sigma: f64, width_scale: f64) -> Result<GateCheck>
{
    let region = gate_region(kind, v_over_e, n, width_scale)?;
    let result = Setup::around(region, sigma, DEFAULT_DX, DEFAULT_COURANT)?.run()?;
    Ok(GateCheck { sigma, expected_phase: phase(kind, v_over_e, n)?, result })
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct BandwidthRow
{
    pub sigma_x: f64,
    pub phase_error: f64,
    pub reflected_prob: f64,
}

/// Phase error and reflection of the resonant gate as the packet narrows
/// in energy (wider σ). Rows are computed concurrently, returned in input
/// order.
pub fn bandwidth_study(v_over_e: f64, kind: PhaseKind, n: u32, sigma_list: &[f64]) -> Result<Vec<BandwidthRow>>
{
    for &s in sigma_list
    {
        GaussianPacket::new(0.0, s)?;
    }
    let checks: Vec<Result<GateCheck>> = std::thread::scope(|scope| {
        let handles: Vec<_> = sigma_list
            .iter()
            .map(|&sigma| scope.spawn(move || check_gate(kind, v_over_e, n, sigma, 1.0)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("bandwidth worker panicked")).collect()
    });
    checks
        .into_iter()
        .map(|c| {
            c.map(|c| BandwidthRow { sigma_x: c.sigma, phase_error: c.phase_error(), reflected_prob: c.result.reflected_prob })
        })
        .collect()
}

pub fn write_bandwidth_csv<W: std::io::Write>(mut out: W, rows: &[BandwidthRow]) -> std::io::Result<()>
{
    writeln!(out, "sigma_x,phase_error,reflected_prob")?;
    for r in rows
    {
        writeln!(out, "{:.12e},{:.12e},{:.12e}", r.sigma_x, r.phase_error, r.reflected_prob)?;
    }
    out.flush()
}

#[cfg(test)]
mod tests
{
    use super::*;

    #[test]
    fn grid_invariants()
    {
        assert!(Grid1D::new(0.0, 10.0, 512, 0.001).is_err());
        assert!(Grid1D::new(0.0, 100.0, 1025, 0.001).is_err()); // dx ~ 0.098
        assert!(Grid1D::new(0.0, 40.0, 2001, 1.0).is_err()); // moves > dx
        assert!(Grid1D::with_spacing(-50.0, 50.0, 0.02, 0.9).is_ok());
    }

    #[test]
    fn packet_invariants()
    {
        assert!(GaussianPacket::new(0.0, 4.0).is_err());
        let g = Grid1D::with_spacing(-100.0, 100.0, 0.02, 0.9).unwrap();
        let p = GaussianPacket::new(-50.0, 10.0).unwrap();
        assert!(check_inputs(&g, None, &p).is_ok());
        let p = GaussianPacket::new(-55.0, 10.0).unwrap();
        assert!(check_inputs(&g, None, &p).is_err());
    }

    #[test]
    fn sampled_packet_is_normalized()
    {
        let g = Grid1D::with_spacing(-100.0, 100.0, 0.02, 0.9).unwrap();
        let psi = GaussianPacket::new(0.0, 10.0).unwrap().sample(&g);
        assert!((norm(&psi, g.dx()) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn cell_averaged_potential_integrates_to_area()
    {
        let g = Grid1D::with_spacing(-30.0, 30.0, 0.02, 0.9).unwrap();
        let placed = PlacedRegion { region: ScatteringRegion::step(0.5, 0.7234).unwrap(), start: 0.013 };
        let area: f64 = placed.sample(&g).iter().sum::<f64>() * g.dx();
        assert!((area - 0.5 * 0.7234).abs() < 1e-12, "{area}");
    }

    #[test]
    fn zero_steps_keeps_unit_norm()
    {
        let g = Grid1D::with_spacing(-100.0, 100.0, 0.02, 0.9).unwrap();
        let p = GaussianPacket::new(-40.0, 10.0).unwrap();
        let h = norm_history(&g, None, &p, 0).unwrap();
        assert_eq!(h.norms.len(), 1);
        assert!((h.norms[0] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn free_packet_is_its_own_reference()
    {
        let sigma = 10.0;
        let g = Grid1D::with_spacing(-13.0 * sigma, 13.0 * sigma, DEFAULT_DX, DEFAULT_COURANT).unwrap();
        let p = GaussianPacket::new(-6.0 * sigma, sigma).unwrap();
        let steps = (12.0 * sigma / (GROUP_VELOCITY * g.dt)).ceil() as usize;
        let r = evolve(&g, None, &p, steps).unwrap();
        assert!((r.transmitted_prob - 1.0).abs() < 1e-8, "{r:?}");
        assert!(r.transmitted_phase.abs() < 1e-6);
        assert!(r.max_norm_drift < 1e-8);
    }

    #[test]
    fn resonant_step_matches_plane_wave_phase()
    {
        let c = check_gate(PhaseKind::Step, 0.5, 1, 10.0, 1.0).unwrap();
        assert!(c.relative_phase_error() < 0.05, "{c:?}");
        assert!(c.result.reflected_prob < 1e-3);
        assert!(c.result.max_norm_drift < 1e-8);
        let off = check_gate(PhaseKind::Step, 0.5, 1, 10.0, 1.25).unwrap();
        assert!(off.result.reflected_prob > c.result.reflected_prob);
    }

    #[test]
    fn running_off_the_grid_is_an_error()
    {
        let g = Grid1D::with_spacing(-60.0, 60.0, 0.02, 0.9).unwrap();
        let p = GaussianPacket::new(-5.0, 10.0);
        assert!(p.is_ok());
        let p = GaussianPacket::new(0.0, 10.0).unwrap();
        let steps = (80.0 / (GROUP_VELOCITY * g.dt)) as usize;
        assert!(matches!(evolve(&g, None, &p, steps), Err(Error::BoundaryReached { .. })));
    }
}
