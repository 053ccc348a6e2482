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

//! Dual-rail state-vector simulation.
//!
//! A qubit is one electron shared between a 0-rail and a 1-rail, so the
//! logical basis state `|b₀b₁…⟩` says which rail of each qubit carries the
//! electron. Basis indices put qubit 0 in the most significant bit.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, GateKind, Instruction};
use crate::error::{Error, Result};
use crate::gates::GateUnitary;
use crate::linalg::{apply_in_place, C64, ONE, ZERO};

/// Largest register the simulator accepts.
pub const MAX_QUBITS: usize = 20;

const NORM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector
{
    num_qubits: usize,
    amplitudes: Vec<C64>,
}

impl StateVector
{
    /// `|0…0⟩`: one electron launched into the 0-rail of every qubit.
    pub fn init_register(num_qubits: usize) -> Result<Self>
    {
        if !(1..=MAX_QUBITS).contains(&num_qubits)
        {
            return Err(Error::QubitCount(num_qubits, MAX_QUBITS));
        }
        let mut amplitudes = vec![ZERO; 1 << num_qubits];
        amplitudes[0] = ONE;
        Ok(StateVector { num_qubits, amplitudes })
    }

    /// Computational basis state with the given index.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self>
    {
        let mut s = Self::init_register(num_qubits)?;
        if index >= s.amplitudes.len()
        {
            return Err(Error::domain(format!("basis index {index} out of range")));
        }
        s.amplitudes[0] = ZERO;
        s.amplitudes[index] = ONE;
        Ok(s)
    }

    /// Wraps normalized amplitudes.
    pub fn from_amplitudes(amplitudes: Vec<C64>) -> Result<Self>
    {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two()
        {
            return Err(Error::domain(format!("amplitude count {len} is not a power of two >= 2")));
        }
        let num_qubits = len.trailing_zeros() as usize;
        if num_qubits > MAX_QUBITS
        {
            return Err(Error::QubitCount(num_qubits, MAX_QUBITS));
        }
        let s = StateVector { num_qubits, amplitudes };
        let norm = s.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOL
        {
            return Err(Error::domain(format!("state is not normalized (norm² = {norm})")));
        }
        Ok(s)
    }

    pub fn num_qubits(&self) -> usize
    {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[C64]
    {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64
    {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64>
    {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &StateVector) -> C64
    {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    /// Probability of finding the electron of each qubit in its 0-rail and
    /// in its 1-rail.
    pub fn rail_occupancy(&self) -> Vec<[f64; 2]>
    {
        let n = self.num_qubits;
        let mut occ = vec![[0.0; 2]; n];
        for (idx, a) in self.amplitudes.iter().enumerate()
        {
            let p = a.norm_sqr();
            for (q, slot) in occ.iter_mut().enumerate()
            {
                slot[(idx >> (n - 1 - q)) & 1] += p;
            }
        }
        occ
    }

    /// Eigenvalues (ascending) of the reduced density matrix of one qubit.
    pub fn reduced_eigenvalues(&self, qubit: usize) -> Result<[f64; 2]>
    {
        self.check_index(qubit)?;
        let mask = 1usize << (self.num_qubits - 1 - qubit);
        let (mut p0, mut p1, mut coh) = (0.0, 0.0, ZERO);
        for idx in 0..self.amplitudes.len()
        {
            if idx & mask != 0
            {
                continue;
            }
            let a0 = self.amplitudes[idx];
            let a1 = self.amplitudes[idx | mask];
            p0 += a0.norm_sqr();
            p1 += a1.norm_sqr();
            coh += a0 * a1.conj();
        }
        let mean = 0.5 * (p0 + p1);
        let half_gap = (0.25 * (p0 - p1).powi(2) + coh.norm_sqr()).sqrt();
        Ok([mean - half_gap, mean + half_gap])
    }

    /// Von Neumann entropy (bits) of one qubit's reduced state.
    pub fn entanglement_entropy(&self, qubit: usize) -> Result<f64>
    {
        let ev = self.reduced_eigenvalues(qubit)?;
        Ok(ev.iter().filter(|&&l| l > 1e-300).map(|&l| -l * l.log2()).sum())
    }

    fn check_index(&self, q: usize) -> Result<()>
    {
        if q >= self.num_qubits
        {
            return Err(Error::QubitIndex { index: q, num_qubits: self.num_qubits });
        }
        Ok(())
    }

    fn check_targets(&self, arity: usize, targets: &[usize]) -> Result<()>
    {
        if targets.len() != arity
        {
            return Err(Error::ArityMismatch { expected: arity, got: targets.len() });
        }
        for &q in targets
        {
            self.check_index(q)?;
        }
        if let [a, b] = *targets
        {
            if a == b
            {
                return Err(Error::RepeatedTarget(a));
            }
            if a.abs_diff(b) != 1
            {
                return Err(Error::NonAdjacent(a, b));
            }
        }
        Ok(())
    }

    /// Applies `gate` to `targets` in place. Two-qubit gates must act on
    /// neighbouring wires.
    pub fn apply_mut(&mut self, gate: &GateUnitary, targets: &[usize]) -> Result<()>
    {
        self.check_targets(gate.arity(), targets)?;
        apply_in_place(&mut self.amplitudes, self.num_qubits, gate.matrix(), targets);
        Ok(())
    }

    /// Returns the state after applying `gate` to `targets`.
    pub fn apply_gate(&self, gate: &GateUnitary, targets: &[usize]) -> Result<StateVector>
    {
        let mut next = self.clone();
        next.apply_mut(gate, targets)?;
        Ok(next)
    }

    /// Runs `circuit` starting from this state.
    pub fn run(&self, circuit: &Circuit) -> Result<StateVector>
    {
        if circuit.num_qubits() != self.num_qubits
        {
            return Err(Error::DimensionMismatch(self.num_qubits, circuit.num_qubits()));
        }
        let mut state = self.clone();
        for (position, inst) in circuit.instructions().iter().enumerate()
        {
            let wrap = |e| Error::Instruction { position, source: Box::new(e) };
            let gate = inst.gate().map_err(wrap)?;
            state.apply_mut(&gate, &inst.targets()).map_err(wrap)?;
        }
        if circuit.global_phase() != 0.0
        {
            let g = C64::from_polar(1.0, circuit.global_phase());
            state.amplitudes.iter_mut().for_each(|a| *a *= g);
        }
        Ok(state)
    }

    /// Bitstring label of a basis index, qubit 0 first.
    pub fn label(&self, index: usize) -> String
    {
        format!("{:0width$b}", index, width = self.num_qubits)
    }

    /// Amplitudes as `[re, im]` pairs in basis order.
    pub fn to_pairs(&self) -> Vec<[f64; 2]>
    {
        self.amplitudes.iter().map(|a| [a.re, a.im]).collect()
    }

    pub fn to_json(&self) -> String
    {
        serde_json::to_string(&self.to_pairs()).expect("amplitudes serialize")
    }

    pub fn from_json(text: &str) -> Result<Self>
    {
        let pairs: Vec<[f64; 2]> =
            serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })?;
        Self::from_amplitudes(pairs.into_iter().map(|[re, im]| C64::new(re, im)).collect())
    }
}

/// Runs `circuit` from `|0…0⟩`.
pub fn run_circuit(circuit: &Circuit) -> Result<StateVector>
{
    StateVector::init_register(circuit.num_qubits())?.run(circuit)
}

/// Bell-state network on two qubits `a = 0`, `b = 1`.
///
/// The input label is prepared by rail swaps (`H·P(π)·H`) on the qubits
/// whose bit is 1. Beam splitters on both qubits feed the Coulomb coupler,
/// and a final beam splitter on `b` closes the interferometer, so that the
/// four inputs map to the four Bell states:
/// `00 → Φ⁺`, `01 → Ψ⁺`, `10 → Φ⁻`, `11 → Ψ⁻`.
pub fn bell_network(input: &str) -> Result<Circuit>
{
    let bits: Vec<bool> = match input
    {
        "00" => vec![false, false],
        "01" => vec![false, true],
        "10" => vec![true, false],
        "11" => vec![true, true],
        other => return Err(Error::InvalidLabel(other.to_string())),
    };
    let mut c = Circuit::new(2)?;
    for (q, &bit) in bits.iter().enumerate()
    {
        if bit
        {
            c.push(Instruction::H(q))?;
            c.push(Instruction::P(q, std::f64::consts::PI))?;
            c.push(Instruction::H(q))?;
        }
    }
    c.push(Instruction::H(0))?;
    c.push(Instruction::H(1))?;
    c.push(Instruction::Cp(0, 1, std::f64::consts::PI))?;
    c.push(Instruction::H(1))?;
    Ok(c)
}

/// Outcome histogram of repeated projective measurement of every rail.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasurementRecord
{
    pub shots: u64,
    pub seed: u64,
    pub counts: BTreeMap<String, u64>,
}

impl MeasurementRecord
{
    pub fn count(&self, label: &str) -> u64
    {
        self.counts.get(label).copied().unwrap_or(0)
    }
}

/// Samples `shots` outcomes i.i.d. from `|amplitude|²` with a ChaCha20
/// stream seeded by `seed`.
pub fn measure_all(state: &StateVector, shots: u64, seed: u64) -> Result<MeasurementRecord>
{
    if shots == 0
    {
        return Err(Error::domain("shots must be at least 1"));
    }
    let mut cumulative = Vec::with_capacity(state.amplitudes.len());
    let mut acc = 0.0;
    for a in &state.amplitudes
    {
        acc += a.norm_sqr();
        cumulative.push(acc);
    }
    let total = acc;

    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut hits = vec![0u64; cumulative.len()];
    for _ in 0..shots
    {
        let u = rng.gen::<f64>() * total;
        let idx = cumulative.partition_point(|&c| c <= u).min(cumulative.len() - 1);
        hits[idx] += 1;
    }
    let counts = hits.iter().enumerate().filter(|(_, &h)| h > 0).map(|(i, &h)| (state.label(i), h)).collect();
    Ok(MeasurementRecord { shots, seed, counts })
}

/// Physical wire length of each gate kind in µm.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct GateLengths
{
    pub h: Option<f64>,
    pub p: Option<f64>,
    pub cp: Option<f64>,
    pub cnot: Option<f64>,
    pub swap: Option<f64>,
    pub u1: Option<f64>,
    pub u2: Option<f64>,
}

impl GateLengths
{
    /// 0.14 µm beam splitter, 1.0 µm Coulomb coupler, 0.1 µm phase shifter.
    pub fn device_defaults() -> Self
    {
        GateLengths { h: Some(0.14), p: Some(0.1), cp: Some(1.0), ..Default::default() }
    }

    pub fn get(&self, kind: GateKind) -> Result<f64>
    {
        let v = match kind
        {
            GateKind::H => self.h,
            GateKind::P => self.p,
            GateKind::Cp => self.cp,
            GateKind::Cnot => self.cnot,
            GateKind::Swap => self.swap,
            GateKind::U1 => self.u1,
            GateKind::U2 => self.u2,
        };
        v.ok_or(Error::MissingLength(kind.name()))
    }
}

/// Launch time of each qubit's electron relative to a common clock.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InjectionSchedule
{
    pub launch_offsets: Vec<f64>,
}

impl InjectionSchedule
{
    pub fn simultaneous(num_qubits: usize) -> Self
    {
        InjectionSchedule { launch_offsets: vec![0.0; num_qubits] }
    }
}

/// Arrival of the two electrons at one two-qubit gate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateArrival
{
    pub position: usize,
    pub qubits: [usize; 2],
    /// Wire length each electron has travelled before the gate, in µm.
    pub path_lengths: [f64; 2],
    pub arrival_times: [f64; 2],
    pub mismatch: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyncReport
{
    pub ok: bool,
    pub tolerance: f64,
    pub arrivals: Vec<GateArrival>,
    /// Positions of the gates whose mismatch exceeds the tolerance.
    pub mismatched: Vec<usize>,
}

/// Default arrival-time tolerance for [`synchronization_check`].
pub const SYNC_TOL: f64 = 1e-9;

fn path_walk(circuit: &Circuit, lengths: &GateLengths, mut visit: impl FnMut(usize, &Instruction, &[f64])) -> Result<Vec<f64>>
{
    let mut path = vec![0.0; circuit.num_qubits()];
    for (position, inst) in circuit.instructions().iter().enumerate()
    {
        let len = lengths.get(inst.kind())?;
        visit(position, inst, &path);
        for q in inst.targets()
        {
            path[q] += len;
        }
    }
    Ok(path)
}

/// Checks that the two electrons of every two-qubit gate arrive together,
/// given launch offsets, gate lengths and a common group velocity (µm per
/// time unit).
pub fn synchronization_check(
    schedule: &InjectionSchedule,
    circuit: &Circuit,
    lengths: &GateLengths,
    velocity: f64,
    tolerance: f64,
) -> Result<SyncReport>
{
    if schedule.launch_offsets.len() != circuit.num_qubits()
    {
        return Err(Error::DimensionMismatch(schedule.launch_offsets.len(), circuit.num_qubits()));
    }
    if !(velocity > 0.0) || schedule.launch_offsets.iter().any(|t| !t.is_finite())
    {
        return Err(Error::domain("velocity must be positive and launch offsets finite"));
    }
    let mut arrivals = Vec::new();
    path_walk(circuit, lengths, |position, inst, path| {
        if let [a, b] = inst.targets()[..]
        {
            let t = |q: usize| schedule.launch_offsets[q] + path[q] / velocity;
            let times = [t(a), t(b)];
            arrivals.push(GateArrival {
                position,
                qubits: [a, b],
                path_lengths: [path[a], path[b]],
                arrival_times: times,
                mismatch: (times[0] - times[1]).abs(),
            });
        }
    })?;
    let mismatched: Vec<usize> = arrivals.iter().filter(|a| a.mismatch > tolerance).map(|a| a.position).collect();
    Ok(SyncReport { ok: mismatched.is_empty(), tolerance, arrivals, mismatched })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BudgetReport
{
    /// Longest total gate length traversed by any one electron, µm.
    pub max_path: f64,
    pub per_qubit: Vec<f64>,
    pub l_phi: f64,
    pub ok: bool,
}

/// Compares the longest electron path through the circuit with the phase
/// coherence length `l_phi` (µm).
pub fn coherence_budget(circuit: &Circuit, lengths: &GateLengths, l_phi: f64) -> Result<BudgetReport>
{
    let per_qubit = path_walk(circuit, lengths, |_, _, _| {})?;
    let max_path = per_qubit.iter().copied().fold(0.0, f64::max);
    Ok(BudgetReport { max_path, per_qubit, l_phi, ok: max_path < l_phi })
}
