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

//! Compilation to the native gate set `{H, P(φ), CP(φ)}` on a line of wires.
//!
//! Two-qubit gates can only act on neighbouring wires. A gate between
//! distant qubits is executed by swapping the farther qubit down next to the
//! nearer one, applying the gate and swapping back, each SWAP being three
//! CNOTs and each CNOT being `H·CP(π)·H` on the target.

use std::f64::consts::PI;

use ndarray::array;

use crate::circuit::{Circuit, GateKind, Instruction};
use crate::error::{Error, Result};
use crate::gates::{hadamard, phase_gate};
use crate::linalg::{
    apply_in_place, cis, identity, phase_aligned_distance, unitarity_deviation, wrap_angle, CMatrix, C64, ONE, ZERO,
};

/// Largest register for which full unitaries are built.
pub const MAX_UNITARY_QUBITS: usize = 10;

/// Input unitarity tolerance for [`decompose_1q`].
pub const DECOMPOSE_INPUT_TOL: f64 = 1e-10;

/// Phases smaller than this (after wrapping) are dropped from emitted code.
const ANGLE_EPS: f64 = 1e-14;

/// Native single-qubit operation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NativeOp
{
    H,
    P(f64),
}

/// `u ≈ e^{i·global_phase} · (product of sequence)`, sequence in time order.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition
{
    pub sequence: Vec<NativeOp>,
    pub global_phase: f64,
    /// Max-entry distance between `u` and the phase-corrected product.
    pub residual: f64,
}

impl Decomposition
{
    pub fn instructions(&self, qubit: usize) -> Vec<Instruction>
    {
        self.sequence
            .iter()
            .map(|op| match *op
            {
                NativeOp::H => Instruction::H(qubit),
                NativeOp::P(phi) => Instruction::P(qubit, phi),
            })
            .collect()
    }

    /// Matrix product of the sequence, without the global phase.
    pub fn matrix(&self) -> CMatrix
    {
        self.sequence.iter().fold(identity(2), |acc, op| {
            let g = match *op
            {
                NativeOp::H => hadamard(),
                NativeOp::P(phi) => phase_gate(phi),
            };
            g.matrix().dot(&acc)
        })
    }
}

fn su2_normalize(u: &CMatrix) -> (CMatrix, f64)
{
    let det = u[(0, 0)] * u[(1, 1)] - u[(0, 1)] * u[(1, 0)];
    let root = det.sqrt();
    (u.mapv(|z| z / root), root.arg())
}

/// Writes a single-qubit unitary as `P(a)·H·P(b)·H·P(c)` up to global phase.
///
/// Uses `P(θ) = e^{iθ/2} Rz(θ)` and `H·P(θ)·H = e^{iθ/2} Rx(θ)`, so the
/// angles are those of the z-x-z Euler form `Rz(a)·Rx(b)·Rz(c)` of `u`.
pub fn decompose_1q(u: &CMatrix) -> Result<Decomposition>
{
    if u.dim() != (2, 2)
    {
        return Err(Error::domain(format!("expected a 2x2 matrix, got {:?}", u.dim())));
    }
    let dev = unitarity_deviation(u);
    if !(dev <= DECOMPOSE_INPUT_TOL)
    {
        return Err(Error::NotUnitary(dev));
    }
    let (v, _) = su2_normalize(u);
    // v = [[cos(b/2) e^{-i(a+c)/2}, ...], [-i sin(b/2) e^{i(a-c)/2}, ...]]
    let (c0, s0) = (v[(0, 0)], C64::new(0.0, 1.0) * v[(1, 0)]);
    let sum = if c0.norm() > 1e-12 { -2.0 * c0.arg() } else { 0.0 };
    let diff = if s0.norm() > 1e-12 { 2.0 * s0.arg() } else { 0.0 };
    let b = 2.0 * s0.norm().atan2(c0.norm());
    let a = 0.5 * (sum + diff);
    let c = 0.5 * (sum - diff);

    let mut sequence = Vec::with_capacity(5);
    let push_p = |seq: &mut Vec<NativeOp>, phi: f64| {
        let w = wrap_angle(phi);
        if w.abs() > ANGLE_EPS
        {
            seq.push(NativeOp::P(w));
        }
    };
    if wrap_angle(b).abs() <= ANGLE_EPS
    {
        push_p(&mut sequence, a + c);
    }
    else
    {
        push_p(&mut sequence, c);
        sequence.push(NativeOp::H);
        push_p(&mut sequence, b);
        sequence.push(NativeOp::H);
        push_p(&mut sequence, a);
    }

    let mut d = Decomposition { sequence, global_phase: 0.0, residual: 0.0 };
    let (theta, residual) = phase_aligned_distance(u, &d.matrix());
    d.global_phase = wrap_angle(theta);
    d.residual = residual;
    Ok(d)
}

/// Full `2^n × 2^n` unitary of a circuit, including its global phase.
/// Two-qubit gates may be non-adjacent here.
pub fn circuit_unitary(circuit: &Circuit) -> Result<CMatrix>
{
    let n = circuit.num_qubits();
    if n > MAX_UNITARY_QUBITS
    {
        return Err(Error::QubitCount(n, MAX_UNITARY_QUBITS));
    }
    let dim = 1usize << n;
    let gates: Vec<(CMatrix, Vec<usize>)> = circuit
        .instructions()
        .iter()
        .map(|inst| inst.gate().map(|g| (g.into_matrix(), inst.targets())))
        .collect::<Result<_>>()?;
    let phase = cis(circuit.global_phase());

    let mut out = CMatrix::zeros((dim, dim));
    let mut column = vec![ZERO; dim];
    for j in 0..dim
    {
        column.iter_mut().for_each(|z| *z = ZERO);
        column[j] = ONE;
        for (m, targets) in &gates
        {
            apply_in_place(&mut column, n, m, targets);
        }
        for (i, z) in column.iter().enumerate()
        {
            out[(i, j)] = phase * z;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Equivalence
{
    pub equivalent: bool,
    /// Max-entry distance after removing the best global phase.
    pub distance: f64,
    /// Phase `θ` with `U_a ≈ e^{iθ} U_b`.
    pub phase: f64,
}

/// Compares two circuits as unitaries up to a global phase. The phase is
/// the Frobenius-optimal one, `arg tr(U_b† U_a)`.
pub fn verify_equivalence(a: &Circuit, b: &Circuit, tol: f64) -> Result<Equivalence>
{
    if a.num_qubits() != b.num_qubits()
    {
        return Err(Error::DimensionMismatch(a.num_qubits(), b.num_qubits()));
    }
    let (phase, distance) = phase_aligned_distance(&circuit_unitary(a)?, &circuit_unitary(b)?);
    Ok(Equivalence { equivalent: distance <= tol, distance, phase: wrap_angle(phase) })
}

/// Counts gathered while routing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize)]
pub struct RouteStats
{
    /// SWAPs added to bring distant qubits together (before lowering).
    pub swaps_inserted: usize,
    /// Two-qubit instructions in the input.
    pub input_two_qubit: usize,
    /// Two-qubit (CP) instructions in the output.
    pub output_two_qubit: usize,
    pub output_len: usize,
}

/// Emits native instructions into a circuit while tracking global phase.
struct Emitter
{
    out: Circuit,
    phase: f64,
}

impl Emitter
{
    fn push(&mut self, inst: Instruction) -> Result<()>
    {
        self.out.push(inst).map(|_| ())
    }

    fn p(&mut self, q: usize, phi: f64) -> Result<()>
    {
        let w = wrap_angle(phi);
        if w.abs() > ANGLE_EPS
        {
            self.push(Instruction::P(q, w))?;
        }
        Ok(())
    }

    fn cp(&mut self, a: usize, b: usize, phi: f64) -> Result<()>
    {
        let w = wrap_angle(phi);
        if w.abs() > ANGLE_EPS
        {
            self.push(Instruction::Cp(a, b, w))?;
        }
        Ok(())
    }

    fn one_qubit(&mut self, q: usize, u: &CMatrix) -> Result<()>
    {
        let d = decompose_1q(u)?;
        for inst in d.instructions(q)
        {
            self.push(inst)?;
        }
        self.phase += d.global_phase;
        Ok(())
    }

    fn x(&mut self, q: usize) -> Result<()>
    {
        self.push(Instruction::H(q))?;
        self.push(Instruction::P(q, PI))?;
        self.push(Instruction::H(q))
    }

    fn cnot(&mut self, control: usize, target: usize) -> Result<()>
    {
        self.push(Instruction::H(target))?;
        self.push(Instruction::Cp(control, target, PI))?;
        self.push(Instruction::H(target))
    }

    fn swap(&mut self, a: usize, b: usize) -> Result<()>
    {
        self.cnot(a, b)?;
        self.cnot(b, a)?;
        self.cnot(a, b)
    }

    /// Lowers a two-qubit instruction whose qubits are now on adjacent wires
    /// `a`, `b` (in the instruction's own order).
    fn adjacent_two_qubit(&mut self, inst: &Instruction, a: usize, b: usize) -> Result<()>
    {
        match inst
        {
            Instruction::Cp(_, _, phi) => self.push(Instruction::Cp(a, b, *phi)),
            Instruction::Cnot { .. } => self.cnot(a, b),
            Instruction::Swap(..) => self.swap(a, b),
            Instruction::U2(_, _, m) => self.two_qubit_unitary(a, b, m),
            _ => unreachable!("single-qubit instruction routed as two-qubit"),
        }
    }

    /// Controlled-`w` with `control` required to equal `value`.
    fn controlled(&mut self, control: usize, value: bool, target: usize, w: &CMatrix) -> Result<()>
    {
        if !value
        {
            self.x(control)?;
        }
        // w = e^{iα} Rz(β) Ry(γ) Rz(δ); A·X·B·X·C = e^{-iα} w with A·B·C = I
        let (v, alpha) = su2_normalize(w);
        let gamma = 2.0 * v[(1, 0)].norm().atan2(v[(0, 0)].norm());
        let sum = if v[(0, 0)].norm() > 1e-12 { -2.0 * v[(0, 0)].arg() } else { 0.0 };
        let diff = if v[(1, 0)].norm() > 1e-12 { 2.0 * v[(1, 0)].arg() } else { 0.0 };
        let beta = 0.5 * (sum + diff);
        let delta = 0.5 * (sum - diff);

        let a = rz(beta).dot(&ry(0.5 * gamma));
        let b = ry(-0.5 * gamma).dot(&rz(-0.5 * (delta + beta)));
        let c = rz(0.5 * (delta - beta));
        self.one_qubit(target, &c)?;
        self.cnot(control, target)?;
        self.one_qubit(target, &b)?;
        self.cnot(control, target)?;
        self.one_qubit(target, &a)?;
        self.p(control, alpha)?;
        if !value
        {
            self.x(control)?;
        }
        Ok(())
    }

    /// Two-level unitary `w` on local basis states `p < q` of the pair
    /// `(a, b)`, `a` being the more significant bit.
    fn two_level(&mut self, a: usize, b: usize, p: usize, q: usize, w: &CMatrix) -> Result<()>
    {
        let bit_a = |i: usize| (i >> 1) & 1 == 1;
        let bit_b = |i: usize| i & 1 == 1;
        match p ^ q
        {
            1 => self.controlled(a, bit_a(p), b, w),
            2 => self.controlled(b, bit_b(p), a, w),
            _ =>
            {
                // CNOT(a→b) maps the pair to one differing in bit a only
                self.cnot(a, b)?;
                self.controlled(b, bit_b(p), a, w)?;
                self.cnot(a, b)
            }
        }
    }

    /// Arbitrary two-qubit unitary by Givens elimination into two-level
    /// factors and a diagonal remainder.
    fn two_qubit_unitary(&mut self, a: usize, b: usize, u: &CMatrix) -> Result<()>
    {
        let dev = unitarity_deviation(u);
        if !(dev <= DECOMPOSE_INPUT_TOL)
        {
            return Err(Error::NotUnitary(dev));
        }
        let mut m = u.clone();
        let mut factors: Vec<(usize, usize, CMatrix)> = Vec::new();
        for j in 0..3
        {
            for i in (j + 1..4).rev()
            {
                let (x, y) = (m[(j, j)], m[(i, j)]);
                if y.norm() < 1e-15
                {
                    continue;
                }
                let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
                let g = array![[x.conj() / r, y.conj() / r], [-y / r, x / r]];
                for col in 0..4
                {
                    let (mj, mi) = (m[(j, col)], m[(i, col)]);
                    m[(j, col)] = g[(0, 0)] * mj + g[(0, 1)] * mi;
                    m[(i, col)] = g[(1, 0)] * mj + g[(1, 1)] * mi;
                }
                factors.push((j, i, g));
            }
        }
        // u = G₁†…G_k† D: D acts first, then G_k†, …, G₁†.
        let theta: Vec<f64> = (0..4).map(|k| m[(k, k)].arg()).collect();
        self.phase += theta[0];
        self.p(b, theta[1] - theta[0])?;
        self.p(a, theta[2] - theta[0])?;
        self.cp(a, b, theta[3] - theta[2] - theta[1] + theta[0])?;
        for (p, q, g) in factors.iter().rev()
        {
            let gd = g.t().mapv(|z| z.conj());
            self.two_level(a, b, *p, *q, &gd)?;
        }
        Ok(())
    }
}

fn rz(theta: f64) -> CMatrix
{
    array![[cis(-0.5 * theta), ZERO], [ZERO, cis(0.5 * theta)]]
}

fn ry(theta: f64) -> CMatrix
{
    let (s, c) = (0.5 * theta).sin_cos();
    array![[C64::new(c, 0.0), C64::new(-s, 0.0)], [C64::new(s, 0.0), C64::new(c, 0.0)]]
}

/// Routes and lowers a circuit to `{H, P, CP}` with adjacent two-qubit
/// targets.
pub fn route_lnn(circuit: &Circuit) -> Result<Circuit>
{
    route_lnn_with_stats(circuit).map(|(c, _)| c)
}

/// [`route_lnn`] plus gate counts.
pub fn route_lnn_with_stats(circuit: &Circuit) -> Result<(Circuit, RouteStats)>
{
    let mut em = Emitter { out: Circuit::new(circuit.num_qubits())?, phase: circuit.global_phase() };
    let mut stats = RouteStats { input_two_qubit: circuit.two_qubit_count(), ..Default::default() };

    for (position, inst) in circuit.instructions().iter().enumerate()
    {
        let wrap = |e| Error::Instruction { position, source: Box::new(e) };
        match inst
        {
            Instruction::H(q) => em.push(Instruction::H(*q)),
            Instruction::P(q, phi) => em.push(Instruction::P(*q, *phi)),
            Instruction::U1(q, m) => em.one_qubit(*q, m),
            _ =>
            {
                let t = inst.targets();
                let (x, y) = (t[0], t[1]);
                let (lo, hi) = (x.min(y), x.max(y));
                // move the higher-index qubit down to lo + 1 and back afterwards
                let chain: Vec<usize> = (lo + 1..hi).rev().collect();
                stats.swaps_inserted += 2 * chain.len();
                let route = |q: usize| if q == hi { lo + 1 } else { q };
                chain.iter().try_for_each(|&p| em.swap(p, p + 1))
                    .and_then(|_| em.adjacent_two_qubit(inst, route(x), route(y)))
                    .and_then(|_| chain.iter().rev().try_for_each(|&p| em.swap(p, p + 1)))
            }
        }
        .map_err(wrap)?;
    }

    let mut out = em.out;
    out.set_global_phase(wrap_angle(em.phase));
    stats.output_two_qubit = out.count_kind(GateKind::Cp);
    stats.output_len = out.len();
    Ok((out, stats))
}

/// True when every instruction is native and every two-qubit gate acts on
/// neighbouring wires.
pub fn is_lnn_native(circuit: &Circuit) -> bool
{
    circuit.instructions().iter().all(|inst| match inst
    {
        Instruction::H(_) | Instruction::P(..) => true,
        Instruction::Cp(a, b, _) => a.abs_diff(*b) == 1,
        _ => false,
    })
}

#[cfg(test)]
mod tests
{
    use super::*;
    use crate::linalg::{diag, kron, max_abs_diff};

    #[test]
    fn identity_decomposes_to_nothing()
    {
        let d = decompose_1q(&identity(2)).unwrap();
        assert!(d.sequence.is_empty());
        assert_eq!(d.global_phase, 0.0);
        assert!(d.residual < 1e-15);
    }

    #[test]
    fn phase_gate_decomposes_to_itself()
    {
        let d = decompose_1q(phase_gate(1.234).matrix()).unwrap();
        assert_eq!(d.sequence.len(), 1);
        match d.sequence[0]
        {
            NativeOp::P(phi) => assert!((phi - 1.234).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
        assert!(d.global_phase.abs() < 1e-12);
    }

    #[test]
    fn hadamard_and_pauli_decompose()
    {
        for u in [hadamard().into_matrix(), array![[ZERO, ONE], [ONE, ZERO]], diag(&[ONE, C64::new(0.0, 1.0)])]
        {
            let d = decompose_1q(&u).unwrap();
            assert!(d.residual < 1e-12, "{u:?} {d:?}");
        }
    }

    #[test]
    fn rejects_non_unitary()
    {
        assert!(matches!(decompose_1q(&array![[ONE, ONE], [ZERO, ONE]]), Err(Error::NotUnitary(_))));
    }

    #[test]
    fn unitary_of_single_hadamard()
    {
        let c = Circuit::parse("qubits 2\nh 0\n").unwrap();
        let u = circuit_unitary(&c).unwrap();
        assert!(max_abs_diff(&u, &kron(hadamard().matrix(), &identity(2))) < 1e-15);
        assert!(max_abs_diff(&circuit_unitary(&Circuit::new(3).unwrap()).unwrap(), &identity(8)) == 0.0);
        assert!(circuit_unitary(&Circuit::new(11).unwrap()).is_err());
    }

    #[test]
    fn equivalence_examples()
    {
        let c = Circuit::parse("qubits 2\nh 0\ncp 0 1 0.4\np 1 0.2\n").unwrap();
        assert_eq!(verify_equivalence(&c, &c, 1e-12).unwrap().distance, 0.0);

        let hh = Circuit::parse("qubits 1\nh 0\nh 0\n").unwrap();
        assert!(verify_equivalence(&hh, &Circuit::new(1).unwrap(), 1e-12).unwrap().equivalent);

        let mut shifted = c.clone();
        shifted.set_global_phase(0.9);
        let eq = verify_equivalence(&shifted, &c, 1e-12).unwrap();
        assert!(eq.equivalent);
        assert!((eq.phase - 0.9).abs() < 1e-12);

        assert!(verify_equivalence(&c, &Circuit::new(3).unwrap(), 1e-9).is_err());
    }

    #[test]
    fn adjacent_gate_needs_no_swap()
    {
        let c = Circuit::parse("qubits 3\ncp 1 2 3.141592653589793\n").unwrap();
        let (r, stats) = route_lnn_with_stats(&c).unwrap();
        assert_eq!(stats.swaps_inserted, 0);
        assert_eq!(r.two_qubit_count(), c.two_qubit_count());
        assert_eq!(r, c);
    }

    #[test]
    fn distance_three_inserts_four_swaps()
    {
        let c = Circuit::parse("qubits 4\ncp 0 3 0.7\n").unwrap();
        let (r, stats) = route_lnn_with_stats(&c).unwrap();
        assert_eq!(stats.swaps_inserted, 4);
        // each swap is 3 CNOTs, each CNOT one CP
        assert_eq!(stats.output_two_qubit, 4 * 3 + 1);
        assert!(is_lnn_native(&r));
        assert!(verify_equivalence(&c, &r, 1e-9).unwrap().equivalent);
    }

    #[test]
    fn explicit_two_qubit_unitary_lowers()
    {
        // a fixed dense unitary: exp(i·H) for a hermitian H via the Cayley form
        let h = array![
            [C64::new(0.3, 0.0), C64::new(0.1, 0.2), C64::new(-0.4, 0.1), C64::new(0.0, 0.5)],
            [C64::new(0.1, -0.2), C64::new(-0.7, 0.0), C64::new(0.2, 0.0), C64::new(0.3, -0.3)],
            [C64::new(-0.4, -0.1), C64::new(0.2, 0.0), C64::new(0.5, 0.0), C64::new(0.1, 0.1)],
            [C64::new(0.0, -0.5), C64::new(0.3, 0.3), C64::new(0.1, -0.1), C64::new(0.9, 0.0)]
        ];
        let i4 = identity(4);
        let num = &i4 + &h.mapv(|z| z * C64::new(0.0, 1.0));
        let den = &i4 - &h.mapv(|z| z * C64::new(0.0, 1.0));
        let u = num.dot(&invert4(&den));
        assert!(unitarity_deviation(&u) < 1e-12);

        for (a, b) in [(0, 1), (1, 0), (0, 2), (2, 0)]
        {
            let mut c = Circuit::new(3).unwrap();
            c.push(Instruction::U2(a, b, u.clone())).unwrap();
            let r = route_lnn(&c).unwrap();
            assert!(is_lnn_native(&r));
            let eq = verify_equivalence(&c, &r, 1e-9).unwrap();
            assert!(eq.equivalent, "({a},{b}): {eq:?}");
            assert!(eq.phase.abs() < 1e-9, "global phase should be carried: {eq:?}");
        }
    }

    fn invert4(m: &CMatrix) -> CMatrix
    {
        // Gauss-Jordan, test-only
        let n = 4;
        let mut a = m.clone();
        let mut inv = identity(n);
        for col in 0..n
        {
            let piv = (col..n).max_by(|&i, &j| a[(i, col)].norm().total_cmp(&a[(j, col)].norm())).unwrap();
            for k in 0..n
            {
                a.swap((col, k), (piv, k));
                inv.swap((col, k), (piv, k));
            }
            let d = a[(col, col)];
            for k in 0..n
            {
                a[(col, k)] /= d;
                inv[(col, k)] /= d;
            }
            for row in 0..n
            {
                if row != col
                {
                    let f = a[(row, col)];
                    for k in 0..n
                    {
                        let (ac, ic) = (a[(col, k)], inv[(col, k)]);
                        a[(row, k)] -= f * ac;
                        inv[(row, k)] -= f * ic;
                    }
                }
            }
        }
        inv
    }
}
