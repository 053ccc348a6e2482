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

//! Small dense complex matrices and the state-vector update kernel.

use ndarray::Array2;
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMatrix = Array2<C64>;

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub const I: C64 = C64 { re: 0.0, im: 1.0 };

/// `e^{iφ}`, with `φ` reduced to `(−π, π]` first so that angles differing
/// by whole turns give the same value to round-off of the reduction.
pub fn cis(phi: f64) -> C64
{
    C64::from_polar(1.0, wrap_angle(phi))
}

pub fn identity(dim: usize) -> CMatrix
{
    CMatrix::eye(dim)
}

/// Conjugate transpose.
pub fn adjoint(m: &CMatrix) -> CMatrix
{
    m.t().mapv(|z| z.conj())
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix
{
    let (ar, ac) = a.dim();
    let (br, bc) = b.dim();
    CMatrix::from_shape_fn((ar * br, ac * bc), |(i, j)| a[(i / br, j / bc)] * b[(i % br, j % bc)])
}

pub fn diag(entries: &[C64]) -> CMatrix
{
    let mut m = CMatrix::zeros((entries.len(), entries.len()));
    for (i, &z) in entries.iter().enumerate()
    {
        m[(i, i)] = z;
    }
    m
}

/// Largest absolute entry of `a − b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64
{
    assert_eq!(a.dim(), b.dim());
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Largest entry of `U·U† − I`.
pub fn unitarity_deviation(m: &CMatrix) -> f64
{
    let (r, c) = m.dim();
    if r != c
    {
        return f64::INFINITY;
    }
    max_abs_diff(&m.dot(&adjoint(m)), &identity(r))
}

/// Global phase `θ` that best aligns `b` onto `a` (`a ≈ e^{iθ} b`) in the
/// Frobenius sense, together with the max-entry distance after alignment.
pub fn phase_aligned_distance(a: &CMatrix, b: &CMatrix) -> (f64, f64)
{
    let overlap: C64 = b.iter().zip(a.iter()).map(|(y, x)| y.conj() * x).sum();
    let theta = if overlap.norm() > 0.0 { overlap.arg() } else { 0.0 };
    let rot = cis(theta);
    let dist = a.iter().zip(b.iter()).map(|(x, y)| (x - rot * y).norm()).fold(0.0, f64::max);
    (theta, dist)
}

/// Wraps an angle into `(−π, π]`.
pub fn wrap_angle(phi: f64) -> f64
{
    use std::f64::consts::PI;
    let mut x = phi.rem_euclid(2.0 * PI);
    if x > PI
    {
        x -= 2.0 * PI;
    }
    x
}

/// Applies a `2^k × 2^k` gate to the qubits `targets` of an `n`-qubit
/// amplitude vector in place. Qubit 0 is the most significant bit of the
/// basis index, and `targets[0]` is the most significant bit of the gate's
/// local index. Targets need not be adjacent.
pub fn apply_in_place(amps: &mut [C64], num_qubits: usize, gate: &CMatrix, targets: &[usize])
{
    let k = targets.len();
    let local = 1usize << k;
    debug_assert_eq!(gate.dim(), (local, local));
    debug_assert_eq!(amps.len(), 1 << num_qubits);

    let masks: Vec<usize> = targets.iter().map(|&q| 1usize << (num_qubits - 1 - q)).collect();
    let all_mask: usize = masks.iter().fold(0, |acc, m| acc | m);
    let offsets: Vec<usize> = (0..local)
        .map(|j| {
            masks.iter().enumerate()
                .filter(|(bit, _)| (j >> (k - 1 - bit)) & 1 == 1)
                .fold(0, |acc, (_, m)| acc | m)
        })
        .collect();

    let mut buf = vec![ZERO; local];
    for base in 0..amps.len()
    {
        if base & all_mask != 0
        {
            continue;
        }
        for (j, off) in offsets.iter().enumerate()
        {
            buf[j] = amps[base | off];
        }
        for (row, off) in offsets.iter().enumerate()
        {
            amps[base | off] = (0..local).map(|col| gate[(row, col)] * buf[col]).sum();
        }
    }
}

#[cfg(test)]
mod tests
{
    use super::*;
    use ndarray::array;

    #[test]
    fn kron_of_identities_is_identity()
    {
        assert_eq!(kron(&identity(2), &identity(4)), identity(8));
    }

    #[test]
    fn wrap_angle_range()
    {
        use std::f64::consts::PI;
        assert!((wrap_angle(3.0 * PI) - PI).abs() < 1e-12);
        assert!((wrap_angle(-PI) - PI).abs() < 1e-12);
        assert!((wrap_angle(0.5) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn kernel_matches_kronecker_embedding()
    {
        let x: CMatrix = array![[ZERO, ONE], [ONE, ZERO]];
        let y: CMatrix = array![[ZERO, -I], [I, ZERO]];
        let xy = kron(&x, &y);
        let mut amps: Vec<C64> = (0..8).map(|i| C64::new(i as f64, -(i as f64) * 0.5)).collect();
        let orig = ndarray::Array1::from(amps.clone());
        // gate on qubits (0, 2) with identity on qubit 1
        apply_in_place(&mut amps, 3, &xy, &[0, 2]);
        let full = kron(&kron(&x, &identity(2)), &y);
        let expect = full.dot(&orig);
        for (a, b) in amps.iter().zip(expect.iter())
        {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn phase_alignment_recovers_global_phase()
    {
        let a = diag(&[ONE, I]);
        let b = a.mapv(|z| z * cis(-0.7));
        let (theta, dist) = phase_aligned_distance(&a, &b);
        assert!((theta - 0.7).abs() < 1e-14);
        assert!(dist < 1e-15);
    }
}
