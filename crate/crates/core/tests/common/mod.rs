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

//! Seeded generators shared by the integration tests.

#![allow(dead_code)]

use flyqc::circuit::Instruction;
use flyqc::linalg::{CMatrix, C64};
use flyqc::Circuit;
use ndarray::Array2;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn rng(seed: u64) -> ChaCha20Rng
{
    ChaCha20Rng::seed_from_u64(seed)
}

/// Haar-distributed unitary: Gram–Schmidt on a complex Gaussian matrix.
pub fn random_unitary(rng: &mut impl Rng, dim: usize) -> CMatrix
{
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(dim);
    for _ in 0..dim
    {
        let mut v: Vec<C64> = (0..dim)
            .map(|_| C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
            .collect();
        for u in &cols
        {
            let proj: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            v.iter_mut().zip(u).for_each(|(x, a)| *x -= proj * a);
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|x| *x /= norm);
        cols.push(v);
    }
    Array2::from_shape_fn((dim, dim), |(r, c)| cols[c][r])
}

fn two_distinct(rng: &mut impl Rng, n: usize) -> (usize, usize)
{
    let a = rng.gen_range(0..n);
    let mut b = rng.gen_range(0..n - 1);
    if b >= a
    {
        b += 1;
    }
    (a, b)
}

/// Random circuit over every instruction kind, including explicit-matrix
/// gates and two-qubit gates on distant wires.
pub fn random_circuit(rng: &mut impl Rng, num_qubits: usize, len: usize) -> Circuit
{
    let mut c = Circuit::new(num_qubits).unwrap();
    for _ in 0..len
    {
        let phi = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        let choice = if num_qubits == 1 { rng.gen_range(0..3) } else { rng.gen_range(0..8) };
        let q = rng.gen_range(0..num_qubits);
        let inst = match choice
        {
            0 => Instruction::H(q),
            1 => Instruction::P(q, phi),
            2 => Instruction::U1(q, random_unitary(rng, 2)),
            _ =>
            {
                let (a, b) = two_distinct(rng, num_qubits);
                match choice
                {
                    3 | 4 => Instruction::Cp(a, b, phi),
                    5 => Instruction::Cnot { control: a, target: b },
                    6 => Instruction::Swap(a, b),
                    _ => Instruction::U2(a, b, random_unitary(rng, 4)),
                }
            }
        };
        c.push(inst).unwrap();
    }
    c
}

/// Random normalized amplitude vector.
pub fn random_amplitudes(rng: &mut impl Rng, dim: usize) -> Vec<C64>
{
    let mut v: Vec<C64> =
        (0..dim).map(|_| C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|z| *z /= norm);
    v
}
