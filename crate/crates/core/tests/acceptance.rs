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

//! Acceptance battery. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use flyqc::compiler::{decompose_1q, route_lnn, verify_equivalence};
use flyqc::device::{
    coupler_unitary, find_resonances, phase, phase_step, phase_well, resonance_width, scatter, CouplerSpec,
    EnergyScan, PhaseKind, ScatteringRegion,
};
use flyqc::gates::{cnot, cnot_reversed, controlled_phase, exchange_permutation, hadamard};
use flyqc::linalg::{identity, max_abs_diff, wrap_angle, C64};
use flyqc::simulator::{bell_network, coherence_budget, measure_all, run_circuit, GateLengths};
use flyqc::wavepacket::check_gate;
use rand::Rng;

mod common;

struct Outcome
{
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome
{
    Outcome { pass, detail }
}

fn oracle_agreement() -> Outcome
{
    let mut rng = common::rng(0);
    let mut worst: f64 = 0.0;
    for i in 0..1000
    {
        let kind = if i % 2 == 0 { PhaseKind::Step } else { PhaseKind::Well };
        let v = match kind
        {
            PhaseKind::Step => rng.gen_range(0.0..0.99),
            PhaseKind::Well => rng.gen_range(0.0..50.0),
        };
        let n = rng.gen_range(1..=4u32);
        let w = resonance_width(v, kind, n).unwrap();
        let region = match kind
        {
            PhaseKind::Step => ScatteringRegion::step(v, w),
            PhaseKind::Well => ScatteringRegion::well(v, w),
        }
        .unwrap();
        let t = scatter(&region, 1.0).unwrap();
        worst = worst.max(wrap_angle(t.phase() - phase(kind, v, n).unwrap()).abs());
    }
    outcome(worst <= 1e-9, format!("1000 pairs, max |Δφ| = {worst:.2e} rad"))
}

fn asymptotes() -> Outcome
{
    let step = phase_step(1.0 - 1e-6, 1).unwrap();
    let well = phase_well(1e9, 1).unwrap();
    let gap = (well - PI).abs();
    outcome(step.abs() > 100.0 && gap <= 1e-4, format!("step φ(1−1e-6) = {step:.1} rad, |φ_well(1e9) − π| = {gap:.2e}"))
}

fn coupler() -> Outcome
{
    let half = coupler_unitary(&CouplerSpec::new(0.5, 1.0).unwrap());
    let split = half.iter().map(|z| (z.norm() - FRAC_1_SQRT_2).abs()).fold(0.0, f64::max);
    let full = coupler_unitary(&CouplerSpec::new(1.0, 1.0).unwrap());
    let transfer = (full[(0, 1)].norm() - 1.0).abs().max((full[(1, 0)].norm() - 1.0).abs());
    outcome(split <= 1e-12 && transfer <= 1e-12, format!("50/50 deviation {split:.1e}, full transfer deviation {transfer:.1e}"))
}

fn gate_algebra() -> Outcome
{
    let cp = max_abs_diff(controlled_phase(2.0 * PI).matrix(), &identity(4));
    let h = hadamard();
    let hh = max_abs_diff(&h.matrix().dot(h.matrix()), &identity(2));
    let three = cnot().matrix().dot(&cnot_reversed().matrix().dot(cnot().matrix()));
    let swap = max_abs_diff(&three, &exchange_permutation());
    outcome(cp <= 1e-15 && hh <= 1e-15 && swap <= 1e-13, format!("|CP(2π) − I| = {cp:.1e}, |H² − I| = {hh:.1e}, |CNOT³ − SWAP| = {swap:.1e}"))
}

fn bell() -> Outcome
{
    let states: Vec<_> = ["00", "01", "10", "11"].iter().map(|l| run_circuit(&bell_network(l).unwrap()).unwrap()).collect();
    let mut overlap: f64 = 0.0;
    let mut eig: f64 = 0.0;
    for (i, a) in states.iter().enumerate()
    {
        for b in &states[i + 1..]
        {
            overlap = overlap.max(a.inner(b).norm());
        }
        for q in 0..2
        {
            let [l0, l1] = a.reduced_eigenvalues(q).unwrap();
            eig = eig.max((l0 - 0.5).abs()).max((l1 - 0.5).abs());
        }
    }
    let record = measure_all(&states[0], 10_000, 0).unwrap();
    let (c00, c11) = (record.count("00"), record.count("11"));
    let only = c00 + c11 == 10_000;
    let balanced = (4700..=5300).contains(&c00) && (4700..=5300).contains(&c11);
    outcome(
        overlap <= 1e-10 && eig <= 1e-9 && only && balanced,
        format!("max overlap {overlap:.1e}, eigenvalue deviation {eig:.1e}, counts 00:{c00} 11:{c11}"),
    )
}

fn routing() -> Outcome
{
    let mut rng = common::rng(0);
    let mut worst: f64 = 0.0;
    for _ in 0..50
    {
        let n = rng.gen_range(1..=4);
        let len = rng.gen_range(0..=12);
        let input = common::random_circuit(&mut rng, n, len);
        let routed = route_lnn(&input).unwrap();
        worst = worst.max(verify_equivalence(&input, &routed, 1e-9).unwrap().distance);
    }
    outcome(worst <= 1e-9, format!("50 circuits, max distance {worst:.2e}"))
}

fn decomposition() -> Outcome
{
    let mut rng = common::rng(0);
    let mut worst: f64 = 0.0;
    for _ in 0..1000
    {
        let u = common::random_unitary(&mut rng, 2);
        let d = decompose_1q(&u).unwrap();
        let rebuilt = d.matrix().mapv(|z| z * C64::from_polar(1.0, d.global_phase));
        worst = worst.max(d.residual).max(max_abs_diff(&rebuilt, &u));
    }
    outcome(worst <= 1e-9, format!("1000 unitaries, max residual {worst:.2e}"))
}

fn wave_packet() -> Outcome
{
    let c = check_gate(PhaseKind::Step, 0.5, 1, 30.0, 1.0).unwrap();
    let rel = c.relative_phase_error();
    let r = c.result;
    outcome(
        rel <= 0.02 && r.reflected_prob < 1e-3 && r.max_norm_drift <= 1e-8,
        format!(
            "φ = {:.5} vs {:.5} ({:.2}%), R = {:.1e}, norm drift {:.1e}",
            r.transmitted_phase,
            c.expected_phase,
            100.0 * rel,
            r.reflected_prob,
            r.max_norm_drift
        ),
    )
}

fn double_barrier() -> Outcome
{
    let region = ScatteringRegion::double_barrier(5.0, 0.1, 1.0).unwrap();
    let peaks = find_resonances(&region, &EnergyScan::with_default_density(0.01, 4.99), usize::MAX).unwrap();
    let best = peaks.iter().map(|&e| scatter(&region, e).unwrap().transmission_prob).fold(0.0, f64::max);
    outcome(!peaks.is_empty() && best >= 1.0 - 1e-6, format!("{} resonances, best |1 − T| = {:.1e}", peaks.len(), (1.0 - best).abs()))
}

fn budget() -> Outcome
{
    let lengths = GateLengths::device_defaults();
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for label in ["00", "01", "10", "11"]
    {
        let report = coherence_budget(&bell_network(label).unwrap(), &lengths, 30.0).unwrap();
        worst = worst.max(report.max_path);
        ok &= report.ok;
    }
    outcome(ok && worst < 5.0, format!("longest path {worst:.2} µm against 30 µm"))
}

type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn main() -> ExitCode
{
    let criteria: [Criterion; 10] = [
        ("closed-form phase vs transfer matrix", oracle_agreement, Some(Duration::from_secs(5))),
        ("phase asymptotes", asymptotes, None),
        ("coupler splitting and transfer", coupler, None),
        ("gate algebra", gate_algebra, None),
        ("Bell network", bell, Some(Duration::from_secs(1))),
        ("routing soundness", routing, Some(Duration::from_secs(30))),
        ("single-qubit decomposition", decomposition, Some(Duration::from_secs(5))),
        ("wave-packet phase and reflection", wave_packet, Some(Duration::from_secs(120))),
        ("double-barrier resonance", double_barrier, Some(Duration::from_secs(10))),
        ("coherence budget", budget, None),
    ];

    let mut failures = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate()
    {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let in_time = limit.is_none_or(|l| elapsed < l);
        let pass = result.pass && in_time;
        failures += usize::from(!pass);
        let budget = limit.map(|l| format!(" (limit {} s)", l.as_secs())).unwrap_or_default();
        println!(
            "{} {:>2} {name}: {} [{:.2} s{budget}]",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            result.detail,
            elapsed.as_secs_f64()
        );
    }
    if failures == 0
    {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    }
    else
    {
        println!("acceptance: {failures} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
