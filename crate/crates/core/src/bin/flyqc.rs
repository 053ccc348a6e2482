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

//! `flyqc` command-line front end.
//!
//! Exit codes: 0 success, 2 parse or usage error, 3 semantic error or
//! unreachable target, 4 unwritable output, 5 route verification failed,
//! 6 gate battery failed, 7 coherence budget exceeded.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use flyqc::compiler::{is_lnn_native, route_lnn_with_stats, verify_equivalence, RouteStats};
use flyqc::device::{
    calibrate_phase, double_barrier_transmission, phase_curve, find_resonances, phase, resonance_width, write_csv,
    EnergyScan, PhaseKind, ScatteringRegion,
};
use flyqc::simulator::{bell_network, coherence_budget, measure_all, GateLengths};
use flyqc::units::lambda_to_um;
use flyqc::wavepacket::{check_gate, GateCheck};
use flyqc::{Circuit, Error, StateVector};

const EXIT_PARSE: u8 = 2;
const EXIT_SEMANTIC: u8 = 3;
const EXIT_UNWRITABLE: u8 = 4;
const EXIT_VERIFY: u8 = 5;
const EXIT_BATTERY: u8 = 6;
const EXIT_BUDGET: u8 = 7;

#[derive(Parser)]
#[command(name = "flyqc", version, about = "Flying-qubit circuit simulator and gate designer")]
struct Cli
{
    #[command(subcommand)]
    command: Command,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Electron energy in meV; adds µm lengths to reports.
    #[arg(long, global = true)]
    energy_mev: Option<f64>,

    /// Effective mass as a multiple of the free electron mass.
    #[arg(long, global = true, default_value_t = 1.0)]
    mstar: f64,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format
{
    Json,
    Text,
}

#[derive(Copy, Clone, ValueEnum)]
enum KindArg
{
    Step,
    Well,
}

impl From<KindArg> for PhaseKind
{
    fn from(k: KindArg) -> Self
    {
        match k
        {
            KindArg::Step => PhaseKind::Step,
            KindArg::Well => PhaseKind::Well,
        }
    }
}

#[derive(Subcommand)]
enum Command
{
    /// Simulate a circuit file and optionally sample measurements.
    Run
    {
        circuit: PathBuf,
        #[arg(long, default_value_t = 0)]
        shots: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Reject two-qubit gates on non-adjacent wires instead of routing them.
        #[arg(long)]
        strict: bool,
    },
    /// Emit the phase-versus-V/E curve as CSV.
    Curves
    {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 0.0)]
        v_min: f64,
        #[arg(long)]
        v_max: f64,
        #[arg(long, default_value_t = 101)]
        samples: usize,
    },
    /// Find the potential and width that produce a target phase.
    Calibrate
    {
        #[arg(long, allow_hyphen_values = true)]
        target: f64,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    /// Lower a circuit to {h, p, cp} on nearest-neighbour wires.
    Route
    {
        circuit: PathBuf,
        /// Compare input and output unitaries (circuits up to 4 qubits).
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Run the wave-packet battery against the plane-wave phase formulas.
    VerifyGates
    {
        /// Only σ = 10λ, with a 5% phase tolerance.
        #[arg(long)]
        quick: bool,
        /// Relative phase tolerance (default 2%, 5% with --quick).
        #[arg(long)]
        tol: Option<f64>,
        /// Scale applied to the designed gate widths, to exercise failure rows.
        #[arg(long, default_value_t = 1.0)]
        width_scale: f64,
    },
    /// Compare the longest electron path with the coherence length.
    Budget
    {
        circuit: PathBuf,
        /// Phase coherence length in µm.
        #[arg(long, default_value_t = 30.0)]
        lphi: f64,
        #[arg(long, default_value_t = 0.14)]
        len_h: f64,
        #[arg(long, default_value_t = 0.1)]
        len_p: f64,
        #[arg(long, default_value_t = 1.0)]
        len_cp: f64,
    },
    /// Transmission of a symmetric double barrier as CSV, or its resonances.
    DoubleBarrier
    {
        #[arg(long)]
        v: f64,
        #[arg(long)]
        width: f64,
        #[arg(long)]
        gap: f64,
        #[arg(long, default_value_t = 0.01)]
        e_min: f64,
        #[arg(long)]
        e_max: f64,
        #[arg(long, default_value_t = 2048)]
        points: usize,
        /// Report refined resonance energies instead of the curve.
        #[arg(long)]
        resonances: bool,
    },
    /// Built-in demonstrations.
    Demo
    {
        #[command(subcommand)]
        which: Demo,
    },
}

#[derive(Subcommand)]
enum Demo
{
    /// Bell-state network for one basis input.
    Bell
    {
        #[arg(long, default_value = "00")]
        input: String,
        #[arg(long, default_value_t = 0)]
        shots: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the circuit in text format instead of running it.
        #[arg(long)]
        circuit: bool,
    },
}

#[derive(Debug)]
enum Failure
{
    Lib(Error),
    Read(PathBuf, io::Error),
    Write(Option<PathBuf>, io::Error),
    Exit(u8),
}

impl From<Error> for Failure
{
    fn from(e: Error) -> Self
    {
        Failure::Lib(e)
    }
}

type CliResult = std::result::Result<(), Failure>;

fn main() -> ExitCode
{
    let cli = Cli::parse();
    match dispatch(&cli)
    {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Exit(code)) => ExitCode::from(code),
        Err(Failure::Lib(e)) =>
        {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_parse() { EXIT_PARSE } else { EXIT_SEMANTIC })
        }
        Err(Failure::Read(path, e)) =>
        {
            eprintln!("error: cannot read {}: {e}", path.display());
            ExitCode::from(EXIT_PARSE)
        }
        Err(Failure::Write(path, e)) =>
        {
            let target = path.map(|p| p.display().to_string()).unwrap_or_else(|| "stdout".into());
            eprintln!("error: cannot write {target}: {e}");
            ExitCode::from(EXIT_UNWRITABLE)
        }
    }
}

fn dispatch(cli: &Cli) -> CliResult
{
    match &cli.command
    {
        Command::Run { circuit, shots, seed, strict } =>
        {
            let c = load_circuit(circuit)?;
            run(cli, &c, *shots, *seed, *strict)
        }
        Command::Curves { kind, n, v_min, v_max, samples } =>
        {
            let rows = phase_curve((*kind).into(), *n, *v_min, *v_max, *samples)?;
            emit_with(cli, |w| write_csv(w, "v_over_e,phase_rad", &rows))
        }
        Command::Calibrate { target, kind, n } => calibrate(cli, *target, (*kind).into(), *n),
        Command::Route { circuit, verify, tol } => route(cli, &load_circuit(circuit)?, *verify, *tol),
        Command::VerifyGates { quick, tol, width_scale } => verify_gates(cli, *quick, *tol, *width_scale),
        Command::Budget { circuit, lphi, len_h, len_p, len_cp } =>
        {
            let lengths = GateLengths { h: Some(*len_h), p: Some(*len_p), cp: Some(*len_cp), ..Default::default() };
            budget(cli, &load_circuit(circuit)?, &lengths, *lphi)
        }
        Command::DoubleBarrier { v, width, gap, e_min, e_max, points, resonances } =>
        {
            let region = ScatteringRegion::double_barrier(*v, *width, *gap)?;
            let scan = EnergyScan::new(*e_min, *e_max, *points);
            if *resonances
            {
                let found = find_resonances(&region, &scan, usize::MAX)?;
                let text = found.iter().map(|e| format!("{e:.12e}\n")).collect::<String>();
                emit(cli, &serde_json::json!({ "resonances": found }), text)
            }
            else
            {
                let rows = double_barrier_transmission(&region, &scan)?;
                emit_with(cli, |w| write_csv(w, "energy_ratio,transmission", &rows))
            }
        }
        Command::Demo { which: Demo::Bell { input, shots, seed, circuit } } =>
        {
            let c = bell_network(input)?;
            if *circuit
            {
                let text = c.to_text()?;
                emit_with(cli, |w| w.write_all(text.as_bytes()))
            }
            else
            {
                run(cli, &c, *shots, *seed, true)
            }
        }
    }
}

fn load_circuit(path: &Path) -> std::result::Result<Circuit, Failure>
{
    let text = fs::read_to_string(path).map_err(|e| Failure::Read(path.to_path_buf(), e))?;
    Ok(Circuit::parse(&text)?)
}

fn emit_with(cli: &Cli, body: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> CliResult
{
    let result = match &cli.out
    {
        Some(path) => fs::File::create(path).and_then(|f| {
            let mut w = io::BufWriter::new(f);
            body(&mut w)?;
            w.flush()
        }),
        None =>
        {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            body(&mut lock).and_then(|_| lock.flush())
        }
    };
    result.map_err(|e| Failure::Write(cli.out.clone(), e))
}

fn emit<T: Serialize>(cli: &Cli, report: &T, text: String) -> CliResult
{
    let body = match cli.format
    {
        Format::Json => serde_json::to_string_pretty(report).expect("reports serialize") + "\n",
        Format::Text => text,
    };
    emit_with(cli, |w| w.write_all(body.as_bytes()))
}

#[derive(Serialize)]
struct RunReport
{
    num_qubits: usize,
    routed: bool,
    amplitudes: Vec<[f64; 2]>,
    probabilities: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    measurement: Option<flyqc::simulator::MeasurementRecord>,
}

fn run(cli: &Cli, circuit: &Circuit, shots: u64, seed: u64, strict: bool) -> CliResult
{
    let adjacent = circuit.instructions().iter().all(|i| match i.targets()[..]
    {
        [a, b] => a.abs_diff(b) == 1,
        _ => true,
    });
    let routed = !strict && !adjacent;
    let circuit = if routed { route_lnn_with_stats(circuit)?.0 } else { circuit.clone() };
    let state = StateVector::init_register(circuit.num_qubits())?.run(&circuit)?;
    let measurement = if shots > 0 { Some(measure_all(&state, shots, seed)?) } else { None };

    let mut text = String::new();
    for (i, a) in state.amplitudes().iter().enumerate()
    {
        text += &format!("|{}> {:+.12e} {:+.12e}i\n", state.label(i), a.re, a.im);
    }
    if let Some(m) = &measurement
    {
        text += &format!("shots {} seed {}\n", m.shots, m.seed);
        for (label, count) in &m.counts
        {
            text += &format!("{label} {count}\n");
        }
    }
    let report = RunReport {
        num_qubits: state.num_qubits(),
        routed,
        amplitudes: state.to_pairs(),
        probabilities: state.probabilities(),
        measurement,
    };
    emit(cli, &report, text)
}

#[derive(Serialize)]
struct CalibrationReport
{
    kind: String,
    n: u32,
    target: f64,
    v_over_e: f64,
    resonance_width: f64,
    achieved_phase: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    resonance_width_um: Option<f64>,
}

fn calibrate(cli: &Cli, target: f64, kind: PhaseKind, n: u32) -> CliResult
{
    let v = calibrate_phase(target, kind, n)?;
    let width = resonance_width(v, kind, n)?;
    let report = CalibrationReport {
        kind: kind.to_string(),
        n,
        target,
        v_over_e: v,
        resonance_width: width,
        achieved_phase: phase(kind, v, n)?,
        resonance_width_um: cli.energy_mev.map(|e| lambda_to_um(width, e, cli.mstar)),
    };
    let mut text = format!(
        "{} n={} target {:.12} rad\nv_over_e {:.12}\nresonance_width {:.12} lambda\nachieved_phase {:.12} rad\n",
        report.kind, n, target, v, width, report.achieved_phase
    );
    if let Some(um) = report.resonance_width_um
    {
        text += &format!("resonance_width {um:.6} um\n");
    }
    emit(cli, &report, text)
}

#[derive(Serialize)]
struct RouteReport
{
    #[serde(flatten)]
    stats: RouteStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    distance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    equivalent: Option<bool>,
}

fn route(cli: &Cli, circuit: &Circuit, verify: bool, tol: f64) -> CliResult
{
    let (routed, stats) = route_lnn_with_stats(circuit)?;
    debug_assert!(is_lnn_native(&routed));
    let text = routed.to_text()?;
    emit_with(cli, |w| w.write_all(text.as_bytes()))?;

    let mut report = RouteReport { stats, distance: None, equivalent: None };
    if verify
    {
        if circuit.num_qubits() <= 4
        {
            let eq = verify_equivalence(circuit, &routed, tol)?;
            report.distance = Some(eq.distance);
            report.equivalent = Some(eq.equivalent);
        }
        else
        {
            eprintln!("note: verification skipped for {} qubits (limit 4)", circuit.num_qubits());
        }
    }
    eprintln!("{}", serde_json::to_string(&report).expect("reports serialize"));
    if report.equivalent == Some(false)
    {
        return Err(Failure::Exit(EXIT_VERIFY));
    }
    Ok(())
}

#[derive(Serialize)]
struct BatteryRow
{
    check: String,
    sigma_x: f64,
    value: f64,
    limit: f64,
    pass: bool,
}

/// Plane-wave reference design probed by the battery.
const STEP_V: f64 = 0.5;
const WELL_V: f64 = 3.0;
const REFLECTION_LIMIT: f64 = 1e-3;
const OFF_RESONANCE: f64 = 1.25;

fn verify_gates(cli: &Cli, quick: bool, tol: Option<f64>, width_scale: f64) -> CliResult
{
    let tol = tol.unwrap_or(if quick { 0.05 } else { 0.02 });
    let sigmas: &[f64] = if quick { &[10.0] } else { &[10.0, 20.0, 30.0, 40.0] };
    let probe = if quick { 10.0 } else { 30.0 };

    let step: Vec<GateCheck> =
        sigmas.iter().map(|&s| check_gate(PhaseKind::Step, STEP_V, 1, s, width_scale)).collect::<Result<_, _>>()?;
    let well = check_gate(PhaseKind::Well, WELL_V, 1, probe, width_scale)?;
    let on = match step.iter().find(|c| c.sigma == probe)
    {
        Some(c) if width_scale == 1.0 => *c,
        _ => check_gate(PhaseKind::Step, STEP_V, 1, probe, 1.0)?,
    };
    let off = check_gate(PhaseKind::Step, STEP_V, 1, probe, OFF_RESONANCE)?;

    let mut rows = Vec::new();
    let row = |check: &str, sigma_x, value, limit, pass| BatteryRow { check: check.into(), sigma_x, value, limit, pass };
    for c in step.iter().chain(std::iter::once(&well))
    {
        let name = if std::ptr::eq(c, &well) { "well" } else { "step" };
        let rel = c.relative_phase_error();
        rows.push(row(&format!("{name} phase"), c.sigma, rel, tol, rel <= tol));
        let r = c.result.reflected_prob;
        rows.push(row(&format!("{name} reflection"), c.sigma, r, REFLECTION_LIMIT, r < REFLECTION_LIMIT));
        let drift = c.result.max_norm_drift;
        rows.push(row(&format!("{name} norm drift"), c.sigma, drift, 1e-8, drift <= 1e-8));
    }
    for pair in step.windows(2)
    {
        let (a, b) = (pair[0].result.reflected_prob, pair[1].result.reflected_prob);
        rows.push(row("reflection non-increasing in sigma", pair[1].sigma, b, a, b <= a));
    }
    let (r_on, r_off) = (on.result.reflected_prob, off.result.reflected_prob);
    rows.push(row("off-resonance reflects more", probe, r_off, r_on, r_off > r_on));

    let mut text = format!("{:<38} {:>8} {:>14} {:>14}  result\n", "check", "sigma_x", "value", "limit");
    for r in &rows
    {
        text += &format!(
            "{:<38} {:>8.1} {:>14.6e} {:>14.6e}  {}\n",
            r.check,
            r.sigma_x,
            r.value,
            r.limit,
            if r.pass { "PASS" } else { "FAIL" }
        );
    }
    let all = rows.iter().all(|r| r.pass);
    emit(cli, &serde_json::json!({ "pass": all, "rows": rows }), text)?;
    if all
    {
        Ok(())
    }
    else
    {
        Err(Failure::Exit(EXIT_BATTERY))
    }
}

fn budget(cli: &Cli, circuit: &Circuit, lengths: &GateLengths, l_phi: f64) -> CliResult
{
    // composite gates are costed through their {h, p, cp} lowering
    let native = if is_lnn_native(circuit) { circuit.clone() } else { route_lnn_with_stats(circuit)?.0 };
    let report = coherence_budget(&native, lengths, l_phi)?;
    let mut text = String::new();
    for (q, len) in report.per_qubit.iter().enumerate()
    {
        text += &format!("qubit {q} path {len:.6} um\n");
    }
    text += &format!(
        "max_path {:.6} um, l_phi {:.6} um: {}\n",
        report.max_path,
        report.l_phi,
        if report.ok { "ok" } else { "over budget" }
    );
    emit(cli, &report, text)?;
    if report.ok
    {
        Ok(())
    }
    else
    {
        Err(Failure::Exit(EXIT_BUDGET))
    }
}

