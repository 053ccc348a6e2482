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

//! C ABI over `flyqc`.
//!
//! Circuits and states cross the boundary as opaque handles that the caller
//! releases with the matching `_free` function. Every fallible call returns a
//! [`FlyqcStatus`]; on failure a description is available from
//! [`flyqc_last_error`] on the same thread until the next failing call.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::{c_char, size_t};

use flyqc::compiler::{route_lnn, verify_equivalence};
use flyqc::device::{calibrate_phase, coupler_unitary, phase, resonance_width, tunneling_suppression, CouplerSpec, PhaseKind};
use flyqc::simulator::{bell_network, measure_all};
use flyqc::{Circuit, Error, StateVector};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlyqcStatus
{
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    /// Well-formed request that names invalid qubits, gates or sizes.
    Semantic = 4,
    /// Physical parameter outside its domain.
    Domain = 5,
    /// Calibration target outside the achievable phase range.
    Unreachable = 6,
    /// Output buffer too small.
    BufferTooSmall = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlyqcPhaseKind
{
    Step = 0,
    Well = 1,
}

impl From<FlyqcPhaseKind> for PhaseKind
{
    fn from(k: FlyqcPhaseKind) -> Self
    {
        match k
        {
            FlyqcPhaseKind::Step => PhaseKind::Step,
            FlyqcPhaseKind::Well => PhaseKind::Well,
        }
    }
}

/// Opaque circuit handle.
pub struct FlyqcCircuit
{
    inner: Circuit,
}

/// Opaque state-vector handle.
pub struct FlyqcState
{
    inner: StateVector,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String)
{
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs were removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn fail(status: FlyqcStatus, message: impl Into<String>) -> FlyqcStatus
{
    set_error(message.into());
    status
}

fn from_error(e: Error) -> FlyqcStatus
{
    let status = match &e
    {
        Error::Parse { .. } => FlyqcStatus::Parse,
        Error::UnreachableTarget { .. } => FlyqcStatus::Unreachable,
        Error::Domain(_) | Error::NumericalDegeneracy | Error::NotAHadamard { .. } => FlyqcStatus::Domain,
        _ => FlyqcStatus::Semantic,
    };
    fail(status, e.to_string())
}

fn guard(body: impl FnOnce() -> Result<(), FlyqcStatus>) -> FlyqcStatus
{
    match catch_unwind(AssertUnwindSafe(body))
    {
        Ok(Ok(())) => FlyqcStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(FlyqcStatus::Panic, "internal panic"),
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, FlyqcStatus>
{
    if p.is_null()
    {
        return Err(fail(FlyqcStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(FlyqcStatus::InvalidUtf8, "string argument is not UTF-8"))
}

unsafe fn ref_arg<'a, T>(p: *const T) -> Result<&'a T, FlyqcStatus>
{
    p.as_ref().ok_or_else(|| fail(FlyqcStatus::NullPointer, "null handle"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), FlyqcStatus>
{
    if out.is_null()
    {
        return Err(fail(FlyqcStatus::NullPointer, "null output pointer"));
    }
    out.write(value);
    Ok(())
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn flyqc_last_error() -> *const c_char
{
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses the circuit text format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn flyqc_circuit_parse(text: *const c_char, out: *mut *mut FlyqcCircuit) -> FlyqcStatus
{
    guard(|| {
        let c = Circuit::parse(str_arg(text)?).map_err(from_error)?;
        write_out(out, Box::into_raw(Box::new(FlyqcCircuit { inner: c })))
    })
}

/// Builds the Bell network for a two-character basis label ("00".."11").
///
/// # Safety
/// `label` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn flyqc_bell_network(label: *const c_char, out: *mut *mut FlyqcCircuit) -> FlyqcStatus
{
    guard(|| {
        let c = bell_network(str_arg(label)?).map_err(from_error)?;
        write_out(out, Box::into_raw(Box::new(FlyqcCircuit { inner: c })))
    })
}

/// # Safety
/// `circuit` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn flyqc_circuit_free(circuit: *mut FlyqcCircuit)
{
    if !circuit.is_null()
    {
        drop(Box::from_raw(circuit));
    }
}

/// Number of qubits, or 0 for a NULL handle.
///
/// # Safety
/// `circuit` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn flyqc_circuit_num_qubits(circuit: *const FlyqcCircuit) -> size_t
{
    circuit.as_ref().map_or(0, |c| c.inner.num_qubits())
}

/// Renders the circuit as text; free the result with [`flyqc_string_free`].
///
/// # Safety
/// `circuit` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn flyqc_circuit_to_text(circuit: *const FlyqcCircuit, out: *mut *mut c_char) -> FlyqcStatus
{
    guard(|| {
        let text = ref_arg(circuit)?.inner.to_text().map_err(from_error)?;
        let c = CString::new(text).map_err(|_| fail(FlyqcStatus::Semantic, "text contains NUL"))?;
        write_out(out, c.into_raw())
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn flyqc_string_free(s: *mut c_char)
{
    if !s.is_null()
    {
        drop(CString::from_raw(s));
    }
}

/// Lowers to `{h, p, cp}` on nearest-neighbour wires.
///
/// # Safety
/// `circuit` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn flyqc_circuit_route(circuit: *const FlyqcCircuit, out: *mut *mut FlyqcCircuit) -> FlyqcStatus
{
    guard(|| {
        let routed = route_lnn(&ref_arg(circuit)?.inner).map_err(from_error)?;
        write_out(out, Box::into_raw(Box::new(FlyqcCircuit { inner: routed })))
    })
}

/// Operator-norm distance between two circuits after global-phase alignment.
///
/// # Safety
/// `a`, `b` must be live handles; `distance` and `equivalent` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn flyqc_circuit_verify(
    a: *const FlyqcCircuit,
    b: *const FlyqcCircuit,
    tol: f64,
    distance: *mut f64,
    equivalent: *mut bool,
) -> FlyqcStatus
{
    guard(|| {
        let eq = verify_equivalence(&ref_arg(a)?.inner, &ref_arg(b)?.inner, tol).map_err(from_error)?;
        write_out(distance, eq.distance)?;
        write_out(equivalent, eq.equivalent)
    })
}

/// Runs the circuit from the all-zero register. Non-adjacent two-qubit
/// gates are rejected; route first.
///
/// # Safety
/// `circuit` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn flyqc_state_run(circuit: *const FlyqcCircuit, out: *mut *mut FlyqcState) -> FlyqcStatus
{
    guard(|| {
        let c = &ref_arg(circuit)?.inner;
        let s = StateVector::init_register(c.num_qubits()).and_then(|s| s.run(c)).map_err(from_error)?;
        write_out(out, Box::into_raw(Box::new(FlyqcState { inner: s })))
    })
}

/// # Safety
/// `state` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn flyqc_state_free(state: *mut FlyqcState)
{
    if !state.is_null()
    {
        drop(Box::from_raw(state));
    }
}

/// Number of amplitudes (2^n), or 0 for a NULL handle.
///
/// # Safety
/// `state` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn flyqc_state_len(state: *const FlyqcState) -> size_t
{
    state.as_ref().map_or(0, |s| s.inner.amplitudes().len())
}

/// Copies amplitudes into `re` and `im`, indexed with qubit 0 as the most
/// significant bit.
///
/// # Safety
/// `re` and `im` must each point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn flyqc_state_amplitudes(
    state: *const FlyqcState,
    re: *mut f64,
    im: *mut f64,
    len: size_t,
) -> FlyqcStatus
{
    guard(|| {
        let amps = ref_arg(state)?.inner.amplitudes();
        if re.is_null() || im.is_null()
        {
            return Err(fail(FlyqcStatus::NullPointer, "null output buffer"));
        }
        if len < amps.len()
        {
            return Err(fail(FlyqcStatus::BufferTooSmall, format!("need {} entries, got {len}", amps.len())));
        }
        for (i, a) in amps.iter().enumerate()
        {
            re.add(i).write(a.re);
            im.add(i).write(a.im);
        }
        Ok(())
    })
}

/// Samples `shots` projective measurements with a seeded generator and
/// writes the count of each basis index into `counts`.
///
/// # Safety
/// `counts` must point to `len` writable integers.
#[no_mangle]
pub unsafe extern "C" fn flyqc_state_measure(
    state: *const FlyqcState,
    shots: u64,
    seed: u64,
    counts: *mut u64,
    len: size_t,
) -> FlyqcStatus
{
    guard(|| {
        let s = &ref_arg(state)?.inner;
        let dim = s.amplitudes().len();
        if counts.is_null()
        {
            return Err(fail(FlyqcStatus::NullPointer, "null output buffer"));
        }
        if len < dim
        {
            return Err(fail(FlyqcStatus::BufferTooSmall, format!("need {dim} entries, got {len}")));
        }
        let record = measure_all(s, shots, seed).map_err(from_error)?;
        for i in 0..dim
        {
            counts.add(i).write(record.count(&s.label(i)));
        }
        Ok(())
    })
}

/// Plane-wave phase of a step or well gate of order `n`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn flyqc_phase(kind: FlyqcPhaseKind, v_over_e: f64, n: u32, out: *mut f64) -> FlyqcStatus
{
    guard(|| write_out(out, phase(kind.into(), v_over_e, n).map_err(from_error)?))
}

/// Reflectionless width of a step or well gate, in wavelengths.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn flyqc_resonance_width(kind: FlyqcPhaseKind, v_over_e: f64, n: u32, out: *mut f64) -> FlyqcStatus
{
    guard(|| write_out(out, resonance_width(v_over_e, kind.into(), n).map_err(from_error)?))
}

/// Potential ratio V/E producing `target` radians.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn flyqc_calibrate_phase(kind: FlyqcPhaseKind, target: f64, n: u32, out: *mut f64) -> FlyqcStatus
{
    guard(|| write_out(out, calibrate_phase(target, kind.into(), n).map_err(from_error)?))
}

/// Directional-coupler unitary, row-major into `re[4]` and `im[4]`.
///
/// # Safety
/// `re` and `im` must each point to 4 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn flyqc_coupler_unitary(
    coupling_length: f64,
    transfer_length: f64,
    re: *mut f64,
    im: *mut f64,
) -> FlyqcStatus
{
    guard(|| {
        let spec = CouplerSpec::new(coupling_length, transfer_length).map_err(from_error)?;
        if re.is_null() || im.is_null()
        {
            return Err(fail(FlyqcStatus::NullPointer, "null output buffer"));
        }
        for (i, z) in coupler_unitary(&spec).iter().enumerate()
        {
            re.add(i).write(z.re);
            im.add(i).write(z.im);
        }
        Ok(())
    })
}

/// Evanescent suppression factor of a barrier of `length` wavelengths.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn flyqc_tunneling_suppression(length: f64, v_over_e: f64, out: *mut f64) -> FlyqcStatus
{
    guard(|| write_out(out, tunneling_suppression(length, v_over_e).map_err(from_error)?))
}
