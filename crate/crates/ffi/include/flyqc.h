#ifndef FLYQC_H
#define FLYQC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FlyqcPhaseKind {
  FLYQC_PHASE_KIND_STEP = 0,
  FLYQC_PHASE_KIND_WELL = 1,
} FlyqcPhaseKind;

typedef enum FlyqcStatus {
  FLYQC_STATUS_OK = 0,
  FLYQC_STATUS_NULL_POINTER = 1,
  FLYQC_STATUS_INVALID_UTF8 = 2,
  FLYQC_STATUS_PARSE = 3,
  /**
   * Well-formed request that names invalid qubits, gates or sizes.
   */
  FLYQC_STATUS_SEMANTIC = 4,
  /**
   * Physical parameter outside its domain.
   */
  FLYQC_STATUS_DOMAIN = 5,
  /**
   * Calibration target outside the achievable phase range.
   */
  FLYQC_STATUS_UNREACHABLE = 6,
  /**
   * Output buffer too small.
   */
  FLYQC_STATUS_BUFFER_TOO_SMALL = 7,
  FLYQC_STATUS_PANIC = 8,
} FlyqcStatus;

/**
 * Opaque circuit handle.
 */
typedef struct FlyqcCircuit FlyqcCircuit;

/**
 * Opaque state-vector handle.
 */
typedef struct FlyqcState FlyqcState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *flyqc_last_error(void);

/**
 * Parses the circuit text format.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum FlyqcStatus flyqc_circuit_parse(const char *text, struct FlyqcCircuit **out);

/**
 * Builds the Bell network for a two-character basis label ("00".."11").
 *
 * # Safety
 * `label` must be a NUL-terminated string and `out` a valid pointer.
 */
enum FlyqcStatus flyqc_bell_network(const char *label, struct FlyqcCircuit **out);

/**
 * # Safety
 * `circuit` must be NULL or a handle from this library not yet freed.
 */
void flyqc_circuit_free(struct FlyqcCircuit *circuit);

/**
 * Number of qubits, or 0 for a NULL handle.
 *
 * # Safety
 * `circuit` must be NULL or a live handle.
 */
size_t flyqc_circuit_num_qubits(const struct FlyqcCircuit *circuit);

/**
 * Renders the circuit as text; free the result with [`flyqc_string_free`].
 *
 * # Safety
 * `circuit` must be a live handle and `out` a valid pointer.
 */
enum FlyqcStatus flyqc_circuit_to_text(const struct FlyqcCircuit *circuit, char **out);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library not yet freed.
 */
void flyqc_string_free(char *s);

/**
 * Lowers to `{h, p, cp}` on nearest-neighbour wires.
 *
 * # Safety
 * `circuit` must be a live handle and `out` a valid pointer.
 */
enum FlyqcStatus flyqc_circuit_route(const struct FlyqcCircuit *circuit, struct FlyqcCircuit **out);

/**
 * Operator-norm distance between two circuits after global-phase alignment.
 *
 * # Safety
 * `a`, `b` must be live handles; `distance` and `equivalent` valid pointers.
 */
enum FlyqcStatus flyqc_circuit_verify(const struct FlyqcCircuit *a,
                                      const struct FlyqcCircuit *b,
                                      double tol,
                                      double *distance,
                                      bool *equivalent);

/**
 * Runs the circuit from the all-zero register. Non-adjacent two-qubit
 * gates are rejected; route first.
 *
 * # Safety
 * `circuit` must be a live handle and `out` a valid pointer.
 */
enum FlyqcStatus flyqc_state_run(const struct FlyqcCircuit *circuit, struct FlyqcState **out);

/**
 * # Safety
 * `state` must be NULL or a handle from this library not yet freed.
 */
void flyqc_state_free(struct FlyqcState *state);

/**
 * Number of amplitudes (2^n), or 0 for a NULL handle.
 *
 * # Safety
 * `state` must be NULL or a live handle.
 */
size_t flyqc_state_len(const struct FlyqcState *state);

/**
 * Copies amplitudes into `re` and `im`, indexed with qubit 0 as the most
 * significant bit.
 *
 * # Safety
 * `re` and `im` must each point to `len` writable doubles.
 */
enum FlyqcStatus flyqc_state_amplitudes(const struct FlyqcState *state,
                                        double *re,
                                        double *im,
                                        size_t len);

/**
 * Samples `shots` projective measurements with a seeded generator and
 * writes the count of each basis index into `counts`.
 *
 * # Safety
 * `counts` must point to `len` writable integers.
 */
enum FlyqcStatus flyqc_state_measure(const struct FlyqcState *state,
                                     uint64_t shots,
                                     uint64_t seed,
                                     uint64_t *counts,
                                     size_t len);

/**
 * Plane-wave phase of a step or well gate of order `n`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum FlyqcStatus flyqc_phase(enum FlyqcPhaseKind kind, double v_over_e, uint32_t n, double *out);

/**
 * Reflectionless width of a step or well gate, in wavelengths.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum FlyqcStatus flyqc_resonance_width(enum FlyqcPhaseKind kind,
                                       double v_over_e,
                                       uint32_t n,
                                       double *out);

/**
 * Potential ratio V/E producing `target` radians.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum FlyqcStatus flyqc_calibrate_phase(enum FlyqcPhaseKind kind,
                                       double target,
                                       uint32_t n,
                                       double *out);

/**
 * Directional-coupler unitary, row-major into `re[4]` and `im[4]`.
 *
 * # Safety
 * `re` and `im` must each point to 4 writable doubles.
 */
enum FlyqcStatus flyqc_coupler_unitary(double coupling_length,
                                       double transfer_length,
                                       double *re,
                                       double *im);

/**
 * Evanescent suppression factor of a barrier of `length` wavelengths.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum FlyqcStatus flyqc_tunneling_suppression(double length, double v_over_e, double *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* FLYQC_H */
