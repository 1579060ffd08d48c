/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef K3LAT_H
#define K3LAT_H

#pragma once

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum K3latStatus {
  K3LAT_STATUS_OK = 0,
  K3LAT_STATUS_NULL_POINTER = 1,
  K3LAT_STATUS_INVALID_UTF8 = 2,
  K3LAT_STATUS_PARSE = 3,
  K3LAT_STATUS_INVALID_INPUT = 4,
  K3LAT_STATUS_UNKNOWN_NAME = 5,
  /**
   * A mathematical failure: not a K3 point, not isometric, a failed check.
   */
  K3LAT_STATUS_DOMAIN = 6,
  K3LAT_STATUS_IO = 7,
  K3LAT_STATUS_PANIC = 8,
} K3latStatus;

/**
 * Opaque lattice handle.
 */
typedef struct K3latLattice K3latLattice;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *k3lat_version(void);

/**
 * Message of the last failed call on this thread; empty after a success.
 * Valid until the next call on the same thread.
 */
const char *k3lat_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void k3lat_string_free(char *s);

/**
 * Parses `{"label"?, "gram": [[...]]}` or a bare Gram matrix.
 *
 * # Safety
 * `json` must be a valid C string; `out` must be writable.
 */
enum K3latStatus k3lat_lattice_from_json(const char *json, struct K3latLattice **out);

/**
 * A catalog entry or root lattice by name (`A0`, `B1'`, `E8`, `U`, ...),
 * twisted by `twist` (1 for none).
 *
 * # Safety
 * `name` must be a valid C string; `out` must be writable.
 */
enum K3latStatus k3lat_lattice_from_name(const char *name,
                                         int64_t twist,
                                         struct K3latLattice **out);

/**
 * # Safety
 * `h` must come from this library and not be freed twice. Null is ignored.
 */
void k3lat_lattice_free(struct K3latLattice *h);

/**
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum K3latStatus k3lat_lattice_rank(const struct K3latLattice *h, size_t *out);

/**
 * Writes `(positive, negative, zero)` into `out[0..3]`.
 *
 * # Safety
 * `h` must be a live handle; `out` must point to three writable `size_t`.
 */
enum K3latStatus k3lat_lattice_signature(const struct K3latLattice *h, size_t *out);

/**
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum K3latStatus k3lat_lattice_is_even(const struct K3latLattice *h, bool *out);

/**
 * Determinant as a decimal string.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum K3latStatus k3lat_lattice_det(const struct K3latLattice *h, char **out);

/**
 * Signature, determinant, parity and discriminant group as JSON.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum K3latStatus k3lat_lattice_info_json(const struct K3latLattice *h, char **out);

/**
 * Searches for `P` with `PᵀGP = H`. Returns `Ok` with `{"result": "isometric", "P": ...}`,
 * or `Domain` with the JSON still written when not isometric or undecided.
 *
 * # Safety
 * `left`/`right` must be live handles; `out` must be writable.
 */
enum K3latStatus k3lat_find_isometry_json(const struct K3latLattice *left,
                                          const struct K3latLattice *right,
                                          uint64_t budget,
                                          char **out);

/**
 * Singular-fiber configuration of a parameter point given as `{"a": [...]}`,
 * a JSON array, or seven comma-separated rationals.
 *
 * # Safety
 * `params` must be a valid C string; `out` must be writable.
 */
enum K3latStatus k3lat_fibers_classify_json(const char *params, char **out);

/**
 * Runs the full verification suite. Returns `Domain` if any check fails;
 * the report is written either way.
 *
 * # Safety
 * `out` must be writable.
 */
enum K3latStatus k3lat_verify_all_json(uint64_t seed, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* K3LAT_H */
