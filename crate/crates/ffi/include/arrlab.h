#ifndef ARRLAB_H
#define ARRLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible function.
typedef enum ArrlabStatus {
  ARRLAB_STATUS_OK = 0,
  ARRLAB_STATUS_NULL_POINTER = 1,
  ARRLAB_STATUS_INVALID_UTF8 = 2,
  ARRLAB_STATUS_PARSE = 3,
  ARRLAB_STATUS_INVALID_ARGUMENT = 4,
  ARRLAB_STATUS_COMPUTATION = 5,
  ARRLAB_STATUS_BUFFER_TOO_SMALL = 6,
  ARRLAB_STATUS_PANIC = 7,
} ArrlabStatus;

// Opaque arrangement handle.
typedef struct ArrlabArrangement ArrlabArrangement;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. Valid until
// the next call into this library on the same thread.
const char *arrlab_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *arrlab_version(void);

// Parses an arrangement from JSON text (`{"dim": d, "hyperplanes": [...]}`).
//
// # Safety
// `json` must be a NUL-terminated string and `out` a writable pointer.
enum ArrlabStatus arrlab_arrangement_from_json(const char *json, struct ArrlabArrangement **out);

// Builds a named arrangement such as `"braid:3"` or `"random:m=5,d=3,seed=7"`.
//
// # Safety
// `spec` must be a NUL-terminated string and `out` a writable pointer.
enum ArrlabStatus arrlab_arrangement_from_generator(const char *spec,
                                                    struct ArrlabArrangement **out);

// Releases a handle. NULL is ignored.
//
// # Safety
// `arr` must come from this library and not be used afterwards.
void arrlab_arrangement_free(struct ArrlabArrangement *arr);

// # Safety
// `arr` must be a live handle and `out` writable.
enum ArrlabStatus arrlab_arrangement_dim(const struct ArrlabArrangement *arr, size_t *out);

// # Safety
// `arr` must be a live handle and `out` writable.
enum ArrlabStatus arrlab_arrangement_rank(const struct ArrlabArrangement *arr, size_t *out);

// Number of distinct hyperplanes after canonicalization.
//
// # Safety
// `arr` must be a live handle and `out` writable.
enum ArrlabStatus arrlab_arrangement_num_hyperplanes(const struct ArrlabArrangement *arr,
                                                     size_t *out);

// Number of regions, by direct enumeration.
//
// # Safety
// `arr` must be a live handle and `out` writable.
enum ArrlabStatus arrlab_arrangement_region_count(const struct ArrlabArrangement *arr, size_t *out);

// Characteristic polynomial coefficients, highest degree first.
//
// Always stores the number of coefficients in `len`. Returns
// `ARRLAB_STATUS_BUFFER_TOO_SMALL` if `cap` is less than that; `buf` may
// be NULL when `cap` is 0.
//
// # Safety
// `buf` must have room for `cap` values and `len` must be writable.
enum ArrlabStatus arrlab_arrangement_charpoly(const struct ArrlabArrangement *arr,
                                              int64_t *buf,
                                              size_t cap,
                                              size_t *len);

// Lattice, Möbius values, characteristic polynomial and regions as JSON.
//
// # Safety
// `arr` must be a live handle and `out` writable. Free `*out` with
// [`arrlab_string_free`].
enum ArrlabStatus arrlab_arrangement_analyze_json(const struct ArrlabArrangement *arr,
                                                  bool zonotope,
                                                  char **out);

// Runs the volume-sum verification and returns its JSON report.
//
// `samples` is per region; `tol` is the tightness tolerance and `zmax`
// the largest accepted `|z|`. `pass` may be NULL.
//
// # Safety
// `arr` must be a live handle and `out` writable. Free `*out` with
// [`arrlab_string_free`].
enum ArrlabStatus arrlab_arrangement_verify_json(const struct ArrlabArrangement *arr,
                                                 uint64_t samples,
                                                 uint64_t seed,
                                                 double tol,
                                                 double zmax,
                                                 char **out,
                                                 bool *pass);

// Projects `z` onto the cone described by `cone_json`
// (`{"dim": d, "inequalities": [...]}`), writing the projection into
// `out_point` and the dimension of the face it lands in into `face_dim`.
//
// # Safety
// `z` and `out_point` must each hold `dim` doubles; `face_dim` may be NULL.
enum ArrlabStatus arrlab_project_point(const char *cone_json,
                                       const double *z,
                                       size_t dim,
                                       double tol,
                                       double *out_point,
                                       size_t *face_dim);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void arrlab_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ARRLAB_H */
