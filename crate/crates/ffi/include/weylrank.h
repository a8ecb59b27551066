#ifndef WEYLRANK_H
#define WEYLRANK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum WrStatus {
  WR_STATUS_OK = 0,
  WR_STATUS_NULL_POINTER = 1,
  WR_STATUS_INVALID_UTF8 = 2,
  WR_STATUS_VALIDATION = 3,
  WR_STATUS_INTERNAL = 4,
  WR_STATUS_PANIC = 5,
  WR_STATUS_BUFFER_TOO_SMALL = 6,
} WrStatus;

/**
 * Coefficient system selector.
 */
typedef enum WrSystem {
  WR_SYSTEM_RT = 0,
  WR_SYSTEM_ZW = 1,
} WrSystem;

/**
 * A validated W-CW complex.
 */
typedef struct WrComplex WrComplex;

/**
 * A root datum with its Weyl group.
 */
typedef struct WrDatum WrDatum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message into `buf` (NUL terminated) and returns
 * the buffer size it needs. Passing a null `buf` only queries the size.
 *
 * # Safety
 * `buf` must be null or point to `capacity` writable bytes.
 */
size_t wr_last_error_message(char *buf, size_t capacity);

/**
 * Static version string.
 */
const char *wr_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void wr_string_free(char *s);

/**
 * Builds a datum such as `"A2"` or `"A1xT1"`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
enum WrStatus wr_datum_new(const char *spec, struct WrDatum **out);

/**
 * # Safety
 * `datum` must be null or a handle from [`wr_datum_new`], freed once.
 */
void wr_datum_free(struct WrDatum *datum);

/**
 * # Safety
 * Pointers must be valid.
 */
enum WrStatus wr_datum_weyl_order(const struct WrDatum *datum, uint64_t *out);

/**
 * # Safety
 * Pointers must be valid.
 */
enum WrStatus wr_datum_positive_root_count(const struct WrDatum *datum, uint64_t *out);

/**
 * Number of chambers of the root arrangement.
 *
 * # Safety
 * Pointers must be valid.
 */
enum WrStatus wr_datum_chamber_count(const struct WrDatum *datum, uint64_t *out);

/**
 * Tab-separated Steinberg table for a family (`"chain"`, `"parabolic"`, ...).
 *
 * # Safety
 * `datum_spec` and `family` must be NUL-terminated strings, `out` valid.
 */
enum WrStatus wr_steinberg_table(const char *datum_spec, const char *family, char **out);

/**
 * Loads a `wcw/1` JSON document.
 *
 * # Safety
 * `json` must be a NUL-terminated string, `out` valid.
 */
enum WrStatus wr_complex_load_json(const char *json, struct WrComplex **out);

/**
 * Loads `"point"`, `"circle"` or `"torus"`.
 *
 * # Safety
 * `name` must be a NUL-terminated string, `out` valid.
 */
enum WrStatus wr_complex_load_bundled(const char *name, struct WrComplex **out);

/**
 * # Safety
 * `complex` must be null or a handle from a `wr_complex_load_*` function.
 */
void wr_complex_free(struct WrComplex *complex);

/**
 * Per-degree ranks over the fraction field. `*len` always receives the
 * degree count; `WR_STATUS_BUFFER_TOO_SMALL` when `capacity` is short.
 *
 * # Safety
 * `out` must hold `capacity` elements; other pointers valid.
 */
enum WrStatus wr_complex_rational_ranks(const struct WrComplex *complex,
                                        enum WrSystem system,
                                        uint64_t seed,
                                        size_t *out,
                                        size_t capacity,
                                        size_t *len);

/**
 * Betti numbers of the underlying space.
 *
 * # Safety
 * As for [`wr_complex_rational_ranks`].
 */
enum WrStatus wr_complex_betti(const struct WrComplex *complex,
                               size_t *out,
                               size_t capacity,
                               size_t *len);

/**
 * `2^{nr} · Σ betti`.
 *
 * # Safety
 * `betti` must hold `len` elements (may be null when `len == 0`).
 */
enum WrStatus wr_inertia_rank(uint32_t n,
                              uint32_t r,
                              const size_t *betti,
                              size_t len,
                              uint64_t *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* WEYLRANK_H */
