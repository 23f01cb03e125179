#ifndef GBB_H
#define GBB_H

#pragma once

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GbbStatus {
  GBB_STATUS_OK = 0,
  GBB_STATUS_NULL_POINTER = 1,
  GBB_STATUS_INVALID_UTF8 = 2,
  GBB_STATUS_PARSE = 3,
  GBB_STATUS_INVALID = 4,
  GBB_STATUS_PRECONDITION = 5,
  GBB_STATUS_WINDOW_INSUFFICIENT = 6,
  GBB_STATUS_UNSUPPORTED = 7,
  GBB_STATUS_VERIFICATION_FAILED = 8,
  GBB_STATUS_UNKNOWN_FIXTURE = 9,
  GBB_STATUS_INTERNAL = 10,
  GBB_STATUS_PANIC = 11,
} GbbStatus;

/**
 * A wrapped cube complex built from a quotient.
 */
typedef struct GbbComplex GbbComplex;

/**
 * A cyclic presentation `<a1..al | a1^n ... al^n, n in T>`.
 */
typedef struct GbbCyclicPresentation GbbCyclicPresentation;

/**
 * A finite quotient of a generalized Bestvina-Brady group.
 */
typedef struct GbbQuotient GbbQuotient;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version, a static string.
 */
const char *gbb_version(void);

/**
 * Message for the last failed call on this thread; valid until the next call.
 */
const char *gbb_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void gbb_string_free(char *s);

/**
 * Loads the default quotient of a built-in fixture.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a writable pointer.
 */
enum GbbStatus gbb_quotient_from_fixture(const char *name, struct GbbQuotient **out);

/**
 * Builds a quotient from a cover file, the set `S` (e.g. `2Z`) and a
 * quotient file, each given as JSON text.
 *
 * # Safety
 * String arguments must be NUL-terminated; `out` must be writable.
 */
enum GbbStatus gbb_quotient_from_json(const char *cover_json,
                                      const char *s,
                                      const char *quotient_json,
                                      struct GbbQuotient **out);

/**
 * # Safety
 * `q` must be null or a handle from this library that has not been freed.
 */
void gbb_quotient_free(struct GbbQuotient *q);

/**
 * Whether the verification certificate passed.
 *
 * # Safety
 * `q` must be a live handle and `out` writable.
 */
enum GbbStatus gbb_quotient_certificate_passed(const struct GbbQuotient *q, bool *out);

/**
 * Whether every `ρ_j` with `j ∉ S` is injective.
 *
 * # Safety
 * `q` must be a live handle and `out` writable.
 */
enum GbbStatus gbb_quotient_kernel_torsion_free(const struct GbbQuotient *q, bool *out);

/**
 * The quotient in its JSON file form.
 *
 * # Safety
 * `q` must be a live handle and `out` writable; free the result with [`gbb_string_free`].
 */
enum GbbStatus gbb_quotient_to_json(const struct GbbQuotient *q, char **out);

/**
 * Builds the complex at `wrap`; 0 picks the least valid wrap.
 *
 * # Safety
 * `q` must be a live handle and `out` writable.
 */
enum GbbStatus gbb_complex_build(const struct GbbQuotient *q, size_t wrap, struct GbbComplex **out);

/**
 * # Safety
 * `c` must be null or a handle from this library that has not been freed.
 */
void gbb_complex_free(struct GbbComplex *c);

/**
 * Numbers of vertices, edges and squares; any output pointer may be null.
 *
 * # Safety
 * `c` must be a live handle; non-null outputs must be writable.
 */
enum GbbStatus gbb_complex_counts(const struct GbbComplex *c,
                                  size_t *vertices,
                                  size_t *edges,
                                  size_t *squares);

/**
 * Hyperplane count and specialness verdict; either output may be null.
 *
 * # Safety
 * `c` must be a live handle; non-null outputs must be writable.
 */
enum GbbStatus gbb_complex_specialness(const struct GbbComplex *c,
                                       size_t *hyperplane_count,
                                       bool *special);

/**
 * The full specialness report with witnesses as JSON.
 *
 * # Safety
 * `c` must be a live handle and `out` writable; free the result with [`gbb_string_free`].
 */
enum GbbStatus gbb_complex_specialness_json(const struct GbbComplex *c, char **out);

/**
 * `⟨a1..al | a1^n ⋯ al^n, n ∈ T⟩` with `T` given as an exponent-set JSON
 * document (`{"modulus":2,"residues":[0]}` or `{"kind":"godel","S":[0,2]}`).
 *
 * # Safety
 * `t_json` must be NUL-terminated and `out` writable.
 */
enum GbbStatus gbb_cyclic_presentation_new(size_t l,
                                           const char *t_json,
                                           struct GbbCyclicPresentation **out);

/**
 * # Safety
 * `p` must be null or a handle from this library that has not been freed.
 */
void gbb_cyclic_presentation_free(struct GbbCyclicPresentation *p);

/**
 * Runs Dehn's algorithm on a word such as `"a1^2 a2^-1"`. `is_identity`
 * and `reduced` may be null.
 *
 * # Safety
 * `p` must be a live handle, `word` NUL-terminated, non-null outputs
 * writable; free `*reduced` with [`gbb_string_free`].
 */
enum GbbStatus gbb_dehn_reduce(const struct GbbCyclicPresentation *p,
                               const char *word,
                               bool *is_identity,
                               char **reduced);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GBB_H */
