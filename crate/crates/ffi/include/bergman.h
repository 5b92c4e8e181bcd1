#ifndef BERGMAN_H
#define BERGMAN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Values 2, 3 and 4 match the command-line exit codes.
 */
typedef enum BergmanStatus {
  BERGMAN_STATUS_OK = 0,
  BERGMAN_STATUS_NULL_POINTER = 1,
  BERGMAN_STATUS_INVALID_INPUT = 2,
  BERGMAN_STATUS_BUDGET_EXCEEDED = 3,
  BERGMAN_STATUS_INVARIANT_VIOLATION = 4,
  BERGMAN_STATUS_PANIC = 5,
} BergmanStatus;

/**
 * Opaque matroid handle.
 */
typedef struct BergmanMatroid BergmanMatroid;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *bergman_version(void);

/**
 * Message of the last failed call on this thread, or NULL. Owned by the
 * library; valid until the next call.
 */
const char *bergman_last_error(void);

/**
 * Parses a matroid from its JSON file format.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum BergmanStatus bergman_matroid_from_json(const char *json, struct BergmanMatroid **out);

/**
 * Builds a matroid from a generator string such as `"A3"` or `"fano"`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string; `out` must be writable.
 */
enum BergmanStatus bergman_matroid_generate(const char *spec, struct BergmanMatroid **out);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * `m` must come from this library and not be used afterwards.
 */
void bergman_matroid_free(struct BergmanMatroid *m);

/**
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum BergmanStatus bergman_matroid_size(const struct BergmanMatroid *m, size_t *out);

/**
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum BergmanStatus bergman_matroid_rank(const struct BergmanMatroid *m, size_t *out);

/**
 * Rank of the subset given by `len` element indices.
 *
 * # Safety
 * `elements` must point to `len` readable values (or be NULL when `len`
 * is 0); `out` must be writable.
 */
enum BergmanStatus bergman_matroid_rank_of(const struct BergmanMatroid *m,
                                           const size_t *elements,
                                           size_t len,
                                           size_t *out);

/**
 * Serializes the matroid; free the result with `bergman_string_free`.
 *
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum BergmanStatus bergman_matroid_to_json(const struct BergmanMatroid *m, char **out);

/**
 * Number of Cremona bases, refusing ground sets larger than `budget`.
 *
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum BergmanStatus bergman_cremona_count(const struct BergmanMatroid *m,
                                         size_t budget,
                                         size_t *out);

/**
 * Vertex and edge counts of the ray adjacency graph.
 *
 * # Safety
 * `m` must be a live handle; both outputs must be writable.
 */
enum BergmanStatus bergman_ray_graph_size(const struct BergmanMatroid *m,
                                          size_t *vertices,
                                          size_t *edges);

/**
 * Releases a string returned by the library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void bergman_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BERGMAN_H */
