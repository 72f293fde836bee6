#ifndef BISPECTRAL_H
#define BISPECTRAL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BsStatus {
  BS_STATUS_OK = 0,
  BS_STATUS_NULL_POINTER = 1,
  BS_STATUS_INVALID_UTF8 = 2,
  BS_STATUS_PARSE = 3,
  BS_STATUS_INVALID_ARGUMENT = 4,
  BS_STATUS_SIZE_CAP = 5,
  BS_STATUS_DISCONNECTED = 6,
  BS_STATUS_PRECONDITION = 7,
  BS_STATUS_NON_CONVERGENCE = 8,
  BS_STATUS_CONTRADICTION = 9,
  BS_STATUS_PANIC = 10,
} BsStatus;

typedef enum BsVerdict {
  BS_VERDICT_HYPOTHESIS_FAIL = 0,
  BS_VERDICT_SPECTRAL_BELOW = 1,
  BS_VERDICT_EXTREMAL_EXCEPTION = 2,
  BS_VERDICT_GUARANTEED_AND_CONSTRUCTED = 3,
  BS_VERDICT_CONTRADICTION = 4,
} BsVerdict;

/**
 * Opaque graph handle.
 */
typedef struct BsGraph BsGraph;

/**
 * Theorem parameters; 0 means "not given".
 */
typedef struct BsParams {
  size_t a;
  size_t b;
  size_t k;
  size_t m;
  size_t n;
  size_t delta;
} BsParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread (empty if none).
 */
const char *bs_last_error(void);

/**
 * Library version as a static string.
 */
const char *bs_version(void);

/**
 * Parses the `bip m n` / `e i j` text format.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum BsStatus bs_graph_parse(const char *text, struct BsGraph **out);

/**
 * `K_{m,n}`.
 *
 * # Safety
 * `out` must be writable.
 */
enum BsStatus bs_graph_complete(size_t m, size_t n, struct BsGraph **out);

/**
 * `K_{m,n}` minus the edges of `K_{p,q}`.
 *
 * # Safety
 * `out` must be writable.
 */
enum BsStatus bs_graph_extremal(size_t m, size_t n, size_t p, size_t q, struct BsGraph **out);

/**
 * Releases a graph; null is ignored.
 *
 * # Safety
 * `g` must come from a `bs_graph_*` constructor and not be freed twice.
 */
void bs_graph_free(struct BsGraph *g);

/**
 * Part sizes and edge count.
 *
 * # Safety
 * `g` must be a live handle; the out-pointers must be writable.
 */
enum BsStatus bs_graph_shape(const struct BsGraph *g, size_t *m, size_t *n, size_t *edges);

/**
 * Canonical text form; free the result with `bs_string_free`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum BsStatus bs_graph_serialize(const struct BsGraph *g, char **out);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void bs_string_free(char *s);

/**
 * Largest adjacency eigenvalue, iterated to residual `tol`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum BsStatus bs_spectral_radius(const struct BsGraph *g, double tol, double *out);

/**
 * Closed-form threshold of theorem `"t1"`…`"t4"`.
 *
 * # Safety
 * `theorem` must be a nul-terminated string; `params` readable; `out`
 * writable.
 */
enum BsStatus bs_threshold(const char *theorem, const struct BsParams *params, double *out);

/**
 * Certifies a theorem on `g`. Writes the verdict and the JSON certificate
 * (free with `bs_string_free`).
 *
 * # Safety
 * `g` must be a live handle; `theorem` nul-terminated; `params` readable;
 * the out-pointers writable.
 */
enum BsStatus bs_certify(const struct BsGraph *g,
                         const char *theorem,
                         const struct BsParams *params,
                         double tol,
                         enum BsVerdict *verdict,
                         char **json);

/**
 * Maximum number of edge-disjoint spanning trees.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum BsStatus bs_tree_packing_number(const struct BsGraph *g, size_t *out);

/**
 * Size of a maximum matching.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum BsStatus bs_matching_number(const struct BsGraph *g, size_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BISPECTRAL_H */
