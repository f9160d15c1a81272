#ifndef NILBRUHAT_H
#define NILBRUHAT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NbStatus {
  NB_STATUS_OK = 0,
  NB_STATUS_NULL_POINTER = 1,
  NB_STATUS_INVALID_ARGUMENT = 2,
  NB_STATUS_PARSE = 3,
  NB_STATUS_CAP_EXCEEDED = 4,
  NB_STATUS_OUT_OF_RANGE = 5,
  NB_STATUS_INTERNAL = 6,
} NbStatus;

typedef enum NbVerdict {
  NB_VERDICT_SMOOTH = 0,
  NB_VERDICT_SINGULAR = 1,
  NB_VERDICT_UNKNOWN = 2,
} NbVerdict;

/**
 * A context `(n, k)`.
 */
typedef struct NbContext NbContext;

/**
 * One orbit label, tied to the `(n, k)` it was made for.
 */
typedef struct NbLabel NbLabel;

/**
 * An ordered list of labels.
 */
typedef struct NbLabelList NbLabelList;

/**
 * Tangent-space numbers of one label. `exact_tangent_dim` is only filled
 * in when `is_upper` is set and is 0 otherwise.
 */
typedef struct NbTangentBounds {
  size_t dimension;
  size_t t_k;
  size_t lower_bound;
  size_t bk_span;
  bool is_upper;
  size_t exact_tangent_dim;
} NbTangentBounds;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message from the previous call on this thread if it failed, or null. The
 * pointer stays valid until the next call into the library on this thread.
 */
const char *nb_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, released once.
 */
void nb_string_free(char *s);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum NbStatus nb_context_new(size_t n, size_t k, struct NbContext **out);

/**
 * # Safety
 * `ctx` must be null or a handle from [`nb_context_new`], released once.
 */
void nb_context_free(struct NbContext *ctx);

/**
 * Number of orbit labels, saturating at `SIZE_MAX`.
 *
 * # Safety
 * `ctx` must be a live context handle and `out` valid for writes.
 */
enum NbStatus nb_context_label_count(const struct NbContext *ctx, size_t *out);

/**
 * All labels, sorted by dimension; fails with `CapExceeded` when `n > cap`.
 *
 * # Safety
 * `ctx` must be a live context handle and `out` valid for writes.
 */
enum NbStatus nb_context_enumerate(const struct NbContext *ctx,
                                   size_t cap,
                                   struct NbLabelList **out);

/**
 * # Safety
 * `list` must be null or a live list handle, released once.
 */
void nb_label_list_free(struct NbLabelList *list);

/**
 * Length of a label list; 0 for null.
 *
 * # Safety
 * `list` must be null or a live list handle.
 */
size_t nb_label_list_len(const struct NbLabelList *list);

/**
 * Copies entry `index` into a new label handle.
 *
 * # Safety
 * `list` must be a live list handle and `out` valid for writes.
 */
enum NbStatus nb_label_list_get(const struct NbLabelList *list, size_t index, struct NbLabel **out);

/**
 * Parses `sigma=… alpha=…` in one-line notation or as `s1.s3.s2` words.
 *
 * # Safety
 * `ctx` must be a live context handle, `text` a nul-terminated string and
 * `out` valid for writes.
 */
enum NbStatus nb_label_parse(const struct NbContext *ctx, const char *text, struct NbLabel **out);

/**
 * # Safety
 * `lbl` must be null or a live label handle, released once.
 */
void nb_label_free(struct NbLabel *lbl);

/**
 * `sigma=… alpha=…` text; release with [`nb_string_free`].
 *
 * # Safety
 * `lbl` must be a live label handle and `out` valid for writes.
 */
enum NbStatus nb_label_to_string(const struct NbLabel *lbl, char **out);

/**
 * # Safety
 * Handles must be live and `out` valid for writes.
 */
enum NbStatus nb_label_dimension(const struct NbContext *ctx,
                                 const struct NbLabel *lbl,
                                 size_t *out);

/**
 * Closure order: `*out` is true when the orbit of `a` lies in the closure of `b`.
 *
 * # Safety
 * Handles must be live and `out` valid for writes.
 */
enum NbStatus nb_orbit_leq(const struct NbContext *ctx,
                           const struct NbLabel *a,
                           const struct NbLabel *b,
                           bool *out);

/**
 * Singularity verdict; `rule` receives 1..6 for the deciding rule, or 0.
 *
 * # Safety
 * Handles must be live; `out` and `rule` valid for writes (`rule` may be null).
 */
enum NbStatus nb_verdict(const struct NbContext *ctx,
                         const struct NbLabel *lbl,
                         enum NbVerdict *out,
                         uint8_t *rule);

/**
 * # Safety
 * Handles must be live and `out` valid for writes.
 */
enum NbStatus nb_tangent_bounds(const struct NbContext *ctx,
                                const struct NbLabel *lbl,
                                struct NbTangentBounds *out);

/**
 * Hasse diagram as JSON; release with [`nb_string_free`].
 *
 * # Safety
 * `ctx` must be a live context handle and `out` valid for writes.
 */
enum NbStatus nb_hasse_json(const struct NbContext *ctx, size_t cap, char **out);

/**
 * Hasse diagram as Graphviz DOT; release with [`nb_string_free`].
 *
 * # Safety
 * `ctx` must be a live context handle and `out` valid for writes.
 */
enum NbStatus nb_hasse_dot(const struct NbContext *ctx, size_t cap, char **out);

/**
 * Bruhat order on `S_len`, permutations given 1-based in one-line notation.
 *
 * # Safety
 * `u` and `w` must point to `len` readable values; `out` valid for writes.
 */
enum NbStatus nb_bruhat_leq(const uint32_t *u, const uint32_t *w, size_t len, bool *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* NILBRUHAT_H */
