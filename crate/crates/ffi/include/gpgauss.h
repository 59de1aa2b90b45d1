#ifndef GPGAUSS_H
#define GPGAUSS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. The numbering matches the exit codes of the `gpgauss` CLI
 * where the two overlap.
 */
typedef enum GpgStatus {
  GPG_STATUS_OK = 0,
  /**
   * Null pointer, bad numeric parameter or unsupported combination.
   */
  GPG_STATUS_INVALID_ARGUMENT = 1,
  /**
   * Malformed graph, word or pairing text.
   */
  GPG_STATUS_INVALID_INPUT = 2,
  GPG_STATUS_BUDGET_EXCEEDED = 3,
  /**
   * A panic was caught at the boundary.
   */
  GPG_STATUS_INTERNAL = 4,
} GpgStatus;

/**
 * Opaque graph handle.
 */
typedef struct GpgGraph GpgGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses graph JSON `{"vertices": [...], "edges": [[u, v], ...]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum GpgStatus gpg_graph_from_json(const char *json, struct GpgGraph **out);

/**
 * Releases a graph handle. Null is ignored.
 *
 * # Safety
 * `g` must come from [`gpg_graph_from_json`] and not be freed twice.
 */
void gpg_graph_free(struct GpgGraph *g);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t gpg_graph_vertex_count(const struct GpgGraph *g);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void gpg_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *gpg_last_error_message(void);

/**
 * Canonical minimal representative of `word`, written as a new string.
 *
 * # Safety
 * Pointers must be valid; free `*out` with [`gpg_string_free`].
 */
enum GpgStatus gpg_normalize(const struct GpgGraph *g, const char *word, char **out);

/**
 * # Safety
 * Pointers must be valid.
 */
enum GpgStatus gpg_is_reduced(const struct GpgGraph *g, const char *word, bool *out);

/**
 * # Safety
 * Pointers must be valid.
 */
enum GpgStatus gpg_are_equivalent(const struct GpgGraph *g,
                                  const char *word,
                                  const char *other,
                                  bool *out);

/**
 * Number of Γ-admissible pairings of a labeled word (`"a:1 b:2 ..."`).
 * With `match_vertex` set, spins are ignored when pairing.
 *
 * # Safety
 * Pointers must be valid.
 */
enum GpgStatus gpg_count_gamma_admissible(const struct GpgGraph *g,
                                          const char *word,
                                          bool match_vertex,
                                          uint64_t *out);

/**
 * Vacuum moment of the field operators by Fock-space simulation.
 *
 * # Safety
 * Pointers must be valid.
 */
enum GpgStatus gpg_vacuum_moment(const struct GpgGraph *g, const char *word, int64_t *out);

/**
 * `Σ_P θ^{#I_Γ(P)}` over pairings, `θ ∈ [-1, 1]`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum GpgStatus gpg_limit_moment(const struct GpgGraph *g,
                                const char *word,
                                double theta,
                                double *out);

/**
 * Exact matrix-model moment `numerator / denominator` under seeded signs.
 *
 * # Safety
 * Pointers must be valid.
 */
enum GpgStatus gpg_matrix_moment(const struct GpgGraph *g,
                                 const char *word,
                                 size_t n,
                                 uint64_t seed,
                                 double p,
                                 int64_t *numerator,
                                 int64_t *denominator);

/**
 * Class-tuple estimator for the pairing `"1-3,2-4"` of a vertex word.
 *
 * # Safety
 * Pointers must be valid.
 */
enum GpgStatus gpg_t_estimate(const struct GpgGraph *g,
                              const char *word,
                              const char *pairing,
                              size_t n,
                              uint64_t seed,
                              double p,
                              double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GPGAUSS_H */
