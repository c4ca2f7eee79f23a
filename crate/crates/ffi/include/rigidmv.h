#ifndef RIGIDMV_H
#define RIGIDMV_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RmvStatus {
  RmvStatus_Ok = 0,
  RmvStatus_NullPointer = 1,
  RmvStatus_Utf8 = 2,
  RmvStatus_Parse = 3,
  RmvStatus_UnknownName = 4,
  RmvStatus_InvalidGraph = 5,
  RmvStatus_InvalidArgument = 6,
  RmvStatus_Compute = 7,
} RmvStatus;

/**
 * Opaque graph handle.
 */
typedef struct RmvGraph RmvGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the most recent error on this thread. The pointer stays valid
 * until the next failing call on the same thread.
 */
const char *rmv_last_error_message(void);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `s` must have been returned by a `rmv_*` function and not freed before.
 */
void rmv_string_free(char *s);

/**
 * Parse a graph from its JSON form
 * `{"dim": 2, "n": 6, "edges": [[0,1], ...]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be a valid pointer.
 */
enum RmvStatus rmv_graph_from_json(const char *json, struct RmvGraph **out);

/**
 * Build a named graph, e.g. `desargues` or `cyclohexane_caterpillar:2`.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be a valid pointer.
 */
enum RmvStatus rmv_graph_named(const char *name, struct RmvGraph **out);

/**
 * # Safety
 * `g` must be a handle from this library, freed at most once.
 */
void rmv_graph_free(struct RmvGraph *g);

/**
 * Vertex count, dimension and edge count of a graph.
 *
 * # Safety
 * `g` must be a live handle; out-pointers may be null to skip a field.
 */
enum RmvStatus rmv_graph_counts(const struct RmvGraph *g,
                                uint8_t *n,
                                uint8_t *dim,
                                uint32_t *edges);

/**
 * Dimension-appropriate validity (Laman / simplicial-skeleton check).
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid.
 */
enum RmvStatus rmv_graph_is_valid(const struct RmvGraph *g, bool *out);

/**
 * Graph JSON including edges in canonical order.
 *
 * # Safety
 * `g` must be a live handle; `out` receives a string for [`rmv_string_free`].
 */
enum RmvStatus rmv_graph_to_json(const struct RmvGraph *g, char **out);

/**
 * Canonical isomorphism key as lowercase hex.
 *
 * # Safety
 * `g` must be a live handle; `out` receives a string for [`rmv_string_free`].
 */
enum RmvStatus rmv_graph_canonical_key(const struct RmvGraph *g, char **out);

/**
 * Henneberg class: 1 when constructible with H1 steps only, else 2.
 * `sequence_json`, when non-null, receives the witness sequence with the
 * maximum H1 count.
 *
 * # Safety
 * `g` must be a live handle; out-pointers must be valid or null.
 */
enum RmvStatus rmv_graph_classify(const struct RmvGraph *g, uint8_t *h_class, char **sequence_json);

/**
 * Minimum mixed volume over all pinnings. `formulation`: 0 naive,
 * 1 augmented.
 *
 * # Safety
 * `g` must be a live handle; `out_mv` must be valid.
 */
enum RmvStatus rmv_min_mixed_volume(const struct RmvGraph *g,
                                    uint8_t formulation,
                                    uint64_t seed,
                                    uint64_t *out_mv);

/**
 * Mixed volume of a support-dump JSON
 * (`{"vars": [...], "supports": [[[..]]], "formulation": "naive"}`).
 *
 * # Safety
 * `supports_json` must be NUL-terminated; out-pointers valid or null.
 */
enum RmvStatus rmv_mixed_volume_supports(const char *supports_json,
                                         uint64_t seed,
                                         uint64_t *out_mv,
                                         uint64_t *out_cells);

/**
 * Bezout bound 4^(n-2) / 8^(n-3) as a decimal string.
 *
 * # Safety
 * `out` receives a string for [`rmv_string_free`].
 */
enum RmvStatus rmv_bezout(uint8_t n, uint8_t dim, char **out);

/**
 * Published binomial upper bound as a decimal string.
 *
 * # Safety
 * `out` receives a string for [`rmv_string_free`].
 */
enum RmvStatus rmv_binomial_upper(uint8_t n, uint8_t dim, char **out);

/**
 * Constructive lower-bound table row value as a decimal string.
 *
 * # Safety
 * `out` receives a string for [`rmv_string_free`].
 */
enum RmvStatus rmv_table_lower(uint8_t dim, uint8_t n, char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* RIGIDMV_H */
