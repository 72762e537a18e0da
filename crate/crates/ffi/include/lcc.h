#ifndef LCC_H
#define LCC_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LccStatus {
  LCC_STATUS_OK = 0,
  LCC_STATUS_NULL_POINTER = 1,
  LCC_STATUS_INVALID_UTF8 = 2,
  LCC_STATUS_PARSE_ERROR = 3,
  LCC_STATUS_INVALID_GRAPH = 4,
  /**
   * The graph does not meet the construction's precondition.
   */
  LCC_STATUS_PRECONDITION = 5,
  /**
   * Input exceeds a size guard.
   */
  LCC_STATUS_TOO_LARGE = 6,
  LCC_STATUS_INTERNAL = 7,
} LccStatus;

typedef enum LccMethod {
  LCC_METHOD_ALPHA2 = 0,
  LCC_METHOD_MAX_CLIQUE = 1,
  LCC_METHOD_LOCAL_ALPHA = 2,
  LCC_METHOD_CLAW_FREE = 3,
  LCC_METHOD_EXACT = 4,
} LccMethod;

/**
 * Opaque graph handle.
 */
typedef struct LccGraph LccGraph;

/**
 * One graph's conjecture check.
 */
typedef struct LccConjectureResult {
  size_t n;
  size_t lcc;
  size_t lcc_complement;
  size_t chi;
  bool conj1_holds;
  bool conj2_holds;
  bool equality1;
  bool equality2;
} LccConjectureResult;

/**
 * Totals of an exhaustive sweep.
 */
typedef struct LccSweepSummary {
  uint64_t total;
  uint64_t conj1_violations;
  uint64_t conj2_violations;
  uint64_t equality1;
  uint64_t equality2;
  uint64_t lemma_failures;
  uint64_t errors;
} LccSweepSummary;

/**
 * Realized partition bound for `G` and its complement.
 */
typedef struct LccNgBound {
  /**
   * Edge-disjoint monochromatic triangles packed.
   */
  size_t k;
  /**
   * Edges covered by the packed triangles, `3k`.
   */
  size_t m;
  /**
   * Realized sum (total size for scp, count for cp).
   */
  size_t bound;
  /**
   * Whether both partitions validate.
   */
  bool valid;
} LccNgBound;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a graph6 string into a new handle stored in `*out`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum LccStatus lcc_graph_from_graph6(const char *text, struct LccGraph **out);

/**
 * Builds a graph on `n` vertices from `edge_count` pairs stored flat in
 * `edges` (`u0, v0, u1, v1, ...`).
 *
 * # Safety
 * `edges` must point to `2 * edge_count` readable values (it may be null
 * when `edge_count` is 0) and `out` must be writable.
 */
enum LccStatus lcc_graph_from_edges(size_t n,
                                    const uint32_t *edges,
                                    size_t edge_count,
                                    struct LccGraph **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `g` must come from this library and not be used afterwards.
 */
void lcc_graph_free(struct LccGraph *g);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t lcc_graph_order(const struct LccGraph *g);

/**
 * Encodes the graph as graph6; free the result with `lcc_string_free`.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum LccStatus lcc_graph_to_graph6(const struct LccGraph *g, char **out);

/**
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum LccStatus lcc_local_clique_cover_number(const struct LccGraph *g, size_t *out);

/**
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum LccStatus lcc_chromatic_number(const struct LccGraph *g, size_t *out);

/**
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum LccStatus lcc_independence_number(const struct LccGraph *g, size_t *out);

/**
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum LccStatus lcc_clique_number(const struct LccGraph *g, size_t *out);

/**
 * Builds a cover with `method` and writes its certificate as JSON to
 * `*out`. A graph outside the method's precondition gives
 * `LccStatus::Precondition`.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum LccStatus lcc_cover_certificate_json(const struct LccGraph *g,
                                          enum LccMethod method,
                                          char **out);

/**
 * Checks both conjectures on one graph.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum LccStatus lcc_check_graph(const struct LccGraph *g, struct LccConjectureResult *out);

/**
 * Checks both conjectures on every labeled graph with `n` vertices
 * (`n <= 7`). `threads` = 0 uses one worker per core; `lemma` also checks
 * that an added isolated vertex keeps lcc.
 *
 * # Safety
 * `out` must be writable.
 */
enum LccStatus lcc_check_conjectures_exhaustive(size_t n,
                                                size_t threads,
                                                bool lemma,
                                                struct LccSweepSummary *out);

/**
 * Realized `scp(G) + scp(co-G)` from the greedy triangle packing.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum LccStatus lcc_scp_ng_bound(const struct LccGraph *g, struct LccNgBound *out);

/**
 * Realized `cp(G) + cp(co-G)` from the greedy triangle packing.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum LccStatus lcc_cp_ng_bound(const struct LccGraph *g, struct LccNgBound *out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void lcc_string_free(char *s);

/**
 * Message for the last failure on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *lcc_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LCC_H */
