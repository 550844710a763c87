#ifndef DEGREE_RAMSEY_H
#define DEGREE_RAMSEY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum DrStatus {
  DR_STATUS_OK = 0,
  DR_STATUS_NULL_POINTER = 1,
  DR_STATUS_INVALID_ARGUMENT = 2,
  DR_STATUS_NOT_PRIME = 3,
  DR_STATUS_IO = 4,
  DR_STATUS_PARSE = 5,
  DR_STATUS_RETENTION_FAILED = 6,
  DR_STATUS_CERTIFICATE_FAILED = 7,
  DR_STATUS_BUFFER_TOO_SMALL = 8,
  DR_STATUS_INTERNAL = 9,
} DrStatus;

// Opaque simple undirected graph.
typedef struct DrGraph DrGraph;

// Opaque edge partition. Parts are indexed `0..dr_partition_part_count`.
typedef struct DrPartition DrPartition;

// Message for the last failed call on this thread, or null. The pointer
// stays valid until the next failing call on the same thread.
const char *dr_last_error_message(void);

// Builds a graph on `n` vertices from `m` edges stored as `2 * m`
// interleaved endpoints.
//
// # Safety
// `edges` must point to `2 * m` readable `uint32_t` values (it may be
// null when `m` is 0) and `out` must be writable.
enum DrStatus dr_graph_from_edges(size_t n, const uint32_t *edges, size_t m, struct DrGraph **out);

// Reads a graph in the edge-list text format.
//
// # Safety
// `path` must be a NUL-terminated string and `out` writable.
enum DrStatus dr_graph_read_edge_list(const char *path, struct DrGraph **out);

// # Safety
// `g` must be null or a handle from this library not yet freed.
void dr_graph_free(struct DrGraph *g);

// Vertex count, or 0 for a null handle.
//
// # Safety
// `g` must be null or a live handle.
size_t dr_graph_vertex_count(const struct DrGraph *g);

// Edge count, or 0 for a null handle.
//
// # Safety
// `g` must be null or a live handle.
size_t dr_graph_edge_count(const struct DrGraph *g);

// Copies the edges (`u < v`, sorted) as interleaved endpoints into
// `buf`, which holds `cap` edges. Fails with `BufferTooSmall` when the
// graph has more than `cap` edges.
//
// # Safety
// `g` must be a live handle and `buf` must have room for `2 * cap` values.
enum DrStatus dr_graph_edges(const struct DrGraph *g, uint32_t *buf, size_t cap);

// Girth of `g`; 0 when `g` is acyclic.
//
// # Safety
// `g` must be a live handle and `out` writable.
enum DrStatus dr_graph_girth(const struct DrGraph *g, uint32_t *out);

// Whether `g` contains a cycle of exactly `len` edges (3 to 16).
//
// # Safety
// `g` must be a live handle and `out` writable.
enum DrStatus dr_graph_has_cycle(const struct DrGraph *g, uint32_t len, bool *out);

// The quadrangle graph Q(q) shifted by `(alpha2, alpha3)`.
//
// # Safety
// `out` must be writable.
enum DrStatus dr_build_quadrangle(uint64_t q,
                                  uint64_t alpha2,
                                  uint64_t alpha3,
                                  struct DrGraph **out);

// The hexagon graph H(q) shifted by `beta[0..4]`; `beta` may be null
// for the unshifted graph.
//
// # Safety
// `beta` must be null or point to 4 values; `out` must be writable.
enum DrStatus dr_build_hexagon(uint64_t q, const uint64_t *beta, struct DrGraph **out);

// Exact partition of K_n into parts of girth at least `girth` (8 or 12).
//
// # Safety
// `out` must be writable.
enum DrStatus dr_cover_complete(size_t n, uint32_t girth, struct DrPartition **out);

// Partition of K_{q^k,q^k} into q^(k-1) shifted copies, `k` = `arity`
// (3 or 5).
//
// # Safety
// `out` must be writable.
enum DrStatus dr_partition_bipartite_exact(uint64_t q, size_t arity, struct DrPartition **out);

// Partitions `g` into parts without a cycle of length `cycle` (6 or 10)
// using the default configuration and the given seed.
//
// # Safety
// `g` must be a live handle and `out` writable.
enum DrStatus dr_decompose(const struct DrGraph *g,
                           uint32_t cycle,
                           uint64_t seed,
                           struct DrPartition **out);

// # Safety
// `p` must be null or a handle from this library not yet freed.
void dr_partition_free(struct DrPartition *p);

// Number of stored (nonempty) parts, or 0 for a null handle.
//
// # Safety
// `p` must be null or a live handle.
size_t dr_partition_part_count(const struct DrPartition *p);

// Number of parts including empty ones, or 0 for a null handle.
//
// # Safety
// `p` must be null or a live handle.
size_t dr_partition_declared_parts(const struct DrPartition *p);

// Vertex count of the partitioned host graph, or 0 for a null handle.
//
// # Safety
// `p` must be null or a live handle.
size_t dr_partition_vertex_count(const struct DrPartition *p);

// Id and edge count of part `index`.
//
// # Safety
// `p` must be a live handle; `id` and `edges` must be writable.
enum DrStatus dr_partition_part_info(const struct DrPartition *p,
                                     size_t index,
                                     size_t *id,
                                     size_t *edges);

// Copies the edges of part `index` into `buf` (room for `cap` edges).
//
// # Safety
// `p` must be a live handle and `buf` must have room for `2 * cap` values.
enum DrStatus dr_partition_part_edges(const struct DrPartition *p,
                                      size_t index,
                                      uint32_t *buf,
                                      size_t cap);

// Re-checks exactness and the target property of every part.
//
// # Safety
// `p` must be a live handle and `passed` writable.
enum DrStatus dr_partition_verify(const struct DrPartition *p, bool *passed);

// Lower-bound exponent `1 + 2/(3k - 5 + delta)` as a reduced fraction.
//
// # Safety
// `num` and `den` must be writable.
enum DrStatus dr_lower_bound_exponent(uint32_t k, int64_t *num, int64_t *den);

#endif  /* DEGREE_RAMSEY_H */
