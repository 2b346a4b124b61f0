#ifndef KMROOTS_H
#define KMROOTS_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result codes.
typedef enum KmStatus {
  KM_STATUS_OK = 0,
  KM_STATUS_NULL_POINTER = 1,
  KM_STATUS_INVALID_UTF8 = 2,
  KM_STATUS_SYNTAX = 3,
  KM_STATUS_INVALID_MATRIX = 4,
  KM_STATUS_NOT_REAL_ROOT = 5,
  KM_STATUS_NOT_SUBSYSTEM = 6,
  KM_STATUS_EXCEEDED = 7,
  KM_STATUS_OVERFLOW = 8,
  KM_STATUS_PANIC = 9,
  KM_STATUS_OTHER = 10,
} KmStatus;

// Matrix type.
typedef enum KmType {
  KM_TYPE_FINITE = 0,
  KM_TYPE_AFFINE = 1,
  KM_TYPE_HYPERBOLIC = 2,
  KM_TYPE_INDEFINITE = 3,
} KmType;

// A generalized Cartan matrix.
typedef struct KmCartan KmCartan;

// A maximal rank subsystem of a root system.
typedef struct KmEmbedding KmEmbedding;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a NUL-terminated string.
const char *km_version(void);

// Message of the last error on this thread, or NULL. The pointer stays
// valid until the next failing call on the same thread.
const char *km_last_error(void);

// Parse diagram text (see the DSL); Coxeter diagrams need labels 3/inf.
//
// # Safety
// `text` is a NUL-terminated string; `out` is writable.
enum KmStatus km_cartan_parse(const char *text, struct KmCartan **out);

// Build from `n * n` row-major entries.
//
// # Safety
// `entries` points to `n * n` values; `out` is writable.
enum KmStatus km_cartan_new(size_t n, const int64_t *entries, struct KmCartan **out);

// # Safety
// `a` is NULL or a handle from this library, not used afterwards.
void km_cartan_free(struct KmCartan *a);

// # Safety
// `a` is a valid handle.
size_t km_cartan_rank(const struct KmCartan *a);

// # Safety
// `a` is a valid handle; `out` is writable.
enum KmStatus km_cartan_classify(const struct KmCartan *a, enum KmType *out);

// Whether `v` (`rank` coordinates in the simple roots) is a real root.
//
// # Safety
// `a` is a valid handle, `v` points to `rank` values, `out` is writable.
enum KmStatus km_is_real_root(const struct KmCartan *a, const int64_t *v, bool *out);

// Subsystem with simple roots given as `rank * rank` row-major
// coordinates (one root per row).
//
// # Safety
// `a` is a valid handle, `roots` points to `rank * rank` values, `out` is
// writable.
enum KmStatus km_embedding_new(const struct KmCartan *a,
                               const int64_t *roots,
                               struct KmEmbedding **out);

// # Safety
// `e` is NULL or a handle from this library, not used afterwards.
void km_embedding_free(struct KmEmbedding *e);

// # Safety
// `e` is a valid handle; `out` is writable.
enum KmStatus km_embedding_lattice_index(const struct KmEmbedding *e, uint64_t *out);

// Index of the reflection subgroup, by coset enumeration with at most
// `max_cosets` live cosets.
//
// # Safety
// `e` is a valid handle; `out` is writable.
enum KmStatus km_embedding_group_index(const struct KmEmbedding *e,
                                       size_t max_cosets,
                                       uint64_t *out);

// Condition (*) on roots of height at most `height`.
//
// # Safety
// `e` is a valid handle; `out` is writable.
enum KmStatus km_embedding_star(const struct KmEmbedding *e, uint64_t height, bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KMROOTS_H */
