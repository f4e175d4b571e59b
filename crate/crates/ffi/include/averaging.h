#ifndef AVERAGING_H
#define AVERAGING_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AvgStatus {
  AVG_STATUS_OK = 0,
  AVG_STATUS_NULL_POINTER = 1,
  AVG_STATUS_INVALID_INPUT = 2,
  AVG_STATUS_GUARD_EXCEEDED = 3,
  AVG_STATUS_NOT_A_GROUP = 4,
  AVG_STATUS_OUT_OF_BOUNDS = 5,
  AVG_STATUS_INTERNAL = 6,
} AvgStatus;

/**
 * A finite group.
 */
typedef struct AvgGroup AvgGroup;

/**
 * A finite magma (binary operation table).
 */
typedef struct AvgMagma AvgMagma;

/**
 * A self-map of `{0, …, n-1}`.
 */
typedef struct AvgMap AvgMap;

/**
 * An owned list of maps, as returned by enumeration.
 */
typedef struct AvgMapList AvgMapList;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message into `buf` (NUL-terminated, truncated to
 * `len`). Returns the full message length excluding the terminator, or 0
 * when there is no error.
 *
 * # Safety
 * `buf` must be null or point to `len` writable bytes.
 */
size_t avg_last_error_message(char *buf, size_t len);

/**
 * Builds a magma from a row-major `size × size` table.
 *
 * # Safety
 * `table` must point to `size * size` readable values; `out` must be writable.
 */
enum AvgStatus avg_magma_new(size_t size, const size_t *table, struct AvgMagma **out);

/**
 * The flip rack `x ⋄ y = n - 1 - y`.
 *
 * # Safety
 * `out` must be writable.
 */
enum AvgStatus avg_magma_flip(size_t size, struct AvgMagma **out);

/**
 * # Safety
 * `m` must be null or a handle from this library not yet freed.
 */
void avg_magma_free(struct AvgMagma *m);

/**
 * # Safety
 * `m` must be a live handle.
 */
size_t avg_magma_size(const struct AvgMagma *m);

/**
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum AvgStatus avg_magma_op(const struct AvgMagma *m, size_t x, size_t y, size_t *out);

/**
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum AvgStatus avg_magma_is_rack(const struct AvgMagma *m, bool *out);

/**
 * Builds a group from its Cayley table; fails with `NotAGroup` when the
 * table violates a group axiom.
 *
 * # Safety
 * `table` must point to `size * size` readable values; `out` must be writable.
 */
enum AvgStatus avg_group_new(size_t size, const size_t *table, struct AvgGroup **out);

/**
 * # Safety
 * `g` must be null or a handle from this library not yet freed.
 */
void avg_group_free(struct AvgGroup *g);

/**
 * # Safety
 * `g` must be a live handle.
 */
size_t avg_group_order(const struct AvgGroup *g);

/**
 * The conjugation rack `x ⋄ y = x y x⁻¹`.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum AvgStatus avg_group_conjugation_rack(const struct AvgGroup *g, struct AvgMagma **out);

/**
 * # Safety
 * `image` must point to `size` readable values; `out` must be writable.
 */
enum AvgStatus avg_map_new(size_t size, const size_t *image, struct AvgMap **out);

/**
 * # Safety
 * `a` must be null or a handle from this library not yet freed.
 */
void avg_map_free(struct AvgMap *a);

/**
 * # Safety
 * `a` must be a live handle.
 */
size_t avg_map_size(const struct AvgMap *a);

/**
 * # Safety
 * `a` must be a live handle and `out` writable.
 */
enum AvgStatus avg_map_get(const struct AvgMap *a, size_t x, size_t *out);

/**
 * Whether `A(x) ⋄ A(y) = A(A(x) ⋄ y)` for all `x, y` in the rack `m`.
 *
 * # Safety
 * `m`, `a` must be live handles and `out` writable.
 */
enum AvgStatus avg_is_averaging_rack(const struct AvgMagma *m, const struct AvgMap *a, bool *out);

/**
 * Whether `A(x) A(y) A(x)⁻¹ = A(A(x) y A(x)⁻¹)` for all `x, y` in `g`.
 *
 * # Safety
 * `g`, `a` must be live handles and `out` writable.
 */
enum AvgStatus avg_is_averaging_group(const struct AvgGroup *g, const struct AvgMap *a, bool *out);

/**
 * All averaging operators on the rack `m`. `max_size` of 0 keeps the
 * library's default guard.
 *
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum AvgStatus avg_enumerate_averaging_rack(const struct AvgMagma *m,
                                            size_t max_size,
                                            struct AvgMapList **out);

/**
 * # Safety
 * `l` must be a live handle.
 */
size_t avg_map_list_len(const struct AvgMapList *l);

/**
 * Copies entry `i` into a new map handle owned by the caller.
 *
 * # Safety
 * `l` must be a live handle and `out` writable.
 */
enum AvgStatus avg_map_list_get(const struct AvgMapList *l, size_t i, struct AvgMap **out);

/**
 * # Safety
 * `l` must be null or a handle from this library not yet freed.
 */
void avg_map_list_free(struct AvgMapList *l);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AVERAGING_H */
