#ifndef BLOCKFORGE_H
#define BLOCKFORGE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BfStatus {
  BF_STATUS_OK = 0,
  BF_STATUS_NULL_POINTER = 1,
  BF_STATUS_INVALID_UTF8 = 2,
  /**
   * Bad input: unknown group, parse error, not normal, cap exceeded.
   */
  BF_STATUS_INPUT_ERROR = 3,
  /**
   * A mathematical consistency check failed.
   */
  BF_STATUS_CHECK_FAILED = 4,
  BF_STATUS_OUT_OF_RANGE = 5,
  BF_STATUS_PANIC = 6,
} BfStatus;

typedef struct BfBlocks BfBlocks;

typedef struct BfGroup BfGroup;

typedef struct BfTable BfTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until
 * the next call into the library on the same thread.
 */
const char *bf_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *bf_version(void);

/**
 * Frees a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void bf_string_free(char *s);

/**
 * Looks up a builtin group by name.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum BfStatus bf_group_from_catalog(const char *name, struct BfGroup **out);

/**
 * Builds a group from generator-file text.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum BfStatus bf_group_from_generators(const char *text, struct BfGroup **out);

/**
 * # Safety
 * `g` must be a live group handle; `out` must be writable.
 */
enum BfStatus bf_group_order(const struct BfGroup *g, uint64_t *out);

/**
 * # Safety
 * `g` must be NULL or a handle from this library that has not been freed.
 */
void bf_group_free(struct BfGroup *g);

/**
 * Computes the character table of a group.
 *
 * # Safety
 * `g` must be a live group handle; `out` must be writable.
 */
enum BfStatus bf_table_compute(const struct BfGroup *g, struct BfTable **out);

/**
 * Ingests a table file and re-validates it.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum BfStatus bf_table_from_json(const char *json, struct BfTable **out);

/**
 * # Safety
 * `t` must be a live table handle; `out` must be writable.
 */
enum BfStatus bf_table_class_count(const struct BfTable *t, size_t *out);

/**
 * # Safety
 * `t` must be a live table handle; `out` must be writable.
 */
enum BfStatus bf_table_degree(const struct BfTable *t, size_t index, uint64_t *out);

/**
 * Serializes the table; free the result with `bf_string_free`.
 *
 * # Safety
 * `t` must be a live table handle; `out` must be writable.
 */
enum BfStatus bf_table_to_json(const struct BfTable *t, char **out);

/**
 * # Safety
 * `t` must be NULL or a handle from this library that has not been freed.
 */
void bf_table_free(struct BfTable *t);

/**
 * Computes the p-blocks of a table.
 *
 * # Safety
 * `t` must be a live table handle; `out` must be writable.
 */
enum BfStatus bf_blocks_compute(const struct BfTable *t, uint64_t p, struct BfBlocks **out);

/**
 * # Safety
 * `b` must be a live block handle; `out` must be writable.
 */
enum BfStatus bf_blocks_count(const struct BfBlocks *b, size_t *out);

/**
 * # Safety
 * `b` must be a live block handle; `out` must be writable.
 */
enum BfStatus bf_blocks_block_of_char(const struct BfBlocks *b, size_t character, size_t *out);

/**
 * # Safety
 * `b` must be a live block handle; `out` must be writable.
 */
enum BfStatus bf_blocks_defect(const struct BfBlocks *b, size_t block, uint32_t *out);

/**
 * Block report as JSON; free the result with `bf_string_free`.
 *
 * # Safety
 * `b` must be a live block handle; `out` must be writable.
 */
enum BfStatus bf_blocks_to_json(const struct BfBlocks *b, char **out);

/**
 * # Safety
 * `b` must be NULL or a handle from this library that has not been freed.
 */
void bf_blocks_free(struct BfBlocks *b);

/**
 * Analyses `n` inside `g` at the given primes (all primes of `|G|` when
 * `n_primes` is 0) and returns the JSON report. `consistent` receives 1
 * when every internal check passed.
 *
 * # Safety
 * `g` and `n` must be live group handles, `primes` must point to
 * `n_primes` values (or be NULL when `n_primes` is 0), and `out` and
 * `consistent` must be writable.
 */
enum BfStatus bf_frobenius_json(const struct BfGroup *g,
                                const struct BfGroup *n,
                                const uint64_t *primes,
                                size_t n_primes,
                                uint64_t seed,
                                char **out,
                                int32_t *consistent);

/**
 * Named normal subgroup of a catalog group.
 *
 * # Safety
 * `group` and `normal` must be NUL-terminated strings; `out` must be writable.
 */
enum BfStatus bf_normal_from_catalog(const char *group, const char *normal, struct BfGroup **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BLOCKFORGE_H */
