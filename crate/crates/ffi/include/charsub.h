#ifndef CHARSUB_H
#define CHARSUB_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CharsubKind {
  CHARSUB_KIND_ALL = 0,
  CHARSUB_KIND_CHARACTERISTIC = 1,
  CHARSUB_KIND_FULLY_INVARIANT = 2,
} CharsubKind;

typedef enum CharsubStatus {
  CHARSUB_STATUS_OK = 0,
  CHARSUB_STATUS_NULL_POINTER = 1,
  CHARSUB_STATUS_INVALID_ARGUMENT = 2,
  CHARSUB_STATUS_CAP_EXCEEDED = 3,
  CHARSUB_STATUS_INTERNAL = 4,
} CharsubStatus;

/**
 * Opaque handle to a group `⊕ Z(p^{k_i})` and its cached subgroup data.
 */
typedef struct CharsubShape CharsubShape;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a shape from a prime and `len` exponents (any order).
 *
 * # Safety
 * `exponents` must point to `len` readable values; `out` must be writable.
 */
enum CharsubStatus charsub_shape_new(uint64_t prime,
                                     const uint32_t *exponents,
                                     size_t len,
                                     struct CharsubShape **out);

/**
 * Releases a shape. Null is ignored.
 *
 * # Safety
 * `shape` must come from `charsub_shape_new` and not be used afterwards.
 */
void charsub_shape_free(struct CharsubShape *shape);

/**
 * # Safety
 * `shape` must be a live handle; `out` must be writable.
 */
enum CharsubStatus charsub_shape_order(const struct CharsubShape *shape, uint64_t *out);

/**
 * Classification verdict as JSON.
 *
 * # Safety
 * `shape` must be a live handle; `out` must be writable.
 */
enum CharsubStatus charsub_classify_json(const struct CharsubShape *shape, char **out);

/**
 * Subgroup list as JSON: order, generators, type and invariance flags.
 *
 * # Safety
 * `shape` must be a live handle; `out` must be writable.
 */
enum CharsubStatus charsub_enumerate_json(const struct CharsubShape *shape,
                                          enum CharsubKind kind,
                                          char **out);

/**
 * Whether the subgroup generated by the given elements is characteristic.
 *
 * # Safety
 * `coords` must hold `n_gens * rank` values; `out` must be writable.
 */
enum CharsubStatus charsub_is_characteristic(const struct CharsubShape *shape,
                                             const int64_t *coords,
                                             size_t n_gens,
                                             bool *out);

/**
 * Whether the subgroup generated by the given elements is fully invariant.
 *
 * # Safety
 * As for `charsub_is_characteristic`.
 */
enum CharsubStatus charsub_is_fully_invariant(const struct CharsubShape *shape,
                                              const int64_t *coords,
                                              size_t n_gens,
                                              bool *out);

/**
 * Runs claims (`"all"` or a comma list) over every group of order at most
 * `max_order`, returning a JSON array of reports. Violations are reported in
 * the JSON, not through the status.
 *
 * # Safety
 * `claims` must be a NUL-terminated string; `out` must be writable.
 */
enum CharsubStatus charsub_verify_json(uint64_t prime,
                                       uint64_t max_order,
                                       const char *claims,
                                       size_t jobs,
                                       char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void charsub_string_free(char *s);

/**
 * Message for the last failing call on this thread; empty after a success.
 * Valid until the next call on the same thread.
 */
const char *charsub_last_error(void);

/**
 * Library version, static storage.
 */
const char *charsub_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHARSUB_H */
