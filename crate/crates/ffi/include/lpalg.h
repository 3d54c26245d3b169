#ifndef LPALG_H
#define LPALG_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LpStatus {
  LP_STATUS_OK = 0,
  LP_STATUS_NULL_ARGUMENT = 1,
  LP_STATUS_INVALID_UTF8 = 2,
  LP_STATUS_PARSE = 3,
  LP_STATUS_DOMAIN = 4,
  LP_STATUS_INVALID_SEED = 5,
  LP_STATUS_CONDITION = 6,
  LP_STATUS_REJECTED = 7,
  LP_STATUS_CONSISTENCY = 8,
  LP_STATUS_IO = 9,
  LP_STATUS_PANIC = 10,
} LpStatus;

typedef enum LpMembership {
  LP_MEMBERSHIP_NOT_MEMBER = 0,
  LP_MEMBERSHIP_MEMBER = 1,
  /**
   * The lower-bound search ran out of budget.
   */
  LP_MEMBERSHIP_UNDECIDED = 2,
} LpMembership;

typedef enum LpBound {
  LP_BOUND_UPPER = 0,
  LP_BOUND_LOWER = 1,
} LpBound;

/**
 * Opaque seed handle.
 */
typedef struct LpSeed LpSeed;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parse a seed from its JSON file format.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum LpStatus lp_seed_from_json(const char *json, struct LpSeed **out);

/**
 * Release a seed. Null is ignored.
 *
 * # Safety
 * `seed` must come from this library and not be freed twice.
 */
void lp_seed_free(struct LpSeed *seed);

/**
 * Number of active variables.
 *
 * # Safety
 * Pointers must be valid.
 */
enum LpStatus lp_seed_rank(const struct LpSeed *seed, size_t *out);

/**
 * Mutate in direction `k` into a new seed; the input is left unchanged.
 *
 * # Safety
 * Pointers must be valid.
 */
enum LpStatus lp_seed_mutate(const struct LpSeed *seed, size_t k, struct LpSeed **out);

/**
 * The seed in its JSON file format.
 *
 * # Safety
 * Pointers must be valid; free the result with `lp_string_free`.
 */
enum LpStatus lp_seed_to_json(const struct LpSeed *seed, char **out);

/**
 * `{"hat": {var: F̂}, "denominators": {var: F/F̂}, "trivial": bool}`.
 *
 * # Safety
 * Pointers must be valid; free the result with `lp_string_free`.
 */
enum LpStatus lp_seed_hat_json(const struct LpSeed *seed, char **out);

/**
 * Check every cluster variable reached by words up to `max_len`; `out` is 1
 * when all of them are Laurent in the initial cluster.
 *
 * # Safety
 * Pointers must be valid.
 */
enum LpStatus lp_laurent_check(const struct LpSeed *seed, size_t max_len, int32_t *out);

/**
 * The bound condition clause by clause, as JSON.
 *
 * # Safety
 * Pointers must be valid; free the result with `lp_string_free`.
 */
enum LpStatus lp_condition12_json(const struct LpSeed *seed, char **out);

/**
 * Membership of `expr`, written in the cluster variables, their primed
 * partners `x'` and the frozen variables, in the upper or lower bound.
 * `which` takes an `LpBound` value.
 *
 * # Safety
 * Pointers must be valid and `expr` nul-terminated.
 */
enum LpStatus lp_member(const struct LpSeed *seed,
                        const char *expr,
                        int32_t which,
                        enum LpMembership *out);

/**
 * Release a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void lp_string_free(char *s);

/**
 * Message of the last failed call on this thread, or null. The pointer stays
 * valid until the next call into the library on the same thread.
 */
const char *lp_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LPALG_H */
