#ifndef PREGEOM_H
#define PREGEOM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PregeomStatus {
  PREGEOM_STATUS_OK = 0,
  PREGEOM_STATUS_NULL_POINTER = 1,
  PREGEOM_STATUS_INVALID_INPUT = 2,
  PREGEOM_STATUS_CAPACITY = 3,
  PREGEOM_STATUS_THEOREM_VIOLATION = 4,
  PREGEOM_STATUS_INTERNAL = 5,
} PregeomStatus;

typedef enum PregeomVerdict {
  PREGEOM_VERDICT_NOT_IN_FAMILY = 0,
  PREGEOM_VERDICT_DEGENERATE = 1,
  PREGEOM_VERDICT_PRIMITIVE_BASIC = 2,
  PREGEOM_VERDICT_NORMAL_BASIC = 3,
  PREGEOM_VERDICT_NEITHER_BASIC = 4,
} PregeomVerdict;

/**
 * A pregeometry together with a group acting on it.
 */
typedef struct PregeomBinding PregeomBinding;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer stays
 * valid until the next call into this library on the same thread.
 */
const char *pregeom_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void pregeom_string_free(char *s);

/**
 * Parses a binding document. Referenced files are resolved against the
 * current directory.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum PregeomStatus pregeom_binding_from_json(const char *json, struct PregeomBinding **out);

/**
 * Builds a named construction. `params_json` is a JSON object of string
 * values such as `{"p":"3","d":"1"}`, or null for none. A `max_order` of 0
 * selects the default limit.
 *
 * # Safety
 * String arguments must be nul-terminated and `out` a valid pointer.
 */
enum PregeomStatus pregeom_binding_generate(const char *name,
                                            const char *params_json,
                                            uint64_t max_order,
                                            struct PregeomBinding **out);

/**
 * Releases a binding. Null is ignored.
 *
 * # Safety
 * `b` must come from this library and not have been freed.
 */
void pregeom_binding_free(struct PregeomBinding *b);

/**
 * # Safety
 * `b` must be a live binding and `out` a valid pointer.
 */
enum PregeomStatus pregeom_binding_element_count(const struct PregeomBinding *b, size_t *out);

/**
 * # Safety
 * `b` must be a live binding and `out` a valid pointer.
 */
enum PregeomStatus pregeom_binding_rank(const struct PregeomBinding *b, size_t *out);

/**
 * Group order, saturating at `UINT64_MAX`.
 *
 * # Safety
 * `b` must be a live binding and `out` a valid pointer.
 */
enum PregeomStatus pregeom_binding_group_order(const struct PregeomBinding *b, uint64_t *out);

/**
 * Writes the binding as a self-contained JSON document.
 *
 * # Safety
 * `b` must be a live binding and `out` a valid pointer.
 */
enum PregeomStatus pregeom_binding_to_json(const struct PregeomBinding *b, char **out);

/**
 * Classifies the binding. `report_json` may be null; otherwise it receives the
 * full report document.
 *
 * # Safety
 * `b` must be a live binding, `verdict` a valid pointer and `report_json`
 * null or valid.
 */
enum PregeomStatus pregeom_classify(const struct PregeomBinding *b,
                                    uint64_t max_order,
                                    enum PregeomVerdict *verdict,
                                    char **report_json);

/**
 * Quotient by the normal subgroup generated by `count` permutations in cycle
 * notation, such as `"(0 2)(1 3)"`.
 *
 * # Safety
 * `b` must be a live binding, `generators` must point to `count`
 * nul-terminated strings and `out` must be a valid pointer.
 */
enum PregeomStatus pregeom_normal_quotient(const struct PregeomBinding *b,
                                           const char *const *generators,
                                           size_t count,
                                           struct PregeomBinding **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PREGEOM_H */
