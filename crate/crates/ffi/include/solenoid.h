#ifndef SOLENOID_H
#define SOLENOID_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SolenoidStatus {
  SOLENOID_STATUS_OK = 0,
  SOLENOID_STATUS_NULL_POINTER = 1,
  SOLENOID_STATUS_INVALID_UTF8 = 2,
  SOLENOID_STATUS_PARSE = 3,
  SOLENOID_STATUS_INVALID_SUBGROUP = 4,
  SOLENOID_STATUS_NOT_CONTAINED = 5,
  SOLENOID_STATUS_TORSION = 6,
  SOLENOID_STATUS_NOT_FLIPPABLE = 7,
  SOLENOID_STATUS_NO_SUCH_ORBIT = 8,
  SOLENOID_STATUS_NOT_AN_EDGE = 9,
  SOLENOID_STATUS_BUDGET_EXHAUSTED = 10,
  SOLENOID_STATUS_IO = 11,
  SOLENOID_STATUS_INVALID_TESSELLATION = 12,
  SOLENOID_STATUS_INTERNAL = 13,
  SOLENOID_STATUS_PANIC = 14,
  SOLENOID_STATUS_BUFFER_TOO_SMALL = 15,
} SolenoidStatus;

/**
 * A finite-index subgroup of PSL(2,Z).
 */
typedef struct SolenoidSubgroup SolenoidSubgroup;

/**
 * A tessellation with its distinguished oriented edge.
 */
typedef struct SolenoidTessellation SolenoidTessellation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the message of the last failed call on this thread.
 *
 * # Safety
 * `buf` must point to `len` writable bytes; `needed` may be null.
 */
enum SolenoidStatus solenoid_last_error(char *buf, size_t len, size_t *needed);

/**
 * Library version as a static NUL-terminated string.
 */
const char *solenoid_version(void);

/**
 * Looks up a group by name: `gamma<N>`, `torus`, `full` or `file:<path>`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SolenoidStatus solenoid_subgroup_named(const char *name, struct SolenoidSubgroup **out);

/**
 * # Safety
 * `k` must come from this library and not be used afterwards.
 */
void solenoid_subgroup_free(struct SolenoidSubgroup *k);

/**
 * # Safety
 * `k` must be a valid handle.
 */
enum SolenoidStatus solenoid_subgroup_index(const struct SolenoidSubgroup *k, size_t *out);

/**
 * # Safety
 * `k` must be a valid handle.
 */
enum SolenoidStatus solenoid_subgroup_is_torsion_free(const struct SolenoidSubgroup *k, bool *out);

/**
 * Membership of the element with matrix `[a, b; c, d]`.
 *
 * # Safety
 * `k` must be a valid handle.
 */
enum SolenoidStatus solenoid_subgroup_contains(const struct SolenoidSubgroup *k,
                                               int64_t a,
                                               int64_t b,
                                               int64_t c,
                                               int64_t d,
                                               bool *out);

/**
 * The Farey tessellation viewed as invariant under `k`.
 *
 * # Safety
 * `k` must be a valid handle and `out` a valid pointer.
 */
enum SolenoidStatus solenoid_tessellation_farey(const struct SolenoidSubgroup *k,
                                                struct SolenoidTessellation **out);

/**
 * # Safety
 * `t` must come from this library and not be used afterwards.
 */
void solenoid_tessellation_free(struct SolenoidTessellation *t);

/**
 * # Safety
 * `t` must be a valid handle.
 */
enum SolenoidStatus solenoid_tessellation_label_count(const struct SolenoidTessellation *t,
                                                      size_t *out);

/**
 * Flips the orbit `label`, returning a new handle.
 *
 * # Safety
 * `t` must be a valid handle and `out` a valid pointer.
 */
enum SolenoidStatus solenoid_tessellation_flip(const struct SolenoidTessellation *t,
                                               size_t label,
                                               struct SolenoidTessellation **out);

/**
 * Whether both tessellations have the same edges.
 *
 * # Safety
 * Both handles must be valid.
 */
enum SolenoidStatus solenoid_tessellation_equals(const struct SolenoidTessellation *a,
                                                 const struct SolenoidTessellation *b,
                                                 bool *out);

/**
 * # Safety
 * `t` must be a valid handle; see the module notes for the buffer contract.
 */
enum SolenoidStatus solenoid_tessellation_to_json(const struct SolenoidTessellation *t,
                                                  char *buf,
                                                  size_t len,
                                                  size_t *needed);

/**
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SolenoidStatus solenoid_tessellation_from_json(const char *json,
                                                    struct SolenoidTessellation **out);

/**
 * Canonical fingerprint; equal for tessellations with the same edges and group.
 *
 * # Safety
 * `t` must be a valid handle; see the module notes for the buffer contract.
 */
enum SolenoidStatus solenoid_tessellation_fingerprint(const struct SolenoidTessellation *t,
                                                      char *buf,
                                                      size_t len,
                                                      size_t *needed);

/**
 * Evaluates the characteristic map of `t` at its distinguished edge on a
 * point written `p/q`, `n` or `1/0`.
 *
 * # Safety
 * `t` must be a valid handle and `x` a NUL-terminated string; see the
 * module notes for the buffer contract.
 */
enum SolenoidStatus solenoid_charmap_eval(const struct SolenoidTessellation *t,
                                          const char *x,
                                          char *buf,
                                          size_t len,
                                          size_t *needed);

/**
 * A shortest flip path from `from` to `to`.  Labels go to `labels`
 * (capacity `cap`); `*count` receives the path length.
 *
 * # Safety
 * Handles must be valid; `labels` must hold `cap` entries.
 */
enum SolenoidStatus solenoid_flip_path(const struct SolenoidTessellation *from,
                                       const struct SolenoidTessellation *to,
                                       size_t budget,
                                       size_t *labels,
                                       size_t cap,
                                       size_t *count);

/**
 * Builds every admissible pentagon cell of `k` and checks its relation.
 *
 * # Safety
 * `k` must be a valid handle; output pointers must be valid.
 */
enum SolenoidStatus solenoid_verify_pentagons(const struct SolenoidSubgroup *k,
                                              size_t *checked,
                                              size_t *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SOLENOID_H */
