#ifndef ROBUSTIP_H
#define ROBUSTIP_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. Values 0 to 3 agree with the command-line exit codes.
 */
typedef enum RipStatus {
  RIP_STATUS_OK = 0,
  RIP_STATUS_INVALID = 1,
  RIP_STATUS_INFEASIBLE = 2,
  RIP_STATUS_CAP_EXCEEDED = 3,
  RIP_STATUS_PARSE = 5,
  RIP_STATUS_DIMENSION = 6,
  RIP_STATUS_OVERFLOW = 7,
  RIP_STATUS_IO = 8,
  RIP_STATUS_NULL_POINTER = 9,
  /**
   * A string argument is not valid UTF-8.
   */
  RIP_STATUS_UTF8 = 10,
  /**
   * The output buffer is shorter than the required length.
   */
  RIP_STATUS_BUFFER_TOO_SMALL = 11,
  RIP_STATUS_PANIC = 12,
} RipStatus;

typedef enum RipVariant {
  /**
   * `min_x max_c` over a box of costs.
   */
  RIP_VARIANT_MIN_MAX_BOX = 0,
  /**
   * `max_c min_x` over a list of costs.
   */
  RIP_VARIANT_MAX_MIN_LIST = 1,
  /**
   * `min_x max_c` over a list of costs, by enumeration of the feasible set.
   */
  RIP_VARIANT_MIN_MAX_LIST = 2,
  /**
   * `max_c min_x` over a box of costs, by enumeration of the box.
   */
  RIP_VARIANT_MAX_MIN_BOX = 3,
} RipVariant;

/**
 * A Graver basis tied to one constraint matrix.
 */
typedef struct RipGraver RipGraver;

/**
 * A feasible set with its cost model.
 */
typedef struct RipInstance RipInstance;

/**
 * The outcome of one robust solve.
 */
typedef struct RipReport RipReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *rip_last_error_message(void);

/**
 * Library version as a static nul-terminated string.
 */
const char *rip_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and must not be used afterwards.
 */
void rip_string_free(char *s);

/**
 * Parses an instance document.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum RipStatus rip_instance_from_json(const char *json, struct RipInstance **out);

/**
 * Number of variables, or 0 for a null handle.
 *
 * # Safety
 * `inst` must be null or a live instance handle.
 */
size_t rip_instance_dim(const struct RipInstance *inst);

/**
 * # Safety
 * `inst` must be null or a live instance handle, not used afterwards.
 */
void rip_instance_free(struct RipInstance *inst);

/**
 * Computes the Graver basis of the instance's matrix. A zero limit keeps
 * the default.
 *
 * # Safety
 * `inst` must be a live instance handle; `out` must be writable.
 */
enum RipStatus rip_graver_compute(const struct RipInstance *inst,
                                  uint64_t max_elements,
                                  uint64_t max_pair_reductions,
                                  struct RipGraver **out);

/**
 * Parses a Graver basis document.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum RipStatus rip_graver_from_json(const char *json, struct RipGraver **out);

/**
 * Serializes the basis into a new string owned by the caller.
 *
 * # Safety
 * `g` must be a live basis handle; `out` must be writable.
 */
enum RipStatus rip_graver_to_json(const struct RipGraver *g, char **out);

/**
 * Number of stored elements, one per `±` pair, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live basis handle.
 */
size_t rip_graver_len(const struct RipGraver *g);

/**
 * Length of each element, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live basis handle.
 */
size_t rip_graver_dim(const struct RipGraver *g);

/**
 * Copies element `index` into `buf`. `out_len`, when not null, receives the
 * element length even if the buffer is too small.
 *
 * # Safety
 * `g` must be a live basis handle; `buf` must hold `len` values.
 */
enum RipStatus rip_graver_element(const struct RipGraver *g,
                                  size_t index,
                                  int64_t *buf,
                                  size_t len,
                                  size_t *out_len);

/**
 * # Safety
 * `g` must be null or a live basis handle, not used afterwards.
 */
void rip_graver_free(struct RipGraver *g);

/**
 * Solves `variant` on the instance. With `profit` set the cost model is
 * read as profits. `g` may be null; the instance's stored basis is then
 * used, and variants that need one fail with `Invalid` when it is absent.
 *
 * # Safety
 * `inst` must be a live instance handle, `g` null or a live basis handle,
 * `out` writable.
 */
enum RipStatus rip_solve(const struct RipInstance *inst,
                         const struct RipGraver *g,
                         enum RipVariant variant,
                         bool profit,
                         struct RipReport **out);

/**
 * Writes the robust value into `value`.
 *
 * # Safety
 * `r` must be a live report handle; `value` must be writable.
 */
enum RipStatus rip_report_value(const struct RipReport *r, int64_t *value);

/**
 * Copies the optimizer: the point for min-max variants, the cost for
 * max-min variants.
 *
 * # Safety
 * `r` must be a live report handle; `buf` must hold `len` values.
 */
enum RipStatus rip_report_optimizer(const struct RipReport *r,
                                    int64_t *buf,
                                    size_t len,
                                    size_t *out_len);

/**
 * Copies the witness: the attaining cost for min-max variants, the
 * attaining point for max-min variants.
 *
 * # Safety
 * `r` must be a live report handle; `buf` must hold `len` values.
 */
enum RipStatus rip_report_witness(const struct RipReport *r,
                                  int64_t *buf,
                                  size_t len,
                                  size_t *out_len);

/**
 * Serializes the report as a result document.
 *
 * # Safety
 * `r` must be a live report handle; `out` must be writable.
 */
enum RipStatus rip_report_to_json(const struct RipReport *r, char **out);

/**
 * # Safety
 * `r` must be null or a live report handle, not used afterwards.
 */
void rip_report_free(struct RipReport *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ROBUSTIP_H */
