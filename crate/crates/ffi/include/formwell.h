#ifndef FORMWELL_H
#define FORMWELL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FwStatus {
  FW_STATUS_OK = 0,
  FW_STATUS_NULL_POINTER = 1,
  FW_STATUS_INVALID_UTF8 = 2,
  FW_STATUS_PARSE_ERROR = 3,
  FW_STATUS_COMPUTE_ERROR = 4,
  FW_STATUS_INTERNAL_ERROR = 5,
  FW_STATUS_PANIC = 6,
} FwStatus;

typedef enum FwDuality {
  FW_DUALITY_SELF_DUAL = 0,
  FW_DUALITY_ANTI_SELF_DUAL = 1,
  FW_DUALITY_BOTH = 2,
  FW_DUALITY_NEITHER = 3,
} FwDuality;

typedef enum FwMetric {
  FW_METRIC_EUCLIDEAN = 0,
  FW_METRIC_MINKOWSKI = 1,
} FwMetric;

/**
 * A parsed problem file.
 */
typedef struct FwProblem FwProblem;

/**
 * A vacuum-solution report.
 */
typedef struct FwReport FwReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a problem file from a NUL-terminated UTF-8 string.
 *
 * # Safety
 * `text` must be a valid C string; `out` must be writable.
 */
enum FwStatus fw_problem_parse(const char *text, struct FwProblem **out);

/**
 * # Safety
 * `p` must come from `fw_problem_parse` and not be freed twice. Null is ignored.
 */
void fw_problem_free(struct FwProblem *p);

/**
 * Runs the full vacuum-solution check under the problem's metric.
 *
 * # Safety
 * `p` must be a live problem handle; `out` must be writable.
 */
enum FwStatus fw_verify(const struct FwProblem *p, struct FwReport **out);

/**
 * # Safety
 * `r` must be a live report handle; `out` must be writable.
 */
enum FwStatus fw_report_is_vacuum(const struct FwReport *r, bool *out);

/**
 * # Safety
 * `r` must be a live report handle; `out` must be writable.
 */
enum FwStatus fw_report_duality(const struct FwReport *r, enum FwDuality *out);

/**
 * The report as compact JSON with the same keys as `formwell verify --json`.
 *
 * # Safety
 * `r` must be a live report handle; `out` must be writable.
 */
enum FwStatus fw_report_to_json(const struct FwReport *r, char **out);

/**
 * # Safety
 * `r` must come from `fw_verify` and not be freed twice. Null is ignored.
 */
void fw_report_free(struct FwReport *r);

/**
 * Hodge star of a form given in the form syntax, rendered back to text.
 *
 * # Safety
 * `form` must be a valid C string; `out` must be writable.
 */
enum FwStatus fw_star(enum FwMetric metric, const char *form, char **out);

/**
 * # Safety
 * `s` must come from this library and not be freed twice. Null is ignored.
 */
void fw_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. Owned by the library.
 */
const char *fw_last_error(void);

/**
 * Library version as a static C string.
 */
const char *fw_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FORMWELL_H */
