#ifndef QCELL_H
#define QCELL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QcellConclusion {
  QCELL_CONCLUSION_DIAGONAL_ON_DEGREE_ONE = 0,
  QCELL_CONCLUSION_PARTIAL = 1,
  QCELL_CONCLUSION_MANUAL_STEP_REQUIRED = 2,
} QcellConclusion;

typedef enum QcellStatus {
  QCELL_STATUS_OK = 0,
  QCELL_STATUS_NULL_POINTER = 1,
  QCELL_STATUS_INVALID_ARGUMENT = 2,
  QCELL_STATUS_COMPUTATION_FAILED = 3,
  QCELL_STATUS_BUFFER_TOO_SMALL = 4,
  QCELL_STATUS_PANIC = 5,
} QcellStatus;

// Opaque analysis result.
typedef struct QcellReport QcellReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until the next call.
const char *qcell_last_error(void);

// Library version as a static string.
const char *qcell_version(void);

// Analyze `(type, J)`; `j` holds `j_len` simple-root indices.
//
// # Safety
// `ty` must be a NUL-terminated string, `j` must point to `j_len` values, and `out` must be writable.
enum QcellStatus qcell_analyze(const char *ty,
                               const uint32_t *j,
                               size_t j_len,
                               struct QcellReport **out);

// # Safety
// `report` must come from [`qcell_analyze`] and not be used afterwards. Null is ignored.
void qcell_report_free(struct QcellReport *report);

// # Safety
// `report` must be a live handle and `out` writable.
enum QcellStatus qcell_report_conclusion(const struct QcellReport *report,
                                         enum QcellConclusion *out);

// Number of degree-one roots and how many of them are separated.
//
// # Safety
// `report` must be a live handle; both out-pointers must be writable.
enum QcellStatus qcell_report_separation(const struct QcellReport *report,
                                         size_t *degree_one,
                                         size_t *separated);

// The report as JSON; release with [`qcell_string_free`].
//
// # Safety
// `report` must be a live handle and `out` writable.
enum QcellStatus qcell_report_json(const struct QcellReport *report, char **out);

// The automorphism-group descriptor, e.g. `(K^×)^2`; release with [`qcell_string_free`].
//
// # Safety
// `report` must be a live handle and `out` writable.
enum QcellStatus qcell_report_descriptor(const struct QcellReport *report, char **out);

// # Safety
// `s` must come from this library and not be used afterwards. Null is ignored.
void qcell_string_free(char *s);

// Theta degrees of `(type, J)` written to `buf`; `len` receives the count.
//
// When `cap` is too small, `len` still receives the required count and
// `QCELL_STATUS_BUFFER_TOO_SMALL` is returned.
//
// # Safety
// `ty` must be a NUL-terminated string, `j` must point to `j_len` values,
// `buf` to `cap` writable values (or be null with `cap == 0`), and `len` must be writable.
enum QcellStatus qcell_theta_degrees(const char *ty,
                                     const uint32_t *j,
                                     size_t j_len,
                                     int64_t *buf,
                                     size_t cap,
                                     size_t *len);

// Enumerate cases up to `max_rank`; `out` receives JSON `{cases, missing, extra}`.
//
// # Safety
// `out` must be writable. Release the string with [`qcell_string_free`].
enum QcellStatus qcell_enumerate_json(size_t max_rank, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QCELL_H */
