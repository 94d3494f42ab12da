#ifndef AQCDGA_H
#define AQCDGA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AqRoute {
  AQ_ROUTE_DER = 0,
  AQ_ROUTE_HARRISON = 1,
} AqRoute;

typedef enum AqStatus {
  AQ_OK = 0,
  AQ_ERR_NULL = 1,
  AQ_ERR_UTF8 = 2,
  AQ_ERR_INPUT = 3,
  AQ_ERR_REFUSED = 4,
  AQ_ERR_DISAGREEMENT = 5,
  AQ_ERR_BUFFER = 6,
  AQ_ERR_PANIC = 7,
} AqStatus;

/**
 * Parsed but not elaborated presentation.
 */
typedef struct AqDocument AqDocument;

/**
 * Elaborated algebras and morphisms.
 */
typedef struct AqModel AqModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or NULL. Valid until the next call.
 */
const char *aq_last_error(void);

/**
 * Static NUL-terminated version string.
 */
const char *aq_version(void);

/**
 * # Safety
 * `s` must come from this library or be NULL.
 */
void aq_string_free(char *s);

/**
 * # Safety
 * `src` is a NUL-terminated string; `out` is writable.
 */
enum AqStatus aq_document_parse(const char *src, struct AqDocument **out_doc);

/**
 * Canonical printed form of a document.
 *
 * # Safety
 * `doc` is a live handle; `out` is writable.
 */
enum AqStatus aq_document_print(const struct AqDocument *doc, char **out_text);

/**
 * # Safety
 * `doc` is a live handle; `out` is writable.
 */
enum AqStatus aq_document_elaborate(const struct AqDocument *doc, struct AqModel **out_model);

/**
 * # Safety
 * `doc` comes from [`aq_document_parse`] or is NULL.
 */
void aq_document_free(struct AqDocument *doc);

/**
 * Parses and elaborates in one step.
 *
 * # Safety
 * `src` is a NUL-terminated string; `out` is writable.
 */
enum AqStatus aq_model_load(const char *src, struct AqModel **out_model);

/**
 * # Safety
 * `m` comes from this library or is NULL.
 */
void aq_model_free(struct AqModel *m);

/**
 * # Safety
 * `m` is a live handle; `out` is writable.
 */
enum AqStatus aq_model_algebra_count(const struct AqModel *m, uintptr_t *out_count);

/**
 * `dim H^degree` of a named algebra.
 *
 * # Safety
 * `m` is a live handle, `algebra` a NUL-terminated string, `out` writable.
 */
enum AqStatus aq_cohomology_dim(const struct AqModel *m,
                                const char *algebra,
                                int32_t degree,
                                uintptr_t *out_dim);

/**
 * Writes `dim H^t_AQ` for `t = lo..=hi` into `dims[0..=hi-lo]`.
 *
 * `morphism` names a morphism of the model, or is NULL to use `source` with trivial
 * coefficients ℚ. `top < 0` leaves the module uncut. The Harrison route fails with
 * `AQ_ERR_REFUSED` if any degree of the window is not certified.
 *
 * # Safety
 * Pointers are live; `dims` has room for `len` entries.
 */
enum AqStatus aq_aq_dims(const struct AqModel *m,
                         const char *source,
                         const char *morphism,
                         int32_t top,
                         int32_t lo,
                         int32_t hi,
                         enum AqRoute route,
                         uintptr_t *dims,
                         uintptr_t len);

/**
 * Runs the command-line driver on `argv[0..argc]` (without a program name) and
 * returns its stdout and exit code.
 *
 * # Safety
 * `argv` holds `argc` NUL-terminated strings; outputs are writable.
 */
enum AqStatus aq_cli_run(const char *const *argv,
                         uintptr_t argc,
                         char **out_stdout,
                         int32_t *out_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AQCDGA_H */
