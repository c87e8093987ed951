#ifndef CATSQ_H
#define CATSQ_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CatsqItem {
  CATSQ_ITEM_CATEGORIES = 0,
  CATSQ_ITEM_FUNCTORS = 1,
  CATSQ_ITEM_NATS = 2,
  CATSQ_ITEM_SQUARES = 3,
  CATSQ_ITEM_PRESHEAVES = 4,
} CatsqItem;

typedef enum CatsqLocalizer {
  CATSQ_LOCALIZER_W0 = 0,
  CATSQ_LOCALIZER_WGR = 1,
} CatsqLocalizer;

/**
 * Status codes; the first four match the exit codes of the `catsq` binary.
 */
typedef enum CatsqStatus {
  /**
   * The call succeeded, or the checked property holds.
   */
  CATSQ_STATUS_OK = 0,
  /**
   * The checked property fails; the report lists witnesses.
   */
  CATSQ_STATUS_FAILS = 1,
  CATSQ_STATUS_INVALID_INPUT = 2,
  CATSQ_STATUS_SIZE_GUARD = 3,
  CATSQ_STATUS_NULL_POINTER = 4,
  CATSQ_STATUS_INVALID_UTF8 = 5,
  CATSQ_STATUS_PANIC = 6,
} CatsqStatus;

/**
 * A parsed and validated workspace.
 */
typedef struct CatsqWorkspace CatsqWorkspace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses `.catsq` text. On success `*out` receives a new handle; on
 * failure it is set to null and the positioned message is available from
 * `catsq_last_error`.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum CatsqStatus catsq_workspace_parse(const char *text, struct CatsqWorkspace **out);

/**
 * A deterministic random workspace: a square `D` on corners `A'`, `A`,
 * `B'`, `B` and a presheaf `F` on `A`.
 */
struct CatsqWorkspace *catsq_workspace_generate(uint64_t seed,
                                                size_t max_objects,
                                                size_t max_arrows);

/**
 * # Safety
 * `ws` must be null or a handle returned by this library, not yet freed.
 */
void catsq_workspace_free(struct CatsqWorkspace *ws);

/**
 * Number of declared items of one kind.
 *
 * # Safety
 * `ws` must be a live handle.
 */
size_t catsq_workspace_count(const struct CatsqWorkspace *ws, enum CatsqItem item);

/**
 * The workspace in `.catsq` syntax.
 *
 * # Safety
 * `ws` must be a live handle and `out` a valid pointer.
 */
enum CatsqStatus catsq_workspace_to_text(const struct CatsqWorkspace *ws, char **out);

/**
 * Checks `property` (`exact`, `weak-exact`, `bc-left`, `bc-right`,
 * `aspheric`, `coaspheric`, `proper`, `smooth`, `local-equiv` or `oracle`).
 * `name` is the square or functor, `over` the second functor for
 * `local-equiv`; either may be null to pick the only item of its kind.
 * The JSON report is stored in `*out_json` when it is non-null.
 *
 * # Safety
 * String arguments must be null or nul-terminated; `ws` must be live.
 */
enum CatsqStatus catsq_check(const struct CatsqWorkspace *ws,
                             const char *property,
                             const char *name,
                             const char *over,
                             enum CatsqLocalizer loc,
                             bool all_witnesses,
                             char **out_json);

/**
 * Per-object sizes of `u_* F` (`right`) or `u_! F`, in the `sizes` field
 * of the JSON report.
 *
 * # Safety
 * String arguments must be null or nul-terminated; `ws` must be live.
 */
enum CatsqStatus catsq_kan(const struct CatsqWorkspace *ws,
                           bool right,
                           const char *functor,
                           const char *presheaf,
                           char **out_json);

/**
 * The presheaf localizer of a category, in the `classification` field.
 *
 * # Safety
 * `category` must be null or nul-terminated; `ws` must be live.
 */
enum CatsqStatus catsq_classify(const struct CatsqWorkspace *ws,
                                const char *category,
                                char **out_json);

/**
 * Message of the last failed call on this thread, or null. Valid until
 * the next call into this library on the same thread.
 */
const char *catsq_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void catsq_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CATSQ_H */
