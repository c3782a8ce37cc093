#ifndef SADEMR_H
#define SADEMR_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible FFI call.
 */
typedef enum SademrStatus {
  SademrStatus_Ok = 0,
  /**
   * A required pointer argument was NULL.
   */
  SademrStatus_NullArgument = 1,
  /**
   * An argument failed validation (bad names, bad config, bad spec).
   */
  SademrStatus_InvalidArgument = 2,
  /**
   * Input bytes were not valid UTF-8.
   */
  SademrStatus_Utf8Error = 3,
  /**
   * A named file or block does not exist.
   */
  SademrStatus_NotFound = 4,
  /**
   * The target already exists (stored file, non-empty output dir).
   */
  SademrStatus_AlreadyExists = 5,
  /**
   * No reachable replica for a block.
   */
  SademrStatus_Unavailable = 6,
  SademrStatus_IoError = 7,
  /**
   * The job could not finish (lost all workers, lost a block).
   */
  SademrStatus_JobFailed = 8,
  /**
   * An internal panic was caught at the boundary.
   */
  SademrStatus_Panic = 9,
} SademrStatus;

/**
 * Opaque simplifier configuration handle.
 */
typedef struct SademrSimplifier SademrSimplifier;

/**
 * Opaque block store handle.
 */
typedef struct SademrStore SademrStore;

/**
 * Summary of a finished job.
 */
typedef struct SademrJobResult {
  uint64_t tasks_total;
  uint64_t tasks_retried;
  uint64_t wall_ms;
} SademrJobResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *sademr_last_error(void);

/**
 * Library version as a static string; never freed by the caller.
 */
const char *sademr_version(void);

/**
 * Frees a string returned by this library. NULL is a no-op.
 *
 * # Safety
 * `s` must have been returned by a sademr function and not freed before.
 */
void sademr_string_free(char *s);

/**
 * Creates a simplifier from the shipped stopword and suffix data.
 */
struct SademrSimplifier *sademr_simplifier_new(void);

/**
 * Creates a simplifier from override files; either path may be NULL to
 * keep the shipped data for that side. NULL return means error.
 *
 * # Safety
 * Non-NULL paths must be NUL-terminated strings.
 */
struct SademrSimplifier *sademr_simplifier_from_files(const char *stopwords_path,
                                                      const char *suffixes_path);

/**
 * # Safety
 * `simplifier` must come from a sademr constructor; double free is UB.
 */
void sademr_simplifier_free(struct SademrSimplifier *simplifier);

/**
 * Simplifies one line; caller frees the result. NULL means error.
 *
 * # Safety
 * `simplifier` must be a live handle (or NULL for shipped defaults);
 * `line` must be a NUL-terminated string.
 */
char *sademr_simplify_line(const struct SademrSimplifier *simplifier, const char *line);

/**
 * Stems one already-lowercased word; caller frees the result.
 *
 * # Safety
 * Same contract as [`sademr_simplify_line`].
 */
char *sademr_stem(const struct SademrSimplifier *simplifier, const char *word);

/**
 * Opens (creating if needed) a block store rooted at `root`. Pass 0 for
 * any numeric knob to take its default (64 MiB blocks, 3 replicas,
 * 7 nodes). NULL return means error.
 *
 * # Safety
 * `root` must be a NUL-terminated string.
 */
struct SademrStore *sademr_store_open(const char *root,
                                      uint64_t block_size,
                                      uint32_t replication,
                                      uint32_t nodes);

/**
 * # Safety
 * `store` must come from [`sademr_store_open`]; double free is UB.
 */
void sademr_store_free(struct SademrStore *store);

/**
 * Splits `content` (`len` bytes of UTF-8) into replicated blocks stored
 * under `name`.
 *
 * # Safety
 * `store` must be live; `name` NUL-terminated; `content` must point to
 * `len` readable bytes (may be NULL only when `len` is 0).
 */
enum SademrStatus sademr_store_put_file(const struct SademrStore *store,
                                        const char *name,
                                        const uint8_t *content,
                                        size_t len);

/**
 * Reconstructs a stored file; caller frees the result. NULL means error.
 *
 * # Safety
 * `store` must be live; `name` NUL-terminated.
 */
char *sademr_store_read_file(const struct SademrStore *store, const char *name);

/**
 * Stored file names as one newline-joined string; caller frees it.
 *
 * # Safety
 * `store` must be live.
 */
char *sademr_store_list_files(const struct SademrStore *store);

/**
 * Runs a job over stored files.
 *
 * `inputs` is an array of `input_count` stored file names. `reducer` may
 * be NULL for a map-only job. `simplifier` may be NULL for the shipped
 * configuration. `fail_worker < 0` disables failure injection; otherwise
 * that worker dies mid-task after completing `after_tasks` tasks.
 * On success, `*result` (if non-NULL) is filled in.
 *
 * # Safety
 * Pointer arguments must satisfy the usual liveness rules; `inputs` must
 * point to `input_count` valid NUL-terminated strings.
 */
enum SademrStatus sademr_job_run(const struct SademrStore *store,
                                 const char *const *inputs,
                                 size_t input_count,
                                 const char *mapper,
                                 const char *reducer,
                                 uint32_t workers,
                                 const char *output_dir,
                                 uint64_t task_overhead_ms,
                                 int64_t fail_worker,
                                 uint64_t after_tasks,
                                 const struct SademrSimplifier *simplifier,
                                 struct SademrJobResult *result);

/**
 * Sequential baseline over `input_count` file paths, writing simplified
 * lines to `output_path`. On success fills `lines_out` and `wall_ms_out`
 * when non-NULL.
 *
 * # Safety
 * `inputs` must point to `input_count` valid NUL-terminated paths;
 * `output_path` must be NUL-terminated.
 */
enum SademrStatus sademr_console_run(const char *const *inputs,
                                     size_t input_count,
                                     const char *output_path,
                                     const struct SademrSimplifier *simplifier,
                                     uint64_t *lines_out,
                                     uint64_t *wall_ms_out);

/**
 * Reads a block through replica failover; `failed_nodes` is an array of
 * node ordinals to treat as down. Caller frees the result.
 *
 * # Safety
 * `store` and `file_name` as elsewhere; `failed_nodes` must point to
 * `failed_count` readable u32 values (or be NULL with count 0).
 */
char *sademr_store_get_block(const struct SademrStore *store,
                             const char *file_name,
                             size_t block_index,
                             const uint32_t *failed_nodes,
                             size_t failed_count);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SADEMR_H */
