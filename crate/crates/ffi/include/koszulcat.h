#ifndef KOSZULCAT_H
#define KOSZULCAT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Status codes; `OK`, `MATH_ERROR` and `INPUT_ERROR` match the exit codes
 of the command-line tool.
 */
typedef enum KzStatus {
  KZ_STATUS_OK = 0,
  /*
   A mathematical refusal: non-central element, failed precondition.
   */
  KZ_STATUS_MATH_ERROR = 1,
  /*
   Malformed problem, unknown command, bad options, window errors.
   */
  KZ_STATUS_INPUT_ERROR = 2,
  KZ_STATUS_NULL_POINTER = 3,
  KZ_STATUS_INVALID_UTF8 = 4,
  /*
   A panic inside the library.
   */
  KZ_STATUS_INTERNAL = 5,
} KzStatus;

/*
 A parsed problem file.
 */
typedef struct KzProblem KzProblem;

/*
 The result of one task.
 */
typedef struct KzReport KzReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Parses a problem from source text. `path` (nullable) is used in error
 positions and `field` (nullable) overrides the file's field.

 # Safety
 String arguments must be NUL-terminated or NULL where allowed; `out`
 must be writable.
 */
enum KzStatus kz_problem_from_str(const char *source,
                                  const char *path,
                                  const char *field,
                                  struct KzProblem **out);

/*
 Reads and parses a problem file.

 # Safety
 As for [`kz_problem_from_str`].
 */
enum KzStatus kz_problem_from_file(const char *path, const char *field, struct KzProblem **out);

/*
 # Safety
 `problem` must come from this library and not be freed twice. NULL is
 ignored.
 */
void kz_problem_free(struct KzProblem *problem);

/*
 Runs a task. `command` (nullable: use the file's `[task]`) is one of
 `validate`, `koszul`, `regular-check`, `commutant`, `tensor-idem`, `hh`,
 `syzygy`, `tensor-over`. `options_json` (nullable) may set `alpha`,
 `n`, `p`, `max_degree`, `modules`, `check_resolution` and `threads`.

 A report is produced whenever the computation ran, including when a
 certificate failed; check [`kz_report_passed`].

 # Safety
 `problem` must be a live handle; strings NUL-terminated or NULL; `out`
 writable.
 */
enum KzStatus kz_run_task(const struct KzProblem *problem,
                          const char *command,
                          const char *options_json,
                          struct KzReport **out);

/*
 Checks the category, monoid and module axioms.

 # Safety
 As for [`kz_run_task`].
 */
enum KzStatus kz_validate(const struct KzProblem *problem, struct KzReport **out);

/*
 Koszul complex of the comma-separated elements `alpha` (nullable: use
 the file's).

 # Safety
 As for [`kz_run_task`].
 */
enum KzStatus kz_koszul(const struct KzProblem *problem,
                        const char *alpha,
                        bool check_resolution,
                        struct KzReport **out);

/*
 `HH^p(A_n, coefficients)`; a negative `n` uses the problem's value.
 `module` is nullable (coefficients `A_n`).

 # Safety
 As for [`kz_run_task`].
 */
enum KzStatus kz_hh(const struct KzProblem *problem,
                    int64_t n,
                    int64_t p,
                    const char *module,
                    struct KzReport **out);

/*
 Syzygy resolution of `module` over `A_n`; a negative `n` uses the
 problem's value.

 # Safety
 As for [`kz_run_task`].
 */
enum KzStatus kz_syzygy(const struct KzProblem *problem,
                        int64_t n,
                        const char *module,
                        struct KzReport **out);

/*
 Whether every required certificate passed; false for NULL.

 # Safety
 `report` must be a live handle or NULL.
 */
bool kz_report_passed(const struct KzReport *report);

/*
 The report as JSON; free with [`kz_string_free`]. NULL for a NULL
 report.

 # Safety
 `report` must be a live handle or NULL.
 */
char *kz_report_json(const struct KzReport *report);

/*
 The report as aligned text tables; free with [`kz_string_free`].

 # Safety
 `report` must be a live handle or NULL.
 */
char *kz_report_text(const struct KzReport *report);

/*
 # Safety
 `report` must come from this library and not be freed twice. NULL is
 ignored.
 */
void kz_report_free(struct KzReport *report);

/*
 # Safety
 `s` must be a string returned by this library, or NULL.
 */
void kz_string_free(char *s);

/*
 The last error on this thread, or NULL. Valid until the next call into
 the library from the same thread; do not free.
 */
const char *kz_last_error_message(void);

/*
 Library version, statically allocated.
 */
const char *kz_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KOSZULCAT_H */
