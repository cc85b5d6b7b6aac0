#ifndef HOPFDOUBLE_H
#define HOPFDOUBLE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum HdStatus {
  HD_STATUS_OK = 0,
  HD_STATUS_NULL_POINTER = 1,
  // Unparsable id, JSON, scalar or non-UTF-8 text.
  HD_STATUS_INVALID_ARGUMENT = 2,
  // The computation ran and a check did not pass.
  HD_STATUS_CHECK_FAILED = 3,
  // The computation could not be carried out.
  HD_STATUS_COMPUTE_ERROR = 4,
  // An internal panic was caught at the boundary.
  HD_STATUS_PANIC = 5,
} HdStatus;

// A presented Hopf algebra.
typedef struct HdAlgebra HdAlgebra;

// A Drinfeld double together with its cross relations.
typedef struct HdDouble HdDouble;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until the
// next call into the library from the same thread.
const char *hd_last_error(void);

// Library version as a static string.
const char *hd_version(void);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void hd_string_free(char *s);

// Builds a catalog algebra from an id such as `taft:3:1` or `uq:3:1:dual`.
//
// # Safety
// `id` must be a nul-terminated string; `out` must be writable.
enum HdStatus hd_algebra_from_id(const char *id, struct HdAlgebra **out);

// Reads a presentation in the JSON format of [`hd_algebra_to_json`].
//
// # Safety
// `json` must be a nul-terminated string; `out` must be writable.
enum HdStatus hd_algebra_from_json(const char *json, struct HdAlgebra **out);

// # Safety
// `alg` must be null or a handle from this library, not yet freed.
void hd_algebra_free(struct HdAlgebra *alg);

// # Safety
// `alg` must be a live handle; `out` must be writable.
enum HdStatus hd_algebra_dimension(const struct HdAlgebra *alg, size_t *out);

// # Safety
// `alg` must be a live handle; `out` must be writable.
enum HdStatus hd_algebra_name(const struct HdAlgebra *alg, char **out);

// The presentation as JSON; `pretty` selects indented output.
//
// # Safety
// `alg` must be a live handle; `out` must be writable.
enum HdStatus hd_algebra_to_json(const struct HdAlgebra *alg, bool pretty, char **out);

// Checks the Hopf algebra axioms. Returns `CheckFailed` when a check does not
// pass; the JSON report is written to `report` unless it is null.
//
// # Safety
// `alg` must be a live handle; `report` must be null or writable.
enum HdStatus hd_algebra_verify(const struct HdAlgebra *alg, uint64_t seed, char **report);

// Builds `D(H)` for a catalog algebra id (not a dual).
//
// # Safety
// `id` must be a nul-terminated string; `out` must be writable.
enum HdStatus hd_double_build(const char *id, struct HdDouble **out);

// The double as an algebra handle, to be freed separately.
//
// # Safety
// `d` must be a live handle; `out` must be writable.
enum HdStatus hd_double_algebra(const struct HdDouble *d, struct HdAlgebra **out);

// Number of cross relations `a · p`.
//
// # Safety
// `d` must be a live handle; `out` must be writable.
enum HdStatus hd_double_cross_relation_count(const struct HdDouble *d, size_t *out);

// Cross relation `index` as text, `a*p = …`.
//
// # Safety
// `d` must be a live handle; `out` must be writable.
enum HdStatus hd_double_cross_relation(const struct HdDouble *d, size_t index, char **out);

// # Safety
// `d` must be null or a handle from this library, not yet freed.
void hd_double_free(struct HdDouble *d);

// Classifies actions on `k[u]/(u^n − 1)` for a catalog id. Writes the number
// of families to `families` and the JSON report to `report` when non-null.
//
// # Safety
// `id` must be a nul-terminated string; `families` must be writable;
// `report` must be null or writable.
enum HdStatus hd_classify(const char *id, size_t *families, char **report);

// Parses a scalar such as `1 + z` in conductor `conductor` and writes its
// canonical form.
//
// # Safety
// `text` must be a nul-terminated string; `out` must be writable.
enum HdStatus hd_scalar_normalize(uint32_t conductor, const char *text, char **out);

// Runs a command line as the `hopfdouble` tool would, without the program
// name: `argv[0]` is the subcommand. `exit_code` receives the tool's exit
// code and `output` the report text.
//
// # Safety
// `argv` must point to `argc` nul-terminated strings; `exit_code` and
// `output` must be writable.
enum HdStatus hd_run(size_t argc, const char *const *argv, int *exit_code, char **output);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HOPFDOUBLE_H */
