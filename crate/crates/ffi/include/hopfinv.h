#ifndef HOPFINV_H
#define HOPFINV_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes; 0 to 3 match the command line exit codes.
typedef enum HiStatus {
  HI_STATUS_OK = 0,
  // A check ran and gave a negative verdict.
  HI_STATUS_NEGATIVE = 1,
  // Internal inconsistency between independent computations.
  HI_STATUS_INCONSISTENT = 2,
  HI_STATUS_BAD_INPUT = 3,
  HI_STATUS_NULL_POINTER = 4,
  HI_STATUS_INVALID_UTF8 = 5,
  HI_STATUS_PANIC = 6,
} HiStatus;

// Comodule over a `HiHopf`.
typedef struct HiComodule HiComodule;

// Finite Hopf algebra given by structure constants.
typedef struct HiHopf HiHopf;

// Integer matrix.
typedef struct HiMatrix HiMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failing call on this thread, or null. Valid until
// the next call into the library on the same thread.
const char *hi_last_error(void);

// Library version as a static string.
const char *hi_version(void);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void hi_string_free(char *s);

// Parses `{"rows", "cols", "entries": [[i, j, "v"], ...]}` or `{"dense": [[...]]}`.
//
// # Safety
// `json` must be a nul-terminated string; `out` must be writable.
enum HiStatus hi_matrix_from_json(const char *json, struct HiMatrix **out);

// # Safety
// `m` must be null or a live handle from `hi_matrix_from_json`.
void hi_matrix_free(struct HiMatrix *m);

// Writes the shape of `m`.
//
// # Safety
// `m` must be a live handle; `rows` and `cols` must be writable.
enum HiStatus hi_matrix_shape(const struct HiMatrix *m, size_t *rows, size_t *cols);

// `{"rank": r, "invariant_factors": ["d1", ...]}` from the Smith normal form.
//
// # Safety
// `m` must be a live handle; `out` must be writable.
enum HiStatus hi_matrix_smith_json(const struct HiMatrix *m, char **out);

// Built-in Hopf algebra by name (`mu_<n>`, `const_<G>`, `alpha_<p>`).
//
// # Safety
// `name` must be a nul-terminated string; `out` must be writable.
enum HiStatus hi_hopf_builtin(const char *name, struct HiHopf **out);

// Hopf algebra from its structure-constant JSON.
//
// # Safety
// `json` must be a nul-terminated string; `out` must be writable.
enum HiStatus hi_hopf_from_json(const char *json, struct HiHopf **out);

// # Safety
// `h` must be null or a live Hopf handle.
void hi_hopf_free(struct HiHopf *h);

// Rank of the underlying free module.
//
// # Safety
// `h` must be a live handle; `rank` must be writable.
enum HiStatus hi_hopf_rank(const struct HiHopf *h, size_t *rank);

// Axiom report; `Negative` if some axiom fails.
//
// # Safety
// `h` must be a live handle; `out` must be writable.
enum HiStatus hi_hopf_check_json(const struct HiHopf *h, char **out);

// Comodule from `{"hopf"?, "rank", "coaction"}`; `hopf` may be null when
// the JSON names its Hopf algebra.
//
// # Safety
// `json` must be a nul-terminated string, `hopf` null or a live handle,
// `out` writable.
enum HiStatus hi_comodule_from_json(const char *json,
                                    const struct HiHopf *hopf,
                                    struct HiComodule **out);

// # Safety
// `m` must be null or a live comodule handle.
void hi_comodule_free(struct HiComodule *m);

// Invariants `M^G` with the inclusion matrix.
//
// # Safety
// `m` must be a live handle; `out` must be writable.
enum HiStatus hi_comodule_invariants_json(const struct HiComodule *m, char **out);

// Cobar cohomology `H^0 .. H^{max_degree-1}` with the differentials'
// invariant factors (integral comodules).
//
// # Safety
// `m` must be a live handle; `out` must be writable.
enum HiStatus hi_comodule_cobar_json(const struct HiComodule *m, size_t max_degree, char **out);

// Universal coefficient check for an integral comodule over `scalar`
// (`q`, `f<p>`, `z<n>`).
//
// # Safety
// `m` must be a live handle, `scalar` a nul-terminated string, `out` writable.
enum HiStatus hi_ucs_check_json(const struct HiComodule *m, const char *scalar, char **out);

// Runs a command line given as a JSON array of arguments (without the
// program name) and returns its report; the status is the exit code.
//
// # Safety
// `args_json` must be a nul-terminated string; `out` must be writable.
enum HiStatus hi_run_json(const char *args_json, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HOPFINV_H */
