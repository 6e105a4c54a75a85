#ifndef MIRROR_STOKES_H
#define MIRROR_STOKES_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes. The nonzero error values agree with the exit codes of the
// command-line tool.
typedef enum MsStatus {
  MS_STATUS_OK = 0,
  MS_STATUS_OTHER = 1,
  MS_STATUS_PARSE = 2,
  MS_STATUS_INADMISSIBLE_DIRECTION = 3,
  MS_STATUS_TRACKING = 4,
  MS_STATUS_DEGENERACY = 5,
  MS_STATUS_NULL_ARGUMENT = 6,
  MS_STATUS_BUFFER_TOO_SMALL = 7,
  MS_STATUS_PANIC = 8,
} MsStatus;

// Outcome of a braid search.
typedef struct MsBraidCertificate MsBraidCertificate;

// Output of one Stokes computation.
typedef struct MsStokesResult MsStokesResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static nul-terminated string.
const char *ms_version(void);

// Message of the last failure on this thread, or null. The pointer stays
// valid until the next call into the library from the same thread.
const char *ms_last_error_message(void);

// Runs the full pipeline for `f` (e.g. "x + x^-3") in the direction
// `alpha_phase` (e.g. "pi/8"). The seed is taken from MIRROR_STOKES_SEED
// when set.
//
// # Safety
// `f` and `alpha_phase` must be nul-terminated strings; `out` must be a
// valid pointer. On success `*out` owns a result for [`ms_stokes_free`].
enum MsStatus ms_stokes_run(const char *f, const char *alpha_phase, struct MsStokesResult **out);

// Size of the Stokes matrices (the number of sheets), or 0 for null.
//
// # Safety
// `r` must be null or a live result.
size_t ms_stokes_dim(const struct MsStokesResult *r);

// Copies S_β into `out` (row-major, `len` ≥ dim²).
//
// # Safety
// `r` must be a live result and `out` must point to `len` writable entries.
enum MsStatus ms_stokes_s_beta(const struct MsStokesResult *r, int64_t *out, size_t len);

// Copies S_{−β} into `out` (row-major, `len` ≥ dim²).
//
// # Safety
// As for [`ms_stokes_s_beta`].
enum MsStatus ms_stokes_s_minus_beta(const struct MsStokesResult *r, int64_t *out, size_t len);

// The run manifest as JSON, released with [`ms_string_free`]. Null on failure.
//
// # Safety
// `r` must be null or a live result.
char *ms_stokes_to_json(const struct MsStokesResult *r, bool with_timings);

// # Safety
// `r` must be null or a result not yet freed.
void ms_stokes_free(struct MsStokesResult *r);

// # Safety
// `s` must be null or a string returned by this library and not yet freed.
void ms_string_free(char *s);

// Gram matrix of the Euler pairing for P(a,b); it has size a+b.
//
// # Safety
// `out` must point to `len` writable entries.
enum MsStatus ms_gram_matrix(uint32_t a, uint32_t b, int64_t *out, size_t len);

// Searches for a braid word and signs taking `source` to `target`, both
// n×n row-major. `max_depth` 0 means the default depth.
//
// # Safety
// `source` and `target` must point to n² readable entries and `out` must be
// a valid pointer. On success `*out` is released with [`ms_braid_free`].
enum MsStatus ms_braid_search(const int64_t *source,
                              const int64_t *target,
                              size_t n,
                              size_t max_depth,
                              struct MsBraidCertificate **out);

// The word, e.g. "b1 b2^-1"; empty for the identity. Owned by the certificate.
//
// # Safety
// `c` must be null or a live certificate.
const char *ms_braid_word(const struct MsBraidCertificate *c);

// Copies the n signs (±1) into `out`.
//
// # Safety
// `c` must be a live certificate and `out` must point to `len` writable entries.
enum MsStatus ms_braid_signs(const struct MsBraidCertificate *c, int64_t *out, size_t len);

// Copies the transformed source (equal to the target) into `out`.
//
// # Safety
// As for [`ms_braid_signs`], with `len` ≥ n².
enum MsStatus ms_braid_transformed(const struct MsBraidCertificate *c, int64_t *out, size_t len);

// # Safety
// `c` must be null or a certificate not yet freed.
void ms_braid_free(struct MsBraidCertificate *c);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MIRROR_STOKES_H */
