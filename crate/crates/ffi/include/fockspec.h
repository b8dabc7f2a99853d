#ifndef FOCKSPEC_H
#define FOCKSPEC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  FS_MEMBERSHIP_MEMBER = 0,
  FS_MEMBERSHIP_NON_MEMBER = 1,
  FS_MEMBERSHIP_CRITICAL_CIRCLE = 2,
} FsMembership;

typedef enum {
  FS_PROVENANCE_THEOREM_II = 0,
  FS_PROVENANCE_COMPACT_CASE = 1,
  FS_PROVENANCE_NON_INTEGER_A = 2,
} FsProvenance;

typedef enum {
  FS_SPECTRUM_KIND_DISK = 0,
  FS_SPECTRUM_KIND_ORIGIN_ONLY = 1,
} FsSpectrumKind;

/**
 * Result code of every `fs_*` call.
 */
typedef enum {
  FS_STATUS_OK = 0,
  FS_STATUS_NULL_POINTER = 1,
  FS_STATUS_INVALID_ARGUMENT = 2,
  FS_STATUS_PARSE_ERROR = 3,
  FS_STATUS_UNBOUNDED = 4,
  FS_STATUS_NUMERICAL = 5,
  FS_STATUS_BUFFER_TOO_SMALL = 6,
  FS_STATUS_PANIC = 7,
} FsStatus;

/**
 * Truncated power series.
 */
typedef struct FsSeries FsSeries;

/**
 * Polynomial symbol `g` with `g(0) = 0`.
 */
typedef struct FsSymbol FsSymbol;

typedef struct {
  double re;
  double im;
} FsComplex;

/**
 * Space parameters: exponent `p`, weight scale `alpha`, growth order `big_a`.
 */
typedef struct {
  double p;
  double alpha;
  double big_a;
} FsParams;

/**
 * `radius` is 0 for [`FsSpectrumKind::OriginOnly`].
 */
typedef struct {
  FsSpectrumKind kind;
  double radius;
  FsProvenance provenance;
} FsSpectrum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer is valid until the next `fs_*` call on the same thread.
 */
const char *fs_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *fs_version(void);

/**
 * # Safety
 * `coeffs` must point to `len` values (or be null when `len` is 0) and `out`
 * must be writable.
 */
FsStatus fs_series_new(const FsComplex *coeffs, size_t len, FsSeries **out);

/**
 * Parses a polynomial such as `"1 + (0+2i)z^3"`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
FsStatus fs_series_parse(const char *text, FsSeries **out);

/**
 * # Safety
 * `series` must come from this library and not be used afterwards. Null is ignored.
 */
void fs_series_free(FsSeries *series);

/**
 * # Safety
 * Pointers must be valid.
 */
FsStatus fs_series_order(const FsSeries *series, size_t *out);

/**
 * Copies the `order + 1` coefficients into `buf`. `len_out` always receives
 * the required length; a short buffer yields `BufferTooSmall`.
 *
 * # Safety
 * `buf` must hold `cap` values (may be null when `cap` is 0); `len_out` writable.
 */
FsStatus fs_series_coeffs(const FsSeries *series, FsComplex *buf, size_t cap, size_t *len_out);

/**
 * # Safety
 * Pointers must be valid.
 */
FsStatus fs_series_evaluate(const FsSeries *series, FsComplex z, FsComplex *out);

/**
 * Parses a symbol. A nonzero constant term is dropped; `dropped_constant`
 * (nullable) receives 1 when that happened and 0 otherwise.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
FsStatus fs_symbol_parse(const char *text, FsSymbol **out, int32_t *dropped_constant);

/**
 * # Safety
 * `symbol` must come from this library and not be used afterwards. Null is ignored.
 */
void fs_symbol_free(FsSymbol *symbol);

/**
 * # Safety
 * Pointers must be valid.
 */
FsStatus fs_symbol_degree(const FsSymbol *symbol, size_t *out);

/**
 * Closed-form norm of `z^n`.
 *
 * # Safety
 * Pointers must be valid.
 */
FsStatus fs_monomial_norm(size_t n, const FsParams *p, double *out);

/**
 * Norm by quadrature with the default scheme for the series order.
 *
 * # Safety
 * Pointers must be valid.
 */
FsStatus fs_series_norm(const FsSeries *series, const FsParams *p, double *out);

/**
 * `T_g f` as a new series of order `order(f) + degree(g)`.
 *
 * # Safety
 * Pointers must be valid.
 */
FsStatus fs_apply_tg(const FsSymbol *symbol, const FsSeries *series, FsSeries **out);

/**
 * Solves `f - T_g f / lambda = h` through coefficient `order`.
 *
 * # Safety
 * Pointers must be valid.
 */
FsStatus fs_resolvent_apply(const FsSymbol *symbol,
                            FsComplex lambda,
                            const FsSeries *h,
                            size_t order,
                            FsSeries **out);

/**
 * # Safety
 * Pointers must be valid.
 */
FsStatus fs_classify_spectrum(const FsSymbol *symbol, const FsParams *p, FsSpectrum *out);

/**
 * Whether `e^{g / lambda}` lies in the space.
 *
 * # Safety
 * Pointers must be valid.
 */
FsStatus fs_exp_membership(const FsSymbol *symbol,
                           FsComplex lambda,
                           const FsParams *p,
                           FsMembership *out);

/**
 * Spectral radius estimate for a monomial symbol of degree `A` at `p = 2`.
 *
 * # Safety
 * Pointers must be valid.
 */
FsStatus fs_spectral_radius_estimate(const FsSymbol *symbol,
                                     const FsParams *p,
                                     size_t k_max,
                                     size_t max_m,
                                     double *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* FOCKSPEC_H */
