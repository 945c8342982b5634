#ifndef HYPONORMAL_H
#define HYPONORMAL_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum HnStatus {
  HN_STATUS_OK = 0,
  HN_STATUS_NULL_POINTER = 1,
  HN_STATUS_INVALID_ARGUMENT = 2,
  HN_STATUS_DIMENSION_MISMATCH = 3,
  HN_STATUS_SINGULAR = 4,
  HN_STATUS_SPECTRUM_HIT = 5,
  HN_STATUS_NOT_RANK_ONE = 6,
  HN_STATUS_DOMAIN = 7,
  HN_STATUS_CONFIG_ERROR = 8,
  HN_STATUS_INVALID_UTF8 = 9,
  HN_STATUS_PANIC = 10,
} HnStatus;

/*
 Dense complex square matrix.
 */
typedef struct HnMatrix HnMatrix;

/*
 Disc automorphism `beta (z - a)/(1 - conj(a) z)`.
 */
typedef struct HnMobius HnMobius;

/*
 Weighted shift model.
 */
typedef struct HnShiftModel HnShiftModel;

typedef struct HnComplex {
  double re;
  double im;
} HnComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread, or null. The pointer
 stays valid until the next `hn_*` call on the same thread.
 */
const char *hn_last_error_message(void);

/*
 Builds a `dim x dim` matrix from `dim * dim` row-major entries.

 # Safety
 `entries` must point to `dim * dim` values; `out` must be writable.
 */
enum HnStatus hn_matrix_new(size_t dim, const struct HnComplex *entries, struct HnMatrix **out);

/*
 # Safety
 `m` must come from this library and not be used afterwards.
 */
void hn_matrix_free(struct HnMatrix *m);

/*
 # Safety
 `m` must be a live handle or null.
 */
size_t hn_matrix_dim(const struct HnMatrix *m);

/*
 # Safety
 Handles must be live; `out` must be writable.
 */
enum HnStatus hn_matrix_get(const struct HnMatrix *m,
                            size_t row,
                            size_t col,
                            struct HnComplex *out);

/*
 # Safety
 Handles must be live; `out` must be writable.
 */
enum HnStatus hn_matrix_trace(const struct HnMatrix *m, struct HnComplex *out);

/*
 Sum of singular values.

 # Safety
 Handles must be live; `out` must be writable.
 */
enum HnStatus hn_matrix_trace_norm(const struct HnMatrix *m, double *out);

/*
 `M* M - M M*` as a new handle.

 # Safety
 Handles must be live; `out` must be writable.
 */
enum HnStatus hn_matrix_self_commutator(const struct HnMatrix *m, struct HnMatrix **out);

/*
 `det(I + K)` as a product over eigenvalues.

 # Safety
 Handles must be live; `out` must be writable.
 */
enum HnStatus hn_det_eigenproduct(const struct HnMatrix *k, struct HnComplex *out);

/*
 `det(I + K)` from the log series; needs trace norm below 1.

 # Safety
 Handles must be live; `out` must be writable.
 */
enum HnStatus hn_det_logseries(const struct HnMatrix *k, struct HnComplex *out);

/*
 # Safety
 `out` must be writable.
 */
enum HnStatus hn_shift_unilateral(struct HnShiftModel **out);

/*
 `w_n = (n + 1)/(n + lambda)`.

 # Safety
 `out` must be writable.
 */
enum HnStatus hn_shift_rational(double lambda, struct HnShiftModel **out);

/*
 Weights from a table; `has_limit` selects whether `limit` is used.

 # Safety
 `weights` must point to `len` values; `out` must be writable.
 */
enum HnStatus hn_shift_tabulated(const double *weights,
                                 size_t len,
                                 bool has_limit,
                                 double limit,
                                 struct HnShiftModel **out);

/*
 # Safety
 `m` must come from this library and not be used afterwards.
 */
void hn_shift_free(struct HnShiftModel *m);

/*
 `dim x dim` truncation as a new matrix handle.

 # Safety
 Handles must be live; `out` must be writable.
 */
enum HnStatus hn_shift_materialize(const struct HnShiftModel *model,
                                   size_t dim,
                                   struct HnMatrix **out);

/*
 `tr [T*, T]` of the infinite model.

 # Safety
 Handles must be live; `out` must be writable.
 */
enum HnStatus hn_shift_exact_trace(const struct HnShiftModel *model, double *out);

/*
 Determining function `1 - <(T* - conj w)^{-1} x, (T* - conj z)^{-1} x>` on a
 `dim` truncation, for models with a rank-one self-commutator.

 # Safety
 Handles must be live; `out` must be writable.
 */
enum HnStatus hn_determining_det(const struct HnShiftModel *model,
                                 struct HnComplex z,
                                 struct HnComplex w,
                                 size_t dim,
                                 struct HnComplex *out);

/*
 Principal function value `g(lambda)` from the winding of the symbol.

 # Safety
 Handles must be live; `out` must be writable.
 */
enum HnStatus hn_principal_value(const struct HnShiftModel *model,
                                 struct HnComplex lambda,
                                 int64_t *out);

/*
 # Safety
 `out` must be writable.
 */
enum HnStatus hn_mobius_new(struct HnComplex beta, struct HnComplex a, struct HnMobius **out);

/*
 # Safety
 `m` must come from this library and not be used afterwards.
 */
void hn_mobius_free(struct HnMobius *m);

/*
 # Safety
 Handles must be live; `out` must be writable.
 */
enum HnStatus hn_mobius_eval(const struct HnMobius *m, struct HnComplex z, struct HnComplex *out);

/*
 `phi(T)` for a contraction `T`, as a new matrix handle.

 # Safety
 Handles must be live; `out` must be writable.
 */
enum HnStatus hn_mobius_apply(const struct HnMobius *m,
                              const struct HnMatrix *t,
                              struct HnMatrix **out);

/*
 `lhs = 1 - c/r^2`, `rhs = (1 - 1/r^2)^c`.

 # Safety
 `lhs` and `rhs` must be writable.
 */
enum HnStatus hn_theorem_inequality(double c, double r, double *lhs, double *rhs);

/*
 Runs a JSON experiment config. On success `*report_json` receives the
 report (free with [`hn_string_free`]) and `*all_pass` its verdict. A
 config error returns `ConfigError` and writes no report.

 # Safety
 `config_json` must be a nul-terminated string; outputs must be writable.
 */
enum HnStatus hn_run_experiment_json(const char *config_json, char **report_json, bool *all_pass);

/*
 # Safety
 `s` must come from this library and not be used afterwards.
 */
void hn_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPONORMAL_H */
