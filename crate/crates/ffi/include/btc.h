#ifndef BTC_H
#define BTC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Set in the `flags` output of [`btc_operator_entry`].
 */
#define BTC_ENTRY_ESCAPING 1

#define BTC_ENTRY_BOUNDARY 2

typedef enum BtcOperatorKind {
  BTC_OPERATOR_KIND_TOEPLITZ = 0,
  BTC_OPERATOR_KIND_COMMUTATOR = 1,
  BTC_OPERATOR_KIND_SEMICOMMUTATOR = 2,
} BtcOperatorKind;

typedef enum BtcStatus {
  BTC_STATUS_OK = 0,
  BTC_STATUS_INVALID_ARGUMENT = 1,
  BTC_STATUS_DIMENSION_MISMATCH = 2,
  BTC_STATUS_DOMAIN = 3,
  BTC_STATUS_PARSE = 4,
  BTC_STATUS_INTERNAL = 5,
  BTC_STATUS_NULL_POINTER = 6,
} BtcStatus;

/**
 * A truncated matrix.
 */
typedef struct BtcOperator BtcOperator;

/**
 * Two symbols r^l ζ^p ζ̄^q and r^k ζ^s ζ̄^t on one domain.
 */
typedef struct BtcPair BtcPair;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a pair from the domain exponents `m[0..n]`, radial exponents given
 * as strings "n/d", and exponent vectors of length `n` each.
 *
 * # Safety
 * `m`, `p`, `q`, `s`, `t` must point to `n` readable `uint32_t`s; `l` and `k`
 * must be NUL-terminated strings; `out` must be writable.
 */
enum BtcStatus btc_pair_new(const uint32_t *m,
                            size_t n,
                            const char *l,
                            const uint32_t *p,
                            const uint32_t *q,
                            const char *k,
                            const uint32_t *s,
                            const uint32_t *t,
                            struct BtcPair **out);

/**
 * # Safety
 * `pair` must come from [`btc_pair_new`] and not be used afterwards. NULL is ignored.
 */
void btc_pair_free(struct BtcPair *pair);

/**
 * Writes 1 to `answer` if the two operators commute, 0 otherwise.
 *
 * # Safety
 * `pair` must be a live handle and `answer` writable.
 */
enum BtcStatus btc_decide_commute(const struct BtcPair *pair, int32_t *answer);

/**
 * Writes 1 to `answer` if T₁T₂ is the Toeplitz operator of the product symbol.
 *
 * # Safety
 * `pair` must be a live handle and `answer` writable.
 */
enum BtcStatus btc_decide_semicommute(const struct BtcPair *pair, int32_t *answer);

/**
 * Bit i-1 of `clauses` is set when trivial clause c_i holds;
 * `non_trivial` is 1 for a commuting pair with no clause.
 *
 * # Safety
 * `pair` must be a live handle; the outputs must be writable.
 */
enum BtcStatus btc_classify_trivial(const struct BtcPair *pair,
                                    uint32_t *clauses,
                                    int32_t *non_trivial);

/**
 * Builds a truncated matrix. `truncation` is "D=<rational>" or
 * "N=<natural>"; a Toeplitz matrix uses the pair's first symbol.
 *
 * # Safety
 * `pair` must be a live handle, `truncation` a NUL-terminated string and
 * `out` writable.
 */
enum BtcStatus btc_operator_build(const struct BtcPair *pair,
                                  enum BtcOperatorKind kind,
                                  const char *truncation,
                                  struct BtcOperator **out);

/**
 * # Safety
 * `op` must come from [`btc_operator_build`] and not be used afterwards. NULL is ignored.
 */
void btc_operator_free(struct BtcOperator *op);

/**
 * Number of basis elements (rows of the matrix); 0 for NULL.
 *
 * # Safety
 * `op` must be a live handle or NULL.
 */
size_t btc_operator_basis_size(const struct BtcOperator *op);

/**
 * Reads the entry whose source is the `index`-th basis element. `source`
 * and `target` receive `n` entries each (n = dimension). `present` is 0
 * when that source has no entry, in which case the other outputs are left
 * alone.
 *
 * # Safety
 * `op` must be a live handle; `source` and `target` must have room for
 * the domain dimension; the scalar outputs must be writable.
 */
enum BtcStatus btc_operator_entry(const struct BtcOperator *op,
                                  size_t index,
                                  uint32_t *source,
                                  uint32_t *target,
                                  double *coeff,
                                  uint32_t *flags,
                                  int32_t *present);

/**
 * Largest |coefficient|, over interior sources when `interior_only` is
 * non-zero; 0 for NULL.
 *
 * # Safety
 * `op` must be a live handle or NULL.
 */
double btc_operator_max_abs_entry(const struct BtcOperator *op, int32_t interior_only);

/**
 * The matrix as a JSON document; release with [`btc_string_free`].
 *
 * # Safety
 * `op` must be a live handle and `out` writable.
 */
enum BtcStatus btc_operator_to_json(const struct BtcOperator *op, char **out);

/**
 * Runs a job document {"schema": "btc/1", "command": ..., "payload": ...}
 * exactly as `btc run` would, with default options plus `seed` (used only
 * when `has_seed` is non-zero). `exit_code` receives the command-line exit
 * code and `out` the JSON output.
 *
 * # Safety
 * `job` must be a NUL-terminated string; `exit_code` and `out` writable.
 */
enum BtcStatus btc_run_job(const char *job,
                           int32_t has_seed,
                           uint64_t seed,
                           int32_t *exit_code,
                           char **out);

/**
 * ln Γ(x) for x > 0.
 *
 * # Safety
 * `out` must be writable.
 */
enum BtcStatus btc_log_gamma(double x, double *out);

/**
 * Squared Bergman norm of z^alpha on the domain with exponents `m[0..n]`.
 *
 * # Safety
 * `m` and `alpha` must point to `n` readable values; `out` must be writable.
 */
enum BtcStatus btc_norm_sq(const uint32_t *m, size_t n, const uint32_t *alpha, double *out);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void btc_string_free(char *s);

/**
 * Message for the last failed call on this thread ("" after a success).
 * The pointer stays valid until the next call into the library on the
 * same thread.
 */
const char *btc_last_error_message(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* BTC_H */
