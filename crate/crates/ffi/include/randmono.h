#ifndef RANDMONO_H
#define RANDMONO_H

/* Generated by cbindgen; do not edit. */

#include <stdbool.h>
#include <stdint.h>
#include <stddef.h>

/**
 * Result codes.
 */
typedef enum RmStatus {
  RM_STATUS_OK = 0,
  RM_STATUS_NULL_POINTER = 1,
  RM_STATUS_INVALID_ARGUMENT = 2,
  RM_STATUS_PARSE_ERROR = 3,
  /**
   * A size guard was exceeded.
   */
  RM_STATUS_TOO_LARGE = 4,
  /**
   * The output buffer is too short.
   */
  RM_STATUS_BUFFER_TOO_SMALL = 5,
  RM_STATUS_PANIC = 6,
} RmStatus;

/**
 * Opaque monomial ideal.
 */
typedef struct RmIdeal RmIdeal;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *rm_version(void);

/**
 * Copy of the calling thread's last error message, or NULL if none.
 * Release with `rm_string_free`.
 */
char *rm_last_error_message(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library.
 */
void rm_string_free(char *s);

/**
 * Parses the ideal text format (`n D` line, then one exponent vector per line).
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum RmStatus rm_ideal_parse(const char *text, struct RmIdeal **out);

/**
 * # Safety
 * `ideal` must be NULL or a handle from this library not yet freed.
 */
void rm_ideal_free(struct RmIdeal *ideal);

/**
 * Serializes to the ideal text format. Release with `rm_string_free`.
 *
 * # Safety
 * `ideal` must be a live handle; `out` must be writable.
 */
enum RmStatus rm_ideal_to_text(const struct RmIdeal *ideal, char **out);

/**
 * # Safety
 * `ideal` must be a live handle; `out` must be writable.
 */
enum RmStatus rm_ideal_num_generators(const struct RmIdeal *ideal, uintptr_t *out);

/**
 * # Safety
 * `ideal` must be a live handle; `out` must be writable.
 */
enum RmStatus rm_ideal_krull_dimension(const struct RmIdeal *ideal, uintptr_t *out);

/**
 * Writes `h(1), ..., h(D)` into `out`, which must hold `len >= D` values.
 *
 * # Safety
 * `ideal` must be a live handle; `out` must point to `len` writable values.
 */
enum RmStatus rm_ideal_hilbert(const struct RmIdeal *ideal, uint64_t *out, uintptr_t len);

/**
 * Number of non-constant standard monomials of degree at most D.
 *
 * # Safety
 * `ideal` must be a live handle; `out` must be writable.
 */
enum RmStatus rm_ideal_standard_count(const struct RmIdeal *ideal, uint64_t *out);

/**
 * # Safety
 * `ideal` must be a live handle; `out` must be writable.
 */
enum RmStatus rm_ideal_is_strongly_generic(const struct RmIdeal *ideal, bool *out);

/**
 * # Safety
 * `ideal` must be a live handle; `out` must be writable.
 */
enum RmStatus rm_ideal_radical(const struct RmIdeal *ideal, struct RmIdeal **out);

/**
 * Reduced Z/2 Betti numbers `b~_0, ..., b~_{n-1}` of the Stanley–Reisner
 * complex of the ideal, or of its radical when `radical` is true.
 *
 * # Safety
 * `ideal` must be a live handle; `out` must point to `len` writable values.
 */
enum RmStatus rm_ideal_homology(const struct RmIdeal *ideal,
                                bool radical,
                                uint64_t *out,
                                uintptr_t len);

/**
 * Exact probability of the ideal under the ER-type model with
 * `p = p_num / p_den`, as the string `"a/b"`. Release with `rm_string_free`.
 *
 * # Safety
 * `ideal` must be a live handle; `out` must be writable.
 */
enum RmStatus rm_prob_ideal_er(const struct RmIdeal *ideal,
                               int64_t p_num,
                               int64_t p_den,
                               char **out);

/**
 * Draw `sample` of stream `stream` under seed `seed` from the ER-type model.
 *
 * # Safety
 * `out` must be writable.
 */
enum RmStatus rm_sample_er(uintptr_t n,
                           uint32_t max_degree,
                           double p,
                           uint64_t seed,
                           uint64_t stream,
                           uint64_t sample,
                           struct RmIdeal **out);

/**
 * Limit of the expected number of minimal generators as D grows, to
 * absolute tolerance `eps`; `error_bound` receives the certified bound.
 *
 * # Safety
 * `value` and `error_bound` must be writable.
 */
enum RmStatus rm_expected_beta1_limit(uint32_t n,
                                      double p,
                                      double eps,
                                      double *value,
                                      double *error_bound);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* RANDMONO_H */
