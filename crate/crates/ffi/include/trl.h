#ifndef TRL_H
#define TRL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TrlStatus {
  TRL_STATUS_OK = 0,
  TRL_STATUS_INVALID_INPUT = 1,
  TRL_STATUS_DIMENSION_MISMATCH = 2,
  TRL_STATUS_NOT_PRIME = 3,
  TRL_STATUS_NON_INTEGER = 4,
  TRL_STATUS_BUDGET_EXCEEDED = 5,
  TRL_STATUS_INVARIANT_VIOLATION = 6,
  TRL_STATUS_NULL_POINTER = 7,
  TRL_STATUS_PANIC = 8,
} TrlStatus;

/*
 Opaque tensor handle.
 */
typedef struct TrlTensor TrlTensor;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or NULL. Owned by the
 library and valid until the next failing call on the same thread.
 */
const char *trl_last_error_message(void);

/*
 # Safety
 `s` must be NULL or a string returned by this library, freed once.
 */
void trl_string_free(char *s);

/*
 Parses a tensor file document.

 # Safety
 `json` must be a valid NUL-terminated string; `out` a valid pointer.
 */
enum TrlStatus trl_tensor_from_json(const char *json, struct TrlTensor **out);

/*
 # Safety
 `out` must be a valid pointer.
 */
enum TrlStatus trl_tensor_identity(size_t r, struct TrlTensor **out);

/*
 # Safety
 `out` must be a valid pointer.
 */
enum TrlStatus trl_tensor_w(struct TrlTensor **out);

/*
 # Safety
 `out` must be a valid pointer.
 */
enum TrlStatus trl_tensor_matmul(size_t e, size_t h, size_t l, struct TrlTensor **out);

/*
 # Safety
 `t` must be NULL or a handle from this library, freed once.
 */
void trl_tensor_free(struct TrlTensor *t);

/*
 # Safety
 `t` must be a live handle; `dims` must point to three writable values.
 */
enum TrlStatus trl_tensor_dims(const struct TrlTensor *t, size_t *dims);

/*
 # Safety
 `t` must be a live handle; `out` a valid pointer.
 */
enum TrlStatus trl_tensor_to_json(const struct TrlTensor *t, char **out);

/*
 Exact geometric rank with `axis` eliminated. `max_pairs` of 0 selects the
 default S-pair budget.

 # Safety
 `t` must be a live handle; `gr` a valid pointer.
 */
enum TrlStatus trl_gr_exact(const struct TrlTensor *t, size_t axis, uint64_t max_pairs, size_t *gr);

/*
 `|V(T_p)(F_p)|` as a decimal string.

 # Safety
 `t` must be a live handle; `out` a valid pointer.
 */
enum TrlStatus trl_point_count(const struct TrlTensor *t, uint64_t p, char **out);

/*
 # Safety
 `t` must be a live handle; `ar` a valid pointer.
 */
enum TrlStatus trl_analytic_rank(const struct TrlTensor *t, uint64_t p, double *ar);

/*
 The bound chain as JSON. `primes` may be NULL when `nprimes` is 0.

 # Safety
 `t` must be a live handle; `primes` must hold `nprimes` values; `out` a
 valid pointer.
 */
enum TrlStatus trl_chain_report_json(const struct TrlTensor *t,
                                     const uint64_t *primes,
                                     size_t nprimes,
                                     char **out);

/*
 Closed-form geometric rank of the `<e,h,l>` matrix multiplication tensor.
 */
size_t trl_matmul_gr_formula(size_t e, size_t h, size_t l);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRL_H */
