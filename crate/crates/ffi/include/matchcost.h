#ifndef MATCHCOST_H
#define MATCHCOST_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MatchcostStatus {
  MATCHCOST_STATUS_OK = 0,
  MATCHCOST_STATUS_NULL_POINTER = 1,
  MATCHCOST_STATUS_INVALID_UTF8 = 2,
  MATCHCOST_STATUS_INVALID_INPUT = 3,
  MATCHCOST_STATUS_GUARD_EXCEEDED = 4,
  MATCHCOST_STATUS_OUT_OF_RANGE = 5,
  MATCHCOST_STATUS_PANIC = 6,
} MatchcostStatus;

/**
 * An exact or enumerated cost distribution.
 */
typedef struct MatchcostDistribution MatchcostDistribution;

/**
 * A text model over a fixed alphabet.
 */
typedef struct MatchcostModel MatchcostModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next call into this library from the same thread.
 */
const char *matchcost_last_error(void);

/**
 * Builds a model from an inline spec (`iid:a=0.5,b=0.5`,
 * `markov:<initial>|<conditional>`) or a JSON model document.
 *
 * # Safety
 * `spec` must be a nul-terminated string and `out` a valid pointer.
 */
enum MatchcostStatus matchcost_model_new(const char *spec, struct MatchcostModel **out);

/**
 * Number of symbols in the model's alphabet.
 *
 * # Safety
 * `model` must be null or a live handle.
 */
size_t matchcost_model_alphabet_size(const struct MatchcostModel *model);

/**
 * # Safety
 * `model` must be null or a handle not yet freed.
 */
void matchcost_model_free(struct MatchcostModel *model);

/**
 * Exact distribution of the characters accessed by `algorithm`
 * (`bm`, `bmh`, `bndm`, `bom`) when searching `pattern` in a random text of
 * length `n` drawn from `model`.
 *
 * # Safety
 * String arguments must be nul-terminated, `model` a live handle and `out` a
 * valid pointer.
 */
enum MatchcostStatus matchcost_analyze(const struct MatchcostModel *model,
                                       const char *pattern,
                                       const char *algorithm,
                                       size_t n,
                                       struct MatchcostDistribution **out);

/**
 * Same distribution by enumerating every text of length `n`. Fails with
 * `GuardExceeded` when more than `max_texts` texts would be needed.
 *
 * # Safety
 * As for [`matchcost_analyze`].
 */
enum MatchcostStatus matchcost_enumerate(const struct MatchcostModel *model,
                                         const char *pattern,
                                         const char *algorithm,
                                         size_t n,
                                         uint64_t max_texts,
                                         struct MatchcostDistribution **out);

/**
 * Number of support values.
 *
 * # Safety
 * `dist` must be null or a live handle.
 */
size_t matchcost_distribution_len(const struct MatchcostDistribution *dist);

/**
 * The `index`-th support value and its probability, in increasing value
 * order.
 *
 * # Safety
 * `dist` must be a live handle; `value` and `probability` valid pointers.
 */
enum MatchcostStatus matchcost_distribution_entry(const struct MatchcostDistribution *dist,
                                                  size_t index,
                                                  uint64_t *value,
                                                  double *probability);

/**
 * P(X = value); 0 outside the support or for a null handle.
 *
 * # Safety
 * `dist` must be null or a live handle.
 */
double matchcost_distribution_probability(const struct MatchcostDistribution *dist, uint64_t value);

/**
 * Mean and variance of the distribution.
 *
 * # Safety
 * `dist` must be a live handle; `mean` and `variance` valid pointers.
 */
enum MatchcostStatus matchcost_distribution_moments(const struct MatchcostDistribution *dist,
                                                    double *mean,
                                                    double *variance);

/**
 * # Safety
 * `dist` must be null or a handle not yet freed.
 */
void matchcost_distribution_free(struct MatchcostDistribution *dist);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MATCHCOST_H */
