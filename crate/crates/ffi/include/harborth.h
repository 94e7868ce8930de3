#ifndef HARBORTH_H
#define HARBORTH_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum HbStatus {
  HB_STATUS_OK = 0,
  HB_STATUS_NULL_POINTER = 1,
  HB_STATUS_INVALID_GROUP = 2,
  HB_STATUS_DOMAIN = 3,
  HB_STATUS_RANGE = 4,
  HB_STATUS_REFUSED = 5,
  HB_STATUS_VERIFICATION = 6,
  HB_STATUS_INCONSISTENT = 7,
  HB_STATUS_PARSE = 8,
  HB_STATUS_IO = 9,
  HB_STATUS_INVALID_UTF8 = 10,
  HB_STATUS_PANIC = 11,
} HbStatus;

typedef struct HbExactResult HbExactResult;

typedef struct HbGroup HbGroup;

typedef struct HbSet HbSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *hb_last_error(void);

void hb_string_free(char *s);

/**
 * Builds a group from `len` moduli, canonicalised to invariant factors.
 */
enum HbStatus hb_group_new(const uint64_t *moduli, size_t len, struct HbGroup **out);

/**
 * Parses a literal such as `"2,4"`.
 */
enum HbStatus hb_group_parse(const char *literal, struct HbGroup **out);

void hb_group_free(struct HbGroup *group);

/**
 * Returns 0 for a null handle.
 */
uint64_t hb_group_order(const struct HbGroup *group);

uint64_t hb_group_exponent(const struct HbGroup *group);

size_t hb_group_rank(const struct HbGroup *group);

/**
 * Invariant factor `i`, smallest first.
 */
enum HbStatus hb_group_factor(const struct HbGroup *group, size_t i, uint64_t *out);

/**
 * Builds a set from element indices (mixed radix, last coordinate fastest).
 * Duplicates are ignored.
 */
enum HbStatus hb_set_new(const struct HbGroup *group,
                         const uint64_t *indices,
                         size_t len,
                         struct HbSet **out);

void hb_set_free(struct HbSet *set);

size_t hb_set_len(const struct HbSet *set);

/**
 * Index of the `i`-th member in ascending order.
 */
enum HbStatus hb_set_get(const struct HbSet *set, size_t i, uint64_t *out);

enum HbStatus hb_set_is_free(const struct HbSet *set, size_t k, bool *out);

/**
 * The set of sums of `k` distinct members.
 */
enum HbStatus hb_k_subsums(const struct HbSet *set, size_t k, struct HbSet **out);

/**
 * Runs the exact solver. `max_nodes == 0` or `max_seconds <= 0` means no
 * limit on that axis. A search that runs out of budget still succeeds;
 * check [`hb_result_exhausted`].
 */
enum HbStatus hb_max_zero_sum_free(const struct HbGroup *group,
                                   size_t k,
                                   uint64_t max_nodes,
                                   double max_seconds,
                                   size_t workers,
                                   struct HbExactResult **out);

void hb_result_free(struct HbExactResult *result);

size_t hb_result_max_free_size(const struct HbExactResult *result);

uint64_t hb_result_harborth(const struct HbExactResult *result);

bool hb_result_exhausted(const struct HbExactResult *result);

uint64_t hb_result_nodes_explored(const struct HbExactResult *result);

/**
 * Copies the witness into a new set handle.
 */
enum HbStatus hb_result_witness(const struct HbExactResult *result, struct HbSet **out);

/**
 * Same JSON object as the CLI's `exact --format json`, without the envelope.
 * Free with [`hb_string_free`].
 */
enum HbStatus hb_result_to_json(const struct HbExactResult *result, char **out);

/**
 * Best known bounds from the formula registry and verified constructions.
 * `json_out` may be null; otherwise it receives the full report.
 */
enum HbStatus hb_best_bounds(const struct HbGroup *group,
                             size_t k,
                             uint64_t *lower_out,
                             uint64_t *upper_out,
                             char **json_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HARBORTH_H */
