#ifndef METAKIT_H
#define METAKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Overall verdict of a law run.
 */
typedef enum MkLawStatus {
  MK_LAW_STATUS_PASS = 0,
  MK_LAW_STATUS_PASS_VACUOUS = 1,
  MK_LAW_STATUS_FAIL = 2,
  MK_LAW_STATUS_ALARM = 3,
} MkLawStatus;

typedef enum MkStatus {
  MK_STATUS_OK = 0,
  MK_STATUS_NULL_ARGUMENT = 1,
  MK_STATUS_INVALID_UTF8 = 2,
  MK_STATUS_PARSE = 3,
  /**
   * Carriers of the operands do not line up, or a bound was exceeded.
   */
  MK_STATUS_TYPE = 4,
  MK_STATUS_OUT_OF_RANGE = 5,
  MK_STATUS_UNKNOWN_LAW = 6,
  MK_STATUS_PANIC = 7,
} MkStatus;

/**
 * Opaque relation handle.
 */
typedef struct MkRel MkRel;

typedef struct MkClassification {
  bool entire;
  bool simple;
  bool surjective;
  bool injective;
  bool function;
  bool difunctional;
} MkClassification;

/**
 * Mirrors the law generator settings; fill with [`mk_law_config_default`].
 */
typedef struct MkLawConfig {
  size_t max_size;
  size_t random_max_size;
  size_t samples;
  uint64_t seed;
  size_t power_bound;
  size_t depth;
  size_t alphabet;
  uint64_t budget;
  bool timing;
} MkLawConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failing call on this thread, or null if none.
 * The pointer stays valid until the next failing call on this thread.
 */
const char *mk_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void mk_string_free(char *s);

/**
 * Parses fixture text and returns the relation block at `index`.
 *
 * # Safety
 * `fixture` must be a NUL-terminated string; `out_rel` must be writable.
 */
enum MkStatus mk_rel_parse(const char *fixture, size_t index, struct MkRel **out_rel);

/**
 * # Safety
 * `r` must be null or a handle from this library, not yet freed.
 */
void mk_rel_free(struct MkRel *r);

/**
 * # Safety
 * `r` must be a live handle; `src_len` and `tgt_len` must be writable.
 */
enum MkStatus mk_rel_dims(const struct MkRel *r, size_t *src_len, size_t *tgt_len);

/**
 * Whether target `t` is related to source `s` (both zero-based).
 *
 * # Safety
 * `r` must be a live handle; `related` must be writable.
 */
enum MkStatus mk_rel_get(const struct MkRel *r, size_t t, size_t s, bool *related);

/**
 * # Safety
 * `a` and `b` must be live handles; `equal` must be writable.
 */
enum MkStatus mk_rel_equal(const struct MkRel *a, const struct MkRel *b, bool *equal);

/**
 * # Safety
 * `r` must be a live handle; `out_rel` must be writable.
 */
enum MkStatus mk_rel_converse(const struct MkRel *r, struct MkRel **out_rel);

/**
 * `a·b`.
 *
 * # Safety
 * `a` and `b` must be live handles; `out_rel` must be writable.
 */
enum MkStatus mk_rel_compose(const struct MkRel *a, const struct MkRel *b, struct MkRel **out_rel);

/**
 * # Safety
 * As for [`mk_rel_compose`].
 */
enum MkStatus mk_rel_meet(const struct MkRel *a, const struct MkRel *b, struct MkRel **out_rel);

/**
 * # Safety
 * As for [`mk_rel_compose`].
 */
enum MkStatus mk_rel_join(const struct MkRel *a, const struct MkRel *b, struct MkRel **out_rel);

/**
 * `a \ b`.
 *
 * # Safety
 * As for [`mk_rel_compose`].
 */
enum MkStatus mk_rel_left_divide(const struct MkRel *a,
                                 const struct MkRel *b,
                                 struct MkRel **out_rel);

/**
 * `a / b`.
 *
 * # Safety
 * As for [`mk_rel_compose`].
 */
enum MkStatus mk_rel_right_divide(const struct MkRel *a,
                                  const struct MkRel *b,
                                  struct MkRel **out_rel);

/**
 * Symmetric division of `a` by `b`.
 *
 * # Safety
 * As for [`mk_rel_compose`].
 */
enum MkStatus mk_rel_sym_divide(const struct MkRel *a,
                                const struct MkRel *b,
                                struct MkRel **out_rel);

/**
 * `a ↾ b` for an endo `b` on the target of `a`.
 *
 * # Safety
 * As for [`mk_rel_compose`].
 */
enum MkStatus mk_rel_shrink(const struct MkRel *a, const struct MkRel *b, struct MkRel **out_rel);

/**
 * Evaluates an expression over `n` named relations, with the same syntax as
 * `metakit rel`.
 *
 * # Safety
 * `expr` must be a NUL-terminated string; `names` and `rels` must each point
 * to `n` valid entries; `out_rel` must be writable.
 */
enum MkStatus mk_rel_eval(const char *expr,
                          const char *const *names,
                          const struct MkRel *const *rels,
                          size_t n,
                          size_t power_bound,
                          struct MkRel **out_rel);

/**
 * # Safety
 * `r` must be a live handle; `flags` must be writable.
 */
enum MkStatus mk_rel_classify(const struct MkRel *r, struct MkClassification *flags);

/**
 * Renders `r` in fixture syntax. Free the result with [`mk_string_free`].
 *
 * # Safety
 * `r` must be a live handle; `out_text` must be writable.
 */
enum MkStatus mk_rel_render(const struct MkRel *r, char **out_text);

/**
 * # Safety
 * `cfg` must be writable.
 */
enum MkStatus mk_law_config_default(struct MkLawConfig *cfg);

/**
 * Runs the law catalogue, or the comma-separated ids in `only` when it is
 * non-null. The JSON report goes to `out_json` when that is non-null; free
 * it with [`mk_string_free`].
 *
 * # Safety
 * `cfg` must be readable; `only` must be null or NUL-terminated;
 * `verdict` must be writable.
 */
enum MkStatus mk_laws_run(const struct MkLawConfig *cfg,
                          const char *only,
                          enum MkLawStatus *verdict,
                          char **out_json);

/**
 * Quicksort of `n` values into `sorted`, which must hold `n` entries.
 *
 * # Safety
 * `xs` must hold `n` readable values and `sorted` `n` writable ones.
 */
enum MkStatus mk_quicksort(const size_t *xs, size_t n, size_t *sorted);

/**
 * Mergesort of `n` values into `sorted`, which must hold `n` entries.
 *
 * # Safety
 * As for [`mk_quicksort`].
 */
enum MkStatus mk_mergesort(const size_t *xs, size_t n, size_t *sorted);

/**
 * Height of the minimum-height tree with leaf heights `xs`, in order.
 *
 * # Safety
 * `xs` must hold `n` readable values; `out_height` must be writable.
 */
enum MkStatus mk_min_height(const size_t *xs, size_t n, size_t *out_height);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* METAKIT_H */
