#ifndef TRIVSRC_H
#define TRIVSRC_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TsStatus {
  TS_STATUS_OK = 0,
  TS_STATUS_NULL_ARGUMENT = 1,
  TS_STATUS_UNSUPPORTED = 2,
  TS_STATUS_PARSE = 3,
  TS_STATUS_CLASSIFICATION = 4,
  TS_STATUS_VERIFY_FAILED = 5,
  TS_STATUS_INVALID = 6,
  TS_STATUS_STRUCTURAL = 7,
  TS_STATUS_INTERNAL = 8,
} TsStatus;

/**
 * Opaque ordinary character table.
 */
typedef struct TsCharTable TsCharTable;

/**
 * Opaque permutation group.
 */
typedef struct TsGroup TsGroup;

/**
 * Opaque trivial source character table.
 */
typedef struct TsTsct TsTsct;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Caller frees.
 */
char *trivsrc_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void trivsrc_string_free(char *s);

/**
 * Builtin group by name: `v4`, `a4`, `a5`, `ex972`, `d4v:<v>`.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` a valid pointer.
 */
enum TsStatus trivsrc_group_builtin(const char *name, struct TsGroup **out);

/**
 * Group from `{"degree": n, "generators": [[...1-based images...]]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` a valid pointer.
 */
enum TsStatus trivsrc_group_from_json(const char *json, struct TsGroup **out);

/**
 * # Safety
 * `g` must be a live group handle; `order` a valid pointer.
 */
enum TsStatus trivsrc_group_order(const struct TsGroup *g, size_t *order);

/**
 * # Safety
 * `g` must be NULL or a handle from this library, not yet freed.
 */
void trivsrc_group_free(struct TsGroup *g);

/**
 * Character table of a group. Named builtin groups keep their classical
 * layout; any other group goes through Dixon's algorithm.
 *
 * # Safety
 * `g` must be a live group handle; `out` a valid pointer.
 */
enum TsStatus trivsrc_chartab_compute(const struct TsGroup *g, struct TsCharTable **out);

/**
 * # Safety
 * `json` must be a NUL-terminated string; `out` a valid pointer.
 */
enum TsStatus trivsrc_chartab_from_json(const char *json, struct TsCharTable **out);

/**
 * # Safety
 * `t` must be a live table handle; `n` a valid pointer.
 */
enum TsStatus trivsrc_chartab_num_classes(const struct TsCharTable *t, size_t *n);

/**
 * # Safety
 * `t` must be a live table handle; `out` a valid pointer.
 */
enum TsStatus trivsrc_chartab_to_json(const struct TsCharTable *t, char **out);

/**
 * 2-block partition as a JSON array.
 *
 * # Safety
 * `t` must be a live table handle; `out` a valid pointer.
 */
enum TsStatus trivsrc_chartab_blocks_json(const struct TsCharTable *t, char **out);

/**
 * # Safety
 * `t` must be NULL or a handle from this library, not yet freed.
 */
void trivsrc_chartab_free(struct TsCharTable *t);

/**
 * Assembles and verifies the trivial source character table.
 *
 * # Safety
 * `t` must be a live table handle; `out` a valid pointer.
 */
enum TsStatus trivsrc_tsct_assemble(const struct TsCharTable *t, struct TsTsct **out);

/**
 * Closed-form table of the dihedral group of order 4v.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum TsStatus trivsrc_tsct_d4v(size_t v, struct TsTsct **out);

/**
 * # Safety
 * `json` must be a NUL-terminated string; `out` a valid pointer.
 */
enum TsStatus trivsrc_tsct_from_json(const char *json, struct TsTsct **out);

/**
 * # Safety
 * `t` must be a live handle; `rows` a valid pointer.
 */
enum TsStatus trivsrc_tsct_size(const struct TsTsct *t, size_t *rows);

/**
 * # Safety
 * `t` must be a live handle; `out` a valid pointer.
 */
enum TsStatus trivsrc_tsct_to_json(const struct TsTsct *t, char **out);

/**
 * Runs every invariant check. Returns `VerifyFailed` if any fails; the
 * JSON report is written to `report` (if non-NULL) in either case.
 *
 * # Safety
 * `t` must be a live handle; `report` NULL or a valid pointer.
 */
enum TsStatus trivsrc_tsct_verify(const struct TsTsct *t, char **report);

/**
 * # Safety
 * `t` must be NULL or a handle from this library, not yet freed.
 */
void trivsrc_tsct_free(struct TsTsct *t);

/**
 * Trivial source characters of a Klein-four defect block, JSON in and out.
 *
 * # Safety
 * `input` must be a NUL-terminated string; `out` a valid pointer.
 */
enum TsStatus trivsrc_transport_json(const char *input, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRIVSRC_H */
