#ifndef FORMGROUP_H
#define FORMGROUP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result codes.
typedef enum FgStatus {
  FG_STATUS_OK = 0,
  FG_STATUS_NULL_ARGUMENT = 1,
  FG_STATUS_INVALID_UTF8 = 2,
  FG_STATUS_INVALID_ARGUMENT = 3,
  FG_STATUS_PARSE = 4,
  FG_STATUS_NOT_A_GROUP = 5,
  FG_STATUS_ORDER_CAP_EXCEEDED = 6,
  FG_STATUS_BUDGET_EXCEEDED = 7,
  FG_STATUS_PRECONDITION = 8,
  FG_STATUS_IO = 9,
  FG_STATUS_INTERNAL = 10,
} FgStatus;

// Which subnormality notion [`fg_subnormal`] tests.
typedef enum FgSubnormalKind {
  FG_SUBNORMAL_KIND_SUBNORMAL = 0,
  FG_SUBNORMAL_KIND_KF = 1,
  FG_SUBNORMAL_KIND_F = 2,
  FG_SUBNORMAL_KIND_SIGMA = 3,
} FgSubnormalKind;

// Opaque group handle.
typedef struct FgGroup FgGroup;

// Opaque subgroup handle; element indices refer to the group it came from.
typedef struct FgSubgroup FgSubgroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null after a success.
// The pointer stays valid until the next call into this library.
const char *fg_last_error_message(void);

// Library version as a static nul-terminated string.
const char *fg_version(void);

// Builds a group from a selector such as `sym:4` or `prod(cyclic:2,sym:3)`.
//
// # Safety
// `selector` must be a nul-terminated string and `out` a valid pointer.
enum FgStatus fg_group_from_selector(const char *selector, size_t order_cap, struct FgGroup **out);

// Parses a group file body (`perm <degree>` or `table <n>` format).
//
// # Safety
// `text` must be a nul-terminated string and `out` a valid pointer.
enum FgStatus fg_group_from_text(const char *text, size_t order_cap, struct FgGroup **out);

// Builds a group from a row-major `n * n` Cayley table.
//
// # Safety
// `table` must point to `n * n` readable values and `out` must be valid.
enum FgStatus fg_group_from_table(const uint32_t *table, size_t n, struct FgGroup **out);

// # Safety
// `g` must be null or a handle from this library not yet freed.
void fg_group_free(struct FgGroup *g);

// Group order, or 0 for a null handle.
//
// # Safety
// `g` must be null or a live group handle.
size_t fg_group_order(const struct FgGroup *g);

// Product of element indices `a` and `b`.
//
// # Safety
// `g` must be a live group handle and `out` a valid pointer.
enum FgStatus fg_group_mul(const struct FgGroup *g, size_t a, size_t b, size_t *out);

// The F-residual. `sigma` may be null unless `formation` is
// `sigma-nilpotent`.
//
// # Safety
// `g` must be a live group handle, strings nul-terminated or null, `out`
// valid.
enum FgStatus fg_residual(const struct FgGroup *g,
                          const char *formation_name,
                          const char *sigma,
                          struct FgSubgroup **out);

// The F-hypercentre. Arguments as for [`fg_residual`].
//
// # Safety
// As for [`fg_residual`].
enum FgStatus fg_hypercentre(const struct FgGroup *g,
                             const char *formation_name,
                             const char *sigma,
                             struct FgSubgroup **out);

// Subgroup generated by `len` element indices.
//
// # Safety
// `g` must be a live group handle, `gens` readable for `len` values (or null
// when `len` is 0), `out` valid.
enum FgStatus fg_subgroup_generated(const struct FgGroup *g,
                                    const size_t *gens,
                                    size_t len,
                                    struct FgSubgroup **out);

// # Safety
// `s` must be null or a subgroup handle not yet freed.
void fg_subgroup_free(struct FgSubgroup *s);

// Subgroup order, or 0 for a null handle.
//
// # Safety
// `s` must be null or a live subgroup handle.
size_t fg_subgroup_order(const struct FgSubgroup *s);

// Copies up to `cap` sorted element indices into `buf` and returns the
// subgroup order, so a short buffer can be detected and retried.
//
// # Safety
// `s` must be a live subgroup handle; `buf` writable for `cap` values or null
// when `cap` is 0.
size_t fg_subgroup_elements(const struct FgSubgroup *s, size_t *buf, size_t cap);

// Tests whether the subgroup generated by `gens` is subnormal of the given
// kind. On success `*positive` is set, and if `chain` is non-null it
// receives the rendered witness chain (or null when negative).
//
// # Safety
// Handles live, strings nul-terminated or null, `gens` readable for `len`
// values, `positive` valid, `chain` null or valid.
enum FgStatus fg_subnormal(const struct FgGroup *g,
                           const size_t *gens,
                           size_t len,
                           enum FgSubnormalKind kind,
                           const char *formation_name,
                           const char *sigma,
                           bool *positive,
                           char **chain);

// Runs a verification claim (`theorem-a`, `theorem-b`, `schenkman`,
// `holomorph-bound`, `section3`, `lemmas` or `all`) over the generated
// catalog up to `max_order` and returns the reports as JSON, with the exit
// code the command-line tool would use. `formation` and `sigma` may be null
// for the standard plan.
//
// # Safety
// Strings nul-terminated or null; `json` and `exit` valid pointers.
enum FgStatus fg_verify_json(const char *claim,
                             size_t max_order,
                             size_t order_cap,
                             const char *formation_name,
                             const char *sigma,
                             uint64_t seed,
                             char **json,
                             int32_t *exit);

// # Safety
// `s` must be null or a string returned by this library not yet freed.
void fg_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FORMGROUP_H */
