#ifndef URFS_H
#define URFS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum UrfsStatus {
  URFS_STATUS_OK = 0,
  // A required pointer argument was NULL.
  URFS_STATUS_NULL_POINTER = 1,
  // A string argument was not valid UTF-8.
  URFS_STATUS_INVALID_UTF8 = 2,
  // A document could not be parsed or decoded.
  URFS_STATUS_PARSE = 3,
  // The input was well formed but mathematically unusable.
  URFS_STATUS_INVALID_INPUT = 4,
  // A search ran out of budget without an answer.
  URFS_STATUS_BUDGET_EXHAUSTED = 5,
  // The library panicked; the handle arguments should be discarded.
  URFS_STATUS_INTERNAL = 6,
} UrfsStatus;

// Outcome of a conjugacy check.
typedef enum UrfsVerdict {
  URFS_VERDICT_EQUIVALENT = 0,
  URFS_VERDICT_INEQUIVALENT = 1,
  URFS_VERDICT_UNKNOWN = 2,
} UrfsVerdict;

// A truncated log connection with Frobenius.
typedef struct UrfsLogModule UrfsLogModule;

// A Weil–Deligne pair `(s, N)` in a linear algebraic group.
typedef struct UrfsPair UrfsPair;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The library version as a static NUL-terminated string.
const char *urfs_version(void);

// Message describing the most recent failure on this thread, or NULL.
// The pointer stays valid until the next library call on this thread.
const char *urfs_last_error(void);

// Releases a string returned by this library.
//
// # Safety
// `s` is NULL or a string obtained from this library and not yet freed.
void urfs_string_free(char *s);

// Decodes a pair from its JSON document.
//
// # Safety
// `json` is a NUL-terminated string; `out` is valid for writes.
enum UrfsStatus urfs_pair_from_json(const char *json, struct UrfsPair **out);

// The Tate-curve pair `(diag(1, q), E₂₁)` in GL₂ over Q.
//
// # Safety
// `out` is valid for writes.
enum UrfsStatus urfs_pair_tate(uint64_t q, struct UrfsPair **out);

// Releases a pair.
//
// # Safety
// `pair` is NULL or a handle from this library not yet freed.
void urfs_pair_free(struct UrfsPair *pair);

// Dimension of the underlying representation, or 0 for NULL.
//
// # Safety
// `pair` is NULL or a live handle.
size_t urfs_pair_dim(const struct UrfsPair *pair);

// Encodes a pair as JSON.
//
// # Safety
// `pair` is a live handle; `out` is valid for writes.
enum UrfsStatus urfs_pair_to_json(const struct UrfsPair *pair, char **out);

// Checks every invariant of a pair. `valid` receives the overall result;
// if `report` is not NULL it receives the per-check JSON report.
//
// # Safety
// `pair` is a live handle; `valid` is valid for writes; `report` is NULL
// or valid for writes.
enum UrfsStatus urfs_pair_validate(const struct UrfsPair *pair, bool *valid, char **report);

// The complete GL-conjugacy invariant of a URFS pair, as JSON.
//
// # Safety
// `pair` is a live handle; `out` is valid for writes.
enum UrfsStatus urfs_pair_canonical_form(const struct UrfsPair *pair, char **out);

// Decides conjugacy of two pairs in their group with the default budget.
// If `detail` is not NULL it receives the verdict document (witness,
// certificate or reason) as JSON.
//
// # Safety
// `a`, `b` are live handles; `verdict` is valid for writes; `detail` is
// NULL or valid for writes.
enum UrfsStatus urfs_pair_check_equiv(const struct UrfsPair *a,
                                      const struct UrfsPair *b,
                                      enum UrfsVerdict *verdict,
                                      char **detail);

// Decodes a log module; a non-zero `order` overrides the document's
// truncation order.
//
// # Safety
// `json` is a NUL-terminated string; `out` is valid for writes.
enum UrfsStatus urfs_log_module_from_json(const char *json,
                                          size_t order,
                                          struct UrfsLogModule **out);

// Releases a log module.
//
// # Safety
// `module` is NULL or a handle from this library not yet freed.
void urfs_log_module_free(struct UrfsLogModule *module);

// Whether the module passes every check (shapes, nilpotent residue,
// compatibility with Frobenius).
//
// # Safety
// `module` is a live handle; `valid` is valid for writes.
enum UrfsStatus urfs_log_module_validate(const struct UrfsLogModule *module, bool *valid);

// The special fiber `(φ₀, N)` as JSON.
//
// # Safety
// `module` is a live handle; `out` is valid for writes.
enum UrfsStatus urfs_log_module_special_fiber(const struct UrfsLogModule *module, char **out);

// The Weil–Deligne pair `(φ₀^(−s_deg), N)` with `q = p^s_deg` attached to
// the special fiber.
//
// # Safety
// `module` is a live handle; `out` is valid for writes.
enum UrfsStatus urfs_log_module_to_pair(const struct UrfsLogModule *module,
                                        uint32_t s_deg,
                                        struct UrfsPair **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* URFS_H */
