#ifndef HEYTING_MODAL_H
#define HEYTING_MODAL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HmStatus {
  HM_STATUS_OK = 0,
  // A verification suite found a counterexample.
  HM_STATUS_VERIFICATION_FAILED = 1,
  // Unparseable or structurally invalid input.
  HM_STATUS_INVALID_INPUT = 2,
  HM_STATUS_NULL_POINTER = 3,
  // An element or member index is out of range.
  HM_STATUS_OUT_OF_RANGE = 4,
  // A size guard was exceeded.
  HM_STATUS_TOO_LARGE = 5,
  // The library panicked; this is a bug.
  HM_STATUS_PANIC = 6,
} HmStatus;

// A finite Heyting algebra.
typedef struct HmAlgebra HmAlgebra;

// The nuclei of an algebra, sorted by table.
typedef struct HmNuclei HmNuclei;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds an algebra from a lattice document or, for a context-poset
// document, its algebra of clopen subobjects.
//
// # Safety
// `json` must be a valid NUL-terminated string and `out` a valid pointer.
enum HmStatus hm_algebra_from_json(const char *json, struct HmAlgebra **out);

// # Safety
// `algebra` must be null or a handle from [`hm_algebra_from_json`] not yet freed.
void hm_algebra_free(struct HmAlgebra *algebra);

// Number of elements, or 0 for a null handle.
//
// # Safety
// `algebra` must be null or a live handle.
size_t hm_algebra_size(const struct HmAlgebra *algebra);

// Index of the element named `name`.
//
// # Safety
// `algebra` must be a live handle, `name` a NUL-terminated string and `out` valid.
enum HmStatus hm_algebra_index_of(const struct HmAlgebra *algebra, const char *name, size_t *out);

// Name of element `x`, to be released with [`hm_string_free`].
//
// # Safety
// `algebra` must be a live handle and `out` valid.
enum HmStatus hm_algebra_element_name(const struct HmAlgebra *algebra, size_t x, char **out);

// # Safety
// `algebra` must be a live handle and `out` valid.
enum HmStatus hm_algebra_meet(const struct HmAlgebra *algebra, size_t x, size_t y, size_t *out);

// # Safety
// `algebra` must be a live handle and `out` valid.
enum HmStatus hm_algebra_join(const struct HmAlgebra *algebra, size_t x, size_t y, size_t *out);

// `x → y`.
//
// # Safety
// `algebra` must be a live handle and `out` valid.
enum HmStatus hm_algebra_implies(const struct HmAlgebra *algebra, size_t x, size_t y, size_t *out);

// `¬x`.
//
// # Safety
// `algebra` must be a live handle and `out` valid.
enum HmStatus hm_algebra_negation(const struct HmAlgebra *algebra, size_t x, size_t *out);

// # Safety
// `algebra` must be a live handle and `out` valid.
enum HmStatus hm_algebra_is_boolean(const struct HmAlgebra *algebra, bool *out);

// Number of regular elements (`¬¬x = x`).
//
// # Safety
// `algebra` must be a live handle and `out` valid.
enum HmStatus hm_algebra_regular_count(const struct HmAlgebra *algebra, size_t *out);

// Enumerates every nucleus. `max_carrier` of 0 selects the default guard.
//
// # Safety
// `algebra` must be a live handle and `out` valid.
enum HmStatus hm_nuclei_enumerate(const struct HmAlgebra *algebra,
                                  size_t max_carrier,
                                  struct HmNuclei **out);

// Number of nuclei, or 0 for a null handle.
//
// # Safety
// `nuclei` must be null or a live handle.
size_t hm_nuclei_count(const struct HmNuclei *nuclei);

// Copies the table of nucleus `member` into `table`, which must hold
// `len` entries; `len` must equal the algebra size.
//
// # Safety
// `nuclei` must be a live handle and `table` valid for `len` writes.
enum HmStatus hm_nuclei_table(const struct HmNuclei *nuclei,
                              size_t member,
                              size_t *table,
                              size_t len);

// # Safety
// `nuclei` must be null or a handle from [`hm_nuclei_enumerate`] not yet freed.
void hm_nuclei_free(struct HmNuclei *nuclei);

// Runs the full verification pipeline on a lattice or context-poset
// document. When a report is produced it is written to `report` as JSON
// (release with [`hm_string_free`]) and the status is `OK` or
// `VERIFICATION_FAILED`; otherwise `report` is set to null.
//
// # Safety
// `json` must be a NUL-terminated string and `report` valid.
enum HmStatus hm_verify_json(const char *json, char **report);

// # Safety
// `s` must be null or a string returned by this library not yet freed.
void hm_string_free(char *s);

// Message for the last failed call on this thread, or null. Valid until
// the next call into this library on the same thread.
const char *hm_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HEYTING_MODAL_H */
