#ifndef CURRENTS_H
#define CURRENTS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CurrentsStatus {
  CURRENTS_STATUS_OK = 0,
  CURRENTS_STATUS_NULL_POINTER = 1,
  CURRENTS_STATUS_INVALID_UTF8 = 2,
  CURRENTS_STATUS_PRECONDITION = 3,
  CURRENTS_STATUS_BUDGET = 4,
  CURRENTS_STATUS_OVERFLOW = 5,
  CURRENTS_STATUS_PANIC = 6,
} CurrentsStatus;

/**
 * A rational current on a particular surface.
 */
typedef struct CurrentsCurrent CurrentsCurrent;

/**
 * A surface with its standard spine and default hyperbolic structure.
 */
typedef struct CurrentsSurface CurrentsSurface;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or an empty string.
 * The pointer stays valid until the next call on this thread.
 */
const char *currents_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void currents_string_free(char *s);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum CurrentsStatus currents_surface_new(uint32_t genus,
                                         uint32_t boundary,
                                         struct CurrentsSurface **out);

/**
 * # Safety
 * `s` must be null or a handle from `currents_surface_new`.
 */
void currents_surface_free(struct CurrentsSurface *s);

/**
 * Parses text such as `"2*a + 1/2*abAB + bndry(1)"`.
 *
 * # Safety
 * `s` must be a valid surface handle, `text` a NUL-terminated string and
 * `out` a valid pointer.
 */
enum CurrentsStatus currents_current_parse(const struct CurrentsSurface *s,
                                           const char *text,
                                           struct CurrentsCurrent **out);

/**
 * # Safety
 * `c` must be null or a handle from `currents_current_parse`.
 */
void currents_current_free(struct CurrentsCurrent *c);

/**
 * Canonical text of a current; free with `currents_string_free`.
 *
 * # Safety
 * `c` must be a valid current handle and `out` a valid pointer.
 */
enum CurrentsStatus currents_current_to_string(const struct CurrentsCurrent *c, char **out);

/**
 * Intersection pairing as the fraction `num / den`.
 *
 * # Safety
 * All pointers must be valid; both currents must live on `s`.
 */
enum CurrentsStatus currents_intersection(const struct CurrentsSurface *s,
                                          const struct CurrentsCurrent *c1,
                                          const struct CurrentsCurrent *c2,
                                          int64_t *num,
                                          int64_t *den);

/**
 * Self-intersection number of the primitive class of `word`.
 *
 * # Safety
 * All pointers must be valid.
 */
enum CurrentsStatus currents_self_intersection(const struct CurrentsSurface *s,
                                               const char *word,
                                               uint64_t *out);

/**
 * Image of a current under a product of twist generators such as
 * `"Ta*Tb^-1"`; the result is a new handle.
 *
 * # Safety
 * All pointers must be valid.
 */
enum CurrentsStatus currents_apply_mapping_class(const struct CurrentsSurface *s,
                                                 const char *phi,
                                                 const struct CurrentsCurrent *c,
                                                 struct CurrentsCurrent **out);

/**
 * Hyperbolic length of a current in the default structure.
 *
 * # Safety
 * All pointers must be valid.
 */
enum CurrentsStatus currents_length(const struct CurrentsSurface *s,
                                    const struct CurrentsCurrent *c,
                                    double *out);

/**
 * Census counts `b'(L)` (all) and `b(L)` (no peripheral components) in the
 * default structure.
 *
 * # Safety
 * All pointers must be valid.
 */
enum CurrentsStatus currents_census_count(const struct CurrentsSurface *s,
                                          double l,
                                          uint64_t *count_all,
                                          uint64_t *count_internal);

/**
 * Writes 1 to `out` if the current is binding, 0 otherwise.
 *
 * # Safety
 * All pointers must be valid.
 */
enum CurrentsStatus currents_is_binding(const struct CurrentsSurface *s,
                                        const struct CurrentsCurrent *c,
                                        int32_t *out);

/**
 * Ball volume of a homogeneous measure of degree `d`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum CurrentsStatus currents_homogeneous_ball_volume(double d,
                                                     uint32_t n_r,
                                                     double l,
                                                     double ell_c,
                                                     double m_th_b,
                                                     double *out);

/**
 * Exact simplex constant as `num / den`; `Overflow` if it does not fit.
 *
 * # Safety
 * All pointers must be valid.
 */
enum CurrentsStatus currents_simplex_integral(uint32_t big_n,
                                              uint32_t n,
                                              int64_t *num,
                                              int64_t *den);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CURRENTS_H */
