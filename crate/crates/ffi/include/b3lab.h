/* Generated by cbindgen from crates/ffi/src/lib.rs. */

#ifndef B3LAB_H
#define B3LAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum B3Status {
  B3_STATUS_OK = 0,
  B3_STATUS_NULL_POINTER = 1,
  B3_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed word, tuple or matrix.
   */
  B3_STATUS_PARSE = 3,
  /**
   * Well-formed input outside the domain of the operation.
   */
  B3_STATUS_DOMAIN = 4,
  /**
   * The input is periodic, so the requested quantity does not exist.
   */
  B3_STATUS_PERIODIC = 5,
  B3_STATUS_PANIC = 6,
} B3Status;

/**
 * Opaque braid handle.
 */
typedef struct B3Braid B3Braid;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after success.
 * Valid until the next call on the same thread.
 */
const char *b3_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *b3_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void b3_string_free(char *s);

/**
 * Parses a word (`aBD`, `1 -2`) or a tuple (`(0; 1; 1,1)`) into a new handle.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum B3Status b3_braid_parse(const char *text, struct B3Braid **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `b` must come from `b3_braid_parse` and not have been freed.
 */
void b3_braid_free(struct B3Braid *b);

/**
 * Compact word text of the braid.
 *
 * # Safety
 * `b` must be a live handle and `out` a valid pointer.
 */
enum B3Status b3_braid_word(const struct B3Braid *b, char **out);

/**
 * Left normal form, e.g. `D^-1 . b . ba`.
 *
 * # Safety
 * `b` must be a live handle and `out` a valid pointer.
 */
enum B3Status b3_braid_normal_form(const struct B3Braid *b, char **out);

/**
 * Garside tuple `(s; i; p1,q1,...)` of the normal form.
 *
 * # Safety
 * `b` must be a live handle and `out` a valid pointer.
 */
enum B3Status b3_braid_tuple(const struct B3Braid *b, char **out);

/**
 * Classification as JSON (`type`, `murasugi`, and per type `root_power`,
 * `side`, `matrix`, `trace`, `dilatation`). `max_cycling` of 0 selects the default.
 *
 * # Safety
 * `b` must be a live handle and `out` a valid pointer.
 */
enum B3Status b3_braid_classify_json(const struct B3Braid *b, size_t max_cycling, char **out);

/**
 * Dilatation factor of a pseudo-Anosov braid as a double.
 *
 * # Safety
 * `b` must be a live handle and `out` a valid pointer.
 */
enum B3Status b3_braid_dilatation(const struct B3Braid *b, double *out);

/**
 * Matrix of the braid's Murasugi representative, `[[a,b],[c,d]]`.
 *
 * # Safety
 * `b` must be a live handle and `out` a valid pointer.
 */
enum B3Status b3_braid_matrix(const struct B3Braid *b, char **out);

/**
 * Conjugacy test, optionally modulo the centre.
 *
 * # Safety
 * `a`, `b` must be live handles and `out` a valid pointer.
 */
enum B3Status b3_braid_is_conjugate(const struct B3Braid *a,
                                    const struct B3Braid *b,
                                    bool mod_delta2,
                                    bool *out);

/**
 * LU-word of a determinant-one non-negative matrix.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum B3Status b3_matrix_decompose(uint64_t m11,
                                  uint64_t m12,
                                  uint64_t m21,
                                  uint64_t m22,
                                  char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* B3LAB_H */
