#ifndef EUCLID_LAB_H
#define EUCLID_LAB_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum ELStatus {
  EL_STATUS_OK = 0,
  EL_STATUS_INVALID_INPUT = 1,
  EL_STATUS_SYNTAX = 2,
  EL_STATUS_NOT_A_MEMBER = 3,
  EL_STATUS_NOT_CLOSED = 4,
  EL_STATUS_MISMATCH = 5,
  EL_STATUS_BOUND_EXCEEDED = 6,
  EL_STATUS_UNSUPPORTED = 7,
  EL_STATUS_NULL_POINTER = 8,
  // A panic was caught at the boundary.
  EL_STATUS_INTERNAL = 9,
} ELStatus;

// An element of some monoid.
typedef struct ELElement ELElement;

// A validated monoid descriptor.
typedef struct ELMonoid ELMonoid;

// The message for the last failed call on this thread, or null. Valid
// until the next failing call on the same thread; do not free.
const char *el_last_error(void);

// # Safety
// `s` is null or was returned by this library and not yet freed.
void el_string_free(char *s);

// Parses `"nat"`, `"congruence R mod M"` or `"quadratic D"`.
//
// # Safety
// `spec` is a nul-terminated string; `out` is writable.
enum ELStatus el_monoid_parse(const char *spec, struct ELMonoid **out);

// # Safety
// `m` is null or a live monoid handle.
void el_monoid_free(struct ELMonoid *m);

// Canonical specification text.
//
// # Safety
// `m` is a live monoid handle; `out` is writable.
enum ELStatus el_monoid_render(const struct ELMonoid *m, char **out);

// Parses an element literal: decimal, `(a,b)` or `a+b*sqrt(d)`.
//
// # Safety
// `m` is a live monoid handle, `literal` a nul-terminated string and `out`
// writable.
enum ELStatus el_element_parse(const struct ELMonoid *m,
                               const char *literal,
                               struct ELElement **out);

// # Safety
// `e` is null or a live element handle.
void el_element_free(struct ELElement *e);

// Decimal for integer monoids, `(a,b)` for quadratic ones.
//
// # Safety
// `e` is a live element handle; `out` is writable.
enum ELStatus el_element_render(const struct ELElement *e, char **out);

// # Safety
// `a` and `b` are live element handles; `out` is writable.
enum ELStatus el_element_mul(const struct ELElement *a,
                             const struct ELElement *b,
                             struct ELElement **out);

// Sets `*out` to `x / d`, or to null when `d` does not divide `x`.
//
// # Safety
// `x` and `d` are live element handles; `out` is writable.
enum ELStatus el_element_try_divide(const struct ELElement *x,
                                    const struct ELElement *d,
                                    struct ELElement **out);

// # Safety
// `x` is a live element handle; `out` is writable.
enum ELStatus el_element_is_irreducible(const struct ELElement *x, bool *out);

// `g = gcd(a, b)` with `s·a + t·b = g`; `a` and `b` must be positive.
//
// # Safety
// `g`, `s` and `t` are writable.
enum ELStatus el_bezout_u64(uint64_t a, uint64_t b, uint64_t *g, int64_t *s, int64_t *t);

// Runs one command-line invocation (without the program name) and
// returns its standard output and exit status. `*exit_status` follows the
// command-line contract: 0 holds, 1 refuted, 2 usage error, 3 bound
// exceeded. On 2 and 3 `*out` holds the error text.
//
// # Safety
// `argv` points to `argc` nul-terminated strings; `out` and `exit_status`
// are writable.
enum ELStatus el_run(const char *const *argv, uintptr_t argc, char **out, int *exit_status);

#endif  /* EUCLID_LAB_H */
