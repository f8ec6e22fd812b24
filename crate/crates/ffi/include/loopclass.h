#ifndef LOOPCLASS_H
#define LOOPCLASS_H

#include <stddef.h>
#include <stdint.h>

// Result codes of the C API.
typedef enum LcStatus {
  LC_STATUS_OK = 0,
  LC_STATUS_NULL_POINTER = 1,
  LC_STATUS_INVALID_UTF8 = 2,
  LC_STATUS_INVALID_INPUT = 3,
  LC_STATUS_NOT_GENERATING = 4,
  LC_STATUS_UNSUPPORTED = 5,
  LC_STATUS_INVARIANT = 6,
  LC_STATUS_PANIC = 7,
} LcStatus;

// A normal form `A(r_1, s_1, 1, s_2, ...)`.
typedef struct LcBrusselForm LcBrusselForm;

// A Mumford subgroup `H(s_1, ..., s_l)` with its commutator pairing.
typedef struct LcMumford LcMumford;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the most recent failure on this thread, or NULL. The caller
// owns the returned string.
char *lc_last_error(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void lc_string_free(char *s);

// Library version as a static string.
const char *lc_version(void);

// Builds `H(chain)` from a divisor chain of length `len`.
//
// # Safety
// `chain` must point to `len` readable integers and `out` must be writable.
enum LcStatus lc_mumford_new(const int64_t *chain, size_t len, struct LcMumford **out);

// # Safety
// `h` must be NULL or a live handle from `lc_mumford_new`.
void lc_mumford_free(struct LcMumford *h);

// Degree `d = prod s_j` of the irreducible representation; 0 for NULL.
//
// # Safety
// `h` must be NULL or a live handle.
int64_t lc_mumford_degree(const struct LcMumford *h);

// Commutator pairing of two elements given as `2l` coordinates on
// `a_1, b_1, ..., a_l, b_l`, written as the reduced fraction `num / den`
// in `[0, 1)`.
//
// # Safety
// `x` and `y` must point to `len` integers; `num` and `den` must be writable.
enum LcStatus lc_mumford_pairing(const struct LcMumford *h,
                                 const int64_t *x,
                                 const int64_t *y,
                                 size_t len,
                                 int64_t *num,
                                 int64_t *den);

// Normal form of the cocycle sending `t_i` to the i-th entry of `tuple`,
// written as semicolon-separated words such as `"a;3b"` or `"a1;b1;a2;b2"`.
//
// # Safety
// `h` must be a live handle, `tuple` a NUL-terminated string, `out` writable.
enum LcStatus lc_brussel_normal_form(const struct LcMumford *h,
                                     const char *tuple,
                                     struct LcBrusselForm **out);

// # Safety
// `f` must be NULL or a live handle from `lc_brussel_normal_form`.
void lc_brussel_form_free(struct LcBrusselForm *f);

// The sign-normalized twist `r_1`; 0 for NULL.
//
// # Safety
// `f` must be NULL or a live handle.
int64_t lc_brussel_form_r1(const struct LcBrusselForm *f);

// Label such as `A(2,5)`; NULL for NULL. The caller owns the string.
//
// # Safety
// `f` must be NULL or a live handle.
char *lc_brussel_form_label(const struct LcBrusselForm *f);

// Number of nullity-2 loop forms of the given type (e.g. `"D4"`), over
// the Laurent polynomial ring when `over_base_field` is 0 and up to
// base change when it is nonzero.
//
// # Safety
// `type_name` must be a NUL-terminated string and `out` writable.
enum LcStatus lc_nullity2_count(const char *type_name, int over_base_field, size_t *out);

// Runs a command-line invocation in process (`argv` excludes the program
// name) and returns its exit status. Standard output and error are
// returned as owned strings when the corresponding pointer is non-NULL.
//
// # Safety
// `argv` must point to `argc` NUL-terminated strings.
int lc_run(const char *const *argv, size_t argc, char **out_stdout, char **out_stderr);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* LOOPCLASS_H */
