#ifndef PUREBRAID_H
#define PUREBRAID_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum PbStatus {
  PB_STATUS_OK = 0,
  PB_STATUS_NULL_POINTER = 1,
  PB_STATUS_INVALID_UTF8 = 2,
  PB_STATUS_PARSE = 3,
  PB_STATUS_ALPHABET_MISMATCH = 4,
  PB_STATUS_INVALID_ARGUMENT = 5,
  PB_STATUS_COMPUTE = 6,
  PB_STATUS_PANIC = 7,
} PbStatus;

// A freely reduced word together with its alphabet.
typedef struct PbWord PbWord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread; empty after a success.
// The pointer stays valid until the next call into this library on the same thread.
const char *pb_last_error(void);

// Parses `text` over `alphabet` (`free:K`, `sigma:N` or `pure:N`).
//
// # Safety
// `text` and `alphabet` must be nul-terminated strings; `out` must be writable.
enum PbStatus pb_word_parse(const char *text, const char *alphabet, struct PbWord **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `word` must come from this library and not have been freed.
void pb_word_free(struct PbWord *word);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void pb_string_free(char *s);

// Writes the word in the textual syntax accepted by `pb_word_parse`
// (the identity prints as `1`).
//
// # Safety
// `word` must be a live handle; `out` must be writable.
enum PbStatus pb_word_to_string(const struct PbWord *word, char **out);

// Number of letters of the reduced word.
//
// # Safety
// `word` must be a live handle; `out` must be writable.
enum PbStatus pb_word_length(const struct PbWord *word, size_t *out);

// `a · b`. Both words must share an alphabet.
//
// # Safety
// `a` and `b` must be live handles; `out` must be writable.
enum PbStatus pb_word_multiply(const struct PbWord *a, const struct PbWord *b, struct PbWord **out);

// # Safety
// `a` must be a live handle; `out` must be writable.
enum PbStatus pb_word_invert(const struct PbWord *a, struct PbWord **out);

// Decides whether a σ-word or an A-word is the trivial braid.
//
// # Safety
// `word` must be a live handle; `out` must be writable.
enum PbStatus pb_braid_is_identity(const struct PbWord *word, bool *out);

// Applies `f_I: P_n → F_2` to an A-word over `pure:n`.
//
// # Safety
// `subset` must point to `subset_len` readable values; `word` must be a live
// handle; `out` must be writable.
enum PbStatus pb_apply_f(size_t n,
                         const size_t *subset,
                         size_t subset_len,
                         const struct PbWord *word,
                         struct PbWord **out);

// Whether the degree-one element with integer coordinates `coefficients`
// (order `a_12, a_13, …`) lies in the first resonance variety of `P_n`.
//
// # Safety
// `coefficients` must point to `len` readable values; `out` must be writable.
enum PbStatus pb_in_r1(size_t n, const int64_t *coefficients, size_t len, bool *out);

// Runs the verification checks matching `filter` (all when null) and writes the
// JSON report. `failed` receives the number of failing checks.
//
// # Safety
// `filter` must be null or a nul-terminated string; `json` and `failed` must be writable.
enum PbStatus pb_run_checks(const char *filter,
                            size_t n_max,
                            uint64_t seed,
                            char **json,
                            size_t *failed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PUREBRAID_H */
