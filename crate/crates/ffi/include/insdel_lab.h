#ifndef INSDEL_LAB_H
#define INSDEL_LAB_H

/* Generated by cbindgen from insdel-lab-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible call.
typedef enum IldcStatus {
  ILDC_STATUS_OK = 0,
  // A pointer argument was null or a parameter failed validation.
  ILDC_STATUS_INVALID_ARGUMENT = 1,
  // Text input (bit string, polynomial, config) failed to parse.
  ILDC_STATUS_PARSE_ERROR = 2,
  // The request exceeds a brute-force size limit.
  ILDC_STATUS_SIZE_LIMIT = 3,
  // Internal failure; see the last error message.
  ILDC_STATUS_INTERNAL = 4,
} IldcStatus;

// Opaque handle to a samplable deletion channel.
typedef struct IldcChannel IldcChannel;

// Opaque handle to a spaced Hadamard code.
typedef struct IldcSpacedCode IldcSpacedCode;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static string; do not free.
const char *ildc_version(void);

// Message describing the most recent failure on this thread. The pointer is
// valid until the next failing call on the same thread; do not free.
const char *ildc_last_error_message(void);

// Release a string returned by this library.
//
// # Safety
// `s` must be null or a pointer previously returned through an out-string of
// this library, not yet freed.
void ildc_string_free(char *s);

// Insertion/deletion edit distance between two bit strings.
//
// # Safety
// `a` and `b` must be valid NUL-terminated strings; `out` must be writable.
enum IldcStatus ildc_edit_distance(const char *a, const char *b, uint64_t *out);

// Create a spaced Hadamard code for message length `n` and spacing `t`
// (codeword length `2^(t n)`).
//
// # Safety
// `out` must be a writable pointer slot.
enum IldcStatus ildc_spaced_code_new(size_t n, size_t t, struct IldcSpacedCode **out);

// # Safety
// `code` must be null or a handle from [`ildc_spaced_code_new`], not yet
// freed.
void ildc_spaced_code_free(struct IldcSpacedCode *code);

// Codeword length of the code.
//
// # Safety
// `code` must be a live handle.
size_t ildc_spaced_code_len(const struct IldcSpacedCode *code);

// Encode a message; the codeword is returned as a fresh bit string.
//
// # Safety
// `code` must be a live handle, `x` a valid string, `out` writable.
enum IldcStatus ildc_spaced_code_encode(const struct IldcSpacedCode *code,
                                        const char *x,
                                        char **out);

// Decode message bit `i` (0-based) from a received word with the two-query
// decoder, using `seed` for the address draw. The decoded bit lands in
// `out` as 0 or 1.
//
// # Safety
// `code` must be a live handle, `y` a valid string, `out` writable.
enum IldcStatus ildc_spaced_code_decode(const struct IldcSpacedCode *code,
                                        const char *y,
                                        size_t i,
                                        uint64_t seed,
                                        uint8_t *out);

// The two-step deletion process over `[2m]`: an i.i.d. layer at a rate
// uniform on `[delta/8, delta/4]`, then a random prefix deletion.
//
// # Safety
// `out` must be a writable pointer slot.
enum IldcStatus ildc_channel_two_query(size_t m, double delta, struct IldcChannel **out);

// The oblivious layered process with dyadic block sizes.
//
// # Safety
// `out` must be a writable pointer slot.
enum IldcStatus ildc_channel_oblivious(size_t m, double delta, struct IldcChannel **out);

// Type-1 errors: delete the first `e` bits and pad at the end.
//
// # Safety
// `out` must be a writable pointer slot.
enum IldcStatus ildc_channel_type1(size_t m, size_t e, struct IldcChannel **out);

// Plain i.i.d. deletions at rate `alpha` with the length restored by
// padding.
//
// # Safety
// `out` must be a writable pointer slot.
enum IldcStatus ildc_channel_iid(size_t n, double alpha, struct IldcChannel **out);

// # Safety
// `channel` must be null or a live channel handle, not yet freed.
void ildc_channel_free(struct IldcChannel *channel);

// Corrupt a word: augment with uniform padding, sample the deletion process
// at `seed`, truncate. The corrupted word goes to `out_word`; the number of
// deleted positions to `out_deletions` (pass null to skip either).
//
// # Safety
// `channel` must be a live handle and `word` a valid string; non-null out
// pointers must be writable.
enum IldcStatus ildc_channel_corrupt(const struct IldcChannel *channel,
                                     const char *word,
                                     uint64_t seed,
                                     char **out_word,
                                     uint64_t *out_deletions);

// Analyze a quadratic polynomial given as text (e.g. "x1*x2 + x3 + 1"):
// symplectic rank to `out_rank`, exact zero probability as a "num/den"
// string to `out_zero_probability`.
//
// # Safety
// `text` must be a valid string; non-null out pointers must be writable.
enum IldcStatus ildc_quadratic_analyze(const char *text,
                                       uint32_t *out_rank,
                                       char **out_zero_probability);

// Run an experiment from a JSON config (the same schema the CLI accepts).
// The human-readable summary and the CSV content come back as strings; the
// status reports only transport errors, so inspect the summary for
// assertion outcomes, or `out_all_passed`.
//
// # Safety
// `config_json` must be a valid string; non-null out pointers writable.
enum IldcStatus ildc_experiment_run(const char *config_json,
                                    char **out_summary,
                                    char **out_csv,
                                    uint8_t *out_all_passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INSDEL_LAB_H */
