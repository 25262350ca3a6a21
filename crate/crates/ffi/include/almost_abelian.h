#ifndef ALMOST_ABELIAN_H
#define ALMOST_ABELIAN_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum AaStatus {
  AA_STATUS_OK = 0,
  AA_STATUS_NULL_POINTER = 1,
  AA_STATUS_INVALID_UTF8 = 2,
  AA_STATUS_PARSE = 3,
  AA_STATUS_PRECONDITION = 4,
  AA_STATUS_UNSUPPORTED = 5,
  AA_STATUS_INADMISSIBLE = 6,
  AA_STATUS_INTERNAL = 7,
  AA_STATUS_PANIC = 8,
} AaStatus;

typedef enum AaStructure {
  AA_STRUCTURE_COMPLEX = 0,
  AA_STRUCTURE_SYMPLECTIC = 1,
} AaStructure;

// Square rational matrix A defining g_A.
typedef struct AaMatrix AaMatrix;

// Nilpotent Jordan type.
typedef struct AaTuple AaTuple;

// Explicit complex or symplectic structure on a nilpotent g_A.
typedef struct AaWitness AaWitness;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. Valid until the next call.
const char *aa_last_error(void);

// # Safety
// `s` must be NULL or a string returned by this library.
void aa_string_free(char *s);

// Parses "n1,..,nk;p1,..,pk;t" or "m".
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum AaStatus aa_tuple_parse(const char *text, struct AaTuple **out);

// # Safety
// `t` must be NULL or a handle from [`aa_tuple_parse`].
void aa_tuple_free(struct AaTuple *t);

// # Safety
// `t` must be a valid handle; `out` must be writable.
enum AaStatus aa_tuple_format(const struct AaTuple *t, char **out);

// Sum of block sizes; 0 for a NULL handle.
//
// # Safety
// `t` must be NULL or a valid handle.
size_t aa_tuple_total(const struct AaTuple *t);

// # Safety
// `t` must be a valid handle; `out` must be writable.
enum AaStatus aa_tuple_is_admissible(const struct AaTuple *t, enum AaStructure s, bool *out);

// Reads {"rows": [[..], ..]} with integer or "p/q" entries.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum AaStatus aa_matrix_from_json(const char *json, struct AaMatrix **out);

// # Safety
// `m` must be NULL or a handle from [`aa_matrix_from_json`].
void aa_matrix_free(struct AaMatrix *m);

// Decision for g_A as JSON {admissible, case, distinguished, failures, structure, dimension}.
//
// # Safety
// `m` must be a valid handle; `out` must be writable.
enum AaStatus aa_decide_matrix_json(const struct AaMatrix *m, enum AaStructure s, char **out);

// # Safety
// `t` must be a valid handle; `out` must be writable.
enum AaStatus aa_decide_tuple_json(const struct AaTuple *t, enum AaStructure s, char **out);

// All nilpotent g_A of even dimension `dim` as JSON
// {dimension, tuples: [{tuple, complex, symplectic}, ..]}.
//
// # Safety
// `out` must be writable.
enum AaStatus aa_enumerate_json(size_t dim, char **out);

// Builds the explicit structure for an admissible tuple; `Inadmissible` otherwise.
//
// # Safety
// `t` must be a valid handle; `out` must be writable.
enum AaStatus aa_witness_build(const struct AaTuple *t, enum AaStructure s, struct AaWitness **out);

// Re-checks integrability and J² = −1, or closedness and non-degeneracy.
//
// # Safety
// `w` must be a valid handle; `out` must be writable.
enum AaStatus aa_witness_verify(const struct AaWitness *w, bool *out);

// # Safety
// `w` must be a valid handle; `out` must be writable.
enum AaStatus aa_witness_to_json(const struct AaWitness *w, char **out);

// # Safety
// `w` must be NULL or a handle from [`aa_witness_build`].
void aa_witness_free(struct AaWitness *w);

// Searches g_A for a symplectic form directly; JSON {verdict, exact, ..}.
//
// # Safety
// `m` must be a valid handle; `out` must be writable.
enum AaStatus aa_oracle_json(const struct AaMatrix *m, uint64_t seed, size_t trials, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ALMOST_ABELIAN_H */
