/* oaid - outcome-agnostic identification engine, C interface.
 *
 * All functions return a status code: OAID_OK on success, OAID_VERIFY_FAIL
 * when an exact verification check fails, and a negative code on error.
 * Output strings are heap-allocated and must be released with
 * oaid_string_free; output handles with the matching *_free function.
 * Passing a null required pointer yields OAID_EINVAL. All operations are
 * deterministic: identical inputs (including seed and thread count) produce
 * identical outputs, and results are independent of the thread count.
 */
#ifndef OAID_H
#define OAID_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define OAID_OK 0
#define OAID_VERIFY_FAIL 1
#define OAID_EINVAL (-1)   /* bad argument or unsupported size */
#define OAID_EPARSE (-2)   /* malformed JSON or schema violation */
#define OAID_EIO (-3)      /* file read/write failure */
#define OAID_ECAP (-4)     /* candidate or subset cap exceeded */
#define OAID_EINTERNAL (-5)

/* Library version as "major.minor.patch". Static storage; do not free. */
const char* oaid_version(void);

/* Human-readable description of a status code. Static storage. */
const char* oaid_status_message(int status);

/* Releases a string returned through a char** out parameter. */
void oaid_string_free(char* s);

/* A selection model: the admissible set of response types, held as the
 * Z x |G| assignment matrix (entry = treatment chosen by group g at
 * instrument value z). */
typedef struct oaid_model oaid_model;

/* An enumeration result: selection models that are maximal for some
 * identified contrast, each with its identified collections. */
typedef struct oaid_catalog oaid_catalog;

/* Model JSON schema:
 *   {"treatments": T, "instruments": Z, "rows": [[t, ...], ...]}
 * rows[z][g] = treatment taken by group g at instrument value z. */
int oaid_model_from_json(const char* json_text, oaid_model** out);
int oaid_model_to_json(const oaid_model* model, char** out_json);
void oaid_model_free(oaid_model* model);

typedef struct oaid_enumerate_options {
  int treatments;   /* 2..4 */
  int instruments;  /* 2..4 */
  /* "sequential" (reproduces the published organization; default when null)
   * or "joint" (full relabeling group, strictest merging). */
  const char* dedup;
  int threads;              /* <= 0 means 1 */
  uint64_t candidate_cap;   /* 0 means default (1 << 28) */
  const char* checkpoint_path; /* optional: write scan checkpoints here */
  uint64_t checkpoint_every;   /* candidates between checkpoints; 0 default */
  const char* resume_path;     /* optional: resume scan from this checkpoint */
} oaid_enumerate_options;

/* Enumerates every outcome-agnostic identification result for the given
 * support sizes: grid search over contrast weight vectors, redundancy
 * pruning, and organization of survivors into a catalog of maximal
 * selection models with their identified collections. */
int oaid_enumerate(const oaid_enumerate_options* options, oaid_catalog** out);

int oaid_catalog_from_json(const char* json_text, oaid_catalog** out);
int oaid_catalog_to_json(const oaid_catalog* catalog, char** out_json);
void oaid_catalog_free(oaid_catalog* catalog);

int oaid_catalog_counts(const oaid_catalog* catalog, uint64_t* out_models,
                        uint64_t* out_collections);

/* Renders a catalog. format: "text", "latex", or "json". */
int oaid_catalog_render(const oaid_catalog* catalog, const char* format,
                        char** out_text);

/* All identified collections of one model for the ordered treatment pair
 * (t_prime, t), as a JSON array of {t_prime, t, alpha_t_prime, alpha_t, c}.
 * Weights are exact rationals rendered as strings. */
int oaid_model_collections(const oaid_model* model, int t_prime, int t,
                           char** out_json);

/* Renders the identified collections of one ordered pair together with
 * their estimand formulas. format as in oaid_catalog_render. */
int oaid_check_pair(const oaid_model* model, int t_prime, int t,
                    const char* format, char** out_text);

/* Same, but over every ordered treatment pair (t_prime > t) of the model. */
int oaid_model_catalog(const oaid_model* model, const char* format,
                       char** out_text);

/* Witness weights for one contrast: JSON {"identified": bool, "alpha":
 * [...] or null}. alpha satisfies alpha' A^[t] = c' when identified. */
int oaid_alpha_for_c(const oaid_model* model, int t, const int* c,
                     size_t c_len, char** out_json);

/* Exact verification of every collection in a catalog: for
 * draws_per_collection seeded rational populations per collection, the
 * weighted moment ratios must equal the target conditional means and the
 * denominators the complier mass, all as exact rationals. Also checks the
 * structural invariants (row-space cap on the number of identified
 * contrasts; zero-sum weights in the presence of an always-taker group).
 * Returns OAID_OK when everything holds, OAID_VERIFY_FAIL otherwise; the
 * report lists per-entry results either way. */
int oaid_verify_catalog(const oaid_catalog* catalog,
                        uint64_t draws_per_collection, uint64_t seed,
                        char** out_report_json);

/* Non-identification witness: two populations with identical observable
 * moments whose target means differ, proving c is not identified for t.
 * JSON {"identified": true} when no witness exists (c is in the row
 * space), else {"identified": false, "first": ..., "second": ...,
 * "mu_first": "p/q", "mu_second": "p/q"}. */
int oaid_witness(const oaid_model* model, int t, const int* c, size_t c_len,
                 uint64_t seed, char** out_json);

/* Determinant spectrum D_n of n x n 0/1 matrices (brute force for n <= 4,
 * published values for n in {5, 6}) and the derived coefficient set C_n of
 * candidate weight values. JSON {"n", "determinants": [int...],
 * "coefficients": ["p/q"...]}. */
int oaid_spectrum(int n, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* OAID_H */
