#ifndef GINV_GINV_H
#define GINV_GINV_H

/*
 * C interface to the generalized-inverse library.
 *
 * Every function that can fail returns a ginv_status. On failure the message is
 * available from ginv_last_error() on the same thread until the next call.
 * Handles and strings returned through out-parameters are owned by the caller
 * and released with ginv_matrix_free / ginv_string_free.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GINV_API __declspec(dllexport)
#else
#define GINV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as the CLI exit codes for 0..4. */
typedef enum ginv_status {
  GINV_OK = 0,
  GINV_PROPERTY_FAILURE = 1,
  GINV_INCONSISTENT = 2,
  GINV_PRECONDITION = 3,
  GINV_RANK_AMBIGUITY = 4,
  GINV_INVALID_ARGUMENT = 5,
  GINV_PARSE_ERROR = 6,
  GINV_INTERNAL_ERROR = 7
} ginv_status;

typedef enum ginv_backend {
  GINV_BACKEND_EXACT = 0, /* arbitrary-precision complex rationals */
  GINV_BACKEND_F64 = 1    /* complex double */
} ginv_backend;

typedef struct ginv_matrix ginv_matrix;

typedef struct ginv_options {
  ginv_backend backend;
  double tol;        /* float backend only; <= 0 selects the default */
  uint64_t seed;     /* random corpus and sampling */
  size_t count;      /* random instances for ginv_verify without a matrix */
  size_t samples;    /* family / P-norm samples for ginv_solve */
  size_t threads;    /* 0 = hardware concurrency, 1 = sequential */
} ginv_options;

GINV_API const char* ginv_version(void);
GINV_API const char* ginv_last_error(void);
GINV_API const char* ginv_status_name(ginv_status status);

/* backend exact, default tol, seed 0, count 100, samples 100, threads 1 */
GINV_API void ginv_options_init(ginv_options* options);

/* Matrix files: {"rows", "cols", "backend": "exact"|"f64", "entries"}. */
GINV_API ginv_status ginv_matrix_parse(const char* json_text, ginv_matrix** out);
GINV_API ginv_status ginv_matrix_load(const char* path, ginv_matrix** out);
/* Real row-major entries as rational strings such as "1/12" or "-3"; the result is exact. */
GINV_API ginv_status ginv_matrix_from_strings(size_t rows, size_t cols,
                                              const char* const* entries, ginv_matrix** out);
GINV_API ginv_status ginv_matrix_to_json(const ginv_matrix* m, char** out);
GINV_API ginv_status ginv_matrix_save(const ginv_matrix* m, const char* path);
GINV_API ginv_status ginv_matrix_shape(const ginv_matrix* m, size_t* rows, size_t* cols);
GINV_API ginv_status ginv_matrix_backend(const ginv_matrix* m, ginv_backend* out);
GINV_API ginv_status ginv_matrix_convert(const ginv_matrix* m, ginv_backend backend,
                                         ginv_matrix** out);
/* Exact comparison for two exact matrices, tolerance-based otherwise. */
GINV_API ginv_status ginv_matrix_equal(const ginv_matrix* a, const ginv_matrix* b, double tol,
                                       int* out);
GINV_API void ginv_matrix_free(ginv_matrix* m);
GINV_API void ginv_string_free(char* s);

/*
 * kind: "mp" | "drazin" | "bd" | "bdd". l_span (whose columns span L) is
 * required for bd and bdd and ignored otherwise.
 */
GINV_API ginv_status ginv_compute(const char* kind, const ginv_matrix* a,
                                  const ginv_matrix* l_span, const ginv_options* options,
                                  ginv_matrix** out);

/*
 * suite: "thm31" | "thm32" | "thm4" | "thm5" | "lemmas" | "thm6" | "all".
 * With a and l_span the suite runs on that instance; with both NULL it runs on
 * the built-in fixtures plus options->count random instances. A candidate (only
 * with suite thm4) checks every characterization against candidate == BDD.
 * The JSON report is written to *report_json even when the result is
 * GINV_PROPERTY_FAILURE.
 */
GINV_API ginv_status ginv_verify(const char* suite, const ginv_matrix* a,
                                 const ginv_matrix* l_span, const ginv_matrix* candidate,
                                 const ginv_options* options, char** report_json);

/*
 * mode: "restricted" (A x + y = rhs, x in L, y in L^perp), "constrained"
 * (P_L A x = rhs, x in L, minimum P-norm solution) or "cramer" (the same
 * solution by determinant ratios). pnorm is an optional nonsingular P; NULL
 * uses a Jordan basis of P_L A P_L when one is found. The result JSON holds the
 * solution matrices and a verification report.
 */
GINV_API ginv_status ginv_solve(const char* mode, const ginv_matrix* a, const ginv_matrix* l_span,
                                const ginv_matrix* rhs, const ginv_matrix* pnorm,
                                const ginv_options* options, char** result_json);

#ifdef __cplusplus
}
#endif

#endif /* GINV_GINV_H */
