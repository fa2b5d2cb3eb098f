/*
 * projcurv: total absolute curvature of smooth complex projective
 * hypersurfaces (plane curves in CP^2, surfaces in CP^3), with the
 * Fubini-Study metric normalized to holomorphic sectional curvature 4.
 *
 * C interface of the shared library. All functions return a status code;
 * results travel through out-parameters. Returned strings are owned by the
 * caller and released with projcurv_string_free. Handles are opaque and
 * released with their matching _free function. On failure, a thread-local
 * message is available via projcurv_last_error_message.
 */

#ifndef PROJCURV_H
#define PROJCURV_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PROJCURV_API __declspec(dllexport)
#else
#define PROJCURV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum projcurv_status {
  PROJCURV_OK = 0,
  PROJCURV_ERR_INVALID_ARGUMENT = 1,
  PROJCURV_ERR_PARSE = 2,
  PROJCURV_ERR_DEGENERATE_FIBER = 3,
  PROJCURV_ERR_SINGULAR_POINT = 4,
  PROJCURV_ERR_SPECTRUM_STRUCTURE = 5,
  PROJCURV_ERR_BRANCH_CONTINUATION = 6,
  PROJCURV_ERR_DOMAIN = 7,
  PROJCURV_ERR_GAP = 8,
  PROJCURV_ERR_INVALID_BETTI = 9,
  PROJCURV_ERR_UNSUPPORTED = 10,
  PROJCURV_ERR_NUMERICAL = 11,
  PROJCURV_ERR_INTERNAL = 12
} projcurv_status;

typedef enum projcurv_method {
  PROJCURV_METHOD_AUTO = 0,
  PROJCURV_METHOD_CURVE_CLOSED_FORM = 1,
  PROJCURV_METHOD_HYPERSURFACE_RADIAL = 2,
  PROJCURV_METHOD_SPHERE_LIFT = 3
} projcurv_method;

/* opaque homogeneous polynomial over C */
typedef struct projcurv_poly projcurv_poly;

typedef struct projcurv_run_options {
  long long samples;   /* Monte Carlo base samples */
  uint64_t seed;       /* recorded in reports; same seed => same numbers */
  int threads;         /* 0 = machine parallelism */
  int deterministic;   /* 1 = fixed-order compensated reduction (default) */
} projcurv_run_options;

typedef struct projcurv_estimate {
  double value;
  double std_error;
  long long n_samples;
  long long n_rejected;
  uint64_t seed;
  int rejection_warning; /* rejected fraction above 1% */
  int median_of_means;   /* heavy-tail fallback engaged */
  int rotated;           /* a unitary pre-rotation was applied */
} projcurv_estimate;

PROJCURV_API const char* projcurv_version(void);
PROJCURV_API const char* projcurv_status_name(projcurv_status status);
PROJCURV_API const char* projcurv_last_error_message(void);
PROJCURV_API void projcurv_string_free(char* text);
PROJCURV_API void projcurv_run_options_init(projcurv_run_options* options);

/* ---- polynomials ---- */

/* "z0^2 + z1^2 + z2^2" with optional complex coefficients "(a+bi)*z0^1*z1^2";
 * num_vars < 0 infers from the largest variable index */
PROJCURV_API projcurv_status projcurv_poly_parse_text(const char* text, int num_vars,
                                                      projcurv_poly** out);

/* {"num_vars":3,"degree":2,"terms":[{"exponents":[2,0,0],"re":1.0,"im":0.0},...]} */
PROJCURV_API projcurv_status projcurv_poly_parse_json(const char* json,
                                                      projcurv_poly** out);

PROJCURV_API projcurv_status projcurv_poly_to_json(const projcurv_poly* poly, char** out);
PROJCURV_API void projcurv_poly_free(projcurv_poly* poly);
PROJCURV_API int projcurv_poly_num_vars(const projcurv_poly* poly);
PROJCURV_API int projcurv_poly_degree(const projcurv_poly* poly);

/* z interleaved as re0, im0, re1, im1, ...; length 2 * num_vars */
PROJCURV_API projcurv_status projcurv_poly_evaluate(const projcurv_poly* poly,
                                                    const double* z, int z_len,
                                                    double* out_re, double* out_im);

/* ---- estimators ---- */

PROJCURV_API projcurv_status projcurv_total_curvature(const projcurv_poly* poly,
                                                      projcurv_method method,
                                                      const projcurv_run_options* options,
                                                      projcurv_estimate* out);

PROJCURV_API projcurv_status projcurv_area(const projcurv_poly* poly,
                                           const projcurv_run_options* options,
                                           projcurv_estimate* out);

PROJCURV_API projcurv_status projcurv_gauss_bonnet(const projcurv_poly* poly,
                                                   const projcurv_run_options* options,
                                                   projcurv_estimate* out);

PROJCURV_API projcurv_status projcurv_average_curvature(const projcurv_poly* poly,
                                                        const projcurv_run_options* options,
                                                        projcurv_estimate* out);

/* ---- shape-operator spectra ---- */

/* Spectrum at a random on-variety point (point == NULL) or at a caller point
 * given interleaved re/im homogeneous coordinates. eigenvalues needs room for
 * 2m+1 entries, kappas for m. */
PROJCURV_API projcurv_status projcurv_spectrum(const projcurv_poly* poly,
                                               const double* point, int point_len,
                                               uint64_t seed, double* eigenvalues,
                                               int eigenvalues_cap, int* eigenvalues_len,
                                               double* kappas, int kappas_cap,
                                               int* kappas_len, double* pairing_residual,
                                               double* fiber_residual);

/* ---- topology ---- */

/* Betti numbers of a smooth degree-d hypersurface of complex dimension m
 * (m = 1 or 2); dims needs room for 2m+1 entries */
PROJCURV_API projcurv_status projcurv_hypersurface_betti(int degree, int complex_dim,
                                                         long long* dims, int dims_cap,
                                                         int* dims_len);

/* Betti numbers of the circle-bundle lift; out needs room for dims_len + 1 */
PROJCURV_API projcurv_status projcurv_gysin_transfer(const long long* dims, int dims_len,
                                                     int complex_dim, long long* out,
                                                     int out_cap, int* out_len);

PROJCURV_API projcurv_status projcurv_degree_interval(int degree, long long* lower,
                                                      long long* upper);

/* PROJCURV_ERR_GAP when the value falls strictly between two degree
 * intervals, PROJCURV_ERR_DOMAIN for total < 2 */
PROJCURV_API projcurv_status projcurv_classify_degree(double total_curvature, int* degree);

PROJCURV_API projcurv_status projcurv_degree_average_curvature(int degree, double* out);

/* ---- JSON reports (schema_version 1) ---- */

PROJCURV_API projcurv_status projcurv_total_report_json(const projcurv_poly* poly,
                                                        projcurv_method method,
                                                        const projcurv_run_options* options,
                                                        char** out);

PROJCURV_API projcurv_status projcurv_area_report_json(const projcurv_poly* poly,
                                                       const projcurv_run_options* options,
                                                       char** out);

PROJCURV_API projcurv_status projcurv_gauss_bonnet_report_json(
    const projcurv_poly* poly, const projcurv_run_options* options, char** out);

PROJCURV_API projcurv_status projcurv_spectrum_report_json(const projcurv_poly* poly,
                                                           const double* point,
                                                           int point_len, uint64_t seed,
                                                           char** out);

/* has_total == 0 emits the degree data without inequality checks */
PROJCURV_API projcurv_status projcurv_bounds_report_json(int degree, int complex_dim,
                                                         int has_total, double total,
                                                         char** out);

PROJCURV_API projcurv_status projcurv_classify_report_json(double total_curvature,
                                                           char** out);

/* ---- verification ---- */

/* Runs the acceptance suite ("quick" or "full"), streaming one line per
 * criterion through emit_line when non-NULL. n_failed receives the number of
 * failed criteria; report receives a JSON summary when non-NULL. */
typedef void (*projcurv_line_callback)(const char* line, void* user_data);

PROJCURV_API projcurv_status projcurv_verify(const char* suite,
                                             projcurv_line_callback emit_line,
                                             void* user_data, int* n_failed,
                                             char** report);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PROJCURV_H */
