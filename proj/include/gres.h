/* C interface to the Gaussian robustness library. All functions are
 * thread-compatible; error text is kept per thread. */
#ifndef GRES_H
#define GRES_H

#include <stddef.h>
#include <stdint.h>

#if defined(GRES_BUILDING)
#define GRES_API __attribute__((visibility("default")))
#else
#define GRES_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    GRES_OK = 0,
    GRES_ERR_INVALID_ARGUMENT = 1,
    GRES_ERR_SINGULAR = 2,
    GRES_ERR_UNSUPPORTED = 3,
    GRES_ERR_ROOT_NOT_FOUND = 4,
    GRES_ERR_INTERNAL = 5
} gres_status;

typedef enum { GRES_NONCLASSICALITY = 0, GRES_ENTANGLEMENT = 1 } gres_resource;
typedef enum { GRES_METHOD_AUTO = 0, GRES_METHOD_ANALYTIC = 1, GRES_METHOD_NUMERIC = 2 } gres_method;
typedef enum {
    GRES_FAMILY_SINGLE_MODE = 0,
    GRES_FAMILY_TWO_MODE_STANDARD = 1,
    GRES_FAMILY_SYMMETRIC = 2,
    GRES_FAMILY_GHZ = 3
} gres_family;

/* Opaque covariance matrix, (x1..xn, p1..pn) ordering, vacuum = identity. */
typedef struct gres_cm gres_cm;

/* Message of the last failed call on this thread ("" if none). */
GRES_API const char* gres_last_error(void);
GRES_API const char* gres_version(void);

/* entries: row-major 2n x 2n. The matrix must be finite and symmetric; it may be unphysical. */
GRES_API gres_status gres_cm_create(int n, const double* entries, gres_cm** out);
GRES_API gres_status gres_cm_from_json(const char* json, gres_cm** out);
GRES_API gres_status gres_cm_two_mode_standard(double a, double b, double c1, double c2, gres_cm** out);
GRES_API gres_status gres_cm_symmetric(int n, double a, double b, double c1, double c2, gres_cm** out);
GRES_API void gres_cm_destroy(gres_cm* cm);

GRES_API int gres_cm_modes(const gres_cm* cm);
/* Copies 4n^2 entries row-major; len must be at least that. */
GRES_API gres_status gres_cm_get(const gres_cm* cm, double* out, size_t len);
/* Writes n values, descending. */
GRES_API gres_status gres_cm_symplectic_eigenvalues(const gres_cm* cm, double* out, size_t len);

typedef struct {
    int physical;
    double min_eigenvalue; /* of gamma + i Delta */
    int classical;         /* meaningful only when physical */
    double classical_margin;
    int separability_known; /* n = 2 (PPT is exact) or symmetric n-mode states */
    int separable;
} gres_classification;

GRES_API gres_status gres_classify(const gres_cm* cm, gres_classification* out);

/* Largest eigenvalue of sigma^{-1/2} rho sigma^{-1/2}; *exists = 0 when it is unbounded. */
GRES_API gres_status gres_lambda_upper(const gres_cm* rho, const gres_cm* sigma, double* value, int* exists);

typedef struct {
    gres_family family;
    int n;          /* symmetric and GHZ */
    double a, b, c; /* single-mode: [[a, c], [c, b]] */
    double c1, c2;  /* two-mode standard form and symmetric */
    double r, eta;  /* GHZ squeezing and thermal parameter */
} gres_family_params;

typedef struct {
    double lower;
    double upper;
    double gap;
    int converged;
    int conjecture_conditional;
    double numeric_lower; /* NaN when not computed */
    double numeric_upper;
    char lower_method[64];
    char upper_method[64];
} gres_bounds;

GRES_API gres_status gres_robustness(const gres_family_params* params, gres_resource resource, gres_method method,
                                     gres_bounds* out);
GRES_API gres_status gres_robustness_cm(const gres_cm* cm, gres_resource resource, gres_method method,
                                        gres_bounds* out);

/* Symmetric witness H_n(a_w, c_w1) (+) H_n(b_w, c_w2). */
typedef struct {
    int n;
    double a_w, b_w, c_w1, c_w2;
    int cutoff;
    int starts;
    uint64_t seed;
} gres_witness_request;

typedef struct {
    double y;         /* presqueezing that nullifies the kernel diagonal */
    double prefactor; /* sqrt|det beta(y)| */
    double m0;        /* max product mean divided by prefactor */
    double vacuum_overlap;
    int converged;
} gres_witness_report;

GRES_API gres_status gres_verify_witness(const gres_witness_request* req, gres_witness_report* out);

#ifdef __cplusplus
}
#endif

#endif
