/* mobcone C API: opaque handles plus error codes over the C++ core.
 *
 * Every function returns a mobcone_status; outputs go through pointers.
 * On failure mobcone_last_error() returns a thread-local diagnostic.
 * Handles are created by *_create / *_run functions and released by the
 * matching *_destroy; destroy functions accept NULL.
 *
 * Infinite values (mu+ / mu- = +inf) are returned as IEEE +infinity.
 * Cones constructible over this API: "gamma-k", "neg-dual-gamma-k"
 * (integer parameter k), "circular" (real parameter c), "extremal-largest",
 * "extremal-smallest" (real parameter mu), and "ordered-linear" (weights
 * array). Gauge cones with arbitrary defining functions are C++-only.
 */
#ifndef MOBCONE_H
#define MOBCONE_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mobcone_status {
    MOBCONE_OK = 0,
    MOBCONE_ERR_NULL = 1,       /* required pointer argument was NULL */
    MOBCONE_ERR_INVALID = 2,    /* bad parameter or domain violation */
    MOBCONE_ERR_NUMERICAL = 3,  /* a numerical routine failed to converge */
    MOBCONE_ERR_UNSUPPORTED = 4 /* valid request outside the supported range */
} mobcone_status;

const char* mobcone_version(void);
const char* mobcone_last_error(void);

/* Process-wide tolerance profile; "key=value,key=value" with keys
 * fd_gradient_scale, fd_hessian_scale, eig_offdiag_rel, root_rel_tol,
 * ode_rtol, ode_atol, ode_event_time_tol, boundary_tol, mu_bisect_cap.
 * Not thread-safe against concurrent computations; set once at startup. */
mobcone_status mobcone_set_tolerances(const char* spec);

/* ---- cones ---- */

typedef struct mobcone_cone mobcone_cone;

mobcone_status mobcone_cone_create(const char* family, int n, int k, double param,
                                   const double* weights, int nweights, mobcone_cone** out);
void mobcone_cone_destroy(mobcone_cone* cone);

mobcone_status mobcone_cone_describe(const mobcone_cone* cone, char* buf, int bufsize);

/* region: +1 interior, 0 boundary, -1 exterior */
mobcone_status mobcone_cone_contains(const mobcone_cone* cone, const double* lambda, int n,
                                     double tol, int* region, double* margin);

mobcone_status mobcone_cone_mu(const mobcone_cone* cone, double* mu_plus, double* mu_minus);

/* closed-form-free route, for cross-checks */
mobcone_status mobcone_cone_mu_bisection(const mobcone_cone* cone, double* mu_plus,
                                         double* mu_minus);

mobcone_status mobcone_cone_lambda_star(const mobcone_cone* cone, int* star_region,
                                        double* star_margin, int* neg_star_region,
                                        double* neg_star_margin);

mobcone_status mobcone_cone_negation_dual(const mobcone_cone* cone, mobcone_cone** out);

/* ---- radial profiles and the annulus problem ---- */

typedef struct mobcone_profile mobcone_profile;

/* cases: buffer receiving a string such as "abe" (the admissible smooth
 * families keyed on mu+/mu-) */
mobcone_status mobcone_radial_classify(const mobcone_cone* cone, char* cases, int bufsize);

/* regularity: 0 smooth, 1 lipschitz-kink, 2 unsolvable; *profile receives
 * NULL when unsolvable */
mobcone_status mobcone_radial_dirichlet(const mobcone_cone* cone, double a, double b, double alpha,
                                        double beta, int* solvable, int* regularity, char* clause,
                                        int clause_size, mobcone_profile** profile);

void mobcone_profile_destroy(mobcone_profile* profile);
mobcone_status mobcone_profile_describe(const mobcone_profile* profile, char* buf, int bufsize);
mobcone_status mobcone_profile_domain(const mobcone_profile* profile, double* r_lo, double* r_hi,
                                      double* kink_r);
mobcone_status mobcone_profile_eval(const mobcone_profile* profile, double r, double* v,
                                    double* dv);
mobcone_status mobcone_profile_eigen(const mobcone_profile* profile, double r, int n,
                                     double* lambda_out);

/* ---- phase-plane runs ---- */

typedef struct mobcone_trajectory mobcone_trajectory;

/* global: 1 when the clause predicate says the solution is entire */
mobcone_status mobcone_ode_predict(double gamma, double v0, double w0, int* global);

mobcone_status mobcone_ode_run(double gamma, double v0, double w0, double window, double threshold,
                               mobcone_trajectory** out);
void mobcone_trajectory_destroy(mobcone_trajectory* traj);
mobcone_status mobcone_trajectory_size(const mobcone_trajectory* traj, int* size);
mobcone_status mobcone_trajectory_get(const mobcone_trajectory* traj, int i, double* t,
                                      double* phi, double* w, double* integral);
mobcone_status mobcone_trajectory_summary(const mobcone_trajectory* traj, double* drift,
                                          int* blowup, double* blowup_time);

/* ---- gradient blow-up families ---- */

typedef struct mobcone_blowup_report {
    double c_j;
    double c_n;
    double omega_j;
    double bound;                  /* e^{8/C_j} * omega_j */
    double max_identity_residual;
    double sup_deviation;
    double min_grad;
    double max_field_value;
    int in_cone;
} mobcone_blowup_report;

/* kind: "neg-sigma-half", "neg-general", "pos-general" */
mobcone_status mobcone_blowup_verify(const char* kind, int n, int j, int samples,
                                     mobcone_blowup_report* report);

/* ---- structural checks of symmetric functions ---- */

typedef struct mobcone_report mobcone_report;

/* family: "sigma-k" / "sigma-k-root" (uses k), "weitzenbock" (uses k as p),
 * "lambda-sum" (k = first index, param = count above it), "circular"
 * (param = c), "ordered-linear" (weights), or "gauge:<cone-family>"
 * (checks the gauge function of the cone described by the remaining
 * arguments, e.g. "gauge:circular") */
mobcone_status mobcone_symfun_check(const char* family, int n, int k, double param,
                                    const double* weights, int nweights, int samples,
                                    unsigned long long seed, mobcone_report** out);
void mobcone_report_destroy(mobcone_report* report);
mobcone_status mobcone_report_size(const mobcone_report* report, int* size);
/* pass: -1 not applicable, 0 fail, 1 pass */
mobcone_status mobcone_report_item(const mobcone_report* report, int i, char* name, int name_size,
                                   int* pass, double* worst, char* note, int note_size);

/* ---- bubble identity and the eigenvalue dictionary ---- */

mobcone_status mobcone_verify_bubble(int n, double a, double b, int trials,
                                     unsigned long long seed, double* max_dev_analytic,
                                     double* max_dev_fd);

/* example: "ricci-eigenvalue" (uses i), "ricci-eigenvalue-sum" (i..j),
 * "weitzenbock" (p) */
mobcone_status mobcone_ricci_constants(const char* example, int n, int i, int j, int p, double a,
                                       double b, double* value, double* required_ratio_sq,
                                       int* constraint_ok, int* pass);

mobcone_status mobcone_ricci_roundtrip(int n, int samples, unsigned long long seed,
                                       double* max_err);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MOBCONE_H */
