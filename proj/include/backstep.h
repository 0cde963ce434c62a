/*
 * backstep — boundary control synthesis and simulation for two-component
 * coupled reaction-diffusion systems.
 *
 * C API of the shared library. All objects are opaque handles created and
 * destroyed through these functions; every fallible call returns a
 * bstp_status and leaves a human-readable message in thread-local storage
 * (bstp_last_error). Handles are not thread-safe individually, but
 * independent handles may be used from different threads.
 */

#ifndef BACKSTEP_H
#define BACKSTEP_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bstp_status {
    BSTP_OK = 0,
    BSTP_ERR_INVALID_ARGUMENT = 1,
    BSTP_ERR_PARSE = 2,
    BSTP_ERR_ITERATION_LIMIT = 3,
    BSTP_ERR_FAMILY_MISMATCH = 4,
    BSTP_ERR_GRID_MISMATCH = 5,
    BSTP_ERR_MISSING_KERNELS = 6,
    BSTP_ERR_NONPOSITIVE_NORM = 7,
    BSTP_ERR_COMPLEX_SPECTRUM = 8,
    BSTP_ERR_WRONG_SCENARIO = 9,
    BSTP_ERR_SINGULAR_SYSTEM = 10,
    BSTP_ERR_IO = 11,
    BSTP_ERR_VERIFICATION = 12,
    BSTP_ERR_INTERNAL = 13
} bstp_status;

typedef enum bstp_family {
    BSTP_KERNEL_CONTROL = 0,
    BSTP_KERNEL_INVERSE = 1,
    BSTP_KERNEL_OBSERVER_ANTICOLLOCATED = 2,
    BSTP_KERNEL_OBSERVER_COLLOCATED = 3
} bstp_family;

typedef enum bstp_setup {
    BSTP_SETUP_ANTICOLLOCATED = 0,
    BSTP_SETUP_COLLOCATED = 1
} bstp_setup;

/* library version string, e.g. "0.1.0" */
const char* bstp_version(void);

/* printable name of a status code */
const char* bstp_status_name(bstp_status status);

/* message of the most recent error on this thread ("" when none) */
const char* bstp_last_error(void);

/* ---------------------------------------------------------------- config */

typedef struct bstp_config bstp_config;

/* reference defaults: lambda1 = 20, lambda2 = 10, open-loop scenario,
 * nx = 200, kernel n = 256, dt = 1e-4, t_final = 2, tol = 1e-12 */
bstp_status bstp_config_create(bstp_config** out);

/* parse a `key = value` file; lambda1, lambda2 and scenario are required */
bstp_status bstp_config_load(const char* path, bstp_config** out);

/* set one key as it would appear in a config file */
bstp_status bstp_config_set(bstp_config* cfg, const char* key, const char* value);

/* canonical textual value of one key */
bstp_status bstp_config_get(const bstp_config* cfg, const char* key, char* buf, size_t buflen);

void bstp_config_free(bstp_config* cfg);

/* --------------------------------------------------------------- kernels */

typedef struct bstp_kernel bstp_kernel;

/* Solve one kernel family on an n-interval triangle grid by successive
 * approximation of the associated Goursat problems (tol/max_iter <= 0
 * select the defaults 1e-12 / 200). */
bstp_status bstp_kernel_solve(bstp_family family, double lambda1, double lambda2, int n,
                              double tol, int max_iter, bstp_kernel** out);

int bstp_kernel_resolution(const bstp_kernel* k);

/* component c (0 = uu/aa, 1 = uv/ab, 2 = vu/ba, 3 = vv/bb) at triangle node
 * (i, j), j <= i, in stored orientation */
bstp_status bstp_kernel_value(const bstp_kernel* k, int component, int i, int j, double* out);

/* Picard iteration metadata of pair 0 or 1 */
bstp_status bstp_kernel_iterations(const bstp_kernel* k, int pair, int* iterations,
                                   double* final_increment);

/* header x,y,Kuu,Kuv,Kvu,Kvv; one row per node, 17 significant digits */
bstp_status bstp_kernel_write_csv(const bstp_kernel* k, const char* path);

void bstp_kernel_free(bstp_kernel* k);

/* ----------------------------------------------------------------- gains */

typedef struct bstp_gains bstp_gains;

/* feedback row from a control kernel, injection gains from the matching
 * observer kernel */
bstp_status bstp_gains_extract(const bstp_kernel* k, bstp_setup setup, bstp_gains** out);

int bstp_gains_resolution(const bstp_gains* g);

/* feedback row K(1, y_j); component as in bstp_kernel_value */
bstp_status bstp_gains_feedback(const bstp_gains* g, int component, int j, double* out);

/* injection gains p1(x_i), p2(x_i); which = 1 or 2 */
bstp_status bstp_gains_injection(const bstp_gains* g, int which, int i, double* out);

void bstp_gains_free(bstp_gains* g);

/* ------------------------------------------------------------ simulation */

typedef struct bstp_trajectory bstp_trajectory;

/* Solve whatever kernels the configured scenario needs, then step the
 * closed (or open) loop from t = 0 to t_final. */
bstp_status bstp_simulate(const bstp_config* cfg, bstp_trajectory** out);

long bstp_trajectory_snapshots(const bstp_trajectory* t);
bstp_status bstp_trajectory_time(const bstp_trajectory* t, long k, double* out);

/* L2 norms at snapshot k: which = 0 plant state, 1 observer error */
bstp_status bstp_trajectory_norm(const bstp_trajectory* t, long k, int which, double* out);

/* plant (and observer, when present) samples at snapshot k, node j */
bstp_status bstp_trajectory_state(const bstp_trajectory* t, long k, int j, double* u, double* v,
                                  double* uhat, double* vhat);

bstp_status bstp_trajectory_write_snapshots_csv(const bstp_trajectory* t, const char* path);
bstp_status bstp_trajectory_write_norms_csv(const bstp_trajectory* t, const char* path);

void bstp_trajectory_free(bstp_trajectory* t);

/* -------------------------------------------------------------- analysis */

/* dominant open-loop growth rate sqrt(lambda1 lambda2) - (pi/2)^2 */
bstp_status bstp_modal_rate(double lambda1, double lambda2, double* out);

/* least-squares decay rate of ln(norm) over [t_start, t_end];
 * which as in bstp_trajectory_norm */
bstp_status bstp_fit_decay(const bstp_trajectory* t, int which, double t_start, double t_end,
                           double* rate, double* r_squared);

/* -------------------------------------------------------------- commands */

/* Write kernel surfaces and gain curves (kernels), trajectory CSVs
 * (simulate) or the verification report (verify) plus manifest.json into
 * out_dir. bstp_cmd_verify stores the number of failed checks in
 * n_failed and returns BSTP_ERR_VERIFICATION when any check fails. */
bstp_status bstp_cmd_kernels(const bstp_config* cfg, const char* out_dir);
bstp_status bstp_cmd_simulate(const bstp_config* cfg, const char* out_dir);
bstp_status bstp_cmd_verify(const bstp_config* cfg, const char* out_dir, int* n_failed);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* BACKSTEP_H */
