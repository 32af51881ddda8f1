#ifndef QCBENCH_H
#define QCBENCH_H

/*
 * qcbench C API: Riemannian quasiconvexity testbench.
 *
 * All functions return qcb_status (QCB_OK on success) unless documented
 * otherwise; on failure qcb_last_error() returns a thread-local message.
 * Handles are opaque and must be released with the matching *_destroy.
 *
 * Geometry buffers use the ambient representation of the model manifolds:
 * length n for flat R^n, length n+1 for the unit sphere S^n and for the
 * hyperboloid model of H^n. qcb_manifold_ambient_dimension() reports the
 * required length.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qcb_status {
  QCB_OK = 0,
  QCB_E_INVALID_ARGUMENT = 1,
  QCB_E_GEOMETRY = 2, /* injectivity radius, antipodal points, base mismatch */
  QCB_E_PARSE = 3,
  QCB_E_UNKNOWN_INTEGRAND = 4,
  QCB_E_IO = 5,
  QCB_E_NON_FINITE = 6,
  QCB_E_INTERNAL = 7
} qcb_status;

typedef enum qcb_manifold_kind {
  QCB_MANIFOLD_FLAT = 0,
  QCB_MANIFOLD_SPHERE = 1,
  QCB_MANIFOLD_HYPERBOLIC = 2
} qcb_manifold_kind;

typedef struct qcb_manifold qcb_manifold;
typedef struct qcb_experiment qcb_experiment;
typedef struct qcb_run_result qcb_run_result;

const char* qcb_version(void);

/* Message describing the most recent failure on this thread. */
const char* qcb_last_error(void);

/* ---- geometry ---------------------------------------------------------- */

qcb_status qcb_manifold_create(qcb_manifold_kind kind, int dimension,
                               qcb_manifold** out);
void qcb_manifold_destroy(qcb_manifold* m);

int qcb_manifold_dimension(const qcb_manifold* m);
int qcb_manifold_ambient_dimension(const qcb_manifold* m);
double qcb_manifold_injectivity_radius(const qcb_manifold* m);

/* Canonical base point (zero vector / first ambient axis). */
qcb_status qcb_manifold_origin(const qcb_manifold* m, double* coords);

/* out = exp_x(v); x, v, out have ambient length. */
qcb_status qcb_exp(const qcb_manifold* m, const double* x, const double* v,
                   double* out);

/* out = exp_x^{-1}(y). */
qcb_status qcb_log(const qcb_manifold* m, const double* x, const double* y,
                   double* out);

/* out = d exp_x[v](w), a tangent vector at exp_x(v). */
qcb_status qcb_dexp(const qcb_manifold* m, const double* x, const double* v,
                    const double* w, double* out);

qcb_status qcb_distance(const qcb_manifold* m, const double* x,
                        const double* y, double* out);

/* Volume Jacobian J(y) of normal coordinates at x0 (y is a tangent at x0). */
qcb_status qcb_volume_jacobian(const qcb_manifold* m, const double* x0,
                               const double* y, double* out);

/* ---- experiments ------------------------------------------------------- */

qcb_status qcb_experiment_load(const char* config_path, qcb_experiment** out);
qcb_status qcb_experiment_load_string(const char* config_text,
                                      const char* name, qcb_experiment** out);
void qcb_experiment_destroy(qcb_experiment* e);

qcb_status qcb_experiment_set_seed(qcb_experiment* e, uint64_t seed);
qcb_status qcb_experiment_set_quad_order(qcb_experiment* e, int order);
qcb_status qcb_experiment_set_out_dir(qcb_experiment* e, const char* dir);

/* subcommand: "check" | "falsify" | "lsc" | "euclid-compare" */
qcb_status qcb_experiment_run(qcb_experiment* e, const char* subcommand,
                              qcb_run_result** out);

/* 0 = ConsistentWithQC / SEMICONTINUITY_OK, 2 = violation / failure. */
int qcb_result_exit_code(const qcb_run_result* r);
const char* qcb_result_status(const qcb_run_result* r);

/* Run record as JSON; owned by the result handle. */
const char* qcb_result_record_json(const qcb_run_result* r);

/* Primary CSV report contents (deficit rows or LSC rows). */
const char* qcb_result_csv(const qcb_run_result* r);

/* Number of report files and access to their names/contents. */
size_t qcb_result_file_count(const qcb_run_result* r);
const char* qcb_result_file_name(const qcb_run_result* r, size_t index);
const char* qcb_result_file_contents(const qcb_run_result* r, size_t index);

/* Write all report files into the experiment's output directory. */
qcb_status qcb_result_write_reports(const qcb_run_result* r);

void qcb_result_destroy(qcb_run_result* r);

#ifdef __cplusplus
}
#endif

#endif /* QCBENCH_H */
