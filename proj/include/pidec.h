/* Copyright (c) 2026 the pidec developers.
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface of the pidec library: approximate-control solvers for the 1D
 * heat equation with Volterra memory, fully discrete (piecewise-linear
 * finite elements in space, backward Euler in time, left-rectangle memory
 * quadrature).
 *
 * All objects are opaque handles created and destroyed through this API.
 * Functions return pidec_status; on failure the thread-local message from
 * pidec_last_error() describes the cause. Output handles are written only
 * on PIDEC_OK, with one exception: the control solvers also populate their
 * result on PIDEC_ERR_NO_CONVERGENCE so diagnostics stay inspectable.
 */

#ifndef PIDEC_H
#define PIDEC_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pidec_status {
    PIDEC_OK = 0,
    PIDEC_ERR_INVALID_ARGUMENT = 1,
    PIDEC_ERR_NO_CONVERGENCE = 2,
    PIDEC_ERR_INTERNAL = 3
} pidec_status;

typedef enum pidec_kernel_kind {
    PIDEC_KERNEL_NONE = 0,        /* no memory term */
    PIDEC_KERNEL_EXPONENTIAL = 1, /* kappa(t,s) = exp(-rate*(t-s)) */
    PIDEC_KERNEL_GENERAL = 2      /* kappa(t,s) supplied as a callback */
} pidec_kernel_kind;

typedef enum pidec_kernel_form {
    PIDEC_FORM_MASS = 0,     /* memory acts through the mass form */
    PIDEC_FORM_STIFFNESS = 1 /* memory acts through the stiffness form */
} pidec_kernel_form;

/* Problem = grid + time grid + kernel + window + initial/target data, with
 * all factorizations and cached solves ready; immutable once created. */
typedef struct pidec_problem pidec_problem;

/* Trajectory = one coefficient vector of length n_dof per time level
 * 0..n_steps. States, controls and adjoints share this layout. */
typedef struct pidec_trajectory pidec_trajectory;

/* Result of a control solve. */
typedef struct pidec_result pidec_result;

/* Small named-column numeric table (sweeps, convergence studies). */
typedef struct pidec_table pidec_table;

typedef double (*pidec_space_fn)(double x, void* user);
typedef double (*pidec_kernel_fn)(double t, double s, void* user);

/* Thread-local message for the most recent failure in this thread; empty
 * string if none. The pointer stays valid until the next failing call on
 * the same thread. */
const char* pidec_last_error(void);

const char* pidec_version(void);

/* ---- problem -------------------------------------------------------- */

/* Creates a problem on (0,1) x (0,final_time]. initial/target sample the
 * initial state and the steering target; both are L2-projected onto the
 * finite element space. For PIDEC_KERNEL_EXPONENTIAL the kernel callback is
 * ignored and rate is used; for PIDEC_KERNEL_GENERAL the callback is
 * required and must stay valid for the problem's lifetime. window_weights
 * is either NULL (control acts everywhere) or n_cells-1 values in [0,1]
 * masking the control per interior node. */
pidec_status pidec_problem_create(int n_cells, int n_steps, double final_time,
                                  pidec_kernel_kind kind, pidec_kernel_form form,
                                  double rate, pidec_kernel_fn kernel,
                                  void* kernel_user, pidec_space_fn initial,
                                  void* initial_user, pidec_space_fn target,
                                  void* target_user, const double* window_weights,
                                  pidec_problem** out);

/* The decaying-sine benchmark problem: exponential kernel with rate pi^2 on
 * the mass form, y0 = sin(pi x), target = exp(-pi^2) sin(pi x), T = 1. */
pidec_status pidec_problem_create_benchmark(int n_cells, int n_steps,
                                            pidec_problem** out);

void pidec_problem_destroy(pidec_problem* p);

int pidec_problem_n_dof(const pidec_problem* p);
int pidec_problem_n_steps(const pidec_problem* p);
double pidec_problem_dt(const pidec_problem* p);

/* Interior node coordinates; out must hold n_dof values. */
pidec_status pidec_problem_nodes(const pidec_problem* p, double* out);

/* Projected target coefficients; out must hold n_dof values. */
pidec_status pidec_problem_target(const pidec_problem* p, double* out);

/* M-weighted norm of a coefficient vector of length n_dof. */
pidec_status pidec_problem_mnorm(const pidec_problem* p, const double* v,
                                 double* out);

/* Coefficient of v along the discrete sine mode j (1-based). */
pidec_status pidec_problem_mode_coefficient(const pidec_problem* p, int mode,
                                            const double* v, double* out);

/* ---- trajectories --------------------------------------------------- */

/* Zero trajectory on the problem's grids. */
pidec_status pidec_trajectory_create(const pidec_problem* p,
                                     pidec_trajectory** out);

void pidec_trajectory_destroy(pidec_trajectory* t);

int pidec_trajectory_n_levels(const pidec_trajectory* t);
int pidec_trajectory_n_dof(const pidec_trajectory* t);

/* Copies level `level` (0..n_steps) out of / into the trajectory; the
 * buffer holds n_dof values. */
pidec_status pidec_trajectory_get(const pidec_trajectory* t, int level,
                                  double* out);
pidec_status pidec_trajectory_set(pidec_trajectory* t, int level,
                                  const double* values);

/* Trajectory norm sqrt( sum_{n=1..N} dt * |level n|_M^2 ). */
pidec_status pidec_trajectory_ynorm(const pidec_problem* p,
                                    const pidec_trajectory* t, double* out);

/* The benchmark's closed-form control -t e^{-pi^2 t} sin(pi x), projected
 * onto the problem's grids. Valid for any problem (it is simply a named
 * analytic control). */
pidec_status pidec_benchmark_exact_control(const pidec_problem* p,
                                           pidec_trajectory** out);

/* ---- solvers --------------------------------------------------------- */

/* Forward solve of the full equation. control may be NULL (no control);
 * y0 may be NULL (problem's initial data) or n_dof values. */
pidec_status pidec_solve_forward(const pidec_problem* p,
                                 const pidec_trajectory* control,
                                 const double* y0, pidec_trajectory** out);

/* Penalty-method control: minimizes 1/2||u||^2 + 1/(2 eps)||y(T)-target||^2
 * by conjugate gradients on the normal equation. Returns
 * PIDEC_ERR_NO_CONVERGENCE (with *out still populated) when CG hits
 * cg_max_iters before reaching cg_tol. */
pidec_status pidec_solve_penalty(const pidec_problem* p, double epsilon,
                                 double cg_tol, int cg_max_iters,
                                 pidec_result** out);

/* Regularized-Gramian fixed-point control with parameter delta in (0,1].
 * Same non-convergence convention as pidec_solve_penalty. */
pidec_status pidec_solve_resolvent(const pidec_problem* p, double delta,
                                   double fp_tol, int max_fp_iters,
                                   double cg_tol, int cg_max_iters,
                                   pidec_result** out);

/* ---- results --------------------------------------------------------- */

void pidec_result_destroy(pidec_result* r);

double pidec_result_miss(const pidec_result* r);
double pidec_result_relative_miss(const pidec_result* r);
double pidec_result_cost(const pidec_result* r);
double pidec_result_penalty(const pidec_result* r);
/* NaN when the quantity does not apply to the route that produced r. */
double pidec_result_j_epsilon(const pidec_result* r);
double pidec_result_e_delta(const pidec_result* r);
int pidec_result_iterations(const pidec_result* r);
int pidec_result_converged(const pidec_result* r);

pidec_status pidec_result_control(const pidec_result* r, pidec_trajectory** out);
pidec_status pidec_result_state(const pidec_result* r, pidec_trajectory** out);
/* Final state y(T); out must hold n_dof values. */
pidec_status pidec_result_final_state(const pidec_result* r, double* out);

/* ---- sweeps and studies ---------------------------------------------- */

/* Penalty solves along strictly decreasing epsilons, with the monotonicity
 * verdicts of the penalty functional chains. reference may be NULL (zero
 * control). Columns: epsilon, cost, penalty, j_epsilon, miss,
 * relative_miss, bound, iterations, converged, cost_monotone,
 * penalty_monotone, j_epsilon_monotone, bound_ok. */
pidec_status pidec_sweep_epsilon(const pidec_problem* p, const double* epsilons,
                                 int n_epsilons, const pidec_trajectory* reference,
                                 double cg_tol, int cg_max_iters,
                                 pidec_table** out);

/* Resolvent solves per delta. Columns: delta, miss, relative_miss, e_delta,
 * cost, iterations, converged. */
pidec_status pidec_sweep_delta(const pidec_problem* p, const double* deltas,
                               int n_deltas, double fp_tol, int max_fp_iters,
                               double cg_tol, int cg_max_iters,
                               pidec_table** out);

/* Projected penalty solves across Galerkin levels (modes[i], slabs[i]),
 * each compared against the unprojected minimizer. Columns: n_modes,
 * n_slabs, distance_to_full, miss, cost, iterations, converged. */
pidec_status pidec_sweep_galerkin(const pidec_problem* p, const int* modes,
                                  const int* slabs, int n_levels, double epsilon,
                                  double cg_tol, int cg_max_iters,
                                  pidec_table** out);

/* Benchmark convergence ladders. Columns: n_cells, n_steps, error,
 * step_order (pairwise observed order, NaN on the first row), fit_order
 * (least-squares slope, repeated on every row). */
pidec_status pidec_study_spatial(const int* cells, int n_points,
                                 int n_steps_base, pidec_table** out);
pidec_status pidec_study_temporal(int n_cells, const int* steps, int n_points,
                                  pidec_table** out);

/* ---- tables ----------------------------------------------------------- */

void pidec_table_destroy(pidec_table* t);

int pidec_table_rows(const pidec_table* t);
int pidec_table_cols(const pidec_table* t);
/* Column name; NULL for an out-of-range index. */
const char* pidec_table_column_name(const pidec_table* t, int col);
/* Cell value; NaN for out-of-range indices. Boolean columns hold 0/1. */
double pidec_table_value(const pidec_table* t, int row, int col);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PIDEC_H */
