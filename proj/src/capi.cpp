// Copyright (c) 2026 the pidec developers.
// SPDX-License-Identifier: Apache-2.0

#include "pidec.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "core/benchmark.hpp"
#include "core/context.hpp"
#include "core/control.hpp"
#include "core/galerkin.hpp"
#include "core/operators.hpp"
#include "core/solver.hpp"
#include "core/studies.hpp"

struct pidec_problem {
    pidec::OperatorContext ctx;
};

struct pidec_trajectory {
    pidec::Trajectory t;
};

struct pidec_result {
    pidec::ControlResult r;
};

struct pidec_table {
    std::vector<std::string> names;
    std::vector<std::vector<double>> rows;
};

namespace {

thread_local std::string g_last_error;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

pidec_status fail(pidec_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

/// Runs the body and translates exceptions into status codes.
template <typename F>
pidec_status guarded(F&& body) {
    try {
        return body();
    } catch (const std::invalid_argument& e) {
        return fail(PIDEC_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return fail(PIDEC_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(PIDEC_ERR_INTERNAL, "unknown error");
    }
}

pidec_status require(bool ok, const char* message) {
    return ok ? PIDEC_OK : fail(PIDEC_ERR_INVALID_ARGUMENT, message);
}

pidec_status result_status(const pidec::ControlResult& r, const char* what) {
    if (r.converged) return PIDEC_OK;
    return fail(PIDEC_ERR_NO_CONVERGENCE,
                std::string(what) + " did not converge within the iteration budget");
}

}  // namespace

extern "C" {

const char* pidec_last_error(void) { return g_last_error.c_str(); }

const char* pidec_version(void) { return "0.1.0"; }

pidec_status pidec_problem_create(int n_cells, int n_steps, double final_time,
                                  pidec_kernel_kind kind, pidec_kernel_form form,
                                  double rate, pidec_kernel_fn kernel,
                                  void* kernel_user, pidec_space_fn initial,
                                  void* initial_user, pidec_space_fn target,
                                  void* target_user, const double* window_weights,
                                  pidec_problem** out) {
    if (auto s = require(out && initial && target,
                         "pidec_problem_create: out, initial and target are required"))
        return s;
    return guarded([&] {
        const pidec::KernelForm kform = form == PIDEC_FORM_STIFFNESS
                                            ? pidec::KernelForm::stiffness
                                            : pidec::KernelForm::mass;
        pidec::KernelSpec spec;
        switch (kind) {
            case PIDEC_KERNEL_NONE:
                spec = pidec::KernelSpec::none_kernel();
                break;
            case PIDEC_KERNEL_EXPONENTIAL:
                spec = pidec::KernelSpec::exponential(rate, kform);
                break;
            case PIDEC_KERNEL_GENERAL:
                if (!kernel) {
                    return fail(PIDEC_ERR_INVALID_ARGUMENT,
                                "pidec_problem_create: general kernel requires a callback");
                }
                spec = pidec::KernelSpec::general(
                    [kernel, kernel_user](double t, double s) { return kernel(t, s, kernel_user); },
                    kform);
                break;
            default:
                return fail(PIDEC_ERR_INVALID_ARGUMENT,
                            "pidec_problem_create: unknown kernel kind");
        }

        std::vector<double> window;
        if (window_weights && n_cells >= 2) {
            window.assign(window_weights, window_weights + (n_cells - 1));
        }

        auto* p = new pidec_problem{pidec::make_context(
            n_cells, n_steps, final_time, std::move(spec),
            [initial, initial_user](double x) { return initial(x, initial_user); },
            [target, target_user](double x) { return target(x, target_user); },
            std::move(window))};
        *out = p;
        return PIDEC_OK;
    });
}

pidec_status pidec_problem_create_benchmark(int n_cells, int n_steps,
                                            pidec_problem** out) {
    if (auto s = require(out != nullptr, "pidec_problem_create_benchmark: out is required"))
        return s;
    return guarded([&] {
        *out = new pidec_problem{pidec::benchmark::make_problem(n_cells, n_steps)};
        return PIDEC_OK;
    });
}

void pidec_problem_destroy(pidec_problem* p) { delete p; }

int pidec_problem_n_dof(const pidec_problem* p) { return p ? p->ctx.n_dof() : 0; }

int pidec_problem_n_steps(const pidec_problem* p) { return p ? p->ctx.n_steps() : 0; }

double pidec_problem_dt(const pidec_problem* p) { return p ? p->ctx.times.dt() : kNaN; }

pidec_status pidec_problem_nodes(const pidec_problem* p, double* out) {
    if (auto s = require(p && out, "pidec_problem_nodes: null argument")) return s;
    std::memcpy(out, p->ctx.grid.nodes.data(), p->ctx.grid.nodes.size() * sizeof(double));
    return PIDEC_OK;
}

pidec_status pidec_problem_target(const pidec_problem* p, double* out) {
    if (auto s = require(p && out, "pidec_problem_target: null argument")) return s;
    std::memcpy(out, p->ctx.target.data(), p->ctx.target.size() * sizeof(double));
    return PIDEC_OK;
}

pidec_status pidec_problem_mnorm(const pidec_problem* p, const double* v, double* out) {
    if (auto s = require(p && v && out, "pidec_problem_mnorm: null argument")) return s;
    return guarded([&] {
        *out = pidec::x_norm(p->ctx, {v, static_cast<size_t>(p->ctx.n_dof())});
        return PIDEC_OK;
    });
}

pidec_status pidec_problem_mode_coefficient(const pidec_problem* p, int mode,
                                            const double* v, double* out) {
    if (auto s = require(p && v && out, "pidec_problem_mode_coefficient: null argument"))
        return s;
    return guarded([&] {
        *out = pidec::mode_coefficient(p->ctx.grid, p->ctx.mass, mode,
                                       {v, static_cast<size_t>(p->ctx.n_dof())});
        return PIDEC_OK;
    });
}

pidec_status pidec_trajectory_create(const pidec_problem* p, pidec_trajectory** out) {
    if (auto s = require(p && out, "pidec_trajectory_create: null argument")) return s;
    *out = new pidec_trajectory{pidec::Trajectory(p->ctx.times.n_levels(), p->ctx.n_dof())};
    return PIDEC_OK;
}

void pidec_trajectory_destroy(pidec_trajectory* t) { delete t; }

int pidec_trajectory_n_levels(const pidec_trajectory* t) { return t ? t->t.n_levels() : 0; }

int pidec_trajectory_n_dof(const pidec_trajectory* t) { return t ? t->t.n_dof() : 0; }

pidec_status pidec_trajectory_get(const pidec_trajectory* t, int level, double* out) {
    if (auto s = require(t && out, "pidec_trajectory_get: null argument")) return s;
    if (level < 0 || level >= t->t.n_levels()) {
        return fail(PIDEC_ERR_INVALID_ARGUMENT, "pidec_trajectory_get: level out of range");
    }
    const auto l = t->t.level(level);
    std::memcpy(out, l.data(), l.size() * sizeof(double));
    return PIDEC_OK;
}

pidec_status pidec_trajectory_set(pidec_trajectory* t, int level, const double* values) {
    if (auto s = require(t && values, "pidec_trajectory_set: null argument")) return s;
    if (level < 0 || level >= t->t.n_levels()) {
        return fail(PIDEC_ERR_INVALID_ARGUMENT, "pidec_trajectory_set: level out of range");
    }
    auto l = t->t.level(level);
    std::memcpy(l.data(), values, l.size() * sizeof(double));
    return PIDEC_OK;
}

pidec_status pidec_trajectory_ynorm(const pidec_problem* p, const pidec_trajectory* t,
                                    double* out) {
    if (auto s = require(p && t && out, "pidec_trajectory_ynorm: null argument")) return s;
    return guarded([&] {
        *out = pidec::y_norm(p->ctx, t->t);
        return PIDEC_OK;
    });
}

pidec_status pidec_benchmark_exact_control(const pidec_problem* p,
                                           pidec_trajectory** out) {
    if (auto s = require(p && out, "pidec_benchmark_exact_control: null argument")) return s;
    return guarded([&] {
        *out = new pidec_trajectory{pidec::benchmark::exact_control(p->ctx)};
        return PIDEC_OK;
    });
}

pidec_status pidec_solve_forward(const pidec_problem* p, const pidec_trajectory* control,
                                 const double* y0, pidec_trajectory** out) {
    if (auto s = require(p && out, "pidec_solve_forward: null argument")) return s;
    return guarded([&] {
        std::span<const double> initial =
            y0 ? std::span<const double>{y0, static_cast<size_t>(p->ctx.n_dof())}
               : std::span<const double>{p->ctx.y0};
        *out = new pidec_trajectory{
            pidec::solve_forward(p->ctx, control ? &control->t : nullptr, initial)};
        return PIDEC_OK;
    });
}

pidec_status pidec_solve_penalty(const pidec_problem* p, double epsilon, double cg_tol,
                                 int cg_max_iters, pidec_result** out) {
    if (auto s = require(p && out, "pidec_solve_penalty: null argument")) return s;
    return guarded([&] {
        pidec::PenaltyConfig cfg;
        cfg.epsilon = epsilon;
        cfg.cg_tol = cg_tol;
        cfg.cg_max_iters = cg_max_iters;
        auto* r = new pidec_result{pidec::penalty_minimize(p->ctx, cfg)};
        *out = r;
        return result_status(r->r, "penalty solver");
    });
}

pidec_status pidec_solve_resolvent(const pidec_problem* p, double delta, double fp_tol,
                                   int max_fp_iters, double cg_tol, int cg_max_iters,
                                   pidec_result** out) {
    if (auto s = require(p && out, "pidec_solve_resolvent: null argument")) return s;
    return guarded([&] {
        pidec::ResolventConfig cfg;
        cfg.delta = delta;
        cfg.fp_tol = fp_tol;
        cfg.max_fp_iters = max_fp_iters;
        cfg.cg_tol = cg_tol;
        cfg.cg_max_iters = cg_max_iters;
        auto* r = new pidec_result{pidec::resolvent_fixed_point(p->ctx, cfg)};
        *out = r;
        return result_status(r->r, "resolvent solver");
    });
}

void pidec_result_destroy(pidec_result* r) { delete r; }

double pidec_result_miss(const pidec_result* r) { return r ? r->r.miss : kNaN; }

double pidec_result_relative_miss(const pidec_result* r) {
    return r ? r->r.relative_miss : kNaN;
}

double pidec_result_cost(const pidec_result* r) { return r ? r->r.cost : kNaN; }

double pidec_result_penalty(const pidec_result* r) { return r ? r->r.penalty : kNaN; }

double pidec_result_j_epsilon(const pidec_result* r) { return r ? r->r.j_epsilon : kNaN; }

double pidec_result_e_delta(const pidec_result* r) { return r ? r->r.e_delta : kNaN; }

int pidec_result_iterations(const pidec_result* r) { return r ? r->r.iterations : 0; }

int pidec_result_converged(const pidec_result* r) {
    return r && r->r.converged ? 1 : 0;
}

pidec_status pidec_result_control(const pidec_result* r, pidec_trajectory** out) {
    if (auto s = require(r && out, "pidec_result_control: null argument")) return s;
    *out = new pidec_trajectory{r->r.control};
    return PIDEC_OK;
}

pidec_status pidec_result_state(const pidec_result* r, pidec_trajectory** out) {
    if (auto s = require(r && out, "pidec_result_state: null argument")) return s;
    *out = new pidec_trajectory{r->r.state};
    return PIDEC_OK;
}

pidec_status pidec_result_final_state(const pidec_result* r, double* out) {
    if (auto s = require(r && out, "pidec_result_final_state: null argument")) return s;
    std::memcpy(out, r->r.final_state.data(), r->r.final_state.size() * sizeof(double));
    return PIDEC_OK;
}

pidec_status pidec_sweep_epsilon(const pidec_problem* p, const double* epsilons,
                                 int n_epsilons, const pidec_trajectory* reference,
                                 double cg_tol, int cg_max_iters, pidec_table** out) {
    if (auto s = require(p && epsilons && out && n_epsilons > 0,
                         "pidec_sweep_epsilon: null argument or empty list"))
        return s;
    return guarded([&] {
        pidec::PenaltyConfig base;
        base.cg_tol = cg_tol;
        base.cg_max_iters = cg_max_iters;
        pidec::Trajectory zero(p->ctx.times.n_levels(), p->ctx.n_dof());
        const pidec::Trajectory& ref = reference ? reference->t : zero;
        const pidec::EpsilonPath path = pidec::epsilon_path(
            p->ctx, {epsilons, static_cast<size_t>(n_epsilons)}, ref, base);

        auto* table = new pidec_table;
        table->names = {"epsilon",       "cost",          "penalty",
                        "j_epsilon",     "miss",          "relative_miss",
                        "bound",         "iterations",    "converged",
                        "cost_monotone", "penalty_monotone",
                        "j_epsilon_monotone", "bound_ok"};
        for (const pidec::EpsilonRow& row : path.rows) {
            table->rows.push_back({row.epsilon, row.cost, row.penalty, row.j_epsilon,
                                   row.miss, row.relative_miss, row.bound,
                                   static_cast<double>(row.iterations),
                                   row.converged ? 1.0 : 0.0,
                                   row.cost_monotone ? 1.0 : 0.0,
                                   row.penalty_monotone ? 1.0 : 0.0,
                                   row.j_epsilon_monotone ? 1.0 : 0.0,
                                   row.bound_ok ? 1.0 : 0.0});
        }
        *out = table;
        return PIDEC_OK;
    });
}

pidec_status pidec_sweep_delta(const pidec_problem* p, const double* deltas,
                               int n_deltas, double fp_tol, int max_fp_iters,
                               double cg_tol, int cg_max_iters, pidec_table** out) {
    if (auto s = require(p && deltas && out && n_deltas > 0,
                         "pidec_sweep_delta: null argument or empty list"))
        return s;
    return guarded([&] {
        pidec::ResolventConfig base;
        base.fp_tol = fp_tol;
        base.max_fp_iters = max_fp_iters;
        base.cg_tol = cg_tol;
        base.cg_max_iters = cg_max_iters;
        const std::vector<pidec::DeltaRow> rows = pidec::delta_sweep(
            p->ctx, {deltas, static_cast<size_t>(n_deltas)}, base);

        auto* table = new pidec_table;
        table->names = {"delta",     "miss",       "relative_miss", "e_delta",
                        "cost",      "iterations", "converged"};
        for (const pidec::DeltaRow& row : rows) {
            table->rows.push_back({row.delta, row.miss, row.relative_miss, row.e_delta,
                                   row.cost, static_cast<double>(row.iterations),
                                   row.converged ? 1.0 : 0.0});
        }
        *out = table;
        return PIDEC_OK;
    });
}

pidec_status pidec_sweep_galerkin(const pidec_problem* p, const int* modes,
                                  const int* slabs, int n_levels, double epsilon,
                                  double cg_tol, int cg_max_iters, pidec_table** out) {
    if (auto s = require(p && modes && slabs && out && n_levels > 0,
                         "pidec_sweep_galerkin: null argument or empty list"))
        return s;
    return guarded([&] {
        pidec::PenaltyConfig cfg;
        cfg.epsilon = epsilon;
        cfg.cg_tol = cg_tol;
        cfg.cg_max_iters = cg_max_iters;
        std::vector<pidec::GalerkinLevel> levels(n_levels);
        for (int i = 0; i < n_levels; ++i) levels[i] = {modes[i], slabs[i]};
        const std::vector<pidec::GalerkinRow> rows =
            pidec::galerkin_sweep(p->ctx, levels, cfg);

        auto* table = new pidec_table;
        table->names = {"n_modes", "n_slabs",    "distance_to_full", "miss",
                        "cost",    "iterations", "converged"};
        for (const pidec::GalerkinRow& row : rows) {
            table->rows.push_back({static_cast<double>(row.n_modes),
                                   static_cast<double>(row.n_slabs),
                                   row.distance_to_full, row.miss, row.cost,
                                   static_cast<double>(row.iterations),
                                   row.converged ? 1.0 : 0.0});
        }
        *out = table;
        return PIDEC_OK;
    });
}

namespace {

pidec_table* study_table(const pidec::StudyTable& study) {
    auto* table = new pidec_table;
    table->names = {"n_cells", "n_steps", "error", "step_order", "fit_order"};
    for (const pidec::StudyRow& row : study.rows) {
        table->rows.push_back({static_cast<double>(row.n_cells),
                               static_cast<double>(row.n_steps), row.error,
                               row.observed_order, study.fitted_order});
    }
    return table;
}

}  // namespace

pidec_status pidec_study_spatial(const int* cells, int n_points, int n_steps_base,
                                 pidec_table** out) {
    if (auto s = require(cells && out && n_points > 0,
                         "pidec_study_spatial: null argument or empty ladder"))
        return s;
    return guarded([&] {
        *out = study_table(pidec::spatial_convergence(
            {cells, static_cast<size_t>(n_points)}, n_steps_base));
        return PIDEC_OK;
    });
}

pidec_status pidec_study_temporal(int n_cells, const int* steps, int n_points,
                                  pidec_table** out) {
    if (auto s = require(steps && out && n_points > 0,
                         "pidec_study_temporal: null argument or empty ladder"))
        return s;
    return guarded([&] {
        *out = study_table(pidec::temporal_convergence(
            n_cells, {steps, static_cast<size_t>(n_points)}));
        return PIDEC_OK;
    });
}

void pidec_table_destroy(pidec_table* t) { delete t; }

int pidec_table_rows(const pidec_table* t) {
    return t ? static_cast<int>(t->rows.size()) : 0;
}

int pidec_table_cols(const pidec_table* t) {
    return t ? static_cast<int>(t->names.size()) : 0;
}

const char* pidec_table_column_name(const pidec_table* t, int col) {
    if (!t || col < 0 || col >= static_cast<int>(t->names.size())) return nullptr;
    return t->names[col].c_str();
}

double pidec_table_value(const pidec_table* t, int row, int col) {
    if (!t || row < 0 || row >= static_cast<int>(t->rows.size())) return kNaN;
    if (col < 0 || col >= static_cast<int>(t->rows[row].size())) return kNaN;
    return t->rows[row][col];
}

}  // extern "C"
