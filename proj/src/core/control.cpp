// Copyright (c) 2026 the pidec developers.
// SPDX-License-Identifier: Apache-2.0

#include "core/control.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "core/operators.hpp"
#include "core/solver.hpp"

namespace pidec {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double chain_slack(double value) { return 1e-10 * (1.0 + std::abs(value)); }

/// Fills the state-dependent part of a result from its control: independent
/// forward solve, final state, miss, cost, penalty.
void finalize_result(const OperatorContext& ctx, ControlResult& res) {
    res.state = solve_forward(ctx, &res.control, ctx.y0);
    const auto last = res.state.level(ctx.n_steps());
    res.final_state.assign(last.begin(), last.end());

    std::vector<double> diff(ctx.n_dof());
    for (int i = 0; i < ctx.n_dof(); ++i) diff[i] = last[i] - ctx.target[i];
    res.miss = x_norm(ctx, diff);
    const double target_norm = x_norm(ctx, ctx.target);
    res.relative_miss = target_norm > 0.0 ? res.miss / target_norm : res.miss;
    res.cost = 0.5 * y_inner(ctx, res.control, res.control);
    res.penalty = res.miss * res.miss;
}

void validate_penalty(const PenaltyConfig& cfg) {
    if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("penalty: epsilon must be positive");
    if (!(cfg.cg_tol > 0.0)) throw std::invalid_argument("penalty: cg_tol must be positive");
    if (cfg.cg_max_iters < 1) throw std::invalid_argument("penalty: cg_max_iters must be at least 1");
}

/// Shared CG core for the penalty normal equation, optionally restricted to
/// a Galerkin level. With no level the projector is skipped entirely, and a
/// full level short-circuits inside the projections, so the three cases
/// follow the same arithmetic path.
ControlResult penalty_core(const OperatorContext& ctx, const PenaltyConfig& cfg,
                           const GalerkinLevel* level) {
    validate_penalty(cfg);
    if (level) validate_level(ctx, *level);

    const int n = ctx.n_dof();
    const double inv_eps = 1.0 / cfg.epsilon;
    const auto project = [&](Trajectory& t) {
        if (level) project_onto_level(ctx, *level, t);
    };

    ControlResult res;
    res.j_epsilon = kNaN;  // set after the solve
    res.e_delta = kNaN;

    // b = 1/eps * E*(zhat - E(0)), restricted to the subspace.
    std::vector<double> r0(n);
    for (int i = 0; i < n; ++i) r0[i] = ctx.zhat[i] - ctx.offset[i];
    Trajectory b = apply_E_adjoint(ctx, r0);
    b.scale(inv_eps);
    project(b);

    res.control = Trajectory(ctx.times.n_levels(), n);
    const double b_norm = y_norm(ctx, b);
    if (b_norm == 0.0) {
        res.converged = true;
        finalize_result(ctx, res);
        res.j_epsilon = res.cost + res.penalty / (2.0 * cfg.epsilon);
        return res;
    }

    // CG on u -> u + 1/eps * P E* E_lin u in the Y-inner product.
    Trajectory r = b;
    Trajectory p = r;
    double rr = y_inner(ctx, r, r);
    for (int it = 1; it <= cfg.cg_max_iters; ++it) {
        const std::vector<double> ep = apply_E_lin(ctx, p);
        Trajectory ap = apply_E_adjoint(ctx, ep);
        ap.scale(inv_eps);
        project(ap);
        ap.add_scaled(1.0, p);

        const double alpha = rr / y_inner(ctx, p, ap);
        res.control.add_scaled(alpha, p);
        r.add_scaled(-alpha, ap);

        const double rr_next = y_inner(ctx, r, r);
        const double rel = std::sqrt(rr_next) / b_norm;
        res.residual_history.push_back(rel);
        res.iterations = it;
        if (rel <= cfg.cg_tol) {
            res.converged = true;
            break;
        }
        const double beta = rr_next / rr;
        rr = rr_next;
        p.scale(beta);
        p.add_scaled(1.0, r);
    }

    finalize_result(ctx, res);
    res.j_epsilon = res.cost + res.penalty / (2.0 * cfg.epsilon);
    return res;
}

}  // namespace

ControlResult penalty_minimize(const OperatorContext& ctx, const PenaltyConfig& cfg) {
    return penalty_core(ctx, cfg, nullptr);
}

ControlResult penalty_minimize_on_level(const OperatorContext& ctx,
                                        const PenaltyConfig& cfg,
                                        const GalerkinLevel& level) {
    return penalty_core(ctx, cfg, &level);
}

ControlResult resolvent_fixed_point(const OperatorContext& ctx,
                                    const ResolventConfig& cfg) {
    if (!(cfg.delta > 0.0) || cfg.delta > 1.0) {
        throw std::invalid_argument("resolvent: delta must lie in (0, 1]");
    }
    if (!(cfg.fp_tol > 0.0)) throw std::invalid_argument("resolvent: fp_tol must be positive");
    if (cfg.max_fp_iters < 1) throw std::invalid_argument("resolvent: max_fp_iters must be at least 1");

    const int n = ctx.n_dof();
    ControlResult res;
    res.j_epsilon = kNaN;
    res.e_delta = kNaN;
    res.control = Trajectory(ctx.times.n_levels(), n);

    Trajectory z = solve_forward(ctx, nullptr, ctx.y0);
    std::vector<double> r(n);
    bool inner_failed = false;
    double prev_diff = 0.0;

    for (int k = 1; k <= cfg.max_fp_iters; ++k) {
        // One application of the regularized map: control from the current
        // trajectory's memory load, then the trajectory it generates.
        const Trajectory mem = apply_memory(ctx, z);
        const std::vector<double> w = apply_L(ctx, mem);
        for (int i = 0; i < n; ++i) r[i] = ctx.zhat[i] - w[i];
        const ResolventResult g =
            solve_resolvent(ctx, cfg.delta, r, cfg.cg_tol, cfg.cg_max_iters);
        if (!g.converged) {
            inner_failed = true;
            res.iterations = k - 1;
            break;
        }

        res.control = apply_L_adjoint(ctx, g.solution);
        if (!ctx.window.is_identity()) {
            for (int level = 1; level <= ctx.n_steps(); ++level) {
                auto ul = res.control.level(level);
                apply_window_adjoint(ctx, ul, ul);
            }
        }

        Trajectory z_next = solve_forward(ctx, &res.control, ctx.y0);
        Trajectory step = z_next;
        step.add_scaled(-1.0, z);
        const double diff = y_norm(ctx, step);
        res.residual_history.push_back(diff);
        if (k >= 2) res.contraction_ratios.push_back(diff / prev_diff);
        prev_diff = diff;
        z = std::move(z_next);

        if (diff <= cfg.fp_tol * std::max(1.0, y_norm(ctx, z))) {
            res.converged = true;
            res.iterations = k - 1;
            break;
        }
        res.iterations = k;
    }

    finalize_result(ctx, res);

    if (!inner_failed) {
        // Approximation error of the regularized problem, evaluated at the
        // returned pair; coincides with the miss at an exact fixed point.
        const Trajectory mem = apply_memory(ctx, res.state);
        const std::vector<double> w = apply_L(ctx, mem);
        for (int i = 0; i < n; ++i) r[i] = ctx.zhat[i] - w[i];
        const ResolventResult g =
            solve_resolvent(ctx, cfg.delta, r, cfg.cg_tol, cfg.cg_max_iters);
        if (g.converged) res.e_delta = cfg.delta * x_norm(ctx, g.solution);
    }
    return res;
}

EpsilonPath epsilon_path(const OperatorContext& ctx, std::span<const double> epsilons,
                         const Trajectory& u_ref, const PenaltyConfig& base) {
    if (epsilons.empty()) throw std::invalid_argument("epsilon_path: empty epsilon list");
    for (size_t i = 0; i < epsilons.size(); ++i) {
        if (!(epsilons[i] > 0.0)) throw std::invalid_argument("epsilon_path: epsilons must be positive");
        if (i > 0 && !(epsilons[i] < epsilons[i - 1])) {
            throw std::invalid_argument("epsilon_path: epsilons must be strictly decreasing");
        }
    }

    EpsilonPath path;
    {
        const std::vector<double> deviation = apply_E(ctx, u_ref);
        std::vector<double> miss_vec(ctx.n_dof());
        for (int i = 0; i < ctx.n_dof(); ++i) miss_vec[i] = deviation[i] - ctx.zhat[i];
        path.delta0 = x_norm(ctx, miss_vec);
        path.reference_cost = 0.5 * y_inner(ctx, u_ref, u_ref);
    }

    path.chains_ok = true;
    for (size_t i = 0; i < epsilons.size(); ++i) {
        PenaltyConfig cfg = base;
        cfg.epsilon = epsilons[i];
        const ControlResult sol = penalty_minimize(ctx, cfg);

        EpsilonRow row;
        row.epsilon = cfg.epsilon;
        row.cost = sol.cost;
        row.penalty = sol.penalty;
        row.j_epsilon = sol.j_epsilon;
        row.miss = sol.miss;
        row.relative_miss = sol.relative_miss;
        row.bound = path.reference_cost + path.delta0 * path.delta0 / (2.0 * cfg.epsilon);
        row.iterations = sol.iterations;
        row.converged = sol.converged;

        row.bound_ok = sol.cost <= sol.j_epsilon + chain_slack(sol.j_epsilon) &&
                       sol.j_epsilon <= row.bound + chain_slack(row.bound);
        if (i > 0) {
            const EpsilonRow& prev = path.rows.back();
            row.cost_monotone = prev.cost <= row.cost + chain_slack(row.cost);
            row.penalty_monotone = row.penalty <= prev.penalty + chain_slack(prev.penalty);
            row.j_epsilon_monotone = prev.j_epsilon <= row.j_epsilon + chain_slack(row.j_epsilon);
        }
        path.chains_ok = path.chains_ok && row.bound_ok && row.cost_monotone &&
                         row.penalty_monotone && row.j_epsilon_monotone && row.converged;
        path.rows.push_back(row);
    }
    path.penalty_drop_ok =
        path.rows.back().penalty <= path.rows.front().penalty / 10.0;
    return path;
}

std::vector<DeltaRow> delta_sweep(const OperatorContext& ctx,
                                  std::span<const double> deltas,
                                  const ResolventConfig& base) {
    if (deltas.empty()) throw std::invalid_argument("delta_sweep: empty delta list");
    std::vector<DeltaRow> rows;
    rows.reserve(deltas.size());
    for (const double delta : deltas) {
        ResolventConfig cfg = base;
        cfg.delta = delta;
        const ControlResult sol = resolvent_fixed_point(ctx, cfg);
        DeltaRow row;
        row.delta = delta;
        row.miss = sol.miss;
        row.relative_miss = sol.relative_miss;
        row.e_delta = sol.e_delta;
        row.cost = sol.cost;
        row.iterations = sol.iterations;
        row.converged = sol.converged;
        rows.push_back(row);
    }
    return rows;
}

std::vector<GalerkinRow> galerkin_sweep(const OperatorContext& ctx,
                                        std::span<const GalerkinLevel> levels,
                                        const PenaltyConfig& cfg) {
    if (levels.empty()) throw std::invalid_argument("galerkin_sweep: empty level list");
    for (const GalerkinLevel& level : levels) validate_level(ctx, level);

    const ControlResult full = penalty_minimize(ctx, cfg);

    std::vector<GalerkinRow> rows;
    rows.reserve(levels.size());
    for (const GalerkinLevel& level : levels) {
        const ControlResult sol = penalty_minimize_on_level(ctx, cfg, level);
        Trajectory diff = sol.control;
        diff.add_scaled(-1.0, full.control);
        GalerkinRow row;
        row.n_modes = level.n_modes;
        row.n_slabs = level.n_slabs;
        row.distance_to_full = y_norm(ctx, diff);
        row.miss = sol.miss;
        row.cost = sol.cost;
        row.iterations = sol.iterations;
        row.converged = sol.converged;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace pidec
