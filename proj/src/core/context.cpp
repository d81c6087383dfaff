// Copyright (c) 2026 the pidec developers.
// SPDX-License-Identifier: Apache-2.0

#include "core/context.hpp"

#include <stdexcept>
#include <utility>

#include "core/solver.hpp"

namespace pidec {

namespace {

void validate_window(const std::vector<double>& weights, int n_dof) {
    if (weights.empty()) return;
    if (static_cast<int>(weights.size()) != n_dof) {
        throw std::invalid_argument("window weights have wrong dimension");
    }
    for (double w : weights) {
        if (!(w >= 0.0 && w <= 1.0)) {
            throw std::invalid_argument("window weights must lie in [0,1]");
        }
    }
}

}  // namespace

OperatorContext make_context_from_coefficients(int n_cells, int n_steps,
                                               double final_time, KernelSpec kernel,
                                               std::vector<double> y0,
                                               std::vector<double> target,
                                               std::vector<double> window_weights) {
    if (n_steps < 1) throw std::invalid_argument("n_steps must be at least 1");
    if (!(final_time > 0.0)) throw std::invalid_argument("final_time must be positive");

    OperatorContext ctx;
    ctx.grid = make_grid(n_cells);
    const int n = ctx.grid.n_dof();
    if (static_cast<int>(y0.size()) != n) {
        throw std::invalid_argument("initial coefficients have wrong dimension");
    }
    if (static_cast<int>(target.size()) != n) {
        throw std::invalid_argument("target coefficients have wrong dimension");
    }
    validate_window(window_weights, n);

    ctx.times = TimeGrid{final_time, n_steps};
    ctx.mass = assemble_mass(ctx.grid);
    ctx.stiffness = assemble_stiffness(ctx.grid);

    const double k = ctx.times.dt();
    TridiagMatrix step;
    step.diag.resize(n);
    step.off.resize(n - 1);
    for (int i = 0; i < n; ++i) step.diag[i] = ctx.mass.diag[i] + k * ctx.stiffness.diag[i];
    for (int i = 0; i < n - 1; ++i) step.off[i] = ctx.mass.off[i] + k * ctx.stiffness.off[i];
    ctx.step_solver = TridiagFactor(step);
    ctx.mass_solver = TridiagFactor(ctx.mass);

    ctx.kernel = std::move(kernel);
    ctx.window.weights = std::move(window_weights);
    ctx.y0 = std::move(y0);
    ctx.target = std::move(target);

    // Cache the two source-free solves every control algorithm needs: the
    // plain heat flow of y0 (the affine part of the control-to-final-state
    // map) and the uncontrolled solution of the full equation.
    const Trajectory heat = solve_heat(ctx, nullptr, ctx.y0);
    const auto heat_last = heat.level(n_steps);
    ctx.heat_final.assign(heat_last.begin(), heat_last.end());

    if (ctx.kernel.is_none()) {
        ctx.uncontrolled_final = ctx.heat_final;
    } else {
        const Trajectory full = solve_forward(ctx, nullptr, ctx.y0);
        const auto full_last = full.level(n_steps);
        ctx.uncontrolled_final.assign(full_last.begin(), full_last.end());
    }

    ctx.zhat.resize(n);
    ctx.offset.resize(n);
    for (int i = 0; i < n; ++i) {
        ctx.zhat[i] = ctx.target[i] - ctx.heat_final[i];
        ctx.offset[i] = ctx.uncontrolled_final[i] - ctx.heat_final[i];
    }
    return ctx;
}

OperatorContext make_context(int n_cells, int n_steps, double final_time,
                             KernelSpec kernel,
                             const std::function<double(double)>& initial,
                             const std::function<double(double)>& target,
                             std::vector<double> window_weights) {
    if (!initial || !target) {
        throw std::invalid_argument("initial and target functions are required");
    }
    const SpatialGrid grid = make_grid(n_cells);
    return make_context_from_coefficients(n_cells, n_steps, final_time, std::move(kernel),
                                          project_l2(grid, initial), project_l2(grid, target),
                                          std::move(window_weights));
}

}  // namespace pidec
