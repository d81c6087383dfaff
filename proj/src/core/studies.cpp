// Copyright (c) 2026 the pidec developers.
// SPDX-License-Identifier: Apache-2.0

#include "core/studies.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "core/benchmark.hpp"
#include "core/operators.hpp"
#include "core/oracle.hpp"
#include "core/solver.hpp"

namespace pidec {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Least-squares slope of log(error) against log(resolution); resolution is
/// h for the spatial ladder and k for the temporal one.
double fit_order(const std::vector<double>& resolution, const std::vector<double>& error) {
    const size_t m = resolution.size();
    if (m < 2) return kNaN;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < m; ++i) {
        const double x = std::log(resolution[i]);
        const double y = std::log(error[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

void fill_orders(StudyTable& table, const std::vector<double>& resolution) {
    std::vector<double> errors;
    errors.reserve(table.rows.size());
    for (const StudyRow& row : table.rows) errors.push_back(row.error);
    for (size_t i = 0; i < table.rows.size(); ++i) {
        if (i == 0) {
            table.rows[i].observed_order = kNaN;
        } else {
            table.rows[i].observed_order = std::log(errors[i - 1] / errors[i]) /
                                           std::log(resolution[i - 1] / resolution[i]);
        }
    }
    table.fitted_order = fit_order(resolution, errors);
}

}  // namespace

StudyTable spatial_convergence(std::span<const int> cells_list, int n_steps_base) {
    if (cells_list.empty()) throw std::invalid_argument("spatial_convergence: empty ladder");
    if (n_steps_base < 1) throw std::invalid_argument("spatial_convergence: n_steps_base must be positive");
    for (size_t i = 0; i < cells_list.size(); ++i) {
        if (cells_list[i] < 2) throw std::invalid_argument("spatial_convergence: n_cells must be at least 2");
        if (i > 0 && cells_list[i] <= cells_list[i - 1]) {
            throw std::invalid_argument("spatial_convergence: ladder must be strictly increasing");
        }
    }

    StudyTable table;
    std::vector<double> widths;
    const double c0 = cells_list.front();
    for (const int n_cells : cells_list) {
        const double ratio = n_cells / c0;
        const int n_steps = static_cast<int>(std::lround(n_steps_base * ratio * ratio));
        const OperatorContext ctx = benchmark::make_problem(n_cells, n_steps);
        const Trajectory u = benchmark::exact_control(ctx);
        const Trajectory y = solve_forward(ctx, &u, ctx.y0);

        const std::vector<double> exact = benchmark::exact_final_state(ctx);
        const auto last = y.level(ctx.n_steps());
        std::vector<double> diff(ctx.n_dof());
        for (int i = 0; i < ctx.n_dof(); ++i) diff[i] = last[i] - exact[i];

        StudyRow row;
        row.n_cells = n_cells;
        row.n_steps = n_steps;
        row.error = x_norm(ctx, diff) / x_norm(ctx, exact);
        table.rows.push_back(row);
        widths.push_back(ctx.grid.h);
    }
    fill_orders(table, widths);
    return table;
}

StudyTable temporal_convergence(int n_cells, std::span<const int> steps_list,
                                int oracle_steps) {
    if (steps_list.empty()) throw std::invalid_argument("temporal_convergence: empty ladder");
    for (size_t i = 0; i < steps_list.size(); ++i) {
        if (steps_list[i] < 1) throw std::invalid_argument("temporal_convergence: n_steps must be positive");
        if (i > 0 && steps_list[i] <= steps_list[i - 1]) {
            throw std::invalid_argument("temporal_convergence: ladder must be strictly increasing");
        }
    }

    const double mu = benchmark::kDecayRate;
    const auto control = [mu](double t) { return -t * std::exp(-mu * t); };

    StudyTable table;
    std::vector<double> steps;
    for (const int n_steps : steps_list) {
        const SpatialGrid grid = make_grid(n_cells);
        const std::vector<double> mode = mode_vector(grid, 1);

        OperatorContext ctx = make_context_from_coefficients(
            n_cells, n_steps, 1.0, KernelSpec::exponential(mu, KernelForm::mass),
            mode, mode);

        Trajectory u(ctx.times.n_levels(), ctx.n_dof());
        for (int level = 1; level <= n_steps; ++level) {
            const double amp = control(ctx.times.time(level));
            auto ul = u.level(level);
            for (int i = 0; i < ctx.n_dof(); ++i) ul[i] = amp * mode[i];
        }

        const Trajectory y = solve_forward(ctx, &u, ctx.y0);
        const double alpha =
            mode_coefficient(ctx.grid, ctx.mass, 1, y.level(n_steps));

        ModeProblem p;
        p.lambda = mode_eigenvalue(ctx.grid, 1);
        p.mu = mu;
        p.memory_amplitude = 1.0;
        p.alpha0 = 1.0;
        p.control = control;
        const double reference = oracle_final(p, 1.0, oracle_steps);

        StudyRow row;
        row.n_cells = n_cells;
        row.n_steps = n_steps;
        row.error = std::abs(alpha - reference);
        table.rows.push_back(row);
        steps.push_back(ctx.times.dt());
    }
    fill_orders(table, steps);
    return table;
}

}  // namespace pidec
