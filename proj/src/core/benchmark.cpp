// Copyright (c) 2026 the pidec developers.
// SPDX-License-Identifier: Apache-2.0

#include "core/benchmark.hpp"

#include <cmath>
#include <numbers>

namespace pidec::benchmark {

OperatorContext make_problem(int n_cells, int n_steps) {
    const double pi = std::numbers::pi;
    return make_context(
        n_cells, n_steps, 1.0, KernelSpec::exponential(kDecayRate, KernelForm::mass),
        [pi](double x) { return std::sin(pi * x); },
        [pi](double x) { return std::exp(-kDecayRate) * std::sin(pi * x); });
}

Trajectory exact_control(const OperatorContext& ctx) {
    const double pi = std::numbers::pi;
    const std::vector<double> shape =
        project_l2(ctx.grid, [pi](double x) { return std::sin(pi * x); });

    Trajectory u(ctx.times.n_levels(), ctx.n_dof());
    for (int n = 1; n <= ctx.n_steps(); ++n) {
        const double t = ctx.times.time(n);
        const double amp = -t * std::exp(-kDecayRate * t);
        auto un = u.level(n);
        for (int i = 0; i < ctx.n_dof(); ++i) un[i] = amp * shape[i];
    }
    return u;
}

std::vector<double> exact_final_state(const OperatorContext& ctx) {
    const double pi = std::numbers::pi;
    std::vector<double> v = project_l2(ctx.grid, [pi](double x) { return std::sin(pi * x); });
    for (double& x : v) x *= std::exp(-kDecayRate);
    return v;
}

}  // namespace pidec::benchmark
