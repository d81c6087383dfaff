// Copyright (c) 2026 the pidec developers.
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance gate: one self-contained check per release criterion, each
// printed as a single PASS/FAIL line with its measured values and runtime
// budget. The process exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "core/benchmark.hpp"
#include "core/context.hpp"
#include "core/control.hpp"
#include "core/galerkin.hpp"
#include "core/operators.hpp"
#include "core/solver.hpp"
#include "core/studies.hpp"

using namespace pidec;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool ok = false;
    std::string detail;
};

int g_failures = 0;

void run_criterion(int id, const char* name, double budget_seconds,
                   const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
        outcome = body();
    } catch (const std::exception& e) {
        outcome.ok = false;
        outcome.detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = elapsed < budget_seconds;
    const bool pass = outcome.ok && in_budget;
    if (!pass) ++g_failures;
    std::printf("%s  criterion %d (%s): %s [%.2f s, budget %.0f s]\n",
                pass ? "PASS" : "FAIL", id, name, outcome.detail.c_str(), elapsed,
                budget_seconds);
    std::fflush(stdout);
}

std::string fmt(const char* format, ...) {
    va_list args;
    va_start(args, format);
    char buf[512];
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

double exact_control_error(int n_cells, int n_steps) {
    const OperatorContext ctx = benchmark::make_problem(n_cells, n_steps);
    const Trajectory u = benchmark::exact_control(ctx);
    const Trajectory y = solve_forward(ctx, &u, ctx.y0);
    const std::vector<double> exact = benchmark::exact_final_state(ctx);
    std::vector<double> gap(ctx.n_dof());
    for (int i = 0; i < ctx.n_dof(); ++i) gap[i] = y.level(ctx.n_steps())[i] - exact[i];
    return x_norm(ctx, gap) / x_norm(ctx, exact);
}

Trajectory random_trajectory(const OperatorContext& ctx, std::mt19937& rng) {
    Trajectory t(ctx.n_steps() + 1, ctx.n_dof());
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (double& x : t.values()) x = unit(rng);
    return t;
}

std::vector<double> random_vector(int n, std::mt19937& rng) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) x = unit(rng);
    return v;
}

}  // namespace

int main() {
    std::printf("pidec acceptance gate\n");

    run_criterion(1, "exact-solution reproduction", 5.0, [] {
        const double err = exact_control_error(64, 40);
        const double err_fine = exact_control_error(128, 80);
        const double ratio = err / err_fine;
        Outcome o;
        o.ok = err <= 0.1 && ratio >= 1.8;
        o.detail = fmt("relative final-state error %.6g (limit 0.1), "
                       "halving-refinement ratio %.3g (need >= 1.8)",
                       err, ratio);
        return o;
    });

    run_criterion(2, "convergence orders", 60.0, [] {
        const std::vector<int> cells = {16, 32, 64, 128};
        const StudyTable spatial = spatial_convergence(cells, 40);
        const std::vector<int> steps = {10, 20, 40, 80};
        const StudyTable temporal = temporal_convergence(128, steps);
        Outcome o;
        o.ok = spatial.fitted_order >= 1.9 && temporal.fitted_order >= 0.9;
        o.detail = fmt("spatial order %.3g (need >= 1.9), temporal order %.3g "
                       "(need >= 0.9)",
                       spatial.fitted_order, temporal.fitted_order);
        return o;
    });

    run_criterion(3, "adjoint exactness", 5.0, [] {
        std::mt19937 rng(2026);
        double worst = 0.0;
        for (const KernelSpec& kernel :
             {KernelSpec::none_kernel(), KernelSpec::exponential(kPi * kPi)}) {
            const OperatorContext ctx = make_context_from_coefficients(
                32, 32, 1.0, kernel, random_vector(31, rng), random_vector(31, rng));
            for (int trial = 0; trial < 10; ++trial) {
                const Trajectory u = random_trajectory(ctx, rng);
                const std::vector<double> z = random_vector(ctx.n_dof(), rng);
                const double lhs = x_inner(ctx, apply_E_lin(ctx, u), z);
                const double rhs = y_inner(ctx, u, apply_E_adjoint(ctx, z));
                const double gap = std::abs(lhs - rhs) /
                                   std::max({std::abs(lhs), std::abs(rhs), 1e-300});
                worst = std::max(worst, gap);
            }
        }
        Outcome o;
        o.ok = worst <= 1e-12;
        o.detail = fmt("max relative duality gap %.3g over 20 random pairs "
                       "(limit 1e-12)",
                       worst);
        return o;
    });

    run_criterion(4, "discrete Duhamel identity", 5.0, [] {
        std::mt19937 rng(404);
        double worst = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            const OperatorContext ctx = make_context_from_coefficients(
                32, 32, 1.0, KernelSpec::exponential(2.5), random_vector(31, rng),
                std::vector<double>(31, 0.0));
            const Trajectory u = random_trajectory(ctx, rng);
            const Trajectory y = solve_forward(ctx, &u, ctx.y0);

            Trajectory source = u;
            source.add_scaled(1.0, apply_memory(ctx, y));
            const std::vector<double> propagated = apply_L(ctx, source);
            std::vector<double> residual(ctx.n_dof());
            for (int i = 0; i < ctx.n_dof(); ++i) {
                residual[i] = y.level(ctx.n_steps())[i] - ctx.heat_final[i] -
                              propagated[i];
            }
            const double rel = x_norm(ctx, residual) /
                               std::max(x_norm(ctx, y.level(ctx.n_steps())), 1e-300);
            worst = std::max(worst, rel);
        }
        Outcome o;
        o.ok = worst <= 1e-12;
        o.detail = fmt("max relative defect %.3g over 5 random draws (limit 1e-12)",
                       worst);
        return o;
    });

    run_criterion(5, "penalty monotone chains", 120.0, [] {
        const OperatorContext ctx = benchmark::make_problem(64, 40);
        const Trajectory u_ref = benchmark::exact_control(ctx);
        const std::vector<double> epsilons = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
        const EpsilonPath path = epsilon_path(ctx, epsilons, u_ref, PenaltyConfig{});
        const double drop = path.rows.front().penalty /
                            std::max(path.rows.back().penalty, 1e-300);
        Outcome o;
        o.ok = path.chains_ok && path.penalty_drop_ok;
        o.detail = fmt("chains %s, delta0 %.3g, penalty drop factor %.3g "
                       "(need >= 10)",
                       path.chains_ok ? "hold" : "violated", path.delta0, drop);
        return o;
    });

    run_criterion(6, "resolvent controllability limit", 120.0, [] {
        const OperatorContext ctx = benchmark::make_problem(64, 40);
        const std::vector<double> deltas = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
        bool decreasing = true;
        bool contracting = true;
        bool converged = true;
        double prev_miss = 0.0;
        double final_rel_miss = 0.0;
        for (size_t i = 0; i < deltas.size(); ++i) {
            ResolventConfig cfg;
            cfg.delta = deltas[i];
            const ControlResult res = resolvent_fixed_point(ctx, cfg);
            converged = converged && res.converged;
            if (i > 0 && res.miss >= prev_miss) decreasing = false;
            prev_miss = res.miss;
            final_rel_miss = res.relative_miss;
            for (double ratio : res.contraction_ratios) {
                if (ratio >= 1.0) contracting = false;
            }
        }
        Outcome o;
        o.ok = converged && decreasing && contracting && final_rel_miss <= 0.05;
        o.detail = fmt("miss %s, final relative miss %.3g (limit 0.05), "
                       "update ratios %s",
                       decreasing ? "strictly decreasing" : "not decreasing",
                       final_rel_miss, contracting ? "all < 1" : "not contracting");
        return o;
    });

    run_criterion(7, "Gramian spectral check", 60.0, [] {
        const OperatorContext ctx = benchmark::make_problem(256, 2048);
        const std::vector<double> v1 = mode_vector(ctx.grid, 1);
        const std::vector<double> wv1 = apply_gramian(ctx, v1);
        const double rayleigh = x_inner(ctx, wv1, v1) / x_inner(ctx, v1, v1);
        const double reference = (1.0 - std::exp(-2.0 * kPi * kPi)) / (2.0 * kPi * kPi);
        const double rel = std::abs(rayleigh - reference) / reference;
        Outcome o;
        o.ok = rel <= 1e-3;
        o.detail = fmt("Rayleigh quotient %.8g vs %.8g, relative gap %.3g "
                       "(limit 1e-3)",
                       rayleigh, reference, rel);
        return o;
    });

    run_criterion(8, "penalty/resolvent cross-validation", 30.0, [] {
        const OperatorContext ctx = make_context(
            64, 40, 1.0, KernelSpec::none_kernel(),
            [](double x) { return std::sin(kPi * x); },
            [](double x) { return std::exp(-kPi * kPi) * std::sin(kPi * x); });
        PenaltyConfig pcfg;
        pcfg.epsilon = 1e-4;
        ResolventConfig rcfg;
        rcfg.delta = 1e-4;
        const ControlResult pen = penalty_minimize(ctx, pcfg);
        const ControlResult reso = resolvent_fixed_point(ctx, rcfg);
        Trajectory gap = pen.control;
        gap.add_scaled(-1.0, reso.control);
        const double dist = y_norm(ctx, gap);
        Outcome o;
        o.ok = pen.converged && reso.converged && dist <= 1e-8;
        o.detail = fmt("control distance %.3g in the trajectory norm (limit 1e-8)",
                       dist);
        return o;
    });

    run_criterion(9, "Galerkin hierarchy", 120.0, [] {
        const OperatorContext ctx = make_context(
            16, 40, 1.0, KernelSpec::exponential(benchmark::kDecayRate),
            [](double x) { return std::sin(kPi * x); },
            [](double x) { return x * (1.0 - x) * (1.0 - x); });
        PenaltyConfig cfg;
        cfg.epsilon = 1e-4;

        const std::vector<GalerkinLevel> mode_ladder = {
            {1, 40}, {2, 40}, {4, 40}, {8, 40}};
        const std::vector<GalerkinRow> by_modes = galerkin_sweep(ctx, mode_ladder, cfg);
        bool modes_decreasing = true;
        for (size_t i = 1; i < by_modes.size(); ++i) {
            if (by_modes[i].distance_to_full >= by_modes[i - 1].distance_to_full) {
                modes_decreasing = false;
            }
        }

        const std::vector<GalerkinLevel> slab_ladder = {
            {15, 5}, {15, 10}, {15, 20}, {15, 40}};
        const std::vector<GalerkinRow> by_slabs = galerkin_sweep(ctx, slab_ladder, cfg);
        bool slabs_decreasing = true;
        for (size_t i = 1; i < by_slabs.size(); ++i) {
            if (by_slabs[i].distance_to_full >= by_slabs[i - 1].distance_to_full) {
                slabs_decreasing = false;
            }
        }
        const double full_gap = by_slabs.back().distance_to_full;

        Outcome o;
        o.ok = modes_decreasing && slabs_decreasing && full_gap <= cfg.cg_tol;
        o.detail = fmt("mode ladder %s, slab ladder %s, full-level gap %.3g "
                       "(limit %.0e)",
                       modes_decreasing ? "decreasing" : "not decreasing",
                       slabs_decreasing ? "decreasing" : "not decreasing", full_gap,
                       cfg.cg_tol);
        return o;
    });

    std::printf("%d of 9 criteria passed\n", 9 - g_failures);
    return g_failures;
}
