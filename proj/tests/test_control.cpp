// Copyright (c) 2026 the pidec developers.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "core/benchmark.hpp"
#include "core/control.hpp"
#include "core/galerkin.hpp"
#include "core/operators.hpp"
#include "core/solver.hpp"
#include "doctest.h"

using namespace pidec;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("penalty control steers the benchmark close to its target") {
    const OperatorContext ctx = benchmark::make_problem(64, 40);
    PenaltyConfig cfg;
    cfg.epsilon = 1e-6;

    const ControlResult res = penalty_minimize(ctx, cfg);
    REQUIRE(res.converged);
    CHECK(res.iterations >= 1);
    CHECK(res.iterations <= 20);
    CHECK(res.relative_miss < 0.05);  // measured 6.0e-5
    CHECK(res.cost > 0.0);
    CHECK(res.penalty == doctest::Approx(res.miss * res.miss).epsilon(1e-12));
    CHECK(res.j_epsilon ==
          doctest::Approx(res.cost + res.penalty / (2.0 * cfg.epsilon)).epsilon(1e-12));
    CHECK(std::isnan(res.e_delta));
    REQUIRE(!res.residual_history.empty());
    CHECK(res.residual_history.back() <= cfg.cg_tol);

    // the reported state really is the forward solve under the control
    const Trajectory replay = solve_forward(ctx, &res.control, ctx.y0);
    for (int i = 0; i < ctx.n_dof(); ++i) {
        CHECK(res.final_state[i] == replay.level(ctx.n_steps())[i]);
    }
}

TEST_CASE("penalty minimizer satisfies the fixed-point optimality condition") {
    const OperatorContext ctx = benchmark::make_problem(32, 24);
    PenaltyConfig cfg;
    cfg.epsilon = 1e-5;
    const ControlResult res = penalty_minimize(ctx, cfg);
    REQUIRE(res.converged);

    // residual of u + (1/eps) E*(E u - zhat) = 0, measured against the
    // natural scale (1/eps) ||E* zhat||_Y of the equation data
    const std::vector<double> eu = apply_E(ctx, res.control);
    std::vector<double> defect(ctx.n_dof());
    for (int i = 0; i < ctx.n_dof(); ++i) defect[i] = eu[i] - ctx.zhat[i];
    Trajectory residual = apply_E_adjoint(ctx, defect);
    residual.scale(1.0 / cfg.epsilon);
    residual.add_scaled(1.0, res.control);

    const Trajectory scale_traj = apply_E_adjoint(ctx, ctx.zhat);
    const double scale = y_norm(ctx, scale_traj) / cfg.epsilon;
    CHECK(y_norm(ctx, residual) <= 10.0 * cfg.cg_tol * scale);
}

TEST_CASE("the penalty control is linear in the target deviation") {
    // with zero initial data the deviation is the target itself, so doubling
    // the target doubles the control bit for bit: every operation in the CG
    // recursion scales exactly under multiplication by a power of two
    std::mt19937 rng(61);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<double> target(31);
    for (double& v : target) v = unit(rng);
    std::vector<double> doubled_target(target);
    for (double& v : doubled_target) v *= 2.0;
    const std::vector<double> zero_state(31, 0.0);

    const OperatorContext base = make_context_from_coefficients(
        32, 20, 1.0, KernelSpec::exponential(2.0), zero_state, target);
    const OperatorContext scaled = make_context_from_coefficients(
        32, 20, 1.0, KernelSpec::exponential(2.0), zero_state, doubled_target);

    PenaltyConfig cfg;
    cfg.epsilon = 1e-4;
    const ControlResult res1 = penalty_minimize(base, cfg);
    const ControlResult res2 = penalty_minimize(scaled, cfg);
    REQUIRE(res1.converged);
    REQUIRE(res2.converged);
    CHECK(res1.iterations == res2.iterations);
    for (size_t i = 0; i < res1.control.values().size(); ++i) {
        CHECK(res2.control.values()[i] == 2.0 * res1.control.values()[i]);
    }
}

TEST_CASE("resolvent iteration converges on the benchmark and reports e_delta") {
    const OperatorContext ctx = benchmark::make_problem(64, 40);
    ResolventConfig cfg;
    cfg.delta = 1e-4;

    const ControlResult res = resolvent_fixed_point(ctx, cfg);
    REQUIRE(res.converged);
    CHECK(res.iterations >= 1);
    CHECK(res.relative_miss < 0.05);
    CHECK(std::isnan(res.j_epsilon));
    CHECK(std::isfinite(res.e_delta));
    CHECK(res.e_delta > 0.0);
    // at the fixed point the predicted approximation error is the miss
    CHECK(res.e_delta == doctest::Approx(res.miss).epsilon(1e-4));

    for (double ratio : res.contraction_ratios) CHECK(ratio < 1.0);

    const Trajectory replay = solve_forward(ctx, &res.control, ctx.y0);
    for (int i = 0; i < ctx.n_dof(); ++i) {
        CHECK(res.final_state[i] == replay.level(ctx.n_steps())[i]);
    }
}

TEST_CASE("without memory the resolvent iteration stops after one application") {
    const OperatorContext ctx = make_context(
        32, 20, 1.0, KernelSpec::none_kernel(),
        [](double x) { return std::sin(kPi * x); },
        [](double x) { return 0.5 * x * (1.0 - x); });
    ResolventConfig cfg;
    cfg.delta = 1e-3;
    const ControlResult res = resolvent_fixed_point(ctx, cfg);
    REQUIRE(res.converged);
    CHECK(res.iterations == 1);
}

TEST_CASE("penalty and resolvent agree when the problem is memory-free") {
    const OperatorContext ctx = make_context(
        48, 32, 1.0, KernelSpec::none_kernel(),
        [](double x) { return std::sin(kPi * x); },
        [](double x) { return std::exp(-kPi * kPi) * std::sin(kPi * x); });

    PenaltyConfig pcfg;
    pcfg.epsilon = 1e-4;
    ResolventConfig rcfg;
    rcfg.delta = 1e-4;
    const ControlResult pen = penalty_minimize(ctx, pcfg);
    const ControlResult reso = resolvent_fixed_point(ctx, rcfg);
    REQUIRE(pen.converged);
    REQUIRE(reso.converged);

    Trajectory gap = pen.control;
    gap.add_scaled(-1.0, reso.control);
    CHECK(y_norm(ctx, gap) <= 1e-8);
}

TEST_CASE("epsilon path satisfies the monotone chains with a tight bound") {
    const OperatorContext ctx = benchmark::make_problem(64, 40);
    const Trajectory u_ref = benchmark::exact_control(ctx);
    const std::vector<double> epsilons = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};

    const EpsilonPath path = epsilon_path(ctx, epsilons, u_ref, PenaltyConfig{});
    REQUIRE(path.rows.size() == epsilons.size());
    CHECK(path.chains_ok);
    CHECK(path.penalty_drop_ok);
    CHECK(path.delta0 > 0.0);
    CHECK(path.reference_cost > 0.0);
    for (const EpsilonRow& row : path.rows) {
        CHECK(row.converged);
        CHECK(row.cost_monotone);
        CHECK(row.penalty_monotone);
        CHECK(row.j_epsilon_monotone);
        CHECK(row.bound_ok);
        CHECK(row.j_epsilon <= row.bound + 1e-10 * (1.0 + std::abs(row.bound)));
    }
    CHECK(path.rows.back().penalty <= path.rows.front().penalty / 10.0);
    CHECK(path.rows.back().relative_miss < 0.05);

    const std::vector<double> not_decreasing = {1e-2, 1e-2};
    CHECK_THROWS_AS(epsilon_path(ctx, not_decreasing, u_ref, PenaltyConfig{}),
                    std::invalid_argument);
}

TEST_CASE("delta sweep misses decrease toward controllability") {
    const OperatorContext ctx = benchmark::make_problem(48, 32);
    const std::vector<double> deltas = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
    const std::vector<DeltaRow> rows = delta_sweep(ctx, deltas, ResolventConfig{});
    REQUIRE(rows.size() == deltas.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].converged);
        if (i > 0) CHECK(rows[i].miss < rows[i - 1].miss);
    }
    CHECK(rows.back().relative_miss < 0.05);
}

TEST_CASE("projected penalty solves approach the full minimizer") {
    const OperatorContext ctx = make_context(
        16, 40, 1.0, KernelSpec::exponential(benchmark::kDecayRate),
        [](double x) { return std::sin(kPi * x); },
        [](double x) { return x * (1.0 - x) * (1.0 - x); });
    PenaltyConfig cfg;
    cfg.epsilon = 1e-4;

    SUBCASE("spatial hierarchy at full time resolution") {
        const std::vector<GalerkinLevel> levels = {
            {1, 40}, {2, 40}, {4, 40}, {8, 40}, {15, 40}};
        const std::vector<GalerkinRow> rows = galerkin_sweep(ctx, levels, cfg);
        REQUIRE(rows.size() == levels.size());
        for (size_t i = 0; i < rows.size(); ++i) {
            CHECK(rows[i].converged);
            if (i > 0) CHECK(rows[i].distance_to_full < rows[i - 1].distance_to_full);
        }
        // the top level is the identity projector: distances vanish exactly
        CHECK(rows.back().distance_to_full == 0.0);
    }

    SUBCASE("temporal hierarchy at full spatial resolution") {
        const std::vector<GalerkinLevel> levels = {
            {15, 5}, {15, 10}, {15, 20}, {15, 40}};
        const std::vector<GalerkinRow> rows = galerkin_sweep(ctx, levels, cfg);
        REQUIRE(rows.size() == levels.size());
        for (size_t i = 0; i < rows.size(); ++i) {
            CHECK(rows[i].converged);
            if (i > 0) CHECK(rows[i].distance_to_full < rows[i - 1].distance_to_full);
        }
        CHECK(rows.back().distance_to_full == 0.0);
    }

    SUBCASE("the full level reproduces the unprojected minimizer bit for bit") {
        const ControlResult full = penalty_minimize(ctx, cfg);
        const ControlResult projected =
            penalty_minimize_on_level(ctx, cfg, GalerkinLevel{15, 40});
        REQUIRE(full.converged);
        REQUIRE(projected.converged);
        for (size_t i = 0; i < full.control.values().size(); ++i) {
            CHECK(projected.control.values()[i] == full.control.values()[i]);
        }
    }

    SUBCASE("invalid levels are rejected") {
        CHECK_THROWS_AS(penalty_minimize_on_level(ctx, cfg, GalerkinLevel{0, 40}),
                        std::invalid_argument);
        CHECK_THROWS_AS(penalty_minimize_on_level(ctx, cfg, GalerkinLevel{16, 40}),
                        std::invalid_argument);
        CHECK_THROWS_AS(penalty_minimize_on_level(ctx, cfg, GalerkinLevel{4, 7}),
                        std::invalid_argument);
        CHECK_THROWS_AS(penalty_minimize_on_level(ctx, cfg, GalerkinLevel{4, 80}),
                        std::invalid_argument);
    }
}

TEST_CASE("projectors are idempotent, commuting and norm-contractive") {
    const OperatorContext ctx = make_context(
        16, 24, 1.0, KernelSpec::none_kernel(),
        [](double x) { return std::sin(kPi * x); },
        [](double x) { return x * (1.0 - x); });
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Trajectory u(ctx.n_steps() + 1, ctx.n_dof());
    for (double& v : u.values()) v = unit(rng);
    const double full_norm = y_norm(ctx, u);

    const GalerkinLevel level{4, 6};
    Trajectory once = u;
    project_onto_level(ctx, level, once);
    Trajectory twice = once;
    project_onto_level(ctx, level, twice);
    for (size_t i = 0; i < once.values().size(); ++i) {
        CHECK(twice.values()[i] == doctest::Approx(once.values()[i]).epsilon(1e-13));
    }
    CHECK(y_norm(ctx, once) <= full_norm * (1.0 + 1e-13));

    // spatial-then-temporal equals temporal-then-spatial
    Trajectory st = u;
    project_spatial_modes(ctx, level.n_modes, st);
    project_time_slabs(ctx, level.n_slabs, st);
    Trajectory ts = u;
    project_time_slabs(ctx, level.n_slabs, ts);
    project_spatial_modes(ctx, level.n_modes, ts);
    for (size_t i = 0; i < st.values().size(); ++i) {
        CHECK(st.values()[i] == doctest::Approx(ts.values()[i]).epsilon(1e-12));
    }

    // slab averaging preserves the time-integrated mean over levels 1..N
    Trajectory slabbed = u;
    project_time_slabs(ctx, 6, slabbed);
    for (int i = 0; i < ctx.n_dof(); ++i) {
        double before = 0.0, after = 0.0;
        for (int n = 1; n <= ctx.n_steps(); ++n) {
            before += u.level(n)[i];
            after += slabbed.level(n)[i];
        }
        CHECK(after == doctest::Approx(before).epsilon(1e-12));
    }
}

TEST_CASE("solver configuration validation") {
    const OperatorContext ctx = benchmark::make_problem(16, 10);

    PenaltyConfig bad_eps;
    bad_eps.epsilon = 0.0;
    CHECK_THROWS_AS(penalty_minimize(ctx, bad_eps), std::invalid_argument);
    PenaltyConfig bad_tol;
    bad_tol.cg_tol = -1.0;
    CHECK_THROWS_AS(penalty_minimize(ctx, bad_tol), std::invalid_argument);
    PenaltyConfig bad_iters;
    bad_iters.cg_max_iters = 0;
    CHECK_THROWS_AS(penalty_minimize(ctx, bad_iters), std::invalid_argument);

    ResolventConfig bad_delta;
    bad_delta.delta = 0.0;
    CHECK_THROWS_AS(resolvent_fixed_point(ctx, bad_delta), std::invalid_argument);
    ResolventConfig big_delta;
    big_delta.delta = 2.0;
    CHECK_THROWS_AS(resolvent_fixed_point(ctx, big_delta), std::invalid_argument);
    ResolventConfig bad_fp;
    bad_fp.max_fp_iters = 0;
    CHECK_THROWS_AS(resolvent_fixed_point(ctx, bad_fp), std::invalid_argument);
}
