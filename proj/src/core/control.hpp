// Copyright (c) 2026 the pidec developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "core/context.hpp"
#include "core/galerkin.hpp"
#include "core/trajectory.hpp"

namespace pidec {

struct PenaltyConfig {
    double epsilon = 1e-6;
    double cg_tol = 1e-12;
    int cg_max_iters = 200;
};

struct ResolventConfig {
    double delta = 1e-4;  // must lie in (0, 1]
    double fp_tol = 1e-10;
    int max_fp_iters = 50;
    double cg_tol = 1e-12;
    int cg_max_iters = 200;
};

/// Outcome of either control solver. The reported state is always an
/// independent forward solve under the reported control, so miss, cost and
/// penalty can be recomputed from (control, state) alone.
struct ControlResult {
    Trajectory control;
    Trajectory state;
    std::vector<double> final_state;

    double miss = 0.0;           // ||y(T) - target||_X
    double relative_miss = 0.0;  // miss / ||target||_X (miss itself for zero target)
    double cost = 0.0;           // J(u) = 1/2 ||u||_Y^2
    double penalty = 0.0;        // P(u) = miss^2
    double j_epsilon = 0.0;      // J + P/(2 eps); NaN for the resolvent route
    double e_delta = 0.0;        // resolvent approximation error; NaN for penalty

    int iterations = 0;
    bool converged = false;
    std::vector<double> residual_history;    // CG relative residuals, or
                                             // fixed-point step norms
    std::vector<double> contraction_ratios;  // successive step-norm ratios
                                             // (resolvent route only)
};

/// Minimizes J_eps(u) = 1/2 ||u||_Y^2 + 1/(2 eps) ||E u - zhat||_X^2 through
/// its normal equation
///   (I + 1/eps * E* E_lin) u = 1/eps * E* (zhat - E(0)),
/// a linear system solved matrix-free by conjugate gradients in the Y-inner
/// product (the map is self-adjoint positive definite there). The returned
/// control makes the fixed-point residual u + 1/eps * E*(E u - zhat) equal
/// to the final CG residual.
ControlResult penalty_minimize(const OperatorContext& ctx, const PenaltyConfig& cfg);

/// Same minimization restricted to a Galerkin subspace: every CG iterate and
/// the right-hand side are wrapped with the level's projector, so iterates
/// never leave the subspace. At the full level the projector is an exact
/// no-op and the run is identical to penalty_minimize.
ControlResult penalty_minimize_on_level(const OperatorContext& ctx,
                                        const PenaltyConfig& cfg,
                                        const GalerkinLevel& level);

/// Regularized controllability iteration: starting from the uncontrolled
/// trajectory, repeat
///   w = L (memory of z),   g = (delta*I + W)^{-1} (zhat - w),
///   u = G* L* g,           z <- forward solve under u,
/// until the trajectory update ||z_next - z||_Y drops below
/// fp_tol * max(1, ||z_next||_Y). Reports e_delta, the X-norm of
/// delta * (delta*I + W)^{-1} (zhat - w) at the fixed point, which equals
/// the final miss there.
ControlResult resolvent_fixed_point(const OperatorContext& ctx,
                                    const ResolventConfig& cfg);

struct EpsilonRow {
    double epsilon = 0.0;
    double cost = 0.0;
    double penalty = 0.0;
    double j_epsilon = 0.0;
    double miss = 0.0;
    double relative_miss = 0.0;
    double bound = 0.0;  // reference cost + delta0^2 / (2 eps)
    int iterations = 0;
    bool converged = false;
    // chain verdicts vs the previous row (vacuously true on the first):
    bool cost_monotone = true;       // J nondecreasing as eps decreases
    bool penalty_monotone = true;    // P nonincreasing as eps decreases
    bool j_epsilon_monotone = true;  // J_eps nondecreasing as eps decreases
    bool bound_ok = true;            // J <= J_eps <= bound
};

struct EpsilonPath {
    std::vector<EpsilonRow> rows;
    double delta0 = 0.0;          // miss of the reference control
    double reference_cost = 0.0;  // J of the reference control
    bool chains_ok = false;       // all per-row verdicts hold
    bool penalty_drop_ok = false; // last penalty <= first penalty / 10
};

/// Penalty solves along a strictly decreasing epsilon list, checked against
/// the monotonicity chains of the penalty functional: as eps decreases, J
/// and J_eps cannot decrease, P cannot increase, and J <= J_eps <=
/// J(u_ref) + delta0^2/(2 eps) for any fixed reference control u_ref with
/// miss delta0. All comparisons carry slack 1e-10 * (1 + |value|).
EpsilonPath epsilon_path(const OperatorContext& ctx, std::span<const double> epsilons,
                         const Trajectory& u_ref, const PenaltyConfig& base);

struct DeltaRow {
    double delta = 0.0;
    double miss = 0.0;
    double relative_miss = 0.0;
    double e_delta = 0.0;
    double cost = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Runs resolvent_fixed_point per delta; callers check the controllability
/// trend (miss decreasing along decreasing delta).
std::vector<DeltaRow> delta_sweep(const OperatorContext& ctx,
                                  std::span<const double> deltas,
                                  const ResolventConfig& base);

struct GalerkinRow {
    int n_modes = 0;
    int n_slabs = 0;
    double distance_to_full = 0.0;  // ||u_level - u_full||_Y
    double miss = 0.0;
    double cost = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Projected penalty solves across a Galerkin hierarchy, each compared in
/// the Y-norm against the unprojected minimizer (computed once).
std::vector<GalerkinRow> galerkin_sweep(const OperatorContext& ctx,
                                        std::span<const GalerkinLevel> levels,
                                        const PenaltyConfig& cfg);

}  // namespace pidec
