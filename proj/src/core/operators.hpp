// Copyright (c) 2026 the pidec developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "core/context.hpp"
#include "core/trajectory.hpp"

namespace pidec {

/// State-space inner product <v,w> = v' M w and its norm.
double x_inner(const OperatorContext& ctx, std::span<const double> v,
               std::span<const double> w);
double x_norm(const OperatorContext& ctx, std::span<const double> v);

/// Trajectory-space inner product sum_{n=1}^{N} dt * <a^n, b^n>_X. Level 0 is
/// excluded by convention; controls and states share this weighting.
double y_inner(const OperatorContext& ctx, const Trajectory& a, const Trajectory& b);
double y_norm(const OperatorContext& ctx, const Trajectory& a);

/// Control window g applied as a coefficient mask, and its exact adjoint in
/// the X-inner product, M^{-1} (g o (M v)). Both are the identity when the
/// window is empty.
void apply_window(const OperatorContext& ctx, std::span<const double> v,
                  std::span<double> out);
void apply_window_adjoint(const OperatorContext& ctx, std::span<const double> v,
                          std::span<double> out);

/// Source-to-final-state map of the plain heat flow,
///   L v = y^N where (M + dt*A) y^n = M y^{n-1} + dt*M v^n, y^0 = 0.
std::vector<double> apply_L(const OperatorContext& ctx, const Trajectory& v);

/// Exact adjoint of apply_L between the X and trajectory inner products:
///   (L* z)^n = (C^{-1} M)^{N-n+1} z,  C = M + dt*A,
/// computed by one reverse sweep. Level 0 is zero.
Trajectory apply_L_adjoint(const OperatorContext& ctx, std::span<const double> z);

/// Final-state deviation map E u = y(T; u, y0) - S_h(T) y0, evaluated with
/// one full forward solve against the cached heat flow of y0. Affine in u:
/// E u = E(0) + E_lin u with E(0) = ctx.offset.
std::vector<double> apply_E(const OperatorContext& ctx, const Trajectory& u);

/// Linear part of E: the control-to-final-state map of the full scheme with
/// zero initial data. Exactly linear by construction.
std::vector<double> apply_E_lin(const OperatorContext& ctx, const Trajectory& u);

/// Exact adjoint of apply_E_lin: one reverse sweep of the transposed scheme,
///   C p^N = M z,
///   C p^n = M p^{n+1} + dt^2 * sum_{l=n+1}^{N} kappa(t_l, t_n) B0 p^l,
/// then (E* z)^n = G* p^n. Exponential kernels use the O(N) reverse history
/// recurrence mirroring the forward fast path.
Trajectory apply_E_adjoint(const OperatorContext& ctx, std::span<const double> z);

/// Memory-free controllability Gramian W z = L G G* L* z. Symmetric positive
/// semidefinite in the X-inner product.
std::vector<double> apply_gramian(const OperatorContext& ctx, std::span<const double> z);

struct ResolventResult {
    std::vector<double> solution;
    int iterations = 0;
    bool converged = false;
    double relative_residual = 0.0;
};

/// Solves (delta*I + W) w = rhs by conjugate gradients in the X-inner
/// product, matrix-free through apply_gramian. Stops when the X-norm
/// residual drops below tol * ||rhs||_X. Throws std::invalid_argument for
/// delta <= 0 or bad tolerances; non-convergence is reported in the result,
/// not thrown.
ResolventResult solve_resolvent(const OperatorContext& ctx, double delta,
                                std::span<const double> rhs, double tol,
                                int max_iters);

}  // namespace pidec
