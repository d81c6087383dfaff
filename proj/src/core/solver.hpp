// Copyright (c) 2026 the pidec developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

#include "core/context.hpp"
#include "core/trajectory.hpp"

namespace pidec {

/// Backward Euler heat solve with an optional distributed source:
///   (M + dt*A) y^n = M y^{n-1} + dt * M f^n,   n = 1..N.
/// Source levels 1..N are used; level 0 is ignored. No memory term, no
/// control window.
Trajectory solve_heat(const OperatorContext& ctx, const Trajectory* source,
                      std::span<const double> y0);

/// Full scheme with Volterra memory (left-rectangle rule) and windowed
/// control:
///   (M + dt*A) y^n = M y^{n-1}
///                  + dt * sum_{j=0}^{n-1} dt * kappa(t_n,t_j) * B0 y^j
///                  + dt * M (g o u^n).
/// Exponential kernels use an O(N) history recurrence; separable and general
/// kernels fall back to the direct O(N^2) sum over cached B0 y^j.
Trajectory solve_forward(const OperatorContext& ctx, const Trajectory* control,
                         std::span<const double> y0);

/// Memory accumulation as a finite element function of time level n:
///   w^n = M^{-1} [ dt * sum_{j=0}^{n-1} kappa(t_n,t_j) * B0 y^j ],  w^0 = 0.
/// Feeding w as the source of solve_heat reproduces exactly the memory
/// forcing of solve_forward (the discrete Duhamel decomposition).
Trajectory apply_memory(const OperatorContext& ctx, const Trajectory& y);

}  // namespace pidec
