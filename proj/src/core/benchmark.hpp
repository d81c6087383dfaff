// Copyright (c) 2026 the pidec developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "core/context.hpp"
#include "core/trajectory.hpp"

namespace pidec::benchmark {

/// The decaying-sine benchmark: kernel exp(-pi^2 (t-s)) on the mass form,
/// y0 = sin(pi x), target e^{-pi^2} sin(pi x), T = 1. The control
///   u(t,x) = -t e^{-pi^2 t} sin(pi x)
/// steers the continuum state exactly onto the target: with it the solution
/// of the full equation is y(t,x) = e^{-pi^2 t} sin(pi x), since the control
/// exactly cancels the accumulated memory t e^{-pi^2 t} sin(pi x).
inline constexpr double kDecayRate = 9.86960440108935861883;  // pi^2

OperatorContext make_problem(int n_cells, int n_steps);

/// The closed-form control above, L2-projected in space, sampled at the time
/// levels 1..N (level 0 is zero and unused by the scheme).
Trajectory exact_control(const OperatorContext& ctx);

/// e^{-pi^2} * (projection of sin(pi x)): the exact final state, equal to
/// the benchmark target by construction.
std::vector<double> exact_final_state(const OperatorContext& ctx);

}  // namespace pidec::benchmark
